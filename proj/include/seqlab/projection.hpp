#pragma once

#include <limits>
#include <vector>

#include "seqlab/seq.hpp"

namespace seqlab {

/// Finite-rank operator x -> sum_k functionals[k](x) * vectors[k] on the truncation.
struct ProjectionOp {
  std::vector<Seq> functionals;
  std::vector<Seq> vectors;
  double norm_upper = std::numeric_limits<double>::infinity();  ///< certified, when known
  double norm_lower = 0.0;                                       ///< sampled

  std::size_t rank() const noexcept { return vectors.size(); }
  Seq apply(const Seq& x) const;
};

/// sum_j a(j) x(j) over the truncation.
double pair(const Seq& a, const Seq& x);

}  // namespace seqlab
