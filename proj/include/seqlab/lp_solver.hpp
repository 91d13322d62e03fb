#pragma once

#include <cstddef>
#include <vector>

#include "seqlab/linalg.hpp"

namespace seqlab {

struct BoxLpResult {
  bool bounded = true;
  double value = 0.0;
  std::vector<double> x;
};

/// maximize c.x subject to -1 <= (B x)_j <= 1 for every row j, x free.
///
/// Dense tableau simplex with Bland's rule; the origin is feasible, so no
/// phase one is needed. Columns of B are rescaled to unit max before solving.
BoxLpResult maximize_in_box(const Matrix<double>& b, const std::vector<double>& c);

}  // namespace seqlab
