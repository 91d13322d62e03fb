#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "seqlab/projection.hpp"
#include "seqlab/seq.hpp"
#include "seqlab/space.hpp"

/// Sampled checks. Every sample i draws from its own stream
/// derive_seed(seed, i), and the reductions keep the largest value with the
/// smallest sample index on ties, so serial and parallel results agree bit
/// for bit regardless of the thread count.
namespace seqlab::kernels {

struct SampleMax {
  double value = 0.0;
  std::size_t sample = 0;
  std::size_t n = 0;  ///< partial-sum kernels: the shorter sum
  std::size_t m = 0;  ///< partial-sum kernels: the longer sum

  friend bool operator==(const SampleMax&, const SampleMax&) = default;
};

/// Uniform coefficients in [-1, 1]^k for sample i.
std::vector<double> sample_coefficients(std::uint64_t seed, std::size_t i, std::size_t k);

/// Row-major weights w[n][m]; an empty matrix means all ones.
using Weights = std::vector<std::vector<double>>;

// partial_sum_ratio: max over samples and n <= m of |S_n| / (w[n][m] |S_m|),
//   with S_n = sum_{k<=n} a_k f_k.
// operator_norm_ratio: max over samples of |P x| / |x|.
// forbidden_violation: max over samples and forbidden s of |(sum_k a_k f_k)(s)|.

namespace serial {
SampleMax partial_sum_ratio(std::span<const Seq> family, const AmbientSpace& space,
                            std::size_t samples, std::uint64_t seed, const Weights& weights = {});
SampleMax operator_norm_ratio(const ProjectionOp& op, const AmbientSpace& space,
                              std::size_t samples, std::uint64_t seed);
SampleMax forbidden_violation(std::span<const Seq> family, std::span<const std::size_t> forbidden,
                              std::size_t samples, std::uint64_t seed);
}  // namespace serial

namespace parallel {
SampleMax partial_sum_ratio(std::span<const Seq> family, const AmbientSpace& space,
                            std::size_t samples, std::uint64_t seed, const Weights& weights = {});
SampleMax operator_norm_ratio(const ProjectionOp& op, const AmbientSpace& space,
                              std::size_t samples, std::uint64_t seed);
SampleMax forbidden_violation(std::span<const Seq> family, std::span<const std::size_t> forbidden,
                              std::size_t samples, std::uint64_t seed);
}  // namespace parallel

}  // namespace seqlab::kernels
