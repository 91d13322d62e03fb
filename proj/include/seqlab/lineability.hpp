#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "seqlab/scalar.hpp"
#include "seqlab/seq.hpp"

namespace seqlab {

/// x_p = (p, p^2, p^3, ...): coordinate at position j is p^(j+1).
///
/// The tail bound is p^(T+1) for sup-norm workspaces and p^(T+1)/(1-p)
/// (the l1 tail) otherwise. Throws RatioOutOfRange unless 0 < p < 1.
ExactSeq geometric_generator(const Rational& p, std::size_t truncation,
                             SpaceKind tail_mode = SpaceKind::Lp);

/// x = sum_j coeffs[j] * x_{ratios[j]}, with 0 < ratios[0] < ... < ratios[N-1] < 1
/// and every coefficient nonzero.
struct GeometricCombination {
  std::vector<Rational> ratios;
  std::vector<Rational> coeffs;

  /// Throws PreconditionViolated / RatioOutOfRange / DuplicateRatio.
  void validate() const;

  /// x(j) = sum_i coeffs[i] * ratios[i]^j for the exponent j >= 1.
  Rational coordinate(std::size_t exponent) const;

  /// Sorts the ratios increasingly (carrying coefficients), drops zero
  /// coefficients, and rejects duplicates.
  static GeometricCombination make(std::vector<Rational> ratios, std::vector<Rational> coeffs);
};

/// Least M such that |sum_{i<N} l_i p_i^j| < |l_N| p_N^j for every exponent
/// j > M, so coordinate j of the combination is nonzero for all j > M.
///
/// Found exactly: the envelope (sum_{i<N} |l_i|) (p_{N-1}/p_N)^j < |l_N| is
/// monotone in j, which gives a starting bound; the exact dominance test then
/// tightens it by scanning below that bound.
std::size_t certified_zero_bound(const GeometricCombination& c);

/// Exponents j in [1, max_exponent] with x(j) = 0, by exact evaluation.
std::vector<std::size_t> zero_exponents(const GeometricCombination& c, std::size_t max_exponent);

/// Exact rank of the #ratios x T matrix [p_i^j], j = 1..T.
/// Throws DuplicateRatio / RatioOutOfRange.
std::size_t independence_rank(std::span<const Rational> ratios, std::size_t truncation);

struct LineabilityCert {
  GeometricCombination combination;
  std::size_t scan_limit = 0;            ///< exponents 1..scan_limit were evaluated
  std::vector<std::size_t> zero_set;      ///< exponents where x(j) = 0
  std::size_t certified_bound = 0;        ///< M
  std::size_t rank = 0;                   ///< independence_rank of the ratios
  bool pass = false;                      ///< zero set within [1, M] and rank == #ratios
};

LineabilityCert certify_lineability(const GeometricCombination& c, std::size_t scan_limit);

}  // namespace seqlab
