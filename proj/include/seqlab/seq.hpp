#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "seqlab/errors.hpp"
#include "seqlab/scalar.hpp"
#include "seqlab/space.hpp"

namespace seqlab {

/// A sequence truncated to its first T coordinates (0-based positions).
///
/// `tail_bound` bounds the norm of the discarded coordinates T, T+1, ... in
/// the workspace norm (sup-norm workspaces may store a sup bound; Lp
/// workspaces store an l1 bound, which dominates every lp norm). Zero means
/// the truncation represents the sequence exactly.
template <Scalar S>
class BasicSeq {
 public:
  using value_type = S;

  BasicSeq() = default;
  explicit BasicSeq(std::size_t truncation) : coords_(truncation, S(0)), tail_bound_(0) {}
  explicit BasicSeq(std::vector<S> coords, S tail_bound = S(0))
      : coords_(std::move(coords)), tail_bound_(std::move(tail_bound)) {
    if (tail_bound_ < 0) throw Error(Errc::PreconditionViolated, "tail_bound must be >= 0");
  }

  static BasicSeq unit(std::size_t truncation, std::size_t position) {
    if (position >= truncation) {
      throw Error(Errc::IndexOutOfRange, "unit position " + std::to_string(position) +
                                             " outside truncation " + std::to_string(truncation));
    }
    BasicSeq e(truncation);
    e.coords_[position] = S(1);
    return e;
  }

  std::size_t size() const noexcept { return coords_.size(); }
  const S& operator[](std::size_t j) const { return coords_[j]; }
  S& operator[](std::size_t j) { return coords_[j]; }
  std::span<const S> coords() const noexcept { return coords_; }
  const S& tail_bound() const noexcept { return tail_bound_; }
  void set_tail_bound(S bound) { tail_bound_ = std::move(bound); }

  bool is_zero(double eta) const {
    return std::all_of(coords_.begin(), coords_.end(),
                       [eta](const S& c) { return ScalarOps<S>::is_zero(c, eta); });
  }

  /// Coordinate-wise equality; tail bounds are bounds, not values, and are ignored.
  friend bool operator==(const BasicSeq& a, const BasicSeq& b) { return a.coords_ == b.coords_; }

 private:
  std::vector<S> coords_;
  S tail_bound_{0};
};

using Seq = BasicSeq<double>;
using ExactSeq = BasicSeq<Rational>;

template <Scalar S>
void require_same_length(const BasicSeq<S>& a, const BasicSeq<S>& b) {
  if (a.size() != b.size()) {
    throw Error(Errc::LengthMismatch, "truncations differ: " + std::to_string(a.size()) + " vs " +
                                          std::to_string(b.size()));
  }
}

/// y + a*x
template <Scalar S>
BasicSeq<S> axpy(const S& a, const BasicSeq<S>& x, const BasicSeq<S>& y) {
  require_same_length(x, y);
  std::vector<S> out(y.coords().begin(), y.coords().end());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] += a * x[j];
  return BasicSeq<S>(std::move(out), y.tail_bound() + ScalarOps<S>::abs(a) * x.tail_bound());
}

template <Scalar S>
BasicSeq<S> scaled(const S& a, const BasicSeq<S>& x) {
  std::vector<S> out(x.coords().begin(), x.coords().end());
  for (auto& c : out) c *= a;
  return BasicSeq<S>(std::move(out), ScalarOps<S>::abs(a) * x.tail_bound());
}

template <Scalar S>
BasicSeq<S> operator+(const BasicSeq<S>& x, const BasicSeq<S>& y) {
  return axpy(S(1), x, y);
}

template <Scalar S>
BasicSeq<S> operator-(const BasicSeq<S>& x, const BasicSeq<S>& y) {
  return axpy(S(-1), y, x);
}

/// Coordinatewise product. The tail bound uses sup <= l1 on the tail.
template <Scalar S>
BasicSeq<S> hadamard(const BasicSeq<S>& x, const BasicSeq<S>& y) {
  require_same_length(x, y);
  std::vector<S> out(x.size());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = x[j] * y[j];
  return BasicSeq<S>(std::move(out), x.tail_bound() * y.tail_bound());
}

/// |x(0)| + |x(1)| + ... (truncation only).
template <Scalar S>
S l1_norm(const BasicSeq<S>& x) {
  S total(0);
  for (const auto& c : x.coords()) total += ScalarOps<S>::abs(c);
  return total;
}

/// max |x(j)| over the truncation.
template <Scalar S>
S sup_norm(const BasicSeq<S>& x) {
  S best(0);
  for (const auto& c : x.coords()) {
    S a = ScalarOps<S>::abs(c);
    if (a > best) best = a;
  }
  return best;
}

/// Norm over the truncation: (sum |x(j)|^p)^(1/p) for Lp, max |x(j)| otherwise.
double norm(const Seq& x, const AmbientSpace& space);

/// Exact norm for l1 and the sup-norm spaces. Other Lp need `norm_pow`.
Rational norm(const ExactSeq& x, const AmbientSpace& space);

/// sum |x(j)|^p exactly, for integer p.
Rational norm_pow(const ExactSeq& x, const AmbientSpace& space);

/// Upper bound on the full norm: the truncation combined with the tail bound.
double norm_with_tail(const Seq& x, const AmbientSpace& space);

/// Upper bound on the norm of (x(n), ..., x(T-1), <discarded tail>), 1 <= n <= T.
/// The truncated part and the tail bound are combined as (a^p + b^p)^(1/p)
/// for Lp and max(a, b) for the sup norm.
double tail_norm(const Seq& x, std::size_t n, const AmbientSpace& space);
Rational tail_norm(const ExactSeq& x, std::size_t n, const AmbientSpace& space);

/// Double-precision view of an exact sequence.
Seq to_float(const ExactSeq& x);

/// Exact view of a float sequence (dyadic rationals).
ExactSeq to_exact(const Seq& x);

template <Scalar S>
Seq as_float(const BasicSeq<S>& x) {
  if constexpr (ScalarOps<S>::exact) {
    return to_float(x);
  } else {
    return x;
  }
}

}  // namespace seqlab
