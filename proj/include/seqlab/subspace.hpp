#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "seqlab/linalg.hpp"
#include "seqlab/seq.hpp"
#include "seqlab/space.hpp"

namespace seqlab {

/// Finite-dimensional stand-in for a closed subspace V of the ambient space:
/// a spanning family plus its reduced row echelon basis.
///
/// Basis row i has a 1 at position pivots()[i] and 0 at every other pivot,
/// so the coordinates of f in the basis are just f at the pivot positions.
template <Scalar S>
class BasicSubspace {
 public:
  BasicSubspace(AmbientSpace ambient, std::vector<BasicSeq<S>> generators, double eta = 1e-9)
      : ambient_(ambient), generators_(std::move(generators)), eta_(eta) {
    if (generators_.empty()) throw Error(Errc::PreconditionViolated, "subspace needs generators");
    truncation_ = generators_.front().size();
    bool any_tail = false;
    Matrix<S> m;
    m.reserve(generators_.size());
    for (const auto& g : generators_) {
      if (g.size() != truncation_) {
        throw Error(Errc::LengthMismatch, "generators must share one truncation");
      }
      any_tail = any_tail || g.tail_bound() > 0;
      m.emplace_back(g.coords().begin(), g.coords().end());
    }
    auto ech = reduce(std::move(m), eta_, any_tail);
    pivots_ = std::move(ech.pivots);
    basis_.reserve(ech.rank());
    for (std::size_t i = 0; i < ech.rank(); ++i) {
      S tail(0);
      if (any_tail) {
        for (std::size_t j = 0; j < generators_.size(); ++j)
          tail += ScalarOps<S>::abs(ech.transform[i][j]) * generators_[j].tail_bound();
      }
      basis_.emplace_back(std::move(ech.rows[i]), tail);
    }
  }

  const AmbientSpace& ambient() const noexcept { return ambient_; }
  std::size_t truncation() const noexcept { return truncation_; }
  std::size_t dim() const noexcept { return basis_.size(); }
  double eta() const noexcept { return eta_; }
  const std::vector<BasicSeq<S>>& generators() const noexcept { return generators_; }
  const std::vector<BasicSeq<S>>& basis() const noexcept { return basis_; }
  const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }

  /// Coefficients of f in the reduced basis (exact when f lies in the span).
  std::vector<S> coordinates_of(const BasicSeq<S>& f) const {
    std::vector<S> c(dim());
    for (std::size_t i = 0; i < dim(); ++i) c[i] = f[pivots_[i]];
    return c;
  }

  BasicSeq<S> combination(std::span<const S> coeffs) const {
    BasicSeq<S> out(truncation_);
    for (std::size_t i = 0; i < coeffs.size() && i < dim(); ++i) {
      if (!ScalarOps<S>::is_zero(coeffs[i], 0.0)) out = axpy(coeffs[i], basis_[i], out);
    }
    return out;
  }

  /// sup-norm distance from f to its reconstruction in the basis.
  double residual(const BasicSeq<S>& f) const {
    if (f.size() != truncation_) throw Error(Errc::LengthMismatch, "residual: truncation mismatch");
    auto c = coordinates_of(f);
    return ScalarOps<S>::to_double(sup_norm(f - combination(c)));
  }

  bool contains(const BasicSeq<S>& f) const {
    if constexpr (ScalarOps<S>::exact) {
      if (f.size() != truncation_) throw Error(Errc::LengthMismatch, "contains: truncation mismatch");
      return sgn(sup_norm(f - combination(coordinates_of(f)))) == 0;
    } else {
      return residual(f) <= eta_ * std::max(1.0, sup_norm(f));
    }
  }

  /// V intersected with {f : f(j) = 0 for every j in zeros}.
  /// Throws DimensionExhausted when the intersection is {0}.
  BasicSubspace restrict_to_zero_set(std::span<const std::size_t> zeros) const {
    Matrix<S> constraints;
    constraints.reserve(zeros.size());
    for (auto j : zeros) {
      if (j >= truncation_) throw Error(Errc::IndexOutOfRange, "zero-set position beyond truncation");
      std::vector<S> row(dim());
      for (std::size_t i = 0; i < dim(); ++i) row[i] = basis_[i][j];
      constraints.push_back(std::move(row));
    }
    auto kernel = nullspace_basis(std::move(constraints), dim(), eta_);
    if (kernel.empty()) {
      throw Error(Errc::DimensionExhausted, "no nonzero vector of the " + std::to_string(dim()) +
                                                "-dimensional subspace vanishes on the " +
                                                std::to_string(zeros.size()) + " requested positions");
    }
    std::vector<BasicSeq<S>> gens;
    gens.reserve(kernel.size());
    for (const auto& c : kernel) {
      auto v = combination(c);
      for (auto j : zeros) v[j] = S(0);
      gens.push_back(std::move(v));
    }
    return BasicSubspace(ambient_, std::move(gens), eta_);
  }

 private:
  AmbientSpace ambient_;
  std::vector<BasicSeq<S>> generators_;
  std::vector<BasicSeq<S>> basis_;
  std::vector<std::size_t> pivots_;
  std::size_t truncation_ = 0;
  double eta_;
};

using Subspace = BasicSubspace<double>;
using ExactSubspace = BasicSubspace<Rational>;

/// f / norm(f). Exact mode supports the l1 and sup norms only.
template <Scalar S>
BasicSeq<S> normalized(const BasicSeq<S>& f, const AmbientSpace& space) {
  if constexpr (ScalarOps<S>::exact) {
    Rational n = norm(f, space);
    if (sgn(n) == 0) throw Error(Errc::ZeroVector, "cannot normalize the zero vector");
    return scaled(Rational(1 / n), f);
  } else {
    double n = norm(f, space);
    if (n == 0.0) throw Error(Errc::ZeroVector, "cannot normalize the zero vector");
    return scaled(1.0 / n, f);
  }
}

/// Unit vector of span(V) vanishing on positions 0..prefix-1.
///
/// Solves the homogeneous system "f(j) = 0 for j < prefix" in the reduced
/// basis coordinates and normalizes the nullspace vector whose
/// lexicographically-first free variable is 1. Throws DimensionExhausted
/// when the system has only the trivial solution.
template <Scalar S>
BasicSeq<S> vanish_on_prefix(const BasicSubspace<S>& v, std::size_t prefix) {
  if (prefix > v.truncation()) throw Error(Errc::IndexOutOfRange, "prefix beyond truncation");
  Matrix<S> system;
  system.reserve(prefix);
  for (std::size_t j = 0; j < prefix; ++j) {
    std::vector<S> row(v.dim());
    for (std::size_t i = 0; i < v.dim(); ++i) row[i] = v.basis()[i][j];
    system.push_back(std::move(row));
  }
  auto c = first_nullspace_vector(std::move(system), v.dim(), v.eta());
  if (!c) {
    throw Error(Errc::DimensionExhausted, "dim(V) = " + std::to_string(v.dim()) +
                                              " leaves no vector vanishing on the first " +
                                              std::to_string(prefix) + " coordinates");
  }
  auto f = v.combination(*c);
  return normalized(f, v.ambient());
}

}  // namespace seqlab
