#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "seqlab/ledger.hpp"
#include "seqlab/projection.hpp"
#include "seqlab/seq.hpp"
#include "seqlab/space.hpp"
#include "seqlab/subspace.hpp"

namespace seqlab {

/// Inclusive coordinate window [first, last].
struct Window {
  std::size_t first = 0;
  std::size_t last = 0;

  bool contains(std::size_t j) const noexcept { return first <= j && j <= last; }
  friend bool operator==(const Window&, const Window&) = default;
};

/// Upper bound for eps in the block construction (exclusive).
inline constexpr double kLemmaAEpsLimit = 4.0 / 33.0;
/// Upper bound for eps in the iterative zeroing (exclusive).
inline constexpr double kLemmaBEpsLimit = 1.0 / 512.0;

struct LpOptions {
  double eps = 0.1;
  std::size_t depth = 6;
  std::size_t samples = 200;  ///< sampled norm / basis-constant checks
  std::uint64_t seed = 0;
  std::optional<Seq> f1;      ///< start vector in V; normalized internally
};

struct PerturbCert {
  double K = 1.0;
  double P_norm = 1.0;
  double delta = 0.0;
  bool ok = false;  ///< 8 K delta P_norm < 1
  // Only meaningful when ok.
  double T_norm_bound = 0.0;          ///< 1 + 2 K delta
  double basis_constant_bound = 0.0;  ///< 2 / (1 - 2 K delta)
  double Q_norm_bound = 0.0;          ///< 2 P / (1 - 8 K delta P), with |T| <= 2
  double Q_norm_bound_tight = 0.0;    ///< (1 + 2 K delta) P / (1 - 8 K delta P)
};

/// Bounds of the small-perturbation principle from delta, K and |P|.
PerturbCert perturbation_bounds(double delta, double K, double P_norm);

/// delta = sum_k |perturbed_k - base_k| (tails included), then perturbation_bounds.
PerturbCert small_perturbation_cert(std::span<const Seq> base, std::span<const Seq> perturbed,
                                    double K, double P_norm, const AmbientSpace& space);

/// Norm-one projection onto the closed span of disjoint normalized blocks.
/// Throws OverlappingWindows / UnnormalizedBlock.
ProjectionOp block_projection(std::span<const Seq> g, std::span<const Window> sigma,
                              const AmbientSpace& space, double eta = 1e-9);

/// Norming functional of a unit block g supported on its window.
Seq norming_functional(const Seq& g, const Window& w, const AmbientSpace& space);

/// Projection onto span(f) along the blocks: Q = sum_j (sum_k Minv[j][k] phi_k) (x) f_j
/// with M[k][j] = phi_k(f_j).
ProjectionOp perturbed_projection(std::span<const Seq> f, const ProjectionOp& block);

/// Sampled lower bound on the basis constant of f: the largest
/// |sum_{k<=n} a_k f_k| / |sum_{k<=m} a_k f_k| found, refined by coordinate search.
double basis_constant_lower_bound(std::span<const Seq> f, const AmbientSpace& space,
                                  std::size_t trials, std::uint64_t seed = 0);

struct LemmaACert {
  AmbientSpace space = AmbientSpace::lp(2.0);
  double eps = 0.0;
  double eta = 1e-9;
  std::vector<std::size_t> s;
  std::vector<std::size_t> N;
  std::vector<Seq> f;
  std::vector<Seq> f_tilde;
  std::vector<Seq> g;
  std::vector<Window> sigma;
  double delta = 0.0;
  PerturbCert perturb;           ///< f against g with K = 1, |P| = 1
  double basis_constant_sampled = 0.0;
  double P_norm_sampled = 0.0;
  double Q_norm_sampled = 0.0;
  Ledger ledger;

  bool pass() const { return ledger.all_pass(); }
};

/// Throws EpsOutOfRange, DimensionExhausted, SearchExhausted.
LemmaACert construct_lemmaA(const Subspace& v, const LpOptions& opt);

struct LemmaBCert {
  LemmaACert a;
  double eps = 0.0;
  std::vector<Seq> l;
  /// steps[k-1][t] = |l_{t+1,k} - l_{t,k}|
  std::vector<std::vector<double>> steps;
  std::vector<double> residuals;  ///< |l_k - f_k|
  std::size_t iteration_depth = 0;
  double delta = 0.0;             ///< sum of residuals
  double product_Q = 0.0;         ///< 8 K delta |Q| bound
  double product_unit = 0.0;      ///< 8 K delta with |P| = 1
  PerturbCert perturb;            ///< l against f, K and |P| from the block stage
  Ledger ledger;

  const std::vector<std::size_t>& s() const noexcept { return a.s; }
  bool pass() const { return a.pass() && ledger.all_pass(); }
};

/// Throws EpsOutOfRange (eps >= 1/512) and whatever construct_lemmaA throws.
LemmaBCert construct_lemmaB(const Subspace& v, const LpOptions& opt);

/// l_{t+1,k} = l_{t,k} - (l_{t,k}(s_{k+t+1}) / f_{k+t+1}(s_{k+t+1})) f_{k+t+1} for
/// every remaining index; iterates[t] = l_{t,k}. k counts from 1.
std::vector<Seq> zeroing_iterates(std::span<const Seq> f, std::span<const std::size_t> s,
                                  std::size_t k);

}  // namespace seqlab
