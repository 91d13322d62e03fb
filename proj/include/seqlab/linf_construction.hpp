#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "seqlab/ledger.hpp"
#include "seqlab/seq.hpp"
#include "seqlab/space.hpp"
#include "seqlab/subspace.hpp"

namespace seqlab {

inline constexpr double kDefaultStabTol = 1e-6;
/// Cap on eps in the final l-construction.
inline constexpr double kLinfEpsCap = 1.0 / 64.0;

/// Smallest s with |f(s)| >= |f|_inf / 2 (float mode allows eta slack).
/// Throws ZeroVector.
template <Scalar S>
std::size_t halving_support(const BasicSeq<S>& f, double eta = 1e-9);

/// eps_1 = 1, eps_i = 2^-i for i >= 2.
std::vector<double> default_eps_seq(std::size_t length);

struct MazurOptions {
  std::vector<double> eps_seq;  ///< empty: default_eps_seq(depth)
  std::size_t depth = 5;
  /// When nonzero, running out of dimension or coordinates after min_depth
  /// steps ends the sequence early instead of throwing.
  std::size_t min_depth = 0;
  /// Each step's coordinate set J must satisfy max_J |y| >= (1 - r eps_k) |y|_inf on
  /// the span so far; r = 1/2 matches an eps_k/2-net.
  double net_resolution = 0.5;
  std::size_t samples = 1000;
  std::uint64_t seed = 0;
};

template <Scalar S>
struct BasicMazurCert {
  AmbientSpace space = AmbientSpace::linf();
  std::vector<double> eps_seq;
  double eps_product = 1.0;  ///< prod (1 + eps_i) over the steps used
  double net_resolution = 0.5;
  std::vector<std::size_t> n;
  std::vector<BasicSeq<S>> f;
  /// functionals[k]: the coordinates j whose functionals sign(y(j)) e_j^* cut out W_k.
  std::vector<std::vector<std::size_t>> functionals;
  std::vector<std::size_t> net_sizes;
  std::vector<double> net_constants;  ///< sup_y |y|_inf / max_J |y| over span(f_1..f_k)
  std::size_t unverified_candidates = 0;  ///< LP optima that failed exact re-verification
  double basis_ratio_sampled = 0.0;     ///< max |S_n| / (prod (1+eps_i) |S_m|)
  std::size_t samples = 0;
  Ledger ledger;

  bool pass() const { return ledger.all_pass(); }
};

using MazurCert = BasicMazurCert<double>;
using ExactMazurCert = BasicMazurCert<Rational>;

/// Throws PreconditionViolated, DimensionExhausted, SearchExhausted, NetTooCoarse.
template <Scalar S>
BasicMazurCert<S> mazur_basic_sequence(const BasicSubspace<S>& v, const MazurOptions& opt);

template <Scalar S>
struct Stabilized {
  std::vector<std::size_t> indices;
  S L1{0};
  S L2{0};
};

/// Sublist of m[2..] on which g1 and then g2 stay inside a window of width
/// stab_tol holding the most indices (ties to the smaller value); L1, L2 are
/// the window midpoints. Throws InsufficientStabilization below 4 indices.
template <Scalar S>
Stabilized<S> extract_stabilizing_subsequence(const BasicSeq<S>& g1, const BasicSeq<S>& g2,
                                              std::span<const std::size_t> m, double stab_tol);

enum class CascadeCase { ZeroL1 = 1, ZeroL2 = 2, L1OverL2 = 3, L2OverL1 = 4 };

double case_bound(CascadeCase c) noexcept;

template <Scalar S>
struct CascadeLevel {
  std::size_t m1 = 0;
  std::size_t m2 = 0;
  CascadeCase which = CascadeCase::ZeroL1;
  S L1{0};
  S L2{0};
  std::vector<std::size_t> stabilized;
  double h_norm = 0.0;
  double envelope = 0.0;  ///< max |h(j)| over the stabilized indices
};

template <Scalar S>
struct BasicHCascadeCert {
  AmbientSpace space = AmbientSpace::linf();
  double stab_tol = kDefaultStabTol;
  std::vector<std::size_t> t;
  std::vector<BasicSeq<S>> h;
  std::vector<CascadeLevel<S>> levels;
  Ledger ledger;

  bool pass() const { return ledger.all_pass(); }
};

using HCascadeCert = BasicHCascadeCert<double>;
using ExactHCascadeCert = BasicHCascadeCert<Rational>;

/// m must be an increasing sublist of mazur.n. Throws InsufficientStabilization,
/// CaseBoundViolated, PreconditionViolated.
template <Scalar S>
BasicHCascadeCert<S> build_h_cascade(const BasicMazurCert<S>& mazur, std::span<const std::size_t> m,
                                     std::size_t depth, double stab_tol);

struct LinfLOptions {
  std::size_t depth = 5;
  std::size_t samples = 200;  ///< basis-constant estimate
  std::uint64_t seed = 0;
};

template <Scalar S>
struct BasicLInfLCert {
  AmbientSpace space = AmbientSpace::linf();
  double K_est = 1.0;
  double eps = 0.0;
  std::vector<std::size_t> s;
  std::vector<std::size_t> h_index;  ///< s_k = cascade.t[h_index[k]]
  std::vector<BasicSeq<S>> h;        ///< h_{s_k}
  std::vector<BasicSeq<S>> l;
  /// steps[k-1][t] = |l_{t+1,k} - l_{t,k}|_inf
  std::vector<std::vector<double>> steps;
  std::vector<double> residuals;  ///< |l_k - h_{s_k}|_inf
  double delta = 0.0;             ///< sum residual_k / |h_{s_k}|_inf
  Ledger ledger;

  bool pass() const { return ledger.all_pass(); }
};

using LInfLCert = BasicLInfLCert<double>;
using ExactLInfLCert = BasicLInfLCert<Rational>;

/// Greedy selection of s from the cascade plus the correction recursion.
/// Throws SearchExhausted when fewer than opt.depth indices qualify.
template <Scalar S>
BasicLInfLCert<S> construct_linf_l(const BasicHCascadeCert<S>& cascade, const LinfLOptions& opt);

struct LinfOptions {
  std::size_t depth = 5;        ///< length of the l-family
  /// Mazur steps attempted; 0 means 6 depth + 8. At least 2 depth + 4 are required,
  /// the rest are spare indices for the clustering to discard.
  std::size_t mazur_depth = 0;
  double stab_tol = kDefaultStabTol;
  double net_resolution = 0.5;
  std::size_t samples = 1000;
  std::uint64_t seed = 0;
};

template <Scalar S>
struct BasicLinfPipelineCert {
  BasicMazurCert<S> mazur;
  BasicHCascadeCert<S> cascade;
  BasicLInfLCert<S> l;

  bool pass() const { return mazur.pass() && cascade.pass() && l.pass(); }
};

using LinfPipelineCert = BasicLinfPipelineCert<double>;
using ExactLinfPipelineCert = BasicLinfPipelineCert<Rational>;

/// Mazur sequence, cascade over all of its indices, then the l-family.
template <Scalar S>
BasicLinfPipelineCert<S> construct_linf(const BasicSubspace<S>& v, const LinfOptions& opt);

}  // namespace seqlab
