#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "seqlab/ledger.hpp"
#include "seqlab/linf_construction.hpp"
#include "seqlab/lp_construction.hpp"
#include "seqlab/projection.hpp"
#include "seqlab/seq.hpp"
#include "seqlab/subspace.hpp"

namespace seqlab {

struct WitnessCert {
  AmbientSpace space = AmbientSpace::lp(2.0);
  std::string source;  ///< "lemmaB" or "linf"
  std::vector<std::size_t> s;
  std::vector<Seq> even_family;  ///< l_{s_2}, l_{s_4}, ...
  std::vector<Seq> odd_family;   ///< l_{s_1}, l_{s_3}, ...
  std::vector<std::size_t> forbidden_indices;  ///< s_1, s_3, ...
  std::size_t samples_checked = 0;
  std::uint64_t seed = 0;
  double max_violation = 0.0;
  std::size_t rank = 0;  ///< exact rank of the even family
  Ledger ledger;

  bool pass() const { return ledger.all_pass(); }
};

/// Splits l by index parity and checks sampled even combinations on the odd
/// indices. Throws TooFewIndices (< 4 indices) and WitnessViolation.
WitnessCert spaceable_witness(std::span<const Seq> l, std::span<const std::size_t> s,
                              const AmbientSpace& space, std::size_t samples, std::uint64_t seed,
                              double eta = 1e-9);
WitnessCert spaceable_witness(const LemmaBCert& cert, std::size_t samples, std::uint64_t seed);
template <Scalar S>
WitnessCert spaceable_witness(const BasicLInfLCert<S>& cert, std::size_t samples, std::uint64_t seed);

struct SplitReport {
  ProjectionOp split;  ///< sum over even j of psi_j (x) l_j, psi_j(l_i) = delta_ij
  double norm_sampled = 0.0;
  double idempotency_residual = 0.0;  ///< max |E(Ex) - Ex| / |x| over samples
  double fixed_point_residual = 0.0;  ///< max_j |E l_j - l_j| (even j)
  double odd_residual = 0.0;          ///< max_j |E l_j| (odd j)
  Ledger ledger;

  bool pass() const { return ledger.all_pass(); }
};

/// Idempotent on span(l) fixing the even l's and killing the odd ones; the
/// biorthogonal functionals come from the block functionals behind Q.
/// Throws MissingPerturbCert when the block stage has no perturbation certificate.
SplitReport complement_split(const LemmaBCert& cert, std::size_t samples = 200,
                             std::uint64_t seed = 0);

template <Scalar S>
struct DensityResult {
  BasicSeq<S> g;
  double distance = 0.0;      ///< |g - f|
  double bound = 0.0;         ///< |f| eps / 2 (lp) or 9 sum |f(s_k)| (c0)
  std::vector<std::size_t> candidates;  ///< c0: the greedily selected Mazur indices
  std::vector<std::size_t> zero_set;    ///< indices on which g vanishes by construction
  std::vector<BasicSeq<S>> l;           ///< c0: the l-family used for the correction
  std::optional<LemmaBCert> rerun;      ///< lp: the construction rerun from f
  std::optional<LpOptions> rerun_options;
  Ledger ledger;

  bool pass() const { return ledger.all_pass(); }
};

/// l_p path. If f already vanishes on the cert's s_2, s_3, ... it is returned
/// unchanged; otherwise Lemma A/B are rerun from f/|f| with eps' = min(eps, 1/1024)
/// and |f| l_1 is returned. Throws ZeroVector.
DensityResult<double> density_repair_lp(const Subspace& v, const LemmaBCert& cert, const Seq& f,
                                        double eps);

struct C0RepairOptions {
  double eps = 1e-2;
  std::size_t depth = 3;
  double stab_tol = kDefaultStabTol;
  std::size_t samples = 200;
  std::uint64_t seed = 0;
};

/// c0 path: greedy smallest-|f| Mazur indices under the budget 9 sum <= eps,
/// cascade and l-family on them, g = f - sum_k f(s_k) l_{s_k}.
/// Throws ZeroVector, SearchExhausted.
template <Scalar S>
DensityResult<S> density_repair_c0(const BasicMazurCert<S>& mazur, const BasicSeq<S>& f,
                                   const C0RepairOptions& opt);

/// f in span(V) and f vanishes on every forbidden index.
template <Scalar S>
bool algebra_witness_membership(const BasicSubspace<S>& v, std::span<const std::size_t> forbidden,
                                const BasicSeq<S>& f);

}  // namespace seqlab
