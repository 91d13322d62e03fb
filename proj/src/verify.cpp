#include "seqlab/verify.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "seqlab/certificate_io.hpp"
#include "seqlab/cli.hpp"
#include "seqlab/fixture.hpp"
#include "seqlab/kernels.hpp"
#include "seqlab/linalg.hpp"
#include "seqlab/rng.hpp"
#include "seqlab/subspace.hpp"

namespace seqlab {

namespace {

using nlohmann::json;

[[noreturn]] void malformed(const std::string& what) { throw Error(Errc::MalformedCertificate, what); }

template <class T>
T get_as(const json& j, const char* key) {
  try {
    return field(j, key).get<T>();
  } catch (const json::exception& e) {
    malformed(std::string("field '") + key + "': " + e.what());
  }
}

template <Scalar S>
std::vector<BasicSeq<S>> seqs(const json& arr) {
  if (!arr.is_array()) malformed("expected an array of sequences");
  std::vector<BasicSeq<S>> out;
  for (const auto& x : arr) out.push_back(basic_seq_from_json<S>(x));
  return out;
}

template <Scalar S>
S scalar_field(const json& j, const char* key) {
  if constexpr (ScalarOps<S>::exact) {
    try {
      return rational_from_json(field(j, key));
    } catch (const Error& e) {
      if (e.code() == Errc::MalformedCertificate) throw;
      malformed(std::string("field '") + key + "': " + e.what());
    }
  } else {
    return get_as<double>(j, key);
  }
}

template <Scalar S>
double dbl(const S& x) {
  return ScalarOps<S>::to_double(x);
}

double pow2(int e) { return std::ldexp(1.0, e); }

// ---------------------------------------------------------------------------
// 256-bit norms

constexpr mpfr_prec_t kPrec = 256;

class Mp {
 public:
  Mp() {
    mpfr_init2(v_, kPrec);
    mpfr_set_zero(v_, 1);
  }
  explicit Mp(double x) : Mp() { mpfr_set_d(v_, x, MPFR_RNDN); }
  Mp(const Mp& o) : Mp() { mpfr_set(v_, o.v_, MPFR_RNDN); }
  Mp& operator=(const Mp& o) {
    mpfr_set(v_, o.v_, MPFR_RNDN);
    return *this;
  }
  ~Mp() { mpfr_clear(v_); }
  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }
  double d() const { return mpfr_get_d(v_, MPFR_RNDN); }

 private:
  mpfr_t v_;
};

struct Term {
  double c;
  const Seq* x;
};

// Norm of sum_i c_i x_i on positions >= from. abs_terms sums |c_i x_i| instead;
// with_tail folds in sum |c_i| tail_i.
double hp_norm(const std::vector<Term>& terms, const AmbientSpace& space, std::size_t from = 0,
               bool with_tail = false, bool abs_terms = false) {
  if (terms.empty()) return 0.0;
  const std::size_t T = terms.front().x->size();
  const bool sup = space.is_sup();
  const double p = space.p();
  const bool int_p = !sup && p == std::floor(p) && p <= 64;
  Mp total, coord, prod, tail, pp;
  if (!sup) mpfr_set_d(pp.get(), p, MPFR_RNDN);
  auto accumulate = [&](Mp& v) {
    mpfr_abs(v.get(), v.get(), MPFR_RNDN);
    if (sup) {
      mpfr_max(total.get(), total.get(), v.get(), MPFR_RNDN);
    } else {
      if (int_p) {
        mpfr_pow_ui(v.get(), v.get(), static_cast<unsigned long>(p), MPFR_RNDN);
      } else {
        mpfr_pow(v.get(), v.get(), pp.get(), MPFR_RNDN);
      }
      mpfr_add(total.get(), total.get(), v.get(), MPFR_RNDN);
    }
  };
  for (std::size_t j = from; j < T; ++j) {
    mpfr_set_zero(coord.get(), 1);
    for (const auto& t : terms) {
      mpfr_set_d(prod.get(), (*t.x)[j], MPFR_RNDN);
      mpfr_mul_d(prod.get(), prod.get(), t.c, MPFR_RNDN);
      if (abs_terms) mpfr_abs(prod.get(), prod.get(), MPFR_RNDN);
      mpfr_add(coord.get(), coord.get(), prod.get(), MPFR_RNDN);
    }
    accumulate(coord);
  }
  if (with_tail) {
    for (const auto& t : terms) {
      mpfr_set_d(prod.get(), t.x->tail_bound(), MPFR_RNDN);
      mpfr_mul_d(prod.get(), prod.get(), std::fabs(t.c), MPFR_RNDN);
      mpfr_add(tail.get(), tail.get(), prod.get(), MPFR_RNDN);
    }
    accumulate(tail);
  }
  if (!sup) {
    if (int_p) {
      mpfr_rootn_ui(total.get(), total.get(), static_cast<unsigned long>(p), MPFR_RNDN);
    } else {
      mpfr_ui_div(pp.get(), 1, pp.get(), MPFR_RNDN);
      mpfr_pow(total.get(), total.get(), pp.get(), MPFR_RNDN);
    }
  }
  return total.d();
}

double hp_norm(const Seq& x, const AmbientSpace& space, bool with_tail = false) {
  return hp_norm({{1.0, &x}}, space, 0, with_tail);
}

double hp_diff(const Seq& x, const Seq& y, const AmbientSpace& space, bool with_tail) {
  return hp_norm({{1.0, &x}, {-1.0, &y}}, space, 0, with_tail);
}

template <Scalar S>
S exact_sup(const BasicSeq<S>& x) {
  S best(0);
  for (const auto& c : x.coords()) {
    S a = ScalarOps<S>::abs(c);
    if (a > best) best = a;
  }
  return best;
}

template <Scalar S>
double max_coord_diff(const BasicSeq<S>& a, const BasicSeq<S>& b) {
  if (a.size() != b.size()) return INFINITY;
  double worst = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) worst = std::max(worst, std::fabs(dbl(S(a[j] - b[j]))));
  return worst;
}

// ---------------------------------------------------------------------------

class Checker {
 public:
  Checker(Ledger& ledger, std::string prefix) : L_(ledger), prefix_(std::move(prefix)) {}

  void ineq(const std::string& name, int k, int t, double lhs, const char* rel, double rhs) {
    L_.record(prefix_ + name, k, t, lhs, rel, rhs);
  }
  void holds(const std::string& name, int k, int t, bool cond) {
    L_.record(prefix_ + name, k, t, cond ? 0.0 : 1.0, "<=", 0.0);
  }
  Ledger& ledger() { return L_; }
  const std::string& prefix() const { return prefix_; }

 private:
  Ledger& L_;
  std::string prefix_;
};

void verify_into(const json& cert, Ledger& L, const std::string& prefix);

void reproduce(const json& cert, Checker& c) {
  double diffs = 0.0;
  try {
    const json rebuilt = run_scenario(scenario_from_certificate(cert));
    diffs = static_cast<double>(json::diff(cert, rebuilt).size());
  } catch (const Error& e) {
    if (e.code() == Errc::MalformedCertificate) throw;
    diffs = INFINITY;
  }
  c.ineq("reproduces", 0, -1, diffs, "<=", 0.0);
}

FixtureSpec fixture_of(const json& cert) {
  try {
    return fixture_from_json(field(cert, "fixture"));
  } catch (const Error& e) {
    if (e.code() == Errc::MalformedCertificate) throw;
    malformed(std::string("fixture: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// lineability

Rational eval_combination(const std::vector<Rational>& ratios, const std::vector<Rational>& coeffs,
                          std::vector<Rational>& powers) {
  Rational x(0);
  for (std::size_t i = 0; i < ratios.size(); ++i) {
    powers[i] *= ratios[i];
    x += coeffs[i] * powers[i];
  }
  return x;
}

void verify_lineability(const json& cert, Checker& c) {
  std::vector<Rational> ratios, coeffs;
  try {
    for (const auto& r : field(cert, "ratios")) ratios.push_back(rational_from_json(r));
    for (const auto& r : field(cert, "coeffs")) coeffs.push_back(rational_from_json(r));
  } catch (const Error& e) {
    if (e.code() == Errc::MalformedCertificate) throw;
    malformed(std::string("ratios/coeffs: ") + e.what());
  }
  if (ratios.empty() || ratios.size() != coeffs.size()) malformed("ratios and coeffs must match in length");
  const auto scan = get_as<std::size_t>(cert, "scan_limit");
  const auto stored_zeros = get_as<std::vector<std::size_t>>(cert, "zero_set");
  const auto M = get_as<std::size_t>(cert, "certified_bound");
  const auto rank = get_as<std::size_t>(cert, "rank");

  bool ordered = true;
  for (std::size_t i = 0; i < ratios.size(); ++i) {
    ordered = ordered && sgn(ratios[i]) > 0 && ratios[i] < 1 && sgn(coeffs[i]) != 0;
    if (i > 0) ordered = ordered && ratios[i - 1] < ratios[i];
  }
  c.holds("ratios_distinct_in_unit_interval", 0, -1, ordered);
  // Distinct nonzero nodes: the Vandermonde matrix has full rank.
  c.ineq("rank", 0, -1, static_cast<double>(ratios.size()), "<=", static_cast<double>(rank));
  c.ineq("rank_upper", 0, -1, static_cast<double>(rank), "<=", static_cast<double>(ratios.size()));
  if (!ordered) return;

  // Envelope: beyond J0 the top term dominates the rest.
  const std::size_t N = ratios.size() - 1;
  std::size_t J0 = 0;
  if (N > 0) {
    Rational rest(0);
    for (std::size_t i = 0; i < N; ++i) rest += abs(coeffs[i]);
    const Rational q = ratios[N - 1] / ratios[N];
    Rational env = rest;
    const std::size_t cap = 200000;
    while (!(env < abs(coeffs[N])) && J0 < cap) {
      env *= q;
      ++J0;
    }
    c.ineq("envelope_found", 0, -1, static_cast<double>(J0), "<", static_cast<double>(cap));
  }
  std::vector<Rational> powers(ratios.size(), Rational(1));
  std::vector<std::size_t> zeros;
  const std::size_t limit = std::max(scan, J0);
  for (std::size_t j = 1; j <= limit; ++j) {
    if (sgn(eval_combination(ratios, coeffs, powers)) == 0) zeros.push_back(j);
  }
  std::vector<std::size_t> in_scan;
  for (auto z : zeros)
    if (z <= scan) in_scan.push_back(z);
  c.holds("zero_set", 0, -1, in_scan == stored_zeros);
  const double last = zeros.empty() ? 0.0 : static_cast<double>(zeros.back());
  c.ineq("zeros_within_bound", 0, -1, last, "<=", static_cast<double>(M));
  c.ineq("zero_set_size", 0, -1, static_cast<double>(zeros.size()), "<=", static_cast<double>(M));
}

// ---------------------------------------------------------------------------
// Lemma A / B

struct ParsedA {
  AmbientSpace space = AmbientSpace::lp(2.0);
  double eps = 0.0;
  double eta = 1e-9;
  std::vector<std::size_t> s, N;
  std::vector<Seq> f;
  double K = 1.0;  ///< recomputed basis-constant bound
  double Q = 1.0;  ///< recomputed |Q| bound
};

PerturbCert formulas(double delta, double K, double P) {
  PerturbCert p;
  p.K = K;
  p.P_norm = P;
  p.delta = delta;
  p.ok = 8.0 * K * delta * P < 1.0;
  if (p.ok) {
    p.T_norm_bound = 1.0 + 2.0 * K * delta;
    p.basis_constant_bound = 2.0 / (1.0 - 2.0 * K * delta);
    p.Q_norm_bound = 2.0 * P / (1.0 - 8.0 * K * delta * P);
    p.Q_norm_bound_tight = (1.0 + 2.0 * K * delta) * P / (1.0 - 8.0 * K * delta * P);
  }
  return p;
}

double rel_diff(double a, double b) { return std::fabs(a - b) / std::max(1.0, std::fabs(b)); }

void check_perturb(const json& stored, const PerturbCert& want, Checker& c, const char* name) {
  double worst = 0.0;
  worst = std::max(worst, rel_diff(get_as<double>(stored, "delta"), want.delta));
  worst = std::max(worst, rel_diff(get_as<double>(stored, "K"), want.K));
  worst = std::max(worst, rel_diff(get_as<double>(stored, "P_norm"), want.P_norm));
  if (get_as<bool>(stored, "ok") != want.ok) worst = INFINITY;
  if (want.ok) {
    worst = std::max(worst, rel_diff(get_as<double>(stored, "T_norm_bound"), want.T_norm_bound));
    worst = std::max(worst, rel_diff(get_as<double>(stored, "basis_constant_bound"), want.basis_constant_bound));
    worst = std::max(worst, rel_diff(get_as<double>(stored, "Q_norm_bound"), want.Q_norm_bound));
    worst = std::max(worst, rel_diff(get_as<double>(stored, "Q_norm_bound_tight"), want.Q_norm_bound_tight));
  }
  c.ineq(name, 0, -1, worst, "<=", 1e-12);
}

ParsedA verify_lemmaA_body(const Subspace& v, const json& a, Checker& c) {
  ParsedA r;
  r.space = v.ambient();
  r.eps = get_as<double>(a, "eps");
  r.eta = get_as<double>(a, "eta");
  r.s = get_as<std::vector<std::size_t>>(a, "s");
  r.N = get_as<std::vector<std::size_t>>(a, "N");
  r.f = seqs<double>(field(a, "f"));
  const auto ft = seqs<double>(field(a, "f_tilde"));
  const auto g = seqs<double>(field(a, "g"));
  const auto sigma = get_as<std::vector<std::pair<std::size_t, std::size_t>>>(a, "sigma");
  const std::size_t D = r.f.size();
  if (D == 0 || r.s.size() != D || r.N.size() != D || ft.size() != D || g.size() != D || sigma.size() != D) {
    malformed("Lemma A families differ in length");
  }
  const auto& space = r.space;
  const double eps = r.eps;
  const double eta = r.eta;
  const std::size_t T = v.truncation();
  for (std::size_t i = 0; i < D; ++i) {
    if (r.f[i].size() != T || ft[i].size() != T || g[i].size() != T) malformed("sequence length differs from T");
    if (r.s[i] >= T || r.N[i] >= T) malformed("index beyond truncation");
  }

  double delta = 0.0;
  std::vector<Term> running;
  for (std::size_t i = 0; i < D; ++i) {
    const int k = static_cast<int>(i) + 1;
    const Seq& fk = r.f[i];
    c.ineq("membership", k, -1, v.residual(fk), "<=", eta * std::max(1.0, sup_norm(fk)));
    c.ineq("unit_norm", k, -1, std::fabs(hp_norm(fk, space) - 1.0), "<=", eta);
    if (i == 0) {
      c.ineq("first_nonzero", k, -1, std::fabs(fk[r.s[0]]), ">", eta);
    } else {
      double prefix = 0.0;
      for (std::size_t n = 0; n <= r.N[i - 1]; ++n) prefix = std::max(prefix, std::fabs(fk[n]));
      c.ineq("prefix_zero", k, -1, prefix, "<=", eta);
      c.ineq("s_after_N", k, -1, static_cast<double>(r.N[i - 1]), "<", static_cast<double>(r.s[i]));
      long double head = 0.0L;
      for (std::size_t j = 0; j < i; ++j) head += std::fabs(static_cast<long double>(r.f[j][r.s[i]]));
      c.ineq("dominance", k, -1, static_cast<double>(head), "<", eps / pow2(k) * std::fabs(fk[r.s[i]]));
    }
    c.ineq("N_after_s", k, -1, static_cast<double>(r.s[i]), i == 0 ? "<=" : "<", static_cast<double>(r.N[i]));
    running.push_back({1.0, &r.f[i]});
    c.ineq("tail", k, -1, hp_norm(running, space, r.N[i] + 1, true, true), "<", eps / pow2(k + 1));

    const std::size_t first = i == 0 ? 0 : r.N[i - 1] + 1;
    c.holds("window_bounds", k, -1, sigma[i].first == first && sigma[i].second == r.N[i]);
    Seq restricted(T);
    for (std::size_t j = first; j <= r.N[i] && j < T; ++j) restricted[j] = fk[j];
    c.holds("f_tilde_restriction", k, -1, restricted == ft[i] && ft[i].tail_bound() == 0.0);
    const double nt = hp_norm(ft[i], space);
    double gdiff = 0.0;
    for (std::size_t j = 0; j < T; ++j) gdiff = std::max(gdiff, std::fabs(g[i][j] - ft[i][j] / nt));
    c.ineq("g_normalized", k, -1, gdiff, "<=", 1e-12);
    c.ineq("window_norm_lower", k, -1, 1.0 - eps / pow2(k + 1), "<=", nt);
    c.ineq("window_norm_upper", k, -1, nt, "<=", 1.0 + eta);
    c.ineq("window_gap", k, -1, hp_diff(fk, ft[i], space, true), "<", eps / pow2(k + 1));
    delta += hp_diff(g[i], fk, space, true);
  }
  c.ineq("delta_recomputed", 0, -1, rel_diff(get_as<double>(a, "delta"), delta), "<=", 1e-12);
  c.ineq("delta_bound", 0, -1, delta, "<=", 4.0 * eps / (4.0 - eps));
  c.ineq("eight_delta", 0, -1, 8.0 * delta, "<", 1.0);
  const PerturbCert want = formulas(delta, 1.0, 1.0);
  check_perturb(field(a, "perturb"), want, c, "perturb_formulas");
  r.K = want.basis_constant_bound;
  r.Q = want.Q_norm_bound;
  if (want.ok) {
    c.ineq("basis_constant_sampled", 0, -1, get_as<double>(a, "basis_constant_sampled"), "<=",
           want.basis_constant_bound);
    c.ineq("P_norm_sampled", 0, -1, get_as<double>(a, "P_norm_sampled"), "<=", 1.0 + eta);
    c.ineq("Q_norm_sampled", 0, -1, get_as<double>(a, "Q_norm_sampled"), "<=", want.Q_norm_bound_tight);
  }
  return r;
}

void verify_lemmaB_body(const Subspace& v, const ParsedA& a, const json& b, Checker& c) {
  const double eps = get_as<double>(b, "eps");
  const auto l = seqs<double>(field(b, "l"));
  const auto steps = get_as<std::vector<std::vector<double>>>(b, "steps");
  const std::size_t D = a.f.size();
  if (l.size() != D || steps.size() != D) malformed("Lemma B families differ in length");
  const auto& space = a.space;
  const auto& s = a.s;
  const double eta = a.eta;
  const std::size_t T = v.truncation();
  for (const auto& x : l)
    if (x.size() != T) malformed("sequence length differs from T");

  for (std::size_t i = 0; i < D; ++i) {
    const int k = static_cast<int>(i) + 1;
    for (std::size_t j = 0; j < D; ++j) {
      if (j != i) c.ineq("zero_pattern", k, static_cast<int>(j) + 1, std::fabs(l[i][s[j]]), "<=", eta);
    }
  }
  double delta = 0.0;
  for (std::size_t i = 0; i < D; ++i) {
    const int k = static_cast<int>(i) + 1;
    c.ineq("diagonal_nonzero", k, -1, std::fabs(l[i][s[i]]), ">", eta);
    // Independent replay of the zeroing recursion in extended precision.
    std::vector<long double> cur(a.f[i].coords().begin(), a.f[i].coords().end());
    std::vector<double> my_steps;
    for (std::size_t idx = i + 1; idx < D; ++idx) {
      const long double coef = cur[s[idx]] / static_cast<long double>(a.f[idx][s[idx]]);
      for (std::size_t j = 0; j < T; ++j) cur[j] -= coef * a.f[idx][j];
      const double step = hp_norm({{static_cast<double>(coef), &a.f[idx]}}, space, 0, true);
      my_steps.push_back(step);
      const int t = static_cast<int>(idx - i - 1);
      c.ineq("step", k, t, step, "<", eps / pow2(k + t + 1));
    }
    double stored_diff = my_steps.size() == steps[i].size() ? 0.0 : INFINITY;
    for (std::size_t t = 0; t < std::min(my_steps.size(), steps[i].size()); ++t)
      stored_diff = std::max(stored_diff, std::fabs(my_steps[t] - steps[i][t]));
    c.ineq("steps_recomputed", k, -1, stored_diff, "<=", 1e-12);
    for (std::size_t m = 0; m < my_steps.size(); ++m) {
      const double rest = std::accumulate(my_steps.begin() + static_cast<long>(m), my_steps.end(), 0.0);
      c.ineq("cauchy", k, static_cast<int>(m), rest, "<=", eps / pow2(k + static_cast<int>(m)));
    }
    double ldiff = 0.0;
    for (std::size_t j = 0; j < T; ++j)
      ldiff = std::max(ldiff, static_cast<double>(std::fabs(cur[j] - static_cast<long double>(l[i][j]))));
    c.ineq("l_recomputed", k, -1, ldiff, "<=", 1e-12);
    c.ineq("membership", k, -1, v.residual(l[i]), "<=", eta * std::max(1.0, sup_norm(l[i])));
    const double residual = hp_diff(l[i], a.f[i], space, true);
    c.ineq("residual", k, -1, residual, "<=", eps / pow2(k));
    delta += residual;
  }
  c.ineq("delta_recomputed", 0, -1, rel_diff(get_as<double>(b, "delta"), delta), "<=", 1e-12);
  c.ineq("delta_le_eps", 0, -1, delta, "<=", eps);
  const double product_Q = 8.0 * a.K * delta * a.Q;
  const double product_unit = 8.0 * a.K * delta;
  const double stricter = std::max(product_Q, product_unit);
  c.ineq("perturbation_product", 0, -1, stricter, "<", 1.0);
  c.ineq("perturbation_512", 0, -1, stricter, "<=", 512.0 * eps);
  check_perturb(field(b, "perturb"), formulas(delta, a.K, a.Q), c, "perturb_formulas");
}

void verify_lp(const json& cert, Checker& c) {
  const auto fx = fixture_of(cert);
  if (fx.space.is_sup()) malformed("Lemma A/B certificate over a sup-norm space");
  const auto v = build_subspace<double>(fx);
  const auto a = verify_lemmaA_body(v, field(cert, "lemmaA"), c);
  if (get_as<std::string>(cert, "kind") == "lemmaB") verify_lemmaB_body(v, a, field(cert, "lemmaB"), c);
}

// ---------------------------------------------------------------------------
// l_inf pipeline

template <Scalar S>
struct ParsedLinf {
  std::vector<std::size_t> n;
  std::vector<BasicSeq<S>> f;
  std::vector<std::size_t> s;
  std::vector<BasicSeq<S>> l;
};

template <Scalar S>
bool in_span(const BasicSubspace<S>& v, const BasicSeq<S>& x) {
  return x.size() == v.truncation() && v.contains(x);
}

template <Scalar S>
ParsedLinf<S> verify_linf_mode(const json& cert, Checker& c) {
  constexpr bool exact = ScalarOps<S>::exact;
  const double eta = 1e-9;
  const double slack = exact ? 0.0 : eta;
  const auto fx = fixture_of(cert);
  if (!fx.space.is_sup()) malformed("l_inf certificate over an lp space");
  const auto v = build_subspace<S>(fx);
  const std::size_t T = v.truncation();
  const auto& space = fx.space;
  const auto& p = field(cert, "params");
  const double stab_tol = get_as<double>(p, "stab_tol");

  // Mazur sequence.
  const auto& mz = field(cert, "mazur");
  ParsedLinf<S> out;
  out.n = get_as<std::vector<std::size_t>>(mz, "n");
  out.f = seqs<S>(field(mz, "f"));
  const auto functionals = get_as<std::vector<std::vector<std::size_t>>>(mz, "functionals");
  const auto eps_seq = get_as<std::vector<double>>(mz, "eps_seq");
  const auto net_constants = get_as<std::vector<double>>(mz, "net_constants");
  const std::size_t M = out.n.size();
  if (out.f.size() != M || functionals.size() != M || net_constants.size() != M || eps_seq.size() < M || M == 0) {
    malformed("Mazur families differ in length");
  }
  for (std::size_t k = 0; k < M; ++k) {
    if (out.f[k].size() != T || out.n[k] >= T) malformed("Mazur vector or index beyond truncation");
    for (auto j : functionals[k])
      if (j >= T) malformed("norming coordinate beyond truncation");
  }
  const auto& n = out.n;
  const auto& f = out.f;
  bool increasing = true;
  for (std::size_t k = 1; k < M; ++k) increasing = increasing && n[k - 1] < n[k];
  c.holds("n_increasing", 0, -1, increasing);
  bool eps_ok = eps_seq[0] == 1.0;
  for (std::size_t i = 1; i < eps_seq.size(); ++i) eps_ok = eps_ok && eps_seq[i] > 0.0 && eps_seq[i] < 1.0;
  c.holds("eps_sequence", 0, -1, eps_ok);
  double product = 1.0;
  for (std::size_t i = 0; i < M; ++i) product *= 1.0 + eps_seq[i];
  c.ineq("eps_product", 0, -1, rel_diff(get_as<double>(mz, "eps_product"), product), "<=", 1e-15);

  std::set<std::size_t> zeros;
  std::vector<Seq> ff;
  for (std::size_t k = 0; k < M; ++k) {
    const int kk = static_cast<int>(k + 1);
    const auto& fk = f[k];
    ff.push_back(as_float(fk));
    c.ineq("pivot_one", kk, -1, std::fabs(dbl(S(fk[n[k]] - S(1)))), "<=", slack);
    for (std::size_t i = 0; i < k; ++i)
      c.ineq("triangular", kk, static_cast<int>(i + 1), std::fabs(dbl(fk[n[i]])), "<=", slack);
    const S sup = exact_sup(fk);
    c.ineq("norm_lower", kk, -1, 1.0, "<=", dbl(sup) + slack);
    c.ineq("norm_upper", kk, -1, dbl(sup), "<=", 2.0 + slack);
    if constexpr (exact) {
      c.holds("halving", kk, -1, 2 * abs(fk[n[k]]) >= sup);
    } else {
      c.ineq("halving", kk, -1, dbl(sup), "<=", 2.0 * std::fabs(fk[n[k]]) + 2.0 * eta);
    }
    c.holds("membership", kk, -1, in_span(v, fk));
    double off = 0.0;
    for (auto j : zeros) off = std::max(off, std::fabs(dbl(fk[j])));
    c.ineq("annihilated", kk, -1, off, "<=", slack);
    bool has_pivots = true;
    for (std::size_t i = 0; i <= k; ++i)
      has_pivots = has_pivots && std::find(functionals[k].begin(), functionals[k].end(), n[i]) != functionals[k].end();
    c.holds("norming_contains_pivots", kk, -1, has_pivots);
    c.ineq("net_constant", kk, -1, net_constants[k], "<=", 1.0 + eps_seq[k]);
    // Sampled lower evidence for the recorded norming constant.
    double worst = 0.0;
    for (std::size_t i = 0; i < 64; ++i) {
      auto a = kernels::sample_coefficients(derive_seed(0x5eed, k), i, k + 1);
      Seq y(T);
      for (std::size_t m = 0; m <= k; ++m) y = axpy(a[m], ff[m], y);
      double on_j = 0.0;
      for (auto j : functionals[k]) on_j = std::max(on_j, std::fabs(y[j]));
      const double ny = sup_norm(y);
      if (ny > 0.0) worst = std::max(worst, on_j > 0.0 ? ny / on_j : INFINITY);
    }
    c.ineq("net_sampled", kk, -1, worst, "<=", net_constants[k] * (1.0 + 1e-9) + 1e-12);
    zeros.insert(functionals[k].begin(), functionals[k].end());
  }
  const auto samples = get_as<std::size_t>(mz, "samples");
  double ratio = 0.0;
  if (samples > 0 && M > 1) {
    kernels::Weights w(M, std::vector<double>(M, 1.0));
    for (std::size_t a = 0; a < M; ++a)
      for (std::size_t b = a + 1; b < M; ++b) w[a][b] = w[a][b - 1] * (1.0 + eps_seq[b - 1]);
    ratio = kernels::serial::partial_sum_ratio(ff, space, samples, get_as<std::uint64_t>(p, "seed"), w).value;
  }
  c.ineq("basis_ratio_recomputed", 0, -1, std::fabs(ratio - get_as<double>(mz, "basis_ratio_sampled")), "<=", 1e-12);
  c.ineq("basis_inequality", 0, -1, ratio, "<=", 1.0 + eta);

  // Cascade.
  const auto& cs = field(cert, "cascade");
  const auto t = get_as<std::vector<std::size_t>>(cs, "t");
  const auto h = seqs<S>(field(cs, "h"));
  const auto& levels = field(cs, "levels");
  if (!levels.is_array() || levels.size() != h.size() || t.size() != h.size()) malformed("cascade families differ in length");
  std::map<std::size_t, std::size_t> where;
  for (std::size_t i = 0; i < M; ++i) where[n[i]] = i;
  const S tol = ScalarOps<S>::from_double(stab_tol);
  std::vector<std::size_t> cur = n;
  for (std::size_t lvl = 0; lvl < h.size(); ++lvl) {
    const int kk = static_cast<int>(lvl + 1);
    const auto& lv = levels[lvl];
    const auto m1 = get_as<std::size_t>(lv, "m1");
    const auto m2 = get_as<std::size_t>(lv, "m2");
    const auto stab = get_as<std::vector<std::size_t>>(lv, "stabilized");
    const int which = get_as<int>(lv, "case");
    const S L1 = scalar_field<S>(lv, "L1");
    const S L2 = scalar_field<S>(lv, "L2");
    const bool heads = cur.size() >= 2 && cur[0] == m1 && cur[1] == m2;
    c.holds("cascade_heads", kk, -1, heads);
    if (!heads || h[lvl].size() != T) return out;
    const auto& f1 = f[where[m1]];
    const auto& f2 = f[where[m2]];
    const BasicSeq<S> g1 = f1 - scaled(S(f1[m2]), f2);
    const BasicSeq<S>& g2 = f2;

    bool subset = stab.size() >= 4;
    for (std::size_t i = 0; i < stab.size(); ++i) {
      subset = subset && std::find(cur.begin() + 2, cur.end(), stab[i]) != cur.end();
      if (i > 0) subset = subset && stab[i - 1] < stab[i];
    }
    c.holds("stabilized_subsequence", kk, -1, subset);
    if (!subset) return out;
    double spread = 0.0;
    bool within = true;
    for (auto j : stab) {
      const S d1 = ScalarOps<S>::abs(S(g1[j] - L1));
      const S d2 = ScalarOps<S>::abs(S(g2[j] - L2));
      spread = std::max({spread, dbl(d1), dbl(d2)});
      if constexpr (exact) {
        within = within && 2 * d1 <= tol && 2 * d2 <= tol;
      } else {
        within = within && 2.0 * d1 <= tol + eta && 2.0 * d2 <= tol + eta;
      }
    }
    c.ineq("stabilized_spread", kk, -1, spread, "<=", stab_tol / 2.0 + slack);
    c.holds("stabilized_window", kk, -1, within);

    const S a1 = ScalarOps<S>::abs(L1);
    const S a2 = ScalarOps<S>::abs(L2);
    int expect = 0;
    BasicSeq<S> hh;
    std::size_t tt = 0;
    if (a1 <= tol) {
      expect = 1, hh = g1, tt = m1;
    } else if (a2 <= tol) {
      expect = 2, hh = g2, tt = m2;
    } else if (a1 <= a2) {
      expect = 3, hh = g1 - scaled(S(L1 / L2), g2), tt = m1;
    } else {
      expect = 4, hh = g2 - scaled(S(L2 / L1), g1), tt = m2;
    }
    c.holds("case_rule", kk, which, which == expect);
    c.ineq("h_recomputed", kk, -1, max_coord_diff(hh, h[lvl]), "<=", exact ? 0.0 : 1e-12);
    c.holds("t_choice", kk, -1, t[lvl] == tt);
    const auto& hl = h[lvl];
    c.ineq("h_pivot", kk, -1, std::fabs(dbl(S(hl[tt] - S(1)))), "<=", slack);
    for (std::size_t q = 0; q < lvl; ++q)
      c.ineq("h_triangular", kk, static_cast<int>(q + 1), std::fabs(dbl(hl[t[q]])), "<=", slack);
    const double bound = expect == 1 ? 6.0 : expect == 2 ? 2.0 : 8.0;
    c.ineq("case_bound", kk, expect, dbl(exact_sup(hl)), "<=", bound + slack);
    S env(0);
    for (auto j : stab) env = std::max(env, S(ScalarOps<S>::abs(hl[j])));
    c.ineq("limit_envelope", kk, -1, dbl(env), "<=", 2.0 * stab_tol + slack);
    c.holds("h_membership", kk, -1, in_span(v, hl));
    cur = stab;
  }

  // l-family.
  const auto& lc = field(cert, "l");
  const auto K = get_as<double>(lc, "K_est");
  const auto eps = get_as<double>(lc, "eps");
  const auto h_index = get_as<std::vector<std::size_t>>(lc, "h_index");
  out.s = get_as<std::vector<std::size_t>>(lc, "s");
  const auto lh = seqs<S>(field(lc, "h"));
  out.l = seqs<S>(field(lc, "l"));
  const std::size_t D = out.s.size();
  if (h_index.size() != D || lh.size() != D || out.l.size() != D || D == 0) malformed("l-family lengths differ");
  c.ineq("eps_rule", 0, -1, std::fabs(eps - std::min(1.0 / (4.0 * K), 1.0 / 64.0)), "<=", 0.0);
  bool selection_ok = h_index[0] == 0;
  for (std::size_t i = 0; i < D; ++i) {
    selection_ok = selection_ok && h_index[i] < h.size() && (i == 0 || h_index[i - 1] < h_index[i]);
    if (!selection_ok) break;
    selection_ok = selection_ok && out.s[i] == t[h_index[i]] && lh[i] == h[h_index[i]];
  }
  c.holds("selection_indices", 0, -1, selection_ok);
  if (!selection_ok) return out;
  const auto& s = out.s;
  for (std::size_t q = 1; q < D; ++q) {
    double sum = 0.0;
    for (std::size_t i = 0; i < q; ++i) sum += std::fabs(dbl(lh[i][s[q]]));
    c.ineq("selection", static_cast<int>(q + 1), -1, sum, "<=", eps / (pow2(static_cast<int>(q + 1)) * 8.0));
  }
  double delta = 0.0;
  for (std::size_t k = 0; k < D; ++k) {
    const int kk = static_cast<int>(k + 1);
    BasicSeq<S> l = lh[k];
    for (std::size_t idx = k + 1; idx < D; ++idx) {
      const S coef = l[s[idx]];
      l = l - scaled(coef, lh[idx]);
      const int tt = static_cast<int>(idx - k - 1);
      c.ineq("step", kk, tt, dbl(S(ScalarOps<S>::abs(coef) * exact_sup(lh[idx]))), "<=", eps / pow2(kk + tt + 1));
    }
    c.ineq("l_recomputed", kk, -1, max_coord_diff(l, out.l[k]), "<=", exact ? 0.0 : 1e-12);
    const auto& lk = out.l[k];
    const double residual = dbl(exact_sup(BasicSeq<S>(lk - lh[k])));
    c.ineq("residual", kk, -1, residual, "<=", eps / pow2(kk));
    c.ineq("l_pivot", kk, -1, std::fabs(dbl(S(lk[s[k]] - S(1)))), "<=", slack);
    for (std::size_t j = 0; j < D; ++j) {
      if (j != k) c.ineq("l_zero", kk, static_cast<int>(j + 1), std::fabs(dbl(lk[s[j]])), "<=", slack);
    }
    c.ineq("l_norm", kk, -1, dbl(exact_sup(lk)), "<=", 9.0 + slack);
    c.holds("l_membership", kk, -1, in_span(v, lk));
    delta += residual / dbl(exact_sup(lh[k]));
  }
  c.ineq("delta_le_eps", 0, -1, delta, "<=", eps);
  c.ineq("perturbation_gate", 0, -1, 2.0 * K * delta, "<", 1.0);
  return out;
}

void verify_linf(const json& cert, Checker& c) {
  const auto mode = get_as<std::string>(cert, "mode");
  if (mode == "exact") {
    verify_linf_mode<Rational>(cert, c);
  } else if (mode == "float") {
    verify_linf_mode<double>(cert, c);
  } else {
    malformed("mode must be exact or float");
  }
}

// ---------------------------------------------------------------------------
// witness

// Float view of the source l-family, its index list and the exact rank of the even part.
struct SourceView {
  AmbientSpace space = AmbientSpace::lp(2.0);
  double eta = 1e-9;
  std::vector<std::size_t> s;
  std::vector<Seq> l;
  std::size_t even_rank = 0;
};

SourceView source_view(const json& src) {
  SourceView v;
  const auto kind = get_as<std::string>(src, "kind");
  v.space = fixture_of(src).space;
  Matrix<Rational> even;
  if (kind == "lemmaB") {
    v.eta = get_as<double>(field(src, "lemmaA"), "eta");
    v.s = get_as<std::vector<std::size_t>>(field(src, "lemmaA"), "s");
    v.l = seqs<double>(field(field(src, "lemmaB"), "l"));
    for (std::size_t k = 1; k < v.l.size(); k += 2) {
      auto e = to_exact(v.l[k]);
      even.emplace_back(e.coords().begin(), e.coords().end());
    }
  } else if (kind == "linf") {
    const auto& l = field(src, "l");
    v.s = get_as<std::vector<std::size_t>>(l, "s");
    if (get_as<std::string>(src, "mode") == "exact") {
      auto ex = seqs<Rational>(field(l, "l"));
      for (std::size_t k = 0; k < ex.size(); ++k) {
        v.l.push_back(to_float(ex[k]));
        if (k % 2 == 1) even.emplace_back(ex[k].coords().begin(), ex[k].coords().end());
      }
    } else {
      v.l = seqs<double>(field(l, "l"));
      for (std::size_t k = 1; k < v.l.size(); k += 2) {
        auto e = to_exact(v.l[k]);
        even.emplace_back(e.coords().begin(), e.coords().end());
      }
    }
  } else {
    malformed("witness/density source must be lemmaB or linf, got " + kind);
  }
  if (v.l.size() != v.s.size()) malformed("source l-family and s differ in length");
  v.even_rank = even.empty() ? 0 : rank(std::move(even), 0.0);
  return v;
}

void verify_witness(const json& cert, Checker& c) {
  const auto& src = field(cert, "source");
  verify_into(src, c.ledger(), c.prefix() + "source/");
  const auto sv = source_view(src);
  const auto s = get_as<std::vector<std::size_t>>(cert, "s");
  const auto forbidden = get_as<std::vector<std::size_t>>(cert, "forbidden_indices");
  const auto even = seqs<double>(field(cert, "even_family"));
  const auto odd = seqs<double>(field(cert, "odd_family"));
  const auto samples = get_as<std::size_t>(cert, "samples");
  const auto seed = get_as<std::uint64_t>(cert, "seed");
  const double eta = sv.eta;

  c.ineq("index_count", 0, -1, 4.0, "<=", static_cast<double>(sv.s.size()));
  bool split = s == sv.s && even.size() == sv.l.size() / 2 && odd.size() == (sv.l.size() + 1) / 2;
  if (split) {
    std::vector<std::size_t> want_forbidden;
    for (std::size_t k = 0; k < sv.l.size(); ++k) {
      if (k % 2 == 0) {
        want_forbidden.push_back(sv.s[k]);
        split = split && odd[k / 2] == sv.l[k];
      } else {
        split = split && even[k / 2] == sv.l[k];
      }
    }
    split = split && forbidden == want_forbidden;
  }
  c.holds("parity_split", 0, -1, split);

  // Even members themselves, then the sampled combinations, in extended precision.
  long double worst = 0.0L;
  for (const auto& x : even)
    for (auto j : forbidden) {
      if (j >= x.size()) malformed("forbidden index beyond truncation");
      worst = std::max(worst, static_cast<long double>(std::fabs(x[j])));
    }
  for (std::size_t i = 0; i < samples; ++i) {
    auto a = kernels::sample_coefficients(seed, i, even.size());
    for (auto j : forbidden) {
      long double v = 0.0L;
      for (std::size_t m = 0; m < even.size(); ++m) v += static_cast<long double>(a[m]) * even[m][j];
      worst = std::max(worst, std::fabs(v));
    }
  }
  c.ineq("forbidden_zero", 0, -1, static_cast<double>(worst), "<=", eta);
  c.ineq("max_violation_recomputed", 0, -1,
         std::fabs(static_cast<double>(worst) - get_as<double>(cert, "max_violation")), "<=", 1e-15);
  const double expected = static_cast<double>(sv.l.size() / 2);
  c.ineq("even_rank", 0, -1, static_cast<double>(sv.even_rank), "<=", expected);
  c.ineq("even_rank_full", 0, -1, expected, "<=", static_cast<double>(sv.even_rank));
  c.holds("rank_recorded", 0, -1, get_as<std::size_t>(cert, "rank") == sv.even_rank);
}

// ---------------------------------------------------------------------------
// density

void verify_density_lp(const json& cert, Checker& c) {
  const auto& src = field(cert, "source");
  const auto fx = fixture_of(src);
  const auto v = build_subspace<double>(fx);
  const auto sv = source_view(src);
  const auto& space = fx.space;
  const double eps = get_as<double>(cert, "eps");
  const auto f = seq_from_json(field(cert, "f"));
  const auto g = seq_from_json(field(cert, "g"));
  const auto zero_set = get_as<std::vector<std::size_t>>(cert, "zero_set");
  if (f.size() != v.truncation() || g.size() != v.truncation()) malformed("f or g length differs from T");
  for (auto j : zero_set)
    if (j >= f.size()) malformed("zero-set index beyond truncation");
  const double eta = sv.eta;
  const double nf = hp_norm(f, space);
  c.ineq("f_membership", 0, -1, v.residual(f), "<=", eta * std::max(1.0, sup_norm(f)));
  c.ineq("f_nonzero", 0, -1, nf, ">", 0.0);

  const auto& rerun = field(cert, "rerun");
  if (rerun.is_null()) {
    c.holds("unchanged", 0, -1, g == f);
    c.holds("zero_set_from_source", 0, -1,
            zero_set == std::vector<std::size_t>(sv.s.begin() + (sv.s.empty() ? 0 : 1), sv.s.end()));
  } else {
    verify_into(rerun, c.ledger(), c.prefix() + "rerun/");
    const auto& p = field(rerun, "params");
    c.holds("rerun_starts_at_f", 0, -1, p.contains("f1") && p["f1"] == field(cert, "f"));
    c.ineq("rerun_eps", 0, -1, get_as<double>(p, "eps"), "<=", std::min(eps, 1.0 / 1024.0));
    const auto l1 = seq_from_json(field(field(rerun, "lemmaB"), "l").at(0));
    double d = l1.size() == g.size() ? 0.0 : INFINITY;
    for (std::size_t j = 0; j < std::min(g.size(), l1.size()); ++j) d = std::max(d, std::fabs(g[j] - nf * l1[j]));
    c.ineq("g_is_scaled_l1", 0, -1, d, "<=", 1e-12 * std::max(1.0, nf));
    const auto rs = get_as<std::vector<std::size_t>>(field(rerun, "lemmaA"), "s");
    c.holds("zero_set_from_rerun", 0, -1, zero_set == std::vector<std::size_t>(rs.begin() + 1, rs.end()));
  }
  c.ineq("distance", 0, -1, hp_diff(g, f, space, false), "<=", nf * eps / 2.0);
  double worst = 0.0;
  for (auto j : zero_set) worst = std::max(worst, std::fabs(g[j]));
  c.ineq("vanishes_on_zero_set", 0, -1, worst, "<=", eta * std::max(1.0, nf));
  c.ineq("zero_set_size", 0, -1, static_cast<double>(sv.l.size() / 2), "<=", static_cast<double>(zero_set.size()));
}

template <Scalar S>
void verify_density_c0_mode(const json& cert, Checker& c) {
  constexpr bool exact = ScalarOps<S>::exact;
  const double slack = exact ? 0.0 : 1e-9;
  const auto& src = field(cert, "source");
  const auto fx = fixture_of(src);
  const auto v = build_subspace<S>(fx);
  const std::size_t T = v.truncation();
  const double eps = get_as<double>(cert, "eps");
  const auto f = basic_seq_from_json<S>(field(cert, "f"));
  const auto g = basic_seq_from_json<S>(field(cert, "g"));
  const auto l = seqs<S>(field(cert, "l"));
  const auto s = get_as<std::vector<std::size_t>>(cert, "zero_set");
  const auto cand = get_as<std::vector<std::size_t>>(cert, "candidates");
  const auto n = get_as<std::vector<std::size_t>>(field(src, "mazur"), "n");
  if (f.size() != T || g.size() != T || l.size() != s.size()) malformed("density families differ in length");
  for (const auto& x : l)
    if (x.size() != T) malformed("l length differs from T");
  for (auto j : s)
    if (j >= T) malformed("zero-set index beyond truncation");
  for (auto j : n)
    if (j >= T) malformed("Mazur index beyond truncation");

  c.holds("f_membership", 0, -1, in_span(v, f));
  c.ineq("f_nonzero", 0, -1, dbl(exact_sup(f)), ">", 0.0);
  // Greedy replay: smallest |f(n)| first while 9 * sum stays within eps.
  std::vector<std::size_t> order(n.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return ScalarOps<S>::abs(f[n[a]]) < ScalarOps<S>::abs(f[n[b]]);
  });
  std::vector<std::size_t> chosen;
  double sum = 0.0;
  for (auto i : order) {
    const double x = std::fabs(dbl(f[n[i]]));
    if (9.0 * (sum + x) > eps) break;
    sum += x;
    chosen.push_back(n[i]);
  }
  std::sort(chosen.begin(), chosen.end());
  c.holds("candidates_greedy", 0, -1, chosen == cand);
  bool subset = !s.empty();
  for (std::size_t k = 0; k < s.size(); ++k) {
    subset = subset && std::find(cand.begin(), cand.end(), s[k]) != cand.end();
    if (k > 0) subset = subset && s[k - 1] < s[k];
  }
  c.holds("selected_from_candidates", 0, -1, subset);

  S series(0);
  BasicSeq<S> want = f;
  for (std::size_t k = 0; k < s.size(); ++k) {
    const int kk = static_cast<int>(k + 1);
    c.ineq("l_pivot", kk, -1, std::fabs(dbl(S(l[k][s[k]] - S(1)))), "<=", slack);
    for (std::size_t j = 0; j < s.size(); ++j)
      if (j != k) c.ineq("l_zero", kk, static_cast<int>(j + 1), std::fabs(dbl(l[k][s[j]])), "<=", slack);
    c.ineq("l_norm", kk, -1, dbl(exact_sup(l[k])), "<=", 9.0 + slack);
    c.holds("l_membership", kk, -1, in_span(v, l[k]));
    series += ScalarOps<S>::abs(f[s[k]]);
    want = want - scaled(S(f[s[k]]), l[k]);
  }
  const S bound = S(9) * series;
  if constexpr (exact) {
    c.holds("series_bound_exact", 0, -1, bound <= rational_from_double(eps));
  }
  c.ineq("series_bound", 0, -1, dbl(bound), "<=", eps);
  c.ineq("g_recomputed", 0, -1, max_coord_diff(want, g), "<=", exact ? 0.0 : 1e-12);
  for (std::size_t k = 0; k < s.size(); ++k)
    c.ineq("g_zero", static_cast<int>(k + 1), -1, std::fabs(dbl(g[s[k]])), "<=", slack);
  const double dist = dbl(exact_sup(BasicSeq<S>(g - f)));
  c.ineq("distance", 0, -1, dist, "<=", dbl(bound) + slack);
  c.ineq("distance_eps", 0, -1, dist, "<=", eps + slack);
  c.holds("g_membership", 0, -1, in_span(v, g));
}

void verify_density(const json& cert, Checker& c) {
  verify_into(field(cert, "source"), c.ledger(), c.prefix() + "source/");
  const auto path = get_as<std::string>(cert, "path");
  if (path == "lp") {
    verify_density_lp(cert, c);
  } else if (path == "c0") {
    if (get_as<std::string>(cert, "mode") == "exact") {
      verify_density_c0_mode<Rational>(cert, c);
    } else {
      verify_density_c0_mode<double>(cert, c);
    }
  } else {
    malformed("density path must be lp or c0");
  }
}

void verify_into(const json& cert, Ledger& L, const std::string& prefix) {
  if (!cert.is_object()) malformed("certificate must be a JSON object");
  if (get_as<int>(cert, "schema_version") != kSchemaVersion) malformed("unsupported schema_version");
  const auto kind = get_as<std::string>(cert, "kind");
  Checker c(L, prefix);
  try {
    if (kind == "lineability") {
      verify_lineability(cert, c);
    } else if (kind == "lemmaA" || kind == "lemmaB") {
      verify_lp(cert, c);
    } else if (kind == "linf") {
      verify_linf(cert, c);
    } else if (kind == "witness") {
      verify_witness(cert, c);
    } else if (kind == "density") {
      verify_density(cert, c);
    } else {
      malformed("unknown certificate kind " + kind);
    }
  } catch (const Error& e) {
    // Structural errors inside recomputation (bad lengths, indices) mean the file is not a valid certificate.
    if (e.code() == Errc::MalformedCertificate) throw;
    malformed(std::string("while re-evaluating: ") + e.what());
  } catch (const json::exception& e) {
    malformed(std::string("while re-evaluating: ") + e.what());
  }
  reproduce(cert, c);
}

}  // namespace

VerifyReport verify_certificate(const nlohmann::json& cert) {
  VerifyReport r;
  if (!cert.is_object()) malformed("certificate must be a JSON object");
  r.kind = get_as<std::string>(cert, "kind");
  verify_into(cert, r.ledger, "");
  return r;
}

VerifyReport verify_certificate_file(const std::filesystem::path& path) {
  return verify_certificate(read_json_file(path));
}

}  // namespace seqlab
