#include "seqlab/certificate_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

#include <unistd.h>

namespace seqlab {

namespace {

[[noreturn]] void malformed(const std::string& what) { throw Error(Errc::MalformedCertificate, what); }

template <Scalar S>
json seq_json(const BasicSeq<S>& x) {
  json nz = json::array();
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (ScalarOps<S>::is_zero(x[j], 0.0)) continue;
    nz.push_back(json::array({j, scalar_to_json(x[j])}));
  }
  return json{{"T", x.size()}, {"nz", std::move(nz)}, {"tail", scalar_to_json(x.tail_bound())}};
}

template <Scalar S>
S scalar_from(const json& j) {
  if constexpr (ScalarOps<S>::exact) {
    try {
      return rational_from_json(j);
    } catch (const Error& e) {
      malformed(std::string("bad rational: ") + e.what());
    }
  } else {
    if (!j.is_number()) malformed("expected a number, got " + j.dump());
    const double v = j.get<double>();
    if (!std::isfinite(v)) malformed("non-finite coordinate");
    return v;
  }
}

template <Scalar S>
BasicSeq<S> seq_from(const json& j) {
  if (!j.is_object()) malformed("sequence must be an object");
  const json& T = field(j, "T");
  if (!T.is_number_unsigned()) malformed("sequence T must be a non-negative integer");
  const std::size_t n = T.get<std::size_t>();
  std::vector<S> coords(n, S(0));
  const json& nz = field(j, "nz");
  if (!nz.is_array()) malformed("sequence nz must be an array");
  for (const auto& e : nz) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_unsigned()) malformed("bad nz entry " + e.dump());
    const std::size_t idx = e[0].get<std::size_t>();
    if (idx >= n) malformed("nz index " + std::to_string(idx) + " beyond T = " + std::to_string(n));
    coords[idx] = scalar_from<S>(e[1]);
  }
  S tail = scalar_from<S>(field(j, "tail"));
  if (tail < 0) malformed("negative tail bound");
  return BasicSeq<S>(std::move(coords), std::move(tail));
}

template <class Vec>
json seqs_json(const Vec& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(seq_to_json(x));
  return a;
}

template <Scalar S>
json mazur_json(const BasicMazurCert<S>& c) {
  return json{{"space", space_to_json(c.space)},
              {"eps_seq", c.eps_seq},
              {"eps_product", c.eps_product},
              {"net_resolution", c.net_resolution},
              {"n", c.n},
              {"f", seqs_json(c.f)},
              {"functionals", c.functionals},
              {"net_sizes", c.net_sizes},
              {"net_constants", c.net_constants},
              {"unverified_candidates", c.unverified_candidates},
              {"basis_ratio_sampled", c.basis_ratio_sampled},
              {"samples", c.samples},
              {"ledger", ledger_to_json(c.ledger)},
              {"pass", c.pass()}};
}

template <Scalar S>
json cascade_json(const BasicHCascadeCert<S>& c) {
  json levels = json::array();
  for (const auto& lv : c.levels) {
    levels.push_back(json{{"m1", lv.m1},
                          {"m2", lv.m2},
                          {"case", static_cast<int>(lv.which)},
                          {"L1", scalar_to_json(lv.L1)},
                          {"L2", scalar_to_json(lv.L2)},
                          {"stabilized", lv.stabilized},
                          {"h_norm", lv.h_norm},
                          {"envelope", lv.envelope}});
  }
  return json{{"stab_tol", c.stab_tol}, {"t", c.t},          {"h", seqs_json(c.h)},
              {"levels", std::move(levels)}, {"ledger", ledger_to_json(c.ledger)}, {"pass", c.pass()}};
}

template <Scalar S>
json linf_l_json(const BasicLInfLCert<S>& c) {
  return json{{"K_est", c.K_est},         {"eps", c.eps},
              {"s", c.s},                 {"h_index", c.h_index},
              {"h", seqs_json(c.h)},      {"l", seqs_json(c.l)},
              {"steps", c.steps},         {"residuals", c.residuals},
              {"delta", c.delta},         {"ledger", ledger_to_json(c.ledger)},
              {"pass", c.pass()}};
}

json lemmaA_body(const LemmaACert& c) {
  json sigma = json::array();
  for (const auto& w : c.sigma) sigma.push_back(json::array({w.first, w.last}));
  return json{{"space", space_to_json(c.space)},
              {"eps", c.eps},
              {"eta", c.eta},
              {"s", c.s},
              {"N", c.N},
              {"f", seqs_json(c.f)},
              {"f_tilde", seqs_json(c.f_tilde)},
              {"g", seqs_json(c.g)},
              {"sigma", std::move(sigma)},
              {"delta", c.delta},
              {"perturb", perturb_to_json(c.perturb)},
              {"basis_constant_sampled", c.basis_constant_sampled},
              {"P_norm_sampled", c.P_norm_sampled},
              {"Q_norm_sampled", c.Q_norm_sampled},
              {"ledger", ledger_to_json(c.ledger)},
              {"pass", c.pass()}};
}

json lp_params(const LpOptions& opt) {
  json p{{"eps", opt.eps}, {"depth", opt.depth}, {"samples", opt.samples}, {"seed", opt.seed}};
  if (opt.f1) p["f1"] = seq_to_json(*opt.f1);
  return p;
}

json header(const char* kind) { return json{{"schema_version", kSchemaVersion}, {"kind", kind}}; }

}  // namespace

json scalar_to_json(double x) { return x; }
json scalar_to_json(const Rational& x) { return rational_to_string(x); }

json seq_to_json(const Seq& x) { return seq_json(x); }
json seq_to_json(const ExactSeq& x) { return seq_json(x); }
Seq seq_from_json(const json& j) { return seq_from<double>(j); }
ExactSeq exact_seq_from_json(const json& j) { return seq_from<Rational>(j); }

const json& field(const json& j, const char* key) {
  if (!j.is_object()) malformed(std::string("expected an object holding '") + key + "'");
  auto it = j.find(key);
  if (it == j.end()) malformed(std::string("missing field '") + key + "'");
  return *it;
}

json ledger_to_json(const Ledger& l) {
  json a = json::array();
  for (const auto& e : l.entries()) {
    a.push_back(json{{"check", e.check}, {"k", e.k},     {"t", e.t},      {"lhs", e.lhs},
                     {"rel", e.rel},     {"rhs", e.rhs}, {"pass", e.pass}});
  }
  return a;
}

Ledger ledger_from_json(const json& j) {
  if (!j.is_array()) malformed("ledger must be an array");
  Ledger l;
  for (const auto& e : j) {
    try {
      l.record(e.at("check").get<std::string>(), e.at("k").get<int>(), e.at("t").get<int>(),
               e.at("lhs").get<double>(), e.at("rel").get<std::string>(), e.at("rhs").get<double>());
    } catch (const json::exception& ex) {
      malformed(std::string("bad ledger entry: ") + ex.what());
    }
  }
  return l;
}

json perturb_to_json(const PerturbCert& p) {
  return json{{"K", p.K},
              {"P_norm", p.P_norm},
              {"delta", p.delta},
              {"ok", p.ok},
              {"T_norm_bound", p.T_norm_bound},
              {"basis_constant_bound", p.basis_constant_bound},
              {"Q_norm_bound", p.Q_norm_bound},
              {"Q_norm_bound_tight", p.Q_norm_bound_tight}};
}

json lineability_cert_json(const LineabilityCert& c) {
  json ratios = json::array();
  json coeffs = json::array();
  for (const auto& r : c.combination.ratios) ratios.push_back(rational_to_string(r));
  for (const auto& r : c.combination.coeffs) coeffs.push_back(rational_to_string(r));
  json j = header("lineability");
  j["ratios"] = std::move(ratios);
  j["coeffs"] = std::move(coeffs);
  j["scan_limit"] = c.scan_limit;
  j["zero_set"] = c.zero_set;
  j["certified_bound"] = c.certified_bound;
  j["rank"] = c.rank;
  j["pass"] = c.pass;
  return j;
}

json lemmaA_cert_json(const LemmaACert& c, const FixtureSpec& fixture, const LpOptions& opt) {
  json j = header("lemmaA");
  j["fixture"] = fixture_to_json(fixture);
  j["params"] = lp_params(opt);
  j["lemmaA"] = lemmaA_body(c);
  j["pass"] = c.pass();
  return j;
}

json lemmaB_cert_json(const LemmaBCert& c, const FixtureSpec& fixture, const LpOptions& opt) {
  json j = header("lemmaB");
  j["fixture"] = fixture_to_json(fixture);
  j["params"] = lp_params(opt);
  j["lemmaA"] = lemmaA_body(c.a);
  j["lemmaB"] = json{{"eps", c.eps},
                     {"l", seqs_json(c.l)},
                     {"steps", c.steps},
                     {"residuals", c.residuals},
                     {"iteration_depth", c.iteration_depth},
                     {"delta", c.delta},
                     {"product_Q", c.product_Q},
                     {"product_unit", c.product_unit},
                     {"perturb", perturb_to_json(c.perturb)},
                     {"ledger", ledger_to_json(c.ledger)},
                     {"pass", c.ledger.all_pass()}};
  j["pass"] = c.pass();
  return j;
}

template <Scalar S>
json linf_cert_json(const BasicLinfPipelineCert<S>& c, const FixtureSpec& fixture, const LinfOptions& opt) {
  json j = header("linf");
  j["mode"] = ScalarOps<S>::exact ? "exact" : "float";
  j["fixture"] = fixture_to_json(fixture);
  j["params"] = json{{"depth", opt.depth},
                     {"mazur_depth", opt.mazur_depth},
                     {"stab_tol", opt.stab_tol},
                     {"net_resolution", opt.net_resolution},
                     {"samples", opt.samples},
                     {"seed", opt.seed}};
  j["mazur"] = mazur_json(c.mazur);
  j["cascade"] = cascade_json(c.cascade);
  j["l"] = linf_l_json(c.l);
  j["pass"] = c.pass();
  return j;
}

json witness_cert_json(const WitnessCert& c, const json& source) {
  json j = header("witness");
  j["source"] = source;
  j["space"] = space_to_json(c.space);
  j["s"] = c.s;
  j["forbidden_indices"] = c.forbidden_indices;
  j["even_family"] = seqs_json(c.even_family);
  j["odd_family"] = seqs_json(c.odd_family);
  j["samples"] = c.samples_checked;
  j["seed"] = c.seed;
  j["max_violation"] = c.max_violation;
  j["rank"] = c.rank;
  j["ledger"] = ledger_to_json(c.ledger);
  j["pass"] = c.pass();
  return j;
}

json density_lp_json(const DensityResult<double>& r, const Seq& f, double eps, const json& source,
                     const FixtureSpec& fixture) {
  json j = header("density");
  j["path"] = "lp";
  j["source"] = source;
  j["rerun"] = r.rerun ? lemmaB_cert_json(*r.rerun, fixture, *r.rerun_options) : json(nullptr);
  j["eps"] = eps;
  j["f"] = seq_to_json(f);
  j["g"] = seq_to_json(r.g);
  j["distance"] = r.distance;
  j["bound"] = r.bound;
  j["zero_set"] = r.zero_set;
  j["ledger"] = ledger_to_json(r.ledger);
  j["pass"] = r.pass();
  return j;
}

template <Scalar S>
json density_c0_json(const DensityResult<S>& r, const BasicSeq<S>& f, const C0RepairOptions& opt,
                     const json& source) {
  json j = header("density");
  j["path"] = "c0";
  j["mode"] = ScalarOps<S>::exact ? "exact" : "float";
  j["source"] = source;
  j["eps"] = opt.eps;
  j["params"] = json{{"eps", opt.eps},
                     {"depth", opt.depth},
                     {"stab_tol", opt.stab_tol},
                     {"samples", opt.samples},
                     {"seed", opt.seed}};
  j["f"] = seq_to_json(f);
  j["g"] = seq_to_json(r.g);
  j["distance"] = r.distance;
  j["bound"] = r.bound;
  j["candidates"] = r.candidates;
  j["zero_set"] = r.zero_set;
  j["l"] = seqs_json(r.l);
  j["ledger"] = ledger_to_json(r.ledger);
  j["pass"] = r.pass();
  return j;
}

template json linf_cert_json<double>(const BasicLinfPipelineCert<double>&, const FixtureSpec&,
                                     const LinfOptions&);
template json linf_cert_json<Rational>(const BasicLinfPipelineCert<Rational>&, const FixtureSpec&,
                                       const LinfOptions&);
template json density_c0_json<double>(const DensityResult<double>&, const Seq&, const C0RepairOptions&,
                                      const json&);
template json density_c0_json<Rational>(const DensityResult<Rational>&, const ExactSeq&,
                                        const C0RepairOptions&, const json&);

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) malformed("cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return json::parse(buf.str());
  } catch (const json::parse_error& e) {
    malformed(path.string() + ": " + e.what());
  }
}

std::string dump_json(const json& j) { return j.dump(2) + "\n"; }

void write_json_atomic(const std::filesystem::path& path, const json& j) {
  const std::string text = dump_json(j);
  auto tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(Errc::ConfigError, "cannot write " + tmp.string());
    out << text;
    out.flush();
    if (!out) throw Error(Errc::ConfigError, "short write to " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw Error(Errc::ConfigError, "cannot rename onto " + path.string() + ": " + ec.message());
  }
}

}  // namespace seqlab
