#include "seqlab/cli.hpp"

#include <cmath>

#include "seqlab/certificate_io.hpp"
#include "seqlab/lineability.hpp"
#include "seqlab/linf_construction.hpp"
#include "seqlab/lp_construction.hpp"
#include "seqlab/rng.hpp"
#include "seqlab/witnesses.hpp"

namespace seqlab {

namespace {

[[noreturn]] void config(const std::string& what) { throw Error(Errc::ConfigError, what); }
[[noreturn]] void malformed(const std::string& what) { throw Error(Errc::MalformedCertificate, what); }

constexpr double kLpDefaultEps = 1.0 / 600.0;
constexpr double kDensityDefaultEps = 1e-2;

bool exact_mode(const Scenario& sc) { return sc.mode.value_or("exact") == "exact"; }

template <class T>
T get_as(const nlohmann::json& j, const char* key) {
  try {
    return field(j, key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    malformed(std::string("field '") + key + "': " + e.what());
  }
}

const FixtureSpec& need_fixture(const Scenario& sc) {
  if (!sc.fixture) config("--fixture is required for the " + pipeline_name(sc.pipeline) + " pipeline");
  return *sc.fixture;
}

LpOptions lp_options(const Scenario& sc) {
  LpOptions opt;
  opt.eps = sc.eps.value_or(kLpDefaultEps);
  opt.depth = sc.depth.value_or(6);
  opt.samples = sc.samples.value_or(200);
  opt.seed = sc.seed;
  if (sc.f1) opt.f1 = seq_from_json(*sc.f1);
  return opt;
}

LinfOptions linf_options(const Scenario& sc) {
  LinfOptions opt;
  opt.depth = sc.depth.value_or(5);
  opt.mazur_depth = sc.mazur_depth;
  opt.stab_tol = sc.stab_tol;
  opt.net_resolution = sc.net_resolution;
  opt.samples = sc.samples.value_or(1000);
  opt.seed = sc.seed;
  return opt;
}

nlohmann::json run_lineability(const Scenario& sc) {
  auto coeffs = sc.coeffs;
  if (coeffs.empty()) coeffs.assign(sc.ratios.size(), Rational(1));
  auto comb = GeometricCombination::make(sc.ratios, coeffs);
  return lineability_cert_json(certify_lineability(comb, sc.scan_limit));
}

nlohmann::json run_lp(const Scenario& sc) {
  const auto& fx = need_fixture(sc);
  auto v = build_subspace<double>(fx);
  auto opt = lp_options(sc);
  if (opt.eps < kLemmaBEpsLimit) return lemmaB_cert_json(construct_lemmaB(v, opt), fx, opt);
  return lemmaA_cert_json(construct_lemmaA(v, opt), fx, opt);
}

template <Scalar S>
nlohmann::json run_linf_mode(const Scenario& sc) {
  const auto& fx = need_fixture(sc);
  auto opt = linf_options(sc);
  return linf_cert_json(construct_linf(build_subspace<S>(fx), opt), fx, opt);
}

// The l-family and index list recorded in a source certificate.
struct SourceFamily {
  std::string kind;
  std::string mode;
  AmbientSpace space = AmbientSpace::lp(2.0);
  double eta = 1e-9;
  std::vector<std::size_t> s;
  nlohmann::json l;
  FixtureSpec fixture;
};

SourceFamily source_family(const nlohmann::json& src) {
  SourceFamily f;
  f.kind = get_as<std::string>(src, "kind");
  try {
    f.fixture = fixture_from_json(field(src, "fixture"));
  } catch (const Error& e) {
    if (e.code() == Errc::MalformedCertificate) throw;
    malformed(std::string("source fixture: ") + e.what());
  }
  f.space = f.fixture.space;
  if (f.kind == "lemmaB") {
    const auto& a = field(src, "lemmaA");
    f.mode = "float";
    f.eta = get_as<double>(a, "eta");
    f.s = get_as<std::vector<std::size_t>>(a, "s");
    f.l = field(field(src, "lemmaB"), "l");
  } else if (f.kind == "linf") {
    const auto& l = field(src, "l");
    f.mode = get_as<std::string>(src, "mode");
    f.s = get_as<std::vector<std::size_t>>(l, "s");
    f.l = field(l, "l");
  } else {
    config("source certificate must be of kind lemmaB or linf, got " + f.kind);
  }
  if (!f.l.is_array() || f.l.size() != f.s.size()) malformed("source l-family and s differ in length");
  return f;
}

template <Scalar S>
std::vector<BasicSeq<S>> parse_family(const nlohmann::json& arr) {
  std::vector<BasicSeq<S>> out;
  for (const auto& x : arr) out.push_back(basic_seq_from_json<S>(x));
  return out;
}

nlohmann::json run_witness(const Scenario& sc) {
  auto src = source_family(sc.source);
  const std::size_t samples = sc.samples.value_or(500);
  if (src.kind == "lemmaB") {
    auto l = parse_family<double>(src.l);
    auto w = spaceable_witness(l, src.s, src.space, samples, sc.seed, src.eta);
    w.source = "lemmaB";
    return witness_cert_json(w, sc.source);
  }
  auto run = [&]<Scalar S>() {
    BasicLInfLCert<S> c;
    c.space = src.space;
    c.s = src.s;
    c.l = parse_family<S>(src.l);
    return witness_cert_json(spaceable_witness(c, samples, sc.seed), sc.source);
  };
  return src.mode == "exact" ? run.template operator()<Rational>() : run.template operator()<double>();
}

template <Scalar S>
BasicSeq<S> density_f(const Scenario& sc, const FixtureSpec& fx) {
  if (sc.f) return basic_seq_from_json<S>(*sc.f);
  auto f = random_span_member(fx, sc.seed);
  if constexpr (ScalarOps<S>::exact) {
    return f;
  } else {
    return to_float(f);
  }
}

template <Scalar S>
nlohmann::json run_density_c0(const Scenario& sc) {
  const auto& mz = field(sc.source, "mazur");
  BasicMazurCert<S> mazur;
  auto fx = fixture_from_json(field(sc.source, "fixture"));
  mazur.space = fx.space;
  mazur.n = get_as<std::vector<std::size_t>>(mz, "n");
  mazur.f = parse_family<S>(field(mz, "f"));
  if (mazur.f.size() != mazur.n.size()) malformed("source Mazur n and f differ in length");
  C0RepairOptions opt;
  opt.eps = sc.eps.value_or(kDensityDefaultEps);
  opt.depth = sc.depth.value_or(3);
  opt.stab_tol = sc.stab_tol;
  opt.samples = sc.samples.value_or(200);
  opt.seed = sc.seed;
  auto f = density_f<S>(sc, fx);
  auto r = density_repair_c0(mazur, f, opt);
  return density_c0_json(r, f, opt, sc.source);
}

nlohmann::json run_density(const Scenario& sc) {
  auto src = source_family(sc.source);
  if (src.kind == "lemmaB") {
    auto v = build_subspace<double>(src.fixture);
    LemmaBCert cert;
    cert.a.space = src.space;
    cert.a.eta = src.eta;
    cert.a.s = src.s;
    cert.l = parse_family<double>(src.l);
    const double eps = sc.eps.value_or(kDensityDefaultEps);
    auto f = density_f<double>(sc, src.fixture);
    auto r = density_repair_lp(v, cert, f, eps);
    return density_lp_json(r, f, eps, sc.source, src.fixture);
  }
  return src.mode == "exact" ? run_density_c0<Rational>(sc) : run_density_c0<double>(sc);
}

}  // namespace

std::string pipeline_name(Pipeline p) {
  switch (p) {
    case Pipeline::Lineability: return "lineability";
    case Pipeline::Lp: return "lp";
    case Pipeline::Linf: return "linf";
    case Pipeline::Witness: return "witness";
    case Pipeline::Density: return "density";
  }
  return "?";
}

int exit_code_for(Errc code) noexcept {
  if (code == Errc::ConfigError || code == Errc::EpsOutOfRange) return kExitConfig;
  if (code == Errc::MalformedCertificate) return kExitMalformed;
  if (is_model_limit(code)) return kExitModelLimit;
  return kExitFail;
}

void validate(const Scenario& sc) {
  if (sc.mode && *sc.mode != "exact" && *sc.mode != "float") {
    config("mode must be exact or float, got " + *sc.mode);
  }
  if (sc.depth && *sc.depth < 1) config("depth must satisfy depth >= 1");
  if (sc.samples && *sc.samples < 1) config("samples must satisfy samples >= 1");
  if (!(sc.stab_tol > 0.0 && sc.stab_tol < 1.0)) config("stab-tol must satisfy 0 < stab_tol < 1");
  switch (sc.pipeline) {
    case Pipeline::Lineability:
      if (sc.ratios.empty()) config("ratios must name at least one ratio in (0,1)");
      if (sc.ratios.size() > 20) config("ratios must hold at most 20 entries");
      if (!sc.coeffs.empty() && sc.coeffs.size() != sc.ratios.size()) {
        config("coeffs must have one entry per ratio");
      }
      if (sc.scan_limit < 1) config("scan limit must be >= 1");
      break;
    case Pipeline::Lp: {
      const auto& fx = need_fixture(sc);
      if (fx.space.is_sup()) config("construct-lp needs an lp fixture, got " + fx.space.name());
      if (sc.mode && *sc.mode == "exact") config("mode exact is not available for the lp pipeline (float only)");
      const double eps = sc.eps.value_or(kLpDefaultEps);
      if (!(eps > 0.0 && eps < kLemmaAEpsLimit)) config("eps must satisfy 0 < eps < 4/33");
      break;
    }
    case Pipeline::Linf: {
      const auto& fx = need_fixture(sc);
      if (!fx.space.is_sup()) config("construct-linf needs a linf or c0 fixture, got " + fx.space.name());
      if (!(sc.net_resolution > 0.0 && sc.net_resolution <= 1.0)) {
        config("net resolution must satisfy 0 < r <= 1");
      }
      break;
    }
    case Pipeline::Witness:
      if (!sc.source.is_object()) config("--cert is required for the witness pipeline");
      break;
    case Pipeline::Density: {
      if (!sc.source.is_object()) config("--cert is required for the density pipeline");
      const double eps = sc.eps.value_or(kDensityDefaultEps);
      if (!(eps > 0.0)) config("eps must satisfy eps > 0");
      break;
    }
  }
}

nlohmann::json run_scenario(const Scenario& sc) {
  validate(sc);
  switch (sc.pipeline) {
    case Pipeline::Lineability: return run_lineability(sc);
    case Pipeline::Lp: return run_lp(sc);
    case Pipeline::Linf:
      return exact_mode(sc) ? run_linf_mode<Rational>(sc) : run_linf_mode<double>(sc);
    case Pipeline::Witness: return run_witness(sc);
    case Pipeline::Density: return run_density(sc);
  }
  config("unknown pipeline");
}

Scenario scenario_from_certificate(const nlohmann::json& cert) {
  if (!cert.is_object()) malformed("certificate must be a JSON object");
  if (get_as<int>(cert, "schema_version") != kSchemaVersion) malformed("unsupported schema_version");
  const auto kind = get_as<std::string>(cert, "kind");
  Scenario sc;
  sc.name = kind;
  auto load_fixture = [&] {
    try {
      sc.fixture = fixture_from_json(field(cert, "fixture"));
    } catch (const Error& e) {
      if (e.code() == Errc::MalformedCertificate) throw;
      malformed(std::string("fixture: ") + e.what());
    }
  };
  if (kind == "lineability") {
    sc.pipeline = Pipeline::Lineability;
    try {
      for (const auto& r : field(cert, "ratios")) sc.ratios.push_back(rational_from_json(r));
      for (const auto& r : field(cert, "coeffs")) sc.coeffs.push_back(rational_from_json(r));
    } catch (const Error& e) {
      if (e.code() == Errc::MalformedCertificate) throw;
      malformed(std::string("ratios/coeffs: ") + e.what());
    }
    sc.scan_limit = get_as<std::size_t>(cert, "scan_limit");
  } else if (kind == "lemmaA" || kind == "lemmaB") {
    sc.pipeline = Pipeline::Lp;
    load_fixture();
    const auto& p = field(cert, "params");
    sc.eps = get_as<double>(p, "eps");
    sc.depth = get_as<std::size_t>(p, "depth");
    sc.samples = get_as<std::size_t>(p, "samples");
    sc.seed = get_as<std::uint64_t>(p, "seed");
    sc.mode = "float";
    if (p.contains("f1")) sc.f1 = p["f1"];
  } else if (kind == "linf") {
    sc.pipeline = Pipeline::Linf;
    load_fixture();
    const auto& p = field(cert, "params");
    sc.depth = get_as<std::size_t>(p, "depth");
    sc.mazur_depth = get_as<std::size_t>(p, "mazur_depth");
    sc.stab_tol = get_as<double>(p, "stab_tol");
    sc.net_resolution = get_as<double>(p, "net_resolution");
    sc.samples = get_as<std::size_t>(p, "samples");
    sc.seed = get_as<std::uint64_t>(p, "seed");
    sc.mode = get_as<std::string>(cert, "mode");
  } else if (kind == "witness") {
    sc.pipeline = Pipeline::Witness;
    sc.source = field(cert, "source");
    sc.samples = get_as<std::size_t>(cert, "samples");
    sc.seed = get_as<std::uint64_t>(cert, "seed");
  } else if (kind == "density") {
    sc.pipeline = Pipeline::Density;
    sc.source = field(cert, "source");
    sc.eps = get_as<double>(cert, "eps");
    sc.f = field(cert, "f");
    if (get_as<std::string>(cert, "path") == "c0") {
      const auto& p = field(cert, "params");
      sc.depth = get_as<std::size_t>(p, "depth");
      sc.stab_tol = get_as<double>(p, "stab_tol");
      sc.samples = get_as<std::size_t>(p, "samples");
      sc.seed = get_as<std::uint64_t>(p, "seed");
    }
  } else {
    malformed("unknown certificate kind " + kind);
  }
  return sc;
}

ExactSeq random_span_member(const FixtureSpec& fixture, std::uint64_t seed) {
  auto gens = fixture.materialize();
  Rng rng(derive_seed(seed, 0xf00d));
  ExactSeq f(fixture.truncation);
  for (std::size_t i = 0; i < gens.size(); ++i) {
    Rational c(static_cast<long>(rng.below(2001)) - 1000, 1000);
    c.canonicalize();
    c /= Rational(1) << static_cast<mp_bitcnt_t>(std::min<std::size_t>(i, 60));
    if (sgn(c) != 0) f = axpy(c, gens[i], f);
  }
  return f;
}

}  // namespace seqlab
