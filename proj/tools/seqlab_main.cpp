#include <omp.h>

#include <algorithm>
#include <future>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "seqlab/certificate_io.hpp"
#include "seqlab/cli.hpp"
#include "seqlab/verify.hpp"

using namespace seqlab;

namespace {

std::vector<Rational> parse_list(const std::string& text, const char* what) {
  std::vector<Rational> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(parse_rational(item));
    } catch (const Error&) {
      throw Error(Errc::ConfigError, std::string(what) + " entry '" + item + "' is not a rational");
    }
  }
  return out;
}

double parse_number(const std::string& text, const char* what) {
  try {
    return parse_rational(text).get_d();
  } catch (const Error&) {
    throw Error(Errc::ConfigError, std::string(what) + " '" + text + "' is not a number");
  }
}

int emit(const nlohmann::json& cert, const std::string& out) {
  if (out.empty()) {
    std::cout << dump_json(cert);
  } else {
    write_json_atomic(out, cert);
  }
  if (cert.value("pass", false)) return kExitPass;
  std::cerr << "certificate has failing ledger entries\n";
  return kExitFail;
}

struct VerifyOutcome {
  int code = kExitPass;
  std::string line;
};

VerifyOutcome verify_one(const std::string& path) {
  VerifyOutcome o;
  try {
    auto r = verify_certificate_file(path);
    if (r.pass()) {
      o.line = "PASS " + path + " (" + r.kind + ", " + std::to_string(r.ledger.entries().size()) + " checks)";
    } else {
      o.code = kExitFail;
      o.line = "FAIL " + path + ": " + describe(*r.ledger.first_failure());
    }
  } catch (const Error& e) {
    o.code = exit_code_for(e.code());
    o.line = "ERROR " + path + ": " + e.what();
  }
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sequence-space lab: certified constructions in truncated lp, l_inf and c0"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string fixture_path, cert_path, out, eps_text, stab_text, mode, space, ratios, coeffs, f_path;
  std::size_t depth = 0, samples = 0, jobs = 0, scan = 500, mazur_depth = 0;
  double p = 0.0;
  std::uint64_t seed = 0;
  std::vector<std::string> verify_paths;

  app.add_option("--jobs", jobs, "Worker threads for sampling and for verifying several files");
  app.add_option("--out", out, "Write the certificate here (atomically) instead of stdout");

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--samples", samples, "Sampled checks");
    sub->add_option("--seed", seed, "Master seed");
  };

  auto* lin = app.add_subcommand("lineability", "Zero-set bound and rank of a geometric combination");
  lin->add_option("--ratios", ratios, "Comma-separated ratios in (0,1), e.g. 1/2,1/3")->required();
  lin->add_option("--coeffs", coeffs, "Comma-separated nonzero coefficients (default all 1)");
  lin->add_option("--scan", scan, "Exponents 1..scan are evaluated exactly");

  auto* lp = app.add_subcommand("construct-lp", "Block basis, perturbation and iterative zeroing in lp");
  lp->add_option("--fixture", fixture_path, "Subspace JSON")->required();
  lp->add_option("--eps", eps_text, "eps (< 1/512 runs the zeroing stage too)");
  lp->add_option("--depth", depth, "Length of the constructed family");
  lp->add_option("--space", space, "Must match the fixture (lp)");
  lp->add_option("--p", p, "Must match the fixture exponent");
  lp->add_option("--mode", mode, "float (exact is not available here)");
  add_common(lp);

  auto* lf = app.add_subcommand("construct-linf", "Mazur sequence, h-cascade and l-family in l_inf / c0");
  lf->add_option("--fixture", fixture_path, "Subspace JSON")->required();
  lf->add_option("--depth", depth, "Length of the l-family");
  lf->add_option("--mazur-depth", mazur_depth, "Mazur steps attempted (0: 6 depth + 8)");
  lf->add_option("--stab-tol", stab_text, "Stabilization window width");
  lf->add_option("--mode", mode, "exact (default) or float");
  add_common(lf);

  auto* wit = app.add_subcommand("witness", "Spaceability witness from an lp or l_inf certificate");
  wit->add_option("--cert", cert_path, "lemmaB or linf certificate")->required();
  add_common(wit);

  auto* den = app.add_subcommand("density", "Move f in span(V) into the witness set");
  den->add_option("--cert", cert_path, "lemmaB (lp path) or linf over c0 (c0 path) certificate")->required();
  den->add_option("--eps", eps_text, "Distance budget");
  den->add_option("--depth", depth, "c0: length of the correcting l-family");
  den->add_option("--stab-tol", stab_text, "c0: stabilization window width");
  den->add_option("--f", f_path, "f as a sequence JSON (default: random member of the span)");
  add_common(den);

  auto* ver = app.add_subcommand("verify", "Re-check certificates from their raw coordinates");
  ver->add_option("certs", verify_paths, "Certificate files")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitPass : kExitConfig;
  }

  if (jobs > 0) omp_set_num_threads(static_cast<int>(jobs));

  if (ver->parsed()) {
    const std::size_t width = std::max<std::size_t>(1, jobs);
    std::vector<VerifyOutcome> outcomes(verify_paths.size());
    for (std::size_t start = 0; start < verify_paths.size(); start += width) {
      std::vector<std::future<VerifyOutcome>> batch;
      for (std::size_t i = start; i < std::min(verify_paths.size(), start + width); ++i)
        batch.push_back(std::async(width > 1 ? std::launch::async : std::launch::deferred, verify_one, verify_paths[i]));
      for (std::size_t i = 0; i < batch.size(); ++i) outcomes[start + i] = batch[i].get();
    }
    int code = kExitPass;
    for (const auto& o : outcomes) {
      std::cout << o.line << "\n";
      code = std::max(code, o.code);
    }
    return code;
  }

  Scenario sc;
  try {
    sc.seed = seed;
    if (depth) sc.depth = depth;
    if (samples) sc.samples = samples;
    if (!mode.empty()) sc.mode = mode;
    if (!eps_text.empty()) sc.eps = parse_number(eps_text, "eps");
    if (!stab_text.empty()) sc.stab_tol = parse_number(stab_text, "stab-tol");
    if (!fixture_path.empty()) sc.fixture = load_fixture(fixture_path);
    if (lin->parsed()) {
      sc.pipeline = Pipeline::Lineability;
      sc.ratios = parse_list(ratios, "ratios");
      if (!coeffs.empty()) sc.coeffs = parse_list(coeffs, "coeffs");
      sc.scan_limit = scan;
    } else if (lp->parsed()) {
      sc.pipeline = Pipeline::Lp;
      if (!space.empty() && space != "lp") throw Error(Errc::ConfigError, "construct-lp needs --space lp");
      if (p != 0.0 && sc.fixture && (sc.fixture->space.is_sup() || sc.fixture->space.p() != p)) {
        throw Error(Errc::ConfigError, "--p does not match the fixture space " + sc.fixture->space.name());
      }
    } else if (lf->parsed()) {
      sc.pipeline = Pipeline::Linf;
      sc.mazur_depth = mazur_depth;
    } else {
      sc.pipeline = wit->parsed() ? Pipeline::Witness : Pipeline::Density;
      try {
        sc.source = read_json_file(cert_path);
      } catch (const Error& e) {
        throw Error(Errc::ConfigError, std::string("--cert: ") + e.what());
      }
      if (!f_path.empty()) sc.f = read_json_file(f_path);
    }
    sc.name = pipeline_name(sc.pipeline);
    return emit(run_scenario(sc), out);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFail;
  }
}
