#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "seqlab/errors.hpp"
#include "seqlab/fixture.hpp"
#include "seqlab/scalar.hpp"

namespace seqlab {

enum class Pipeline { Lineability, Lp, Linf, Witness, Density };

std::string pipeline_name(Pipeline p);

/// Exit codes of the command line.
inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;        ///< failed ledger entry or hard failure
inline constexpr int kExitModelLimit = 2;  ///< the finite model was too small
inline constexpr int kExitConfig = 64;
inline constexpr int kExitMalformed = 65;

/// Exit code for an error escaping a pipeline.
int exit_code_for(Errc code) noexcept;

struct Scenario {
  std::string name;
  Pipeline pipeline = Pipeline::Lineability;
  std::optional<FixtureSpec> fixture;
  // Unset values take the pipeline default.
  std::optional<double> eps;
  std::optional<std::size_t> depth;
  double stab_tol = 1e-6;
  std::optional<std::size_t> samples;
  std::uint64_t seed = 0;
  std::optional<std::string> mode;  ///< "exact" or "float"
  std::size_t mazur_depth = 0;
  double net_resolution = 0.5;
  // lineability
  std::vector<Rational> ratios;
  std::vector<Rational> coeffs;  ///< empty: all ones
  std::size_t scan_limit = 500;
  // witness / density: the certificate they build on
  nlohmann::json source;
  /// density: f as a sequence; unset draws a random member of the span from the seed.
  std::optional<nlohmann::json> f;
  /// lp: start vector of the construction.
  std::optional<nlohmann::json> f1;
};

/// Throws ConfigError naming the violated bound.
void validate(const Scenario& sc);

/// Runs the pipeline and returns its certificate; pipeline errors propagate.
nlohmann::json run_scenario(const Scenario& sc);

/// The scenario that produced a certificate. Throws MalformedCertificate.
Scenario scenario_from_certificate(const nlohmann::json& cert);

/// Random member of span(V): sum_i c_i 2^-i g_i with c_i in [-1, 1] on a 1/1000 grid.
ExactSeq random_span_member(const FixtureSpec& fixture, std::uint64_t seed);

}  // namespace seqlab
