#pragma once

#include <filesystem>
#include <span>
#include <string>

#include "json.hpp"
#include "seqlab/fixture.hpp"
#include "seqlab/ledger.hpp"
#include "seqlab/lineability.hpp"
#include "seqlab/linf_construction.hpp"
#include "seqlab/lp_construction.hpp"
#include "seqlab/seq.hpp"
#include "seqlab/witnesses.hpp"

namespace seqlab {

inline constexpr int kSchemaVersion = 1;

using nlohmann::json;

/// {"T": n, "nz": [[j, v], ...], "tail": v}; exact values are "num/den" strings.
json seq_to_json(const Seq& x);
json seq_to_json(const ExactSeq& x);
Seq seq_from_json(const json& j);
ExactSeq exact_seq_from_json(const json& j);

template <Scalar S>
BasicSeq<S> basic_seq_from_json(const json& j) {
  if constexpr (ScalarOps<S>::exact) {
    return exact_seq_from_json(j);
  } else {
    return seq_from_json(j);
  }
}

json scalar_to_json(double x);
json scalar_to_json(const Rational& x);

json ledger_to_json(const Ledger& l);
Ledger ledger_from_json(const json& j);

json perturb_to_json(const PerturbCert& p);

json lineability_cert_json(const LineabilityCert& c);
json lemmaA_cert_json(const LemmaACert& c, const FixtureSpec& fixture, const LpOptions& opt);
json lemmaB_cert_json(const LemmaBCert& c, const FixtureSpec& fixture, const LpOptions& opt);
template <Scalar S>
json linf_cert_json(const BasicLinfPipelineCert<S>& c, const FixtureSpec& fixture, const LinfOptions& opt);
json witness_cert_json(const WitnessCert& c, const json& source);
json density_lp_json(const DensityResult<double>& r, const Seq& f, double eps, const json& source,
                     const FixtureSpec& fixture);
template <Scalar S>
json density_c0_json(const DensityResult<S>& r, const BasicSeq<S>& f, const C0RepairOptions& opt,
                     const json& source);

/// Throws MalformedCertificate on unreadable or non-JSON content.
json read_json_file(const std::filesystem::path& path);
/// Write to a temporary sibling, then rename over the target.
void write_json_atomic(const std::filesystem::path& path, const json& j);
/// Canonical text form: two-space indent, trailing newline.
std::string dump_json(const json& j);

/// Field access that throws MalformedCertificate naming the missing field.
const json& field(const json& j, const char* key);

}  // namespace seqlab
