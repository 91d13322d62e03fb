#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"
#include "seqlab/ledger.hpp"

namespace seqlab {

struct VerifyReport {
  std::string kind;
  /// Every inequality re-evaluated from the stored coordinates; nested
  /// certificates contribute entries prefixed "source/" or "rerun/". The last
  /// entry of each certificate, "reproduces", reruns its scenario and counts
  /// the JSON differences.
  Ledger ledger;

  bool pass() const { return ledger.all_pass(); }
};

/// Norms are recomputed at 256-bit precision (lp) or exactly (rational mode);
/// cached norms in the certificate are never used. Throws MalformedCertificate.
VerifyReport verify_certificate(const nlohmann::json& cert);
VerifyReport verify_certificate_file(const std::filesystem::path& path);

}  // namespace seqlab
