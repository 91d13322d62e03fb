#pragma once

#include <string>
#include <vector>

namespace seqlab {

/// One checked inequality "lhs rel rhs". `k` labels the family member
/// (counted from 1, as in the 2^k bounds), `t` a recursion step or -1.
struct LedgerEntry {
  std::string check;
  int k = 0;
  int t = -1;
  double lhs = 0.0;
  std::string rel;  ///< "<", "<=" or ">"
  double rhs = 0.0;
  bool pass = false;
};

bool holds(double lhs, const std::string& rel, double rhs);

class Ledger {
 public:
  const LedgerEntry& record(std::string check, int k, int t, double lhs, std::string rel, double rhs);

  bool all_pass() const;
  /// nullptr when every entry passes.
  const LedgerEntry* first_failure() const;
  const std::vector<LedgerEntry>& entries() const noexcept { return entries_; }
  std::vector<LedgerEntry>& entries() noexcept { return entries_; }

 private:
  std::vector<LedgerEntry> entries_;
};

std::string describe(const LedgerEntry& e);

}  // namespace seqlab
