#include "seqlab/ledger.hpp"

#include <sstream>

#include "seqlab/errors.hpp"

namespace seqlab {

bool holds(double lhs, const std::string& rel, double rhs) {
  if (rel == "<") return lhs < rhs;
  if (rel == "<=") return lhs <= rhs;
  if (rel == ">") return lhs > rhs;
  throw Error(Errc::PreconditionViolated, "unknown relation '" + rel + "'");
}

const LedgerEntry& Ledger::record(std::string check, int k, int t, double lhs, std::string rel,
                                  double rhs) {
  const bool ok = holds(lhs, rel, rhs);
  entries_.push_back(LedgerEntry{std::move(check), k, t, lhs, std::move(rel), rhs, ok});
  return entries_.back();
}

bool Ledger::all_pass() const { return first_failure() == nullptr; }

const LedgerEntry* Ledger::first_failure() const {
  for (const auto& e : entries_)
    if (!e.pass) return &e;
  return nullptr;
}

std::string describe(const LedgerEntry& e) {
  std::ostringstream os;
  os.precision(17);
  os << e.check << " [k=" << e.k;
  if (e.t >= 0) os << ", t=" << e.t;
  os << "]: " << e.lhs << ' ' << e.rel << ' ' << e.rhs << (e.pass ? " ok" : " FAILED");
  return os.str();
}

}  // namespace seqlab
