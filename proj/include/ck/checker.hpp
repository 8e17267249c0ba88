#ifndef CK_CHECKER_HPP
#define CK_CHECKER_HPP

#include <string>
#include <vector>

#include "ck/verdict.hpp"

namespace ck {

struct CheckOutcome {
  std::string check;   // verdict name in the report
  bool ok = false;
  std::string detail;  // what was verified, or why it failed
};

struct VerificationResult {
  std::vector<CheckOutcome> outcomes;

  bool all_ok() const {
    for (const CheckOutcome& o : outcomes)
      if (!o.ok) return false;
    return true;
  }
};

/// Re-checks every certificate in an analysis report against the input
/// embedded in the report.  Walk certificates are replayed edge by edge,
/// numeric witnesses are substituted into their defining equations, and
/// completeness claims are cross-checked against brute-force enumeration
/// where the instance is small enough.  UNKNOWN verdicts claim nothing and
/// pass vacuously.
VerificationResult verify_report(const Json& report);

}  // namespace ck

#endif  // CK_CHECKER_HPP
