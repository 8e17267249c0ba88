#ifndef CK_EXACT_LP_HPP
#define CK_EXACT_LP_HPP

#include <optional>

#include "ck/rational.hpp"

namespace ck {

/// The system "find x ≥ 0 with M x = b" over exact rationals.
struct RationalLinearSystem {
  RatMatrix M;  // rows of equal length
  RatVector b;  // one entry per row
};

/// Outcome of a feasibility query.  Exactly one of witness / farkas is set:
/// either x ≥ 0 with Mx = b, or y with yᵀM ≤ 0 (componentwise) and yᵀb > 0,
/// which refutes feasibility by direct substitution.
struct FeasibilityResult {
  std::optional<RatVector> witness;
  std::optional<RatVector> farkas;

  bool feasible() const { return witness.has_value(); }
};

/// Phase-1 simplex with Bland's rule; exact rational pivots throughout.
/// Always terminates and always returns a verifiable certificate.
/// Throws InvalidArgumentError on ragged/mismatched dimensions.
FeasibilityResult feasible_nonnegative(const RationalLinearSystem& sys);

/// Certificate checks by direct substitution (used by tests and the report
/// verifier; no simplex involved).
bool check_witness(const RationalLinearSystem& sys, const RatVector& x);
bool check_farkas(const RationalLinearSystem& sys, const RatVector& y);

/// Rank of a rational matrix by Gaussian elimination.
int matrix_rank(RatMatrix m);

/// Solve a square system A z = rhs exactly; nullopt when A is singular.
std::optional<RatVector> solve_square(RatMatrix a, RatVector rhs);

}  // namespace ck

#endif  // CK_EXACT_LP_HPP
