#ifndef CK_POLYNOMIAL_HPP
#define CK_POLYNOMIAL_HPP

#include <optional>
#include <vector>

#include "ck/rational.hpp"

namespace ck {

/// Dense univariate polynomial over the rationals, coefficients from degree
/// 0 upward.  The zero polynomial is the empty vector; otherwise the leading
/// coefficient is nonzero.
using Poly = std::vector<Rat>;

Poly poly_trim(Poly p);
int poly_degree(const Poly& p);  // -1 for the zero polynomial
Poly poly_add(const Poly& a, const Poly& b);
Poly poly_sub(const Poly& a, const Poly& b);
Poly poly_scale(const Poly& a, const Rat& c);
Poly poly_mul(const Poly& a, const Poly& b);
/// Remainder of a mod m (deg m ≥ 0 required).
Poly poly_mod(Poly a, const Poly& m);
Rat poly_eval(const Poly& p, const Rat& x);
Poly poly_derivative(const Poly& p);
/// Monic greatest common divisor.
Poly poly_gcd(Poly a, Poly b);
/// p / gcd(p, p'): same roots, all simple.
Poly square_free_part(const Poly& p);

/// Characteristic polynomial det(tI − M) (monic) together with the adjugate
/// adj(tI − M) as a matrix of polynomials, by the Faddeev–LeVerrier
/// recursion.  (tI − M)·adj(tI − M) = p(t)·I, so any adjugate column u
/// satisfies M·u ≡ t·u modulo p; the column has degree n−1 entries with a
/// monomial t^{n-1} on the diagonal, hence is nonzero modulo p.
struct CharPoly {
  Poly p;
  std::vector<std::vector<Poly>> adjugate;  // n×n entries
};
CharPoly char_poly(const RatMatrix& m);

/// Number of distinct real roots of p in the half-open interval (a, b], by
/// Sturm's theorem on the square-free part.
int sturm_real_roots_in(const Poly& p, const Rat& a, const Rat& b);

/// For a nonnegative matrix the spectral radius is its largest real
/// eigenvalue, so: ρ(M) > threshold ⟺ the characteristic polynomial has a
/// real root in (threshold, B] with B any bound ≥ ρ (max row sum + 1 here).
bool spectral_radius_exceeds(const RatMatrix& m, const Rat& threshold);

/// A rational λ with threshold < λ < (largest real root of p), when p has a
/// real root above the threshold in (threshold, upper]; nullopt otherwise.
/// Found by bisection on Sturm counts.
std::optional<Rat> rational_below_largest_root(const Poly& p,
                                               const Rat& threshold,
                                               const Rat& upper);

/// Max row sum + 1: an upper bound for every real eigenvalue of a
/// nonnegative matrix.
Rat row_sum_bound(const RatMatrix& m);

}  // namespace ck

#endif  // CK_POLYNOMIAL_HPP
