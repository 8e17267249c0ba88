#include "ck/polynomial.hpp"

#include "ck/errors.hpp"

namespace ck {

Poly poly_trim(Poly p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
  return p;
}

int poly_degree(const Poly& p) { return static_cast<int>(p.size()) - 1; }

Poly poly_add(const Poly& a, const Poly& b) {
  Poly out(std::max(a.size(), b.size()), Rat(0));
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  return poly_trim(std::move(out));
}

Poly poly_sub(const Poly& a, const Poly& b) {
  Poly out(std::max(a.size(), b.size()), Rat(0));
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
  return poly_trim(std::move(out));
}

Poly poly_scale(const Poly& a, const Rat& c) {
  if (c == 0) return {};
  Poly out = a;
  for (Rat& x : out) x *= c;
  return out;
}

Poly poly_mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1, Rat(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return poly_trim(std::move(out));
}

Poly poly_mod(Poly a, const Poly& m) {
  if (m.empty()) throw InvalidArgumentError("polynomial modulus is zero");
  a = poly_trim(std::move(a));
  const int dm = poly_degree(m);
  while (poly_degree(a) >= dm) {
    const Rat q = a.back() / m.back();
    const int shift = poly_degree(a) - dm;
    for (int i = 0; i <= dm; ++i) a[i + shift] -= q * m[i];
    a = poly_trim(std::move(a));
  }
  return a;
}

Rat poly_eval(const Poly& p, const Rat& x) {
  Rat acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Poly poly_derivative(const Poly& p) {
  Poly out;
  for (std::size_t i = 1; i < p.size(); ++i)
    out.push_back(p[i] * Rat(static_cast<int>(i)));
  return poly_trim(std::move(out));
}

namespace {

Poly make_monic(Poly p) {
  p = poly_trim(std::move(p));
  if (p.empty()) return p;
  const Rat lead = p.back();
  for (Rat& c : p) c /= lead;
  return p;
}

}  // namespace

Poly poly_gcd(Poly a, Poly b) {
  a = poly_trim(std::move(a));
  b = poly_trim(std::move(b));
  while (!b.empty()) {
    Poly r = poly_mod(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return make_monic(std::move(a));
}

Poly square_free_part(const Poly& p) {
  const Poly d = poly_derivative(p);
  if (d.empty()) return make_monic(p);
  const Poly g = poly_gcd(p, d);
  if (poly_degree(g) <= 0) return make_monic(p);
  // Exact division p / g via long division; remainder is zero by
  // construction.
  Poly a = poly_trim(p);
  Poly q(poly_degree(a) - poly_degree(g) + 1, Rat(0));
  while (poly_degree(a) >= poly_degree(g)) {
    const Rat c = a.back() / g.back();
    const int shift = poly_degree(a) - poly_degree(g);
    q[shift] = c;
    for (int i = 0; i <= poly_degree(g); ++i) a[i + shift] -= c * g[i];
    a = poly_trim(std::move(a));
  }
  return make_monic(std::move(q));
}

CharPoly char_poly(const RatMatrix& m) {
  const int n = static_cast<int>(m.size());
  for (const auto& row : m)
    if (static_cast<int>(row.size()) != n)
      throw InvalidArgumentError("characteristic polynomial needs a square "
                                 "matrix");
  CharPoly out;
  out.p.assign(n + 1, Rat(0));
  out.p[n] = 1;
  std::vector<RatMatrix> b_seq;  // B_0 .. B_{n-1}
  RatMatrix b(n, RatVector(n, Rat(0)));
  for (int i = 0; i < n; ++i) b[i][i] = 1;  // B_0 = I
  for (int k = 1; k <= n; ++k) {
    b_seq.push_back(b);
    // A = M · B_{k-1}
    RatMatrix a(n, RatVector(n, Rat(0)));
    for (int i = 0; i < n; ++i)
      for (int l = 0; l < n; ++l) {
        if (m[i][l] == 0) continue;
        for (int j = 0; j < n; ++j) a[i][j] += m[i][l] * b[l][j];
      }
    Rat tr = 0;
    for (int i = 0; i < n; ++i) tr += a[i][i];
    const Rat c = -tr / k;
    out.p[n - k] = c;
    b = a;
    for (int i = 0; i < n; ++i) b[i][i] += c;
  }
  // adj(tI − M) = Σ_k B_k · t^{n-1-k}
  out.adjugate.assign(n, std::vector<Poly>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Poly e(n, Rat(0));
      bool nonzero = false;
      for (int k = 0; k < n; ++k) {
        e[n - 1 - k] = b_seq[k][i][j];
        if (e[n - 1 - k] != 0) nonzero = true;
      }
      out.adjugate[i][j] = nonzero ? poly_trim(std::move(e)) : Poly{};
    }
  return out;
}

namespace {

int sign_of(const Rat& x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }

// Sign changes of the Sturm chain of p at x (zeros skipped).
int sturm_changes(const std::vector<Poly>& chain, const Rat& x) {
  int changes = 0;
  int prev = 0;
  for (const Poly& q : chain) {
    const int s = sign_of(poly_eval(q, x));
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++changes;
    prev = s;
  }
  return changes;
}

std::vector<Poly> sturm_chain(const Poly& square_free) {
  std::vector<Poly> chain;
  chain.push_back(square_free);
  Poly d = poly_derivative(square_free);
  if (!d.empty()) chain.push_back(std::move(d));
  while (chain.size() >= 2) {
    Poly r = poly_mod(chain[chain.size() - 2], chain.back());
    if (r.empty()) break;
    for (Rat& c : r) c = -c;
    chain.push_back(std::move(r));
  }
  return chain;
}

}  // namespace

int sturm_real_roots_in(const Poly& p, const Rat& a, const Rat& b) {
  const Poly sf = square_free_part(p);
  if (poly_degree(sf) <= 0) return 0;
  if (!(a < b)) return 0;
  const auto chain = sturm_chain(sf);
  return sturm_changes(chain, a) - sturm_changes(chain, b);
}

Rat row_sum_bound(const RatMatrix& m) {
  Rat best = 0;
  for (const auto& row : m) {
    Rat s = 0;
    for (const Rat& x : row) s += x;
    if (s > best) best = s;
  }
  return best + 1;
}

bool spectral_radius_exceeds(const RatMatrix& m, const Rat& threshold) {
  const Rat bound = row_sum_bound(m);
  if (bound <= threshold) return false;
  return sturm_real_roots_in(char_poly(m).p, threshold, bound) >= 1;
}

std::optional<Rat> rational_below_largest_root(const Poly& p,
                                               const Rat& threshold,
                                               const Rat& upper) {
  if (sturm_real_roots_in(p, threshold, upper) == 0) return std::nullopt;
  Rat lo = threshold;
  Rat hi = upper;
  // Largest real root stays in (lo, hi]; stop once lo clears the threshold.
  for (int iter = 0; iter < 100000; ++iter) {
    if (lo > threshold) return lo;
    const Rat mid = (lo + hi) / 2;
    if (sturm_real_roots_in(p, mid, hi) >= 1)
      lo = mid;
    else
      hi = mid;
  }
  return std::nullopt;
}

}  // namespace ck
