#include "ck/exact_lp.hpp"

#include <algorithm>

#include "ck/errors.hpp"

namespace ck {

namespace {

void validate_dimensions(const RationalLinearSystem& sys) {
  if (sys.M.size() != sys.b.size()) {
    throw InvalidArgumentError("linear system: row count does not match b");
  }
  std::size_t cols = sys.M.empty() ? 0 : sys.M.front().size();
  for (const auto& row : sys.M) {
    if (row.size() != cols) {
      throw InvalidArgumentError("linear system: ragged matrix");
    }
  }
}

}  // namespace

FeasibilityResult feasible_nonnegative(const RationalLinearSystem& sys) {
  validate_dimensions(sys);
  const int m = static_cast<int>(sys.M.size());
  const int n = m == 0 ? 0 : static_cast<int>(sys.M.front().size());

  if (m == 0) {
    return FeasibilityResult{RatVector(n, Rat(0)), std::nullopt};
  }

  // Phase-1 tableau: minimize the sum of artificial variables a over
  // {Mx + a = b, x ≥ 0, a ≥ 0} with rows pre-negated so b ≥ 0.  Columns:
  // 0..n-1 original, n..n+m-1 artificial.  row_sign records the negation so
  // the Farkas vector can be mapped back to the original row space.
  RatMatrix t(m, RatVector(n + m, Rat(0)));
  RatVector rhs(m);
  std::vector<int> row_sign(m, 1);
  for (int i = 0; i < m; ++i) {
    if (sys.b[i] < 0) row_sign[i] = -1;
    for (int j = 0; j < n; ++j) t[i][j] = sys.M[i][j] * row_sign[i];
    rhs[i] = sys.b[i] * row_sign[i];
    t[i][n + i] = 1;
  }
  std::vector<int> basis(m);
  for (int i = 0; i < m; ++i) basis[i] = n + i;

  // Objective row for cost c = (0,...,0, 1,...,1): reduced costs and the
  // current objective value, kept in sync by pivoting.  Initially the
  // artificial variables are basic, so z_j - c_j = Σ_i t[i][j] - c_j.
  RatVector red(n + m);  // c_j - z_j  (Bland enters on negative entries)
  Rat objective(0);
  for (int j = 0; j < n + m; ++j) {
    Rat z(0);
    for (int i = 0; i < m; ++i) z += t[i][j];
    red[j] = (j >= n ? Rat(1) : Rat(0)) - z;
  }
  for (int i = 0; i < m; ++i) objective += rhs[i];

  auto pivot = [&](int pr, int pc) {
    Rat p = t[pr][pc];
    for (int j = 0; j < n + m; ++j) t[pr][j] /= p;
    rhs[pr] /= p;
    for (int i = 0; i < m; ++i) {
      if (i == pr || t[i][pc] == 0) continue;
      Rat f = t[i][pc];
      for (int j = 0; j < n + m; ++j) t[i][j] -= f * t[pr][j];
      rhs[i] -= f * rhs[pr];
    }
    if (red[pc] != 0) {
      Rat f = red[pc];
      for (int j = 0; j < n + m; ++j) red[j] -= f * t[pr][j];
      // The entering variable takes the value rhs[pr], so the objective
      // moves by its reduced cost times that level.
      objective += f * rhs[pr];
    }
    basis[pr] = pc;
  };

  while (true) {
    // Bland: smallest-index column with negative reduced cost.
    int enter = -1;
    for (int j = 0; j < n + m; ++j) {
      if (red[j] < 0) {
        enter = j;
        break;
      }
    }
    if (enter < 0) break;
    // Ratio test; Bland tie-break on smallest basic variable index.
    int leave = -1;
    Rat best;
    for (int i = 0; i < m; ++i) {
      if (t[i][enter] <= 0) continue;
      Rat ratio = rhs[i] / t[i][enter];
      if (leave < 0 || ratio < best ||
          (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave < 0) {
      // Unbounded phase-1 objective cannot happen (bounded below by 0 and
      // decreasing), but guard against it structurally.
      throw Error("phase-1 simplex: unbounded descent");
    }
    pivot(leave, enter);
  }

  if (objective == 0) {
    RatVector x(n, Rat(0));
    for (int i = 0; i < m; ++i) {
      if (basis[i] < n) x[basis[i]] = rhs[i];
    }
    return FeasibilityResult{std::move(x), std::nullopt};
  }

  // Infeasible: simplex multipliers π_i = 1 - red[n+i] (reduced cost of the
  // i-th artificial column is c - πᵀe_i).  At optimality red[j] ≥ 0 for the
  // original columns, i.e. πᵀM'_j ≤ 0, and πᵀb' = objective > 0; undo the
  // row negations to get y for the original system.
  RatVector y(m);
  for (int i = 0; i < m; ++i) y[i] = (Rat(1) - red[n + i]) * row_sign[i];
  return FeasibilityResult{std::nullopt, std::move(y)};
}

bool check_witness(const RationalLinearSystem& sys, const RatVector& x) {
  if (sys.M.size() != sys.b.size()) return false;
  for (const Rat& v : x) {
    if (v < 0) return false;
  }
  for (std::size_t i = 0; i < sys.M.size(); ++i) {
    if (sys.M[i].size() != x.size()) return false;
    Rat acc(0);
    for (std::size_t j = 0; j < x.size(); ++j) acc += sys.M[i][j] * x[j];
    if (acc != sys.b[i]) return false;
  }
  return true;
}

bool check_farkas(const RationalLinearSystem& sys, const RatVector& y) {
  if (y.size() != sys.M.size()) return false;
  std::size_t cols = sys.M.empty() ? 0 : sys.M.front().size();
  for (std::size_t j = 0; j < cols; ++j) {
    Rat acc(0);
    for (std::size_t i = 0; i < sys.M.size(); ++i) acc += y[i] * sys.M[i][j];
    if (acc > 0) return false;
  }
  Rat yb(0);
  for (std::size_t i = 0; i < sys.b.size(); ++i) yb += y[i] * sys.b[i];
  return yb > 0;
}

int matrix_rank(RatMatrix m) {
  int rank = 0;
  const int rows = static_cast<int>(m.size());
  const int cols = rows == 0 ? 0 : static_cast<int>(m.front().size());
  for (int c = 0; c < cols && rank < rows; ++c) {
    int p = -1;
    for (int r = rank; r < rows; ++r) {
      if (m[r][c] != 0) {
        p = r;
        break;
      }
    }
    if (p < 0) continue;
    std::swap(m[rank], m[p]);
    for (int r = 0; r < rows; ++r) {
      if (r == rank || m[r][c] == 0) continue;
      Rat f = m[r][c] / m[rank][c];
      for (int j = c; j < cols; ++j) m[r][j] -= f * m[rank][j];
    }
    ++rank;
  }
  return rank;
}

std::optional<RatVector> solve_square(RatMatrix a, RatVector rhs) {
  const int n = static_cast<int>(a.size());
  for (const auto& row : a) {
    if (static_cast<int>(row.size()) != n) {
      throw InvalidArgumentError("solve_square: matrix not square");
    }
  }
  if (static_cast<int>(rhs.size()) != n) {
    throw InvalidArgumentError("solve_square: rhs size mismatch");
  }
  for (int c = 0; c < n; ++c) {
    int p = -1;
    for (int r = c; r < n; ++r) {
      if (a[r][c] != 0) {
        p = r;
        break;
      }
    }
    if (p < 0) return std::nullopt;
    std::swap(a[c], a[p]);
    std::swap(rhs[c], rhs[p]);
    for (int r = 0; r < n; ++r) {
      if (r == c || a[r][c] == 0) continue;
      Rat f = a[r][c] / a[c][c];
      for (int j = c; j < n; ++j) a[r][j] -= f * a[c][j];
      rhs[r] -= f * rhs[c];
    }
  }
  RatVector x(n);
  for (int i = 0; i < n; ++i) x[i] = rhs[i] / a[i][i];
  return x;
}

}  // namespace ck
