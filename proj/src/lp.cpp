#include "cusp/lp.hpp"

namespace cusp {

namespace {

// Dense tableau simplex over Q with Bland's rule.
struct Tableau {
  int m, n;                 // constraints, structural+slack+artificial columns
  Mat T;                    // (m+1) x (n+1); last row = objective, last col = rhs
  std::vector<int> basis;   // basic variable per row

  void pivot(int r, int c) {
    Rat inv = Rat(1) / T[r][c];
    for (int j = 0; j <= n; ++j) T[r][j] *= inv;
    for (int i = 0; i <= m; ++i) {
      if (i == r || sgn(T[i][c]) == 0) continue;
      Rat f = T[i][c];
      for (int j = 0; j <= n; ++j) T[i][j] -= f * T[r][j];
    }
    basis[r] = c;
  }

  // Returns false on unbounded.
  bool solve(int ncols_allowed) {
    for (;;) {
      int enter = -1;
      for (int j = 0; j < ncols_allowed; ++j)
        if (sgn(T[m][j]) < 0) { enter = j; break; }  // Bland: smallest index
      if (enter < 0) return true;
      int leave = -1;
      Rat best;
      for (int i = 0; i < m; ++i) {
        if (sgn(T[i][enter]) <= 0) continue;
        Rat ratio = T[i][n] / T[i][enter];
        if (leave < 0 || ratio < best || (ratio == best && basis[i] < basis[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
    }
  }
};

}  // namespace

LPResult lp_minimize(const Mat& A, const Vec& b, const Vec& c) {
  int m = static_cast<int>(A.size());
  int nv = static_cast<int>(c.size());
  // columns: x+ (nv), x- (nv), slack (m), artificial (m)
  int nx = 2 * nv, ns = m, na = m;
  int n = nx + ns + na;
  Tableau tb;
  tb.m = m;
  tb.n = n;
  tb.T.assign(m + 1, Vec(n + 1, Rat(0)));
  tb.basis.assign(m, -1);
  for (int i = 0; i < m; ++i) {
    int flip = sgn(b[i]) < 0 ? -1 : 1;
    for (int j = 0; j < nv; ++j) {
      tb.T[i][j] = Rat(flip) * A[i][j];
      tb.T[i][nv + j] = Rat(-flip) * A[i][j];
    }
    tb.T[i][nx + i] = Rat(flip);  // slack
    tb.T[i][n] = Rat(flip) * b[i];
  }
  // Phase 1: basis = slack where possible, else artificial.
  bool need_phase1 = false;
  for (int i = 0; i < m; ++i) {
    if (sgn(tb.T[i][nx + i]) > 0) {
      tb.basis[i] = nx + i;
    } else {
      tb.T[i][nx + ns + i] = 1;
      tb.basis[i] = nx + ns + i;
      need_phase1 = true;
    }
  }
  if (need_phase1) {
    for (int j = 0; j <= n; ++j) {
      Rat s = (j >= nx + ns && j < n) ? Rat(1) : Rat(0);
      for (int i = 0; i < m; ++i)
        if (tb.basis[i] >= nx + ns) s -= tb.T[i][j];
      tb.T[m][j] = s;
    }
    tb.solve(n);
    if (sgn(tb.T[m][n]) != 0) return {LPStatus::Infeasible, Rat(0), {}};
    // drive artificials out of the basis when possible
    for (int i = 0; i < m; ++i) {
      if (tb.basis[i] < nx + ns) continue;
      int enter = -1;
      for (int j = 0; j < nx + ns; ++j)
        if (sgn(tb.T[i][j]) != 0) { enter = j; break; }
      if (enter >= 0) tb.pivot(i, enter);
      // else: redundant row, leave the artificial at value 0
    }
  }
  // Phase 2 objective.
  for (int j = 0; j <= n; ++j) tb.T[m][j] = 0;
  for (int j = 0; j < nv; ++j) {
    tb.T[m][j] = c[j];
    tb.T[m][nv + j] = -c[j];
  }
  for (int i = 0; i < m; ++i) {
    int bj = tb.basis[i];
    if (sgn(tb.T[m][bj]) == 0) continue;
    Rat f = tb.T[m][bj];
    for (int j = 0; j <= n; ++j) tb.T[m][j] -= f * tb.T[i][j];
  }
  if (!tb.solve(nx + ns)) return {LPStatus::Unbounded, Rat(0), {}};
  Vec x(nv, Rat(0));
  for (int i = 0; i < m; ++i) {
    int bj = tb.basis[i];
    if (bj < nv)
      x[bj] += tb.T[i][n];
    else if (bj < nx)
      x[bj - nv] -= tb.T[i][n];
  }
  Rat val(0);
  for (int j = 0; j < nv; ++j) val += c[j] * x[j];
  return {LPStatus::Optimal, val, x};
}

}  // namespace cusp
