#include "cusp/linalg.hpp"

#include <algorithm>

namespace cusp {

Vec vec_add(const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

Vec vec_sub(const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

Vec vec_scale(const Vec& a, const Rat& c) {
  Vec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] * c;
  return r;
}

Rat dot(const Vec& a, const Vec& b) {
  Rat s(0);
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

bool is_zero(const Vec& a) {
  return std::all_of(a.begin(), a.end(), [](const Rat& v) { return sgn(v) == 0; });
}

Vec row_times_mat(const Vec& x, const Mat& M) {
  size_t n = M.empty() ? 0 : M[0].size();
  Vec r(n, Rat(0));
  for (size_t i = 0; i < x.size(); ++i) {
    if (sgn(x[i]) == 0) continue;
    for (size_t j = 0; j < n; ++j) r[j] += x[i] * M[i][j];
  }
  return r;
}

Mat mat_mul(const Mat& A, const Mat& B) {
  Mat r(A.size());
  for (size_t i = 0; i < A.size(); ++i) r[i] = row_times_mat(A[i], B);
  return r;
}

Mat transpose(const Mat& A) {
  if (A.empty()) return {};
  Mat r(A[0].size(), Vec(A.size()));
  for (size_t i = 0; i < A.size(); ++i)
    for (size_t j = 0; j < A[0].size(); ++j) r[j][i] = A[i][j];
  return r;
}

Mat identity(int n) {
  Mat r(n, Vec(n, Rat(0)));
  for (int i = 0; i < n; ++i) r[i][i] = 1;
  return r;
}

Rat det(Mat A) {
  int n = static_cast<int>(A.size());
  Rat d(1);
  for (int c = 0; c < n; ++c) {
    int p = -1;
    for (int r = c; r < n; ++r)
      if (sgn(A[r][c]) != 0) { p = r; break; }
    if (p < 0) return Rat(0);
    if (p != c) { std::swap(A[p], A[c]); d = -d; }
    d *= A[c][c];
    Rat inv = Rat(1) / A[c][c];
    for (int r = c + 1; r < n; ++r) {
      if (sgn(A[r][c]) == 0) continue;
      Rat f = A[r][c] * inv;
      for (int j = c; j < n; ++j) A[r][j] -= f * A[c][j];
    }
  }
  return d;
}

std::optional<Mat> inverse(Mat A) {
  int n = static_cast<int>(A.size());
  Mat I = identity(n);
  for (int c = 0; c < n; ++c) {
    int p = -1;
    for (int r = c; r < n; ++r)
      if (sgn(A[r][c]) != 0) { p = r; break; }
    if (p < 0) return std::nullopt;
    std::swap(A[p], A[c]);
    std::swap(I[p], I[c]);
    Rat inv = Rat(1) / A[c][c];
    for (int j = 0; j < n; ++j) { A[c][j] *= inv; I[c][j] *= inv; }
    for (int r = 0; r < n; ++r) {
      if (r == c || sgn(A[r][c]) == 0) continue;
      Rat f = A[r][c];
      for (int j = 0; j < n; ++j) { A[r][j] -= f * A[c][j]; I[r][j] -= f * I[c][j]; }
    }
  }
  return I;
}

std::optional<Vec> solve_col(Mat A, Vec b) {
  int n = static_cast<int>(A.size());
  for (int c = 0; c < n; ++c) {
    int p = -1;
    for (int r = c; r < n; ++r)
      if (sgn(A[r][c]) != 0) { p = r; break; }
    if (p < 0) return std::nullopt;
    std::swap(A[p], A[c]);
    std::swap(b[p], b[c]);
    Rat inv = Rat(1) / A[c][c];
    for (int j = c; j < n; ++j) A[c][j] *= inv;
    b[c] *= inv;
    for (int r = 0; r < n; ++r) {
      if (r == c || sgn(A[r][c]) == 0) continue;
      Rat f = A[r][c];
      for (int j = c; j < n; ++j) A[r][j] -= f * A[c][j];
      b[r] -= f * b[c];
    }
  }
  return b;
}

std::optional<Vec> solve_row(const Mat& A, const Vec& b) {
  return solve_col(transpose(A), b);
}

int rank(Mat A) {
  if (A.empty()) return 0;
  int rows = static_cast<int>(A.size()), cols = static_cast<int>(A[0].size());
  int rk = 0;
  for (int c = 0; c < cols && rk < rows; ++c) {
    int p = -1;
    for (int r = rk; r < rows; ++r)
      if (sgn(A[r][c]) != 0) { p = r; break; }
    if (p < 0) continue;
    std::swap(A[p], A[rk]);
    Rat inv = Rat(1) / A[rk][c];
    for (int r = rk + 1; r < rows; ++r) {
      if (sgn(A[r][c]) == 0) continue;
      Rat f = A[r][c] * inv;
      for (int j = c; j < cols; ++j) A[r][j] -= f * A[rk][j];
    }
    ++rk;
  }
  return rk;
}

int affine_rank(const std::vector<Vec>& pts) {
  if (pts.size() <= 1) return 0;
  Mat diffs;
  for (size_t i = 1; i < pts.size(); ++i) diffs.push_back(vec_sub(pts[i], pts[0]));
  return rank(diffs);
}

IntMat hnf(IntMat rows, int dim) {
  std::vector<IntVec> work;
  for (auto& r : rows)
    if (std::any_of(r.begin(), r.end(), [](const Int& v) { return v != 0; })) work.push_back(r);
  std::vector<IntVec> basis;
  for (int col = 0; col < dim; ++col) {
    std::vector<IntVec> piv, rest;
    for (auto& r : work) (r[col] != 0 ? piv : rest).push_back(r);
    if (piv.empty()) throw ToolkitError("hnf: rows not of full rank");
    while (piv.size() > 1) {
      std::sort(piv.begin(), piv.end(), [&](const IntVec& a, const IntVec& b) {
        return cmp(abs(a[col]), abs(b[col])) < 0;
      });
      IntVec p = piv[0];
      std::vector<IntVec> nxt{p};
      for (size_t i = 1; i < piv.size(); ++i) {
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), piv[i][col].get_mpz_t(), p[col].get_mpz_t());
        IntVec rr(dim);
        for (int j = 0; j < dim; ++j) rr[j] = piv[i][j] - q * p[j];
        if (rr[col] != 0)
          nxt.push_back(rr);
        else if (std::any_of(rr.begin(), rr.end(), [](const Int& v) { return v != 0; }))
          rest.push_back(rr);
      }
      piv = std::move(nxt);
      if (piv.size() == 1) break;
    }
    IntVec p = piv[0];
    if (p[col] < 0)
      for (auto& v : p) v = -v;
    basis.push_back(p);
    work = std::move(rest);
  }
  // pivot of basis[i] is at column i by construction; reduce above pivots
  for (int i = dim - 1; i >= 0; --i) {
    for (int j = 0; j < i; ++j) {
      Int q;
      mpz_fdiv_q(q.get_mpz_t(), basis[j][i].get_mpz_t(), basis[i][i].get_mpz_t());
      if (q != 0)
        for (int k = 0; k < dim; ++k) basis[j][k] -= q * basis[i][k];
    }
  }
  return basis;
}

Mat lattice_canonical(const Mat& A, int dim) {
  Int den(1);
  for (auto& r : A)
    for (auto& v : r) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), v.get_den_mpz_t());
  IntMat rows;
  for (auto& r : A) {
    IntVec ir(dim);
    for (int j = 0; j < dim; ++j) {
      Rat v = r[j] * Rat(den);
      ir[j] = v.get_num();
    }
    rows.push_back(ir);
  }
  IntMat H = hnf(std::move(rows), dim);
  Mat out(dim, Vec(dim));
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      out[i][j] = Rat(H[i][j], den);
      out[i][j].canonicalize();
    }
  return out;
}

Mat lattice_sum(const Mat& A, const Mat& B) {
  Mat all = A;
  all.insert(all.end(), B.begin(), B.end());
  return lattice_canonical(all, static_cast<int>(A[0].size()));
}

Mat lattice_dual(const Mat& A) {
  auto inv = inverse(A);
  if (!inv) throw ToolkitError("lattice_dual: singular basis");
  return transpose(*inv);
}

Mat lattice_intersect(const Mat& A, const Mat& B) {
  // (A ∩ B)* = A* + B* for full-rank lattices (standard dual)
  Mat d = lattice_sum(lattice_dual(A), lattice_dual(B));
  return lattice_canonical(lattice_dual(d), static_cast<int>(A[0].size()));
}

}  // namespace cusp
