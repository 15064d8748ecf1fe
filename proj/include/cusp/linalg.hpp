#pragma once

#include "cusp/rational.hpp"

#include <optional>

namespace cusp {

using IntVec = std::vector<Int>;
using IntMat = std::vector<IntVec>;

Vec vec_add(const Vec& a, const Vec& b);
Vec vec_sub(const Vec& a, const Vec& b);
Vec vec_scale(const Vec& a, const Rat& c);
Rat dot(const Vec& a, const Vec& b);
bool is_zero(const Vec& a);

// Row-vector convention: (mat_mul_vec) computes x * M for row vector x.
Vec row_times_mat(const Vec& x, const Mat& M);
Mat mat_mul(const Mat& A, const Mat& B);
Rat det(Mat A);
std::optional<Mat> inverse(Mat A);
// Solve x * A = b (row convention); nullopt when singular/inconsistent.
std::optional<Vec> solve_row(const Mat& A, const Vec& b);
// Solve A * x = b (column convention).
std::optional<Vec> solve_col(Mat A, Vec b);
Mat transpose(const Mat& A);
Mat identity(int n);

int rank(Mat A);
// Affine rank of a point set (dimension of its affine hull).
int affine_rank(const std::vector<Vec>& pts);

// Row HNF of an integer matrix: returns a full-rank upper-triangular basis
// with positive pivots and entries above each pivot reduced into [0, pivot).
// Requires the row span to have full column rank.
IntMat hnf(IntMat rows, int dim);

// Lattice helpers (lattices = Z-spans of the rows of a rational matrix).
Mat lattice_sum(const Mat& A, const Mat& B);
Mat lattice_dual(const Mat& A);          // {y : x . y in Z for rows x}
Mat lattice_intersect(const Mat& A, const Mat& B);
Mat lattice_canonical(const Mat& A, int dim);  // HNF-normalized rational basis

}  // namespace cusp
