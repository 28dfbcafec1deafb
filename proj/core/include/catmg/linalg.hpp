#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace catmg {

using Q = mpq_class;
using Vec = std::vector<Q>;

// Dense row-major matrix over Q. Vectors are rows; maps act by v * M.
struct Mat {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Q> a;

  Mat() = default;
  Mat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {}

  static Mat identity(std::size_t n);
  static Mat from_rows(const std::vector<Vec>& rs, std::size_t cols);

  Q& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  const Q& operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

  Vec row(std::size_t i) const;
  void append_row(const Vec& v);
  Mat transpose() const;
  bool is_zero() const;
  Mat block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
};

Mat operator*(const Mat& x, const Mat& y);
Mat operator+(const Mat& x, const Mat& y);
Mat operator-(const Mat& x, const Mat& y);
Mat operator*(const Q& c, const Mat& x);
Vec operator*(const Vec& v, const Mat& m);
bool operator==(const Mat& x, const Mat& y);

bool is_zero(const Vec& v);
Vec add(const Vec& x, const Vec& y);
Vec sub(const Vec& x, const Vec& y);
Vec scale(const Q& c, const Vec& v);
void axpy(Vec& y, const Q& c, const Vec& x);

// Reduced row echelon form in place; pivots searched among the first
// pivot_cols columns (all columns when 0). Returns pivot columns.
std::vector<std::size_t> rref(Mat& m, std::size_t pivot_cols = 0);
std::size_t rank(Mat m);
// Rows spanning {x : M x^T = 0}.
Mat kernel(const Mat& m);
// Rows spanning {y : y M = 0}.
Mat left_kernel(const Mat& m);
Mat row_basis(Mat m);
std::optional<Mat> inverse(const Mat& m);
Q determinant(Mat m);

// Coordinates of vectors in the row space of a fixed matrix.
class RowSolver {
 public:
  RowSolver() = default;
  explicit RowSolver(const Mat& rows);
  // x with x * rows = v, if v lies in the row space.
  std::optional<Vec> solve(const Vec& v) const;
  bool contains(const Vec& v) const;
  std::size_t rank() const { return piv_.size(); }
  std::size_t nrows() const { return k_; }
  std::size_t ncols() const { return n_; }

 private:
  std::size_t k_ = 0, n_ = 0;
  Mat e_, t_;
  std::vector<std::size_t> piv_;
};

// Incrementally grown span kept in fully reduced echelon form.
class Span {
 public:
  explicit Span(std::size_t n = 0) : n_(n) {}
  std::size_t dim() const { return rows_.size(); }
  std::size_t ambient() const { return n_; }
  Vec reduce(Vec v) const;
  bool contains(const Vec& v) const { return is_zero(reduce(v)); }
  // Adds v; returns false when v was already in the span.
  bool add(const Vec& v);
  Mat basis() const;

 private:
  std::size_t n_;
  std::vector<Vec> rows_;
  std::vector<std::size_t> piv_;
};

std::string to_string(const Q& q);

}  // namespace catmg
