#include "catmg/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace catmg {

Mat Mat::identity(std::size_t n) {
  Mat m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Mat Mat::from_rows(const std::vector<Vec>& rs, std::size_t cols) {
  Mat m(rs.size(), cols);
  for (std::size_t i = 0; i < rs.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rs[i][j];
  return m;
}

Vec Mat::row(std::size_t i) const {
  return Vec(a.begin() + static_cast<std::ptrdiff_t>(i * cols),
             a.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols));
}

void Mat::append_row(const Vec& v) {
  if (rows == 0 && cols == 0) cols = v.size();
  if (v.size() != cols) throw std::invalid_argument("append_row: width");
  a.insert(a.end(), v.begin(), v.end());
  ++rows;
}

Mat Mat::transpose() const {
  Mat t(cols, rows);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool Mat::is_zero() const {
  return std::all_of(a.begin(), a.end(), [](const Q& q) { return sgn(q) == 0; });
}

Mat Mat::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  Mat b(nr, nc);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
  return b;
}

Mat operator*(const Mat& x, const Mat& y) {
  if (x.cols != y.rows) throw std::invalid_argument("matmul: shape");
  Mat r(x.rows, y.cols);
  Q t;
  for (std::size_t i = 0; i < x.rows; ++i)
    for (std::size_t k = 0; k < x.cols; ++k) {
      const Q& xv = x(i, k);
      if (sgn(xv) == 0) continue;
      for (std::size_t j = 0; j < y.cols; ++j) {
        const Q& yv = y(k, j);
        if (sgn(yv) == 0) continue;
        t = xv * yv;
        r(i, j) += t;
      }
    }
  return r;
}

Mat operator+(const Mat& x, const Mat& y) {
  Mat r = x;
  for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] += y.a[i];
  return r;
}

Mat operator-(const Mat& x, const Mat& y) {
  Mat r = x;
  for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] -= y.a[i];
  return r;
}

Mat operator*(const Q& c, const Mat& x) {
  Mat r = x;
  for (auto& v : r.a) v *= c;
  return r;
}

Vec operator*(const Vec& v, const Mat& m) {
  if (v.size() != m.rows) throw std::invalid_argument("vecmat: shape");
  Vec r(m.cols);
  Q t;
  for (std::size_t k = 0; k < m.rows; ++k) {
    if (sgn(v[k]) == 0) continue;
    for (std::size_t j = 0; j < m.cols; ++j) {
      const Q& mv = m(k, j);
      if (sgn(mv) == 0) continue;
      t = v[k] * mv;
      r[j] += t;
    }
  }
  return r;
}

bool operator==(const Mat& x, const Mat& y) {
  return x.rows == y.rows && x.cols == y.cols && x.a == y.a;
}

bool is_zero(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](const Q& q) { return sgn(q) == 0; });
}

Vec add(const Vec& x, const Vec& y) {
  Vec r = x;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += y[i];
  return r;
}

Vec sub(const Vec& x, const Vec& y) {
  Vec r = x;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= y[i];
  return r;
}

Vec scale(const Q& c, const Vec& v) {
  Vec r = v;
  for (auto& q : r) q *= c;
  return r;
}

void axpy(Vec& y, const Q& c, const Vec& x) {
  if (sgn(c) == 0) return;
  Q t;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (sgn(x[i]) == 0) continue;
    t = c * x[i];
    y[i] += t;
  }
}

std::vector<std::size_t> rref(Mat& m, std::size_t pivot_cols) {
  if (pivot_cols == 0 || pivot_cols > m.cols) pivot_cols = m.cols;
  std::vector<std::size_t> piv;
  std::size_t r = 0;
  std::vector<std::size_t> nz;
  Q f, t;
  for (std::size_t c = 0; c < pivot_cols && r < m.rows; ++c) {
    std::size_t p = r;
    while (p < m.rows && sgn(m(p, c)) == 0) ++p;
    if (p == m.rows) continue;
    if (p != r)
      for (std::size_t j = 0; j < m.cols; ++j) std::swap(m(p, j), m(r, j));
    Q inv = 1 / m(r, c);
    nz.clear();
    for (std::size_t j = c; j < m.cols; ++j)
      if (sgn(m(r, j)) != 0) {
        m(r, j) *= inv;
        nz.push_back(j);
      }
    for (std::size_t i = 0; i < m.rows; ++i) {
      if (i == r || sgn(m(i, c)) == 0) continue;
      f = m(i, c);
      for (std::size_t j : nz) {
        t = f * m(r, j);
        m(i, j) -= t;
      }
    }
    piv.push_back(c);
    ++r;
  }
  return piv;
}

std::size_t rank(Mat m) { return rref(m).size(); }

Mat kernel(const Mat& m) {
  Mat e = m;
  auto piv = rref(e);
  std::vector<bool> is_piv(m.cols, false);
  for (auto c : piv) is_piv[c] = true;
  Mat k(0, m.cols);
  k.cols = m.cols;
  for (std::size_t f = 0; f < m.cols; ++f) {
    if (is_piv[f]) continue;
    Vec v(m.cols);
    v[f] = 1;
    for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -e(i, f);
    k.append_row(v);
  }
  return k;
}

Mat left_kernel(const Mat& m) { return kernel(m.transpose()); }

Mat row_basis(Mat m) {
  auto piv = rref(m);
  Mat b(piv.size(), m.cols);
  for (std::size_t i = 0; i < piv.size(); ++i)
    for (std::size_t j = 0; j < m.cols; ++j) b(i, j) = m(i, j);
  return b;
}

std::optional<Mat> inverse(const Mat& m) {
  if (m.rows != m.cols) return std::nullopt;
  std::size_t n = m.rows;
  Mat aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  auto piv = rref(aug, n);
  if (piv.size() != n) return std::nullopt;
  return aug.block(0, n, n, n);
}

Q determinant(Mat m) {
  if (m.rows != m.cols) throw std::invalid_argument("determinant: not square");
  Q det = 1;
  std::size_t n = m.rows;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && sgn(m(p, c)) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
      det = -det;
    }
    det *= m(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (sgn(m(i, c)) == 0) continue;
      Q f = m(i, c) / m(c, c);
      for (std::size_t j = c; j < n; ++j) m(i, j) -= f * m(c, j);
    }
  }
  return det;
}

RowSolver::RowSolver(const Mat& rows) : k_(rows.rows), n_(rows.cols) {
  Mat aug(k_, n_ + k_);
  for (std::size_t i = 0; i < k_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) aug(i, j) = rows(i, j);
    aug(i, n_ + i) = 1;
  }
  if (n_ > 0) piv_ = rref(aug, n_);
  std::size_t r = piv_.size();
  e_ = aug.block(0, 0, r, n_);
  t_ = aug.block(0, n_, r, k_);
}

std::optional<Vec> RowSolver::solve(const Vec& v) const {
  if (v.size() != n_) throw std::invalid_argument("RowSolver: width");
  Vec res = v;
  Vec y(piv_.size());
  for (std::size_t i = 0; i < piv_.size(); ++i) {
    y[i] = res[piv_[i]];
    if (sgn(y[i]) == 0) continue;
    Q t;
    for (std::size_t j = 0; j < n_; ++j) {
      if (sgn(e_(i, j)) == 0) continue;
      t = y[i] * e_(i, j);
      res[j] -= t;
    }
  }
  if (!is_zero(res)) return std::nullopt;
  return y * t_;
}

bool RowSolver::contains(const Vec& v) const {
  Vec res = v;
  for (std::size_t i = 0; i < piv_.size(); ++i) {
    Q y = res[piv_[i]];
    if (sgn(y) == 0) continue;
    for (std::size_t j = 0; j < n_; ++j)
      if (sgn(e_(i, j)) != 0) res[j] -= y * e_(i, j);
  }
  return is_zero(res);
}

Vec Span::reduce(Vec v) const {
  Q t;
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (sgn(v[piv_[i]]) == 0) continue;
    Q f = v[piv_[i]];
    const Vec& r = rows_[i];
    for (std::size_t j = 0; j < n_; ++j) {
      if (sgn(r[j]) == 0) continue;
      t = f * r[j];
      v[j] -= t;
    }
  }
  return v;
}

bool Span::add(const Vec& v) {
  if (n_ == 0) n_ = v.size();
  Vec r = reduce(v);
  std::size_t p = 0;
  while (p < n_ && sgn(r[p]) == 0) ++p;
  if (p == n_) return false;
  Q inv = 1 / r[p];
  for (auto& q : r) q *= inv;
  Q t;
  for (auto& row : rows_) {
    if (sgn(row[p]) == 0) continue;
    Q f = row[p];
    for (std::size_t j = 0; j < n_; ++j) {
      if (sgn(r[j]) == 0) continue;
      t = f * r[j];
      row[j] -= t;
    }
  }
  rows_.push_back(std::move(r));
  piv_.push_back(p);
  return true;
}

Mat Span::basis() const {
  Mat m(0, n_);
  m.cols = n_;
  for (const auto& r : rows_) m.append_row(r);
  return m;
}

std::string to_string(const Q& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

}  // namespace catmg
