#include "catmg/algebra.hpp"

#include <algorithm>
#include <numeric>

namespace catmg::cato {

FinAlgebra::FinAlgebra(int nweights, std::vector<AlgBasis> basis, std::vector<std::size_t> idem, const Product& product)
    : nw_(nweights), basis_(std::move(basis)), idem_(std::move(idem)) {
  const std::size_t n = basis_.size();
  table_.assign(n * n, {});
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (basis_[a].right == basis_[b].left) table_[a * n + b] = product(a, b);
  index();
}

void FinAlgebra::index() {
  const std::size_t w = static_cast<std::size_t>(nw_);
  blocks_.assign(w * w, {});
  left_.assign(w, {});
  right_.assign(w, {});
  lidx_.assign(basis_.size(), 0);
  ridx_.assign(basis_.size(), 0);
  bidx_.assign(basis_.size(), 0);
  for (std::size_t a = 0; a < basis_.size(); ++a) {
    const auto& b = basis_[a];
    auto& blk = blocks_[static_cast<std::size_t>(b.left * nw_ + b.right)];
    bidx_[a] = blk.size();
    blk.push_back(a);
    lidx_[a] = left_[static_cast<std::size_t>(b.left)].size();
    left_[static_cast<std::size_t>(b.left)].push_back(a);
    ridx_[a] = right_[static_cast<std::size_t>(b.right)].size();
    right_[static_cast<std::size_t>(b.right)].push_back(a);
  }
  arrows_.clear();
  std::vector<std::size_t> rad;
  try {
    rad = radical_basis();
  } catch (const Error&) {
    for (std::size_t a = 0; a < basis_.size(); ++a)
      if (std::find(idem_.begin(), idem_.end(), a) == idem_.end()) rad.push_back(a);
  }
  Span sp(basis_.size());
  for (std::size_t a : rad)
    for (std::size_t b : rad) {
      const auto& p = mul(a, b);
      if (p.empty()) continue;
      Vec v(basis_.size());
      for (const auto& [k, c] : p) v[k] = c;
      sp.add(v);
    }
  std::vector<std::size_t> order = rad;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return basis_[x].degree < basis_[y].degree; });
  for (std::size_t a : order) {
    Vec v(basis_.size());
    v[a] = 1;
    if (sp.add(v)) arrows_.push_back(a);
  }
  std::sort(arrows_.begin(), arrows_.end());

  const std::size_t n = basis_.size();
  std::vector<std::vector<std::size_t>> words;
  std::vector<Vec> vecs;
  std::vector<std::vector<std::size_t>> level;
  std::vector<Vec> level_vecs;
  for (std::size_t k = 0; k < arrows_.size(); ++k) {
    Vec v(n);
    v[arrows_[k]] = 1;
    level.push_back({k});
    level_vecs.push_back(v);
  }
  while (!level.empty()) {
    words.insert(words.end(), level.begin(), level.end());
    vecs.insert(vecs.end(), level_vecs.begin(), level_vecs.end());
    std::vector<std::vector<std::size_t>> next;
    std::vector<Vec> next_vecs;
    Span sp(n);
    for (std::size_t i = 0; i < level.size(); ++i) {
      int end = basis_[arrows_[level[i].back()]].right;
      for (std::size_t k = 0; k < arrows_.size(); ++k) {
        if (basis_[arrows_[k]].left != end) continue;
        Vec v(n);
        for (std::size_t j = 0; j < n; ++j)
          if (sgn(level_vecs[i][j]) != 0)
            for (const auto& [m, c] : mul(j, arrows_[k])) v[m] += level_vecs[i][j] * c;
        if (is_zero(v) || !sp.add(v)) continue;
        auto w = level[i];
        w.push_back(k);
        next.push_back(std::move(w));
        next_vecs.push_back(std::move(v));
      }
    }
    level = std::move(next);
    level_vecs = std::move(next_vecs);
  }
  paths_.assign(n, {});
  RowSolver solver(Mat::from_rows(vecs, n));
  for (std::size_t a = 0; a < n; ++a) {
    if (std::find(idem_.begin(), idem_.end(), a) != idem_.end()) {
      paths_[a] = {PathTerm{Q(1), {}}};
      continue;
    }
    Vec t(n);
    t[a] = 1;
    auto x = solver.solve(t);
    if (!x) throw Error(ErrorKind::NotInSpan, "basis element is not a combination of arrow words");
    for (std::size_t i = 0; i < x->size(); ++i)
      if (sgn((*x)[i]) != 0) paths_[a].push_back({(*x)[i], words[i]});
  }
}

Vec FinAlgebra::mul(const Vec& a, const Vec& b) const {
  Vec out(basis_.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (sgn(a[i]) == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (sgn(b[j]) == 0) continue;
      for (const auto& [k, c] : mul(i, j)) out[k] += a[i] * b[j] * c;
    }
  }
  return out;
}

FinAlgebra FinAlgebra::opposite() const {
  std::vector<AlgBasis> b = basis_;
  for (auto& x : b) std::swap(x.left, x.right);
  return FinAlgebra(nw_, std::move(b), idem_, [this](std::size_t a, std::size_t c) { return mul(c, a); });
}

std::vector<std::string> FinAlgebra::check_axioms() const {
  std::vector<std::string> bad;
  const std::size_t n = basis_.size();
  auto times = [&](const SparseVec& v, std::size_t c, bool right) {
    Vec out(n);
    for (const auto& [k, x] : v)
      for (const auto& [m, y] : right ? mul(k, c) : mul(c, k)) out[m] += x * y;
    return out;
  };
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b : with_left(basis_[a].right))
      for (std::size_t c : with_left(basis_[b].right)) {
        Vec l = times(mul(a, b), c, true);
        Vec r = times(mul(b, c), a, false);
        if (!(l == r)) {
          bad.push_back("associativity fails at (" + std::to_string(a) + "," + std::to_string(b) + "," +
                        std::to_string(c) + ")");
          if (bad.size() > 10) return bad;
        }
      }
  for (std::size_t a = 0; a < n; ++a) {
    SparseVec unit{{a, Q(1)}};
    if (mul(idem(basis_[a].left), a) != unit || mul(a, idem(basis_[a].right)) != unit)
      bad.push_back("unit fails at " + std::to_string(a));
  }
  return bad;
}

std::vector<std::size_t> FinAlgebra::radical_basis() const {
  std::vector<std::size_t> out;
  for (std::size_t a = 0; a < basis_.size(); ++a) {
    bool is_idem = std::find(idem_.begin(), idem_.end(), a) != idem_.end();
    if (basis_[a].degree < 0 || (basis_[a].degree == 0 && !is_idem))
      throw Error(ErrorKind::GradingAssertFailed, "degree-0 part is not spanned by the idempotents");
    if (!is_idem) out.push_back(a);
  }
  return out;
}

Mat FinAlgebra::trace_radical() const {
  const std::size_t n = basis_.size();
  Vec tr(n);
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t a = 0; a < n; ++a)
      for (const auto& [k, x] : mul(c, a))
        if (k == a) tr[c] += x;
  Mat T(n, n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (const auto& [k, x] : mul(a, b)) T(a, b) += x * tr[k];
  return kernel(T);
}

Mat FinAlgebra::power_span(const Mat& a, const Mat& b) const {
  std::vector<Vec> rows;
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t j = 0; j < b.rows; ++j) {
      Vec p = mul(a.row(i), b.row(j));
      if (!is_zero(p)) rows.push_back(std::move(p));
    }
  return row_basis(Mat::from_rows(rows, basis_.size()));
}

int FinAlgebra::nilpotency_index() const {
  auto rad = radical_basis();
  Mat R(rad.size(), basis_.size());
  for (std::size_t i = 0; i < rad.size(); ++i) R(i, rad[i]) = 1;
  Mat P = R;
  int k = 1;
  while (P.rows > 0) {
    if (k > static_cast<int>(basis_.size()) + 1) throw Error(ErrorKind::RadicalNotNilpotent, "powers do not vanish");
    P = power_span(P, R);
    ++k;
  }
  return k;
}

}  // namespace catmg::cato
