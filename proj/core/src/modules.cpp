#include "catmg/modules.hpp"

#include <algorithm>
#include <numeric>

namespace catmg::cato {

using catmg::is_zero;

namespace {

std::size_t uz(int x) { return static_cast<std::size_t>(x); }

Mat identity_rows(std::size_t n) { return Mat::identity(n); }

Vec segment(const Vec& v, std::size_t off, std::size_t n) {
  return Vec(v.begin() + static_cast<std::ptrdiff_t>(off), v.begin() + static_cast<std::ptrdiff_t>(off + n));
}

void put(Mat& m, std::size_t r0, std::size_t c0, const Mat& b) {
  for (std::size_t i = 0; i < b.rows; ++i)
    for (std::size_t j = 0; j < b.cols; ++j) m(r0 + i, c0 + j) = b(i, j);
}

// Coordinates of each row of `rows` in the basis `basis` (rows).
Mat coords_in(const Mat& basis, const Mat& rows) {
  RowSolver s(basis);
  Mat out(rows.rows, basis.rows);
  for (std::size_t i = 0; i < rows.rows; ++i) {
    auto x = s.solve(rows.row(i));
    if (!x) throw Error(ErrorKind::NotInSpan, "vector outside the expected subspace");
    for (std::size_t j = 0; j < basis.rows; ++j) out(i, j) = (*x)[j];
  }
  return out;
}

// Complement of the row space of U inside Q^n: (kept columns, projection n x q).
struct Complement {
  std::vector<std::size_t> keep;
  Mat proj;
};

Complement complement(const Mat& U, std::size_t n) {
  Mat e = U;
  e.cols = n;
  if (e.a.size() != e.rows * n) e.a.resize(e.rows * n);
  auto piv = rref(e);
  std::vector<int> prow(n, -1);
  for (std::size_t i = 0; i < piv.size(); ++i) prow[piv[i]] = static_cast<int>(i);
  Complement c;
  std::vector<std::size_t> qpos(n, 0);
  for (std::size_t j = 0; j < n; ++j)
    if (prow[j] < 0) {
      qpos[j] = c.keep.size();
      c.keep.push_back(j);
    }
  c.proj = Mat(n, c.keep.size());
  for (std::size_t j = 0; j < n; ++j) {
    if (prow[j] < 0) {
      c.proj(j, qpos[j]) = 1;
    } else {
      std::size_t i = static_cast<std::size_t>(prow[j]);
      for (std::size_t t = 0; t < c.keep.size(); ++t) c.proj(j, t) = -e(i, c.keep[t]);
    }
  }
  return c;
}

// Minimal generators of a submodule K of P: (weight, vector in weight coordinates).
std::vector<std::pair<int, Vec>> top_generators(const FinModule& P, const Sub& K) {
  const FinAlgebra& A = P.algebra();
  const int n = A.nweights();
  std::vector<Span> rad;
  for (int x = 0; x < n; ++x) rad.emplace_back(P.wdim(x));
  for (std::size_t k = 0; k < A.arrows().size(); ++k) {
    const auto& b = A[A.arrows()[k]];
    const Mat& src = K.rows[uz(b.left)];
    if (src.rows == 0) continue;
    Mat img = src * P.arrow(k);
    for (std::size_t i = 0; i < img.rows; ++i) rad[uz(b.right)].add(img.row(i));
  }
  std::vector<std::pair<int, Vec>> out;
  for (int x = 0; x < n; ++x) {
    const Mat& rows = K.rows[uz(x)];
    for (std::size_t i = 0; i < rows.rows; ++i) {
      Vec v = rows.row(i);
      if (rad[uz(x)].add(v)) out.emplace_back(x, v);
    }
  }
  return out;
}

Sub full_sub(const FinModule& M) {
  Sub s;
  for (int x = 0; x < M.algebra().nweights(); ++x) s.rows.push_back(identity_rows(M.wdim(x)));
  return s;
}

// Offsets of generator blocks inside weight w of sum_g P(x_g).
std::vector<std::size_t> gen_offsets(const FinAlgebra& A, const std::vector<int>& gens, int w) {
  std::vector<std::size_t> off(gens.size() + 1, 0);
  for (std::size_t g = 0; g < gens.size(); ++g) off[g + 1] = off[g] + A.block(gens[g], w).size();
  return off;
}

}  // namespace

// ---------------------------------------------------------------- FinModule

FinModule::FinModule(const FinAlgebra& A, std::vector<std::size_t> wdim, std::vector<Mat> arrows, std::string label)
    : A_(&A), wdim_(std::move(wdim)), arr_(std::move(arrows)), label_(std::move(label)) {
  off_.assign(wdim_.size(), 0);
  for (std::size_t x = 0; x < wdim_.size(); ++x) {
    off_[x] = dim_;
    dim_ += wdim_[x];
  }
  if (arr_.size() != A.arrows().size()) throw Error(ErrorKind::DimensionMismatch, "arrow count");
  for (std::size_t k = 0; k < arr_.size(); ++k) {
    const auto& b = A[A.arrows()[k]];
    if (arr_[k].rows != wdim_[uz(b.left)] || arr_[k].cols != wdim_[uz(b.right)])
      throw Error(ErrorKind::DimensionMismatch, "arrow matrix shape");
  }
}

const Mat& FinModule::act(std::size_t a) const {
  std::lock_guard<std::mutex> lock(*mu_);
  auto it = cache_->find(a);
  if (it != cache_->end()) return it->second;
  const auto& b = (*A_)[a];
  Mat out(wdim_[uz(b.left)], wdim_[uz(b.right)]);
  for (const auto& t : A_->paths(a)) {
    if (t.word.empty()) {
      out = out + t.coef * Mat::identity(wdim_[uz(b.left)]);
      continue;
    }
    Mat p = arr_[t.word[0]];
    for (std::size_t i = 1; i < t.word.size(); ++i) p = p * arr_[t.word[i]];
    out = out + t.coef * p;
  }
  return cache_->emplace(a, std::move(out)).first->second;
}

Mat FinModule::act(int l, int r, const Vec& c) const {
  Mat out(wdim_[uz(l)], wdim_[uz(r)]);
  const auto& blk = A_->block(l, r);
  for (std::size_t i = 0; i < blk.size(); ++i)
    if (sgn(c[i]) != 0) out = out + c[i] * act(blk[i]);
  return out;
}

std::vector<std::string> FinModule::check() const {
  std::vector<std::string> bad;
  const auto& arrows = A_->arrows();
  for (std::size_t a = 0; a < A_->dim(); ++a)
    for (std::size_t k = 0; k < arrows.size(); ++k) {
      if ((*A_)[a].right != (*A_)[arrows[k]].left) continue;
      Mat lhs = act(a) * arr_[k];
      Mat rhs(lhs.rows, lhs.cols);
      for (const auto& [c, x] : A_->mul(a, arrows[k])) rhs = rhs + x * act(c);
      if (!(lhs == rhs)) {
        bad.push_back("relation fails for basis " + std::to_string(a) + " times arrow " + std::to_string(k));
        if (bad.size() > 5) return bad;
      }
    }
  return bad;
}

// ---------------------------------------------------------------- maps

Vec ModMap::apply(const FinModule& M, const FinModule& N, const Vec& v) const {
  Vec out(N.dim());
  for (std::size_t x = 0; x < F.size(); ++x) {
    int w = static_cast<int>(x);
    Vec seg = segment(v, M.offset(w), M.wdim(w)) * F[x];
    for (std::size_t j = 0; j < seg.size(); ++j) out[N.offset(w) + j] = seg[j];
  }
  return out;
}

bool ModMap::is_zero() const {
  return std::all_of(F.begin(), F.end(), [](const Mat& m) { return m.is_zero(); });
}

ModMap zero_map(const FinModule& M, const FinModule& N) {
  ModMap f;
  for (int x = 0; x < M.algebra().nweights(); ++x) f.F.emplace_back(M.wdim(x), N.wdim(x));
  return f;
}

ModMap identity_map(const FinModule& M) {
  ModMap f;
  for (int x = 0; x < M.algebra().nweights(); ++x) f.F.push_back(Mat::identity(M.wdim(x)));
  return f;
}

ModMap compose(const ModMap& g, const ModMap& f) {
  ModMap h;
  for (std::size_t x = 0; x < f.F.size(); ++x) h.F.push_back(f.F[x] * g.F[x]);
  return h;
}

ModMap add(const ModMap& f, const ModMap& g) {
  ModMap h;
  for (std::size_t x = 0; x < f.F.size(); ++x) h.F.push_back(f.F[x] + g.F[x]);
  return h;
}

ModMap scale(const Q& c, const ModMap& f) {
  ModMap h;
  for (const auto& m : f.F) h.F.push_back(c * m);
  return h;
}

bool is_module_map(const FinModule& M, const FinModule& N, const ModMap& f) {
  const FinAlgebra& A = M.algebra();
  for (std::size_t k = 0; k < A.arrows().size(); ++k) {
    const auto& b = A[A.arrows()[k]];
    if (!(M.arrow(k) * f.F[uz(b.right)] == f.F[uz(b.left)] * N.arrow(k))) return false;
  }
  return true;
}

bool is_injective(const ModMap& f) {
  return std::all_of(f.F.begin(), f.F.end(), [](const Mat& m) { return catmg::rank(m) == m.rows; });
}

bool is_surjective(const ModMap& f, const FinModule&) {
  return std::all_of(f.F.begin(), f.F.end(), [](const Mat& m) { return catmg::rank(m) == m.cols; });
}

std::size_t rank(const ModMap& f) {
  std::size_t r = 0;
  for (const auto& m : f.F) r += catmg::rank(m);
  return r;
}

std::size_t Sub::dim() const {
  std::size_t d = 0;
  for (const auto& m : rows) d += m.rows;
  return d;
}

// ---------------------------------------------------------------- constructions

FinModule zero_module(const FinAlgebra& A) {
  std::vector<Mat> arr(A.arrows().size());
  return FinModule(A, std::vector<std::size_t>(uz(A.nweights()), 0), std::move(arr), "0");
}

FinModule proj_sum(const FinAlgebra& A, const std::vector<int>& gens) {
  const int n = A.nweights();
  std::vector<std::size_t> wdim(uz(n));
  std::vector<std::vector<std::size_t>> off(uz(n));
  for (int w = 0; w < n; ++w) {
    off[uz(w)] = gen_offsets(A, gens, w);
    wdim[uz(w)] = off[uz(w)].back();
  }
  std::vector<Mat> arr;
  for (std::size_t a : A.arrows()) {
    int l = A[a].left, r = A[a].right;
    Mat m(wdim[uz(l)], wdim[uz(r)]);
    for (std::size_t g = 0; g < gens.size(); ++g) {
      const auto& blk = A.block(gens[g], l);
      for (std::size_t i = 0; i < blk.size(); ++i)
        for (const auto& [c, x] : A.mul(blk[i], a)) m(off[uz(l)][g] + i, off[uz(r)][g] + A.block_index(c)) += x;
    }
    arr.push_back(std::move(m));
  }
  return FinModule(A, std::move(wdim), std::move(arr));
}

FinModule projective(const FinAlgebra& A, int x) {
  FinModule P = proj_sum(A, {x});
  P.set_label("P(" + std::to_string(x) + ")");
  return P;
}

FinModule simple(const FinAlgebra& A, int x) {
  std::vector<std::size_t> wdim(uz(A.nweights()), 0);
  wdim[uz(x)] = 1;
  std::vector<Mat> arr;
  for (std::size_t a : A.arrows()) arr.emplace_back(wdim[uz(A[a].left)], wdim[uz(A[a].right)]);
  return FinModule(A, std::move(wdim), std::move(arr), "L(" + std::to_string(x) + ")");
}

ModMap proj_map(const FinAlgebra& A, const std::vector<int>& src, const std::vector<int>& dst,
                const std::vector<std::vector<Vec>>& c) {
  ModMap f;
  for (int w = 0; w < A.nweights(); ++w) {
    auto so = gen_offsets(A, src, w);
    auto dof = gen_offsets(A, dst, w);
    Mat m(so.back(), dof.back());
    for (std::size_t h = 0; h < src.size(); ++h) {
      const auto& blk = A.block(src[h], w);
      for (std::size_t g = 0; g < dst.size(); ++g) {
        const auto& cblk = A.block(dst[g], src[h]);
        const Vec& cv = c[h][g];
        for (std::size_t j = 0; j < cblk.size(); ++j) {
          if (sgn(cv[j]) == 0) continue;
          for (std::size_t i = 0; i < blk.size(); ++i)
            for (const auto& [e, x] : A.mul(cblk[j], blk[i])) m(so[h] + i, dof[g] + A.block_index(e)) += cv[j] * x;
        }
      }
    }
    f.F.push_back(std::move(m));
  }
  return f;
}

FinModule direct_sum(const std::vector<const FinModule*>& parts) {
  if (parts.empty()) throw Error(ErrorKind::DimensionMismatch, "empty direct sum");
  const FinAlgebra& A = parts[0]->algebra();
  const int n = A.nweights();
  std::vector<std::size_t> wdim(uz(n), 0);
  for (const auto* p : parts)
    for (int x = 0; x < n; ++x) wdim[uz(x)] += p->wdim(x);
  std::vector<Mat> arr;
  for (std::size_t k = 0; k < A.arrows().size(); ++k) {
    int l = A[A.arrows()[k]].left, r = A[A.arrows()[k]].right;
    Mat m(wdim[uz(l)], wdim[uz(r)]);
    std::size_t ro = 0, co = 0;
    for (const auto* p : parts) {
      put(m, ro, co, p->arrow(k));
      ro += p->wdim(l);
      co += p->wdim(r);
    }
    arr.push_back(std::move(m));
  }
  return FinModule(A, std::move(wdim), std::move(arr));
}

ModMap summand_inclusion(const std::vector<const FinModule*>& parts, std::size_t i) {
  ModMap f;
  const int n = parts[0]->algebra().nweights();
  for (int x = 0; x < n; ++x) {
    std::size_t tot = 0, off = 0;
    for (std::size_t j = 0; j < parts.size(); ++j) {
      if (j == i) off = tot;
      tot += parts[j]->wdim(x);
    }
    Mat m(parts[i]->wdim(x), tot);
    for (std::size_t t = 0; t < m.rows; ++t) m(t, off + t) = 1;
    f.F.push_back(std::move(m));
  }
  return f;
}

ModMap summand_projection(const std::vector<const FinModule*>& parts, std::size_t i) {
  ModMap f = summand_inclusion(parts, i);
  for (auto& m : f.F) m = m.transpose();
  return f;
}

// ---------------------------------------------------------------- submodules

Sub closure(const FinModule& M, const Sub& gens) {
  const FinAlgebra& A = M.algebra();
  const int n = A.nweights();
  std::vector<Span> sp;
  for (int x = 0; x < n; ++x) sp.emplace_back(M.wdim(x));
  std::vector<std::pair<int, Vec>> queue;
  for (int x = 0; x < n; ++x)
    for (std::size_t i = 0; i < gens.rows[uz(x)].rows; ++i) {
      Vec v = gens.rows[uz(x)].row(i);
      if (sp[uz(x)].add(v)) queue.emplace_back(x, std::move(v));
    }
  while (!queue.empty()) {
    auto [x, v] = std::move(queue.back());
    queue.pop_back();
    for (std::size_t k = 0; k < A.arrows().size(); ++k) {
      const auto& b = A[A.arrows()[k]];
      if (b.left != x) continue;
      Vec u = v * M.arrow(k);
      if (is_zero(u)) continue;
      if (sp[uz(b.right)].add(u)) queue.emplace_back(b.right, std::move(u));
    }
  }
  Sub s;
  for (int x = 0; x < n; ++x) {
    Mat b = sp[uz(x)].basis();
    b.cols = M.wdim(x);
    if (b.a.size() != b.rows * b.cols) b.a.resize(b.rows * b.cols);
    s.rows.push_back(std::move(b));
  }
  return s;
}

FinModule submodule(const FinModule& M, const Sub& U, ModMap* incl) {
  const FinAlgebra& A = M.algebra();
  const int n = A.nweights();
  std::vector<Mat> B;
  std::vector<std::size_t> wdim;
  for (int x = 0; x < n; ++x) {
    Mat b = row_basis(U.rows[uz(x)]);
    b.cols = M.wdim(x);
    b.a.resize(b.rows * b.cols);
    wdim.push_back(b.rows);
    B.push_back(std::move(b));
  }
  std::vector<Mat> arr;
  for (std::size_t k = 0; k < A.arrows().size(); ++k) {
    const auto& b = A[A.arrows()[k]];
    Mat img = B[uz(b.left)] * M.arrow(k);
    arr.push_back(coords_in(B[uz(b.right)], img));
  }
  if (incl) incl->F = B;
  return FinModule(A, std::move(wdim), std::move(arr));
}

FinModule quotient(const FinModule& M, const Sub& U, ModMap* proj, ModMap* lift) {
  const FinAlgebra& A = M.algebra();
  const int n = A.nweights();
  std::vector<Complement> cs;
  std::vector<std::size_t> wdim;
  for (int x = 0; x < n; ++x) {
    cs.push_back(complement(U.rows[uz(x)], M.wdim(x)));
    wdim.push_back(cs.back().keep.size());
  }
  std::vector<Mat> arr;
  for (std::size_t k = 0; k < A.arrows().size(); ++k) {
    const auto& b = A[A.arrows()[k]];
    const auto& cl = cs[uz(b.left)];
    Mat m(cl.keep.size(), M.wdim(b.right));
    for (std::size_t i = 0; i < cl.keep.size(); ++i)
      for (std::size_t j = 0; j < m.cols; ++j) m(i, j) = M.arrow(k)(cl.keep[i], j);
    arr.push_back(m * cs[uz(b.right)].proj);
  }
  if (proj) {
    proj->F.clear();
    for (auto& c : cs) proj->F.push_back(c.proj);
  }
  if (lift) {
    lift->F.clear();
    for (int x = 0; x < n; ++x) {
      Mat m(cs[uz(x)].keep.size(), M.wdim(x));
      for (std::size_t i = 0; i < m.rows; ++i) m(i, cs[uz(x)].keep[i]) = 1;
      lift->F.push_back(std::move(m));
    }
  }
  return FinModule(A, std::move(wdim), std::move(arr));
}

Sub kernel(const FinModule&, const ModMap& f) {
  Sub s;
  for (const auto& m : f.F) s.rows.push_back(left_kernel(m));
  return s;
}

Sub image(const FinModule&, const ModMap& f) {
  Sub s;
  for (const auto& m : f.F) s.rows.push_back(row_basis(m));
  return s;
}

FinModule kernel_module(const FinModule& M, const ModMap& f, ModMap* incl) {
  return submodule(M, kernel(M, f), incl);
}

FinModule cokernel_module(const FinModule& N, const ModMap& f, ModMap* proj, ModMap* lift) {
  return quotient(N, image(N, f), proj, lift);
}

Sub radical(const FinModule& M) {
  const FinAlgebra& A = M.algebra();
  const int n = A.nweights();
  std::vector<std::vector<Vec>> rows(uz(n));
  for (std::size_t k = 0; k < A.arrows().size(); ++k) {
    int r = A[A.arrows()[k]].right;
    const Mat& m = M.arrow(k);
    for (std::size_t i = 0; i < m.rows; ++i) rows[uz(r)].push_back(m.row(i));
  }
  Sub s;
  for (int x = 0; x < n; ++x) s.rows.push_back(row_basis(Mat::from_rows(rows[uz(x)], M.wdim(x))));
  return s;
}

std::vector<std::size_t> top_dims(const FinModule& M) {
  Sub r = radical(M);
  std::vector<std::size_t> out;
  for (int x = 0; x < M.algebra().nweights(); ++x) out.push_back(M.wdim(x) - r.rows[uz(x)].rows);
  return out;
}

Sub trace(const FinModule& M, const std::vector<int>& xs) {
  Sub g;
  for (int x = 0; x < M.algebra().nweights(); ++x) {
    bool in = std::find(xs.begin(), xs.end(), x) != xs.end();
    g.rows.push_back(in ? identity_rows(M.wdim(x)) : Mat(0, M.wdim(x)));
  }
  return closure(M, g);
}

// ---------------------------------------------------------------- presentations

Presentation::Presentation(const FinModule& M, bool with_relations) : M_(M) {
  const FinAlgebra& A = M.algebra();
  const int n = A.nweights();
  for (auto& [x, v] : top_generators(M, full_sub(M))) {
    gw_.push_back(x);
    gv_.push_back(std::move(v));
  }
  Sub K;
  for (int w = 0; w < n; ++w) {
    auto off = gen_offsets(A, gw_, w);
    Mat C(off.back(), M.wdim(w));
    std::vector<std::pair<std::size_t, std::size_t>> cols;
    for (std::size_t g = 0; g < gw_.size(); ++g) {
      const auto& blk = A.block(gw_[g], w);
      for (std::size_t i = 0; i < blk.size(); ++i) {
        Vec r = gv_[g] * M_.act(blk[i]);
        for (std::size_t j = 0; j < r.size(); ++j) C(off[g] + i, j) = r[j];
        cols.emplace_back(g, i);
      }
    }
    solve_.emplace_back(C);
    if (solve_.back().rank() != M.wdim(w)) throw Error(ErrorKind::NotInSpan, "cover is not surjective");
    cols_.push_back(std::move(cols));
    if (with_relations) K.rows.push_back(left_kernel(C));
  }
  if (!with_relations) return;
  FinModule P0 = proj_sum(A, gw_);
  for (auto& [w, v] : top_generators(P0, K)) {
    rw_.push_back(w);
    auto off = gen_offsets(A, gw_, w);
    std::vector<Vec> segs;
    for (std::size_t g = 0; g < gw_.size(); ++g) segs.push_back(segment(v, off[g], off[g + 1] - off[g]));
    rc_.push_back(std::move(segs));
  }
}

std::vector<Vec> Presentation::preimage(int w, const Vec& m) const {
  auto x = solve_[uz(w)].solve(m);
  if (!x) throw Error(ErrorKind::NotInSpan, "no preimage under the cover");
  const FinAlgebra& A = M_.algebra();
  std::vector<Vec> segs;
  for (std::size_t g = 0; g < gw_.size(); ++g) segs.emplace_back(A.block(gw_[g], w).size());
  const auto& cols = cols_[uz(w)];
  for (std::size_t i = 0; i < cols.size(); ++i) segs[cols[i].first][cols[i].second] = (*x)[i];
  return segs;
}

// ---------------------------------------------------------------- Hom and iso

std::vector<ModMap> hom_basis(const FinModule& M, const FinModule& N) {
  const FinAlgebra& A = M.algebra();
  const int n = A.nweights();
  if (M.dim() == 0 || N.dim() == 0) return {};
  Presentation P(M);
  // unknowns: n_g in N e_{x_g}
  std::vector<std::size_t> uoff(P.ngens() + 1, 0);
  for (std::size_t g = 0; g < P.ngens(); ++g) uoff[g + 1] = uoff[g] + N.wdim(P.gen_weight(g));
  std::vector<std::size_t> eoff(P.nrels() + 1, 0);
  for (std::size_t h = 0; h < P.nrels(); ++h) eoff[h + 1] = eoff[h] + N.wdim(P.rel_weight(h));
  Mat R(uoff.back(), eoff.back());
  for (std::size_t h = 0; h < P.nrels(); ++h)
    for (std::size_t g = 0; g < P.ngens(); ++g) {
      const Vec& c = P.rel(h, g);
      if (is_zero(c)) continue;
      put(R, uoff[g], eoff[h], N.act(P.gen_weight(g), P.rel_weight(h), c));
    }
  Mat sol = left_kernel(R);
  // reconstruct weight matrices: basis vector of M e_w -> sum_g n_g act(b_g)
  std::vector<std::vector<std::vector<Vec>>> pre(uz(n));
  for (int w = 0; w < n; ++w)
    for (std::size_t i = 0; i < M.wdim(w); ++i) {
      Vec e(M.wdim(w));
      e[i] = 1;
      pre[uz(w)].push_back(P.preimage(w, e));
    }
  std::vector<ModMap> out;
  for (std::size_t s = 0; s < sol.rows; ++s) {
    Vec t = sol.row(s);
    ModMap f;
    for (int w = 0; w < n; ++w) {
      Mat F(M.wdim(w), N.wdim(w));
      for (std::size_t i = 0; i < M.wdim(w); ++i) {
        Vec row(N.wdim(w));
        for (std::size_t g = 0; g < P.ngens(); ++g) {
          const Vec& b = pre[uz(w)][i][g];
          if (is_zero(b)) continue;
          Vec ng = segment(t, uoff[g], uoff[g + 1] - uoff[g]);
          if (is_zero(ng)) continue;
          axpy(row, Q(1), ng * N.act(P.gen_weight(g), w, b));
        }
        for (std::size_t j = 0; j < row.size(); ++j) F(i, j) = row[j];
      }
      f.F.push_back(std::move(F));
    }
    out.push_back(std::move(f));
  }
  return out;
}

std::size_t hom_dim(const FinModule& M, const FinModule& N) { return hom_basis(M, N).size(); }

std::string to_string(IsoVerdict v) {
  switch (v) {
    case IsoVerdict::Isomorphic: return "isomorphic";
    case IsoVerdict::NotIsomorphic: return "not_isomorphic";
    default: return "indeterminate";
  }
}

namespace {

bool invertible(const ModMap& f) {
  for (const auto& m : f.F) {
    if (m.rows != m.cols) return false;
    if (m.rows > 0 && sgn(determinant(m)) == 0) return false;
  }
  return true;
}

ModMap combo(const std::vector<ModMap>& H, const std::vector<Q>& c) {
  ModMap f = scale(c[0], H[0]);
  for (std::size_t i = 1; i < H.size(); ++i)
    if (sgn(c[i]) != 0) f = add(f, scale(c[i], H[i]));
  return f;
}

}  // namespace

IsoResult iso_test(const FinModule& M, const FinModule& N) {
  IsoResult res;
  if (M.wdims() != N.wdims()) {
    res.verdict = IsoVerdict::NotIsomorphic;
    res.witness = "weight dimensions differ";
    return res;
  }
  if (M.dim() == 0) {
    res.verdict = IsoVerdict::Isomorphic;
    res.witness = "both zero";
    res.map = zero_map(M, N);
    return res;
  }
  if (top_dims(M) != top_dims(N)) {
    res.verdict = IsoVerdict::NotIsomorphic;
    res.witness = "top dimensions differ";
    return res;
  }
  auto H = hom_basis(M, N);
  if (H.empty()) {
    res.verdict = IsoVerdict::NotIsomorphic;
    res.witness = "Hom(M, N) = 0";
    return res;
  }
  auto found = [&](ModMap f, const std::string& how) {
    res.verdict = IsoVerdict::Isomorphic;
    res.witness = how;
    res.map = std::move(f);
    return res;
  };
  const std::size_t k = H.size();
  for (std::size_t i = 0; i < k; ++i)
    if (invertible(H[i])) return found(H[i], "basis element");
  if (k <= 40) {
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = i + 1; j < k; ++j) {
        ModMap f = add(H[i], H[j]);
        if (invertible(f)) return found(f, "sum of two basis elements");
      }
  }
  if (k <= 20) {
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = i + 1; j < k; ++j)
        for (std::size_t l = j + 1; l < k; ++l) {
          ModMap f = add(add(H[i], H[j]), H[l]);
          if (invertible(f)) return found(f, "sum of three basis elements");
        }
  }
  for (int t = 1; t <= 8; ++t) {
    std::vector<Q> c(k);
    for (std::size_t i = 0; i < k; ++i) c[i] = Q(static_cast<long>((i + 1) * (i + 1) * t % 97 + 1));
    ModMap f = combo(H, c);
    if (invertible(f)) return found(f, "coefficient sweep");
  }
  res.verdict = IsoVerdict::Indeterminate;
  res.witness = "no invertible element found";
  return res;
}

// ---------------------------------------------------------------- resolutions

Resolution resolve(const FinModule& M, std::size_t max_len) {
  const FinAlgebra& A = M.algebra();
  const int n = A.nweights();
  Resolution R;
  std::vector<int> g0;
  for (auto& [x, v] : top_generators(M, full_sub(M))) {
    g0.push_back(x);
    R.augmentation.push_back(std::move(v));
  }
  Sub K;
  for (int w = 0; w < n; ++w) {
    auto off = gen_offsets(A, g0, w);
    Mat C(off.back(), M.wdim(w));
    for (std::size_t g = 0; g < g0.size(); ++g) {
      const auto& blk = A.block(g0[g], w);
      for (std::size_t i = 0; i < blk.size(); ++i) {
        Vec r = R.augmentation[g] * M.act(blk[i]);
        for (std::size_t j = 0; j < r.size(); ++j) C(off[g] + i, j) = r[j];
      }
    }
    K.rows.push_back(left_kernel(C));
  }
  R.gens.push_back(g0);
  R.c.emplace_back();
  FinModule P = proj_sum(A, g0);
  while (K.dim() > 0) {
    if (R.gens.size() >= max_len) return R;
    std::vector<int> gi;
    std::vector<std::vector<Vec>> ci;
    const auto& prev = R.gens.back();
    for (auto& [w, v] : top_generators(P, K)) {
      gi.push_back(w);
      auto off = gen_offsets(A, prev, w);
      std::vector<Vec> segs;
      for (std::size_t g = 0; g < prev.size(); ++g) segs.push_back(segment(v, off[g], off[g + 1] - off[g]));
      ci.push_back(std::move(segs));
    }
    ModMap d = proj_map(A, gi, prev, ci);
    FinModule Pn = proj_sum(A, gi);
    K = kernel(Pn, d);
    P = std::move(Pn);
    R.gens.push_back(std::move(gi));
    R.c.push_back(std::move(ci));
  }
  R.complete = true;
  return R;
}

ChainComplex complex_of(const FinModule& M, const Resolution& R) {
  const FinAlgebra& A = M.algebra();
  ChainComplex C;
  C.lo = 0;
  for (std::size_t i = 0; i < R.length(); ++i) {
    C.terms.push_back(proj_sum(A, R.gens[i]));
    C.d.push_back(i == 0 ? ModMap{} : proj_map(A, R.gens[i], R.gens[i - 1], R.c[i]));
  }
  return C;
}

std::vector<std::string> ChainComplex::check() const {
  std::vector<std::string> bad;
  for (std::size_t i = 1; i < terms.size(); ++i) {
    if (!is_module_map(terms[i], terms[i - 1], d[i])) bad.push_back("d is not a module map at " + std::to_string(lo + static_cast<int>(i)));
    if (i + 1 < terms.size() && !compose(d[i], d[i + 1]).is_zero())
      bad.push_back("d∘d != 0 at " + std::to_string(lo + static_cast<int>(i)));
  }
  return bad;
}

std::vector<std::size_t> ChainComplex::homology_dims(int n) const {
  if (terms.empty()) return {};
  const int nw = terms[0].algebra().nweights();
  std::vector<std::size_t> out(uz(nw), 0);
  if (n < lo || n > hi()) return out;
  std::size_t i = uz(n - lo);
  for (int x = 0; x < nw; ++x) {
    std::size_t dim = terms[i].wdim(x);
    std::size_t rk_out = i > 0 ? catmg::rank(d[i].F[uz(x)]) : 0;
    std::size_t rk_in = i + 1 < terms.size() ? catmg::rank(d[i + 1].F[uz(x)]) : 0;
    out[uz(x)] = dim - rk_out - rk_in;
  }
  return out;
}

std::size_t ChainComplex::homology_dim(int n) const {
  auto v = homology_dims(n);
  return std::accumulate(v.begin(), v.end(), std::size_t{0});
}

FinModule ChainComplex::homology(int n) const {
  if (terms.empty()) throw Error(ErrorKind::DimensionMismatch, "empty complex");
  const FinAlgebra& A = terms[0].algebra();
  if (n < lo || n > hi()) return zero_module(A);
  std::size_t i = uz(n - lo);
  ModMap incl;
  FinModule Z = i > 0 ? kernel_module(terms[i], d[i], &incl) : terms[i];
  if (i == 0) incl = identity_map(terms[i]);
  if (i + 1 >= terms.size()) return Z;
  Sub B;
  for (int x = 0; x < A.nweights(); ++x) {
    Mat img = row_basis(d[i + 1].F[uz(x)]);
    B.rows.push_back(coords_in(incl.F[uz(x)], img));
  }
  return quotient(Z, B);
}

// ---------------------------------------------------------------- bimodules

Bimodule::Bimodule(const FinAlgebra& A, std::vector<std::vector<std::size_t>> d, std::vector<std::vector<Mat>> rho,
                   std::vector<std::vector<Mat>> lam, std::string label)
    : A_(&A), d_(std::move(d)), rho_(std::move(rho)), lam_(std::move(lam)), label_(std::move(label)) {}

std::size_t Bimodule::dim() const {
  std::size_t s = 0;
  for (const auto& r : d_)
    for (auto v : r) s += v;
  return s;
}

const Mat& Bimodule::left(std::size_t a, int w) const {
  std::lock_guard<std::mutex> lock(*mu_);
  auto key = std::make_pair(a, w);
  auto it = lcache_->find(key);
  if (it != lcache_->end()) return it->second;
  const auto& b = (*A_)[a];
  Mat out(d(b.right, w), d(b.left, w));
  for (const auto& t : A_->paths(a)) {
    if (t.word.empty()) {
      out = out + t.coef * Mat::identity(d(b.left, w));
      continue;
    }
    Mat p = lam_[t.word.back()][uz(w)];
    for (std::size_t i = t.word.size() - 1; i-- > 0;) p = p * lam_[t.word[i]][uz(w)];
    out = out + t.coef * p;
  }
  return lcache_->emplace(key, std::move(out)).first->second;
}

Mat Bimodule::left(int l, int r, const Vec& c, int w) const {
  Mat out(d(r, w), d(l, w));
  const auto& blk = A_->block(l, r);
  for (std::size_t i = 0; i < blk.size(); ++i)
    if (sgn(c[i]) != 0) out = out + c[i] * left(blk[i], w);
  return out;
}

const Mat& Bimodule::right(std::size_t a, int u) const {
  std::lock_guard<std::mutex> lock(*mu_);
  auto key = std::make_pair(a, u);
  auto it = rcache_->find(key);
  if (it != rcache_->end()) return it->second;
  const auto& b = (*A_)[a];
  Mat out(d(u, b.left), d(u, b.right));
  for (const auto& t : A_->paths(a)) {
    if (t.word.empty()) {
      out = out + t.coef * Mat::identity(d(u, b.left));
      continue;
    }
    Mat p = rho_[t.word[0]][uz(u)];
    for (std::size_t i = 1; i < t.word.size(); ++i) p = p * rho_[t.word[i]][uz(u)];
    out = out + t.coef * p;
  }
  return rcache_->emplace(key, std::move(out)).first->second;
}

FinModule Bimodule::left_part(int u) const {
  std::vector<Mat> arr;
  for (std::size_t k = 0; k < A_->arrows().size(); ++k) arr.push_back(rho_[k][uz(u)]);
  return FinModule(*A_, d_[uz(u)], std::move(arr), label_ + "[" + std::to_string(u) + "]");
}

FinModule Bimodule::right_module() const {
  const int n = A_->nweights();
  std::vector<std::size_t> wdim(uz(n), 0);
  for (int w = 0; w < n; ++w)
    for (int u = 0; u < n; ++u) wdim[uz(w)] += d(u, w);
  std::vector<Mat> arr;
  for (std::size_t k = 0; k < A_->arrows().size(); ++k) {
    int l = (*A_)[A_->arrows()[k]].left, r = (*A_)[A_->arrows()[k]].right;
    Mat m(wdim[uz(l)], wdim[uz(r)]);
    std::size_t ro = 0, co = 0;
    for (int u = 0; u < n; ++u) {
      put(m, ro, co, rho_[k][uz(u)]);
      ro += d(u, l);
      co += d(u, r);
    }
    arr.push_back(std::move(m));
  }
  return FinModule(*A_, std::move(wdim), std::move(arr), label_);
}

Bimodule Bimodule::opposite(const FinAlgebra& Aop) const {
  const std::size_t n = d_.size();
  std::vector<std::vector<std::size_t>> dd(n, std::vector<std::size_t>(n));
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t w = 0; w < n; ++w) dd[w][u] = d_[u][w];
  if (Aop.arrows() != A_->arrows()) throw Error(ErrorKind::DimensionMismatch, "opposite algebra arrows differ");
  Bimodule X(Aop, std::move(dd), lam_, rho_, label_ + "^op");
  for (const auto& v : vops) {
    std::vector<Mat> t(n * n);
    for (std::size_t u = 0; u < n; ++u)
      for (std::size_t w = 0; w < n; ++w) t[w * n + u] = v[u * n + w];
    X.vops.push_back(std::move(t));
  }
  return X;
}

std::vector<std::string> Bimodule::check(bool left_relations) const {
  std::vector<std::string> bad;
  const auto& arrows = A_->arrows();
  for (std::size_t k = 0; k < arrows.size(); ++k)
    for (std::size_t m = 0; m < arrows.size(); ++m) {
      const auto& a = (*A_)[arrows[k]];
      const auto& b = (*A_)[arrows[m]];
      Mat l = lam_[m][uz(a.left)] * rho_[k][uz(b.left)];
      Mat r = rho_[k][uz(b.right)] * lam_[m][uz(a.right)];
      if (!(l == r)) bad.push_back("left and right actions do not commute");
    }
  for (int u = 0; u < A_->nweights(); ++u)
    for (auto& s : left_part(u).check()) bad.push_back("right: " + s);
  for (std::size_t a = 0; left_relations && a < A_->dim(); ++a)
    for (std::size_t k = 0; k < arrows.size(); ++k) {
      if ((*A_)[a].right != (*A_)[arrows[k]].left) continue;
      for (int w = 0; w < A_->nweights(); ++w) {
        Mat lhs = lam_[k][uz(w)] * left(a, w);
        Mat rhs(lhs.rows, lhs.cols);
        for (const auto& [c, x] : A_->mul(a, arrows[k])) rhs = rhs + x * left(c, w);
        if (!(lhs == rhs)) bad.push_back("left relation fails for basis " + std::to_string(a));
      }
    }
  if (bad.size() > 10) bad.resize(10);
  return bad;
}

bool is_bimodule_map(const Bimodule& X, const Bimodule& Y, const BiMap& f) {
  const FinAlgebra& A = X.algebra();
  const int n = A.nweights();
  for (std::size_t k = 0; k < A.arrows().size(); ++k) {
    const auto& a = A[A.arrows()[k]];
    for (int u = 0; u < n; ++u)
      if (!(f.B[uz(u)][uz(a.left)] * Y.rho(k, u) == X.rho(k, u) * f.B[uz(u)][uz(a.right)])) return false;
    for (int w = 0; w < n; ++w)
      if (!(X.lam(k, w) * f.B[uz(a.left)][uz(w)] == f.B[uz(a.right)][uz(w)] * Y.lam(k, w))) return false;
  }
  return true;
}

BiMap compose(const BiMap& g, const BiMap& f) {
  BiMap h;
  h.B.resize(f.B.size());
  for (std::size_t u = 0; u < f.B.size(); ++u)
    for (std::size_t w = 0; w < f.B[u].size(); ++w) h.B[u].push_back(f.B[u][w] * g.B[u][w]);
  return h;
}

bool is_zero(const BiMap& f) {
  for (const auto& r : f.B)
    for (const auto& m : r)
      if (!m.is_zero()) return false;
  return true;
}

Bimodule regular_bimodule(const FinAlgebra& A) {
  const int n = A.nweights();
  std::vector<std::vector<std::size_t>> d(uz(n), std::vector<std::size_t>(uz(n)));
  for (int u = 0; u < n; ++u)
    for (int w = 0; w < n; ++w) d[uz(u)][uz(w)] = A.block(u, w).size();
  std::vector<std::vector<Mat>> rho, lam;
  for (std::size_t a : A.arrows()) {
    int l = A[a].left, r = A[a].right;
    std::vector<Mat> ro, la;
    for (int u = 0; u < n; ++u) {
      Mat m(d[uz(u)][uz(l)], d[uz(u)][uz(r)]);
      const auto& blk = A.block(u, l);
      for (std::size_t i = 0; i < blk.size(); ++i)
        for (const auto& [c, x] : A.mul(blk[i], a)) m(i, A.block_index(c)) += x;
      ro.push_back(std::move(m));
    }
    for (int w = 0; w < n; ++w) {
      Mat m(d[uz(r)][uz(w)], d[uz(l)][uz(w)]);
      const auto& blk = A.block(r, w);
      for (std::size_t i = 0; i < blk.size(); ++i)
        for (const auto& [c, x] : A.mul(a, blk[i])) m(i, A.block_index(c)) += x;
      la.push_back(std::move(m));
    }
    rho.push_back(std::move(ro));
    lam.push_back(std::move(la));
  }
  return Bimodule(A, std::move(d), std::move(rho), std::move(lam), "A");
}

Bimodule sub_bimodule(const Bimodule& X, const std::vector<std::vector<Mat>>& U, BiMap* incl) {
  const FinAlgebra& A = X.algebra();
  const int n = A.nweights();
  std::vector<std::vector<Mat>> B(uz(n));
  std::vector<std::vector<std::size_t>> d(uz(n), std::vector<std::size_t>(uz(n)));
  for (int u = 0; u < n; ++u)
    for (int w = 0; w < n; ++w) {
      Mat b = row_basis(U[uz(u)][uz(w)]);
      b.cols = X.d(u, w);
      b.a.resize(b.rows * b.cols);
      d[uz(u)][uz(w)] = b.rows;
      B[uz(u)].push_back(std::move(b));
    }
  std::vector<std::vector<Mat>> rho, lam;
  for (std::size_t k = 0; k < A.arrows().size(); ++k) {
    const auto& a = A[A.arrows()[k]];
    std::vector<Mat> ro, la;
    for (int u = 0; u < n; ++u)
      ro.push_back(coords_in(B[uz(u)][uz(a.right)], B[uz(u)][uz(a.left)] * X.rho(k, u)));
    for (int w = 0; w < n; ++w)
      la.push_back(coords_in(B[uz(a.left)][uz(w)], B[uz(a.right)][uz(w)] * X.lam(k, w)));
    rho.push_back(std::move(ro));
    lam.push_back(std::move(la));
  }
  Bimodule Y(A, std::move(d), std::move(rho), std::move(lam), X.label() + "_sub");
  for (const auto& v : X.vops) {
    std::vector<Mat> t;
    for (int u = 0; u < n; ++u)
      for (int w = 0; w < n; ++w) {
        const Mat& b = B[uz(u)][uz(w)];
        t.push_back(coords_in(b, b * v[uz(u * n + w)]));
      }
    Y.vops.push_back(std::move(t));
  }
  if (incl) incl->B = B;
  return Y;
}

Bimodule quotient_bimodule(const Bimodule& X, const std::vector<std::vector<Mat>>& U, BiMap* proj) {
  const FinAlgebra& A = X.algebra();
  const int n = A.nweights();
  std::vector<std::vector<Complement>> cs(uz(n));
  std::vector<std::vector<std::size_t>> d(uz(n), std::vector<std::size_t>(uz(n)));
  for (int u = 0; u < n; ++u)
    for (int w = 0; w < n; ++w) {
      cs[uz(u)].push_back(complement(U[uz(u)][uz(w)], X.d(u, w)));
      d[uz(u)][uz(w)] = cs[uz(u)].back().keep.size();
    }
  auto restrict_rows = [](const Mat& m, const std::vector<std::size_t>& keep) {
    Mat r(keep.size(), m.cols);
    for (std::size_t i = 0; i < keep.size(); ++i)
      for (std::size_t j = 0; j < m.cols; ++j) r(i, j) = m(keep[i], j);
    return r;
  };
  std::vector<std::vector<Mat>> rho, lam;
  for (std::size_t k = 0; k < A.arrows().size(); ++k) {
    const auto& a = A[A.arrows()[k]];
    std::vector<Mat> ro, la;
    for (int u = 0; u < n; ++u)
      ro.push_back(restrict_rows(X.rho(k, u), cs[uz(u)][uz(a.left)].keep) * cs[uz(u)][uz(a.right)].proj);
    for (int w = 0; w < n; ++w)
      la.push_back(restrict_rows(X.lam(k, w), cs[uz(a.right)][uz(w)].keep) * cs[uz(a.left)][uz(w)].proj);
    rho.push_back(std::move(ro));
    lam.push_back(std::move(la));
  }
  Bimodule Y(A, std::move(d), std::move(rho), std::move(lam), X.label() + "_quot");
  for (const auto& v : X.vops) {
    std::vector<Mat> t;
    for (int u = 0; u < n; ++u)
      for (int w = 0; w < n; ++w) {
        const auto& c = cs[uz(u)][uz(w)];
        t.push_back(restrict_rows(v[uz(u * n + w)], c.keep) * c.proj);
      }
    Y.vops.push_back(std::move(t));
  }
  if (proj) {
    proj->B.assign(uz(n), {});
    for (int u = 0; u < n; ++u)
      for (int w = 0; w < n; ++w) proj->B[uz(u)].push_back(cs[uz(u)][uz(w)].proj);
  }
  return Y;
}

std::vector<std::vector<Mat>> idempotent_ideal(const FinAlgebra& A, const std::vector<int>& xs) {
  const int n = A.nweights();
  std::vector<std::vector<Mat>> U(uz(n));
  for (int u = 0; u < n; ++u)
    for (int w = 0; w < n; ++w) {
      std::size_t dim = A.block(u, w).size();
      Span sp(dim);
      for (int x : xs)
        for (std::size_t a : A.block(u, x))
          for (std::size_t b : A.block(x, w)) {
            Vec v(dim);
            for (const auto& [c, q] : A.mul(a, b)) v[A.block_index(c)] += q;
            if (!is_zero(v)) sp.add(v);
          }
      Mat m = sp.basis();
      m.cols = dim;
      m.a.resize(m.rows * dim);
      U[uz(u)].push_back(std::move(m));
    }
  return U;
}

BiPresentation::BiPresentation(const Bimodule& X) : X_(X) {
  for (int u = 0; u < X.algebra().nweights(); ++u) parts_.push_back(X.left_part(u));
  for (const auto& p : parts_) pres_.emplace_back(p);
}

// ---------------------------------------------------------------- Hom(X, M) and M ⊗ X

namespace {

std::vector<std::size_t> tuple_offsets(const Presentation& P, const FinModule& M) {
  std::vector<std::size_t> off(P.ngens() + 1, 0);
  for (std::size_t g = 0; g < P.ngens(); ++g) off[g + 1] = off[g] + M.wdim(P.gen_weight(g));
  return off;
}

// Linear map on tuple spaces induced by sending generator h of X_u to psi(h) in Y_u:
// (f)(ξ_h) = sum_g f(η_g) b_g.
Mat induced_tuple_map(const Presentation& PX, const Presentation& PY, const FinModule& M,
                      const std::function<Vec(std::size_t)>& image_of) {
  auto ox = tuple_offsets(PX, M);
  auto oy = tuple_offsets(PY, M);
  Mat L(oy.back(), ox.back());
  for (std::size_t h = 0; h < PX.ngens(); ++h) {
    int wh = PX.gen_weight(h);
    Vec img = image_of(h);
    if (is_zero(img)) continue;
    auto b = PY.preimage(wh, img);
    for (std::size_t g = 0; g < PY.ngens(); ++g) {
      if (is_zero(b[g])) continue;
      put(L, oy[g], ox[h], M.act(PY.gen_weight(g), wh, b[g]));
    }
  }
  return L;
}

}  // namespace

HomBi hom_bimodule(const BiPresentation& BP, const FinModule& M) {
  const Bimodule& X = BP.bimodule();
  const FinAlgebra& A = X.algebra();
  const int n = A.nweights();
  HomBi H;
  std::vector<std::size_t> wdim;
  for (int u = 0; u < n; ++u) {
    const Presentation& P = BP.pres(u);
    auto uoff = tuple_offsets(P, M);
    std::vector<std::size_t> eoff(P.nrels() + 1, 0);
    for (std::size_t h = 0; h < P.nrels(); ++h) eoff[h + 1] = eoff[h] + M.wdim(P.rel_weight(h));
    Mat R(uoff.back(), eoff.back());
    for (std::size_t h = 0; h < P.nrels(); ++h)
      for (std::size_t g = 0; g < P.ngens(); ++g) {
        const Vec& c = P.rel(h, g);
        if (is_zero(c)) continue;
        put(R, uoff[g], eoff[h], M.act(P.gen_weight(g), P.rel_weight(h), c));
      }
    Mat K = left_kernel(R);
    K.cols = uoff.back();
    K.a.resize(K.rows * K.cols);
    wdim.push_back(K.rows);
    H.basis.push_back(std::move(K));
  }
  std::vector<Mat> arr;
  for (std::size_t k = 0; k < A.arrows().size(); ++k) {
    const auto& a = A[A.arrows()[k]];
    const Presentation& Pu = BP.pres(a.left);
    const Presentation& Pv = BP.pres(a.right);
    Mat L = induced_tuple_map(Pv, Pu, M, [&](std::size_t h) {
      return Pv.gen_vector(h) * X.lam(k, Pv.gen_weight(h));
    });
    arr.push_back(coords_in(H.basis[uz(a.right)], H.basis[uz(a.left)] * L));
  }
  H.module = FinModule(A, std::move(wdim), std::move(arr), "Hom(" + X.label() + "," + M.label() + ")");
  return H;
}

ModMap hom_precompose(const BiPresentation& BX, const BiPresentation& BY, const BiMap& f, const FinModule& M,
                      const HomBi& HY, const HomBi& HX) {
  ModMap out;
  const int n = BX.bimodule().algebra().nweights();
  for (int u = 0; u < n; ++u) {
    const Presentation& PX = BX.pres(u);
    const Presentation& PY = BY.pres(u);
    Mat L = induced_tuple_map(PX, PY, M, [&](std::size_t h) {
      return PX.gen_vector(h) * f.B[uz(u)][uz(PX.gen_weight(h))];
    });
    out.F.push_back(coords_in(HX.basis[uz(u)], HY.basis[uz(u)] * L));
  }
  return out;
}

ModMap hom_postcompose(const BiPresentation& BX, const ModMap& f, const FinModule& M, const FinModule& N,
                       const HomBi& HM, const HomBi& HN) {
  ModMap out;
  const int n = BX.bimodule().algebra().nweights();
  for (int u = 0; u < n; ++u) {
    const Presentation& P = BX.pres(u);
    auto om = tuple_offsets(P, M);
    auto on = tuple_offsets(P, N);
    Mat L(om.back(), on.back());
    for (std::size_t g = 0; g < P.ngens(); ++g) put(L, om[g], on[g], f.F[uz(P.gen_weight(g))]);
    out.F.push_back(coords_in(HN.basis[uz(u)], HM.basis[uz(u)] * L));
  }
  return out;
}

std::vector<Mat> hom_vops(const BiPresentation& BX, const FinModule& M, const HomBi& H) {
  const Bimodule& X = BX.bimodule();
  const int n = X.algebra().nweights();
  std::vector<Mat> out;
  for (const auto& v : X.vops) {
    Mat full(H.module.dim(), H.module.dim());
    for (int u = 0; u < n; ++u) {
      const Presentation& P = BX.pres(u);
      Mat L = induced_tuple_map(P, P, M, [&](std::size_t h) {
        return P.gen_vector(h) * v[uz(u * n + P.gen_weight(h))];
      });
      put(full, H.module.offset(u), H.module.offset(u), coords_in(H.basis[uz(u)], H.basis[uz(u)] * L));
    }
    out.push_back(std::move(full));
  }
  return out;
}

TensorBi tensor(const Presentation& P, const Bimodule& X) {
  const FinAlgebra& A = X.algebra();
  const int n = A.nweights();
  TensorBi T;
  std::vector<FinModule> gparts, rparts;
  for (std::size_t g = 0; g < P.ngens(); ++g) gparts.push_back(X.left_part(P.gen_weight(g)));
  for (std::size_t h = 0; h < P.nrels(); ++h) rparts.push_back(X.left_part(P.rel_weight(h)));
  auto sum = [&](const std::vector<FinModule>& ps) {
    if (ps.empty()) return zero_module(A);
    std::vector<const FinModule*> ptr;
    for (const auto& p : ps) ptr.push_back(&p);
    return direct_sum(ptr);
  };
  T.cover = sum(gparts);
  FinModule rel = sum(rparts);
  ModMap R;
  for (int w = 0; w < n; ++w) {
    Mat m(rel.wdim(w), T.cover.wdim(w));
    std::size_t ro = 0;
    for (std::size_t h = 0; h < P.nrels(); ++h) {
      std::size_t co = 0;
      for (std::size_t g = 0; g < P.ngens(); ++g) {
        const Vec& c = P.rel(h, g);
        if (!is_zero(c)) put(m, ro, co, X.left(P.gen_weight(g), P.rel_weight(h), c, w));
        co += X.d(P.gen_weight(g), w);
      }
      ro += X.d(P.rel_weight(h), w);
    }
    R.F.push_back(std::move(m));
  }
  T.module = cokernel_module(T.cover, R, &T.proj, &T.lift);
  T.module.set_label(P.module().label() + "⊗" + X.label());
  return T;
}

ModMap tensor_map(const Presentation& P, const Presentation& P2, const ModMap& f, const Bimodule& X,
                  const TensorBi& T, const TensorBi& T2) {
  const FinAlgebra& A = X.algebra();
  const int n = A.nweights();
  const FinModule& M = P.module();
  const FinModule& M2 = P2.module();
  std::vector<std::vector<Vec>> b;
  for (std::size_t g = 0; g < P.ngens(); ++g) {
    int x = P.gen_weight(g);
    Vec full(M.dim());
    for (std::size_t j = 0; j < M.wdim(x); ++j) full[M.offset(x) + j] = P.gen_vector(g)[j];
    Vec img = f.apply(M, M2, full);
    b.push_back(P2.preimage(x, segment(img, M2.offset(x), M2.wdim(x))));
  }
  ModMap C;
  for (int w = 0; w < n; ++w) {
    Mat m(T.cover.wdim(w), T2.cover.wdim(w));
    std::size_t ro = 0;
    for (std::size_t g = 0; g < P.ngens(); ++g) {
      std::size_t co = 0;
      for (std::size_t g2 = 0; g2 < P2.ngens(); ++g2) {
        if (!is_zero(b[g][g2])) put(m, ro, co, X.left(P2.gen_weight(g2), P.gen_weight(g), b[g][g2], w));
        co += X.d(P2.gen_weight(g2), w);
      }
      ro += X.d(P.gen_weight(g), w);
    }
    C.F.push_back(std::move(m));
  }
  return compose(T2.proj, compose(C, T.lift));
}

ModMap tensor_hom_unit(const Presentation& P, const BiPresentation& BX, const TensorBi& T, const HomBi& H) {
  const Bimodule& X = BX.bimodule();
  const FinModule& M = P.module();
  const int n = X.algebra().nweights();
  ModMap out;
  for (int u = 0; u < n; ++u) {
    const Presentation& PX = BX.pres(u);
    auto off = tuple_offsets(PX, T.module);
    Mat tup(M.wdim(u), off.back());
    for (std::size_t j = 0; j < M.wdim(u); ++j) {
      Vec m(M.wdim(u));
      m[j] = 1;
      auto b = P.preimage(u, m);
      for (std::size_t h = 0; h < PX.ngens(); ++h) {
        int w = PX.gen_weight(h);
        Vec cov(T.cover.wdim(w));
        std::size_t co = 0;
        for (std::size_t g = 0; g < P.ngens(); ++g) {
          int xg = P.gen_weight(g);
          if (!is_zero(b[g])) {
            Vec v = PX.gen_vector(h) * X.left(xg, u, b[g], w);
            for (std::size_t i = 0; i < v.size(); ++i) cov[co + i] += v[i];
          }
          co += X.d(xg, w);
        }
        Vec img = cov * T.proj.F[uz(w)];
        for (std::size_t i = 0; i < img.size(); ++i) tup(j, off[h] + i) = img[i];
      }
    }
    out.F.push_back(coords_in(H.basis[uz(u)], tup));
  }
  return out;
}

ModMap tensor_hom_counit(const Presentation& PH, const BiPresentation& BX, const FinModule& N, const HomBi& H,
                         const TensorBi& T) {
  const Bimodule& X = BX.bimodule();
  const int n = X.algebra().nweights();
  std::vector<Vec> tuples;
  for (std::size_t g = 0; g < PH.ngens(); ++g)
    tuples.push_back(PH.gen_vector(g) * H.basis[uz(PH.gen_weight(g))]);
  ModMap out;
  for (int w = 0; w < n; ++w) {
    Mat c(T.cover.wdim(w), N.wdim(w));
    std::size_t ro = 0;
    for (std::size_t g = 0; g < PH.ngens(); ++g) {
      int xg = PH.gen_weight(g);
      const Presentation& PX = BX.pres(xg);
      auto off = tuple_offsets(PX, N);
      for (std::size_t i = 0; i < X.d(xg, w); ++i) {
        Vec xi(X.d(xg, w));
        xi[i] = 1;
        auto b = PX.preimage(w, xi);
        Vec val(N.wdim(w));
        for (std::size_t h = 0; h < PX.ngens(); ++h) {
          if (is_zero(b[h])) continue;
          int wh = PX.gen_weight(h);
          Vec fh = segment(tuples[g], off[h], N.wdim(wh));
          val = catmg::add(val, fh * N.act(wh, w, b[h]));
        }
        for (std::size_t j = 0; j < val.size(); ++j) c(ro + i, j) = val[j];
      }
      ro += X.d(xg, w);
    }
    out.F.push_back(T.lift.F[uz(w)] * c);
  }
  return out;
}

ChainComplex tensor_complex(const Resolution& R, const Bimodule& X) {
  const FinAlgebra& A = X.algebra();
  const int n = A.nweights();
  ChainComplex C;
  C.lo = 0;
  for (std::size_t i = 0; i < R.length(); ++i) {
    std::vector<FinModule> parts;
    for (int x : R.gens[i]) parts.push_back(X.left_part(x));
    std::vector<const FinModule*> ptr;
    for (const auto& p : parts) ptr.push_back(&p);
    C.terms.push_back(parts.empty() ? zero_module(A) : direct_sum(ptr));
    if (i == 0) {
      C.d.emplace_back();
      continue;
    }
    const auto& src = R.gens[i];
    const auto& dst = R.gens[i - 1];
    ModMap d;
    for (int w = 0; w < n; ++w) {
      Mat m(C.terms[i].wdim(w), C.terms[i - 1].wdim(w));
      std::size_t ro = 0;
      for (std::size_t h = 0; h < src.size(); ++h) {
        std::size_t co = 0;
        for (std::size_t g = 0; g < dst.size(); ++g) {
          const Vec& c = R.c[i][h][g];
          if (!is_zero(c)) put(m, ro, co, X.left(dst[g], src[h], c, w));
          co += X.d(dst[g], w);
        }
        ro += X.d(src[h], w);
      }
      d.F.push_back(std::move(m));
    }
    C.d.push_back(std::move(d));
  }
  return C;
}

// ---------------------------------------------------------------- hyper-Ext / Tor

std::map<int, std::size_t> hyperext_dims(const Resolution& R, const ChainComplex& X, int nmin, int nmax) {
  if (!R.complete) throw Error(ErrorKind::ResolutionTooShort, "resolution was truncated");
  // Hom^n = sum_{i - j = n} Hom(Q_i, X_j), Hom(Q_i, X_j) = sum_g X_j e_{x_g}
  const int imax = static_cast<int>(R.length()) - 1;
  auto term_dim = [&](int i, int j) {
    std::size_t s = 0;
    const FinModule& T = X.terms[uz(j - X.lo)];
    for (int x : R.gens[uz(i)]) s += T.wdim(x);
    return s;
  };
  struct Piece {
    int i, j;
    std::size_t off;
  };
  auto pieces = [&](int n) {
    std::vector<Piece> ps;
    std::size_t off = 0;
    for (int i = 0; i <= imax; ++i) {
      int j = i - n;
      if (j < X.lo || j > X.hi()) continue;
      ps.push_back({i, j, off});
      off += term_dim(i, j);
    }
    return std::make_pair(ps, off);
  };
  auto differential = [&](int n) {
    auto [src, sdim] = pieces(n);
    auto [dst, ddim] = pieces(n + 1);
    Mat D(sdim, ddim);
    auto find = [&](int i, int j) -> const Piece* {
      for (const auto& p : dst)
        if (p.i == i && p.j == j) return &p;
      return nullptr;
    };
    Q sign = (n % 2 == 0) ? Q(-1) : Q(1);
    for (const auto& p : src) {
      const FinModule& Xj = X.terms[uz(p.j - X.lo)];
      const auto& gens = R.gens[uz(p.i)];
      // d_X ∘ f: Hom(Q_i, X_j) -> Hom(Q_i, X_{j-1})
      if (const Piece* t = find(p.i, p.j - 1)) {
        const FinModule& Xk = X.terms[uz(p.j - 1 - X.lo)];
        const ModMap& dX = X.d[uz(p.j - X.lo)];
        std::size_t ro = p.off, co = t->off;
        for (int x : gens) {
          put(D, ro, co, dX.F[uz(x)]);
          ro += Xj.wdim(x);
          co += Xk.wdim(x);
        }
      }
      // f ∘ d_Q: Hom(Q_i, X_j) -> Hom(Q_{i+1}, X_j)
      if (const Piece* t = find(p.i + 1, p.j)) {
        const auto& hgens = R.gens[uz(p.i + 1)];
        std::vector<std::size_t> go(gens.size() + 1, 0), ho(hgens.size() + 1, 0);
        for (std::size_t g = 0; g < gens.size(); ++g) go[g + 1] = go[g] + Xj.wdim(gens[g]);
        for (std::size_t h = 0; h < hgens.size(); ++h) ho[h + 1] = ho[h] + Xj.wdim(hgens[h]);
        for (std::size_t h = 0; h < hgens.size(); ++h)
          for (std::size_t g = 0; g < gens.size(); ++g) {
            const Vec& c = R.c[uz(p.i + 1)][h][g];
            if (is_zero(c)) continue;
            put(D, p.off + go[g], t->off + ho[h], sign * Xj.act(gens[g], hgens[h], c));
          }
      }
    }
    return D;
  };
  std::map<int, std::size_t> out;
  std::map<int, std::size_t> rk;
  auto rank_of = [&](int n) {
    auto it = rk.find(n);
    if (it != rk.end()) return it->second;
    std::size_t r = catmg::rank(differential(n));
    rk[n] = r;
    return r;
  };
  for (int n = nmin; n <= nmax; ++n) {
    std::size_t dim = pieces(n).second;
    out[n] = dim - rank_of(n) - rank_of(n - 1);
  }
  return out;
}

std::map<int, std::size_t> hypertor_dims(const ChainComplex& X, const Resolution& Qop, int nmin, int nmax) {
  if (!Qop.complete) throw Error(ErrorKind::ResolutionTooShort, "resolution was truncated");
  const int imax = static_cast<int>(Qop.length()) - 1;
  struct Piece {
    int i, j;
    std::size_t off;
  };
  auto term_dim = [&](int i, int j) {
    std::size_t s = 0;
    const FinModule& T = X.terms[uz(j - X.lo)];
    for (int x : Qop.gens[uz(i)]) s += T.wdim(x);
    return s;
  };
  auto pieces = [&](int n) {
    std::vector<Piece> ps;
    std::size_t off = 0;
    for (int i = 0; i <= imax; ++i) {
      int j = n - i;
      if (j < X.lo || j > X.hi()) continue;
      ps.push_back({i, j, off});
      off += term_dim(i, j);
    }
    return std::make_pair(ps, off);
  };
  // D_n: Tot_n -> Tot_{n-1}
  auto differential = [&](int n) {
    auto [src, sdim] = pieces(n);
    auto [dst, ddim] = pieces(n - 1);
    Mat D(sdim, ddim);
    auto find = [&](int i, int j) -> const Piece* {
      for (const auto& p : dst)
        if (p.i == i && p.j == j) return &p;
      return nullptr;
    };
    for (const auto& p : src) {
      const FinModule& Xj = X.terms[uz(p.j - X.lo)];
      const auto& gens = Qop.gens[uz(p.i)];
      if (const Piece* t = find(p.i, p.j - 1)) {
        const FinModule& Xk = X.terms[uz(p.j - 1 - X.lo)];
        const ModMap& dX = X.d[uz(p.j - X.lo)];
        std::size_t ro = p.off, co = t->off;
        for (int x : gens) {
          put(D, ro, co, dX.F[uz(x)]);
          ro += Xj.wdim(x);
          co += Xk.wdim(x);
        }
      }
      if (const Piece* t = find(p.i - 1, p.j)) {
        const auto& ggens = Qop.gens[uz(p.i - 1)];
        Q sign = (p.j % 2 == 0) ? Q(1) : Q(-1);
        std::vector<std::size_t> ho(gens.size() + 1, 0), go(ggens.size() + 1, 0);
        for (std::size_t h = 0; h < gens.size(); ++h) ho[h + 1] = ho[h] + Xj.wdim(gens[h]);
        for (std::size_t g = 0; g < ggens.size(); ++g) go[g + 1] = go[g] + Xj.wdim(ggens[g]);
        for (std::size_t h = 0; h < gens.size(); ++h)
          for (std::size_t g = 0; g < ggens.size(); ++g) {
            const Vec& c = Qop.c[uz(p.i)][h][g];
            if (is_zero(c)) continue;
            // c lies in e_{x_h} A e_{x_g}; acts on X_j e_{x_h} from the right
            put(D, p.off + ho[h], t->off + go[g], sign * Xj.act(gens[h], ggens[g], c));
          }
      }
    }
    return D;
  };
  std::map<int, std::size_t> rk;
  auto rank_of = [&](int n) {
    auto it = rk.find(n);
    if (it != rk.end()) return it->second;
    std::size_t r = catmg::rank(differential(n));
    rk[n] = r;
    return r;
  };
  std::map<int, std::size_t> out;
  for (int n = nmin; n <= nmax; ++n) out[n] = pieces(n).second - rank_of(n) - rank_of(n + 1);
  return out;
}

FinModule dual(const FinModule& M, const FinAlgebra& Aop) {
  if (Aop.arrows() != M.algebra().arrows()) throw Error(ErrorKind::DimensionMismatch, "opposite algebra arrows differ");
  std::vector<Mat> arr;
  for (std::size_t k = 0; k < Aop.arrows().size(); ++k) arr.push_back(M.arrow(k).transpose());
  return FinModule(Aop, M.wdims(), std::move(arr), "D" + M.label());
}

}  // namespace catmg::cato
