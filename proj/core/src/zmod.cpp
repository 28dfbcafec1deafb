#include "catmg/zmod.hpp"

#include <algorithm>
#include <climits>
#include <functional>
#include <numeric>

namespace catmg::zmod {

using polylin::Exp;
using polylin::monomials;

namespace {

Poly zero_poly(int n) { return Poly(n); }

int deg_or(const Poly& p, int fallback) { return p.is_zero() ? fallback : p.degree(); }

}  // namespace

struct SectionModule::SolverCache {
  RowSolver solver;
  std::vector<std::pair<std::size_t, Exp>> rows;
};

SectionModule::SectionModule(const MomentGraph& G, std::vector<std::vector<int>> fiber_offsets, GradedBasis basis,
                             std::string tag)
    : G_(&G), offsets_(std::move(fiber_offsets)), basis_(std::move(basis)), tag_(std::move(tag)) {
  layout_.nvars = G.nvars();
  first_.assign(offsets_.size(), 0);
  for (std::size_t p = 0; p < offsets_.size(); ++p) {
    first_[p] = layout_.off.size();
    for (int o : offsets_[p]) {
      layout_.off.push_back(o);
      cpos_.push_back(static_cast<int>(p));
    }
  }
}

std::vector<int> SectionModule::support() const {
  std::vector<int> out;
  for (std::size_t p = 0; p < offsets_.size(); ++p)
    if (!offsets_[p].empty()) out.push_back(static_cast<int>(p));
  return out;
}

int SectionModule::min_degree() const {
  if (basis_.deg.empty()) return 0;
  return *std::min_element(basis_.deg.begin(), basis_.deg.end());
}

int SectionModule::max_degree() const {
  if (basis_.deg.empty()) return 0;
  return *std::max_element(basis_.deg.begin(), basis_.deg.end());
}

Mat SectionModule::slice(int d) const { return polylin::span_slice(layout_, basis_, d); }

std::size_t SectionModule::slice_dim(int d) const { return polylin::free_dim(nvars(), basis_.deg, d); }

const SectionModule::SolverCache& SectionModule::solver(int d) const {
  std::lock_guard<std::mutex> lock(*mu_);
  auto it = cache_->find(d);
  if (it != cache_->end()) return *it->second;
  auto c = std::make_shared<SolverCache>();
  for (std::size_t j = 0; j < basis_.size(); ++j) {
    int k2 = d - basis_.deg[j];
    if (k2 < 0 || k2 % 2 != 0) continue;
    for (const auto& e : monomials(nvars(), k2 / 2)) c->rows.emplace_back(j, e);
  }
  c->solver = RowSolver(slice(d));
  return *cache_->emplace(d, c).first->second;
}

bool SectionModule::contains(const Vec& v, int d) const {
  if (is_zero(v)) return true;
  return solver(d).solver.contains(v);
}

std::vector<Poly> SectionModule::coords(const Vec& v, int d) const {
  std::vector<Poly> c(basis_.size(), zero_poly(nvars()));
  if (is_zero(v)) return c;
  const auto& sc = solver(d);
  auto x = sc.solver.solve(v);
  if (!x) throw Error(ErrorKind::NotInSpan, "element not in " + tag_ + " in degree " + std::to_string(d));
  for (std::size_t r = 0; r < sc.rows.size(); ++r)
    if (sgn((*x)[r]) != 0) c[sc.rows[r].first].add_term(sc.rows[r].second, (*x)[r]);
  return c;
}

Vec SectionModule::combine(const std::vector<Poly>& c, int d) const {
  Vec v(layout_.dim(d));
  for (std::size_t j = 0; j < basis_.size(); ++j)
    if (!c[j].is_zero()) v = catmg::add(v, layout_.mul_poly(basis_.gen[j], basis_.deg[j], c[j]));
  return v;
}

Vec SectionModule::act(const Section& z, int dz, const Vec& v, int d) const {
  std::vector<Poly> pc;
  pc.reserve(cpos_.size());
  for (int p : cpos_) pc.push_back(z[static_cast<std::size_t>(p)]);
  return layout_.mul_coordwise(v, d, pc, dz);
}

std::vector<std::vector<Poly>> SectionModule::action_matrix(const Section& z, int dz) const {
  std::vector<std::vector<Poly>> P;
  for (std::size_t i = 0; i < basis_.size(); ++i)
    P.push_back(coords(act(z, dz, basis_.gen[i], basis_.deg[i]), basis_.deg[i] + dz));
  return P;
}

bool SectionModule::graded_free(int dmax) const {
  for (int d = min_degree(); d <= dmax; ++d)
    if (catmg::rank(slice(d)) != slice_dim(d)) return false;
  return true;
}

bool SectionModule::closed_under(const Section& z, int dz, int /*dmax*/) const {
  for (std::size_t i = 0; i < basis_.size(); ++i)
    if (!contains(act(z, dz, basis_.gen[i], basis_.deg[i]), basis_.deg[i] + dz)) return false;
  return true;
}

// Braden-MacPherson construction over the processed upset.
BMPResult bmp_sheaf(const MomentGraph& G, int x, const BMPOptions& opt) {
  const int n = G.nvars();
  const std::size_t nv = G.vertices().size();
  if (!G.contains(x)) throw Error(ErrorKind::NotInInterval, "vertex outside graph");
  struct Sec {
    int deg;
    std::vector<PolyVec> comp;
  };
  GSheaf F;
  F.gdeg.assign(nv, {});
  F.R.assign(G.edges().size(), {});
  const int px = G.pos(x);
  F.gdeg[static_cast<std::size_t>(px)] = {0};
  std::vector<Sec> gens;
  {
    Sec s{0, std::vector<PolyVec>(nv)};
    s.comp[static_cast<std::size_t>(px)] = {Poly::constant(n, 1)};
    gens.push_back(std::move(s));
  }
  std::vector<int> below = G.group().interval(x);
  std::sort(below.begin(), below.end(), std::greater<>());
  for (int y : below) {
    if (y == x) continue;
    const int py = G.pos(y);
    std::vector<int> ups;
    for (int e : G.up_edges(y))
      if (!F.gdeg[static_cast<std::size_t>(G.pos(G.edges()[static_cast<std::size_t>(e)].tail))].empty())
        ups.push_back(e);
    Layout EL;
    EL.nvars = n;
    for (int e : ups)
      for (int g : F.gdeg[static_cast<std::size_t>(G.pos(G.edges()[static_cast<std::size_t>(e)].tail))])
        EL.off.push_back(g);
    auto image = [&](const Sec& s) {
      PolyVec out;
      for (int e : ups) {
        const auto& E = G.edges()[static_cast<std::size_t>(e)];
        for (const Poly& p : s.comp[static_cast<std::size_t>(G.pos(E.tail))]) out.push_back(polylin::mod_linear(p, E.label));
      }
      return out;
    };
    auto nf = [&](const PolyVec& v) {
      PolyVec out;
      std::size_t c = 0;
      for (int e : ups) {
        const auto& E = G.edges()[static_cast<std::size_t>(e)];
        for (std::size_t i = 0; i < F.gdeg[static_cast<std::size_t>(G.pos(E.tail))].size(); ++i, ++c)
          out.push_back(polylin::mod_linear(v[c], E.label));
      }
      return out;
    };
    std::vector<PolyVec> imgs;
    for (const auto& s : gens) imgs.push_back(image(s));
    std::vector<std::size_t> kept;
    // rows spanning S.(kept images) in degree d, with (kept index, monomial) tags
    auto span_rows = [&](int d, std::vector<std::pair<std::size_t, Exp>>& tags) {
      std::vector<Vec> rows;
      for (std::size_t k = 0; k < kept.size(); ++k) {
        int k2 = d - gens[kept[k]].deg;
        if (k2 < 0 || k2 % 2 != 0) continue;
        for (const auto& e : monomials(n, k2 / 2)) {
          PolyVec v = imgs[kept[k]];
          Poly mono = Poly::monomial(e);
          for (auto& p : v) p = mono * p;
          rows.push_back(EL.pack(nf(v), d));
          tags.emplace_back(k, e);
        }
      }
      return rows;
    };
    std::vector<std::size_t> order(gens.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return gens[a].deg < gens[b].deg; });
    for (std::size_t oi = 0; oi < order.size();) {
      int d = gens[order[oi]].deg;
      std::vector<std::pair<std::size_t, Exp>> tags;
      auto rows = span_rows(d, tags);
      Span sp(EL.dim(d));
      for (const auto& r : rows) sp.add(r);
      for (; oi < order.size() && gens[order[oi]].deg == d; ++oi)
        if (sp.add(EL.pack(imgs[order[oi]], d))) kept.push_back(order[oi]);
    }
    std::vector<int>& gy = F.gdeg[static_cast<std::size_t>(py)];
    for (std::size_t k : kept) gy.push_back(gens[k].deg);
    const std::size_t ry = kept.size();
    {
      std::size_t c = 0;
      for (int e : ups) {
        const auto& E = G.edges()[static_cast<std::size_t>(e)];
        std::size_t rt = F.gdeg[static_cast<std::size_t>(G.pos(E.tail))].size();
        auto& R = F.R[static_cast<std::size_t>(e)];
        R.assign(rt, std::vector<Poly>(ry, zero_poly(n)));
        for (std::size_t i = 0; i < rt; ++i, ++c)
          for (std::size_t k = 0; k < ry; ++k) R[i][k] = imgs[kept[k]][c];
      }
    }
    std::vector<Sec> next;
    std::map<int, std::pair<RowSolver, std::vector<std::pair<std::size_t, Exp>>>> solvers;
    for (std::size_t j = 0; j < gens.size(); ++j) {
      Sec s = gens[j];
      PolyVec my(ry, zero_poly(n));
      auto kit = std::find(kept.begin(), kept.end(), j);
      if (kit != kept.end()) {
        my[static_cast<std::size_t>(kit - kept.begin())] = Poly::constant(n, 1);
      } else if (ry > 0) {
        auto it = solvers.find(s.deg);
        if (it == solvers.end()) {
          std::vector<std::pair<std::size_t, Exp>> tags;
          auto rows = span_rows(s.deg, tags);
          it = solvers.emplace(s.deg, std::make_pair(RowSolver(Mat::from_rows(rows, EL.dim(s.deg))), tags)).first;
        }
        auto sol = it->second.first.solve(EL.pack(imgs[j], s.deg));
        if (!sol) throw Error(ErrorKind::NotInSpan, "section image not generated by kept images");
        for (std::size_t r = 0; r < sol->size(); ++r)
          if (sgn((*sol)[r]) != 0) my[it->second.second[r].first].add_term(it->second.second[r].second, (*sol)[r]);
      }
      s.comp[static_cast<std::size_t>(py)] = std::move(my);
      next.push_back(std::move(s));
    }
    if (ry > 0) {
      int dmax = *std::max_element(gy.begin(), gy.end()) + 2 * static_cast<int>(ups.size()) + opt.extra;
      auto ck = momentgraph::costalk_kernel(G, F, y, dmax);
      if (!ck.free) throw Error(ErrorKind::DegreeCapExhausted, "costalk at " + G.group().label(y) + " not free");
      for (std::size_t k = 0; k < ck.gens.size(); ++k) {
        Sec s{ck.gens.deg[k], std::vector<PolyVec>(nv)};
        for (std::size_t p = 0; p < nv; ++p) s.comp[p] = PolyVec(F.gdeg[p].size(), zero_poly(n));
        s.comp[static_cast<std::size_t>(py)] = ck.layout.unpack(ck.gens.gen[k], ck.gens.deg[k]);
        next.push_back(std::move(s));
      }
    }
    std::stable_sort(next.begin(), next.end(), [](const Sec& a, const Sec& b) { return a.deg < b.deg; });
    gens = std::move(next);
  }
  for (std::size_t e = 0; e < G.edges().size(); ++e) {
    const auto& E = G.edges()[e];
    std::size_t rt = F.gdeg[static_cast<std::size_t>(G.pos(E.tail))].size();
    std::size_t rh = F.gdeg[static_cast<std::size_t>(G.pos(E.head))].size();
    auto& R = F.R[e];
    if (R.size() != rt || (rt > 0 && R[0].size() != rh)) R.assign(rt, std::vector<Poly>(rh, zero_poly(n)));
  }
  GradedBasis B;
  SectionModule tmp(G, F.gdeg, {}, "");
  for (const auto& s : gens) {
    PolyVec flat;
    for (std::size_t p = 0; p < nv; ++p)
      for (std::size_t i = 0; i < F.gdeg[p].size(); ++i)
        flat.push_back(i < s.comp[p].size() ? s.comp[p][i] : zero_poly(n));
    B.deg.push_back(s.deg);
    B.gen.push_back(tmp.pack(flat, s.deg));
  }
  return {F, SectionModule(G, F.gdeg, std::move(B), "Btilde(" + G.group().label(x) + ")")};
}

std::vector<long long> stalk_graded_rank(const GSheaf& F, int pos) {
  std::vector<long long> out;
  for (int g : F.gdeg[static_cast<std::size_t>(pos)]) {
    if (g < 0 || g % 2 != 0) throw Error(ErrorKind::InhomogeneousInput, "stalk generator in odd or negative degree");
    std::size_t i = static_cast<std::size_t>(g / 2);
    if (out.size() <= i) out.resize(i + 1, 0);
    ++out[i];
  }
  return out;
}

SectionModule sections_B(const MomentGraph& G, int x, const BMPOptions& opt) {
  auto r = bmp_sheaf(G, x, opt);
  int l = G.group()[static_cast<std::size_t>(x)].length;
  auto offs = r.sheaf.gdeg;
  for (auto& v : offs)
    for (auto& g : v) g -= l;
  GradedBasis B = r.sections.basis();
  for (auto& g : B.deg) g -= l;
  return SectionModule(G, std::move(offs), std::move(B), "B(" + G.group().label(x) + ")");
}

SectionModule verma_Z(const MomentGraph& G, int x) {
  std::vector<std::vector<int>> offs(G.vertices().size());
  offs[static_cast<std::size_t>(G.pos(x))] = {0};
  GradedBasis B;
  B.deg = {0};
  B.gen = {Vec{1}};
  return SectionModule(G, std::move(offs), std::move(B), "V(" + G.group().label(x) + ")");
}

bool ZHom::is_zero() const {
  for (const auto& r : q)
    for (const auto& p : r)
      if (!p.is_zero()) return false;
  return true;
}

ZHom identity_hom(const SectionModule& M) {
  ZHom f;
  std::size_t r = M.rank();
  f.q.assign(r, std::vector<Poly>(r, zero_poly(M.nvars())));
  for (std::size_t i = 0; i < r; ++i) f.q[i][i] = Poly::constant(M.nvars(), 1);
  return f;
}

ZHom compose(const ZHom& g, const ZHom& f) {
  ZHom h;
  h.degree = f.degree + g.degree;
  std::size_t a = f.q.size(), b = g.q.size(), c = b ? g.q[0].size() : 0;
  int n = 0;
  for (const auto& r : f.q)
    for (const auto& p : r) n = p.nvars();
  for (const auto& r : g.q)
    for (const auto& p : r) n = p.nvars();
  h.q.assign(a, std::vector<Poly>(c, zero_poly(n)));
  for (std::size_t i = 0; i < a; ++i)
    for (std::size_t k = 0; k < b; ++k) {
      if (f.q[i][k].is_zero()) continue;
      for (std::size_t l = 0; l < c; ++l)
        if (!g.q[k][l].is_zero()) h.q[i][l] += f.q[i][k] * g.q[k][l];
    }
  return h;
}

ZHom scale(const Poly& p, const ZHom& f) {
  ZHom h = f;
  h.degree += deg_or(p, 0);
  for (auto& r : h.q)
    for (auto& x : r) x = p * x;
  return h;
}

ZHom add(const ZHom& f, const ZHom& g) {
  ZHom h = f;
  for (std::size_t i = 0; i < h.q.size(); ++i)
    for (std::size_t k = 0; k < h.q[i].size(); ++k) h.q[i][k] += g.q[i][k];
  return h;
}

Vec apply(const ZHom& f, const SectionModule& N, std::size_t i, int gi) { return N.combine(f.q[i], gi + f.degree); }

bool commutes_with(const ZHom& f, const SectionModule& M, const SectionModule& N, const Section& z, int dz) {
  ZHom zm{dz, M.action_matrix(z, dz)};
  ZHom zn{dz, N.action_matrix(z, dz)};
  ZHom a = compose(f, zm), b = compose(zn, f);
  for (std::size_t i = 0; i < a.q.size(); ++i)
    for (std::size_t k = 0; k < a.q[i].size(); ++k)
      if (!(a.q[i][k] == b.q[i][k])) return false;
  return true;
}

namespace {

void require_full(const MomentGraph& G) {
  if (!G.group().finite() || G.vertices().size() != G.group().size())
    throw Error(ErrorKind::IncompatibleVertexSet, "translation needs the full finite group as vertex set");
}

ZHom blocks(std::size_t rows, std::size_t cols, int n, int degree) {
  ZHom f;
  f.degree = degree;
  f.q.assign(rows, std::vector<Poly>(cols, zero_poly(n)));
  return f;
}

}  // namespace

Translated theta_Z(int s, const SectionModule& M) {
  const MomentGraph& G = M.graph();
  require_full(G);
  const auto& g = G.group();
  const int n = M.nvars();
  const std::size_t nv = G.vertices().size();
  const Vec& alpha = g.system().alpha[static_cast<std::size_t>(s)];
  std::vector<int> partner(nv);
  std::vector<std::vector<int>> offs(nv);
  for (std::size_t p = 0; p < nv; ++p) {
    int w = G.vertices()[p];
    partner[p] = G.pos(g.rmul_gen(w, s));
    for (int o : M.fiber_offsets(static_cast<int>(p))) offs[p].push_back(o - 1);
    for (int o : M.fiber_offsets(partner[p])) offs[p].push_back(o - 1);
  }
  SectionModule shape(G, offs, {}, "");
  GradedBasis B;
  const std::size_t r = M.rank();
  for (int pass = 0; pass < 2; ++pass)
    for (std::size_t i = 0; i < r; ++i) {
      int gi = M.basis().deg[i];
      PolyVec old = M.unpack(M.basis().gen[i], gi);
      PolyVec nw;
      for (std::size_t p = 0; p < nv; ++p) {
        Poly c = pass == 0 ? Poly::constant(n, 1) : Poly::linear(g.act_root(G.vertices()[p], alpha));
        for (std::size_t j = 0; j < M.fiber(static_cast<int>(p)); ++j) nw.push_back(c * old[M.coord(static_cast<int>(p), j)]);
        for (std::size_t j = 0; j < M.fiber(partner[p]); ++j) nw.push_back(c * old[M.coord(partner[p], j)]);
      }
      int d = pass == 0 ? gi - 1 : gi + 1;
      B.deg.push_back(d);
      B.gen.push_back(shape.pack(nw, d));
    }
  Translated t{SectionModule(G, std::move(offs), std::move(B), "thetaZ_s" + std::to_string(s + 1) + "(" + M.tag() + ")"), {}, {}};
  auto P = M.action_matrix(momentgraph::c_element(G, s), 2);
  t.unit = blocks(r, 2 * r, n, 1);
  t.counit = blocks(2 * r, r, n, 1);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) {
      t.unit.q[i][j] = P[i][j];
      t.counit.q[r + i][j] = P[i][j];
    }
    t.unit.q[i][r + i] = Poly::constant(n, 1);
    t.counit.q[i][i] = Poly::constant(n, 1);
  }
  return t;
}

Translated phi_Z(int s, const SectionModule& M) {
  const MomentGraph& G = M.graph();
  require_full(G);
  const auto& g = G.group();
  const int n = M.nvars();
  const std::size_t nv = G.vertices().size();
  const Mat& sm = g.system().gen[static_cast<std::size_t>(s)];
  Poly alpha = Poly::linear(g.system().alpha[static_cast<std::size_t>(s)]);
  std::vector<int> partner(nv);
  std::vector<std::vector<int>> offs(nv);
  for (std::size_t p = 0; p < nv; ++p) {
    int w = G.vertices()[p];
    partner[p] = G.pos(g.lmul_gen(s, w));
    for (int o : M.fiber_offsets(static_cast<int>(p))) offs[p].push_back(o - 1);
    for (int o : M.fiber_offsets(partner[p])) offs[p].push_back(o - 1);
  }
  SectionModule shape(G, offs, {}, "");
  GradedBasis B;
  const std::size_t r = M.rank();
  for (int pass = 0; pass < 2; ++pass)
    for (std::size_t i = 0; i < r; ++i) {
      int gi = M.basis().deg[i];
      PolyVec old = M.unpack(M.basis().gen[i], gi);
      if (pass == 1)
        for (auto& p : old) p = alpha * p;
      PolyVec nw;
      for (std::size_t p = 0; p < nv; ++p) {
        for (std::size_t j = 0; j < M.fiber(static_cast<int>(p)); ++j) nw.push_back(old[M.coord(static_cast<int>(p), j)]);
        for (std::size_t j = 0; j < M.fiber(partner[p]); ++j)
          nw.push_back(polylin::act(sm, old[M.coord(partner[p], j)]));
      }
      int d = pass == 0 ? gi - 1 : gi + 1;
      B.deg.push_back(d);
      B.gen.push_back(shape.pack(nw, d));
    }
  Translated t{SectionModule(G, std::move(offs), std::move(B), "phiZ_s" + std::to_string(s + 1) + "(" + M.tag() + ")"), {}, {}};
  t.unit = blocks(r, 2 * r, n, 1);
  t.counit = blocks(2 * r, r, n, 1);
  for (std::size_t i = 0; i < r; ++i) {
    t.unit.q[i][i] = alpha;
    t.unit.q[i][r + i] = Poly::constant(n, 1);
    t.counit.q[i][i] = Poly::constant(n, 1);
    t.counit.q[r + i][i] = alpha;
  }
  return t;
}

ZHom theta_hom(int /*s*/, const SectionModule& M, const SectionModule& N, const ZHom& f) {
  std::size_t a = M.rank(), b = N.rank();
  ZHom h = blocks(2 * a, 2 * b, M.nvars(), f.degree);
  for (std::size_t i = 0; i < a; ++i)
    for (std::size_t k = 0; k < b; ++k) {
      h.q[i][k] = f.q[i][k];
      h.q[a + i][b + k] = f.q[i][k];
    }
  return h;
}

ZHom phi_hom(int s, const SectionModule& M, const SectionModule& N, const ZHom& f) {
  const auto& sys = M.graph().group().system();
  const Mat& sm = sys.gen[static_cast<std::size_t>(s)];
  const Vec& av = sys.alpha[static_cast<std::size_t>(s)];
  Poly alpha = Poly::linear(av);
  Poly alpha2 = alpha * alpha;
  std::size_t a = M.rank(), b = N.rank();
  ZHom h = blocks(2 * a, 2 * b, M.nvars(), f.degree);
  Q half(1, 2);
  for (std::size_t i = 0; i < a; ++i)
    for (std::size_t k = 0; k < b; ++k) {
      const Poly& q = f.q[i][k];
      if (q.is_zero()) continue;
      Poly sq = polylin::act(sm, q);
      Poly plus = (q + sq) * half;
      Poly minus = (q - sq) * half;
      Poly hq = minus.is_zero() ? Poly(M.nvars()) : polylin::divide_exact(minus, av);
      h.q[i][k] = plus;
      h.q[i][b + k] = hq;
      h.q[a + i][k] = alpha2 * hq;
      h.q[a + i][b + k] = plus;
    }
  return h;
}

SectionModule a_M(const SectionModule& M) {
  const MomentGraph& G = M.graph();
  require_full(G);
  const auto& g = G.group();
  const std::size_t nv = G.vertices().size();
  std::vector<int> src(nv);
  std::vector<std::vector<int>> offs(nv);
  for (std::size_t p = 0; p < nv; ++p) {
    src[p] = G.pos(g.inv(G.vertices()[p]));
    offs[p] = M.fiber_offsets(src[p]);
  }
  SectionModule shape(G, offs, {}, "");
  auto twist = [&](const Vec& v, int d) {
    PolyVec old = M.unpack(v, d);
    PolyVec nw;
    for (std::size_t p = 0; p < nv; ++p) {
      const Mat& w = g[static_cast<std::size_t>(G.vertices()[p])].matrix;
      for (std::size_t j = 0; j < M.fiber(src[p]); ++j) nw.push_back(polylin::act(w, old[M.coord(src[p], j)]));
    }
    return shape.pack(nw, d);
  };
  polylin::GeneratorOptions opt;
  opt.dmin = M.min_degree();
  opt.dmax = M.max_degree();
  opt.expected_rank = M.rank();
  auto B = polylin::minimal_generators(
      shape.layout(),
      [&](int d) {
        Mat s = M.slice(d);
        Mat out(0, shape.layout().dim(d));
        out.cols = shape.layout().dim(d);
        for (std::size_t i = 0; i < s.rows; ++i) out.append_row(twist(s.row(i), d));
        return out;
      },
      opt);
  return SectionModule(G, std::move(offs), std::move(B), "aM(" + M.tag() + ")");
}

Section zeta(const MomentGraph& G) { return momentgraph::euler_element(G, momentgraph::separating_lambda(G)); }

SylvesterHom::SylvesterHom(const SectionModule& M, const SectionModule& N, const HomOptions& opt) : M_(&M), N_(&N) {
  const int n = M.nvars();
  layout_.nvars = n;
  const std::size_t a = M.rank(), b = N.rank();
  for (std::size_t i = 0; i < a; ++i)
    for (std::size_t k = 0; k < b; ++k) layout_.off.push_back(N.basis().deg[k] - M.basis().deg[i]);
  for (std::size_t p = 0; p < M.graph().vertices().size(); ++p)
    expected_ += M.fiber(static_cast<int>(p)) * N.fiber(static_cast<int>(p));
  if (layout_.off.empty()) return;
  Section z = zeta(M.graph());
  P_ = M.action_matrix(z, 2);
  C_ = N.action_matrix(z, 2);
  polylin::GeneratorOptions go;
  go.dmin = layout_.min_degree();
  go.dmax = opt.dmax ? *opt.dmax : N.max_degree() - M.min_degree() + opt.extra;
  go.expected_rank = expected_;
  go.verify_extra = opt.extra;
  gens_ = polylin::minimal_generators(layout_, [this](int d) { return kernel_slice(d); }, go);
}

Mat SylvesterHom::kernel_slice(int d) const {
  const SectionModule& M = *M_;
  const SectionModule& N = *N_;
  const int n = M.nvars();
  const std::size_t a = M.rank(), b = N.rank();
  const std::size_t ncols = layout_.dim(d);
  if (ncols == 0) return Mat(0, 0);
  const auto& g = M.basis().deg;
  const auto& h = N.basis().deg;
  std::vector<Vec> rows;
  for (std::size_t i = 0; i < a; ++i)
    for (std::size_t l = 0; l < b; ++l) {
      int e = d + g[i] + 2 - h[l];
      std::size_t m = polylin::slice_dim(n, e);
      if (m == 0) continue;
      Mat block(ncols, m);
      for (std::size_t j = 0; j < a; ++j) {
        const Poly& p = P_[i][j];
        std::size_t c = j * b + l;
        std::size_t cd = layout_.cdim(d, c);
        if (p.is_zero() || cd == 0) continue;
        Mat mm = momentgraph::mult_matrix(p, n, d - layout_.off[c]);
        std::size_t s = layout_.start(d, c);
        for (std::size_t u = 0; u < cd; ++u)
          for (std::size_t v = 0; v < m; ++v) block(s + u, v) += mm(u, v);
      }
      for (std::size_t k = 0; k < b; ++k) {
        const Poly& p = C_[k][l];
        std::size_t c = i * b + k;
        std::size_t cd = layout_.cdim(d, c);
        if (p.is_zero() || cd == 0) continue;
        Mat mm = momentgraph::mult_matrix(p, n, d - layout_.off[c]);
        std::size_t s = layout_.start(d, c);
        for (std::size_t u = 0; u < cd; ++u)
          for (std::size_t v = 0; v < m; ++v) block(s + u, v) -= mm(u, v);
      }
      Mat bt = block.transpose();
      for (std::size_t r = 0; r < bt.rows; ++r) {
        Vec row = bt.row(r);
        if (!is_zero(row)) rows.push_back(std::move(row));
      }
    }
  return kernel(Mat::from_rows(rows, ncols));
}

std::size_t SylvesterHom::slice_dim(int d) const { return polylin::free_dim(layout_.nvars, gens_.deg, d); }

ZHom SylvesterHom::hom(std::size_t j) const {
  ZHom f;
  f.degree = gens_.deg[j];
  const std::size_t a = M_->rank(), b = N_->rank();
  auto polys = layout_.unpack(gens_.gen[j], gens_.deg[j]);
  f.q.assign(a, std::vector<Poly>(b, zero_poly(layout_.nvars)));
  for (std::size_t i = 0; i < a; ++i)
    for (std::size_t k = 0; k < b; ++k) f.q[i][k] = polys[i * b + k];
  return f;
}

bool FiberMap::is_zero() const {
  for (const auto& m : F)
    for (const auto& r : m)
      for (const auto& p : r)
        if (!p.is_zero()) return false;
  return true;
}

FiberMap identity_fiber(const SectionModule& M) {
  FiberMap f;
  const int n = M.nvars();
  for (std::size_t p = 0; p < M.graph().vertices().size(); ++p) {
    std::size_t r = M.fiber(static_cast<int>(p));
    PolyMat m(r, std::vector<Poly>(r, zero_poly(n)));
    for (std::size_t i = 0; i < r; ++i) m[i][i] = Poly::constant(n, 1);
    f.F.push_back(std::move(m));
  }
  return f;
}

FiberMap compose(const FiberMap& g, const FiberMap& f) {
  FiberMap h;
  h.degree = f.degree + g.degree;
  for (std::size_t p = 0; p < f.F.size(); ++p) {
    const PolyMat& G = g.F[p];
    const PolyMat& F = f.F[p];
    std::size_t rows = G.size(), mid = F.size(), cols = F.empty() ? 0 : F[0].size();
    int n = 0;
    for (const auto& r : G)
      for (const auto& x : r) n = x.nvars();
    for (const auto& r : F)
      for (const auto& x : r) n = x.nvars();
    PolyMat H(rows, std::vector<Poly>(cols, zero_poly(n)));
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t k = 0; k < mid; ++k) {
        if (G[i][k].is_zero()) continue;
        for (std::size_t j = 0; j < cols; ++j)
          if (!F[k][j].is_zero()) H[i][j] += G[i][k] * F[k][j];
      }
    h.F.push_back(std::move(H));
  }
  return h;
}

FiberMap add(const FiberMap& f, const FiberMap& g) {
  FiberMap h = f;
  for (std::size_t p = 0; p < h.F.size(); ++p)
    for (std::size_t i = 0; i < h.F[p].size(); ++i)
      for (std::size_t j = 0; j < h.F[p][i].size(); ++j) h.F[p][i][j] += g.F[p][i][j];
  return h;
}

FiberMap scale(const Q& c, const FiberMap& f) {
  FiberMap h = f;
  for (auto& m : h.F)
    for (auto& r : m)
      for (auto& x : r) x *= c;
  return h;
}

Vec apply(const FiberMap& f, const SectionModule& M, const SectionModule& N, const Vec& v, int d) {
  PolyVec m = M.unpack(v, d);
  PolyVec out(N.layout().ncoords(), zero_poly(N.nvars()));
  for (std::size_t p = 0; p < f.F.size(); ++p)
    for (std::size_t i = 0; i < f.F[p].size(); ++i)
      for (std::size_t j = 0; j < f.F[p][i].size(); ++j)
        if (!f.F[p][i][j].is_zero()) out[N.coord(static_cast<int>(p), i)] += f.F[p][i][j] * m[M.coord(static_cast<int>(p), j)];
  return N.pack(out, d + f.degree);
}

ZHom to_basis(const FiberMap& f, const SectionModule& M, const SectionModule& N) {
  ZHom h;
  h.degree = f.degree;
  for (std::size_t i = 0; i < M.rank(); ++i) {
    int g = M.basis().deg[i];
    h.q.push_back(N.coords(apply(f, M, N, M.basis().gen[i], g), g + f.degree));
  }
  return h;
}

namespace {

std::vector<int> right_partner(const MomentGraph& G, int s) {
  std::vector<int> out;
  for (int w : G.vertices()) out.push_back(G.pos(G.group().rmul_gen(w, s)));
  return out;
}

std::vector<int> left_partner(const MomentGraph& G, int s) {
  std::vector<int> out;
  for (int w : G.vertices()) out.push_back(G.pos(G.group().lmul_gen(s, w)));
  return out;
}

PolyMat block_diag(const PolyMat& a, const PolyMat& b, std::size_t ac, std::size_t bc, int n) {
  PolyMat out(a.size() + b.size(), std::vector<Poly>(ac + bc, zero_poly(n)));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < ac; ++j) out[i][j] = a[i][j];
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = 0; j < bc; ++j) out[a.size() + i][ac + j] = b[i][j];
  return out;
}

FiberMap doubled(const SectionModule& M, const FiberMap& f, const std::vector<int>& partner, const Mat* act) {
  FiberMap h;
  h.degree = f.degree;
  const int n = M.nvars();
  for (std::size_t p = 0; p < f.F.size(); ++p) {
    PolyMat second = f.F[static_cast<std::size_t>(partner[p])];
    if (act)
      for (auto& r : second)
        for (auto& x : r) x = polylin::act(*act, x);
    h.F.push_back(block_diag(f.F[p], second, M.fiber(static_cast<int>(p)), M.fiber(partner[p]), n));
  }
  return h;
}

FiberMap unit_map(const SectionModule& M, const std::vector<int>& partner, const std::function<Poly(std::size_t)>& c) {
  FiberMap h;
  h.degree = 1;
  const int n = M.nvars();
  for (std::size_t p = 0; p < partner.size(); ++p) {
    std::size_t r = M.fiber(static_cast<int>(p)), r2 = M.fiber(partner[p]);
    PolyMat m(r + r2, std::vector<Poly>(r, zero_poly(n)));
    for (std::size_t i = 0; i < r; ++i) m[i][i] = c(p);
    h.F.push_back(std::move(m));
  }
  return h;
}

FiberMap counit_map(const SectionModule& M, const std::vector<int>& partner) {
  FiberMap h;
  h.degree = 1;
  const int n = M.nvars();
  for (std::size_t p = 0; p < partner.size(); ++p) {
    std::size_t r = M.fiber(static_cast<int>(p)), r2 = M.fiber(partner[p]);
    PolyMat m(r, std::vector<Poly>(r + r2, zero_poly(n)));
    for (std::size_t i = 0; i < r; ++i) m[i][i] = Poly::constant(n, 1);
    h.F.push_back(std::move(m));
  }
  return h;
}

}  // namespace

FiberMap theta_fiber(int s, const SectionModule& M, const SectionModule& /*N*/, const FiberMap& f) {
  return doubled(M, f, right_partner(M.graph(), s), nullptr);
}

FiberMap phi_fiber(int s, const SectionModule& M, const SectionModule& /*N*/, const FiberMap& f) {
  return doubled(M, f, left_partner(M.graph(), s), &M.graph().group().system().gen[static_cast<std::size_t>(s)]);
}

FiberMap theta_unit(int s, const SectionModule& M) {
  const auto& G = M.graph();
  const Vec& a = G.group().system().alpha[static_cast<std::size_t>(s)];
  return unit_map(M, right_partner(G, s), [&](std::size_t p) {
    return Poly::linear(G.group().act_root(G.vertices()[p], a)) * Q(2);
  });
}

FiberMap theta_counit(int s, const SectionModule& M) { return counit_map(M, right_partner(M.graph(), s)); }

FiberMap phi_unit(int s, const SectionModule& M) {
  Poly a = Poly::linear(M.graph().group().system().alpha[static_cast<std::size_t>(s)]) * Q(2);
  return unit_map(M, left_partner(M.graph(), s), [&](std::size_t) { return a; });
}

FiberMap phi_counit(int s, const SectionModule& M) { return counit_map(M, left_partner(M.graph(), s)); }

struct HomModule::Cache {
  RowSolver solver;
  std::vector<std::pair<std::size_t, bool>> rows;  // generator, constant monomial
};

HomModule::HomModule(const SectionModule& M, const SectionModule& N, const HomOptions& opt) : M_(&M), N_(&N) {
  layout_.nvars = M.nvars();
  const std::size_t nv = M.graph().vertices().size();
  first_.assign(nv, 0);
  for (std::size_t p = 0; p < nv; ++p) {
    first_[p] = layout_.off.size();
    const auto& om = M.fiber_offsets(static_cast<int>(p));
    const auto& on = N.fiber_offsets(static_cast<int>(p));
    for (int a : on)
      for (int b : om) layout_.off.push_back(a - b);
    expected_ += om.size() * on.size();
  }
  if (layout_.off.empty()) return;
  polylin::GeneratorOptions go;
  go.dmin = layout_.min_degree();
  go.dmax = opt.dmax ? *opt.dmax : N.max_degree() - M.min_degree() + opt.extra;
  go.expected_rank = expected_;
  go.verify_extra = opt.extra;
  gens_ = polylin::minimal_generators(layout_, [this](int d) { return kernel_slice(d); }, go);
}

Mat HomModule::kernel_slice(int d) const {
  const SectionModule& M = *M_;
  const SectionModule& N = *N_;
  const int n = M.nvars();
  const std::size_t ncols = layout_.dim(d);
  if (ncols == 0) return Mat(0, 0);
  std::vector<Vec> rows;
  for (std::size_t b = 0; b < M.rank(); ++b) {
    int g = M.basis().deg[b];
    int e = d + g;
    std::size_t ne = N.layout().dim(e);
    if (ne == 0) continue;
    Mat ann = kernel(N.slice(e));
    if (ann.rows == 0) continue;
    PolyVec bv = M.unpack(M.basis().gen[b], g);
    Mat phi(ncols, ne);
    for (std::size_t p = 0; p < first_.size(); ++p) {
      std::size_t rm = M.fiber(static_cast<int>(p)), rn = N.fiber(static_cast<int>(p));
      for (std::size_t i = 0; i < rn; ++i)
        for (std::size_t j = 0; j < rm; ++j) {
          std::size_t c = first_[p] + i * rm + j;
          const Poly& bp = bv[M.coord(static_cast<int>(p), j)];
          std::size_t cd = layout_.cdim(d, c);
          if (cd == 0 || bp.is_zero()) continue;
          Mat mm = momentgraph::mult_matrix(bp, n, d - layout_.off[c]);
          std::size_t r0 = layout_.start(d, c);
          std::size_t c0 = N.layout().start(e, N.coord(static_cast<int>(p), i));
          for (std::size_t u = 0; u < mm.rows; ++u)
            for (std::size_t v = 0; v < mm.cols; ++v)
              if (sgn(mm(u, v)) != 0) phi(r0 + u, c0 + v) = mm(u, v);
        }
    }
    Mat cond = ann * phi.transpose();
    for (std::size_t r = 0; r < cond.rows; ++r) {
      Vec row = cond.row(r);
      if (!is_zero(row)) rows.push_back(std::move(row));
    }
  }
  return kernel(Mat::from_rows(rows, ncols));
}

std::size_t HomModule::slice_dim(int d) const { return polylin::free_dim(layout_.nvars, gens_.deg, d); }

Vec HomModule::pack(const FiberMap& f) const {
  PolyVec flat(layout_.ncoords(), zero_poly(layout_.nvars));
  for (std::size_t p = 0; p < first_.size() && p < f.F.size(); ++p) {
    std::size_t rm = M_->fiber(static_cast<int>(p)), rn = N_->fiber(static_cast<int>(p));
    const PolyMat& m = f.F[p];
    for (std::size_t i = 0; i < rn && i < m.size(); ++i)
      for (std::size_t j = 0; j < rm && j < m[i].size(); ++j)
        if (!m[i][j].is_zero()) flat[first_[p] + i * rm + j] = m[i][j];
  }
  return layout_.pack(flat, f.degree);
}

FiberMap HomModule::unpack(const Vec& v, int d) const {
  FiberMap f;
  f.degree = d;
  auto flat = layout_.unpack(v, d);
  for (std::size_t p = 0; p < first_.size(); ++p) {
    std::size_t rm = M_->fiber(static_cast<int>(p)), rn = N_->fiber(static_cast<int>(p));
    PolyMat m(rn, std::vector<Poly>(rm));
    for (std::size_t i = 0; i < rn; ++i)
      for (std::size_t j = 0; j < rm; ++j) m[i][j] = flat[first_[p] + i * rm + j];
    f.F.push_back(std::move(m));
  }
  return f;
}

FiberMap HomModule::hom(std::size_t j) const { return unpack(gens_.gen[j], gens_.deg[j]); }

void HomModule::set_generator(std::size_t j, const FiberMap& f) {
  gens_.gen[j] = pack(f);
  std::lock_guard<std::mutex> lock(*mu_);
  cache_->clear();
}

Vec HomModule::reduce(const FiberMap& f) const {
  Vec out(gens_.size());
  if (f.is_zero()) return out;
  int d = f.degree;
  std::shared_ptr<Cache> c;
  {
    std::lock_guard<std::mutex> lock(*mu_);
    auto it = cache_->find(d);
    if (it != cache_->end()) c = it->second;
  }
  if (!c) {
    c = std::make_shared<Cache>();
    for (std::size_t j = 0; j < gens_.size(); ++j) {
      int k2 = d - gens_.deg[j];
      if (k2 < 0 || k2 % 2 != 0) continue;
      for (std::size_t e = 0; e < monomials(layout_.nvars, k2 / 2).size(); ++e) c->rows.emplace_back(j, k2 == 0);
    }
    c->solver = RowSolver(polylin::span_slice(layout_, gens_, d));
    std::lock_guard<std::mutex> lock(*mu_);
    cache_->emplace(d, c);
  }
  auto x = c->solver.solve(pack(f));
  if (!x) throw Error(ErrorKind::NotInSpan, "map outside the computed Hom module in degree " + std::to_string(d));
  for (std::size_t r = 0; r < x->size(); ++r)
    if (c->rows[r].second) out[c->rows[r].first] = (*x)[r];
  return out;
}

}  // namespace catmg::zmod
