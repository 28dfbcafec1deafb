#include "catmg/momentgraph.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>

namespace catmg::momentgraph {

using polylin::Exp;
using polylin::Layout;
using polylin::monomials;
using polylin::slice_dim;

MomentGraph::MomentGraph(const Group& g, int w) : g_(&g), top_(w) {
  verts_ = g.interval(w);
  pos_.assign(g.size(), -1);
  for (std::size_t i = 0; i < verts_.size(); ++i) pos_[static_cast<std::size_t>(verts_[i])] = static_cast<int>(i);
  for (const auto& r : coxeter::reflections_between(g, verts_)) edges_.push_back({r.x, r.tx, r.t, g.root(r.t)});
}

std::vector<int> MomentGraph::up_edges(int x) const {
  std::vector<int> out;
  for (std::size_t e = 0; e < edges_.size(); ++e)
    if (edges_[e].head == x) out.push_back(static_cast<int>(e));
  return out;
}

std::vector<int> MomentGraph::down_edges(int x) const {
  std::vector<int> out;
  for (std::size_t e = 0; e < edges_.size(); ++e)
    if (edges_[e].tail == x) out.push_back(static_cast<int>(e));
  return out;
}

MomentGraph build_moment_graph(const Group& g, int w) { return MomentGraph(g, w); }

bool UpSet::contains(int x) const { return std::binary_search(verts.begin(), verts.end(), x); }

UpSet principal_upset(const MomentGraph& G, int y) {
  UpSet u;
  for (int z : G.vertices())
    if (G.group().leq(y, z)) u.verts.push_back(z);
  return u;
}

UpSet full_set(const MomentGraph& G) { return UpSet{G.vertices()}; }

bool is_upset(const MomentGraph& G, const std::vector<int>& verts) {
  for (int x : verts)
    for (int y : G.vertices())
      if (G.group().leq(x, y) && std::find(verts.begin(), verts.end(), y) == verts.end()) return false;
  return true;
}

Mat mod_matrix(const Vec& alpha, int nvars, int d) {
  static std::mutex mu;
  static std::map<std::pair<Vec, int>, Mat> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find({alpha, d});
    if (it != cache.end()) return it->second;
  }
  std::size_t m = slice_dim(nvars, d);
  Mat r(m, m);
  if (m > 0) {
    const auto& ms = monomials(nvars, d / 2);
    for (std::size_t i = 0; i < m; ++i) {
      Poly nf = polylin::mod_linear(Poly::monomial(ms[i]), alpha);
      for (const auto& [e, c] : nf.terms()) r(i, polylin::mono_index(nvars, e)) = c;
    }
  }
  std::lock_guard<std::mutex> lock(mu);
  cache.emplace(std::make_pair(alpha, d), r);
  return r;
}

Mat mult_matrix(const Poly& p, int nvars, int a) {
  std::size_t m = slice_dim(nvars, a);
  int dp = p.is_zero() ? 0 : p.degree();
  std::size_t m2 = slice_dim(nvars, a + dp);
  Mat r(m, m2);
  if (m == 0 || p.is_zero()) return r;
  const auto& ms = monomials(nvars, a / 2);
  for (std::size_t i = 0; i < m; ++i)
    for (const auto& [e, c] : p.terms()) {
      Exp x = ms[i];
      for (std::size_t k = 0; k < x.size(); ++k) x[k] += e[k];
      r(i, polylin::mono_index(nvars, x)) += c;
    }
  return r;
}

polylin::DegreeSlice structure_sections(const MomentGraph& G, int d) {
  GSheaf F = structure_sheaf(G);
  std::vector<int> all(G.vertices().size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
  return {d, section_slice(G, F, all, d)};
}

bool in_structure_algebra(const MomentGraph& G, const Section& z) {
  for (const auto& e : G.edges()) {
    Poly diff = z[static_cast<std::size_t>(G.pos(e.head))] - z[static_cast<std::size_t>(G.pos(e.tail))];
    if (!polylin::mod_linear(diff, e.label).is_zero()) return false;
  }
  return true;
}

SeparationReport euler_report(const MomentGraph& G, const Vec& lambda) {
  SeparationReport rep;
  const auto& g = G.group();
  std::set<Vec> seen;
  rep.separating = true;
  for (int w : G.vertices()) {
    Vec img = g.act_root(w, lambda);
    rep.zeta.push_back(Poly::linear(img));
    if (!seen.insert(img).second) rep.separating = false;
  }
  if (is_zero(lambda)) rep.separating = false;
  return rep;
}

Section euler_element(const MomentGraph& G, const Vec& lambda) {
  auto rep = euler_report(G, lambda);
  if (!rep.separating) throw Error(ErrorKind::NotSeparating, "zeta_lambda does not separate vertices");
  return rep.zeta;
}

Section c_element(const MomentGraph& G, int s) {
  const auto& g = G.group();
  Section c;
  for (int w : G.vertices()) c.push_back(Poly::linear(g.act_root(w, g.system().alpha[static_cast<std::size_t>(s)])));
  return c;
}

Vec separating_lambda(const MomentGraph& G) {
  int n = G.nvars();
  Vec lam(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) lam[static_cast<std::size_t>(i)] = i + 1;
  for (int bump = 0; bump < 1000; ++bump) {
    if (euler_report(G, lam).separating) return lam;
    lam[static_cast<std::size_t>(bump % n)] += 1;
  }
  throw Error(ErrorKind::NotSeparating, "no separating lambda found");
}

GSheaf structure_sheaf(const MomentGraph& G) {
  GSheaf F;
  int n = G.nvars();
  F.gdeg.assign(G.vertices().size(), std::vector<int>{0});
  for (std::size_t e = 0; e < G.edges().size(); ++e) F.R.push_back({{Poly::constant(n, 1)}});
  return F;
}

GSheaf verma_sheaf(const MomentGraph& G, int x) {
  GSheaf F;
  F.gdeg.assign(G.vertices().size(), {});
  F.gdeg[static_cast<std::size_t>(G.pos(x))] = {0};
  for (const auto& e : G.edges()) {
    std::size_t rt = F.gdeg[static_cast<std::size_t>(G.pos(e.tail))].size();
    std::size_t rh = F.gdeg[static_cast<std::size_t>(G.pos(e.head))].size();
    F.R.push_back(std::vector<std::vector<Poly>>(rt, std::vector<Poly>(rh, Poly(G.nvars()))));
  }
  return F;
}

GSheaf shift(const GSheaf& F, int k) {
  GSheaf r = F;
  for (auto& v : r.gdeg)
    for (auto& g : v) g -= k;
  return r;
}

Mat section_slice(const MomentGraph& G, const GSheaf& F, const std::vector<int>& verts, int d) {
  int n = G.nvars();
  Layout lay;
  lay.nvars = n;
  std::map<std::pair<int, int>, std::size_t> coord;
  for (int p : verts)
    for (std::size_t i = 0; i < F.gdeg[static_cast<std::size_t>(p)].size(); ++i) {
      coord[{p, static_cast<int>(i)}] = lay.off.size();
      lay.off.push_back(F.gdeg[static_cast<std::size_t>(p)][i]);
    }
  std::size_t N = lay.dim(d);
  std::vector<bool> in(G.vertices().size(), false);
  for (int p : verts) in[static_cast<std::size_t>(p)] = true;
  std::vector<Vec> rows;
  for (std::size_t ei = 0; ei < G.edges().size(); ++ei) {
    const Edge& e = G.edges()[ei];
    int h = G.pos(e.head), t = G.pos(e.tail);
    if (!in[static_cast<std::size_t>(h)] || !in[static_cast<std::size_t>(t)]) continue;
    const auto& gt = F.gdeg[static_cast<std::size_t>(t)];
    const auto& gh = F.gdeg[static_cast<std::size_t>(h)];
    for (std::size_t i = 0; i < gt.size(); ++i) {
      int dt = d - gt[i];
      std::size_t m = slice_dim(n, dt);
      if (m == 0) continue;
      Mat mod = mod_matrix(e.label, n, dt);
      Mat block(N, m);
      {
        std::size_t c = coord.at({t, static_cast<int>(i)});
        std::size_t s = lay.start(d, c);
        for (std::size_t a = 0; a < m; ++a)
          for (std::size_t b = 0; b < m; ++b) block(s + a, b) -= mod(a, b);
      }
      for (std::size_t j = 0; j < gh.size(); ++j) {
        const Poly& r = F.R[ei][i][j];
        if (r.is_zero()) continue;
        int dh = d - gh[j];
        std::size_t mh = slice_dim(n, dh);
        if (mh == 0) continue;
        Mat mm = mult_matrix(r, n, dh) * mod;
        std::size_t c = coord.at({h, static_cast<int>(j)});
        std::size_t s = lay.start(d, c);
        for (std::size_t a = 0; a < mh; ++a)
          for (std::size_t b = 0; b < m; ++b) block(s + a, b) += mm(a, b);
      }
      Mat bt = block.transpose();
      for (std::size_t r = 0; r < bt.rows; ++r) {
        Vec row = bt.row(r);
        if (!is_zero(row)) rows.push_back(std::move(row));
      }
    }
  }
  Mat A = Mat::from_rows(rows, N);
  return kernel(A);
}

SectionSpace sheaf_sections(const MomentGraph& G, const GSheaf& F, const UpSet& omega, int d_max) {
  SectionSpace sp;
  sp.layout.nvars = G.nvars();
  for (int x : omega.verts) {
    int p = G.pos(x);
    if (p < 0) throw Error(ErrorKind::NotInInterval, "upset vertex outside graph");
    sp.verts.push_back(p);
    for (std::size_t i = 0; i < F.gdeg[static_cast<std::size_t>(p)].size(); ++i) {
      sp.coord.emplace_back(p, static_cast<int>(i));
      sp.layout.off.push_back(F.gdeg[static_cast<std::size_t>(p)][i]);
    }
  }
  polylin::GeneratorOptions opt;
  opt.dmin = sp.layout.min_degree();
  opt.dmax = d_max;
  auto verts = sp.verts;
  sp.gens = polylin::minimal_generators(
      sp.layout, [&](int d) { return section_slice(G, F, verts, d); }, opt);
  return sp;
}

FlabbyReport flabby_check(const MomentGraph& G, const GSheaf& F, int d_max) {
  FlabbyReport rep;
  std::vector<int> all(G.vertices().size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
  Layout full;
  full.nvars = G.nvars();
  std::vector<int> cpos;
  for (int p : all)
    for (int g : F.gdeg[static_cast<std::size_t>(p)]) {
      full.off.push_back(g);
      cpos.push_back(p);
    }
  int dmin = full.min_degree();
  for (int y : G.vertices()) {
    UpSet u = principal_upset(G, y);
    std::vector<int> sub;
    for (int x : u.verts) sub.push_back(G.pos(x));
    std::vector<bool> keep(G.vertices().size(), false);
    for (int p : sub) keep[static_cast<std::size_t>(p)] = true;
    for (int d = dmin; d <= d_max; ++d) {
      Mat whole = section_slice(G, F, all, d);
      Mat part = section_slice(G, F, sub, d);
      Mat proj(whole.rows, part.cols);
      for (std::size_t r = 0; r < whole.rows; ++r) {
        std::size_t src = 0, dst = 0;
        for (std::size_t c = 0; c < full.off.size(); ++c) {
          std::size_t m = full.cdim(d, c);
          if (keep[static_cast<std::size_t>(cpos[c])]) {
            for (std::size_t k = 0; k < m; ++k) proj(r, dst + k) = whole(r, src + k);
            dst += m;
          }
          src += m;
        }
      }
      if (rank(proj) != part.rows) {
        rep.flabby = false;
        rep.failures.push_back(G.group().label(y) + " degree " + std::to_string(d));
      }
    }
  }
  return rep;
}

CostalkReport costalk_kernel(const MomentGraph& G, const GSheaf& F, int x, int d_max) {
  CostalkReport rep;
  int n = G.nvars();
  int px = G.pos(x);
  const auto& gx = F.gdeg[static_cast<std::size_t>(px)];
  rep.layout.nvars = n;
  rep.layout.off = gx;
  auto ups = G.up_edges(x);
  auto slice = [&](int d) {
    std::size_t N = rep.layout.dim(d);
    std::vector<Vec> rows;
    for (int ei : ups) {
      const Edge& e = G.edges()[static_cast<std::size_t>(ei)];
      const auto& gt = F.gdeg[static_cast<std::size_t>(G.pos(e.tail))];
      for (std::size_t i = 0; i < gt.size(); ++i) {
        int dt = d - gt[i];
        std::size_t m = slice_dim(n, dt);
        if (m == 0) continue;
        Mat mod = mod_matrix(e.label, n, dt);
        Mat block(N, m);
        for (std::size_t j = 0; j < gx.size(); ++j) {
          const Poly& r = F.R[static_cast<std::size_t>(ei)][i][j];
          int dh = d - gx[j];
          std::size_t mh = slice_dim(n, dh);
          if (r.is_zero() || mh == 0) continue;
          Mat mm = mult_matrix(r, n, dh) * mod;
          std::size_t s = rep.layout.start(d, j);
          for (std::size_t a = 0; a < mh; ++a)
            for (std::size_t b = 0; b < m; ++b) block(s + a, b) += mm(a, b);
        }
        Mat bt = block.transpose();
        for (std::size_t r = 0; r < bt.rows; ++r) rows.push_back(bt.row(r));
      }
    }
    return kernel(Mat::from_rows(rows, N));
  };
  polylin::GeneratorOptions opt;
  opt.dmin = rep.layout.min_degree();
  opt.dmax = d_max;
  opt.expected_rank = gx.size();
  try {
    rep.gens = polylin::minimal_generators(rep.layout, slice, opt);
    rep.free = true;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::DegreeCapExhausted) throw;
    polylin::GeneratorOptions o2 = opt;
    o2.expected_rank.reset();
    rep.gens = polylin::minimal_generators(rep.layout, slice, o2);
    rep.free = false;
  }
  return rep;
}

}  // namespace catmg::momentgraph
