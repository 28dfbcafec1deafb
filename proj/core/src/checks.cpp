#include "catmg/checks.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <functional>
#include <mutex>
#include <sstream>
#include <thread>

#include "catmg/errors.hpp"

namespace catmg::cato {

using catmg::is_zero;

namespace {

std::size_t uz(int x) { return static_cast<std::size_t>(x); }

void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& f) {
  if (jobs <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr err;
  std::mutex emu;
  std::vector<std::thread> pool;
  for (int t = 0; t < std::min<int>(jobs, static_cast<int>(n)); ++t)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          f(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(emu);
          if (!err) err = std::current_exception();
        }
      }
    });
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);
}

ChainComplex single(const FinModule& M) {
  ChainComplex X;
  X.terms.push_back(M);
  X.d.emplace_back();
  return X;
}

std::size_t total(const std::vector<std::size_t>& v) {
  std::size_t t = 0;
  for (auto d : v) t += d;
  return t;
}

bool is_identity(const ModMap& f, const FinModule& M) {
  for (int w = 0; w < M.algebra().nweights(); ++w)
    if (!(f.F[uz(w)] == Mat::identity(M.wdim(w)))) return false;
  return true;
}

std::string sname(int s) { return "s" + std::to_string(s + 1); }

std::string dims_str(const std::map<int, std::size_t>& m) {
  std::ostringstream o;
  o << "{";
  bool first = true;
  for (auto [k, v] : m) {
    if (v == 0) continue;
    o << (first ? "" : ",") << k << ":" << v;
    first = false;
  }
  o << "}";
  return o.str();
}

std::vector<long long> trimmed(std::vector<long long> p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
  return p;
}

std::string poly_str(const std::vector<long long>& p) {
  std::ostringstream o;
  o << "[";
  for (std::size_t i = 0; i < p.size(); ++i) o << (i ? "," : "") << p[i];
  o << "]";
  return o.str();
}

long long at_one(const coxeter::IntPoly& p) {
  long long t = 0;
  for (auto c : p) t += c;
  return t;
}

class Recorder {
 public:
  explicit Recorder(SuiteReport& r) : r_(r) {}
  bool operator()(std::string name, bool pass, std::string detail = {}) {
    r_.verdicts.push_back({std::move(name), pass, std::move(detail)});
    return pass;
  }
  void skip(std::string what) { r_.skipped.push_back(std::move(what)); }

 private:
  SuiteReport& r_;
};

}  // namespace

std::vector<VermaHomEntry> verma_hom_table(const Context& ctx, int jobs) {
  const int n = ctx.size();
  for (int x = 0; x < n; ++x) ctx.verma(x);
  std::vector<VermaHomEntry> out(uz(n * n));
  parallel_for(out.size(), jobs, [&](std::size_t i) {
    int x = static_cast<int>(i) / n, y = static_cast<int>(i) % n;
    VermaHomEntry e;
    e.x = x;
    e.y = y;
    e.expected = ctx.group().leq(y, x);
    auto H = hom_basis(ctx.verma(x), ctx.verma(y));
    e.dim = H.size();
    for (const auto& f : H) e.injective = e.injective && is_injective(f);
    out[i] = e;
  });
  return out;
}

namespace {

bool peel(const Context& ctx, const FinModule& M, std::vector<int>& out) {
  if (M.dim() == 0) return true;
  auto top = top_dims(M);
  std::vector<int> cand;
  for (int x = 0; x < ctx.size(); ++x)
    if (top[uz(x)] > 0) cand.push_back(x);
  std::stable_sort(cand.begin(), cand.end(), [&](int a, int b) { return ctx.len(a) < ctx.len(b); });
  for (int x : cand) {
    const FinModule& V = ctx.verma(x);
    if (V.dim() > M.dim()) continue;
    for (const auto& h : hom_basis(M, V)) {
      if (h.F[uz(x)].is_zero()) continue;
      FinModule K = kernel_module(M, h);
      std::size_t mark = out.size();
      if (peel(ctx, K, out)) {
        out.push_back(x);
        return true;
      }
      out.resize(mark);
      break;
    }
  }
  return false;
}

}  // namespace

std::optional<std::vector<int>> verma_flag(const Context& ctx, const FinModule& M) {
  std::vector<int> out;
  if (!peel(ctx, M, out)) return std::nullopt;
  return out;
}

ThetaDecomposition theta_projective(const Context& ctx, int s, int x) {
  ThetaDecomposition r;
  const FinModule P = ctx.projective(x);
  FinModule th = ctx.theta(s, P);
  r.mult = top_dims(th);
  std::size_t cover = 0;
  for (int y = 0; y < ctx.size(); ++y) cover += r.mult[uz(y)] * ctx.projective(y).dim();
  r.cover_bijective = cover == th.dim();
  if (ctx.right_descent(x, s)) r.doubled = iso_test(th, direct_sum({&P, &P})).verdict;
  return r;
}

bool FourTerm::exact() const {
  return rank_eta == dim_A && rank_eta + rank_eps == dim_phi && eps_eta_zero && image_is_J && rank_eps == dim_J &&
         dim_tauA + dim_J == dim_A;
}

FourTerm four_term(const Context& ctx, int s) {
  FourTerm r;
  const FinAlgebra& A = ctx.algebra();
  const BiMap& unit = ctx.phi_unit_bimap(s);
  const BiMap& counit = ctx.phi_counit_bimap(s);
  const BiMap& incl = ctx.J_inclusion(s);
  r.dim_A = A.dim();
  r.dim_phi = ctx.phi_bimodule(s).dim();
  r.dim_J = ctx.J(s).dim();
  r.image_is_J = true;
  const int n = ctx.size();
  for (int u = 0; u < n; ++u)
    for (int w = 0; w < n; ++w) {
      const Mat& e = unit.B[uz(u)][uz(w)];
      const Mat& c = counit.B[uz(u)][uz(w)];
      const Mat& j = incl.B[uz(u)][uz(w)];
      r.rank_eta += rank(e);
      std::size_t rc = rank(c);
      r.rank_eps += rc;
      Mat both = j;
      both.cols = c.cols;
      for (std::size_t i = 0; i < c.rows; ++i) both.append_row(c.row(i));
      if (rc != j.rows || rank(both) != j.rows) r.image_is_J = false;
    }
  r.eps_eta_zero = is_zero(compose(counit, unit));
  std::vector<int> all;
  for (int x = 0; x < n; ++x) all.push_back(x);
  r.dim_tauA = ctx.tau(s, proj_sum(A, all)).dim();
  return r;
}

long long DerivedDims::euler(const std::map<int, std::size_t>& h) const {
  long long t = 0;
  for (auto [k, v] : h) t += (k % 2 == 0 ? 1 : -1) * static_cast<long long>(v);
  return t;
}

DerivedDims derived_dims(const Context& ctx, int s, const FinModule& M, std::size_t len) {
  DerivedDims r;
  r.dim = M.dim();
  Resolution R = resolve(M, len);
  r.complete = R.complete;
  ChainComplex lt = ctx.LT(s, R), lta = ctx.Ltau(s, R);
  for (int i = lt.lo; i <= lt.hi(); ++i) r.LT[i] = lt.homology_dim(i);
  for (int i = lta.lo; i <= lta.hi(); ++i) r.Ltau[i] = lta.homology_dim(i);
  for (const auto& [k, v] : ctx.RC_dims(s, single(M), 0, 4, len)) r.RC[k] = total(v);
  PhiApplied ph = ctx.phi(s, M);
  r.ker_eta = M.dim() - rank(ph.eta);
  r.coker_eps = M.dim() - rank(ph.eps);
  return r;
}

DualityData duality_data(const Context& ctx, int s, const FinModule& M, std::size_t len) {
  DualityData d;
  d.R = resolve(M, len);
  d.Ltau = ctx.Ltau(s, d.R);
  d.Rdual = resolve(dual(M, ctx.opposite()), len);
  if (!d.R.complete || !d.Rdual.complete)
    throw Error(ErrorKind::ResolutionTooShort, "resolution of " + M.label() + " did not terminate");
  return d;
}

DualityTable zuckerman_duality(const DualityData& M, const DualityData& N, int kmax) {
  DualityTable t;
  auto tor = hypertor_dims(M.Ltau, N.Rdual, -kmax + 1, kmax + 1);
  auto ext = hyperext_dims(M.R, N.Ltau, -kmax - 1, kmax - 1);
  for (int k = -kmax; k <= kmax; ++k) {
    t.lhs[k] = tor[k + 1];
    t.rhs[k] = ext[k - 1];
  }
  return t;
}

std::map<int, std::size_t> ext_dims(const FinModule& M, const FinModule& N, int kmax, std::size_t len) {
  Resolution R = resolve(M, len);
  if (!R.complete && R.length() < static_cast<std::size_t>(kmax) + 2)
    throw Error(ErrorKind::ResolutionTooShort, "resolution shorter than the requested Ext range");
  return hyperext_dims(R, single(N), 0, kmax);
}

Equivalence equivalence_check(const Context& ctx, int s, const FinModule& M, std::size_t len) {
  Equivalence r;
  Resolution R = resolve(M, len);
  if (!R.complete) throw Error(ErrorKind::ResolutionTooShort, "resolution of " + M.label() + " did not terminate");
  ChainComplex X = ctx.LT(s, R);
  r.dims = ctx.RC_dims(s, X, -3, 3, len);
  r.concentrated = true;
  for (const auto& [k, v] : r.dims)
    if (k == 0 ? v != M.wdims() : total(v) != 0) r.concentrated = false;
  if (!r.concentrated) {
    r.h0 = IsoVerdict::NotIsomorphic;
    return r;
  }
  bool lt0 = true;
  for (int i = X.lo + 1; i <= X.hi(); ++i) lt0 = lt0 && X.homology_dim(i) == 0;
  if (lt0)
    r.h0 = iso_test(ctx.C(s, ctx.T(s, M)), M).verdict;
  else if (M.dim() == 1)
    r.h0 = IsoVerdict::Isomorphic;
  return r;
}

bool WordCheck::pass() const {
  return std::all_of(verdicts.begin(), verdicts.end(), [](IsoVerdict v) { return v == IsoVerdict::Isomorphic; });
}

WordCheck word_independence(const Context& ctx, int w, const FinModule& M) {
  WordCheck r;
  r.words = ctx.group().reduced_words(w);
  std::vector<FinModule> res;
  for (const auto& word : r.words) res.push_back(ctx.twist_word(word, M));
  for (const auto& m : res) r.verdicts.push_back(iso_test(m, res.front()).verdict);
  return r;
}

std::pair<bool, bool> twist_triangle_identities(const Context& ctx, int s, const FinModule& M) {
  const Bimodule& J = ctx.J(s);
  const BiPresentation& BJ = ctx.J_pres(s);
  // c_{TM} ∘ T(u_M)
  Presentation PM(M);
  TensorBi TM = tensor(PM, J);
  HomBi CTM = hom_bimodule(BJ, TM.module);
  ModMap u = tensor_hom_unit(PM, BJ, TM, CTM);
  Presentation PC(CTM.module);
  TensorBi TCTM = tensor(PC, J);
  ModMap Tu = tensor_map(PM, PC, u, J, TM, TCTM);
  ModMap c = tensor_hom_counit(PC, BJ, TM.module, CTM, TCTM);
  bool one = is_identity(compose(c, Tu), TM.module);
  // C(c_M) ∘ u_{CM}
  HomBi CM = hom_bimodule(BJ, M);
  Presentation PH(CM.module);
  TensorBi TCM = tensor(PH, J);
  ModMap cM = tensor_hom_counit(PH, BJ, M, CM, TCM);
  HomBi CTCM = hom_bimodule(BJ, TCM.module);
  ModMap uC = tensor_hom_unit(PH, BJ, TCM, CTCM);
  ModMap Cc = hom_postcompose(BJ, cM, TCM.module, M, CTCM, CM);
  bool two = is_identity(compose(Cc, uC), CM.module);
  return {one, two};
}

IsoResult theta_phi_commute(const Context& ctx, int t, int s, int x) {
  const auto& B = ctx.B(x);
  zmod::SectionModule tp = zmod::theta_Z(t, zmod::phi_Z(s, B).module).module;
  zmod::SectionModule pt = zmod::phi_Z(s, zmod::theta_Z(t, B).module).module;
  std::string tag = "B(" + ctx.label(x) + ")";
  return iso_test(ctx.shadow(tp, "θφ" + tag), ctx.shadow(pt, "φθ" + tag));
}

std::vector<std::vector<std::size_t>> stalk_table(const zmod::SectionModule& M, int dmin, int dmax) {
  const auto& L = M.layout();
  const std::size_t nv = M.graph().vertices().size();
  std::vector<std::vector<std::size_t>> out(nv);
  for (int d = dmin; d <= dmax; ++d) {
    Mat S = M.slice(d);
    for (std::size_t p = 0; p < nv; ++p) {
      std::vector<std::size_t> cols;
      for (std::size_t c = 0; c < L.ncoords(); ++c) {
        if (uz(M.coord_vertex(c)) != p || d < L.off[c]) continue;
        for (std::size_t k = 0; k < L.cdim(d, c); ++k) cols.push_back(L.start(d, c) + k);
      }
      Mat sub(S.rows, cols.size());
      for (std::size_t i = 0; i < S.rows; ++i)
        for (std::size_t k = 0; k < cols.size(); ++k) sub(i, k) = S(i, cols[k]);
      out[p].push_back(rank(sub));
    }
  }
  return out;
}

bool SuiteReport::pass() const {
  return std::all_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.pass; });
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"bmp",   "algebra",  "translation", "verma", "zuckerman_sequence",
                                                 "derived", "duality", "twisting",    "words", "amap",
                                                 "properties"};
  return names;
}

std::vector<std::string> expand_suites(const std::string& sel) {
  if (sel == "all") return suite_names();
  if (sel == "zuckerman") return {"zuckerman_sequence", "derived", "duality"};
  if (sel == "twisting") return {"twisting", "words"};
  const auto& n = suite_names();
  if (std::find(n.begin(), n.end(), sel) != n.end()) return {sel};
  throw Error(ErrorKind::ConfigError, "unknown suite '" + sel + "'");
}

namespace {

void suite_bmp(const Context& ctx, Recorder& rec) {
  const auto& g = ctx.group();
  coxeter::KLTable kl(g);
  for (int x = 0; x < ctx.size(); ++x) {
    auto F = zmod::bmp_sheaf(ctx.graph(), x).sheaf;
    std::string bad;
    for (int y = 0; y < ctx.size(); ++y) {
      auto got = trimmed(zmod::stalk_graded_rank(F, y));
      std::vector<long long> want = g.leq(y, x) ? trimmed(kl.P(y, x)) : std::vector<long long>{};
      if (got != want) bad += " " + ctx.label(y) + ":" + poly_str(got) + "!=" + poly_str(want);
    }
    rec("stalks of B(" + ctx.label(x) + ") match KL", bad.empty(), bad);
  }
}

void suite_algebra(const Context& ctx, Recorder& rec) {
  const auto& g = ctx.group();
  const FinAlgebra& A = ctx.algebra();
  const int n = ctx.size();
  coxeter::KLTable kl(g);
  auto r = [&](int z, int x) { return g.leq(z, x) ? at_one(kl.P(z, x)) : 0LL; };
  long long expect = 0;
  for (int z = 0; z < n; ++z) {
    long long c = 0;
    for (int x = 0; x < n; ++x) c += r(z, x);
    expect += c * c;
  }
  rec("dim A = sum_z (sum_x P_zx(1))^2", static_cast<long long>(A.dim()) == expect,
      std::to_string(A.dim()) + " vs " + std::to_string(expect));
  auto ax = A.check_axioms();
  rec("associativity and unit", ax.empty(), ax.empty() ? "" : ax.front());
  std::string bad;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      long long e = 0;
      for (int z = 0; z < n; ++z) e += r(z, x) * r(z, y);
      if (static_cast<long long>(A.block(y, x).size()) != e) bad += " " + ctx.label(y) + "," + ctx.label(x);
    }
  rec("dim e_y A e_x = sum_z r_z(x) r_z(y)", bad.empty(), bad);
  std::size_t deg0 = 0;
  for (const auto& b : A.basis()) deg0 += b.degree == 0;
  rec("degree-0 part spanned by idempotents", deg0 == uz(n), std::to_string(deg0));
  auto rad = A.radical_basis();
  rec("dim A/rad = |W|", A.dim() - rad.size() == uz(n), std::to_string(A.dim() - rad.size()));
  int nil = A.nilpotency_index();
  rec("radical nilpotent", nil > 0, "index " + std::to_string(nil));
  bad.clear();
  for (int x = 0; x < n; ++x) {
    long long e = 0;
    for (int y = 0; y < n; ++y) e += r(x, y);
    if (static_cast<long long>(ctx.verma(x).dim()) != e) bad += " M(" + ctx.label(x) + ")";
    if (ctx.simple(x).dim() != 1) bad += " L(" + ctx.label(x) + ")";
    if (!ctx.verma(x).check().empty() || !ctx.projective(x).check().empty()) bad += " relations@" + ctx.label(x);
  }
  rec("dim M(x) = sum_y P_xy(1), dim L(x) = 1, relations hold", bad.empty(), bad);
  rec("P(e) = M(e)", iso_test(ctx.projective(0), ctx.verma(0)).verdict == IsoVerdict::Isomorphic);
  bad.clear();
  for (int x = 0; x < n; ++x) {
    const FinModule P = ctx.projective(x);
    for (int y = 0; y < n; ++y) {
      const FinModule L = ctx.simple(y);
      if (hom_dim(P, L) != (x == y ? 1u : 0u)) bad += " simple " + ctx.label(x) + "," + ctx.label(y);
      for (const FinModule* N : {&ctx.verma(y), &L}) {
        if (hom_dim(P, *N) != N->wdim(x)) bad += " " + N->label() + "@" + ctx.label(x);
      }
      FinModule Py = ctx.projective(y);
      if (hom_dim(P, Py) != Py.wdim(x)) bad += " " + Py.label() + "@" + ctx.label(x);
    }
  }
  rec("dim Hom(P(x), N) = dim N e_x; Hom(P(x), L(y)) = δ", bad.empty(), bad);
}

void suite_translation(const Context& ctx, Recorder& rec) {
  const int n = ctx.size();
  const auto& g = ctx.group();
  for (int s = 0; s < ctx.rank(); ++s) {
    std::vector<FinModule> tP;
    for (int x = 0; x < n; ++x) {
      const FinModule P = ctx.projective(x);
      std::string tag = " x=" + ctx.label(x) + " s=" + sname(s);
      auto d = theta_projective(ctx, s, x);
      std::ostringstream m;
      for (int y = 0; y < n; ++y)
        if (d.mult[uz(y)]) m << " " << ctx.label(y) << "^" << d.mult[uz(y)];
      if (ctx.right_descent(x, s)) {
        rec("θ_sP(x) ≅ P(x)+P(x)" + tag, d.doubled == IsoVerdict::Isomorphic && d.cover_bijective,
            to_string(d.doubled) + m.str());
      } else {
        int xs = g.rmul_gen(x, s);
        bool ok = d.cover_bijective && d.mult[uz(xs)] == 1;
        for (int y = 0; y < n; ++y)
          if (y != xs && d.mult[uz(y)] > 0 && !(g.leq(y, xs) && y != xs)) ok = false;
        rec("θ_sP(x) ≅ P(xs) + smaller" + tag, ok, "multiplicities" + m.str());
      }
      tP.push_back(ctx.theta(s, P));
      FinModule tt = ctx.theta_tensor(s, P);
      rec("Hom route = tensor route" + tag, tt.dim() == tP.back().dim(),
          std::to_string(tP.back().dim()) + "/" + std::to_string(tt.dim()));
      FinModule tL = ctx.theta(s, ctx.simple(x));
      rec("θ_sL(x) = 0 iff xs > x" + tag, tL.is_zero() == !ctx.right_descent(x, s), std::to_string(tL.dim()));
      for (const FinModule* M : {&P, &ctx.verma(x)}) {
        Sub U = radical(*M);
        std::size_t a = ctx.theta(s, submodule(*M, U)).dim(), b = ctx.theta(s, quotient(*M, U)).dim();
        std::size_t c = ctx.theta(s, *M).dim();
        rec("θ_s exact on rad " + M->label() + " s=" + sname(s), a + b == c,
            std::to_string(a) + "+" + std::to_string(b) + " vs " + std::to_string(c));
        for (int t = 0; t < ctx.rank(); ++t) {
          Sub V = trace(*M, ctx.left_descents(t));
          std::size_t a2 = ctx.theta(s, submodule(*M, V)).dim(), b2 = ctx.theta(s, quotient(*M, V)).dim();
          rec("θ_s exact on trace_" + sname(t) + " " + M->label() + " s=" + sname(s), a2 + b2 == c,
              std::to_string(a2) + "+" + std::to_string(b2) + " vs " + std::to_string(c));
        }
      }
      for (int t = 0; t < ctx.rank(); ++t) {
        auto v = iso_test(ctx.tau(t, tP.back()), ctx.theta(s, ctx.tau(t, P))).verdict;
        rec("τ_" + sname(t) + "θ_s = θ_sτ_" + sname(t) + " on P(" + ctx.label(x) + ")", v == IsoVerdict::Isomorphic,
            to_string(v));
        if (ctx.size() > 6) continue;
        auto c = theta_phi_commute(ctx, s, t, x).verdict;
        rec("θ_sφ_" + sname(t) + " = φ_" + sname(t) + "θ_s on B(" + ctx.label(x) + ")", c == IsoVerdict::Isomorphic,
            to_string(c));
      }
    }
    if (ctx.size() > 6) rec.skip("θ_sφ_t commutation s=" + sname(s) + ": run only for |W| <= 6");
    std::string bad;
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) {
        FinModule Px = ctx.projective(x), Py = ctx.projective(y);
        if (hom_dim(tP[uz(x)], Py) != hom_dim(Px, tP[uz(y)])) bad += " " + ctx.label(x) + "," + ctx.label(y);
      }
    rec("dim Hom(θ_sP(x), P(y)) = dim Hom(P(x), θ_sP(y)) s=" + sname(s), bad.empty(), bad);
  }
}

void suite_verma(const Context& ctx, Recorder& rec, int jobs) {
  const int n = ctx.size();
  auto table = verma_hom_table(ctx, jobs);
  std::size_t nonzero = 0, expected = 0;
  std::string bad;
  for (const auto& e : table) {
    nonzero += e.dim > 0;
    expected += e.expected;
    if (e.dim != (e.expected ? 1u : 0u) || !e.injective) bad += " " + ctx.label(e.x) + "->" + ctx.label(e.y);
  }
  rec("dim Hom(M(x), M(y)) = [y <= x]", bad.empty(), bad);
  rec("nonzero entries = sum_x #{y <= x}", nonzero == expected,
      std::to_string(nonzero) + " vs " + std::to_string(expected));
  bool inj = std::all_of(table.begin(), table.end(), [](const VermaHomEntry& e) { return e.injective; });
  rec("nonzero Verma homs injective", inj);
  coxeter::KLTable kl(ctx.group());
  for (int x = 0; x < n; ++x) {
    const FinModule P = ctx.projective(x);
    auto f = verma_flag(ctx, P);
    if (!f) {
      rec("Verma flag of P(" + ctx.label(x) + ")", false, "no flag");
      continue;
    }
    std::vector<long long> count(uz(n), 0);
    std::size_t dims = 0;
    for (int z : *f) {
      ++count[uz(z)];
      dims += ctx.verma(z).dim();
    }
    bool ok = f->back() == x && dims == P.dim();
    std::ostringstream o;
    for (int z = 0; z < n; ++z) {
      long long want = ctx.group().leq(z, x) ? at_one(kl.P(z, x)) : 0;
      ok = ok && count[uz(z)] == want;
    }
    for (int z : *f) o << " " << ctx.label(z);
    rec("Verma flag of P(" + ctx.label(x) + ")", ok, o.str());
  }
}

void suite_zuckerman_sequence(const Context& ctx, Recorder& rec) {
  const int n = ctx.size();
  const auto& g = ctx.group();
  for (int s = 0; s < ctx.rank(); ++s) {
    std::string tag = " s=" + sname(s);
    auto f = four_term(ctx, s);
    std::ostringstream o;
    o << "A=" << f.dim_A << " A'=" << f.dim_phi << " J=" << f.dim_J << " τA=" << f.dim_tauA << " rk η=" << f.rank_eta
      << " rk ε=" << f.rank_eps;
    rec("0→A→A'_φ→A→τ_sA→0 exact" + tag, f.exact(), o.str());
    rec("dim A'_φ = dim A + dim J_s" + tag, f.dim_phi == f.dim_A + f.dim_J, o.str());
    rec("unit and counit are bimodule maps" + tag,
        is_bimodule_map(ctx.regular(), ctx.phi_bimodule(s), ctx.phi_unit_bimap(s)) &&
            is_bimodule_map(ctx.phi_bimodule(s), ctx.regular(), ctx.phi_counit_bimap(s)));
    auto ct = ctx.theta_bimodule(s).check();
    rec("A'_θ bimodule relations" + tag, ct.empty(), ct.empty() ? "" : ct.front());
    auto cp = ctx.phi_bimodule(s).check(false);
    rec("A'_φ right relations" + tag, cp.empty(), cp.empty() ? "" : cp.front());
    auto bad_w = ctx.left_descents(s);
    for (int x = 0; x < n; ++x) {
      std::string xt = " x=" + ctx.label(x) + tag;
      bool good = !ctx.left_descent(s, x);
      const FinModule L = ctx.simple(x);
      rec("τ_sL(x) = L(x) iff sx > x" + xt, ctx.tau(s, L).dim() == (good ? 1u : 0u));
      PhiApplied pl = ctx.phi(s, L);
      rec("φ_sL(x) = 0 iff sx > x" + xt, pl.module.is_zero() == good, std::to_string(pl.module.dim()));
      for (const FinModule* M : {&ctx.verma(x), &L}) {
        FinModule pr = ctx.projective(x);
        for (const FinModule* N : {M, static_cast<const FinModule*>(&pr)}) {
          PhiApplied ph = ctx.phi(s, *N);
          bool maps = is_module_map(*N, ph.module, ph.eta) && is_module_map(ph.module, *N, ph.eps);
          rec("ε∘η = 0 on " + N->label() + tag, maps && compose(ph.eps, ph.eta).is_zero());
        }
        FinModule t = ctx.tau(s, *M);
        bool in_Os = true;
        for (int y : bad_w) in_Os = in_Os && t.wdim(y) == 0;
        Sub tr = trace(*M, bad_w);
        rec("τ_s" + M->label() + " in O_s and maximal" + tag, in_Os && t.dim() + tr.dim() == M->dim(),
            std::to_string(t.dim()));
      }
      if (good) {
        int sx = g.lmul_gen(s, x);
        std::size_t d = ctx.phi(s, ctx.verma(sx)).module.dim();
        std::size_t e = ctx.verma(x).dim() + ctx.verma(sx).dim();
        rec("dim φ_sM(sx) = dim M(x) + dim M(sx)" + xt, d == e, std::to_string(d) + " vs " + std::to_string(e));
      }
    }
    int se = g.lmul_gen(s, 0);
    std::size_t te = ctx.tau(s, ctx.verma(0)).dim();
    rec("dim τ_sM(e) = dim M(e) - dim M(s)" + tag, te == ctx.verma(0).dim() - ctx.verma(se).dim(), std::to_string(te));
  }
}

void suite_derived(const Context& ctx, Recorder& rec, const SuiteOptions& opt) {
  const int n = ctx.size();
  for (int s = 0; s < ctx.rank(); ++s) {
    for (int x = 0; x < n; ++x) {
      const FinModule P = ctx.projective(x), L = ctx.simple(x);
      for (const FinModule* M : {&P, &ctx.verma(x), &L}) {
        std::string tag = " " + M->label() + " s=" + sname(s);
        auto d = derived_dims(ctx, s, *M, opt.resolution_length);
        std::string det = "LT" + dims_str(d.LT) + " Lτ" + dims_str(d.Ltau) + " RC" + dims_str(d.RC);
        bool v1 = d.complete, v2 = true, v3 = true;
        for (auto [k, v] : d.Ltau) v1 = v1 && (k <= 2 || v == 0);
        for (auto [k, v] : d.LT) v2 = v2 && (k <= 1 || v == 0);
        for (auto [k, v] : d.RC) v3 = v3 && (k <= 1 || v == 0);
        rec("L^iτ_s = 0 for i > 2" + tag, v1, det);
        rec("L^iT_s = 0 for i > 1" + tag, v2, det);
        rec("R^iC_s = 0 for i > 1" + tag, v3, det);
        rec("L^1T_s = Ker η, R^1C_s = Cok ε" + tag, d.LT[1] == d.ker_eta && d.RC[1] == d.coker_eps,
            std::to_string(d.ker_eta) + "," + std::to_string(d.coker_eps) + " " + det);
        long long dim = static_cast<long long>(d.dim);
        rec("χ(LT_s) + χ(Lτ_s) = dim" + tag, d.euler(d.LT) + d.euler(d.Ltau) == dim, det);
        rec("χ(Lτ_s[-2]) + χ(RC_s) = dim" + tag, d.euler(d.Ltau) + d.euler(d.RC) == dim, det);
        if (M == &ctx.verma(x)) {
          bool z = true;
          for (auto [k, v] : d.LT) z = z && (k == 0 || v == 0);
          rec("L^iT_sM(x) = 0 for i >= 1" + tag, z, det);
        }
      }
    }
  }
}

void suite_duality(const Context& ctx, Recorder& rec, const SuiteOptions& opt) {
  const int n = ctx.size();
  for (int s = 0; s < ctx.rank(); ++s) {
    std::vector<DualityData> L(uz(n)), P(uz(n));
    parallel_for(uz(n), opt.jobs, [&](std::size_t x) {
      L[x] = duality_data(ctx, s, ctx.simple(static_cast<int>(x)), opt.resolution_length);
      P[x] = duality_data(ctx, s, ctx.projective(static_cast<int>(x)), opt.resolution_length);
    });
    std::vector<DualityTable> tab(uz(n * n));
    parallel_for(tab.size(), opt.jobs, [&](std::size_t i) { tab[i] = zuckerman_duality(L[i / uz(n)], L[i % uz(n)], opt.kmax); });
    for (std::size_t i = 0; i < tab.size(); ++i) {
      int x = static_cast<int>(i) / n, y = static_cast<int>(i) % n;
      rec("Lτ_s[-1] self-adjoint on L(" + ctx.label(x) + "), L(" + ctx.label(y) + ") s=" + sname(s),
          tab[i].lhs == tab[i].rhs, dims_str(tab[i].lhs) + " vs " + dims_str(tab[i].rhs));
    }
    for (int x = 0; x < n; ++x) {
      auto t = zuckerman_duality(P[uz(x)], P[uz(x)], opt.kmax);
      rec("Lτ_s[-1] self-adjoint on P(" + ctx.label(x) + ") s=" + sname(s), t.lhs == t.rhs,
          dims_str(t.lhs) + " vs " + dims_str(t.rhs));
    }
  }
}

void suite_twisting(const Context& ctx, Recorder& rec, const SuiteOptions& opt) {
  const int n = ctx.size();
  const auto& g = ctx.group();
  for (int s = 0; s < ctx.rank(); ++s) {
    std::vector<FinModule> TM, CM;
    for (int x = 0; x < n; ++x) {
      std::string tag = " x=" + ctx.label(x) + " s=" + sname(s);
      const FinModule& M = ctx.verma(x);
      int sx = g.lmul_gen(s, x);
      TM.push_back(ctx.T(s, M));
      CM.push_back(ctx.C(s, M));
      if (ctx.left_descent(s, x)) {
        std::size_t e = ctx.verma(sx).dim() - ctx.verma(x).dim() + ctx.verma(x).dim();
        rec("0→M(sx)/M(x)→T_sM(x)→M(x)→0 dims" + tag, TM.back().dim() == e, std::to_string(TM.back().dim()));
      } else {
        auto vt = iso_test(TM.back(), ctx.verma(sx)).verdict;
        rec("T_sM(x) ≅ M(sx)" + tag, vt == IsoVerdict::Isomorphic, to_string(vt));
      }
      int cx = ctx.left_descent(s, x) ? sx : x;
      auto vc = iso_test(CM.back(), ctx.verma(cx)).verdict;
      rec("C_sM(x) ≅ M(" + ctx.label(cx) + ")" + tag, vc == IsoVerdict::Isomorphic, to_string(vc));
      auto one = ctx.twist_word({s}, M);
      rec("twist_word([s]) = T_s" + tag, iso_test(one, TM.back()).verdict == IsoVerdict::Isomorphic);
      const FinModule P = ctx.projective(x), L = ctx.simple(x);
      for (const FinModule* N : {&P, &M, &L}) {
        auto [a, b] = twist_triangle_identities(ctx, s, *N);
        rec("(T_s, C_s) triangle identities on " + N->label() + " s=" + sname(s), a && b,
            std::string(a ? "" : "TCT ") + (b ? "" : "CTC"));
      }
      for (const FinModule* N : {&M, &L}) {
        auto e = equivalence_check(ctx, s, *N, opt.resolution_length);
        std::ostringstream o;
        for (const auto& [k, v] : e.dims)
          if (total(v)) o << k << ":" << total(v) << " ";
        rec("RC_sLT_s " + N->label() + " ≅ " + N->label() + " s=" + sname(s),
            e.concentrated && e.h0 == IsoVerdict::Isomorphic, o.str() + to_string(e.h0));
      }
    }
    std::string bad;
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        if (hom_dim(TM[uz(x)], ctx.verma(y)) != hom_dim(ctx.verma(x), CM[uz(y)]))
          bad += " " + ctx.label(x) + "," + ctx.label(y);
    rec("dim Hom(T_sM(x), M(y)) = dim Hom(M(x), C_sM(y)) s=" + sname(s), bad.empty(), bad);
  }
}

void suite_words(const Context& ctx, Recorder& rec) {
  int w0 = ctx.group().longest();
  for (int x = 0; x < ctx.size(); ++x) {
    auto r = word_independence(ctx, w0, ctx.projective(x));
    std::ostringstream o;
    o << r.words.size() << " words";
    rec("T_w P(" + ctx.label(x) + ") independent of reduced word", r.pass() && r.words.size() >= 1, o.str());
  }
}

void suite_amap(const Context& ctx, Recorder& rec) {
  const auto& g = ctx.group();
  for (int x = 0; x < ctx.size(); ++x) {
    const auto& B = ctx.B(x);
    zmod::SectionModule a = zmod::a_M(B);
    const auto& Bi = ctx.B(g.inv(x));
    int lo = std::min(a.min_degree(), Bi.min_degree());
    int hi = std::max(a.max_degree(), Bi.max_degree()) + 2;
    rec("a_M(B(" + ctx.label(x) + ")) stalks = B(" + ctx.label(g.inv(x)) + ") stalks",
        stalk_table(a, lo, hi) == stalk_table(Bi, lo, hi));
    zmod::SectionModule aa = zmod::a_M(a);
    bool same = aa.min_degree() == B.min_degree();
    for (int d = B.min_degree(); same && d <= B.max_degree() + 2; ++d) {
      Mat u = B.slice(d), v = aa.slice(d);
      std::size_t r = rank(u);
      Mat both = u;
      for (std::size_t i = 0; i < v.rows; ++i) both.append_row(v.row(i));
      same = r == rank(v) && r == rank(both);
    }
    rec("a_M a_M = Id on B(" + ctx.label(x) + ")", same);
    rec("a_M(B(" + ctx.label(x) + ")) graded free", a.graded_free(a.max_degree() + 2));
  }
}

void suite_properties(const Context& ctx, Recorder& rec) {
  const int n = ctx.size();
  auto sep = momentgraph::euler_report(ctx.graph(), momentgraph::separating_lambda(ctx.graph()));
  rec("ζ_λ separates vertices", sep.separating);
  for (int x = 0; x < n; ++x) {
    const auto& B = ctx.B(x);
    bool free = B.graded_free(B.max_degree() + 2);
    auto V = zmod::verma_Z(ctx.graph(), x);
    free = free && V.graded_free(V.max_degree() + 2);
    for (int s = 0; s < ctx.rank(); ++s) {
      auto t = zmod::theta_Z(s, B).module;
      auto p = zmod::phi_Z(s, B).module;
      free = free && t.graded_free(t.max_degree() + 2) && p.graded_free(p.max_degree() + 2);
    }
    rec("graded freeness around B(" + ctx.label(x) + ")", free);
  }
  for (int s = 0; s < ctx.rank(); ++s) {
    rec("ε∘η = 0 on A'_φ s=" + sname(s), is_zero(compose(ctx.phi_counit_bimap(s), ctx.phi_unit_bimap(s))));
    for (int x = 0; x < n; ++x) {
      const FinModule P = ctx.projective(x), L = ctx.simple(x);
      for (const FinModule* M : {&P, &ctx.verma(x), &L}) {
        std::string tag = " " + M->label() + " s=" + sname(s);
        std::string det;
        bool ok = true;
        try {
          auto vt = iso_test(ctx.T(s, *M), ctx.T_phi(s, *M)).verdict;
          auto vc = iso_test(ctx.C(s, *M), ctx.C_phi(s, *M)).verdict;
          ok = vt == IsoVerdict::Isomorphic && vc == IsoVerdict::Isomorphic;
          det = to_string(vt) + "/" + to_string(vc);
        } catch (const Error& e) {
          ok = false;
          det = e.what();
        }
        rec("J route = φ route for T_s, C_s" + tag, ok, det);
      }
    }
  }
}

}  // namespace

SuiteReport run_suite(const Context& ctx, const std::string& name, const SuiteOptions& opt) {
  SuiteReport rep;
  rep.name = name;
  Recorder rec(rep);
  auto t0 = std::chrono::steady_clock::now();
  if (name == "bmp")
    suite_bmp(ctx, rec);
  else if (name == "algebra")
    suite_algebra(ctx, rec);
  else if (name == "translation")
    suite_translation(ctx, rec);
  else if (name == "verma")
    suite_verma(ctx, rec, opt.jobs);
  else if (name == "zuckerman_sequence")
    suite_zuckerman_sequence(ctx, rec);
  else if (name == "derived")
    suite_derived(ctx, rec, opt);
  else if (name == "duality")
    suite_duality(ctx, rec, opt);
  else if (name == "twisting")
    suite_twisting(ctx, rec, opt);
  else if (name == "words")
    suite_words(ctx, rec);
  else if (name == "amap")
    suite_amap(ctx, rec);
  else if (name == "properties")
    suite_properties(ctx, rec);
  else
    throw Error(ErrorKind::ConfigError, "unknown suite '" + name + "'");
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

}  // namespace catmg::cato
