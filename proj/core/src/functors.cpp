#include "catmg/functors.hpp"

#include <algorithm>
#include <functional>

namespace catmg::cato {

using catmg::is_zero;
using zmod::FiberMap;
using zmod::HomModule;
using zmod::SectionModule;

namespace {

std::size_t uz(int x) { return static_cast<std::size_t>(x); }

// e_x X e_y = Hom_Z(B(y), F B(x)) ⊗ C.
struct FBimodule {
  std::vector<std::unique_ptr<zmod::Translated>> FB;
  std::vector<std::unique_ptr<HomModule>> H;  // [x * n + y]
  std::vector<std::vector<FiberMap>> gens;    // [x * n + y]
  const HomModule& hom(int n, int x, int y) const { return *H[uz(x * n + y)]; }
  const std::vector<FiberMap>& gen(int n, int x, int y) const { return gens[uz(x * n + y)]; }
};

void put_row(Mat& m, std::size_t i, const Vec& c) {
  for (std::size_t j = 0; j < c.size(); ++j) m(i, j) = c[j];
}

// Left action of a ∈ e_l A e_r sends e_r X e_w to e_l X e_w by F(a) ∘ ξ.
Bimodule build_fbimodule(const FinAlgebra& A, int n, const std::vector<std::unique_ptr<SectionModule>>& B,
                         FBimodule& F, const std::vector<FiberMap>& rep,
                         const std::function<FiberMap(std::size_t)>& left, const std::string& label) {
  std::vector<std::vector<std::size_t>> d(uz(n), std::vector<std::size_t>(uz(n)));
  F.H.resize(uz(n * n));
  F.gens.resize(uz(n * n));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      auto H = std::make_unique<HomModule>(*B[uz(y)], F.FB[uz(x)]->module);
      if (H->rank() != H->expected_rank())
        throw Error(ErrorKind::DegreeCapExhausted, "Hom into a translated module is not free of the expected rank");
      for (std::size_t j = 0; j < H->rank(); ++j) F.gens[uz(x * n + y)].push_back(H->hom(j));
      d[uz(x)][uz(y)] = H->rank();
      F.H[uz(x * n + y)] = std::move(H);
    }
  std::vector<std::vector<Mat>> rho, lam;
  for (std::size_t a : A.arrows()) {
    int l = A[a].left, r = A[a].right;
    std::vector<Mat> ro, la;
    for (int u = 0; u < n; ++u) {
      const auto& g = F.gen(n, u, l);
      Mat m(g.size(), d[uz(u)][uz(r)]);
      for (std::size_t i = 0; i < g.size(); ++i) put_row(m, i, F.hom(n, u, r).reduce(zmod::compose(g[i], rep[a])));
      ro.push_back(std::move(m));
    }
    FiberMap fa = left(a);
    for (int w = 0; w < n; ++w) {
      const auto& g = F.gen(n, r, w);
      Mat m(g.size(), d[uz(l)][uz(w)]);
      for (std::size_t i = 0; i < g.size(); ++i) put_row(m, i, F.hom(n, l, w).reduce(zmod::compose(fa, g[i])));
      la.push_back(std::move(m));
    }
    rho.push_back(std::move(ro));
    lam.push_back(std::move(la));
  }
  return Bimodule(A, std::move(d), std::move(rho), std::move(lam), label);
}

FiberMap scalar_fiber(const SectionModule& M, const polylin::Poly& p, int degree) {
  FiberMap f = zmod::identity_fiber(M);
  f.degree = degree;
  for (auto& m : f.F)
    for (std::size_t i = 0; i < m.size(); ++i) m[i][i] = p;
  return f;
}

}  // namespace

struct Context::SData {
  FBimodule th, ph;
  Bimodule theta, phi;
  std::unique_ptr<BiPresentation> theta_p, phi_p, J_p;
  BiMap unit, counit, J_incl;
  Bimodule J, AJ;
};

Context::Context(const coxeter::CoxeterSystem& sys, const zmod::BMPOptions& opt) {
  group_ = std::make_unique<coxeter::Group>(sys);
  if (!group_->finite()) throw Error(ErrorKind::ConfigError, "the algebra needs a finite group");
  graph_ = std::make_unique<momentgraph::MomentGraph>(*group_, group_->longest());
  n_ = static_cast<int>(group_->size());
  for (int p = 0; p < n_; ++p)
    if (graph_->vertices()[uz(p)] != p) throw Error(ErrorKind::IncompatibleVertexSet, "vertex order");
  for (int x = 0; x < n_; ++x) B_.push_back(std::make_unique<SectionModule>(zmod::sections_B(*graph_, x, opt)));
  homs_.resize(uz(n_ * n_));
  first_.assign(uz(n_ * n_), 0);
  std::vector<AlgBasis> basis;
  std::vector<std::size_t> idem(uz(n_));
  for (int l = 0; l < n_; ++l)
    for (int r = 0; r < n_; ++r) {
      auto H = std::make_unique<HomModule>(B(r), B(l));
      if (H->rank() != H->expected_rank())
        throw Error(ErrorKind::DegreeCapExhausted, "Hom_Z(B(y), B(x)) is not free of the expected rank");
      if (l == r) {
        FiberMap id = zmod::identity_fiber(B(l));
        Vec c = H->reduce(id);
        std::size_t j = 0;
        while (j < c.size() && (sgn(c[j]) == 0 || H->degree(j) != 0)) ++j;
        if (j == c.size()) throw Error(ErrorKind::GradingAssertFailed, "identity is not a degree-0 generator");
        H->set_generator(j, id);
        idem[uz(l)] = basis.size() + j;
      }
      first_[uz(l * n_ + r)] = basis.size();
      for (std::size_t j = 0; j < H->rank(); ++j) {
        basis.push_back({l, r, H->degree(j)});
        rep_.push_back(H->hom(j));
      }
      homs_[uz(l * n_ + r)] = std::move(H);
    }
  std::vector<std::pair<int, int>> lr;
  for (const auto& b : basis) lr.emplace_back(b.left, b.right);
  auto product = [this, &lr](std::size_t a, std::size_t b) {
    int l = lr[a].first, r = lr[b].second;
    Vec c = hom(r, l).reduce(zmod::compose(rep_[a], rep_[b]));
    SparseVec out;
    std::size_t f = first_[uz(l * n_ + r)];
    for (std::size_t j = 0; j < c.size(); ++j)
      if (sgn(c[j]) != 0) out.emplace_back(f + j, c[j]);
    return out;
  };
  A_ = FinAlgebra(n_, std::move(basis), std::move(idem), product);
  Aop_ = A_.opposite();
  reg_ = regular_bimodule(A_);
  reg_pres_ = std::make_unique<BiPresentation>(reg_);
}

Context::~Context() = default;

const HomModule& Context::hom(int src, int dst) const { return *homs_[uz(dst * n_ + src)]; }

std::string Context::basis_label(std::size_t a) const {
  const auto& b = A_[a];
  return label(b.left) + "<-" + label(b.right) + "#" + std::to_string(a - first_[uz(b.left * n_ + b.right)]);
}

std::vector<int> Context::left_descents(int s) const {
  std::vector<int> out;
  for (int x = 0; x < n_; ++x)
    if (left_descent(s, x)) out.push_back(x);
  return out;
}

FinModule Context::projective(int x) const {
  FinModule P = proj_sum(A_, {x});
  P.set_label("P(" + label(x) + ")");
  return P;
}

FinModule Context::simple(int x) const {
  FinModule L = cato::simple(A_, x);
  L.set_label("L(" + label(x) + ")");
  return L;
}

FinModule Context::shadow(const SectionModule& N, const std::string& label) const {
  std::vector<std::unique_ptr<HomModule>> H;
  std::vector<std::vector<FiberMap>> gens;
  std::vector<std::size_t> wdim;
  for (int y = 0; y < n_; ++y) {
    H.push_back(std::make_unique<HomModule>(B(y), N));
    if (H.back()->rank() != H.back()->expected_rank())
      throw Error(ErrorKind::DegreeCapExhausted, "Hom_Z(B(y), " + label + ") is not free of the expected rank");
    std::vector<FiberMap> g;
    for (std::size_t j = 0; j < H.back()->rank(); ++j) g.push_back(H.back()->hom(j));
    wdim.push_back(g.size());
    gens.push_back(std::move(g));
  }
  std::vector<Mat> arr;
  for (std::size_t a : A_.arrows()) {
    int l = A_[a].left, r = A_[a].right;
    Mat m(wdim[uz(l)], wdim[uz(r)]);
    for (std::size_t i = 0; i < wdim[uz(l)]; ++i) put_row(m, i, H[uz(r)]->reduce(zmod::compose(gens[uz(l)][i], rep_[a])));
    arr.push_back(std::move(m));
  }
  return FinModule(A_, std::move(wdim), std::move(arr), label);
}

const FinModule& Context::verma(int x) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = verma_.find(x);
  if (it != verma_.end()) return *it->second;
  auto V = std::make_unique<SectionModule>(zmod::verma_Z(*graph_, x));
  auto M = std::make_unique<FinModule>(shadow(*V, "M(" + label(x) + ")"));
  V_.push_back(std::move(V));
  return *verma_.emplace(x, std::move(M)).first->second;
}

const Context::SData& Context::sdata(int s) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = s_.find(s);
  if (it != s_.end()) return *it->second;
  if (s < 0 || s >= rank()) throw Error(ErrorKind::ConfigError, "generator index out of range");
  auto D = std::make_unique<SData>();
  const std::string sl = "s" + std::to_string(s + 1);
  for (int x = 0; x < n_; ++x) {
    D->th.FB.push_back(std::make_unique<zmod::Translated>(zmod::theta_Z(s, B(x))));
    D->ph.FB.push_back(std::make_unique<zmod::Translated>(zmod::phi_Z(s, B(x))));
  }
  D->theta = build_fbimodule(A_, n_, B_, D->th, rep_, [&](std::size_t a) {
    return zmod::theta_fiber(s, B(A_[a].right), B(A_[a].left), rep_[a]);
  }, "A'_theta_" + sl);
  D->phi = build_fbimodule(A_, n_, B_, D->ph, rep_, [&](std::size_t a) {
    return zmod::phi_fiber(s, B(A_[a].right), B(A_[a].left), rep_[a]);
  }, "A'_phi_" + sl);
  // left V* operators on A'_φ
  const int nv = graph_->nvars();
  for (int v = 0; v < nv; ++v) {
    std::vector<Mat> ops;
    for (int x = 0; x < n_; ++x) {
      FiberMap pv = zmod::phi_fiber(s, B(x), B(x), scalar_fiber(B(x), polylin::Poly::var(nv, v), 2));
      for (int y = 0; y < n_; ++y) {
        const auto& g = D->ph.gen(n_, x, y);
        Mat m(g.size(), g.size());
        for (std::size_t i = 0; i < g.size(); ++i) put_row(m, i, D->ph.hom(n_, x, y).reduce(zmod::compose(pv, g[i])));
        ops.push_back(std::move(m));
      }
    }
    D->phi.vops.push_back(std::move(ops));
  }
  // η: a ↦ η_{B(x)} ∘ a and ε: ξ ↦ ε_{B(x)} ∘ ξ
  D->unit.B.assign(uz(n_), {});
  D->counit.B.assign(uz(n_), {});
  for (int x = 0; x < n_; ++x) {
    FiberMap eta = zmod::phi_unit(s, B(x));
    FiberMap eps = zmod::phi_counit(s, B(x));
    for (int y = 0; y < n_; ++y) {
      const auto& blk = A_.block(x, y);
      const auto& g = D->ph.gen(n_, x, y);
      Mat u(blk.size(), g.size()), c(g.size(), blk.size());
      for (std::size_t i = 0; i < blk.size(); ++i) put_row(u, i, D->ph.hom(n_, x, y).reduce(zmod::compose(eta, rep_[blk[i]])));
      for (std::size_t i = 0; i < g.size(); ++i) put_row(c, i, hom(y, x).reduce(zmod::compose(eps, g[i])));
      D->unit.B[uz(x)].push_back(std::move(u));
      D->counit.B[uz(x)].push_back(std::move(c));
    }
  }
  D->theta_p = std::make_unique<BiPresentation>(D->theta);
  D->phi_p = std::make_unique<BiPresentation>(D->phi);
  std::vector<int> bad;
  for (int x = 0; x < n_; ++x)
    if (left_descent(s, x)) bad.push_back(x);
  auto U = idempotent_ideal(A_, bad);
  D->J = sub_bimodule(reg_, U, &D->J_incl);
  D->AJ = quotient_bimodule(reg_, U);
  D->J_p = std::make_unique<BiPresentation>(D->J);
  return *s_.emplace(s, std::move(D)).first->second;
}

const Bimodule& Context::theta_bimodule(int s) const { return sdata(s).theta; }
const BiPresentation& Context::theta_pres(int s) const { return *sdata(s).theta_p; }
const Bimodule& Context::phi_bimodule(int s) const { return sdata(s).phi; }
const BiPresentation& Context::phi_pres(int s) const { return *sdata(s).phi_p; }
const BiMap& Context::phi_unit_bimap(int s) const { return sdata(s).unit; }
const BiMap& Context::phi_counit_bimap(int s) const { return sdata(s).counit; }
const Bimodule& Context::J(int s) const { return sdata(s).J; }
const BiPresentation& Context::J_pres(int s) const { return *sdata(s).J_p; }
const BiMap& Context::J_inclusion(int s) const { return sdata(s).J_incl; }
const Bimodule& Context::A_mod_J(int s) const { return sdata(s).AJ; }

namespace {
std::string sname(int s) { return "s" + std::to_string(s + 1); }
}  // namespace

FinModule Context::theta(int s, const FinModule& M) const {
  FinModule R = hom_bimodule(theta_pres(s), M).module;
  R.set_label("theta_" + sname(s) + "(" + M.label() + ")");
  return R;
}

FinModule Context::theta_tensor(int s, const FinModule& M) const {
  if (M.dim() == 0) return zero_module(A_);
  FinModule R = tensor(Presentation(M), theta_bimodule(s)).module;
  R.set_label("theta_" + sname(s) + "(" + M.label() + ")");
  return R;
}

PhiApplied Context::phi(int s, const FinModule& M) const {
  const BiPresentation& P = phi_pres(s);
  HomBi HX = hom_bimodule(P, M);
  HomBi HA = hom_bimodule(*reg_pres_, M);
  PhiApplied out;
  out.eta = hom_precompose(P, *reg_pres_, phi_counit_bimap(s), M, HA, HX);
  out.eps = hom_precompose(*reg_pres_, P, phi_unit_bimap(s), M, HX, HA);
  HX.module.vops = hom_vops(P, M, HX);
  out.module = std::move(HX.module);
  out.module.set_label("phi_" + sname(s) + "(" + M.label() + ")");
  return out;
}

FinModule Context::tau(int s, const FinModule& M) const {
  FinModule R = quotient(M, trace(M, left_descents(s)));
  R.set_label("tau_" + sname(s) + "(" + M.label() + ")");
  return R;
}

FinModule Context::T(int s, const FinModule& M) const {
  if (M.dim() == 0) return zero_module(A_);
  FinModule R = tensor(Presentation(M), J(s)).module;
  R.set_label("T_" + sname(s) + "(" + M.label() + ")");
  return R;
}

FinModule Context::C(int s, const FinModule& M) const {
  FinModule R = hom_bimodule(J_pres(s), M).module;
  R.set_label("C_" + sname(s) + "(" + M.label() + ")");
  return R;
}

namespace {

Mat weight_block(const FinModule& M, const Mat& op, int w) {
  return op.block(M.offset(w), M.offset(w), M.wdim(w), M.wdim(w));
}

}  // namespace

FinModule Context::T_phi(int s, const FinModule& M) const {
  PhiApplied P = phi(s, M);
  ModMap proj;
  FinModule R = cokernel_module(P.module, P.eta, &proj);
  for (const auto& op : P.module.vops)
    for (int w = 0; w < n_; ++w)
      if (!(weight_block(P.module, op, w) * proj.F[uz(w)]).is_zero())
        throw Error(ErrorKind::RouteMismatch, "V* acts nontrivially on Cok(M -> phi_s M)");
  R.set_label("T_" + sname(s) + "(" + M.label() + ")");
  return R;
}

FinModule Context::C_phi(int s, const FinModule& M) const {
  PhiApplied P = phi(s, M);
  ModMap incl;
  FinModule R = kernel_module(P.module, P.eps, &incl);
  for (const auto& op : P.module.vops)
    for (int w = 0; w < n_; ++w)
      if (!(incl.F[uz(w)] * weight_block(P.module, op, w)).is_zero())
        throw Error(ErrorKind::RouteMismatch, "V* acts nontrivially on Ker(phi_s M -> M)");
  R.set_label("C_" + sname(s) + "(" + M.label() + ")");
  return R;
}

FinModule Context::twist_word(const std::vector<int>& word, const FinModule& M) const {
  for (int s : word)
    if (s < 0 || s >= rank()) throw Error(ErrorKind::ConfigError, "generator index out of range");
  if (len(group_->from_word(word)) != static_cast<int>(word.size()))
    throw Error(ErrorKind::NotReducedWord, "word is not reduced");
  FinModule R = M;
  for (auto it = word.rbegin(); it != word.rend(); ++it) R = T(*it, R);
  std::string w;
  for (int s : word) w += "T_" + sname(s);
  R.set_label(w + "(" + M.label() + ")");
  return R;
}

ChainComplex Context::LT(int s, const Resolution& R) const { return tensor_complex(R, J(s)); }
ChainComplex Context::Ltau(int s, const Resolution& R) const { return tensor_complex(R, A_mod_J(s)); }

std::map<int, std::vector<std::size_t>> Context::RC_dims(int s, const ChainComplex& X, int nmin, int nmax,
                                                         std::size_t len) const {
  std::map<int, std::vector<std::size_t>> out;
  for (int n = nmin; n <= nmax; ++n) out[n].assign(uz(n_), 0);
  const BiPresentation& P = J_pres(s);
  for (int u = 0; u < n_; ++u) {
    const FinModule& Ju = P.part(u);
    if (Ju.dim() == 0) continue;
    Resolution Q = resolve(Ju, len);
    if (!Q.complete) throw Error(ErrorKind::ResolutionTooShort, "resolution of e_u J_s did not terminate");
    for (auto [n, d] : hyperext_dims(Q, X, nmin, nmax)) out[n][uz(u)] = d;
  }
  return out;
}

}  // namespace catmg::cato
