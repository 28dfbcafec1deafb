#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "catmg/algebra.hpp"

namespace catmg::cato {

// Finite-dimensional right A-module. Vectors are rows; the basis is grouped by
// weight (M e_x) and arrow k acts by a wdim[left] x wdim[right] matrix.
class FinModule {
 public:
  FinModule() = default;
  FinModule(const FinAlgebra& A, std::vector<std::size_t> wdim, std::vector<Mat> arrows, std::string label = {});

  const FinAlgebra& algebra() const { return *A_; }
  const std::string& label() const { return label_; }
  void set_label(std::string l) { label_ = std::move(l); }
  std::size_t dim() const { return dim_; }
  std::size_t wdim(int x) const { return wdim_[static_cast<std::size_t>(x)]; }
  const std::vector<std::size_t>& wdims() const { return wdim_; }
  std::size_t offset(int x) const { return off_[static_cast<std::size_t>(x)]; }
  const Mat& arrow(std::size_t k) const { return arr_[k]; }
  // Action of an algebra basis element, derived from the arrow matrices.
  const Mat& act(std::size_t a) const;
  // Action of sum_i c[i] * block(l, r)[i].
  Mat act(int l, int r, const Vec& c) const;

  // V* operators (full dim x dim), present only for modules outside O.
  std::vector<Mat> vops;

  bool is_zero() const { return dim_ == 0; }
  // Relations of A that fail on this module (empty = consistent).
  std::vector<std::string> check() const;

 private:
  const FinAlgebra* A_ = nullptr;
  std::vector<std::size_t> wdim_, off_;
  std::size_t dim_ = 0;
  std::vector<Mat> arr_;
  std::string label_;
  std::shared_ptr<std::mutex> mu_ = std::make_shared<std::mutex>();
  std::shared_ptr<std::map<std::size_t, Mat>> cache_ = std::make_shared<std::map<std::size_t, Mat>>();
};

// Module map given weightwise: F[x] has size wdim_M(x) x wdim_N(x).
struct ModMap {
  std::vector<Mat> F;
  Vec apply(const FinModule& M, const FinModule& N, const Vec& v) const;
  bool is_zero() const;
};

ModMap zero_map(const FinModule& M, const FinModule& N);
ModMap identity_map(const FinModule& M);
ModMap compose(const ModMap& g, const ModMap& f);  // g after f
ModMap add(const ModMap& f, const ModMap& g);
ModMap scale(const Q& c, const ModMap& f);
bool is_module_map(const FinModule& M, const FinModule& N, const ModMap& f);
bool is_injective(const ModMap& f);
bool is_surjective(const ModMap& f, const FinModule& N);
std::size_t rank(const ModMap& f);

// Weightwise subspace (rows in weight coordinates).
struct Sub {
  std::vector<Mat> rows;
  std::size_t dim() const;
};

FinModule zero_module(const FinAlgebra& A);
FinModule projective(const FinAlgebra& A, int x);
FinModule simple(const FinAlgebra& A, int x);
FinModule direct_sum(const std::vector<const FinModule*>& parts);
// Inclusion / projection of summand i.
ModMap summand_inclusion(const std::vector<const FinModule*>& parts, std::size_t i);
ModMap summand_projection(const std::vector<const FinModule*>& parts, std::size_t i);

// Submodule generated by weight vectors.
Sub closure(const FinModule& M, const Sub& gens);
FinModule submodule(const FinModule& M, const Sub& U, ModMap* incl = nullptr);
// lift (optional): linear section module -> M onto the chosen complement.
FinModule quotient(const FinModule& M, const Sub& U, ModMap* proj = nullptr, ModMap* lift = nullptr);
Sub kernel(const FinModule& M, const ModMap& f);
Sub image(const FinModule& N, const ModMap& f);
FinModule kernel_module(const FinModule& M, const ModMap& f, ModMap* incl = nullptr);
FinModule cokernel_module(const FinModule& N, const ModMap& f, ModMap* proj = nullptr, ModMap* lift = nullptr);
// M rad = span of M·arrows.
Sub radical(const FinModule& M);
std::vector<std::size_t> top_dims(const FinModule& M);
// Trace of the projectives P(x), x in xs: sum of M e_x A.
Sub trace(const FinModule& M, const std::vector<int>& xs);

// Basis of Hom_A(M, N).
std::vector<ModMap> hom_basis(const FinModule& M, const FinModule& N);
std::size_t hom_dim(const FinModule& M, const FinModule& N);

enum class IsoVerdict { Isomorphic, NotIsomorphic, Indeterminate };
struct IsoResult {
  IsoVerdict verdict = IsoVerdict::Indeterminate;
  std::string witness;
  std::optional<ModMap> map;
};
IsoResult iso_test(const FinModule& M, const FinModule& N);
std::string to_string(IsoVerdict v);

// Presentation data: generators g (weight x_g, vector in M), preimage solver
// for the cover map, and generating relations c[h][g] in e_{x_g} A e_{x_h}.
class Presentation {
 public:
  Presentation() = default;
  explicit Presentation(const FinModule& M, bool with_relations = true);

  const FinModule& module() const { return M_; }
  std::size_t ngens() const { return gw_.size(); }
  int gen_weight(std::size_t g) const { return gw_[g]; }
  const std::vector<int>& gen_weights() const { return gw_; }
  const Vec& gen_vector(std::size_t g) const { return gv_[g]; }
  std::size_t nrels() const { return rw_.size(); }
  int rel_weight(std::size_t h) const { return rw_[h]; }
  const std::vector<int>& rel_weights() const { return rw_; }
  // Coordinates over block(x_g, x_h) of the g-th component of relation h.
  const Vec& rel(std::size_t h, std::size_t g) const { return rc_[h][g]; }
  // m in M e_w as sum_g g·b_g: coordinates over block(x_g, w) per g.
  std::vector<Vec> preimage(int w, const Vec& m) const;

 private:
  FinModule M_;
  std::vector<int> gw_;
  std::vector<Vec> gv_;
  std::vector<int> rw_;
  std::vector<std::vector<Vec>> rc_;
  std::vector<RowSolver> solve_;
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> cols_;  // per weight: (g, position in block)
};

// Module of direct sums of P(x_g) and maps between them given by algebra elements.
FinModule proj_sum(const FinAlgebra& A, const std::vector<int>& weights);
// Map sum_h P(y_h) -> sum_g P(x_g) sending e_{y_h} to sum_g c[h][g].
ModMap proj_map(const FinAlgebra& A, const std::vector<int>& src, const std::vector<int>& dst,
                const std::vector<std::vector<Vec>>& c);

// Minimal projective resolution: step i has generator weights gens[i]; the
// differential P_i -> P_{i-1} sends generator h to sum_g c[i][h][g].
struct Resolution {
  std::vector<std::vector<int>> gens;
  std::vector<std::vector<std::vector<Vec>>> c;
  std::vector<Vec> augmentation;  // generator images in M
  bool complete = false;          // last kernel was zero
  std::size_t length() const { return gens.size(); }
};
Resolution resolve(const FinModule& M, std::size_t max_len);

// Bounded homological complex: terms[i] sits in degree lo + i, d[i]: terms[i] -> terms[i-1].
struct ChainComplex {
  int lo = 0;
  std::vector<FinModule> terms;
  std::vector<ModMap> d;  // d[0] unused
  std::vector<std::string> check() const;
  // Weight dims of H_n.
  std::vector<std::size_t> homology_dims(int n) const;
  std::size_t homology_dim(int n) const;
  FinModule homology(int n) const;
  int hi() const { return lo + static_cast<int>(terms.size()) - 1; }
};

ChainComplex complex_of(const FinModule& M, const Resolution& R);

// Bimodule X = sum_{u,w} e_u X e_w with left and right arrow operators.
// rho[k][u]: d(u, l_k) x d(u, r_k) (right action); lam[k][w]: d(r_k, w) x d(l_k, w)
// (left action a·ξ as ξ ↦ ξ·lam).
class Bimodule {
 public:
  Bimodule() = default;
  Bimodule(const FinAlgebra& A, std::vector<std::vector<std::size_t>> d, std::vector<std::vector<Mat>> rho,
           std::vector<std::vector<Mat>> lam, std::string label = {});

  const FinAlgebra& algebra() const { return *A_; }
  const std::string& label() const { return label_; }
  std::size_t d(int u, int w) const { return d_[static_cast<std::size_t>(u)][static_cast<std::size_t>(w)]; }
  std::size_t dim() const;
  const Mat& rho(std::size_t k, int u) const { return rho_[k][static_cast<std::size_t>(u)]; }
  const Mat& lam(std::size_t k, int w) const { return lam_[k][static_cast<std::size_t>(w)]; }
  // Left action of basis element a on right weight w, derived from arrows.
  const Mat& left(std::size_t a, int w) const;
  Mat left(int l, int r, const Vec& c, int w) const;
  const Mat& right(std::size_t a, int u) const;

  // Right module e_u X.
  FinModule left_part(int u) const;
  // X as a right module, basis ordered by (w, u).
  FinModule right_module() const;
  // X^op over A^op.
  Bimodule opposite(const FinAlgebra& Aop) const;
  // left_relations = false skips the relations of A on the left (A'_φ is only a left Ã-module).
  std::vector<std::string> check(bool left_relations = true) const;

  // Optional left V* operators: vop[k][u*n+w] square.
  std::vector<std::vector<Mat>> vops;

 private:
  const FinAlgebra* A_ = nullptr;
  std::vector<std::vector<std::size_t>> d_;
  std::vector<std::vector<Mat>> rho_, lam_;
  std::string label_;
  std::shared_ptr<std::mutex> mu_ = std::make_shared<std::mutex>();
  std::shared_ptr<std::map<std::pair<std::size_t, int>, Mat>> lcache_ =
      std::make_shared<std::map<std::pair<std::size_t, int>, Mat>>();
  std::shared_ptr<std::map<std::pair<std::size_t, int>, Mat>> rcache_ =
      std::make_shared<std::map<std::pair<std::size_t, int>, Mat>>();
};

// Bimodule map: blocks B[u][w] of size d_X(u,w) x d_Y(u,w).
struct BiMap {
  std::vector<std::vector<Mat>> B;
};
bool is_bimodule_map(const Bimodule& X, const Bimodule& Y, const BiMap& f);
BiMap compose(const BiMap& g, const BiMap& f);
bool is_zero(const BiMap& f);

Bimodule regular_bimodule(const FinAlgebra& A);
// Sub-bimodule / quotient by blockwise subspaces (rows in block coordinates).
Bimodule sub_bimodule(const Bimodule& X, const std::vector<std::vector<Mat>>& U, BiMap* incl = nullptr);
Bimodule quotient_bimodule(const Bimodule& X, const std::vector<std::vector<Mat>>& U, BiMap* proj = nullptr);
// Two-sided ideal A e A for e = sum of e_x, x in xs, as blockwise rows of A.
std::vector<std::vector<Mat>> idempotent_ideal(const FinAlgebra& A, const std::vector<int>& xs);

// Right-module presentation of every e_u X, cached per bimodule.
class BiPresentation {
 public:
  BiPresentation() = default;
  explicit BiPresentation(const Bimodule& X);
  const Bimodule& bimodule() const { return X_; }
  const FinModule& part(int u) const { return parts_[static_cast<std::size_t>(u)]; }
  const Presentation& pres(int u) const { return pres_[static_cast<std::size_t>(u)]; }

 private:
  Bimodule X_;
  std::vector<FinModule> parts_;
  std::vector<Presentation> pres_;
};

// Hom_A(X, M) as a right module, basis rows in tuple coordinates per weight.
struct HomBi {
  FinModule module;
  std::vector<Mat> basis;  // per u: rows over sum_g M e_{w_g}
};
HomBi hom_bimodule(const BiPresentation& X, const FinModule& M);
// Precomposition with a left-weight-preserving bimodule map X -> Y: Hom(Y, M) -> Hom(X, M).
ModMap hom_precompose(const BiPresentation& X, const BiPresentation& Y, const BiMap& f, const FinModule& M,
                      const HomBi& HY, const HomBi& HX);
// Postcomposition with f: M -> N.
ModMap hom_postcompose(const BiPresentation& X, const ModMap& f, const FinModule& M, const FinModule& N,
                       const HomBi& HM, const HomBi& HN);
// Right action of the left V* operators of X on Hom(X, M).
std::vector<Mat> hom_vops(const BiPresentation& X, const FinModule& M, const HomBi& H);

// M ⊗_A X via a presentation of M.
struct TensorBi {
  FinModule module;
  FinModule cover;  // sum_g e_{x_g} X
  ModMap proj;      // cover -> module
  ModMap lift;      // linear section of proj
};
TensorBi tensor(const Presentation& P, const Bimodule& X);
// f ⊗ X for f: M -> M'.
ModMap tensor_map(const Presentation& P, const Presentation& P2, const ModMap& f, const Bimodule& X,
                  const TensorBi& T, const TensorBi& T2);

// m ↦ (ξ ↦ m ⊗ ξ): M -> Hom_A(X, M ⊗ X), H = hom_bimodule(X, T.module).
ModMap tensor_hom_unit(const Presentation& P, const BiPresentation& X, const TensorBi& T, const HomBi& H);
// f ⊗ ξ ↦ f(ξ): Hom_A(X, N) ⊗ X -> N, with PH presenting H.module and T = tensor(PH, X).
ModMap tensor_hom_counit(const Presentation& PH, const BiPresentation& X, const FinModule& N, const HomBi& H,
                         const TensorBi& T);

// Complex P_• ⊗ X for a resolution over A (terms sum_g e_{x_g} X).
ChainComplex tensor_complex(const Resolution& R, const Bimodule& X);

// dim H^n of Tot Hom(Q_•, X_•) where Q_• resolves some module; cohomological n.
std::map<int, std::size_t> hyperext_dims(const Resolution& Q, const ChainComplex& X, int nmin, int nmax);
// dim H_n of Tot(X_• ⊗_A Q_•) for Q_• a resolution over A^op (terms X_j e_{x_g}).
std::map<int, std::size_t> hypertor_dims(const ChainComplex& X, const Resolution& Qop, int nmin, int nmax);

// Dual module over A^op: act = transpose.
FinModule dual(const FinModule& M, const FinAlgebra& Aop);

}  // namespace catmg::cato
