#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "catmg/momentgraph.hpp"

namespace catmg::zmod {

using momentgraph::GSheaf;
using momentgraph::MomentGraph;
using momentgraph::Section;
using polylin::GradedBasis;
using polylin::Layout;
using polylin::Poly;

// Per-coordinate polynomial vector of a module element.
using PolyVec = std::vector<Poly>;

// Graded free S-lattice inside the direct sum of the vertex fibers, with
// componentwise action of the structure algebra.
class SectionModule {
 public:
  SectionModule() = default;
  SectionModule(const MomentGraph& G, std::vector<std::vector<int>> fiber_offsets, GradedBasis basis,
                std::string tag);

  const MomentGraph& graph() const { return *G_; }
  const std::string& tag() const { return tag_; }
  int nvars() const { return layout_.nvars; }
  std::size_t rank() const { return basis_.size(); }
  const GradedBasis& basis() const { return basis_; }
  const Layout& layout() const { return layout_; }
  // Fiber dimension r_z at a vertex position.
  std::size_t fiber(int pos) const { return offsets_[static_cast<std::size_t>(pos)].size(); }
  const std::vector<int>& fiber_offsets(int pos) const { return offsets_[static_cast<std::size_t>(pos)]; }
  std::size_t coord(int pos, std::size_t i) const { return first_[static_cast<std::size_t>(pos)] + i; }
  int coord_vertex(std::size_t c) const { return cpos_[c]; }
  std::vector<int> support() const;
  int min_degree() const;
  int max_degree() const;

  Mat slice(int d) const;
  std::size_t slice_dim(int d) const;
  bool contains(const Vec& v, int d) const;
  // Coefficients c_j with v = sum_j c_j b_j; throws NotInSpan.
  std::vector<Poly> coords(const Vec& v, int d) const;
  Vec combine(const std::vector<Poly>& c, int d) const;
  PolyVec unpack(const Vec& v, int d) const { return layout_.unpack(v, d); }
  Vec pack(const PolyVec& p, int d) const { return layout_.pack(p, d); }
  // Componentwise product with a structure-algebra element of degree dz.
  Vec act(const Section& z, int dz, const Vec& v, int d) const;
  // Matrix of z on the basis: z b_i = sum_j P[i][j] b_j.
  std::vector<std::vector<Poly>> action_matrix(const Section& z, int dz) const;

  bool graded_free(int dmax) const;
  bool closed_under(const Section& z, int dz, int dmax) const;

 private:
  struct SolverCache;
  const SolverCache& solver(int d) const;

  const MomentGraph* G_ = nullptr;
  std::vector<std::vector<int>> offsets_;
  std::vector<std::size_t> first_;
  std::vector<int> cpos_;
  Layout layout_;
  GradedBasis basis_;
  std::string tag_;
  std::shared_ptr<std::mutex> mu_ = std::make_shared<std::mutex>();
  std::shared_ptr<std::map<int, std::shared_ptr<SolverCache>>> cache_ =
      std::make_shared<std::map<int, std::shared_ptr<SolverCache>>>();
};

struct BMPOptions {
  int extra = 4;  // slack added to costalk degree caps
};

struct BMPResult {
  GSheaf sheaf;
  SectionModule sections;  // unshifted global sections
};

BMPResult bmp_sheaf(const MomentGraph& G, int x, const BMPOptions& opt = {});
// Stalk graded ranks: coefficient of q^i = number of generators in degree 2i.
std::vector<long long> stalk_graded_rank(const GSheaf& F, int pos);

SectionModule sections_B(const MomentGraph& G, int x, const BMPOptions& opt = {});
SectionModule verma_Z(const MomentGraph& G, int x);

// Homogeneous S-linear map on bases: f(b_i) = sum_k q[i][k] n_k.
struct ZHom {
  int degree = 0;
  std::vector<std::vector<Poly>> q;
  bool is_zero() const;
};

ZHom identity_hom(const SectionModule& M);
ZHom compose(const ZHom& g, const ZHom& f);  // g after f
ZHom scale(const Poly& p, const ZHom& f);
ZHom add(const ZHom& f, const ZHom& g);
// f(b_i) as an ambient vector of N.
Vec apply(const ZHom& f, const SectionModule& N, std::size_t i, int gi);
bool commutes_with(const ZHom& f, const SectionModule& M, const SectionModule& N, const Section& z, int dz);

struct Translated {
  SectionModule module;
  ZHom unit;    // M<1> -> FM, i.e. degree +1 as a map M -> FM
  ZHom counit;  // FM -> M<-1>, i.e. degree +1 as a map FM -> M
};

Translated theta_Z(int s, const SectionModule& M);
Translated phi_Z(int s, const SectionModule& M);
// F applied to a map f: M -> N.
ZHom theta_hom(int s, const SectionModule& M, const SectionModule& N, const ZHom& f);
ZHom phi_hom(int s, const SectionModule& M, const SectionModule& N, const ZHom& f);
SectionModule a_M(const SectionModule& M);

struct HomOptions {
  int extra = 4;
  std::optional<int> dmax;
};

using PolyMat = std::vector<std::vector<Poly>>;

// Z-linear map given by per-vertex matrices on the fibers: (f m)_z = F_z m_z,
// F_z of size r_z(target) x r_z(source).
struct FiberMap {
  int degree = 0;
  std::vector<PolyMat> F;
  bool is_zero() const;
};

FiberMap identity_fiber(const SectionModule& M);
FiberMap compose(const FiberMap& g, const FiberMap& f);  // g after f
FiberMap add(const FiberMap& f, const FiberMap& g);
FiberMap scale(const Q& c, const FiberMap& f);
Vec apply(const FiberMap& f, const SectionModule& M, const SectionModule& N, const Vec& v, int d);
// Matrix on the bases; throws NotInSpan when f does not map M into N.
ZHom to_basis(const FiberMap& f, const SectionModule& M, const SectionModule& N);
FiberMap theta_fiber(int s, const SectionModule& M, const SectionModule& N, const FiberMap& f);
FiberMap phi_fiber(int s, const SectionModule& M, const SectionModule& N, const FiberMap& f);
// Unit and counit of theta_Z / phi_Z in fiber form.
FiberMap theta_unit(int s, const SectionModule& M);
FiberMap theta_counit(int s, const SectionModule& M);
FiberMap phi_unit(int s, const SectionModule& M);
FiberMap phi_counit(int s, const SectionModule& M);

// Graded Hom_Z(M, N) for a source whose vertex projections are onto the
// stalks, so that every map is a tuple of polynomial fiber matrices.
class HomModule {
 public:
  HomModule() = default;
  HomModule(const SectionModule& M, const SectionModule& N, const HomOptions& opt = {});

  const SectionModule& source() const { return *M_; }
  const SectionModule& target() const { return *N_; }
  std::size_t rank() const { return gens_.size(); }
  std::size_t expected_rank() const { return expected_; }
  int degree(std::size_t j) const { return gens_.deg[j]; }
  const std::vector<int>& degrees() const { return gens_.deg; }
  FiberMap hom(std::size_t j) const;
  void set_generator(std::size_t j, const FiberMap& f);
  const Layout& layout() const { return layout_; }
  Vec pack(const FiberMap& f) const;
  FiberMap unpack(const Vec& v, int d) const;
  std::size_t slice_dim(int d) const;
  Mat kernel_slice(int d) const;
  // Image in Hom / V* Hom: coefficients on the generators (nonzero only in degree f.degree).
  Vec reduce(const FiberMap& f) const;

 private:
  struct Cache;
  const SectionModule* M_ = nullptr;
  const SectionModule* N_ = nullptr;
  Layout layout_;
  std::vector<std::size_t> first_;  // per vertex: first coordinate of F_z
  GradedBasis gens_;
  std::size_t expected_ = 0;
  std::shared_ptr<std::mutex> mu_ = std::make_shared<std::mutex>();
  std::shared_ptr<std::map<int, std::shared_ptr<Cache>>> cache_ =
      std::make_shared<std::map<int, std::shared_ptr<Cache>>>();
};

// Hom_Z(M, N) for arbitrary sources: unknown basis matrices commuting with a
// separating zeta.
class SylvesterHom {
 public:
  SylvesterHom(const SectionModule& M, const SectionModule& N, const HomOptions& opt = {});

  std::size_t rank() const { return gens_.size(); }
  std::size_t expected_rank() const { return expected_; }
  const std::vector<int>& degrees() const { return gens_.deg; }
  ZHom hom(std::size_t j) const;
  std::size_t slice_dim(int d) const;
  Mat kernel_slice(int d) const;

 private:
  const SectionModule* M_;
  const SectionModule* N_;
  Layout layout_;
  GradedBasis gens_;
  std::size_t expected_ = 0;
  std::vector<std::vector<Poly>> P_, C_;
};

// Componentwise structure-algebra element from polynomials per vertex.
Section zeta(const MomentGraph& G);

}  // namespace catmg::zmod
