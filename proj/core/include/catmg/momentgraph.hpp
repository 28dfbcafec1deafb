#pragma once

#include <optional>
#include <vector>

#include "catmg/coxeter.hpp"
#include "catmg/polylin.hpp"

namespace catmg::momentgraph {

using coxeter::Group;
using polylin::Poly;

struct Edge {
  int head;  // shorter end (global element index)
  int tail;  // longer end
  int refl;  // reflection t with tail = t * head
  Vec label; // alpha_t, first nonzero coefficient 1
};

// Moment graph of the Bruhat interval below w (W' = {e}).
class MomentGraph {
 public:
  MomentGraph(const Group& g, int w);

  const Group& group() const { return *g_; }
  int top() const { return top_; }
  const std::vector<int>& vertices() const { return verts_; }
  const std::vector<Edge>& edges() const { return edges_; }
  bool contains(int x) const { return pos_[static_cast<std::size_t>(x)] >= 0; }
  int pos(int x) const { return pos_[static_cast<std::size_t>(x)]; }
  int nvars() const { return g_->system().dimV; }
  // Edges with the given head (going up) or tail (going down).
  std::vector<int> up_edges(int x) const;
  std::vector<int> down_edges(int x) const;

 private:
  const Group* g_;
  int top_;
  std::vector<int> verts_;
  std::vector<int> pos_;
  std::vector<Edge> edges_;
};

MomentGraph build_moment_graph(const Group& g, int w);

// Upward closed subset of the vertex set, as a sorted list.
struct UpSet {
  std::vector<int> verts;
  bool contains(int x) const;
};
UpSet principal_upset(const MomentGraph& G, int y);
UpSet full_set(const MomentGraph& G);
bool is_upset(const MomentGraph& G, const std::vector<int>& verts);

// Tuple of polynomials indexed by graph vertices (position order).
using Section = std::vector<Poly>;

// Basis of the degree-d slice of the structure algebra Z (one coordinate per vertex).
polylin::DegreeSlice structure_sections(const MomentGraph& G, int d);
bool in_structure_algebra(const MomentGraph& G, const Section& z);

struct SeparationReport {
  Section zeta;
  bool separating = false;
};
SeparationReport euler_report(const MomentGraph& G, const Vec& lambda);
// zeta_lambda = (w(lambda))_w; throws NotSeparating.
Section euler_element(const MomentGraph& G, const Vec& lambda);
// c_s = (w(alpha_s))_w.
Section c_element(const MomentGraph& G, int s);
// Deterministic separating lambda: sum_i i * x_i, bumped until separating.
Vec separating_lambda(const MomentGraph& G);

// Sheaf whose edge modules are tail stalks modulo the edge label, with the
// tail restriction the quotient map and the head restriction given by R.
struct GSheaf {
  std::vector<std::vector<int>> gdeg;            // per vertex position: generator degrees
  std::vector<std::vector<std::vector<Poly>>> R; // per edge: r_tail x r_head
  std::size_t rank(int pos) const { return gdeg[static_cast<std::size_t>(pos)].size(); }
};

GSheaf structure_sheaf(const MomentGraph& G);
GSheaf verma_sheaf(const MomentGraph& G, int x);
GSheaf shift(const GSheaf& F, int k);

// Degreewise sections over an upset, with minimal generators up to d_max.
struct SectionSpace {
  std::vector<int> verts;       // vertex positions included
  polylin::Layout layout;       // coordinates (vertex, i) over verts
  std::vector<std::pair<int, int>> coord;  // (vertex position, i)
  polylin::GradedBasis gens;
};
Mat section_slice(const MomentGraph& G, const GSheaf& F, const std::vector<int>& verts, int d);
SectionSpace sheaf_sections(const MomentGraph& G, const GSheaf& F, const UpSet& omega, int d_max);

struct FlabbyReport {
  bool flabby = true;
  std::vector<std::string> failures;
};
FlabbyReport flabby_check(const MomentGraph& G, const GSheaf& F, int d_max);

struct CostalkReport {
  polylin::GradedBasis gens;
  polylin::Layout layout;
  bool free = false;
};
CostalkReport costalk_kernel(const MomentGraph& G, const GSheaf& F, int x, int d_max);

// Normal form modulo a linear form as a map S_d -> S_d.
Mat mod_matrix(const Vec& alpha, int nvars, int d);
// Multiplication by p as a map S_a -> S_{a + deg p}.
Mat mult_matrix(const Poly& p, int nvars, int a);

}  // namespace catmg::momentgraph
