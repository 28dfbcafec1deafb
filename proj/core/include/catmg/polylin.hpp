#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "catmg/errors.hpp"
#include "catmg/linalg.hpp"

namespace catmg::polylin {

using Exp = std::vector<int>;

// Polynomial in S(V*) with rational coefficients. Grading: deg V* = 2.
class Poly {
 public:
  Poly() = default;
  explicit Poly(int nvars) : n_(nvars) {}

  static Poly constant(int nvars, const Q& c);
  static Poly var(int nvars, int i);
  static Poly linear(const Vec& coeffs);
  static Poly monomial(const Exp& e, const Q& c = 1);

  int nvars() const { return n_; }
  bool is_zero() const { return t_.empty(); }
  const std::map<Exp, Q>& terms() const { return t_; }
  Q coeff(const Exp& e) const;
  void add_term(const Exp& e, const Q& c);

  bool is_homogeneous() const;
  // Degree in the doubled grading; throws InhomogeneousInput, -1 for zero.
  int degree() const;

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Q& c);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(Poly a, const Q& c) { return a *= c; }
  friend Poly operator*(const Q& c, Poly a) { return a *= c; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend bool operator==(const Poly& a, const Poly& b) { return a.n_ == b.n_ && a.t_ == b.t_; }
  Poly operator-() const;

  std::string str(const std::vector<std::string>& names = {}) const;

 private:
  int n_ = 0;
  std::map<Exp, Q> t_;
};

// p composed with the dual action: (w.p)(v) = p(w^{-1} v). Takes w^{-1}.
Poly act_inv(const Mat& winv, const Poly& p);
// Same, taking the matrix of w itself.
Poly act(const Mat& w, const Poly& p);

int eliminated_var(const Vec& alpha);
Poly divide_exact(const Poly& p, const Vec& alpha);
// Normal form modulo a linear form: the variable eliminated_var(alpha) is removed.
Poly mod_linear(const Poly& p, const Vec& alpha);

// Monomials of total degree k (slice of degree 2k), in descending lex order.
const std::vector<Exp>& monomials(int nvars, int k);
std::size_t mono_index(int nvars, const Exp& e);
// Dimension of S(V*)_d; zero for odd or negative d.
std::size_t slice_dim(int nvars, int d);
// Index map of multiplication by x_v from degree k to k+1 (monomial counts).
const std::vector<std::size_t>& var_shift(int nvars, int k, int v);
// Matrix of act on S_{2k} (row convention) for w^{-1}.
Mat action_matrix(const Mat& winv, int k);

Vec to_dense(const Poly& p, int d);
Poly from_dense(const Vec& v, std::size_t start, int nvars, int d);

// Ambient graded free module: coordinate c carries S(V*)<-off[c]>, i.e.
// an element of degree d has a degree d - off[c] polynomial at c.
struct Layout {
  int nvars = 0;
  std::vector<int> off;

  std::size_t ncoords() const { return off.size(); }
  std::size_t dim(int d) const;
  std::size_t start(int d, std::size_t c) const;
  std::size_t cdim(int d, std::size_t c) const { return slice_dim(nvars, d - off[c]); }
  int min_degree() const;

  Vec pack(const std::vector<Poly>& elem, int d) const;
  std::vector<Poly> unpack(const Vec& v, int d) const;
  Vec mul_var(const Vec& v, int d, int var) const;
  Vec mul_mono(const Vec& v, int d, const Exp& e) const;
  Vec mul_poly(const Vec& v, int d, const Poly& p) const;
  // Multiplies coordinate c by the polynomial pc[c] (all of equal degree dp).
  Vec mul_coordwise(const Vec& v, int d, const std::vector<Poly>& pc, int dp) const;
};

// Finite-dimensional degree slice of a graded module in an ambient layout.
struct DegreeSlice {
  int degree = 0;
  Mat basis;  // independent rows in ambient coordinates
  std::size_t dim() const { return basis.rows; }
};

enum class SliceMode { Kernel, Image, Membership };

struct SliceResult {
  DegreeSlice slice;
  std::optional<Vec> coords;
};

// Kernel: basis of {x : family x^T = 0}. Image: basis of the row span.
// Membership: coordinates of target in the row span (NotInSpan otherwise).
SliceResult slice_solve(SliceMode mode, const Mat& family, int d, const Vec* target = nullptr);

struct GradedBasis {
  std::vector<int> deg;
  std::vector<Vec> gen;  // ambient dense vectors in their own degree
  std::size_t size() const { return deg.size(); }
};

struct GeneratorOptions {
  int dmin = 0;
  int dmax = 0;
  std::optional<std::size_t> expected_rank;
  int verify_extra = 4;
};

// Graded Nakayama: degree by degree, complement of V*.M_{d-2} in M_d.
GradedBasis minimal_generators(const Layout& lay, const std::function<Mat(int)>& slice,
                               const GeneratorOptions& opt);

// Rows spanning S.gens in degree d.
Mat span_slice(const Layout& lay, const GradedBasis& gens, int d);
// Free Hilbert function of a generator set in degree d.
std::size_t free_dim(int nvars, const std::vector<int>& degs, int d);

}  // namespace catmg::polylin
