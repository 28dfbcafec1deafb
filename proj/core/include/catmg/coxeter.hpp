#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "catmg/linalg.hpp"
#include "catmg/polylin.hpp"

namespace catmg::coxeter {

// m[s][t] = 0 encodes infinity.
struct CoxeterSystem {
  std::string name;
  int rank = 0;
  int dimV = 0;
  std::vector<std::vector<int>> m;
  std::vector<Mat> gen;     // action on V
  std::vector<Vec> alpha;   // root functionals
};

CoxeterSystem build_system(const std::vector<std::vector<int>>& coxeter_matrix,
                           const std::vector<Mat>& gens, const std::vector<Vec>& alphas,
                           const std::string& name = "custom");
// Geometric realization from integer Cartan data: s_i(v) = v - alpha_i(v) e_i.
CoxeterSystem from_cartan(const std::vector<std::vector<int>>& cartan, const std::string& name);
// A1, A1xA1, A2, B2, G2, A3.
CoxeterSystem builtin(const std::string& name);
CoxeterSystem from_json_text(const std::string& text);
std::string to_json_text(const CoxeterSystem& sys);

struct Element {
  Mat matrix;
  Mat inverse;
  int length = 0;
  std::vector<int> word;  // reduced, 0-based generator indices
};

using IntPoly = std::vector<long long>;  // coefficient of q^i at index i
std::string intpoly_str(const IntPoly& p);

// Elements of W up to a length bound (all of W when finite and unbounded),
// sorted by (length, matrix entries).
class Group {
 public:
  explicit Group(const CoxeterSystem& sys, int max_length = -1);

  const CoxeterSystem& system() const { return sys_; }
  std::size_t size() const { return el_.size(); }
  const Element& operator[](std::size_t i) const { return el_[i]; }
  bool finite() const { return complete_; }
  int identity() const { return 0; }
  int longest() const;

  int find(const Mat& m) const;
  int lmul_gen(int s, int x) const { return lgen_[static_cast<std::size_t>(x)][static_cast<std::size_t>(s)]; }
  int rmul_gen(int x, int s) const { return rgen_[static_cast<std::size_t>(x)][static_cast<std::size_t>(s)]; }
  int mul(int x, int y) const;
  int inv(int x) const { return inv_[static_cast<std::size_t>(x)]; }
  int from_word(const std::vector<int>& word) const;
  int parse(const std::string& label) const;  // "e", "s1s2", "1 2"
  std::string label(int x) const;

  bool leq(int x, int y) const;
  bool is_reflection(int x) const { return refl_[static_cast<std::size_t>(x)]; }
  const std::vector<int>& reflections() const { return refl_list_; }
  // alpha_t normalized to first nonzero coefficient 1.
  const Vec& root(int t) const;
  Vec act_root(int w, const Vec& lambda) const;  // w.lambda = lambda M_w^{-1}

  std::vector<int> interval(int w) const;
  std::vector<std::vector<int>> reduced_words(int w) const;

 private:
  CoxeterSystem sys_;
  std::vector<Element> el_;
  std::map<std::vector<Q>, int> index_;
  std::vector<std::vector<int>> lgen_, rgen_;
  std::vector<int> inv_;
  std::vector<std::vector<bool>> below_;
  std::vector<bool> refl_;
  std::vector<int> refl_list_;
  std::map<int, Vec> roots_;
  bool complete_ = false;
};

struct ReflectionPair {
  int t, x, tx;
};

bool bruhat_leq(const Group& g, const std::vector<int>& interval, int x, int y);
std::vector<ReflectionPair> reflections_between(const Group& g, const std::vector<int>& interval);

struct FaithfulReport {
  std::vector<std::string> violations;
  bool global = false;  // whether the check covered all of W
  bool pass() const { return violations.empty(); }
};
FaithfulReport check_reflection_faithful(const Group& g, const std::vector<int>& interval);

// Kazhdan-Lusztig polynomials via the descent recursion, memoized.
class KLTable {
 public:
  explicit KLTable(const Group& g) : g_(g) {}
  IntPoly P(int y, int x);
  long long mu(int y, int x);

 private:
  const Group& g_;
  std::mutex mu_;
  std::map<std::pair<int, int>, IntPoly> memo_;
};

IntPoly kl_polynomial(KLTable& table, int y, int x);

}  // namespace catmg::coxeter
