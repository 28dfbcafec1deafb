#pragma once

// Independent reference data: groups as permutation groups, Bruhat order by
// subwords, Kazhdan-Lusztig polynomials by the classical recursion.

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <string>
#include <vector>

namespace oracle {

using Perm = std::vector<int>;
using Poly = std::vector<long long>;

inline Perm compose(const Perm& a, const Perm& b) {  // a after b
  Perm c(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) c[i] = a[static_cast<std::size_t>(b[i])];
  return c;
}

inline Perm swap_perm(int n, int i, int j) {
  Perm p(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) p[static_cast<std::size_t>(k)] = k;
  std::swap(p[static_cast<std::size_t>(i)], p[static_cast<std::size_t>(j)]);
  return p;
}

inline Perm product(const Perm& a, const Perm& b) {
  Perm c = a;
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[static_cast<std::size_t>(b[i])];
  return c;
}

class Group {
 public:
  explicit Group(std::vector<Perm> gens) : gens_(std::move(gens)) {
    Perm id(gens_.front().size());
    for (std::size_t i = 0; i < id.size(); ++i) id[i] = static_cast<int>(i);
    add(id, {});
    for (std::size_t k = 0; k < el_.size(); ++k)
      for (int s = 0; s < rank(); ++s) {
        Perm p = product(gens_[static_cast<std::size_t>(s)], el_[k]);  // s * x
        if (!idx_.count(p)) {
          auto w = words_[k];
          w.insert(w.begin(), s);
          add(p, w);
        }
      }
    below_.resize(el_.size());
    for (std::size_t x = 0; x < el_.size(); ++x) {
      const auto& w = words_[x];
      std::size_t l = w.size();
      for (std::size_t mask = 0; mask < (std::size_t{1} << l); ++mask) {
        std::vector<int> sub;
        for (std::size_t i = 0; i < l; ++i)
          if (mask >> i & 1) sub.push_back(w[i]);
        below_[x].insert(of_word(sub));
      }
    }
  }

  static Group type_A(int n) {
    std::vector<Perm> g;
    for (int i = 0; i < n; ++i) g.push_back(swap_perm(n + 1, i, i + 1));
    return Group(g);
  }
  // Dihedral group of order 2m acting on the m vertices of a polygon (m >= 3),
  // or on 4 points for m = 2.
  static Group dihedral(int m) {
    if (m == 2) return Group({swap_perm(4, 0, 1), swap_perm(4, 2, 3)});
    Perm a(static_cast<std::size_t>(m)), b(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
      a[static_cast<std::size_t>(i)] = (m - i) % m;
      b[static_cast<std::size_t>(i)] = (m + 1 - i) % m;
    }
    return Group({a, b});
  }

  int rank() const { return static_cast<int>(gens_.size()); }
  int size() const { return static_cast<int>(el_.size()); }
  int len(int x) const { return static_cast<int>(words_[static_cast<std::size_t>(x)].size()); }
  const std::vector<int>& word(int x) const { return words_[static_cast<std::size_t>(x)]; }
  int of_word(const std::vector<int>& w) const {
    Perm p = el_.front();
    for (auto it = w.rbegin(); it != w.rend(); ++it) p = product(gens_[static_cast<std::size_t>(*it)], p);
    return idx_.at(p);
  }
  int lmul(int s, int x) const { return idx_.at(product(gens_[static_cast<std::size_t>(s)], el_[static_cast<std::size_t>(x)])); }
  int inv(int x) const {
    auto w = words_[static_cast<std::size_t>(x)];
    std::reverse(w.begin(), w.end());
    return of_word(w);
  }
  bool leq(int y, int x) const { return below_[static_cast<std::size_t>(x)].count(y) > 0; }
  int longest() const {
    int best = 0;
    for (int x = 0; x < size(); ++x)
      if (len(x) > len(best)) best = x;
    return best;
  }
  std::size_t count_reduced_words(int x) const {
    if (len(x) == 0) return 1;
    std::size_t c = 0;
    for (int s = 0; s < rank(); ++s) {
      int y = lmul(s, x);
      if (len(y) < len(x)) c += count_reduced_words(y);
    }
    return c;
  }

  Poly kl(int y, int w) const {
    auto key = std::make_pair(y, w);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    Poly r;
    if (!leq(y, w)) {
      r = {};
    } else if (y == w) {
      r = {1};
    } else {
      int s = 0;
      while (len(lmul(s, w)) > len(w)) ++s;
      int v = lmul(s, w);
      int sy = lmul(s, y);
      int c = len(sy) < len(y) ? 1 : 0;
      r = add(shift(kl(sy, v), 1 - c), shift(kl(y, v), c));
      for (int z = 0; z < size(); ++z) {
        if (!(leq(y, z) && leq(z, v) && z != v && len(lmul(s, z)) < len(z))) continue;
        long long m = mu(z, v);
        if (m == 0) continue;
        r = add(r, scale(-m, shift(kl(y, z), (len(w) - len(z)) / 2)));
      }
    }
    while (!r.empty() && r.back() == 0) r.pop_back();
    memo_[key] = r;
    return r;
  }
  long long mu(int z, int v) const {
    int d = len(v) - len(z) - 1;
    if (d < 0 || d % 2) return 0;
    Poly p = kl(z, v);
    std::size_t k = static_cast<std::size_t>(d / 2);
    return k < p.size() ? p[k] : 0;
  }

 private:
  static Poly shift(Poly p, int k) {
    if (p.empty()) return p;
    p.insert(p.begin(), static_cast<std::size_t>(k), 0);
    return p;
  }
  static Poly add(Poly a, const Poly& b) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i];
    return a;
  }
  static Poly scale(long long c, Poly p) {
    for (auto& x : p) x *= c;
    return p;
  }
  void add(const Perm& p, const std::vector<int>& w) {
    idx_[p] = static_cast<int>(el_.size());
    el_.push_back(p);
    words_.push_back(w);
  }

  std::vector<Perm> gens_;
  std::vector<Perm> el_;
  std::vector<std::vector<int>> words_;
  std::map<Perm, int> idx_;
  std::vector<std::set<int>> below_;
  mutable std::map<std::pair<int, int>, Poly> memo_;
};

// By name, matching the generator order of the library's built-in systems.
inline Group by_name(const std::string& name) {
  if (name == "A1") return Group::type_A(1);
  if (name == "A1xA1") return Group::dihedral(2);
  if (name == "A2") return Group::type_A(2);
  if (name == "B2") return Group::dihedral(4);
  if (name == "G2") return Group::dihedral(6);
  return Group::type_A(3);
}

inline long long at_one(const Poly& p) {
  long long t = 0;
  for (auto c : p) t += c;
  return t;
}

// sum_z (sum_x P_{z,x}(1))^2
inline long long algebra_dim(const Group& g) {
  long long t = 0;
  for (int z = 0; z < g.size(); ++z) {
    long long c = 0;
    for (int x = 0; x < g.size(); ++x) c += at_one(g.kl(z, x));
    t += c * c;
  }
  return t;
}

inline long long verma_hom_nonzero(const Group& g) {
  long long t = 0;
  for (int x = 0; x < g.size(); ++x)
    for (int y = 0; y < g.size(); ++y) t += g.leq(y, x);
  return t;
}

}  // namespace oracle
