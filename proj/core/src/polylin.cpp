#include "catmg/polylin.hpp"

#include <algorithm>
#include <mutex>
#include <sstream>

namespace catmg::polylin {

namespace {

std::mutex cache_mu;

void gen_monos(int n, int k, int pos, Exp& cur, std::vector<Exp>& out) {
  if (pos == n - 1) {
    cur[pos] = k;
    out.push_back(cur);
    return;
  }
  for (int a = k; a >= 0; --a) {
    cur[pos] = a;
    gen_monos(n, k - a, pos + 1, cur, out);
  }
  cur[pos] = 0;
}

struct MonoTable {
  std::vector<Exp> list;
  std::map<Exp, std::size_t> index;
};

const MonoTable& mono_table(int n, int k) {
  static std::map<std::pair<int, int>, MonoTable> cache;
  std::lock_guard<std::mutex> lock(cache_mu);
  auto key = std::make_pair(n, k);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  MonoTable t;
  if (n > 0 && k >= 0) {
    Exp cur(static_cast<std::size_t>(n), 0);
    gen_monos(n, k, 0, cur, t.list);
  } else if (n == 0 && k == 0) {
    t.list.push_back(Exp{});
  }
  for (std::size_t i = 0; i < t.list.size(); ++i) t.index[t.list[i]] = i;
  return cache.emplace(key, std::move(t)).first->second;
}

int total(const Exp& e) {
  int s = 0;
  for (int x : e) s += x;
  return s;
}

}  // namespace

Poly Poly::constant(int nvars, const Q& c) {
  Poly p(nvars);
  p.add_term(Exp(static_cast<std::size_t>(nvars), 0), c);
  return p;
}

Poly Poly::var(int nvars, int i) {
  Poly p(nvars);
  Exp e(static_cast<std::size_t>(nvars), 0);
  e[static_cast<std::size_t>(i)] = 1;
  p.add_term(e, 1);
  return p;
}

Poly Poly::linear(const Vec& coeffs) {
  int n = static_cast<int>(coeffs.size());
  Poly p(n);
  for (int i = 0; i < n; ++i) {
    Exp e(coeffs.size(), 0);
    e[static_cast<std::size_t>(i)] = 1;
    p.add_term(e, coeffs[static_cast<std::size_t>(i)]);
  }
  return p;
}

Poly Poly::monomial(const Exp& e, const Q& c) {
  Poly p(static_cast<int>(e.size()));
  p.add_term(e, c);
  return p;
}

Q Poly::coeff(const Exp& e) const {
  auto it = t_.find(e);
  return it == t_.end() ? Q(0) : it->second;
}

void Poly::add_term(const Exp& e, const Q& c) {
  if (sgn(c) == 0) return;
  if (static_cast<int>(e.size()) != n_) {
    if (t_.empty() && n_ == 0)
      n_ = static_cast<int>(e.size());
    else
      throw Error(ErrorKind::DimensionMismatch, "monomial arity");
  }
  auto [it, fresh] = t_.emplace(e, c);
  if (!fresh) {
    it->second += c;
    if (sgn(it->second) == 0) t_.erase(it);
  }
}

bool Poly::is_homogeneous() const {
  if (t_.empty()) return true;
  int k = total(t_.begin()->first);
  return std::all_of(t_.begin(), t_.end(), [k](const auto& kv) { return total(kv.first) == k; });
}

int Poly::degree() const {
  if (t_.empty()) return -1;
  if (!is_homogeneous()) throw Error(ErrorKind::InhomogeneousInput, "mixed degrees");
  return 2 * total(t_.begin()->first);
}

Poly& Poly::operator+=(const Poly& o) {
  if (o.n_ != n_ && !o.t_.empty()) {
    if (t_.empty())
      n_ = o.n_;
    else
      throw Error(ErrorKind::DimensionMismatch, "poly add");
  }
  for (const auto& [e, c] : o.t_) add_term(e, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (o.n_ != n_ && !o.t_.empty()) {
    if (t_.empty())
      n_ = o.n_;
    else
      throw Error(ErrorKind::DimensionMismatch, "poly sub");
  }
  for (const auto& [e, c] : o.t_) add_term(e, -c);
  return *this;
}

Poly& Poly::operator*=(const Q& c) {
  if (sgn(c) == 0) {
    t_.clear();
    return *this;
  }
  for (auto& kv : t_) kv.second *= c;
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly(std::max(a.n_, b.n_));
  if (a.n_ != b.n_) throw Error(ErrorKind::DimensionMismatch, "poly mul");
  Poly r(a.n_);
  Exp e(static_cast<std::size_t>(a.n_));
  for (const auto& [ea, ca] : a.t_)
    for (const auto& [eb, cb] : b.t_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  return r;
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& kv : r.t_) kv.second = -kv.second;
  return r;
}

std::string Poly::str(const std::vector<std::string>& names) const {
  if (t_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
    const auto& [e, c] = *it;
    bool unit = total(e) == 0;
    Q a = abs(c);
    if (!first) os << (sgn(c) < 0 ? " - " : " + ");
    else if (sgn(c) < 0) os << "-";
    first = false;
    if (unit || a != 1) os << to_string(a);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      os << (names.size() > i ? names[i] : "x" + std::to_string(i + 1));
      if (e[i] > 1) os << "^" << e[i];
    }
  }
  return os.str();
}

const std::vector<Exp>& monomials(int nvars, int k) { return mono_table(nvars, k).list; }

std::size_t mono_index(int nvars, const Exp& e) {
  const auto& t = mono_table(nvars, total(e));
  return t.index.at(e);
}

std::size_t slice_dim(int nvars, int d) {
  if (d < 0 || d % 2 != 0) return 0;
  return monomials(nvars, d / 2).size();
}

const std::vector<std::size_t>& var_shift(int nvars, int k, int v) {
  static std::map<std::tuple<int, int, int>, std::vector<std::size_t>> cache;
  {
    std::lock_guard<std::mutex> lock(cache_mu);
    auto it = cache.find({nvars, k, v});
    if (it != cache.end()) return it->second;
  }
  const auto& src = monomials(nvars, k);
  const auto& dst = mono_table(nvars, k + 1);
  std::vector<std::size_t> m(src.size());
  for (std::size_t i = 0; i < src.size(); ++i) {
    Exp e = src[i];
    ++e[static_cast<std::size_t>(v)];
    m[i] = dst.index.at(e);
  }
  std::lock_guard<std::mutex> lock(cache_mu);
  return cache.emplace(std::make_tuple(nvars, k, v), std::move(m)).first->second;
}

namespace {

Poly act_slow(const Mat& winv, const Exp& e) {
  int n = static_cast<int>(winv.rows);
  Poly r = Poly::constant(n, 1);
  for (int j = 0; j < n; ++j) {
    if (e[static_cast<std::size_t>(j)] == 0) continue;
    Vec row = winv.row(static_cast<std::size_t>(j));
    Poly lin = Poly::linear(row);
    for (int p = 0; p < e[static_cast<std::size_t>(j)]; ++p) r = r * lin;
  }
  return r;
}

}  // namespace

Mat action_matrix(const Mat& winv, int k) {
  static std::map<std::pair<std::vector<Q>, int>, Mat> cache;
  auto key = std::make_pair(winv.a, k);
  {
    std::lock_guard<std::mutex> lock(cache_mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  int n = static_cast<int>(winv.rows);
  const auto& ms = monomials(n, k);
  Mat m(ms.size(), ms.size());
  for (std::size_t i = 0; i < ms.size(); ++i) {
    Poly p = act_slow(winv, ms[i]);
    for (const auto& [e, c] : p.terms()) m(i, mono_index(n, e)) = c;
  }
  std::lock_guard<std::mutex> lock(cache_mu);
  cache.emplace(key, m);
  return m;
}

Poly act_inv(const Mat& winv, const Poly& p) {
  if (p.is_zero()) return p;
  if (winv.rows != static_cast<std::size_t>(p.nvars()) || winv.cols != winv.rows)
    throw Error(ErrorKind::DimensionMismatch, "act: matrix size vs variables");
  int n = p.nvars();
  std::map<int, Vec> parts;
  for (const auto& [e, c] : p.terms()) {
    int k = total(e);
    auto& v = parts[k];
    if (v.empty()) v.resize(monomials(n, k).size());
    v[mono_index(n, e)] = c;
  }
  Poly r(n);
  for (auto& [k, v] : parts) {
    Vec w = v * action_matrix(winv, k);
    const auto& ms = monomials(n, k);
    for (std::size_t i = 0; i < w.size(); ++i) r.add_term(ms[i], w[i]);
  }
  return r;
}

Poly act(const Mat& w, const Poly& p) {
  auto inv = inverse(w);
  if (!inv) throw Error(ErrorKind::DimensionMismatch, "act: singular matrix");
  return act_inv(*inv, p);
}

int eliminated_var(const Vec& alpha) {
  for (std::size_t i = 0; i < alpha.size(); ++i)
    if (sgn(alpha[i]) != 0) return static_cast<int>(i);
  return -1;
}

Poly mod_linear(const Poly& p, const Vec& alpha) {
  int v = eliminated_var(alpha);
  if (v < 0) throw Error(ErrorKind::ZeroDivisor, "zero linear form");
  if (static_cast<int>(alpha.size()) != p.nvars() && !p.is_zero())
    throw Error(ErrorKind::DimensionMismatch, "mod_linear");
  int n = static_cast<int>(alpha.size());
  Vec sub(alpha.size());
  for (std::size_t j = 0; j < alpha.size(); ++j)
    if (static_cast<int>(j) != v) sub[j] = -alpha[j] / alpha[static_cast<std::size_t>(v)];
  Poly lin = Poly::linear(sub);
  Poly r(n);
  std::map<int, Poly> powcache;
  for (const auto& [e, c] : p.terms()) {
    int a = e[static_cast<std::size_t>(v)];
    Exp rest = e;
    rest[static_cast<std::size_t>(v)] = 0;
    auto it = powcache.find(a);
    if (it == powcache.end()) {
      Poly pw = Poly::constant(n, 1);
      for (int i = 0; i < a; ++i) pw = pw * lin;
      it = powcache.emplace(a, pw).first;
    }
    r += Poly::monomial(rest, c) * it->second;
  }
  return r;
}

Poly divide_exact(const Poly& p, const Vec& alpha) {
  int v = eliminated_var(alpha);
  if (v < 0) throw Error(ErrorKind::ZeroDivisor, "division by the zero form");
  if (p.is_zero()) return Poly(static_cast<int>(alpha.size()));
  if (static_cast<int>(alpha.size()) != p.nvars())
    throw Error(ErrorKind::DimensionMismatch, "divide_exact");
  int n = p.nvars();
  auto vi = static_cast<std::size_t>(v);
  Poly a = Poly::linear(alpha);
  Poly rem = p, quo(n);
  while (!rem.is_zero()) {
    const Exp* best = nullptr;
    for (const auto& [e, c] : rem.terms())
      if (!best || e[vi] > (*best)[vi]) best = &e;
    if ((*best)[vi] == 0) throw Error(ErrorKind::NotDivisible, p.str() + " by linear form");
    Exp e = *best;
    Q c = rem.coeff(e) / alpha[vi];
    --e[vi];
    Poly t = Poly::monomial(e, c);
    quo += t;
    rem -= t * a;
  }
  return quo;
}

Vec to_dense(const Poly& p, int d) {
  Vec v(slice_dim(p.nvars(), d));
  for (const auto& [e, c] : p.terms()) {
    if (2 * total(e) != d) throw Error(ErrorKind::InhomogeneousInput, "to_dense degree");
    v[mono_index(p.nvars(), e)] = c;
  }
  return v;
}

Poly from_dense(const Vec& v, std::size_t start, int nvars, int d) {
  Poly p(nvars);
  std::size_t m = slice_dim(nvars, d);
  if (m == 0) return p;
  const auto& ms = monomials(nvars, d / 2);
  for (std::size_t i = 0; i < m; ++i) p.add_term(ms[i], v[start + i]);
  return p;
}

std::size_t Layout::dim(int d) const {
  std::size_t s = 0;
  for (std::size_t c = 0; c < off.size(); ++c) s += cdim(d, c);
  return s;
}

std::size_t Layout::start(int d, std::size_t c) const {
  std::size_t s = 0;
  for (std::size_t i = 0; i < c; ++i) s += cdim(d, i);
  return s;
}

int Layout::min_degree() const {
  if (off.empty()) return 0;
  return *std::min_element(off.begin(), off.end());
}

Vec Layout::pack(const std::vector<Poly>& elem, int d) const {
  Vec v(dim(d));
  std::size_t s = 0;
  for (std::size_t c = 0; c < off.size(); ++c) {
    std::size_t m = cdim(d, c);
    if (!elem[c].is_zero()) {
      if (m == 0) throw Error(ErrorKind::InhomogeneousInput, "coordinate degree mismatch");
      Vec b = to_dense(elem[c], d - off[c]);
      for (std::size_t i = 0; i < m; ++i) v[s + i] = b[i];
    }
    s += m;
  }
  return v;
}

std::vector<Poly> Layout::unpack(const Vec& v, int d) const {
  std::vector<Poly> out;
  out.reserve(off.size());
  std::size_t s = 0;
  for (std::size_t c = 0; c < off.size(); ++c) {
    out.push_back(from_dense(v, s, nvars, d - off[c]));
    s += cdim(d, c);
  }
  return out;
}

Vec Layout::mul_var(const Vec& v, int d, int var) const {
  Vec r(dim(d + 2));
  std::size_t s = 0, t = 0;
  for (std::size_t c = 0; c < off.size(); ++c) {
    std::size_t m = cdim(d, c);
    if (m > 0) {
      const auto& sh = var_shift(nvars, (d - off[c]) / 2, var);
      for (std::size_t i = 0; i < m; ++i)
        if (sgn(v[s + i]) != 0) r[t + sh[i]] = v[s + i];
    }
    s += m;
    t += cdim(d + 2, c);
  }
  return r;
}

Vec Layout::mul_mono(const Vec& v, int d, const Exp& e) const {
  Vec r = v;
  int dd = d;
  for (int i = 0; i < nvars; ++i)
    for (int p = 0; p < e[static_cast<std::size_t>(i)]; ++p) {
      r = mul_var(r, dd, i);
      dd += 2;
    }
  return r;
}

Vec Layout::mul_poly(const Vec& v, int d, const Poly& p) const {
  int dp = p.degree();
  if (dp < 0) return Vec(dim(d));
  Vec r(dim(d + dp));
  for (const auto& [e, c] : p.terms()) axpy(r, c, mul_mono(v, d, e));
  return r;
}

Vec Layout::mul_coordwise(const Vec& v, int d, const std::vector<Poly>& pc, int dp) const {
  Vec r(dim(d + dp));
  std::size_t s = 0, t = 0;
  for (std::size_t c = 0; c < off.size(); ++c) {
    std::size_t m = cdim(d, c);
    std::size_t m2 = cdim(d + dp, c);
    if (m > 0 && !pc[c].is_zero()) {
      const auto& src = monomials(nvars, (d - off[c]) / 2);
      for (std::size_t i = 0; i < m; ++i) {
        if (sgn(v[s + i]) == 0) continue;
        for (const auto& [e, cf] : pc[c].terms()) {
          Exp x = src[i];
          for (std::size_t j = 0; j < x.size(); ++j) x[j] += e[j];
          r[t + mono_index(nvars, x)] += v[s + i] * cf;
        }
      }
    }
    s += m;
    t += m2;
  }
  return r;
}

SliceResult slice_solve(SliceMode mode, const Mat& family, int d, const Vec* target) {
  SliceResult res;
  res.slice.degree = d;
  switch (mode) {
    case SliceMode::Kernel:
      res.slice.basis = kernel(family);
      break;
    case SliceMode::Image:
      res.slice.basis = row_basis(family);
      break;
    case SliceMode::Membership: {
      if (!target) throw Error(ErrorKind::NotInSpan, "no target given");
      res.slice.basis = row_basis(family);
      RowSolver rs(family);
      auto x = rs.solve(*target);
      if (!x) throw Error(ErrorKind::NotInSpan, "target outside span in degree " + std::to_string(d));
      res.coords = std::move(x);
      break;
    }
  }
  return res;
}

std::size_t free_dim(int nvars, const std::vector<int>& degs, int d) {
  std::size_t s = 0;
  for (int g : degs) s += slice_dim(nvars, d - g);
  return s;
}

Mat span_slice(const Layout& lay, const GradedBasis& gens, int d) {
  Mat m(0, lay.dim(d));
  m.cols = lay.dim(d);
  for (std::size_t i = 0; i < gens.size(); ++i) {
    int k2 = d - gens.deg[i];
    if (k2 < 0 || k2 % 2 != 0) continue;
    for (const auto& e : monomials(lay.nvars, k2 / 2)) m.append_row(lay.mul_mono(gens.gen[i], gens.deg[i], e));
  }
  return m;
}

GradedBasis minimal_generators(const Layout& lay, const std::function<Mat(int)>& slice,
                               const GeneratorOptions& opt) {
  GradedBasis out;
  Mat prev;  // slice at d-2
  Mat prev1;  // slice at d-1
  bool have_prev = false, have_prev1 = false;
  int verified = 0;
  bool saturated = false;
  for (int d = opt.dmin;; ++d) {
    if (!saturated && d > opt.dmax) {
      if (opt.expected_rank)
        throw Error(ErrorKind::DegreeCapExhausted,
                    "found " + std::to_string(out.size()) + " of " +
                        std::to_string(*opt.expected_rank) + " generators by degree " +
                        std::to_string(opt.dmax));
      break;
    }
    Mat cur = slice(d);
    std::size_t n = lay.dim(d);
    Span sp(n);
    if (have_prev) {
      for (std::size_t i = 0; i < prev.rows; ++i) {
        Vec r = prev.row(i);
        for (int v = 0; v < lay.nvars; ++v) sp.add(lay.mul_var(r, d - 2, v));
      }
    }
    if (sp.dim() > 0) {
      RowSolver member(cur);
      Mat b = sp.basis();
      for (std::size_t i = 0; i < b.rows; ++i)
        if (!member.contains(b.row(i)))
          throw Error(ErrorKind::NotClosedUnderAction, "V* multiple escapes degree " + std::to_string(d));
    }
    std::size_t before = out.size();
    for (std::size_t i = 0; i < cur.rows; ++i) {
      Vec r = cur.row(i);
      if (sp.add(r)) {
        out.deg.push_back(d);
        out.gen.push_back(r);
      }
    }
    if (saturated) {
      if (out.size() != before || cur.rows != free_dim(lay.nvars, out.deg, d))
        throw Error(ErrorKind::DegreeCapExhausted,
                    "Hilbert verification failed in degree " + std::to_string(d));
      if (++verified >= opt.verify_extra * 2) break;
    } else if (opt.expected_rank && out.size() >= *opt.expected_rank) {
      if (out.size() > *opt.expected_rank)
        throw Error(ErrorKind::DegreeCapExhausted, "more generators than the expected rank");
      saturated = true;
    }
    prev = std::move(prev1);
    have_prev = have_prev1;
    prev1 = std::move(cur);
    have_prev1 = true;
  }
  return out;
}

}  // namespace catmg::polylin
