#include "catmg/coxeter.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <sstream>

#include "json.hpp"

namespace catmg::coxeter {

namespace {

Q parse_rational(const nlohmann::json& j) {
  if (j.is_number_integer()) return Q(j.get<long>());
  if (j.is_string()) {
    Q q;
    if (q.set_str(j.get<std::string>(), 10) != 0)
      throw Error(ErrorKind::ConfigError, "bad rational " + j.get<std::string>());
    q.canonicalize();
    return q;
  }
  throw Error(ErrorKind::ConfigError, "rationals must be strings \"p/q\"");
}

Mat mat_pow(const Mat& m, int k) {
  Mat r = Mat::identity(m.rows);
  for (int i = 0; i < k; ++i) r = r * m;
  return r;
}

IntPoly trim(IntPoly p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
  return p;
}

void add_shifted(IntPoly& acc, const IntPoly& p, int shift, long long c) {
  if (p.empty() || c == 0) return;
  if (acc.size() < p.size() + static_cast<std::size_t>(shift)) acc.resize(p.size() + static_cast<std::size_t>(shift), 0);
  for (std::size_t i = 0; i < p.size(); ++i) acc[i + static_cast<std::size_t>(shift)] += c * p[i];
}

}  // namespace

CoxeterSystem build_system(const std::vector<std::vector<int>>& cm, const std::vector<Mat>& gens,
                           const std::vector<Vec>& alphas, const std::string& name) {
  CoxeterSystem s;
  s.name = name;
  s.rank = static_cast<int>(cm.size());
  if (gens.size() != cm.size() || alphas.size() != cm.size())
    throw Error(ErrorKind::DimensionMismatch, "rank mismatch between matrix and realization");
  if (gens.empty()) throw Error(ErrorKind::DimensionMismatch, "empty system");
  s.dimV = static_cast<int>(gens[0].rows);
  for (std::size_t i = 0; i < cm.size(); ++i) {
    if (cm[i].size() != cm.size()) throw Error(ErrorKind::DimensionMismatch, "coxeter matrix not square");
    if (cm[i][i] != 1) throw Error(ErrorKind::WrongBraidOrder, "diagonal of coxeter matrix must be 1");
    for (std::size_t j = 0; j < cm.size(); ++j) {
      if (cm[i][j] != cm[j][i]) throw Error(ErrorKind::WrongBraidOrder, "coxeter matrix not symmetric");
      if (i != j && cm[i][j] == 1) throw Error(ErrorKind::WrongBraidOrder, "m_st = 1 off the diagonal");
    }
  }
  auto n = static_cast<std::size_t>(s.dimV);
  Mat id = Mat::identity(n);
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const Mat& g = gens[i];
    if (g.rows != n || g.cols != n) throw Error(ErrorKind::DimensionMismatch, "realization matrices differ in size");
    if (alphas[i].size() != n) throw Error(ErrorKind::DimensionMismatch, "root functional length");
    if (!(g * g == id)) throw Error(ErrorKind::NonInvolution, "generator " + std::to_string(i + 1) + " squares to non-identity");
    Mat gm = g - id;
    if (rank(gm) != 1) throw Error(ErrorKind::NonInvolution, "fixed space of generator " + std::to_string(i + 1) + " is not a hyperplane");
    if (is_zero(alphas[i])) throw Error(ErrorKind::RootMismatch, "zero root");
    Mat fixed = kernel(gm);
    for (std::size_t r = 0; r < fixed.rows; ++r) {
      Q dot = 0;
      for (std::size_t k = 0; k < n; ++k) dot += alphas[i][k] * fixed(r, k);
      if (sgn(dot) != 0) throw Error(ErrorKind::RootMismatch, "root does not vanish on the fixed hyperplane");
    }
    Vec sa = alphas[i] * g;
    if (sa != scale(-1, alphas[i])) throw Error(ErrorKind::RootMismatch, "s(alpha_s) != -alpha_s");
  }
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      Mat p = gens[i] * gens[j];
      int m = cm[i][j];
      int bound = m == 0 ? 64 : m;
      Mat acc = id;
      for (int k = 1; k <= bound; ++k) {
        acc = acc * p;
        bool is_id = acc == id;
        if (is_id && (m == 0 || k < m))
          throw Error(ErrorKind::WrongBraidOrder, "product of generators " + std::to_string(i + 1) + "," +
                                                      std::to_string(j + 1) + " has order " + std::to_string(k));
        if (!is_id && m != 0 && k == m)
          throw Error(ErrorKind::WrongBraidOrder, "product of generators " + std::to_string(i + 1) + "," +
                                                      std::to_string(j + 1) + " does not have order " + std::to_string(m));
      }
    }
  s.m = cm;
  s.gen = gens;
  s.alpha = alphas;
  return s;
}

CoxeterSystem from_cartan(const std::vector<std::vector<int>>& c, const std::string& name) {
  std::size_t n = c.size();
  std::vector<std::vector<int>> m(n, std::vector<int>(n, 2));
  std::vector<Mat> gens;
  std::vector<Vec> alphas;
  for (std::size_t i = 0; i < n; ++i) {
    m[i][i] = 1;
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      int p = c[i][j] * c[j][i];
      m[i][j] = p == 0 ? 2 : p == 1 ? 3 : p == 2 ? 4 : p == 3 ? 6 : 0;
    }
    Mat g = Mat::identity(n);
    Vec a(n);
    for (std::size_t k = 0; k < n; ++k) {
      a[k] = c[i][k];
      g(i, k) -= c[i][k];
    }
    gens.push_back(g);
    alphas.push_back(a);
  }
  return build_system(m, gens, alphas, name);
}

CoxeterSystem builtin(const std::string& name) {
  if (name == "A1") return from_cartan({{2}}, name);
  if (name == "A1xA1") return from_cartan({{2, 0}, {0, 2}}, name);
  if (name == "A2") return from_cartan({{2, -1}, {-1, 2}}, name);
  if (name == "B2") return from_cartan({{2, -2}, {-1, 2}}, name);
  if (name == "G2") return from_cartan({{2, -1}, {-3, 2}}, name);
  if (name == "A3") return from_cartan({{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}}, name);
  throw Error(ErrorKind::ConfigError, "unknown built-in system " + name);
}

CoxeterSystem from_json_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    throw Error(ErrorKind::ConfigError, e.what());
  }
  try {
    int r = j.at("rank").get<int>();
    int d = j.at("dimV").get<int>();
    std::vector<std::vector<int>> cm;
    for (const auto& row : j.at("coxeter_matrix")) {
      std::vector<int> rr;
      for (const auto& v : row) rr.push_back(v.is_null() || (v.is_string() && v.get<std::string>() == "inf") ? 0 : v.get<int>());
      cm.push_back(rr);
    }
    std::vector<Mat> gens;
    std::vector<Vec> alphas;
    for (const auto& g : j.at("generators")) {
      Mat m(static_cast<std::size_t>(d), static_cast<std::size_t>(d));
      const auto& mj = g.at("matrix");
      if (mj.size() != static_cast<std::size_t>(d)) throw Error(ErrorKind::DimensionMismatch, "matrix rows != dimV");
      for (std::size_t a = 0; a < mj.size(); ++a) {
        if (mj[a].size() != static_cast<std::size_t>(d)) throw Error(ErrorKind::DimensionMismatch, "matrix cols != dimV");
        for (std::size_t b = 0; b < mj[a].size(); ++b) m(a, b) = parse_rational(mj[a][b]);
      }
      Vec al;
      for (const auto& x : g.at("alpha")) al.push_back(parse_rational(x));
      gens.push_back(m);
      alphas.push_back(al);
    }
    if (static_cast<int>(gens.size()) != r || static_cast<int>(cm.size()) != r)
      throw Error(ErrorKind::DimensionMismatch, "rank disagrees with data");
    return build_system(cm, gens, alphas, j.value("name", std::string("custom")));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ConfigError, e.what());
  }
}

std::string to_json_text(const CoxeterSystem& s) {
  nlohmann::json j;
  j["name"] = s.name;
  j["rank"] = s.rank;
  j["dimV"] = s.dimV;
  j["coxeter_matrix"] = s.m;
  nlohmann::json gens = nlohmann::json::array();
  for (int i = 0; i < s.rank; ++i) {
    nlohmann::json g;
    nlohmann::json mat = nlohmann::json::array();
    const Mat& m = s.gen[static_cast<std::size_t>(i)];
    for (std::size_t a = 0; a < m.rows; ++a) {
      nlohmann::json row = nlohmann::json::array();
      for (std::size_t b = 0; b < m.cols; ++b) row.push_back(to_string(m(a, b)));
      mat.push_back(row);
    }
    g["matrix"] = mat;
    nlohmann::json al = nlohmann::json::array();
    for (const auto& q : s.alpha[static_cast<std::size_t>(i)]) al.push_back(to_string(q));
    g["alpha"] = al;
    gens.push_back(g);
  }
  j["generators"] = gens;
  return j.dump();
}

std::string intpoly_str(const IntPoly& p) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < p.size(); ++i) {
    long long c = p[i];
    if (c == 0) continue;
    if (!first) os << (c < 0 ? "-" : "+");
    else if (c < 0) os << "-";
    first = false;
    long long a = c < 0 ? -c : c;
    if (i == 0 || a != 1) os << a;
    if (i >= 1) os << "q";
    if (i >= 2) os << "^" << i;
  }
  return first ? "0" : os.str();
}

Group::Group(const CoxeterSystem& sys, int max_length) : sys_(sys) {
  auto n = static_cast<std::size_t>(sys.dimV);
  std::vector<Element> found;
  std::map<std::vector<Q>, int> idx;
  Element e;
  e.matrix = Mat::identity(n);
  e.inverse = e.matrix;
  found.push_back(e);
  idx[e.matrix.a] = 0;
  std::deque<int> queue{0};
  const std::size_t hard_cap = 200000;
  complete_ = true;
  while (!queue.empty()) {
    int x = queue.front();
    queue.pop_front();
    if (max_length >= 0 && found[static_cast<std::size_t>(x)].length >= max_length) {
      complete_ = false;
      continue;
    }
    for (int s = 0; s < sys.rank; ++s) {
      Mat m = found[static_cast<std::size_t>(x)].matrix * sys.gen[static_cast<std::size_t>(s)];
      if (idx.count(m.a)) continue;
      Element y;
      y.matrix = m;
      y.inverse = sys.gen[static_cast<std::size_t>(s)] * found[static_cast<std::size_t>(x)].inverse;
      y.length = found[static_cast<std::size_t>(x)].length + 1;
      y.word = found[static_cast<std::size_t>(x)].word;
      y.word.push_back(s);
      idx[m.a] = static_cast<int>(found.size());
      found.push_back(y);
      queue.push_back(static_cast<int>(found.size()) - 1);
      if (found.size() > hard_cap) throw Error(ErrorKind::ConfigError, "group too large; supply a length bound");
    }
  }
  std::vector<std::size_t> order(found.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (found[a].length != found[b].length) return found[a].length < found[b].length;
    return found[a].matrix.a < found[b].matrix.a;
  });
  for (std::size_t i = 0; i < order.size(); ++i) {
    el_.push_back(found[order[i]]);
    index_[el_.back().matrix.a] = static_cast<int>(i);
  }
  std::size_t N = el_.size();
  lgen_.assign(N, std::vector<int>(static_cast<std::size_t>(sys.rank), -1));
  rgen_.assign(N, std::vector<int>(static_cast<std::size_t>(sys.rank), -1));
  inv_.assign(N, -1);
  for (std::size_t i = 0; i < N; ++i) {
    for (int s = 0; s < sys.rank; ++s) {
      lgen_[i][static_cast<std::size_t>(s)] = find(sys.gen[static_cast<std::size_t>(s)] * el_[i].matrix);
      rgen_[i][static_cast<std::size_t>(s)] = find(el_[i].matrix * sys.gen[static_cast<std::size_t>(s)]);
    }
    inv_[i] = find(el_[i].inverse);
  }
  below_.assign(N, std::vector<bool>(N, false));
  for (std::size_t y = 0; y < N; ++y) {
    std::vector<int> cur{0};
    std::vector<bool> seen(N, false);
    seen[0] = true;
    for (int s : el_[y].word) {
      std::size_t len = cur.size();
      for (std::size_t i = 0; i < len; ++i) {
        int z = rgen_[static_cast<std::size_t>(cur[i])][static_cast<std::size_t>(s)];
        if (z >= 0 && !seen[static_cast<std::size_t>(z)]) {
          seen[static_cast<std::size_t>(z)] = true;
          cur.push_back(z);
        }
      }
    }
    below_[y] = seen;
  }
  refl_.assign(N, false);
  for (std::size_t w = 0; w < N; ++w)
    for (int s = 0; s < sys.rank; ++s) {
      Mat t = el_[w].matrix * sys.gen[static_cast<std::size_t>(s)] * el_[w].inverse;
      int ti = find(t);
      if (ti < 0 || refl_[static_cast<std::size_t>(ti)]) continue;
      refl_[static_cast<std::size_t>(ti)] = true;
      Vec a = sys.alpha[static_cast<std::size_t>(s)] * el_[w].inverse;
      int p = polylin::eliminated_var(a);
      a = scale(1 / a[static_cast<std::size_t>(p)], a);
      roots_[ti] = a;
    }
  for (std::size_t i = 0; i < N; ++i)
    if (refl_[i]) refl_list_.push_back(static_cast<int>(i));
}

int Group::longest() const { return static_cast<int>(el_.size()) - 1; }

int Group::find(const Mat& m) const {
  auto it = index_.find(m.a);
  return it == index_.end() ? -1 : it->second;
}

int Group::mul(int x, int y) const {
  return find(el_[static_cast<std::size_t>(x)].matrix * el_[static_cast<std::size_t>(y)].matrix);
}

int Group::from_word(const std::vector<int>& word) const {
  Mat m = Mat::identity(static_cast<std::size_t>(sys_.dimV));
  for (int s : word) {
    if (s < 0 || s >= sys_.rank) throw Error(ErrorKind::ConfigError, "generator index out of range");
    m = m * sys_.gen[static_cast<std::size_t>(s)];
  }
  int i = find(m);
  if (i < 0) throw Error(ErrorKind::NotInInterval, "word outside the enumerated elements");
  return i;
}

int Group::parse(const std::string& label) const {
  std::vector<int> word;
  if (label == "e" || label.empty()) return 0;
  std::size_t i = 0;
  while (i < label.size()) {
    char c = label[i];
    if (c == 's' || c == ' ' || c == ',' || c == '_') {
      ++i;
      continue;
    }
    if (c < '0' || c > '9') throw Error(ErrorKind::ConfigError, "bad element label " + label);
    std::size_t j = i;
    while (j < label.size() && label[j] >= '0' && label[j] <= '9') ++j;
    word.push_back(std::stoi(label.substr(i, j - i)) - 1);
    i = j;
  }
  return from_word(word);
}

std::string Group::label(int x) const {
  const auto& w = el_[static_cast<std::size_t>(x)].word;
  if (w.empty()) return "e";
  std::string s;
  for (int g : w) s += "s" + std::to_string(g + 1);
  return s;
}

bool Group::leq(int x, int y) const { return below_[static_cast<std::size_t>(y)][static_cast<std::size_t>(x)]; }

const Vec& Group::root(int t) const {
  auto it = roots_.find(t);
  if (it == roots_.end()) throw Error(ErrorKind::NotInInterval, "not a reflection");
  return it->second;
}

Vec Group::act_root(int w, const Vec& lambda) const { return lambda * el_[static_cast<std::size_t>(w)].inverse; }

std::vector<int> Group::interval(int w) const {
  std::vector<int> out;
  for (std::size_t y = 0; y < el_.size(); ++y)
    if (below_[static_cast<std::size_t>(w)][y]) out.push_back(static_cast<int>(y));
  return out;
}

std::vector<std::vector<int>> Group::reduced_words(int w) const {
  if (el_[static_cast<std::size_t>(w)].length == 0) return {{}};
  std::vector<std::vector<int>> out;
  for (int s = 0; s < sys_.rank; ++s) {
    int ws = rmul_gen(w, s);
    if (ws < 0 || el_[static_cast<std::size_t>(ws)].length >= el_[static_cast<std::size_t>(w)].length) continue;
    for (auto word : reduced_words(ws)) {
      word.push_back(s);
      out.push_back(word);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool bruhat_leq(const Group& g, const std::vector<int>& interval, int x, int y) {
  bool in_x = std::find(interval.begin(), interval.end(), x) != interval.end();
  bool in_y = std::find(interval.begin(), interval.end(), y) != interval.end();
  if (!in_x || !in_y) throw Error(ErrorKind::NotInInterval, "element not in interval");
  return g.leq(x, y);
}

std::vector<ReflectionPair> reflections_between(const Group& g, const std::vector<int>& interval) {
  std::vector<bool> in(g.size(), false);
  for (int x : interval) in[static_cast<std::size_t>(x)] = true;
  std::vector<ReflectionPair> out;
  for (int t : g.reflections())
    for (int x : interval) {
      int tx = g.mul(t, x);
      if (tx < 0 || !in[static_cast<std::size_t>(tx)]) continue;
      if (g[static_cast<std::size_t>(x)].length < g[static_cast<std::size_t>(tx)].length) out.push_back({t, x, tx});
    }
  std::sort(out.begin(), out.end(), [](const ReflectionPair& a, const ReflectionPair& b) {
    return std::tie(a.x, a.tx, a.t) < std::tie(b.x, b.tx, b.t);
  });
  return out;
}

FaithfulReport check_reflection_faithful(const Group& g, const std::vector<int>& interval) {
  FaithfulReport rep;
  rep.global = g.finite() && interval.size() == g.size();
  std::size_t n = static_cast<std::size_t>(g.system().dimV);
  for (int w : interval) {
    Mat d = g[static_cast<std::size_t>(w)].matrix - Mat::identity(n);
    bool hyper = rank(d) == 1;
    if (hyper != g.is_reflection(w))
      rep.violations.push_back(g.label(w) + (hyper ? ": hyperplane fixed but not a reflection"
                                                    : ": reflection without hyperplane fixed space"));
  }
  return rep;
}

long long KLTable::mu(int y, int x) {
  int lx = g_[static_cast<std::size_t>(x)].length, ly = g_[static_cast<std::size_t>(y)].length;
  int diff = lx - ly;
  if (diff <= 0 || diff % 2 == 0) return 0;
  IntPoly p = P(y, x);
  auto k = static_cast<std::size_t>((diff - 1) / 2);
  return k < p.size() ? p[k] : 0;
}

IntPoly KLTable::P(int y, int x) {
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = memo_.find({y, x});
    if (it != memo_.end()) return it->second;
  }
  IntPoly res;
  if (!g_.leq(y, x)) {
    res = {};
  } else if (y == x) {
    res = {1};
  } else {
    int s = -1;
    for (int t = 0; t < g_.system().rank; ++t) {
      int tx = g_.lmul_gen(t, x);
      if (tx >= 0 && g_[static_cast<std::size_t>(tx)].length < g_[static_cast<std::size_t>(x)].length) {
        s = t;
        break;
      }
    }
    int v = g_.lmul_gen(s, x);
    int sy = g_.lmul_gen(s, y);
    int c = g_[static_cast<std::size_t>(sy)].length < g_[static_cast<std::size_t>(y)].length ? 1 : 0;
    add_shifted(res, P(sy, v), 1 - c, 1);
    add_shifted(res, P(y, v), c, 1);
    int lx = g_[static_cast<std::size_t>(x)].length;
    for (std::size_t z = 0; z < g_.size(); ++z) {
      int zi = static_cast<int>(z);
      if (zi == v || !g_.leq(y, zi) || !g_.leq(zi, v)) continue;
      int sz = g_.lmul_gen(s, zi);
      if (g_[static_cast<std::size_t>(sz)].length > g_[z].length) continue;
      long long m = mu(zi, v);
      if (m == 0) continue;
      add_shifted(res, P(y, zi), (lx - g_[z].length) / 2, -m);
    }
    res = trim(res);
  }
  std::lock_guard<std::mutex> lock(mu_);
  memo_.emplace(std::make_pair(y, x), res);
  return res;
}

IntPoly kl_polynomial(KLTable& table, int y, int x) { return table.P(y, x); }

}  // namespace catmg::coxeter
