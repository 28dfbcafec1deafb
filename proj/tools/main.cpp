#include <CLI11.hpp>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "catmg/checks.hpp"
#include "catmg/errors.hpp"

using nlohmann::json;
using namespace catmg;
namespace fs = std::filesystem;

namespace {

struct JobConfig {
  std::string system = "A2";
  std::string element;
  int cap = 0;
  bool big = false;
  int jobs = 1;
  std::string output;
  std::string cache_dir;
  bool stable = false;
};

constexpr std::size_t kDeskOrder = 8;

json word_json(const coxeter::Group& g, int x) {
  json w = json::array();
  for (int s : g[static_cast<std::size_t>(x)].word) w.push_back(s + 1);
  return w;
}

coxeter::CoxeterSystem load_system(const std::string& spec) {
  if (fs::is_regular_file(spec)) {
    std::ifstream in(spec);
    std::stringstream ss;
    ss << in.rdbuf();
    return coxeter::from_json_text(ss.str());
  }
  return coxeter::builtin(spec);
}

zmod::BMPOptions bmp_options(const JobConfig& c) {
  zmod::BMPOptions o;
  if (c.cap > 0) o.extra = c.cap;
  return o;
}

// "s1s2s1", "1 2 1" or "121" (single digits when nothing separates them).
std::vector<int> parse_letters(const std::string& text, int rank) {
  std::vector<int> w;
  if (text == "e" || text.empty()) return w;
  bool sep = text.find_first_of("s ,_") != std::string::npos;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (c == 's' || c == ' ' || c == ',' || c == '_') {
      ++i;
      continue;
    }
    if (c < '0' || c > '9') throw Error(ErrorKind::ConfigError, "bad letter in word '" + text + "'");
    std::size_t j = i + 1;
    if (sep)
      while (j < text.size() && text[j] >= '0' && text[j] <= '9') ++j;
    int s = std::stoi(text.substr(i, j - i)) - 1;
    if (s < 0 || s >= rank) throw Error(ErrorKind::ConfigError, "generator index out of range in '" + text + "'");
    w.push_back(s);
    i = j;
  }
  return w;
}

int parse_element(const coxeter::Group& g, const std::string& text) {
  return g.from_word(parse_letters(text, g.system().rank));
}

int parse_generator(const std::string& text, int rank) {
  auto w = parse_letters(text, rank);
  if (w.size() != 1) throw Error(ErrorKind::ConfigError, "expected one generator, got '" + text + "'");
  return w.front();
}

void require_desk(std::size_t order, const JobConfig& c) {
  if (order > kDeskOrder && !c.big)
    throw Error(ErrorKind::ConfigError, "|W| = " + std::to_string(order) + " needs --big");
}

void emit(const json& j, const JobConfig& c) {
  std::string text = j.dump(2) + "\n";
  if (c.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(c.output, std::ios::binary);
  if (!out) throw Error(ErrorKind::ConfigError, "cannot write " + c.output);
  out << text;
}

std::string fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  std::ostringstream o;
  o << std::hex << std::setw(16) << std::setfill('0') << h;
  return o.str();
}

std::string cache_dir(const JobConfig& c) {
  if (!c.cache_dir.empty()) return c.cache_dir;
  const char* env = std::getenv("CATMG_CACHE_DIR");
  return env ? env : "";
}

// ---- graph / kl / bmp ----

json cmd_graph(const JobConfig& c) {
  coxeter::Group g(load_system(c.system));
  if (!g.finite() && c.element.empty()) throw Error(ErrorKind::ConfigError, "infinite group: pass --element");
  int w = c.element.empty() ? g.longest() : parse_element(g, c.element);
  momentgraph::MomentGraph G(g, w);
  json j;
  j["system"] = g.system().name;
  j["top"] = word_json(g, w);
  json verts = json::array();
  for (int v : G.vertices()) verts.push_back(word_json(g, v));
  j["vertices"] = verts;
  json edges = json::array();
  for (const auto& e : G.edges()) {
    json lab = json::array();
    for (const auto& q : e.label) lab.push_back(to_string(q));
    edges.push_back({{"head", word_json(g, e.head)}, {"tail", word_json(g, e.tail)}, {"label", lab}});
  }
  j["edges"] = edges;
  json br = json::array();
  for (int a : G.vertices()) {
    json row = json::array();
    for (int b : G.vertices()) row.push_back(g.leq(a, b) ? 1 : 0);
    br.push_back(row);
  }
  j["bruhat"] = br;
  return j;
}

json cmd_kl(const JobConfig& c, const std::vector<std::string>& pair) {
  coxeter::Group g(load_system(c.system));
  coxeter::KLTable kl(g);
  if (!pair.empty()) {
    if (pair.size() != 2) throw Error(ErrorKind::ConfigError, "--pair takes y and x");
    int y = parse_element(g, pair[0]), x = parse_element(g, pair[1]);
    return {{"P", g.leq(y, x) ? coxeter::intpoly_str(kl.P(y, x)) : "0"}};
  }
  if (!g.finite() && c.element.empty()) throw Error(ErrorKind::ConfigError, "infinite group: pass --element");
  int w = c.element.empty() ? g.longest() : parse_element(g, c.element);
  auto iv = g.interval(w);
  json table = json::array();
  for (int x : iv)
    for (int y : iv)
      if (g.leq(y, x))
        table.push_back({{"y", word_json(g, y)}, {"x", word_json(g, x)}, {"P", coxeter::intpoly_str(kl.P(y, x))}});
  return {{"system", g.system().name}, {"top", word_json(g, w)}, {"table", table}};
}

json bmp_entry(const coxeter::Group& g, const momentgraph::MomentGraph& G, coxeter::KLTable& kl, int x,
               const zmod::BMPOptions& opt) {
  auto F = zmod::bmp_sheaf(G, x, opt).sheaf;
  json stalks = json::array();
  bool ok = true;
  for (std::size_t p = 0; p < G.vertices().size(); ++p) {
    int y = G.vertices()[p];
    auto gr = zmod::stalk_graded_rank(F, static_cast<int>(p));
    while (!gr.empty() && gr.back() == 0) gr.pop_back();
    coxeter::IntPoly want;
    if (g.leq(y, x)) want = kl.P(y, x);
    while (!want.empty() && want.back() == 0) want.pop_back();
    ok = ok && gr == want;
    std::vector<int> degs = F.gdeg[p];
    std::sort(degs.begin(), degs.end());
    stalks.push_back({{"vertex", word_json(g, y)},
                      {"degrees", degs},
                      {"graded_rank", coxeter::intpoly_str(gr)},
                      {"kl", coxeter::intpoly_str(want)}});
  }
  return {{"element", word_json(g, x)}, {"stalks", stalks}, {"kl_match", ok}};
}

json cmd_bmp(const JobConfig& c, bool& pass) {
  auto sys = load_system(c.system);
  coxeter::Group g(sys);
  auto opt = bmp_options(c);
  coxeter::KLTable kl(g);
  std::vector<int> xs;
  int top;
  if (c.element.empty()) {
    if (!g.finite()) throw Error(ErrorKind::ConfigError, "infinite group: pass --element");
    require_desk(g.size(), c);
    top = g.longest();
    for (int x = 0; x < static_cast<int>(g.size()); ++x) xs.push_back(x);
  } else {
    top = parse_element(g, c.element);
    xs.push_back(top);
  }
  momentgraph::MomentGraph G(g, top);
  std::string dir = cache_dir(c);
  json out = json::array();
  pass = true;
  for (int x : xs) {
    json e;
    fs::path file;
    if (!dir.empty()) {
      std::string key = coxeter::to_json_text(sys) + "|" + g.label(top) + "|" + g.label(x) + "|" +
                        std::to_string(opt.extra);
      file = fs::path(dir) / ("bmp-" + fnv1a(key) + ".json");
      if (fs::is_regular_file(file)) {
        std::ifstream in(file);
        e = json::parse(in, nullptr, false);
      }
    }
    if (e.is_discarded() || e.is_null()) {
      e = bmp_entry(g, G, kl, x, opt);
      if (!file.empty()) {
        fs::create_directories(file.parent_path());
        std::ofstream(file) << e.dump() << "\n";
      }
    }
    pass = pass && e.at("kl_match").get<bool>();
    out.push_back(e);
  }
  return {{"system", g.system().name}, {"top", word_json(g, top)}, {"sheaves", out}, {"pass", pass}};
}

// ---- algebra-level commands ----

std::unique_ptr<cato::Context> make_context(const JobConfig& c) {
  auto sys = load_system(c.system);
  coxeter::Group g(sys);
  if (!g.finite()) throw Error(ErrorKind::ConfigError, "the algebra needs a finite group");
  require_desk(g.size(), c);
  return std::make_unique<cato::Context>(sys, bmp_options(c));
}

json module_json(const cato::Context& ctx, const cato::FinModule& M) {
  json w = json::array(), t = json::array();
  auto top = cato::top_dims(M);
  for (int x = 0; x < ctx.size(); ++x) {
    if (M.wdim(x)) w.push_back({{"element", word_json(ctx.group(), x)}, {"dim", M.wdim(x)}});
    if (top[static_cast<std::size_t>(x)])
      t.push_back({{"element", word_json(ctx.group(), x)}, {"dim", top[static_cast<std::size_t>(x)]}});
  }
  return {{"label", M.label()}, {"dim", M.dim()}, {"weights", w}, {"top", t}};
}

struct ModuleRef {
  char kind;
  int x;
};

ModuleRef parse_module(const cato::Context& ctx, const std::string& text) {
  if (text.size() < 4 || text[1] != '(' || text.back() != ')' || std::string("PML").find(text[0]) == std::string::npos)
    throw Error(ErrorKind::ConfigError, "module label must look like P(s1), M(e) or L(s1s2)");
  return {text[0], parse_element(ctx.group(), text.substr(2, text.size() - 3))};
}

cato::FinModule build_module(const cato::Context& ctx, ModuleRef r) {
  if (r.kind == 'P') return ctx.projective(r.x);
  if (r.kind == 'M') return ctx.verma(r.x);
  return ctx.simple(r.x);
}

json standard_matches(const cato::Context& ctx, const cato::FinModule& M) {
  json out = json::array();
  for (int x = 0; x < ctx.size(); ++x) {
    const cato::FinModule P = ctx.projective(x), L = ctx.simple(x);
    for (const cato::FinModule* N : {&P, &ctx.verma(x), &L}) {
      if (N->wdims() != M.wdims()) continue;
      if (cato::iso_test(M, *N).verdict == cato::IsoVerdict::Isomorphic) out.push_back(N->label());
    }
  }
  return out;
}

json cmd_algebra(const JobConfig& c) {
  auto ctx = make_context(c);
  const auto& A = ctx->algebra();
  const auto& g = ctx->group();
  json basis = json::array();
  for (std::size_t a = 0; a < A.dim(); ++a)
    basis.push_back({{"index", a},
                     {"label", ctx->basis_label(a)},
                     {"source", word_json(g, A[a].right)},
                     {"target", word_json(g, A[a].left)},
                     {"degree", A[a].degree}});
  json idem = json::array();
  for (int x = 0; x < ctx->size(); ++x) idem.push_back(A.idem(x));
  json prod = json::array();
  for (std::size_t a = 0; a < A.dim(); ++a)
    for (std::size_t b = 0; b < A.dim(); ++b) {
      if (A[a].right != A[b].left) continue;
      const auto& p = A.mul(a, b);
      if (p.empty()) continue;
      json terms = json::array();
      for (const auto& [k, q] : p) terms.push_back({k, to_string(q)});
      prod.push_back({{"a", a}, {"b", b}, {"ab", terms}});
    }
  return {{"system", g.system().name}, {"dim", A.dim()},       {"basis", basis},
          {"idempotents", idem},       {"products", prod},     {"radical_dim", A.radical_basis().size()},
          {"arrows", A.arrows()}};
}

json cmd_verma_homs(const JobConfig& c, bool& pass) {
  auto ctx = make_context(c);
  const auto& g = ctx->group();
  auto table = cato::verma_hom_table(*ctx, c.jobs);
  json entries = json::array();
  std::size_t nonzero = 0;
  pass = true;
  for (const auto& e : table) {
    nonzero += e.dim > 0;
    bool ok = e.dim == (e.expected ? 1u : 0u) && e.injective;
    pass = pass && ok;
    entries.push_back({{"source", word_json(g, e.x)},
                       {"target", word_json(g, e.y)},
                       {"dim", e.dim},
                       {"expected", e.expected ? 1 : 0},
                       {"injective", e.injective}});
  }
  return {{"system", g.system().name}, {"entries", entries}, {"nonzero", nonzero}, {"pass", pass}};
}

json cmd_translate(const JobConfig& c, const std::string& gen, const std::string& module, const std::string& functor) {
  auto ctx = make_context(c);
  int s = parse_generator(gen, ctx->rank());
  auto ref = parse_module(*ctx, module);
  cato::FinModule M = build_module(*ctx, ref);
  json j{{"system", ctx->group().system().name}, {"s", s + 1}, {"functor", functor}, {"input", module_json(*ctx, M)}};
  if (functor == "theta") {
    cato::FinModule R = ctx->theta(s, M);
    j["result"] = module_json(*ctx, R);
    if (ref.kind == 'P') {
      auto d = cato::theta_projective(*ctx, s, ref.x);
      json m = json::array();
      for (int y = 0; y < ctx->size(); ++y)
        if (d.mult[static_cast<std::size_t>(y)])
          m.push_back({{"projective", word_json(ctx->group(), y)}, {"multiplicity", d.mult[static_cast<std::size_t>(y)]}});
      j["decomposition"] = m;
      j["cover_bijective"] = d.cover_bijective;
    }
  } else if (functor == "phi") {
    auto ph = ctx->phi(s, M);
    j["result"] = module_json(*ctx, ph.module);
    j["eps_eta_zero"] = cato::compose(ph.eps, ph.eta).is_zero();
  } else if (functor == "tau") {
    j["result"] = module_json(*ctx, ctx->tau(s, M));
  } else {
    throw Error(ErrorKind::ConfigError, "unknown functor " + functor);
  }
  return j;
}

json cmd_twist(const JobConfig& c, const std::string& word, const std::string& module) {
  auto ctx = make_context(c);
  auto letters = parse_letters(word, ctx->rank());
  auto ref = parse_module(*ctx, module);
  cato::FinModule M = build_module(*ctx, ref);
  cato::FinModule R = ctx->twist_word(letters, M);
  json w = json::array();
  for (int s : letters) w.push_back(s + 1);
  return {{"system", ctx->group().system().name},
          {"word", w},
          {"input", module_json(*ctx, M)},
          {"result", module_json(*ctx, R)},
          {"isomorphic_to", standard_matches(*ctx, R)}};
}

json cmd_verify(const JobConfig& c, const std::string& selector, bool& pass) {
  auto suites = cato::expand_suites(selector);
  auto ctx = make_context(c);
  cato::SuiteOptions opt;
  opt.jobs = c.jobs;
  json out = json::array();
  std::size_t passing = 0;
  pass = true;
  for (const auto& name : suites) {
    auto r = cato::run_suite(*ctx, name, opt);
    json v = json::array();
    for (const auto& x : r.verdicts) v.push_back({{"name", x.name}, {"pass", x.pass}, {"detail", x.detail}});
    json s{{"name", r.name}, {"pass", r.pass()}, {"verdicts", v}, {"skipped", r.skipped}};
    if (!c.stable) s["seconds"] = r.seconds;
    out.push_back(s);
    passing += r.pass();
    pass = pass && r.pass();
  }
  return {{"system", ctx->group().system().name},
          {"selector", selector},
          {"suites", out},
          {"passing_suites", passing},
          {"pass", pass}};
}

int exit_code(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::ConfigError:
    case ErrorKind::NotReducedWord:
    case ErrorKind::NotInInterval:
      return 2;
    case ErrorKind::DegreeCapExhausted:
      return 3;
    default:
      return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Category O from moment graphs: algebra, functors and checks"};
  app.require_subcommand(1);
  JobConfig cfg;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--system", cfg.system, "built-in name (A1, A1xA1, A2, B2, G2, A3) or realization JSON file");
    sub->add_option("--cap", cfg.cap, "slack for degree caps")->check(CLI::PositiveNumber);
    sub->add_flag("--big", cfg.big, "allow groups beyond the desk scale");
    sub->add_option("--jobs", cfg.jobs, "worker threads")->check(CLI::PositiveNumber);
    sub->add_option("-o,--output", cfg.output, "write JSON here instead of stdout");
  };
  auto* graph = app.add_subcommand("graph", "moment graph of [e, w]");
  common(graph);
  graph->add_option("--element,-w", cfg.element, "top element (default w0)");
  auto* kl = app.add_subcommand("kl", "Kazhdan-Lusztig oracle");
  common(kl);
  kl->add_option("--element,-w", cfg.element, "top element (default w0)");
  std::vector<std::string> pair;
  kl->add_option("--pair", pair, "y x")->expected(2);
  auto* bmp = app.add_subcommand("bmp", "Braden-MacPherson sheaves with KL cross-check");
  common(bmp);
  bmp->add_option("--element,-w", cfg.element, "single element (its interval graph)");
  bmp->add_option("--cache-dir", cfg.cache_dir, "sheaf cache (default $CATMG_CACHE_DIR)");
  auto* alg = app.add_subcommand("algebra", "dump the algebra A");
  common(alg);
  auto* vh = app.add_subcommand("verma-homs", "Hom(M(x), M(y)) table");
  common(vh);
  std::string gen, module, functor = "theta", word, suite = "all";
  auto* tr = app.add_subcommand("translate", "apply θ_s (or φ_s, τ_s) to a module");
  common(tr);
  tr->add_option("--s", gen, "simple reflection")->required();
  tr->add_option("--module", module, "P(x), M(x) or L(x)")->required();
  tr->add_option("--functor", functor, "theta, phi or tau")->check(CLI::IsMember({"theta", "phi", "tau"}));
  auto* tw = app.add_subcommand("twist", "apply T_{s_1}...T_{s_l} to a module");
  common(tw);
  tw->add_option("--word", word, "letters, e.g. s1s2s1")->required();
  tw->add_option("--module", module, "P(x), M(x) or L(x)")->required();
  auto* ver = app.add_subcommand("verify", "run the acceptance suites");
  common(ver);
  ver->add_option("--suite", suite, "all, translation, zuckerman, twisting, verma or a single suite");
  ver->add_flag("--stable", cfg.stable, "omit timings");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    bool pass = true;
    json out;
    if (*graph)
      out = cmd_graph(cfg);
    else if (*kl)
      out = cmd_kl(cfg, pair);
    else if (*bmp)
      out = cmd_bmp(cfg, pass);
    else if (*alg)
      out = cmd_algebra(cfg);
    else if (*vh)
      out = cmd_verma_homs(cfg, pass);
    else if (*tr)
      out = cmd_translate(cfg, gen, module, functor);
    else if (*tw)
      out = cmd_twist(cfg, word, module);
    else if (*ver)
      out = cmd_verify(cfg, suite, pass);
    emit(out, cfg);
    return pass ? 0 : 1;
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return exit_code(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
