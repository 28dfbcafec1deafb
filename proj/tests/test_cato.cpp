#include <gtest/gtest.h>

#include <memory>

#include "catmg/checks.hpp"
#include "oracle.hpp"

using namespace catmg;
using namespace catmg::cato;

namespace {

const Context& ctx(const std::string& name) {
  static std::map<std::string, std::unique_ptr<Context>> cache;
  auto& c = cache[name];
  if (!c) c = std::make_unique<Context>(coxeter::builtin(name));
  return *c;
}

bool iso(const FinModule& a, const FinModule& b) { return iso_test(a, b).verdict == IsoVerdict::Isomorphic; }

}  // namespace

TEST(Algebra, DimensionsMatchOracle) {
  for (auto [n, frozen] : {std::pair{"A1", 5LL}, {"A1xA1", 25LL}, {"A2", 77LL}}) {
    EXPECT_EQ(oracle::algebra_dim(oracle::by_name(n)), frozen);
    EXPECT_EQ(static_cast<long long>(ctx(n).algebra().dim()), frozen) << n;
  }
}

TEST(Algebra, A1Structure) {
  const auto& A = ctx("A1").algebra();
  EXPECT_TRUE(A.check_axioms().empty());
  EXPECT_EQ(A.radical_basis().size(), 3u);
  EXPECT_EQ(A.nilpotency_index(), 3);
  EXPECT_EQ(A.block(1, 1).size(), 2u);
  EXPECT_EQ(A.block(0, 0).size(), 1u);
  EXPECT_EQ(A.opposite().dim(), 5u);
}

TEST(Modules, A1Basics) {
  const auto& c = ctx("A1");
  EXPECT_EQ(c.projective(0).dim(), 2u);
  EXPECT_EQ(c.projective(1).dim(), 3u);
  EXPECT_EQ(c.verma(0).dim(), 2u);
  EXPECT_EQ(c.verma(1).dim(), 1u);
  EXPECT_TRUE(iso(c.projective(0), c.verma(0)));
  EXPECT_FALSE(iso(c.verma(0), c.verma(1)));
  EXPECT_EQ(hom_dim(c.verma(1), c.verma(0)), 1u);
  EXPECT_EQ(hom_dim(c.verma(0), c.verma(1)), 0u);
  EXPECT_EQ(top_dims(c.projective(1)), (std::vector<std::size_t>{0, 1}));
}

TEST(Modules, ResolutionOfSimple) {
  const auto& c = ctx("A1");
  // 0 -> P(e) -> P(s) -> P(e) -> L(e) -> 0
  auto R = resolve(c.simple(0), 10);
  EXPECT_EQ(R.length(), 3u);
  EXPECT_TRUE(complex_of(c.simple(0), R).check().empty());
  auto ee = ext_dims(c.simple(0), c.simple(0), 4, 10);
  EXPECT_EQ(ee[0], 1u);
  EXPECT_EQ(ee[1], 0u);
  EXPECT_EQ(ee[2], 1u);
  auto ss = ext_dims(c.simple(1), c.simple(1), 4, 10);
  EXPECT_EQ(ss[0], 1u);
  EXPECT_EQ(ss[2], 0u);
  EXPECT_EQ(ext_dims(c.simple(0), c.simple(1), 4, 10)[1], 1u);
  EXPECT_EQ(ext_dims(c.simple(1), c.simple(0), 4, 10)[1], 1u);
}

TEST(Functors, A2TranslationOfProjectives) {
  const auto& c = ctx("A2");
  const auto& g = c.group();
  int s1 = g.parse("s1"), s1s2 = g.parse("s1s2"), w0 = g.longest();
  auto d = theta_projective(c, 0, s1);
  EXPECT_EQ(d.doubled, IsoVerdict::Isomorphic);
  // θ_{s1} P(s1s2) = P(s1s2s1) + P(s1)
  auto e = theta_projective(c, 0, s1s2);
  std::vector<std::size_t> want(6, 0);
  want[static_cast<std::size_t>(g.parse("s1s2s1"))] = 1;
  want[static_cast<std::size_t>(s1)] = 1;
  EXPECT_EQ(e.mult, want);
  EXPECT_TRUE(c.theta(0, c.simple(0)).is_zero());
  EXPECT_FALSE(c.theta(0, c.simple(w0)).is_zero());
}

TEST(Functors, A2ZuckermanAndPhi) {
  const auto& c = ctx("A2");
  const auto& g = c.group();
  int s = 0, se = g.parse("s1");
  EXPECT_EQ(c.tau(s, c.verma(0)).dim(), c.verma(0).dim() - c.verma(se).dim());
  EXPECT_EQ(c.tau(s, c.simple(se)).dim(), 0u);
  EXPECT_EQ(c.tau(s, c.simple(0)).dim(), 1u);
  auto ph = c.phi(s, c.verma(se));
  EXPECT_EQ(ph.module.dim(), c.verma(0).dim() + c.verma(se).dim());
  EXPECT_TRUE(compose(ph.eps, ph.eta).is_zero());
  EXPECT_TRUE(c.phi(s, c.simple(0)).module.is_zero());
  auto f = four_term(c, s);
  EXPECT_TRUE(f.exact());
  EXPECT_EQ(f.dim_A, 77u);
  EXPECT_EQ(f.dim_phi, f.dim_A + f.dim_J);
}

TEST(Functors, A2TwistingTables) {
  const auto& c = ctx("A2");
  const auto& g = c.group();
  for (int s = 0; s < 2; ++s)
    for (int x = 0; x < 6; ++x) {
      int sx = g.lmul_gen(s, x);
      bool up = g[static_cast<std::size_t>(sx)].length > g[static_cast<std::size_t>(x)].length;
      FinModule T = c.T(s, c.verma(x));
      if (up)
        EXPECT_TRUE(iso(T, c.verma(sx))) << c.label(x);
      else
        EXPECT_EQ(T.dim(), c.verma(sx).dim()) << c.label(x);
      EXPECT_TRUE(iso(c.C(s, c.verma(x)), c.verma(up ? x : sx))) << c.label(x);
    }
  EXPECT_TRUE(iso(c.twist_word({0, 1}, c.verma(0)), c.verma(g.parse("s1s2"))));
  EXPECT_THROW(c.twist_word({0, 0}, c.verma(0)), Error);
}

TEST(Functors, A2DerivedSamples) {
  const auto& c = ctx("A2");
  auto d = derived_dims(c, 0, c.simple(0), 24);
  EXPECT_TRUE(d.complete);
  EXPECT_EQ(d.LT[0], 0u);
  EXPECT_EQ(d.LT[1], 1u);
  auto m = derived_dims(c, 0, c.verma(0), 24);
  EXPECT_EQ(m.LT[0], 4u);
  EXPECT_EQ(m.LT[1], 0u);
  EXPECT_EQ(m.euler(m.LT) + m.euler(m.Ltau), static_cast<long long>(m.dim));
}

TEST(Functors, A2DualitySample) {
  const auto& c = ctx("A2");
  auto a = duality_data(c, 0, c.simple(0), 24);
  auto b = duality_data(c, 0, c.simple(c.group().parse("s2")), 24);
  auto t = zuckerman_duality(a, b, 4);
  EXPECT_EQ(t.lhs, t.rhs);
}

TEST(Functors, VermaFlags) {
  const auto& c = ctx("A2");
  auto f = verma_flag(c, c.projective(0));
  ASSERT_TRUE(f);
  EXPECT_EQ(*f, std::vector<int>{0});
  int w0 = c.group().longest();
  auto top = verma_flag(c, c.projective(w0));
  ASSERT_TRUE(top);
  EXPECT_EQ(top->size(), 6u);
  EXPECT_EQ(top->back(), w0);
  EXPECT_TRUE(verma_flag(c, c.simple(w0)));
  EXPECT_FALSE(verma_flag(c, c.simple(0)));
}

TEST(Suites, SmallGroupsPassEverySuite) {
  for (const char* n : {"A1", "A1xA1"})
    for (const auto& s : suite_names()) {
      auto r = run_suite(ctx(n), s);
      EXPECT_FALSE(r.verdicts.empty()) << n << " " << s;
      for (const auto& v : r.verdicts) EXPECT_TRUE(v.pass) << n << " " << s << ": " << v.name << " " << v.detail;
    }
}

TEST(Suites, Selectors) {
  EXPECT_EQ(expand_suites("all").size(), 11u);
  EXPECT_EQ(expand_suites("zuckerman"), (std::vector<std::string>{"zuckerman_sequence", "derived", "duality"}));
  EXPECT_EQ(expand_suites("twisting"), (std::vector<std::string>{"twisting", "words"}));
  EXPECT_THROW(expand_suites("nope"), Error);
}
