#include <gtest/gtest.h>

#include "catmg/checks.hpp"
#include "oracle.hpp"

using namespace catmg;

namespace {

std::vector<long long> trimmed(std::vector<long long> p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
  return p;
}

}  // namespace

TEST(BMP, StalksMatchOracleKL) {
  for (const char* n : {"A1", "A1xA1", "A2", "B2", "G2"}) {
    coxeter::Group g(coxeter::builtin(n));
    oracle::Group o = oracle::by_name(n);
    momentgraph::MomentGraph G(g, g.longest());
    for (std::size_t x = 0; x < g.size(); ++x) {
      auto F = zmod::bmp_sheaf(G, static_cast<int>(x)).sheaf;
      for (std::size_t y = 0; y < g.size(); ++y) {
        auto want = trimmed(o.kl(o.of_word(g[y].word), o.of_word(g[x].word)));
        EXPECT_EQ(trimmed(zmod::stalk_graded_rank(F, G.pos(static_cast<int>(y)))), want)
            << n << " " << g.label(static_cast<int>(y)) << " in B(" << g.label(static_cast<int>(x)) << ")";
      }
    }
  }
}

TEST(BMP, FlabbyAndCostalksFree) {
  coxeter::Group g(coxeter::builtin("A2"));
  momentgraph::MomentGraph G(g, g.longest());
  for (std::size_t x = 0; x < g.size(); ++x) {
    auto F = zmod::bmp_sheaf(G, static_cast<int>(x)).sheaf;
    EXPECT_TRUE(momentgraph::flabby_check(G, F, 8).flabby) << g.label(static_cast<int>(x));
  }
  auto S = momentgraph::structure_sheaf(G);
  EXPECT_TRUE(momentgraph::flabby_check(G, S, 8).flabby);
}

TEST(BMP, OutsideIntervalRejected) {
  coxeter::Group g(coxeter::builtin("A2"));
  momentgraph::MomentGraph G(g, g.parse("s1s2"));
  try {
    zmod::bmp_sheaf(G, g.parse("s2s1"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotInInterval);
  }
}

TEST(SectionModules, RanksAndFreeness) {
  coxeter::Group g(coxeter::builtin("A2"));
  momentgraph::MomentGraph G(g, g.longest());
  oracle::Group o = oracle::by_name("A2");
  for (std::size_t x = 0; x < g.size(); ++x) {
    auto B = zmod::sections_B(G, static_cast<int>(x));
    // rank of B(x) = sum_y P_{y,x}(1)
    long long want = 0;
    for (std::size_t y = 0; y < g.size(); ++y)
      want += oracle::at_one(o.kl(o.of_word(g[y].word), o.of_word(g[x].word)));
    EXPECT_EQ(static_cast<long long>(B.rank()), want);
    EXPECT_TRUE(B.graded_free(B.max_degree() + 2));
    auto V = zmod::verma_Z(G, static_cast<int>(x));
    EXPECT_EQ(V.rank(), 1u);
    EXPECT_EQ(V.support(), std::vector<int>{G.pos(static_cast<int>(x))});
  }
}

TEST(SectionModules, TranslationRanksDouble) {
  coxeter::Group g(coxeter::builtin("A2"));
  momentgraph::MomentGraph G(g, g.longest());
  for (std::size_t x = 0; x < g.size(); ++x) {
    auto B = zmod::sections_B(G, static_cast<int>(x));
    for (int s = 0; s < 2; ++s) {
      auto t = zmod::theta_Z(s, B);
      auto p = zmod::phi_Z(s, B);
      EXPECT_EQ(t.module.rank(), 2 * B.rank());
      EXPECT_EQ(p.module.rank(), 2 * B.rank());
      EXPECT_TRUE(t.module.graded_free(t.module.max_degree() + 2));
    }
  }
}

TEST(SectionModules, AMInvolution) {
  coxeter::Group g(coxeter::builtin("A2"));
  momentgraph::MomentGraph G(g, g.longest());
  int st = g.parse("s1s2"), ts = g.parse("s2s1");
  auto B = zmod::sections_B(G, st);
  auto a = zmod::a_M(B);
  auto Bts = zmod::sections_B(G, ts);
  int lo = std::min(a.min_degree(), Bts.min_degree()), hi = std::max(a.max_degree(), Bts.max_degree()) + 2;
  EXPECT_EQ(cato::stalk_table(a, lo, hi), cato::stalk_table(Bts, lo, hi));
  auto aa = zmod::a_M(a);
  for (int d = B.min_degree(); d <= B.max_degree() + 2; ++d) EXPECT_EQ(aa.slice_dim(d), B.slice_dim(d));
}

TEST(SectionModules, HomRanks) {
  coxeter::Group g(coxeter::builtin("A1"));
  momentgraph::MomentGraph G(g, g.longest());
  auto Be = zmod::sections_B(G, 0), Bs = zmod::sections_B(G, 1);
  // graded ranks of Hom_Z(B(x), B(y)) are sum_z r_z(x) r_z(y)
  EXPECT_EQ(zmod::HomModule(Be, Be).rank(), 1u);
  EXPECT_EQ(zmod::HomModule(Be, Bs).rank(), 1u);
  EXPECT_EQ(zmod::HomModule(Bs, Be).rank(), 1u);
  EXPECT_EQ(zmod::HomModule(Bs, Bs).rank(), 2u);
}
