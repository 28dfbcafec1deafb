#include <gtest/gtest.h>

#include "catmg/coxeter.hpp"
#include "catmg/momentgraph.hpp"
#include "oracle.hpp"

using namespace catmg;

namespace {

std::vector<long long> trimmed(std::vector<long long> p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
  return p;
}

class Groups : public ::testing::TestWithParam<std::pair<std::string, std::size_t>> {};

}  // namespace

TEST_P(Groups, OrderLengthsAndBruhatMatchOracle) {
  auto [name, order] = GetParam();
  coxeter::Group g(coxeter::builtin(name));
  oracle::Group o = oracle::by_name(name);
  ASSERT_TRUE(g.finite());
  EXPECT_EQ(g.size(), order);
  ASSERT_EQ(static_cast<std::size_t>(o.size()), order);
  std::vector<int> to(order);
  for (std::size_t x = 0; x < order; ++x) {
    to[x] = o.of_word(g[x].word);
    EXPECT_EQ(g[x].length, o.len(to[x])) << g.label(static_cast<int>(x));
  }
  for (std::size_t x = 0; x < order; ++x)
    for (std::size_t y = 0; y < order; ++y)
      EXPECT_EQ(g.leq(static_cast<int>(y), static_cast<int>(x)), o.leq(to[y], to[x]));
  EXPECT_EQ(to[static_cast<std::size_t>(g.longest())], o.longest());
  EXPECT_EQ(g.reduced_words(g.longest()).size(), o.count_reduced_words(o.longest()));
}

TEST_P(Groups, KLMatchesOracle) {
  auto [name, order] = GetParam();
  coxeter::Group g(coxeter::builtin(name));
  oracle::Group o = oracle::by_name(name);
  coxeter::KLTable kl(g);
  for (std::size_t x = 0; x < order; ++x)
    for (std::size_t y = 0; y < order; ++y) {
      int ox = o.of_word(g[x].word), oy = o.of_word(g[y].word);
      auto got = g.leq(static_cast<int>(y), static_cast<int>(x)) ? trimmed(kl.P(static_cast<int>(y), static_cast<int>(x)))
                                                                 : std::vector<long long>{};
      EXPECT_EQ(got, trimmed(o.kl(oy, ox))) << name << " " << g.label(static_cast<int>(y)) << " "
                                            << g.label(static_cast<int>(x));
    }
}

INSTANTIATE_TEST_SUITE_P(Builtin, Groups,
                         ::testing::Values(std::make_pair(std::string("A1"), std::size_t{2}),
                                           std::make_pair(std::string("A1xA1"), std::size_t{4}),
                                           std::make_pair(std::string("A2"), std::size_t{6}),
                                           std::make_pair(std::string("B2"), std::size_t{8}),
                                           std::make_pair(std::string("G2"), std::size_t{12}),
                                           std::make_pair(std::string("A3"), std::size_t{24})));

TEST(Coxeter, A3NontrivialKL) {
  coxeter::Group g(coxeter::builtin("A3"));
  coxeter::KLTable kl(g);
  int w = g.parse("s2s1s3s2");
  EXPECT_EQ(trimmed(kl.P(g.parse("s2"), w)), (std::vector<long long>{1, 1}));
  EXPECT_EQ(trimmed(kl.P(g.identity(), w)), (std::vector<long long>{1, 1}));
  EXPECT_EQ(coxeter::intpoly_str({1, 1}), "1+q");
}

TEST(Coxeter, LabelsAndParsing) {
  coxeter::Group g(coxeter::builtin("A2"));
  EXPECT_EQ(g.label(0), "e");
  int x = g.parse("s1s2");
  EXPECT_EQ(g.label(x), "s1s2");
  EXPECT_EQ(g.parse("1 2"), x);
  EXPECT_EQ(g.inv(x), g.parse("s2s1"));
  EXPECT_EQ(g.mul(x, g.inv(x)), 0);
  EXPECT_EQ(g.reflections().size(), 3u);
  EXPECT_TRUE(g.is_reflection(g.parse("s1s2s1")));
  EXPECT_FALSE(g.is_reflection(x));
}

TEST(Coxeter, BadSystemsRejected) {
  auto sys = coxeter::builtin("A2");
  auto m = sys.m;
  m[0][1] = m[1][0] = 4;
  try {
    coxeter::build_system(m, sys.gen, sys.alpha);
    FAIL() << "braid order accepted";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::WrongBraidOrder);
  }
  auto gens = sys.gen;
  gens[0] = Mat::identity(gens[0].rows);
  EXPECT_THROW(coxeter::build_system(sys.m, gens, sys.alpha), Error);
}

TEST(Coxeter, JsonRoundTrip) {
  auto sys = coxeter::builtin("B2");
  auto back = coxeter::from_json_text(coxeter::to_json_text(sys));
  EXPECT_EQ(back.m, sys.m);
  EXPECT_EQ(coxeter::Group(back).size(), 8u);
}

TEST(Coxeter, ReflectionFaithful) {
  for (const char* n : {"A1", "A2", "B2", "G2", "A3"}) {
    coxeter::Group g(coxeter::builtin(n));
    auto r = coxeter::check_reflection_faithful(g, g.interval(g.longest()));
    EXPECT_TRUE(r.pass()) << n;
  }
}

TEST(MomentGraph, EdgesAreReflectionPairs) {
  for (const char* n : {"A1", "A2", "B2", "A3"}) {
    coxeter::Group g(coxeter::builtin(n));
    oracle::Group o = oracle::by_name(n);
    momentgraph::MomentGraph G(g, g.longest());
    // reflections = odd-length involutions in these types
    std::size_t refl = 0;
    for (int x = 0; x < o.size(); ++x)
      if (o.len(x) % 2 == 1 && o.of_word([&] {
            auto w = o.word(x);
            std::reverse(w.begin(), w.end());
            return w;
          }()) == x)
        ++refl;
    EXPECT_EQ(G.edges().size(), g.size() * refl / 2) << n;
    for (const auto& e : G.edges()) {
      EXPECT_LT(g[static_cast<std::size_t>(e.head)].length, g[static_cast<std::size_t>(e.tail)].length);
      EXPECT_EQ(g.mul(e.refl, e.head), e.tail);
    }
  }
}

TEST(MomentGraph, SubintervalAndUpsets) {
  coxeter::Group g(coxeter::builtin("A2"));
  int x = g.parse("s1s2");
  momentgraph::MomentGraph G(g, x);
  EXPECT_EQ(G.vertices().size(), 4u);
  EXPECT_EQ(G.edges().size(), 4u);
  EXPECT_FALSE(G.contains(g.parse("s2s1")));
  auto up = momentgraph::principal_upset(G, g.parse("s1"));
  EXPECT_TRUE(momentgraph::is_upset(G, up.verts));
  EXPECT_EQ(up.verts.size(), 2u);
}

TEST(MomentGraph, StructureAlgebraAndSeparation) {
  coxeter::Group g(coxeter::builtin("A2"));
  momentgraph::MomentGraph G(g, g.longest());
  EXPECT_EQ(momentgraph::structure_sections(G, 0).dim(), 1u);
  auto lambda = momentgraph::separating_lambda(G);
  auto rep = momentgraph::euler_report(G, lambda);
  EXPECT_TRUE(rep.separating);
  EXPECT_TRUE(momentgraph::in_structure_algebra(G, rep.zeta));
  for (int s = 0; s < 2; ++s) EXPECT_TRUE(momentgraph::in_structure_algebra(G, momentgraph::c_element(G, s)));
  EXPECT_THROW(momentgraph::euler_element(G, Vec(static_cast<std::size_t>(G.nvars()), Q(0))), Error);
}
