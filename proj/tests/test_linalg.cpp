#include <gtest/gtest.h>

#include "catmg/linalg.hpp"
#include "catmg/polylin.hpp"

using namespace catmg;

namespace {

Mat M(std::initializer_list<std::initializer_list<long>> rows) {
  std::vector<Vec> rs;
  std::size_t c = 0;
  for (auto r : rows) {
    Vec v;
    for (long x : r) v.emplace_back(x);
    c = v.size();
    rs.push_back(v);
  }
  return Mat::from_rows(rs, c);
}

}  // namespace

TEST(Linalg, RankAndKernel) {
  Mat a = M({{1, 2, 3}, {2, 4, 6}, {1, 0, 1}});
  EXPECT_EQ(rank(a), 2u);
  Mat k = kernel(a);
  ASSERT_EQ(k.rows, 1u);
  Vec v = k.row(0);
  for (std::size_t i = 0; i < a.rows; ++i) {
    Q s = 0;
    for (std::size_t j = 0; j < 3; ++j) s += a(i, j) * v[j];
    EXPECT_EQ(s, 0);
  }
  Mat lk = left_kernel(a);
  ASSERT_EQ(lk.rows, 1u);
  EXPECT_TRUE(is_zero(lk.row(0) * a));
}

TEST(Linalg, InverseAndDeterminant) {
  Mat a = M({{2, 1}, {7, 4}});
  EXPECT_EQ(determinant(a), 1);
  auto inv = inverse(a);
  ASSERT_TRUE(inv);
  EXPECT_EQ(*inv * a, Mat::identity(2));
  EXPECT_FALSE(inverse(M({{1, 2}, {2, 4}})));
}

TEST(Linalg, RowSolver) {
  Mat a = M({{1, 1, 0}, {0, 1, 1}});
  RowSolver rs(a);
  auto x = rs.solve(Vec{Q(2), Q(5), Q(3)});
  ASSERT_TRUE(x);
  EXPECT_EQ((*x)[0], 2);
  EXPECT_EQ((*x)[1], 3);
  EXPECT_FALSE(rs.contains(Vec{Q(1), Q(0), Q(0)}));
}

TEST(Linalg, RowSolverZeroWidth) {
  RowSolver rs(Mat(3, 0));
  auto x = rs.solve(Vec{});
  ASSERT_TRUE(x);
  EXPECT_EQ(x->size(), 3u);
  RowSolver none(Mat(0, 2));
  EXPECT_TRUE(none.contains(Vec{Q(0), Q(0)}));
  EXPECT_FALSE(none.contains(Vec{Q(1), Q(0)}));
}

TEST(Linalg, Span) {
  Span s(3);
  EXPECT_TRUE(s.add(Vec{Q(1), Q(2), Q(0)}));
  EXPECT_TRUE(s.add(Vec{Q(0), Q(1), Q(1)}));
  EXPECT_FALSE(s.add(Vec{Q(1), Q(3), Q(1)}));
  EXPECT_EQ(s.dim(), 2u);
  EXPECT_TRUE(s.contains(Vec{Q(2), Q(5), Q(1)}));
}

TEST(Polylin, ArithmeticAndDegree) {
  using polylin::Poly;
  Poly x = Poly::var(2, 0), y = Poly::var(2, 1);
  Poly p = (x + y) * (x - y);
  EXPECT_EQ(p, x * x - y * y);
  EXPECT_EQ(p.degree(), 4);
  EXPECT_THROW((x * x + y).degree(), Error);
  EXPECT_EQ(Poly(2).degree(), -1);
}

TEST(Polylin, DivideAndMod) {
  using polylin::Poly;
  Poly x = Poly::var(2, 0), y = Poly::var(2, 1);
  Vec alpha{Q(1), Q(-1)};
  Poly p = (x - y) * (x + y * Q(3));
  EXPECT_EQ(polylin::divide_exact(p, alpha), x + y * Q(3));
  EXPECT_TRUE(polylin::mod_linear(p, alpha).is_zero());
  EXPECT_THROW(polylin::divide_exact(x * y, alpha), Error);
}

TEST(Polylin, SliceDims) {
  EXPECT_EQ(polylin::slice_dim(2, 0), 1u);
  EXPECT_EQ(polylin::slice_dim(2, 4), 3u);
  EXPECT_EQ(polylin::slice_dim(3, 4), 6u);
  EXPECT_EQ(polylin::slice_dim(3, 3), 0u);
  EXPECT_EQ(polylin::slice_dim(3, -2), 0u);
  EXPECT_EQ(polylin::free_dim(2, {0, 2}, 4), 3u + 2u);
}
