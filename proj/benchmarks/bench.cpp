#include <benchmark/benchmark.h>

#include "catmg/checks.hpp"

using namespace catmg;

namespace {

const char* kSystems[] = {"A1", "A1xA1", "A2", "B2", "G2", "A3"};

void BM_GroupAndKL(benchmark::State& st) {
  auto sys = coxeter::builtin(kSystems[st.range(0)]);
  for (auto _ : st) {
    coxeter::Group g(sys);
    coxeter::KLTable kl(g);
    int w0 = g.longest();
    for (std::size_t y = 0; y < g.size(); ++y)
      if (g.leq(static_cast<int>(y), w0)) benchmark::DoNotOptimize(kl.P(static_cast<int>(y), w0));
  }
  st.SetLabel(kSystems[st.range(0)]);
}
BENCHMARK(BM_GroupAndKL)->DenseRange(0, 5)->Unit(benchmark::kMillisecond);

void BM_BMPTop(benchmark::State& st) {
  coxeter::Group g(coxeter::builtin(kSystems[st.range(0)]));
  momentgraph::MomentGraph G(g, g.longest());
  for (auto _ : st) benchmark::DoNotOptimize(zmod::bmp_sheaf(G, g.longest()));
  st.SetLabel(kSystems[st.range(0)]);
}
BENCHMARK(BM_BMPTop)->DenseRange(0, 4)->Unit(benchmark::kMillisecond);

void BM_A3Pair(benchmark::State& st) {
  coxeter::Group g(coxeter::builtin("A3"));
  int x = g.parse("s2s1s3s2");
  momentgraph::MomentGraph G(g, x);
  for (auto _ : st) benchmark::DoNotOptimize(zmod::bmp_sheaf(G, x));
}
BENCHMARK(BM_A3Pair)->Unit(benchmark::kMillisecond);

void BM_Context(benchmark::State& st) {
  auto sys = coxeter::builtin(kSystems[st.range(0)]);
  for (auto _ : st) {
    cato::Context c(sys);
    benchmark::DoNotOptimize(c.algebra().dim());
  }
  st.SetLabel(kSystems[st.range(0)]);
}
BENCHMARK(BM_Context)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

const cato::Context& a2() {
  static cato::Context c(coxeter::builtin("A2"));
  return c;
}

void BM_ResolveSimple(benchmark::State& st) {
  const auto& c = a2();
  auto L = c.simple(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(cato::resolve(L, 24));
}
BENCHMARK(BM_ResolveSimple)->DenseRange(0, 5)->Unit(benchmark::kMillisecond);

void BM_HomBasis(benchmark::State& st) {
  const auto& c = a2();
  auto P = c.projective(c.group().longest());
  for (auto _ : st) benchmark::DoNotOptimize(cato::hom_basis(P, P));
}
BENCHMARK(BM_HomBasis)->Unit(benchmark::kMillisecond);

void BM_ThetaProjective(benchmark::State& st) {
  const auto& c = a2();
  for (auto _ : st) benchmark::DoNotOptimize(c.theta(0, c.projective(static_cast<int>(st.range(0)))));
}
BENCHMARK(BM_ThetaProjective)->DenseRange(0, 5)->Unit(benchmark::kMillisecond);

void BM_FourTerm(benchmark::State& st) {
  const auto& c = a2();
  for (auto _ : st) benchmark::DoNotOptimize(cato::four_term(c, 0));
}
BENCHMARK(BM_FourTerm)->Unit(benchmark::kMillisecond);

void BM_VermaHomTable(benchmark::State& st) {
  const auto& c = a2();
  for (auto _ : st) benchmark::DoNotOptimize(cato::verma_hom_table(c));
}
BENCHMARK(BM_VermaHomTable)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
