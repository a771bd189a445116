#include <benchmark/benchmark.h>

#include "hypercox/assembly.hpp"
#include "hypercox/commensurability.hpp"

using namespace hypercox;

static void BM_StrataGeometric(benchmark::State& st) {
  Polytope<double> P = ks_normals<double>(FamilyTime::parse("0.9"));
  for (auto _ : st) benchmark::DoNotOptimize(enumerate_strata(P, StrataMode::Geometric));
}
BENCHMARK(BM_StrataGeometric)->Unit(benchmark::kMillisecond);

static void BM_StrataDiagram(benchmark::State& st) {
  Polytope<double> P = ks_normals<double>(FamilyTime::parse("0.9"));
  for (auto _ : st) benchmark::DoNotOptimize(enumerate_strata(P, StrataMode::Diagram));
}
BENCHMARK(BM_StrataDiagram)->Unit(benchmark::kMillisecond);

static void BM_StrataExactBoth(benchmark::State& st) {
  Polytope<MultiQuad> P = ks_normals<MultiQuad>(FamilyTime::parse("t1"));
  for (auto _ : st) benchmark::DoNotOptimize(enumerate_strata(P, StrataMode::Both));
}
BENCHMARK(BM_StrataExactBoth)->Unit(benchmark::kMillisecond)->Iterations(3);

static void BM_Schlafli(benchmark::State& st) {
  std::vector<double> ts;
  for (int k = 0; k < st.range(0); ++k) ts.push_back(kT1 + (1 - kT1) * (k + 0.5) / st.range(0));
  double v1 = closed_form_volume(FamilyTime::parse("1"));
  for (auto _ : st) benchmark::DoNotOptimize(schlafli_integrate(1.0, v1, ts));
}
BENCHMARK(BM_Schlafli)->Arg(10)->Arg(100)->Unit(benchmark::kMillisecond);

static void BM_ClosedForm(benchmark::State& st) {
  double t = 0.3;
  for (auto _ : st) {
    benchmark::DoNotOptimize(closed_form_volume(FamilyTime::from_double(t)));
    t = t < 0.99 ? t + 0.001 : 0.3;
  }
}
BENCHMARK(BM_ClosedForm);

static void BM_AssembleN(benchmark::State& st) {
  FamilyTime ft = FamilyTime::parse("0.9");
  for (auto _ : st) {
    AssembledComplex N = n_complex(ft);
    benchmark::DoNotOptimize(stratum_surfaces(N));
    benchmark::DoNotOptimize(cusp_cycles(N));
  }
}
BENCHMARK(BM_AssembleN)->Unit(benchmark::kMillisecond);

static void BM_Commensurability(benchmark::State& st) {
  ExactGram G = ExactGram::from_polytope(preset_polytope<MultiQuad>(parse_preset("Q@t1")));
  for (auto _ : st) benchmark::DoNotOptimize(commensurability_class(G));
}
BENCHMARK(BM_Commensurability)->Unit(benchmark::kMillisecond);

static void BM_MultiQuadProduct(benchmark::State& st) {
  MultiQuad a = MultiQuad::parse("1/2 + 3*sqrt(2) - sqrt(15)"), b = MultiQuad::parse("sqrt(3) - 2/7*sqrt(10)");
  for (auto _ : st) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_MultiQuadProduct);

BENCHMARK_MAIN();
