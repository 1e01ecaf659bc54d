#include <benchmark/benchmark.h>

#include <random>

#include "quartred/pipeline.hpp"

using namespace quartred;

namespace {

const char* kKlein = "x1^3*x2 + x2^3*x3 + x3^3*x1";
const char* kFermat = "x1^4 + x2^4 + x3^4";

ContextPtr fermat_tower(int W) { return make_field(5, std::vector<long>{2, 4, 1}, {{-5}, {1}}, W); }

void BM_PadicMul(benchmark::State& st) {
  auto K = make_field(13, std::vector<long>{2, 12, 1}, {{7488}, {11544}, {6474}, {2886}, {1560}, {546}, {78}, {1}},
                      int(st.range(0)));
  std::mt19937_64 rng(1);
  std::vector<std::vector<mpz_class>> w(7, std::vector<mpz_class>(2));
  for (auto& r : w)
    for (auto& x : r) x = long(rng() % 13);
  w[0][0] = 1;
  Padic a = K->from_coeffs(w), b = a.inverse();
  for (auto _ : st) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_PadicMul)->Arg(14)->Arg(84)->Arg(168);

void BM_PadicInverse(benchmark::State& st) {
  auto K = fermat_tower(int(st.range(0)));
  Padic a = K->from_int(3) + K->tau();
  for (auto _ : st) benchmark::DoNotOptimize(a.inverse());
}
BENCHMARK(BM_PadicInverse)->Arg(20)->Arg(80);

void BM_Discriminant(benchmark::State& st) {
  RationalPoly F = parse_polynomial(kKlein);
  for (auto _ : st) benchmark::DoNotOptimize(discriminant_quartic(F));
}
BENCHMARK(BM_Discriminant)->Unit(benchmark::kMillisecond);

void BM_BitangentsFermat(benchmark::State& st) {
  RationalPoly F = parse_polynomial(kFermat);
  auto K = fermat_tower(80);
  for (auto _ : st) benchmark::DoNotOptimize(solve_bitangents(F, K, 20));
}
BENCHMARK(BM_BitangentsFermat)->Unit(benchmark::kMillisecond);

void BM_AronholdCensus(benchmark::State& st) {
  auto K = fermat_tower(80);
  auto B = solve_bitangents(parse_polynomial(kFermat), K, 20);
  for (auto _ : st) {
    SyzygyTable T(B.lines, 20);
    benchmark::DoNotOptimize(count_aronhold(T));
  }
}
BENCHMARK(BM_AronholdCensus)->Unit(benchmark::kMillisecond);

void BM_OcticEquivalent(benchmark::State& st) {
  auto F = FiniteField::prime(13);
  BinaryForm f = binary_form(*F, {1, 3, 0, 5, 0, 0, 2, 0, 1});
  BinaryForm g = binary_form(*F, {-1, 0, 0, 0, 0, 0, 0, 1, 0});
  for (auto _ : st) benchmark::DoNotOptimize(octic_equivalent(f, g));
}
BENCHMARK(BM_OcticEquivalent)->Unit(benchmark::kMillisecond);

void BM_PointCount(benchmark::State& st) {
  auto F = std::make_shared<FiniteField>(13, FiniteField::find_irreducible(13, 2));
  BinaryForm f = binary_form(*F, {-1, 0, 0, 0, 0, 0, 0, 1, 0});
  for (auto _ : st) benchmark::DoNotOptimize(point_count(f));
}
BENCHMARK(BM_PointCount);

void BM_KleinPipeline(benchmark::State& st) {
  JobSpec job;
  job.p = 7;
  job.unram = {0, 1};
  job.eis = {{7}, {0}, {0}, {0}, {0}, {0}, {0}, {0}, {0}, {0}, {0}, {0}, {1}};
  job.precision = 40;
  job.quartic = parse_polynomial(kKlein);
  job.quartic_text = kKlein;
  job.mode = Mode::Classify;
  for (auto _ : st) benchmark::DoNotOptimize(run_pipeline(job));
}
BENCHMARK(BM_KleinPipeline)->Unit(benchmark::kSecond)->Iterations(1);

}  // namespace

BENCHMARK_MAIN();
