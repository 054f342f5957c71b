// amal — classification of simplicial amalgams of finite groups
// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include "amal/classify.hpp"
#include "amal/presets.hpp"

using namespace amal;

namespace {

void bm_group_closure_s6(benchmark::State& state) {
  const Perm swap01 = {1, 0, 2, 3, 4, 5};
  const Perm cycle = {1, 2, 3, 4, 5, 0};
  for (auto _ : state) {
    auto G = FiniteGroup::from_generators(6, {swap01, cycle});
    benchmark::DoNotOptimize(G.order());
  }
}
BENCHMARK(bm_group_closure_s6);

void bm_automorphisms_s4(benchmark::State& state) {
  const auto S4 = presets::symmetric(4);
  for (auto _ : state) {
    const AutGroup A = automorphisms(S4);
    benchmark::DoNotOptimize(A.order());
  }
}
BENCHMARK(bm_automorphisms_s4);

void bm_constrained_automorphisms_d8(benchmark::State& state) {
  const auto D8 = presets::dihedral8();
  Elt four = 0;
  for (Elt x = 1; x < 8; ++x)
    if (D8->element_order(x) == 4) four = x;
  const Subgroup C4 = subgroup_closure(D8, {four});
  for (auto _ : state) {
    const AutGroup A = automorphisms(D8, {C4});
    benchmark::DoNotOptimize(A.order());
  }
}
BENCHMARK(bm_constrained_automorphisms_d8);

void bm_oracle_enumeration_d8_edge(benchmark::State& state) {
  const auto G0 = presets::amalgam("goldschmidt-d8-v4");
  for (auto _ : state) {
    const OracleEnumeration en = oracle_enumerate_type(G0);
    benchmark::DoNotOptimize(en.size());
  }
}
BENCHMARK(bm_oracle_enumeration_d8_edge);

void bm_h1_sl3_fano(benchmark::State& state) {
  const auto G0 = presets::sl3_fano();
  const CoeffPtr A = coefficient_system_of(*G0);
  for (auto _ : state) {
    const CohomologySet H = h1(A);
    benchmark::DoNotOptimize(H.size());
  }
}
BENCHMARK(bm_h1_sl3_fano);

void bm_goldschmidt_s4_d8(benchmark::State& state) {
  const auto G0 = presets::amalgam("goldschmidt-s4-d8");
  for (auto _ : state) {
    const GoldschmidtResult res = goldschmidt(G0);
    benchmark::DoNotOptimize(res.count());
  }
}
BENCHMARK(bm_goldschmidt_s4_d8);

void bm_classify_triangle_s3(benchmark::State& state) {
  const auto G0 = presets::amalgam("triangle-s3");
  for (auto _ : state) {
    const Classification cls = classify(G0);
    benchmark::DoNotOptimize(cls.cohomology.size());
  }
}
BENCHMARK(bm_classify_triangle_s3);

}  // namespace

BENCHMARK_MAIN();
