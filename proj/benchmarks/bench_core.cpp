#include <benchmark/benchmark.h>

#include "jbstar/exceptional.hpp"
#include "jbstar/sampling.hpp"
#include "jbstar/spheres.hpp"
#include "jbstar/tingley.hpp"
#include "jbstar/two_projections.hpp"

using namespace jbstar;

namespace {

const Tolerances tol;

void BM_JordanProduct(benchmark::State& state, const char* desc) {
  Algebra alg = Algebra::parse(desc);
  Rng rng(1);
  Element a = random_element(alg, rng), b = random_element(alg, rng);
  for (auto _ : state) benchmark::DoNotOptimize(jordan_product(a, b));
}

void BM_Spectrum(benchmark::State& state, const char* desc) {
  Algebra alg = Algebra::parse(desc);
  Rng rng(2);
  Element a = random_self_adjoint(alg, rng);
  for (auto _ : state) benchmark::DoNotOptimize(j_spectrum(a, tol));
}

void BM_GlennieEval(benchmark::State& state) {
  Algebra h3 = Algebra::h3o();
  Rng rng(3);
  Element x = random_box_self_adjoint(h3, rng);
  Element y = random_box_self_adjoint(h3, rng);
  Element z = random_box_self_adjoint(h3, rng);
  for (auto _ : state) benchmark::DoNotOptimize(glennie_eval(x, y, z));
}

void BM_TwoProjRepresentation(benchmark::State& state) {
  Algebra m4 = Algebra::matrix(4);
  Rng rng(4);
  Element p = random_projection(m4, rng, tol, {false, false});
  Element q = random_projection(m4, rng, tol, {false, false});
  for (auto _ : state) {
    Rng sub = rng.substream(state.iterations());
    benchmark::DoNotOptimize(build_representation(p, q, tol, sub));
  }
}

void BM_DoubleSphere(benchmark::State& state) {
  Algebra m3 = Algebra::matrix(3);
  Rng rng(5);
  Element a = random_positive_sphere(m3, rng, tol);
  for (auto _ : state) {
    Rng sub = rng.substream(state.iterations());
    benchmark::DoNotOptimize(double_sphere_test(a, tol, sub, 25));
  }
}

void BM_ExtendIsometry(benchmark::State& state) {
  Algebra alg = Algebra::parse("sum:mat:2,spin:4");
  Rng rng(6);
  SphereMap delta = synthesize_sphere_isometry(random_jordan_iso(alg, rng), tol, rng);
  for (auto _ : state) {
    Rng sub = rng.substream(state.iterations());
    benchmark::DoNotOptimize(extend_isometry(delta, tol, sub, 50));
  }
}

}  // namespace

BENCHMARK_CAPTURE(BM_JordanProduct, mat4, "mat:4");
BENCHMARK_CAPTURE(BM_JordanProduct, spin8, "spin:8");
BENCHMARK_CAPTURE(BM_JordanProduct, h3o, "h3o");
BENCHMARK_CAPTURE(BM_Spectrum, mat4, "mat:4");
BENCHMARK_CAPTURE(BM_Spectrum, spin8, "spin:8");
BENCHMARK_CAPTURE(BM_Spectrum, h3o, "h3o");
BENCHMARK(BM_GlennieEval);
BENCHMARK(BM_TwoProjRepresentation);
BENCHMARK(BM_DoubleSphere);
BENCHMARK(BM_ExtendIsometry);

BENCHMARK_MAIN();
