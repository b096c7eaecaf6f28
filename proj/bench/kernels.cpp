#include <benchmark/benchmark.h>

#include <random>

#include "perverx/gf.hpp"

using perverx::gf::Field;
using perverx::gf::Matrix;

namespace {

Matrix random_matrix(int q, std::size_t n, unsigned seed) {
  const Field& f = Field::get(q);
  std::mt19937 rng(seed);
  Matrix m(f, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = static_cast<perverx::gf::Elem>(rng() % q);
  return m;
}

void BM_multiply(benchmark::State& st) {
  Matrix a = random_matrix(3, st.range(0), 1), b = random_matrix(3, st.range(0), 2);
  for (auto _ : st) benchmark::DoNotOptimize(perverx::gf::multiply(a, b));
}

void BM_multiply_serial(benchmark::State& st) {
  Matrix a = random_matrix(3, st.range(0), 1), b = random_matrix(3, st.range(0), 2);
  for (auto _ : st) benchmark::DoNotOptimize(perverx::gf::multiply_serial(a, b));
}

void BM_rref(benchmark::State& st) {
  Matrix a = random_matrix(static_cast<int>(st.range(1)), st.range(0), 3);
  for (auto _ : st) benchmark::DoNotOptimize(perverx::gf::rref(a));
}

void BM_rref_serial(benchmark::State& st) {
  Matrix a = random_matrix(static_cast<int>(st.range(1)), st.range(0), 3);
  for (auto _ : st) benchmark::DoNotOptimize(perverx::gf::rref_serial(a));
}

}  // namespace

BENCHMARK(BM_multiply)->Arg(64)->Arg(144)->Arg(288);
BENCHMARK(BM_multiply_serial)->Arg(64)->Arg(144)->Arg(288);
BENCHMARK(BM_rref)->Args({144, 3})->Args({288, 3})->Args({288, 9});
BENCHMARK(BM_rref_serial)->Args({144, 3})->Args({288, 3})->Args({288, 9});

BENCHMARK_MAIN();
