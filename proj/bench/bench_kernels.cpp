// Serial versus OpenMP kernels over F_2 and F_{2^4}.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "treepin/kernels.hpp"

namespace {

using treepin::Elem;
using treepin::ExtField;
using treepin::FMatrix;

std::vector<Elem> random_elems(const ExtField& f, std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Elem> out(count);
  for (auto& e : out) e = Elem{static_cast<std::uint32_t>(rng() % f.order())};
  return out;
}

template <bool Parallel>
void BM_Multiply(benchmark::State& state) {
  const auto field = ExtField::make(2, static_cast<unsigned>(state.range(1)));
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = random_elems(*field, n * n, 1);
  const auto b = random_elems(*field, n * n, 2);
  std::vector<Elem> out(n * n);
  for (auto _ : state) {
    if constexpr (Parallel) {
      treepin::kernels::multiply(*field, a, b, out, n, n, n);
    } else {
      treepin::kernels::serial::multiply(*field, a, b, out, n, n, n);
    }
    benchmark::DoNotOptimize(out.data());
  }
}

template <bool Parallel>
void BM_EliminateColumn(benchmark::State& state) {
  const auto field = ExtField::make(2, static_cast<unsigned>(state.range(1)));
  const auto n = static_cast<std::size_t>(state.range(0));
  auto base = random_elems(*field, n * n, 3);
  base[0] = Elem{1};
  std::vector<Elem> work(base.size());
  for (auto _ : state) {
    work = base;
    if constexpr (Parallel) {
      treepin::kernels::eliminate_column(*field, work, n, n, 0, 0);
    } else {
      treepin::kernels::serial::eliminate_column(*field, work, n, n, 0, 0);
    }
    benchmark::DoNotOptimize(work.data());
  }
}

template <bool Parallel>
void BM_ImageCounts(benchmark::State& state) {
  const auto field = ExtField::make(2, 1);
  const auto rows = static_cast<std::size_t>(state.range(0));
  FMatrix m(field, rows, rows / 2);
  const auto vals = random_elems(*field, m.data().size(), 4);
  std::copy(vals.begin(), vals.end(), m.data().begin());
  for (auto _ : state) {
    auto counts = Parallel ? treepin::kernels::image_counts(m, std::uint64_t{1} << 24)
                           : treepin::kernels::serial::image_counts(m, std::uint64_t{1} << 24);
    benchmark::DoNotOptimize(counts.total);
  }
}

}  // namespace

BENCHMARK(BM_Multiply<false>)->Args({64, 1})->Args({64, 4})->Args({128, 4});
BENCHMARK(BM_Multiply<true>)->Args({64, 1})->Args({64, 4})->Args({128, 4});
BENCHMARK(BM_EliminateColumn<false>)->Args({256, 1})->Args({256, 4});
BENCHMARK(BM_EliminateColumn<true>)->Args({256, 1})->Args({256, 4});
BENCHMARK(BM_ImageCounts<false>)->Arg(12)->Arg(16);
BENCHMARK(BM_ImageCounts<true>)->Arg(12)->Arg(16);

BENCHMARK_MAIN();
