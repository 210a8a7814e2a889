// SPDX-License-Identifier: Apache-2.0
//
// Microbenchmarks for the hot library paths: decompositions, the
// diagonalizing design, MMSE-SIC rate evaluation, and the two
// optimizers on small scenario sizes.

#include <benchmark/benchmark.h>

#include <random>

#include "mimodiag/channel.hpp"
#include "mimodiag/matdecomp.hpp"
#include "mimodiag/optim.hpp"
#include "mimodiag/transceiver.hpp"

using namespace mimodiag;

namespace {

Matrix random_complex(std::mt19937_64& rng, Eigen::Index rows,
                      Eigen::Index cols) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) {
      m(r, c) = Complex(gauss(rng), gauss(rng));
    }
  }
  return m;
}

Matrix random_psd(std::mt19937_64& rng, Eigen::Index dim, Eigen::Index rank) {
  const Matrix f = random_complex(rng, dim, rank);
  const Matrix s = f * f.adjoint();
  return 0.5 * (s + s.adjoint());
}

void BM_TruncatedSvd(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const Eigen::Index n = state.range(0);
  const Matrix h = random_complex(rng, n, n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(truncated_svd(h));
  }
}
BENCHMARK(BM_TruncatedSvd)->Arg(4)->Arg(16)->Arg(64);

void BM_PsdSqrt(benchmark::State& state) {
  std::mt19937_64 rng(2);
  const Eigen::Index n = state.range(0);
  const Matrix s = random_psd(rng, n, n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(psd_sqrt(s));
  }
}
BENCHMARK(BM_PsdSqrt)->Arg(4)->Arg(16)->Arg(64);

void BM_CapacityAchievingDesign(benchmark::State& state) {
  std::mt19937_64 rng(3);
  const Eigen::Index n = state.range(0);
  const Matrix h = random_complex(rng, n, n);
  const TransmitCovariance s_x(random_psd(rng, n, n));
  for (auto _ : state) {
    benchmark::DoNotOptimize(capacity_achieving_design(h, s_x));
  }
}
BENCHMARK(BM_CapacityAchievingDesign)->Arg(4)->Arg(16)->Arg(64);

void BM_MmseSicRate(benchmark::State& state) {
  std::mt19937_64 rng(4);
  const Eigen::Index n = state.range(0);
  const Matrix h = random_complex(rng, n, n);
  const Matrix v = random_complex(rng, n, n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(mmse_sic_rate(h, v));
  }
}
BENCHMARK(BM_MmseSicRate)->Arg(4)->Arg(16)->Arg(64);

void BM_WmmseIc(benchmark::State& state) {
  std::mt19937_64 rng(5);
  const Eigen::Index n = state.range(0);
  std::array<std::array<Matrix, 2>, 2> h;
  for (int j = 0; j < 2; ++j) {
    for (int k = 0; k < 2; ++k) h[j][k] = random_complex(rng, n, n);
  }
  const IcScenario sc(h, 10.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(wmmse_ic(sc, 50, 1e-6, 0));
  }
}
BENCHMARK(BM_WmmseIc)->Arg(2)->Arg(4)->Arg(8);

void BM_CrCapacityOpt(benchmark::State& state) {
  std::mt19937_64 rng(6);
  const Eigen::Index n = state.range(0);
  const CrScenario sc{random_complex(rng, n, n), random_complex(rng, n, n),
                      10.0, 2.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(cr_capacity_opt(sc));
  }
}
BENCHMARK(BM_CrCapacityOpt)->Arg(2)->Arg(4)->Arg(8);

}  // namespace

BENCHMARK_MAIN();
