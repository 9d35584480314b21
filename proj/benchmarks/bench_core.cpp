#include <benchmark/benchmark.h>

#include "slpca/slpca.hpp"

namespace {

using namespace slpca;

const DataMatrix& helix_1000() {
  static const DataMatrix data = gen_helix(1000, 3.0, 1.0, 42);
  return data;
}

void BM_KnnContiguity(benchmark::State& state) {
  const auto data = gen_helix(state.range(0), 3.0, 1.0, 42);
  for (auto _ : state) {
    benchmark::DoNotOptimize(knn_contiguity(data, 3));
  }
}
BENCHMARK(BM_KnnContiguity)->Arg(500)->Arg(1000)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_LocalCovariance(benchmark::State& state) {
  const auto& data = helix_1000();
  const auto M = knn_contiguity(data, 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(local_covariance(data, M, 3));
  }
}
BENCHMARK(BM_LocalCovariance)->Unit(benchmark::kMicrosecond);

void BM_ContiguityAxes(benchmark::State& state) {
  const int p = static_cast<int>(state.range(0));
  const Eigen::MatrixXd values =
      Eigen::MatrixXd::Random(400, p) +
      0.1 * Eigen::MatrixXd::Random(400, p);
  const auto data = DataMatrix::with_default_names(values);
  const auto M = knn_contiguity(data, 3);
  const Eigen::MatrixXd vstar = local_covariance(data, M, 3);
  const Eigen::MatrixXd v = total_covariance(data);
  for (auto _ : state) {
    benchmark::DoNotOptimize(contiguity_axes(vstar, v, p / 2));
  }
}
BENCHMARK(BM_ContiguityAxes)->Arg(5)->Arg(19)->Unit(benchmark::kMicrosecond);

void BM_PcaAxes(benchmark::State& state) {
  const int p = static_cast<int>(state.range(0));
  const Eigen::MatrixXd values = Eigen::MatrixXd::Random(400, p);
  const Eigen::MatrixXd v = total_covariance(DataMatrix::with_default_names(values));
  for (auto _ : state) {
    benchmark::DoNotOptimize(pca_axes(v, p / 2));
  }
}
BENCHMARK(BM_PcaAxes)->Arg(5)->Arg(19)->Unit(benchmark::kMicrosecond);

void BM_EvalBasis(benchmark::State& state) {
  const auto basis = make_basis(3, 12, -9.0, 9.0);
  double x = -9.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(eval_basis(basis, x));
    x += 0.37;
    if (x > 9.0) x = -9.0;
  }
}
BENCHMARK(BM_EvalBasis);

void BM_FitAdditiveSpline(benchmark::State& state) {
  const auto& data = helix_1000();
  const auto centered = center_standardize(data, false).first;
  const auto axes = pca_axes(total_covariance(centered), 1);
  const auto basis = complete_basis(axes, 1);
  const auto [X, Z] = project(centered, basis);
  for (auto _ : state) {
    benchmark::DoNotOptimize(fit_additive_spline(X, Z, 12, 3));
  }
}
BENCHMARK(BM_FitAdditiveSpline)->Unit(benchmark::kMillisecond);

void BM_Fit(benchmark::State& state) {
  const auto& data = helix_1000();
  const auto centered = center_standardize(data, false).first;
  const auto M = knn_contiguity(centered, 3);
  const auto axes =
      contiguity_axes(local_covariance(centered, M, 3), total_covariance(centered), 1);
  const RegressionSpec spec{RegressionKind::spline, 12, 3, {}};
  for (auto _ : state) {
    benchmark::DoNotOptimize(fit(data, axes, 1, spec, false));
  }
}
BENCHMARK(BM_Fit)->Unit(benchmark::kMillisecond);

void BM_Sample(benchmark::State& state) {
  const auto& data = helix_1000();
  const auto centered = center_standardize(data, false).first;
  const auto axes = pca_axes(total_covariance(centered), 1);
  const auto model =
      fit(data, axes, 1, RegressionSpec{RegressionKind::spline, 12, 3, {}}, false);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample(model, state.range(0), 7));
  }
}
BENCHMARK(BM_Sample)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_Reconstruct(benchmark::State& state) {
  const auto& data = helix_1000();
  const auto centered = center_standardize(data, false).first;
  const auto axes = pca_axes(total_covariance(centered), 1);
  const auto model =
      fit(data, axes, 1, RegressionSpec{RegressionKind::spline, 12, 3, {}}, false);
  for (auto _ : state) {
    benchmark::DoNotOptimize(reconstruct(model, data));
  }
}
BENCHMARK(BM_Reconstruct)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
