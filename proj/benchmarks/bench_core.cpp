#include <benchmark/benchmark.h>

#include "swarmopt/acquisition.hpp"
#include "swarmopt/message.hpp"
#include "swarmopt/objective.hpp"

namespace {

using namespace swarmopt;

struct Data {
  Eigen::MatrixXd x;
  std::vector<double> y;
};

Data ackley_data(std::size_t n, std::size_t d) {
  Rng rng(1);
  const auto space = bench::ackley_space(d);
  std::vector<std::vector<double>> rows;
  Data out;
  for (std::size_t i = 0; i < n; ++i) {
    const auto p = sample_uniform(space, rng);
    rows.push_back(normalize(space, p).coords);
    out.y.push_back(bench::ackley(p.coords));
  }
  out.x = gp::to_matrix(rows, d);
  return out;
}

void BM_GpFit(benchmark::State& state) {
  const auto data = ackley_data(static_cast<std::size_t>(state.range(0)), 2);
  const auto h = gp::KernelHyper::isotropic(2, 1.0, 0.2, 1e-4);
  for (auto _ : state) benchmark::DoNotOptimize(gp::GpModel::fit(data.x, data.y, h));
}
BENCHMARK(BM_GpFit)->Arg(10)->Arg(30)->Arg(50);

void BM_SelectHyperparameters(benchmark::State& state) {
  const auto data = ackley_data(static_cast<std::size_t>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(gp::select_hyperparameters(data.x, data.y));
}
BENCHMARK(BM_SelectHyperparameters)->Arg(10)->Arg(30)->Arg(50);

void BM_ProposeBatch(benchmark::State& state) {
  const auto space = bench::ackley_space(2);
  const auto data = ackley_data(20, 2);
  const auto model = gp::GpModel::fit(data.x, data.y, gp::select_hyperparameters(data.x, data.y));
  Rng rng(2);
  const auto q = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        acquisition::propose_batch(model, space, {}, q, acquisition::LieStrategy::ConstantLiarMean, rng));
  }
}
BENCHMARK(BM_ProposeBatch)->Arg(1)->Arg(5)->Arg(10);

void BM_CodecRoundTrip(benchmark::State& state) {
  const Message msg = Candidate{123456789, {0.1, -2.5e-300, 1e300, 42.0}};
  for (auto _ : state) benchmark::DoNotOptimize(decode(encode(msg)));
}
BENCHMARK(BM_CodecRoundTrip);

}  // namespace

BENCHMARK_MAIN();
