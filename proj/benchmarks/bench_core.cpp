#include <benchmark/benchmark.h>

#include "cqlearn/analysis.hpp"
#include "cqlearn/experiment.hpp"
#include "cqlearn/random.hpp"

using namespace cqlearn;

namespace {

DensityMatrix random_density(int n, RandomSource& rng) {
  Eigen::MatrixXcd g(n, n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) g(r, c) = Complex(rng.gaussian(), rng.gaussian());
  }
  Eigen::MatrixXcd p = g * g.adjoint();
  p /= p.trace().real();
  p = 0.5 * (p + p.adjoint());
  return DensityMatrix(ComplexMatrix(std::move(p)));
}

}  // namespace

static void BM_HolevoHelstrom(benchmark::State& state) {
  RandomSource rng(1);
  const int dim = int(state.range(0));
  const DensityMatrix a = random_density(dim, rng);
  const DensityMatrix b = random_density(dim, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(holevo_helstrom(a, b));
  }
}
BENCHMARK(BM_HolevoHelstrom)->Arg(2)->Arg(8)->Arg(32)->Arg(128);

static void BM_Fidelity(benchmark::State& state) {
  RandomSource rng(2);
  const int dim = int(state.range(0));
  const DensityMatrix a = random_density(dim, rng);
  const DensityMatrix b = random_density(dim, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(fidelity(a, b));
  }
}
BENCHMARK(BM_Fidelity)->Arg(2)->Arg(8)->Arg(32)->Arg(128);

static void BM_ExactRademacher(benchmark::State& state) {
  RandomSource rng(3);
  const std::size_t n = std::size_t(state.range(0));
  std::vector<std::vector<double>> values(32, std::vector<double>(n));
  for (auto& row : values) {
    for (auto& v : row) v = rng.uniform() < 0.5 ? 1.0 : 0.0;
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(empirical_rademacher_exact(values));
  }
}
BENCHMARK(BM_ExactRademacher)->Arg(8)->Arg(12)->Arg(16);

static void BM_ErmNoiseCorrected(benchmark::State& state) {
  RandomSource rng(4);
  auto dom = Domain::line(50);
  const ConceptClass cls = thresholds_class(dom);
  const std::size_t m = std::size_t(state.range(0));
  ClassicalSample sample;
  for (std::size_t i = 0; i < m; ++i) {
    sample.items.emplace_back(std::size_t(rng.uniform() * 50),
                              rng.uniform() < 0.5 ? 1 : 0);
  }
  const NoisePair noise(0.15, 0.15);
  for (auto _ : state) {
    benchmark::DoNotOptimize(erm_noise_corrected(sample, cls, noise));
  }
}
BENCHMARK(BM_ErmNoiseCorrected)->Arg(1000)->Arg(100000);

static void BM_RealizableLearner(benchmark::State& state) {
  RandomSource rng(5);
  auto dom = Domain::line(50);
  const ConceptClass cls = thresholds_class(dom);
  const Concept target = cls.member(25);
  const std::size_t m = std::size_t(state.range(0));
  ClassicalSample sample;
  for (std::size_t i = 0; i < m; ++i) {
    const auto x = std::size_t(rng.uniform() * 50);
    const std::uint8_t flip = rng.uniform() < 0.15 ? 1 : 0;
    sample.items.emplace_back(x, target(x) ^ flip);
  }
  const LearnerConfig config{0.1, 0.05, 0.15};
  for (auto _ : state) {
    benchmark::DoNotOptimize(realizable_learner(sample, cls, config));
  }
}
BENCHMARK(BM_RealizableLearner)->Arg(100)->Arg(1000)->Arg(10000);

static void BM_ExperimentTrial(benchmark::State& state) {
  auto dom = Domain::line(50);
  ConceptClass cls = thresholds_class(dom);
  const LabelPair gs = LabelPair::ground_state_pair();
  Experiment exp{"agnostic",
                 cls,
                 gs,
                 holevo_helstrom(gs.sigma0, gs.sigma1),
                 LabeledDistribution::uniform_from_concept(cls.member(25))
                     .flip_labels(0.25),
                 LearnerKind::kErmNoiseCorrected,
                 0.2,
                 {GridPoint{std::size_t(state.range(0)), 0.2, 0.1}},
                 1,
                 9001};
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_experiment(exp));
  }
}
BENCHMARK(BM_ExperimentTrial)->Arg(1000)->Arg(100000);

static void BM_MutualInfoExact(benchmark::State& state) {
  const LabelPair pair = LabelPair::pure_with_overlap(0.5);
  const int d = int(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(mutual_info_single_example(d, 0.01, pair));
  }
}
BENCHMARK(BM_MutualInfoExact)->Arg(2)->Arg(8);

BENCHMARK_MAIN();
