#include <benchmark/benchmark.h>

#include "hofercert/certify.hpp"
#include "hofercert/rng.hpp"

using namespace hofercert;

namespace {

CotangentPoint shell_point(int N, int shell, std::uint64_t stream) {
    CotangentPoint pt = sample_region_point(RegionSpec::shell(N, shell, 2), 1u, stream);
    pt.chart = Chart::Cover;
    return pt;
}

}  // namespace

static void BM_ProfileEval(benchmark::State& state) {
    const int N = static_cast<int>(state.range(0));
    const auto profile = build_profile(1, N);
    double s = 0.0;
    for (auto _ : state) {
        s += 3e-7;
        if (s >= 3.0) s = 0.0;
        benchmark::DoNotOptimize(profile.value(s));
        benchmark::DoNotOptimize(profile.deriv(s));
    }
}
BENCHMARK(BM_ProfileEval)->Arg(1)->Arg(4)->Arg(8);

static void BM_ExactFlowSum(benchmark::State& state) {
    const int N = static_cast<int>(state.range(0));
    const HamiltonianFamily family(N);
    LatticeElement a;
    a.a = Eigen::VectorXi::Constant(N, 2);
    a.a[0] = -3;
    const auto pt = shell_point(N, 1, 5u);
    for (auto _ : state) benchmark::DoNotOptimize(exact_flow_sum(family, a, 1.0, pt));
}
BENCHMARK(BM_ExactFlowSum)->Arg(2)->Arg(4)->Arg(8);

static void BM_RegionSampling(benchmark::State& state) {
    const RegionSpec region = RegionSpec::lifted_shell(2, 2, 2.0, Eigen::VectorXd::Zero(2));
    std::uint64_t stream = 0;
    for (auto _ : state) benchmark::DoNotOptimize(sample_region_point(region, 9u, ++stream));
}
BENCHMARK(BM_RegionSampling);

static void BM_FdJacobianResidual(benchmark::State& state) {
    const BallEmbedding embedding =
        make_ball_embedding(RegionSpec::lifted_shell(2, 2, 2.0, Eigen::VectorXd::Zero(2)));
    SampleRng rng(3u, 0u);
    const Eigen::VectorXd z =
        rng.in_ball(Eigen::VectorXd::Zero(4), embedding.ball_radius * (1 - 1e-9));
    CotangentPoint pt;
    pt.q = z.head(2);
    pt.p = z.tail(2);
    pt.chart = Chart::Cover;
    for (auto _ : state)
        benchmark::DoNotOptimize(fd_symplectic_residual(embedding.map, pt, 1e-5));
}
BENCHMARK(BM_FdJacobianResidual);

static void BM_Oscillation(benchmark::State& state) {
    const int N = static_cast<int>(state.range(0));
    const HamiltonianFamily family(N);
    LatticeElement a;
    a.a = Eigen::VectorXi::Constant(N, 1);
    a.a[N - 1] = -2;
    for (auto _ : state) benchmark::DoNotOptimize(oscillation(family, a));
}
BENCHMARK(BM_Oscillation)->Arg(2)->Arg(4)->Arg(6);

static void BM_DeckDichotomyCase(benchmark::State& state) {
    const HamiltonianFamily family(2);
    const ModelConfig model = ModelConfig::standard(2);
    const auto a = LatticeElement::of({3, -5});
    const DeckTransformation deck{(Eigen::VectorXi(2) << 1, 0).finished()};
    for (auto _ : state)
        benchmark::DoNotOptimize(deck_dichotomy(family, model, a, deck, 200, 7u));
}
BENCHMARK(BM_DeckDichotomyCase);

static void BM_BallEmbeddingCertificate(benchmark::State& state) {
    const RegionSpec target = RegionSpec::lifted_shell(2, 2, 2.0, Eigen::VectorXd::Zero(2));
    for (auto _ : state)
        benchmark::DoNotOptimize(certify_ball_embedding(target, 1000, 11u, 1e-5, 10));
}
BENCHMARK(BM_BallEmbeddingCertificate);

BENCHMARK_MAIN();
