#include <benchmark/benchmark.h>

#include "qmi/geometry.hpp"
#include "qmi/oracle.hpp"
#include "qmi/random.hpp"
#include "qmi/sysid.hpp"

namespace {

qmi::PiMatrix make_pi(qmi::Index q, qmi::Index p) {
    qmi::rnd::Engine rng(1);
    const qmi::Matrix neg22 = qmi::rnd::spd(rng, p, 0.1);
    const qmi::Matrix b12 = qmi::rnd::gaussian(rng, q, p);
    const qmi::Matrix seed = qmi::rnd::gaussian(rng, q, q);
    const qmi::Matrix b11 =
        seed * seed.transpose() + b12 * neg22.ldlt().solve(b12.transpose());
    qmi::Matrix m(q + p, q + p);
    m.topLeftCorner(q, q) = b11;
    m.topRightCorner(q, p) = b12;
    m.bottomLeftCorner(p, q) = b12.transpose();
    m.bottomRightCorner(p, p) = -neg22;
    return qmi::PiMatrix(q, p, qmi::detail::symmetrized(m));
}

void BM_Summarize(benchmark::State& state) {
    const qmi::PiMatrix pi = make_pi(state.range(0), state.range(0));
    const qmi::GaugeSpec g = qmi::GaugeSpec::frobenius();
    for (auto _ : state) {
        benchmark::DoNotOptimize(qmi::summarize(pi, g));
    }
}
BENCHMARK(BM_Summarize)->Arg(2)->Arg(4)->Arg(8)->Arg(16);

void BM_ExtremalMember(benchmark::State& state) {
    const qmi::PiMatrix pi = make_pi(state.range(0), state.range(0));
    const qmi::GaugeSpec g = qmi::GaugeSpec::spectral();
    for (auto _ : state) {
        benchmark::DoNotOptimize(qmi::extremal_member(pi, g));
    }
}
BENCHMARK(BM_ExtremalMember)->Arg(2)->Arg(4)->Arg(8);

void BM_BoundarySample(benchmark::State& state) {
    const qmi::PiMatrix pi = make_pi(3, 3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(qmi::sample(pi, state.range(0), 7, qmi::SampleMode::boundary));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_BoundarySample)->Arg(16)->Arg(256);

void BM_IdentifyRc(benchmark::State& state) {
    const qmi::RcScenario scenario;
    const auto run = qmi::run_rc(scenario, 11, 0.1);
    const auto data = qmi::build_data_matrices(run.u, run.y, 1, 0);
    const auto noise = qmi::rc_noise_model(scenario);
    const std::vector<qmi::GaugeSpec> gauges{qmi::GaugeSpec::frobenius(),
                                             qmi::GaugeSpec::spectral(),
                                             qmi::GaugeSpec::nuclear()};
    for (auto _ : state) {
        benchmark::DoNotOptimize(qmi::identify(data, noise, gauges));
    }
}
BENCHMARK(BM_IdentifyRc);

void BM_EmpiricalRadius(benchmark::State& state) {
    const qmi::PiMatrix pi = make_pi(3, 3);
    const qmi::GaugeSpec g = qmi::GaugeSpec::nuclear();
    for (auto _ : state) {
        benchmark::DoNotOptimize(qmi::empirical_radius(pi, g, state.range(0), 3));
    }
}
BENCHMARK(BM_EmpiricalRadius)->Arg(128)->Arg(1024);

} // namespace

BENCHMARK_MAIN();
