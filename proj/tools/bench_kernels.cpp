// Serial reference vs OpenMP kernels on the heavier checkers. The serial and
// parallel verdicts are compared once per benchmark before timing.
#include <benchmark/benchmark.h>

#include <stdexcept>

#include "stacky/action.hpp"
#include "stacky/examples.hpp"
#include "stacky/kernels.hpp"

using namespace stacky;

namespace {

Exec exec_of(const benchmark::State& state) { return state.range(0) == 0 ? Exec::serial : Exec::parallel; }

void same_verdict(const Verdict& a, const Verdict& b) {
    if (a.passed != b.passed || a.witness != b.witness) throw std::logic_error("serial and parallel verdicts differ");
}

void label(benchmark::State& state) { state.SetLabel(state.range(0) == 0 ? "serial" : "parallel"); }

void BM_groupoid_axioms(benchmark::State& state) {
    auto g = pair_groupoid(static_cast<int>(state.range(1)));
    same_verdict(validate_groupoid(*g, Exec::serial), validate_groupoid(*g, Exec::parallel));
    for (auto _ : state) benchmark::DoNotOptimize(validate_groupoid(*g, exec_of(state)));
    label(state);
}

void BM_equivalence(benchmark::State& state) {
    auto g = pair_groupoid(static_cast<int>(state.range(1)));
    auto f = iso_comma(identity_functor(g), identity_functor(g)).pr1();
    same_verdict(is_equivalence(f, Exec::serial), is_equivalence(f, Exec::parallel));
    for (auto _ : state) benchmark::DoNotOptimize(is_equivalence(f, exec_of(state)));
    label(state);
}

SgPtr product_2group() {
    auto sk = from_skeletal(cyclic_cocycle_2group(3));
    return share(product_presentation(sk, group_presentation(cyclic_group(3))));
}

void BM_g4(benchmark::State& state) {
    auto sg = product_2group();
    same_verdict(check_g4(*sg, Exec::serial), check_g4(*sg, Exec::parallel));
    for (auto _ : state) benchmark::DoNotOptimize(check_g4(*sg, exec_of(state)));
    label(state);
}

void BM_g3(benchmark::State& state) {
    auto sg = product_2group();
    same_verdict(check_g3(*sg, Exec::serial), check_g3(*sg, Exec::parallel));
    for (auto _ : state) benchmark::DoNotOptimize(check_g3(*sg, exec_of(state)));
    label(state);
}

void BM_a4(benchmark::State& state) {
    auto wa = self_action(product_2group(), Side::right);
    same_verdict(check_a2_a4(wa, Exec::serial), check_a2_a4(wa, Exec::parallel));
    for (auto _ : state) benchmark::DoNotOptimize(check_a2_a4(wa, exec_of(state)));
    label(state);
}

void BM_theta(benchmark::State& state) {
    auto sg = product_2group();
    same_verdict(check_theta_coherence(*sg, Exec::serial), check_theta_coherence(*sg, Exec::parallel));
    for (auto _ : state) benchmark::DoNotOptimize(check_theta_coherence(*sg, exec_of(state)));
    label(state);
}

}  // namespace

BENCHMARK(BM_groupoid_axioms)->ArgsProduct({{0, 1}, {16, 32}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_equivalence)->ArgsProduct({{0, 1}, {8, 16}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_g3)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_g4)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_a4)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_theta)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

int main(int argc, char** argv) {
    benchmark::Initialize(&argc, argv);
    std::printf("openmp %s, %d threads\n", kernel::openmp_enabled() ? "on" : "off", kernel::max_threads());
    benchmark::RunSpecifiedBenchmarks();
    benchmark::Shutdown();
    return 0;
}
