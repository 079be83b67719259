// Serial against OpenMP for the parallel kernels. Each benchmark takes the
// execution mode as its argument: 0 serial, 1 parallel.

#include <benchmark/benchmark.h>

#include "weyl/expr_parser.hpp"
#include "weyl/probes.hpp"
#include "weyl/properties.hpp"

using namespace weyl;

namespace {

Exec mode(const benchmark::State& state) { return state.range(0) ? Exec::parallel : Exec::serial; }

std::shared_ptr<Context> weyl_q() {
    auto ctx = std::make_shared<Context>(FieldSpec::rational());
    VarId t = ctx->add_variable("t", VarKind::polynomial);
    ctx->add_derivation(Derivation("d1", {{t, AElement::constant(ctx->one())}}));
    return ctx;
}

std::shared_ptr<Context> two_variables() {
    auto ctx = std::make_shared<Context>(FieldSpec::rational());
    VarId t1 = ctx->add_variable("t1", VarKind::polynomial);
    VarId t2 = ctx->add_variable("t2", VarKind::laurent);
    ctx->add_derivation(Derivation("d1", {{t1, AElement::constant(ctx->one())}, {t2, AElement{}}}));
    ctx->add_derivation(Derivation("d2", {{t1, AElement{}}, {t2, parse_a_element("t2", *ctx)}}));
    return ctx;
}

void BM_lie_closure(benchmark::State& state) {
    auto ctx = weyl_q();
    Window w({{0, {0, 6}}}, 3);
    SubspaceBasis f1 = compute_f1(*ctx, w);
    WeylElement seed = normalize("t*d1", *ctx);
    for (auto _ : state) {
        auto v = lie_ideal_closure_probe(*ctx, seed, w, f1, {mode(state), {1, 2}});
        benchmark::DoNotOptimize(v.coverage);
    }
}

void BM_assoc_closure(benchmark::State& state) {
    auto ctx = two_variables();
    Window w({{0, {0, 2}}, {1, {-1, 1}}}, 1);
    WeylElement seed = normalize("t1*d2", *ctx);
    for (auto _ : state) {
        auto v = assoc_ideal_closure_probe(*ctx, seed, w, mode(state));
        benchmark::DoNotOptimize(v.coverage);
    }
}

void BM_theta_kernel(benchmark::State& state) {
    auto ctx = two_variables();
    Window w({{0, {0, 3}}, {1, {-2, 2}}}, 2);
    for (auto _ : state) {
        auto v = theta_kernel(*ctx, w, mode(state));
        benchmark::DoNotOptimize(v.coverage);
    }
}

void BM_property_trials(benchmark::State& state) {
    auto ctx = two_variables();
    VerifyOptions opts;
    opts.trials = 200;
    opts.exec = mode(state);
    for (auto _ : state) {
        auto r = run_suite(*ctx, "associativity", opts);
        benchmark::DoNotOptimize(r.failures);
    }
}

}  // namespace

BENCHMARK(BM_lie_closure)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_assoc_closure)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_theta_kernel)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_property_trials)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
