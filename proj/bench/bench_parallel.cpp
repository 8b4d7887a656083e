// OpenMP kernels against their serial references.

#include <benchmark/benchmark.h>

#include "saddle/doubly_radial.hpp"
#include "saddle/operator.hpp"

using namespace saddle;

namespace {

const Grid& grid() {
    static const Grid g = build_grid(8, 0.25, 1);
    return g;
}

const KernelTable& table() {
    static const KernelTable t = build_kernel_table(grid(), make_fractional(1, 0.5));
    return t;
}

void BM_TableParallel(benchmark::State& st) {
    const RadialKernel k = make_fractional(1, 0.5);
    for (auto _ : st) benchmark::DoNotOptimize(build_kernel_table(grid(), k));
}
void BM_TableSerial(benchmark::State& st) {
    const RadialKernel k = make_fractional(1, 0.5);
    for (auto _ : st) benchmark::DoNotOptimize(build_kernel_table_serial(grid(), k));
}

void BM_ApplyParallel(benchmark::State& st) {
    const DiscreteOperator op = assemble(table());
    const Eigen::VectorXd u = Eigen::VectorXd::Constant(long(op.size()), 0.5);
    for (auto _ : st) benchmark::DoNotOptimize(apply(op, u));
}
void BM_ApplySerial(benchmark::State& st) {
    const DiscreteOperator op = assemble(table());
    const Eigen::VectorXd u = Eigen::VectorXd::Constant(long(op.size()), 0.5);
    for (auto _ : st) benchmark::DoNotOptimize(apply_serial(op, u));
}

void BM_EnergyParallel(benchmark::State& st) {
    const Eigen::VectorXd u = Eigen::VectorXd::Constant(long(grid().n_inner), 0.5);
    for (auto _ : st) benchmark::DoNotOptimize(total_energy(grid(), table(), u, allen_cahn(), 6));
}
void BM_EnergySerial(benchmark::State& st) {
    const Eigen::VectorXd u = Eigen::VectorXd::Constant(long(grid().n_inner), 0.5);
    for (auto _ : st) benchmark::DoNotOptimize(total_energy_serial(grid(), table(), u, allen_cahn(), 6));
}

void BM_InequalityParallel(benchmark::State& st) {
    const RadialKernel k = make_fractional(2, 0.5);
    const RuleLadder l = RuleLadder::make(2);
    for (auto _ : st) benchmark::DoNotOptimize(verify_kernel_inequality(k, 1, 500, l));
}
void BM_InequalitySerial(benchmark::State& st) {
    const RadialKernel k = make_fractional(2, 0.5);
    const RuleLadder l = RuleLadder::make(2);
    for (auto _ : st) benchmark::DoNotOptimize(verify_kernel_inequality_serial(k, 1, 500, l));
}

}  // namespace

BENCHMARK(BM_TableParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TableSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ApplyParallel)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_ApplySerial)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_EnergyParallel)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_EnergySerial)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_InequalityParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_InequalitySerial)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
