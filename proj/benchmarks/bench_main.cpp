#include <benchmark/benchmark.h>

#include <random>

#include "polyinv/geometry.hpp"
#include "polyinv/intervals.hpp"
#include "polyinv/network.hpp"
#include "polyinv/preimage.hpp"
#include "polyinv/propagate.hpp"

using namespace polyinv;

namespace {

Network load_fixture(const char* name) {
    return load_network_file(std::string(POLYINV_FIXTURE_DIR) + "/" + name);
}

Polyhedron unit_box(int dim) {
    return to_polyhedron(Box(Eigen::VectorXd::Zero(dim), Eigen::VectorXd::Ones(dim)));
}

void BM_FeasibilityLp(benchmark::State& state) {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    const int dim = static_cast<int>(state.range(0));
    Polyhedron p(dim);
    for (int i = 0; i < 4 * dim; ++i) {
        Eigen::VectorXd n(dim);
        for (int j = 0; j < dim; ++j) n(j) = dist(rng);
        p.add({std::move(n), 1.0});
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(is_empty(p));
    }
}
BENCHMARK(BM_FeasibilityLp)->Arg(2)->Arg(4)->Arg(8);

void BM_NetworkImage(benchmark::State& state) {
    const Network net = load_fixture("classifier2d.json");
    const Polyhedron domain = unit_box(2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(network_image(net, domain));
    }
}
BENCHMARK(BM_NetworkImage);

void BM_PreimageNetwork(benchmark::State& state) {
    const Network net = load_fixture("classifier2d.json");
    Polyhedron class2(2);
    Eigen::VectorXd n(2);
    n << 1.0, -1.0;
    class2.add({std::move(n), 0.0});
    const PolyUnion z = PolyUnion::single(class2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(preimage_network(z, net));
    }
}
BENCHMARK(BM_PreimageNetwork);

void BM_PreimageUnderapprox(benchmark::State& state) {
    const Network net = load_fixture("parabola.json");
    Eigen::VectorXd lo(1), hi(1);
    lo << 100.0;
    hi << 105.0;
    const PolyUnion z = PolyUnion::single(to_polyhedron(Box(lo, hi)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(preimage_underapprox(z, net));
    }
}
BENCHMARK(BM_PreimageUnderapprox);

void BM_ForwardBackwardContract(benchmark::State& state) {
    const Network net = load_fixture("xor_sigmoid.json");
    Eigen::VectorXd xlo(2), xhi(2), ylo(1), yhi(1);
    xlo << 0.0, 0.8;
    xhi << 0.2, 1.0;
    ylo << 0.0;
    yhi << 1.0;
    const Box x(xlo, xhi);
    const Box y(ylo, yhi);
    for (auto _ : state) {
        benchmark::DoNotOptimize(forward_backward_contract(net, x, y));
    }
}
BENCHMARK(BM_ForwardBackwardContract);

}  // namespace

BENCHMARK_MAIN();
