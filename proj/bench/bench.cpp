// Serial reference vs OpenMP path for the two parallel kernels.

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include <omp.h>

#include "harbor/dataset.hpp"
#include "harbor/sweep.hpp"
#include "harbor/synth.hpp"

using namespace harbor;
using Clock = std::chrono::steady_clock;

template <class F>
double best_of(int reps, F&& f) {
    double best = 1e300;
    for (int i = 0; i < reps; ++i) {
        const auto t0 = Clock::now();
        f();
        best = std::min(best, std::chrono::duration<double>(Clock::now() - t0).count());
    }
    return best;
}

void row(const char* name, double serial, double parallel) {
    std::printf("%-16s serial %8.3f s   openmp %8.3f s   speedup %.2fx\n", name, serial, parallel, serial / parallel);
}

int main(int argc, char** argv) {
    const int reps = argc > 1 ? std::stoi(argv[1]) : 3;
    std::printf("threads: %d\n", omp_get_max_threads());

    SimConfig base;
    base.horizon_days = 30.0;
    const auto rates = parse_rate_list("5..30:5");
    std::vector<std::uint64_t> seeds;
    for (std::uint64_t s = 1; s <= 8; ++s) seeds.push_back(s);
    row("sweep", best_of(reps, [&] { sweep_serial(base, rates, seeds); }),
        best_of(reps, [&] { sweep_parallel(base, rates, seeds); }));

    SynthConfig sc;
    sc.n_vessels = 40;
    const Traffic traffic = generate_traffic(sc);
    const DatasetOptions opt;
    row("build_examples", best_of(reps, [&] { build_examples_serial(traffic, opt); }),
        best_of(reps, [&] { build_examples_parallel(traffic, opt); }));
}
