// Benchmark: serial streaming aggregation vs the OpenMP two-pass path, over
// a synthetic gender-blind batch generated in-process.

#include "wwaudit/agent/policies.hpp"
#include "wwaudit/metrics/aggregate.hpp"
#include "wwaudit/orchestrator/driver.hpp"

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

using namespace wwaudit;
namespace chrono = std::chrono;

namespace {

std::vector<orch::Transcript> make_batch(int matches) {
    orch::ExperimentPlan plan;
    plan.plan_id = "bench";
    plan.backend = "random-legal:7";
    plan.seed = 7;
    plan.repetitions = (matches + 47) / 48;

    auto backend = agent::make_random_legal_backend(7);
    const auto specs = plan.matches();
    std::vector<orch::Transcript> out(static_cast<std::size_t>(matches));

#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < matches; ++i) {
        out[static_cast<std::size_t>(i)] =
            run_match(specs[static_cast<std::size_t>(i)], plan, *backend).transcript;
    }
    return out;
}

template <typename Fn>
double time_ms(Fn&& fn, int repeats) {
    const auto t0 = chrono::steady_clock::now();
    for (int i = 0; i < repeats; ++i) fn();
    const auto t1 = chrono::steady_clock::now();
    return chrono::duration<double, std::milli>(t1 - t0).count() / repeats;
}

} // namespace

int main(int argc, char** argv) {
    const int matches = argc > 1 ? std::atoi(argv[1]) : 96;
    const int repeats = argc > 2 ? std::atoi(argv[2]) : 5;

    std::printf("generating %d matches...\n", matches);
    const auto batch = make_batch(matches);

    long probes = 0;
    for (const auto& t : batch) probes += static_cast<long>(t.probes.size());
    std::printf("batch ready: %zu transcripts, %ld probes, %d threads available\n",
                batch.size(), probes, omp_get_max_threads());

    const double serial_ms = time_ms(
        [&] { metrics::aggregate_serial(batch, probe::Gamma3Mode::PerPlayer); }, repeats);
    std::printf("aggregate_serial   : %8.2f ms\n", serial_ms);

    for (int workers : {1, 2, omp_get_max_threads()}) {
        const double parallel_ms = time_ms(
            [&] { metrics::aggregate(batch, probe::Gamma3Mode::PerPlayer, workers); },
            repeats);
        std::printf("aggregate (omp x%d) : %8.2f ms  speedup vs serial %.2fx\n", workers,
                    parallel_ms, serial_ms / parallel_ms);
    }
    return 0;
}
