#pragma once

#include <algorithm>
#include <cstdint>
#include <thread>
#include <vector>

#include "orient/random_stream.hpp"

namespace orient {

struct SamplingPlan {
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    unsigned streams = 1;
    unsigned workers = 0; // threads; 0 means min(streams, hardware concurrency)
};

/// Runs per_sample(acc, index, handle) for every sample index of the plan.
///
/// Sample i is drawn from stream i mod streams at counter i div streams. Each
/// worker owns a private accumulator; accumulators are merged in worker order
/// after all threads join. Accumulators should hold integer tallies so the
/// merged result does not depend on the worker count.
template <class Acc, class PerSample>
Acc run_samples(const SamplingPlan& plan, const Acc& zero, PerSample&& per_sample) {
    const unsigned streams = std::max(1U, plan.streams);
    const unsigned hw = std::max(1U, std::thread::hardware_concurrency());
    const unsigned workers = std::min(streams, plan.workers > 0 ? plan.workers : hw);

    std::vector<Acc> partial(workers, zero);
    auto work = [&](unsigned w) {
        for (std::uint64_t stream = w; stream < streams; stream += workers) {
            for (std::uint64_t i = stream; i < plan.samples; i += streams) {
                StreamHandle handle{plan.seed, stream, i / streams};
                per_sample(partial[w], i, handle);
            }
        }
    };

    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::jthread> threads;
        threads.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) threads.emplace_back(work, w);
    }

    Acc total = zero;
    for (const Acc& p : partial) total.merge(p);
    return total;
}

} // namespace orient
