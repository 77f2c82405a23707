//
// torlab/trials.hpp -- deterministic trial execution
//
// Trials are the unit of parallelism.  Each trial owns an Rng seeded by
// derive_seed(master, name, index); results land in an index-addressed slot,
// so aggregation order (and therefore floating-point output) is identical in
// single-threaded and parallel runs.
//
#pragma once

#include <atomic>
#include <cstdint>
#include <string>
#include <thread>
#include <vector>

#include "torlab/rng.hpp"

namespace torlab {

// fn(trial_index, rng) -> Result; returns results in trial-index order.
template <typename Result, typename Fn>
std::vector<Result> run_trials(int trials, std::uint64_t master_seed, const std::string& name,
                               Fn&& fn, unsigned max_threads = 0) {
    std::vector<Result> results(trials);
    unsigned hw = max_threads ? max_threads : std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    const unsigned workers = std::min<unsigned>(hw, static_cast<unsigned>(trials ? trials : 1));
    if (workers <= 1) {
        for (int i = 0; i < trials; ++i) {
            Rng rng(derive_seed(master_seed, name, static_cast<std::uint64_t>(i)));
            results[i] = fn(i, rng);
        }
        return results;
    }
    std::atomic<int> next{0};
    auto worker = [&] {
        for (;;) {
            const int i = next.fetch_add(1);
            if (i >= trials) return;
            Rng rng(derive_seed(master_seed, name, static_cast<std::uint64_t>(i)));
            results[i] = fn(i, rng);
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    return results;
}

}  // namespace torlab
