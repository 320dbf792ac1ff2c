#pragma once

#include <cstdint>
#include <vector>

#include "gaa/parallel.hpp"
#include "gaa/rng.hpp"

namespace gaa {

// Realization ensemble controls shared by every scan. Worker count never
// changes numerical output: results are collected into per-index slots and
// reduced in index order.
struct EnsembleConfig {
    int n_realizations = 100;
    std::uint64_t master_seed = 1;
    int threads = 0;  // 0 = hardware concurrency
};

// Runs per(seed, index) for each realization, where seed = derive_seed(master, index).
template <class T, class F>
std::vector<T> run_realizations(const EnsembleConfig& cfg, F&& per) {
    std::vector<T> out(static_cast<std::size_t>(cfg.n_realizations));
    parallel_for(out.size(), cfg.threads, [&](std::size_t i) {
        out[i] = per(derive_seed(cfg.master_seed, i), static_cast<int>(i));
    });
    return out;
}

}  // namespace gaa
