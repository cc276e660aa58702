// Copyright 2026 The disprx Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "disprx/simulate.hpp"

#include <stdexcept>
#include <thread>
#include <vector>

namespace disprx {

namespace {

std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

} // namespace

std::uint64_t trial_stream_seed(std::uint64_t seed, int input_symbol, std::uint64_t trial_index) {
    std::uint64_t h = mix(seed + 0x9E3779B97F4A7C15ULL);
    h = mix(h ^ (0xA0761D6478BD642FULL * (static_cast<std::uint64_t>(input_symbol) + 1)));
    h = mix(h ^ (0xE7037ED1A0B428DBULL * (trial_index + 1)));
    return h;
}

int simulate_trial(const ReceiverConfig& config, const DecisionTree& tree, int input_symbol,
                   SplitMix64& stream) {
    if (input_symbol < 0 || input_symbol >= config.symbol_count) {
        throw std::invalid_argument("input symbol out of range");
    }
    const auto fractions = stage_fractions(config);
    int outcomes[kStageCount] = {0, 0, 0};
    for (int stage = 0; stage < kStageCount; ++stage) {
        const int hypothesis = tree.hypothesis_at(stage, outcomes[0], outcomes[1]);
        const double off = off_probability(
            fractions[static_cast<std::size_t>(stage)] *
                residual_distance_sq(input_symbol, hypothesis, config.symbol_count, config.alpha_sq),
            config.efficiency, config.dark_count);
        outcomes[stage] = stream.next_unit() < off ? 0 : 1;
    }
    const LeafDecision& leaf = tree.leaf(outcomes[0], outcomes[1], outcomes[2]);
    if (!leaf.randomized()) {
        for (int j = 0; j < config.symbol_count; ++j) {
            if (leaf.numerator[static_cast<std::size_t>(j)] != 0) return j;
        }
    }
    const double u = stream.next_unit();
    int cumulative = 0;
    for (int j = 0; j < config.symbol_count; ++j) {
        cumulative += leaf.numerator[static_cast<std::size_t>(j)];
        if (u * leaf.denominator < static_cast<double>(cumulative)) return j;
    }
    return config.symbol_count - 1;
}

SimulationReport estimate_channel_matrix(const SimulationSpec& spec, const DecisionTree& tree,
                                         int threads) {
    validate(spec.config);
    if (tree.symbol_count != spec.config.symbol_count) {
        throw std::invalid_argument("decision tree symbol count does not match config");
    }
    if (spec.trials_per_input < 1) {
        throw std::invalid_argument("trials_per_input must be >= 1");
    }

    const int m = spec.config.symbol_count;
    if (threads <= 0) {
        threads = static_cast<int>(std::thread::hardware_concurrency());
        if (threads <= 0) threads = 1;
    }
    if (threads > 64) threads = 64;
    const std::uint64_t trials = spec.trials_per_input;
    if (static_cast<std::uint64_t>(threads) > trials) threads = static_cast<int>(trials);

    using Counts = std::array<std::array<std::uint64_t, kMaxSymbols>, kMaxSymbols>;
    std::vector<Counts> partial(static_cast<std::size_t>(threads), Counts{});

    auto worker = [&](int worker_index) {
        Counts& local = partial[static_cast<std::size_t>(worker_index)];
        const std::uint64_t begin = trials * static_cast<std::uint64_t>(worker_index) /
                                    static_cast<std::uint64_t>(threads);
        const std::uint64_t end = trials * (static_cast<std::uint64_t>(worker_index) + 1) /
                                  static_cast<std::uint64_t>(threads);
        for (int input = 0; input < m; ++input) {
            for (std::uint64_t t = begin; t < end; ++t) {
                SplitMix64 stream(trial_stream_seed(spec.seed, input, t));
                const int decision = simulate_trial(spec.config, tree, input, stream);
                ++local[static_cast<std::size_t>(input)][static_cast<std::size_t>(decision)];
            }
        }
    };

    if (threads == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(threads));
        for (int w = 0; w < threads; ++w) pool.emplace_back(worker, w);
        for (auto& t : pool) t.join();
    }

    SimulationReport report;
    report.order = m;
    report.trials_per_input = trials;
    report.seed = spec.seed;
    report.empirical.order = m;
    for (const Counts& local : partial) {
        for (int i = 0; i < m; ++i) {
            for (int j = 0; j < m; ++j) {
                report.counts[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] +=
                    local[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            }
        }
    }
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            report.empirical.at(i, j) =
                static_cast<double>(report.counts[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) /
                static_cast<double>(trials);
        }
    }
    return report;
}

} // namespace disprx
