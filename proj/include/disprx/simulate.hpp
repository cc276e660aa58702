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

#ifndef DISPRX_SIMULATE_HPP
#define DISPRX_SIMULATE_HPP

#include <array>
#include <cstdint>

#include "disprx/receiver.hpp"

namespace disprx {

/// Deterministic uniform-variate source (SplitMix64). Cheap to seed, and a
/// fresh instance per (seed, input, trial) keys makes parallel runs
/// order-independent.
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1), 53 random bits.
    double next_unit() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

  private:
    std::uint64_t state_;
};

/// Stable substream seed for (seed, input symbol, trial index).
std::uint64_t trial_stream_seed(std::uint64_t seed, int input_symbol, std::uint64_t trial_index);

struct SimulationSpec {
    ReceiverConfig config;
    std::uint64_t trials_per_input = 1;
    std::uint64_t seed = 0;
};

struct SimulationReport {
    int order = 0;
    std::array<std::array<std::uint64_t, kMaxSymbols>, kMaxSymbols> counts{}; // [input][decision]
    ChannelMatrix empirical; // counts / trials_per_input
    std::uint64_t trials_per_input = 0;
    std::uint64_t seed = 0;
};

/// One receiver trial: walk the tree drawing each stage outcome from its
/// off-probability, then sample the leaf decision (one extra variate when the
/// leaf is randomized). Returns the decided symbol.
int simulate_trial(const ReceiverConfig& config, const DecisionTree& tree, int input_symbol,
                   SplitMix64& stream);

/// trials_per_input independent trials for every input symbol. Counts are
/// bit-for-bit reproducible for a given seed under any thread count
/// (threads <= 0 picks the hardware concurrency).
SimulationReport estimate_channel_matrix(const SimulationSpec& spec, const DecisionTree& tree,
                                         int threads = 0);

} // namespace disprx

#endif
