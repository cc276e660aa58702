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

#ifndef DISPRX_RECEIVER_HPP
#define DISPRX_RECEIVER_HPP

#include <array>
#include <cstdint>
#include <vector>

namespace disprx {

inline constexpr int kMaxSymbols = 4;
inline constexpr int kStageCount = 3;

/// Physical parameters of the receiver and PSK signal set. All probabilities
/// downstream are closed-form functions of these six numbers.
struct ReceiverConfig {
    int symbol_count = 4;     // M, 3 or 4
    double alpha_sq = 1.0;    // |alpha|^2, mean photon number of the received state
    double efficiency = 1.0;  // detector efficiency eta in [0, 1]
    double dark_count = 1e-8; // dark count exponent gamma >= 0
    double r1 = 2.0 / 3.0;    // reflectance of the first beam splitter, in (0, 1)
    double r2 = 0.5;          // reflectance of the second beam splitter, in (0, 1)
};

/// Throws std::invalid_argument if any field is out of range.
void validate(const ReceiverConfig& config);

/// Energy fractions seen by the three detection stages:
/// {1 - r1, r1*r2, r1*(1 - r2)}. They sum to 1 exactly.
std::array<double, kStageCount> stage_fractions(const ReceiverConfig& config);

/// Squared residual amplitude after displacing PSK symbol `m` by the
/// hypothesis symbol `h`: 4 * alpha_sq * sin^2(pi*(m-h)/M).
/// Symmetric in (m, h), zero iff m == h.
double residual_distance_sq(int m, int h, int symbol_count, double alpha_sq);

/// Probability that an on-off detector stays silent when fed a coherent
/// state of mean photon number `d_sq`: exp(-dark_count - efficiency*d_sq).
double off_probability(double d_sq, double efficiency, double dark_count);

/// Final guess attached to one complete outcome triple. Weights are kept as
/// exact rationals so the distribution sums to 1 with no rounding.
struct LeafDecision {
    std::array<int, kMaxSymbols> numerator{};
    int denominator = 1;

    double weight(int symbol) const {
        return static_cast<double>(numerator[symbol]) / denominator;
    }
    bool randomized() const {
        int nonzero = 0;
        for (int value : numerator) nonzero += value != 0;
        return nonzero > 1;
    }
};

/// The feedforward strategy: which symbol is displaced at each stage given
/// the detector outcomes so far (0 = off, 1 = on), and the final decision
/// distribution for each complete outcome triple.
struct DecisionTree {
    int symbol_count = 0;
    int stage_count = kStageCount;
    int root_hypothesis = 0;
    std::array<int, 2> hypothesis_after_first{};                 // [o1]
    std::array<std::array<int, 2>, 2> hypothesis_after_second{}; // [o1][o2]
    std::array<LeafDecision, 8> leaves{};                        // [o1*4 + o2*2 + o3]
    std::array<std::array<bool, 2>, 2> third_outcome_ignored{};  // [o1][o2]

    int hypothesis_at(int stage, int o1, int o2) const;
    const LeafDecision& leaf(int o1, int o2, int o3) const {
        return leaves[static_cast<std::size_t>(o1 * 4 + o2 * 2 + o3)];
    }
};

/// Canonical three-stage tree for M in {3, 4}. Stage 1 always tests symbol 0;
/// for 4-PSK a first-stage click switches the hypothesis to the diagonal
/// symbol 2. Throws std::invalid_argument for unsupported M.
DecisionTree build_decision_tree(int symbol_count);

/// Row-stochastic conditional probability table, entry (i, j) = P(j|i) =
/// probability that input symbol i is decoded as symbol j.
struct ChannelMatrix {
    int order = 0;
    std::array<std::array<double, kMaxSymbols>, kMaxSymbols> p{};

    double& at(int i, int j) { return p[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; }
    double at(int i, int j) const { return p[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; }
    double row_sum(int i) const;
};

/// Max over rows of |row_sum - 1|; entries are also required to be in [0, 1]
/// by callers that validate.
bool is_row_stochastic(const ChannelMatrix& channel, double tol = 1e-12);

/// Exact channel matrix by exhaustive enumeration of the 8 outcome paths per
/// input symbol. Deterministic, no sampling.
ChannelMatrix exact_channel_matrix(const ReceiverConfig& config, const DecisionTree& tree);

/// Which published closed-form table to transcribe.
enum class TabulatedVariant {
    FourPsk, // the 4-PSK table
    ThreePsk // the 3-PSK table
};

/// Literal transcription of the published closed-form channel-matrix
/// expressions, misprints preserved, plus the signed difference against the
/// tree evaluator. The transcribed rows are NOT guaranteed row-stochastic;
/// that is the point of the audit.
struct TabulatedAudit {
    ChannelMatrix tabulated;
    ChannelMatrix exact;
    std::array<std::array<double, kMaxSymbols>, kMaxSymbols> diff{}; // tabulated - exact

    /// Entries with |diff| > tol, row-major order.
    std::vector<std::pair<int, int>> flagged_entries(double tol = 1e-12) const;
};

/// Transcribed table alone (misprints preserved).
ChannelMatrix tabulated_channel_matrix(const ReceiverConfig& config, TabulatedVariant variant);

/// Transcription vs. exact evaluator, entry by entry. The variant must match
/// config.symbol_count.
TabulatedAudit tabulated_matrix_audit(const ReceiverConfig& config, TabulatedVariant variant);

} // namespace disprx

#endif
