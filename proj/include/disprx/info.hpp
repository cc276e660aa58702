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

#ifndef DISPRX_INFO_HPP
#define DISPRX_INFO_HPP

#include <array>
#include <cstdint>

#include "disprx/errors.hpp"
#include "disprx/receiver.hpp"

namespace disprx {

/// Probability vector over the input symbols.
struct PriorDistribution {
    int order = 0;
    std::array<double, kMaxSymbols> p{};

    static PriorDistribution uniform(int order);
    double at(int i) const { return p[static_cast<std::size_t>(i)]; }
};

/// Throws std::invalid_argument unless entries are >= 0 and sum to 1 within
/// 1e-12.
void validate(const PriorDistribution& prior);

struct OptimizationReport {
    PriorDistribution optimal_prior;
    double value = 0.0;          // bits for mutual information, nats for cutoff rate
    std::uint64_t iterations = 0;
    double optimality_gap = 0.0; // certified bound, >= 0
};

/// Alternating maximization failed to certify the gap within the iteration
/// cap; carries the best iterate reached.
struct ConvergenceError : std::runtime_error {
    ConvergenceError(const char* message, OptimizationReport best_report)
        : std::runtime_error(message), best(best_report) {}
    OptimizationReport best;
};

/// Requested rate target cannot be met (cutoff rate is zero).
struct UnachievableRateError : std::domain_error {
    using std::domain_error::domain_error;
};

/// Gram matrix of the square-rooted channel rows:
/// b[i][i'] = sum_j sqrt(P(j|i) * P(j|i')). Symmetric, PSD, unit diagonal.
struct BhattacharyyaMatrix {
    int order = 0;
    std::array<std::array<double, kMaxSymbols>, kMaxSymbols> b{};

    double at(int i, int j) const { return b[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; }
};

/// I(X:Y) in bits. Terms with P(y|x) = 0 or P(x) = 0 contribute zero.
double mutual_information(const ChannelMatrix& channel, const PriorDistribution& prior);

/// Channel capacity and capacity-achieving prior via alternating
/// maximization. On return optimality_gap = max_i D(P(.|i) || q) - I, in
/// bits, certified <= tolerance_bits. Throws ConvergenceError past the
/// iteration cap.
OptimizationReport maximize_mutual_information(const ChannelMatrix& channel,
                                               double tolerance_bits = 1e-10,
                                               std::uint64_t max_iterations = 1000000);

BhattacharyyaMatrix bhattacharyya_matrix(const ChannelMatrix& channel);

/// R_c(p) = -ln(p^T b p), in nats.
double cutoff_rate_at(const PriorDistribution& prior, const BhattacharyyaMatrix& b);

/// Exact minimizer of p^T b p over the probability simplex by support
/// enumeration (2^M - 1 candidate supports; exact for M <= 4). value is the
/// cutoff rate -ln(min) in nats, optimality_gap is 0, iterations counts the
/// supports examined.
OptimizationReport minimize_cutoff_objective(const BhattacharyyaMatrix& b);

/// Symbol error rate 1 - sum_i p_i P(i|i).
double average_error_rate(const ChannelMatrix& channel, const PriorDistribution& prior);

/// exp(-code_length * cutoff_nats).
double decoding_error_bound(double cutoff_nats, std::uint64_t code_length);

/// Least N with exp(-N * cutoff_nats) <= target_error. Throws
/// UnachievableRateError when cutoff_nats <= 0.
std::uint64_t required_code_length(double cutoff_nats, double target_error);

} // namespace disprx

#endif
