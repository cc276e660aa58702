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

#include "disprx/info.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace disprx {

namespace {

void validate_channel(const ChannelMatrix& channel) {
    if (channel.order < 1 || channel.order > kMaxSymbols) {
        throw std::invalid_argument("channel order out of range");
    }
    for (int i = 0; i < channel.order; ++i) {
        for (int j = 0; j < channel.order; ++j) {
            const double v = channel.at(i, j);
            if (!(v >= 0.0) || !(v <= 1.0 + 1e-9)) {
                throw std::invalid_argument("channel entries must lie in [0, 1]");
            }
        }
        if (std::abs(channel.row_sum(i) - 1.0) > 1e-6) {
            throw std::invalid_argument("channel rows must sum to 1");
        }
    }
}

void check_match(int a, int b) {
    if (a != b) throw DimensionMismatchError("operand dimensions do not match");
}

} // namespace

PriorDistribution PriorDistribution::uniform(int order) {
    PriorDistribution prior;
    prior.order = order;
    for (int i = 0; i < order; ++i) prior.p[static_cast<std::size_t>(i)] = 1.0 / order;
    return prior;
}

void validate(const PriorDistribution& prior) {
    if (prior.order < 1 || prior.order > kMaxSymbols) {
        throw std::invalid_argument("prior order out of range");
    }
    double sum = 0.0;
    for (int i = 0; i < prior.order; ++i) {
        if (!(prior.at(i) >= 0.0)) throw std::invalid_argument("prior entries must be >= 0");
        sum += prior.at(i);
    }
    if (std::abs(sum - 1.0) > 1e-12) throw std::invalid_argument("prior must sum to 1");
}

double mutual_information(const ChannelMatrix& channel, const PriorDistribution& prior) {
    validate_channel(channel);
    validate(prior);
    check_match(channel.order, prior.order);
    const int m = channel.order;

    std::array<double, kMaxSymbols> output{};
    for (int j = 0; j < m; ++j) {
        for (int i = 0; i < m; ++i) output[static_cast<std::size_t>(j)] += prior.at(i) * channel.at(i, j);
    }
    double info = 0.0;
    for (int i = 0; i < m; ++i) {
        if (prior.at(i) <= 0.0) continue;
        for (int j = 0; j < m; ++j) {
            const double pji = channel.at(i, j);
            if (pji <= 0.0) continue;
            info += prior.at(i) * pji * std::log2(pji / output[static_cast<std::size_t>(j)]);
        }
    }
    return info;
}

OptimizationReport maximize_mutual_information(const ChannelMatrix& channel, double tolerance_bits,
                                               std::uint64_t max_iterations) {
    validate_channel(channel);
    if (!(tolerance_bits > 0.0)) throw std::invalid_argument("tolerance must be > 0");
    const int m = channel.order;

    PriorDistribution prior = PriorDistribution::uniform(m);
    OptimizationReport report;
    report.optimal_prior = prior;

    std::array<double, kMaxSymbols> divergence{};
    for (std::uint64_t iteration = 1; iteration <= max_iterations; ++iteration) {
        std::array<double, kMaxSymbols> output{};
        for (int j = 0; j < m; ++j) {
            for (int i = 0; i < m; ++i) {
                output[static_cast<std::size_t>(j)] += prior.at(i) * channel.at(i, j);
            }
        }
        double max_divergence = -std::numeric_limits<double>::infinity();
        double info = 0.0;
        for (int i = 0; i < m; ++i) {
            double d = 0.0;
            for (int j = 0; j < m; ++j) {
                const double pji = channel.at(i, j);
                if (pji <= 0.0) continue;
                const double q = output[static_cast<std::size_t>(j)];
                d += q > 0.0 ? pji * std::log2(pji / q) : std::numeric_limits<double>::infinity();
            }
            divergence[static_cast<std::size_t>(i)] = d;
            max_divergence = std::max(max_divergence, d);
            if (prior.at(i) > 0.0) info += prior.at(i) * d;
        }

        report.optimal_prior = prior;
        report.value = info;
        report.iterations = iteration;
        report.optimality_gap = max_divergence - info;
        if (report.optimality_gap <= tolerance_bits) return report;

        double norm = 0.0;
        for (int i = 0; i < m; ++i) {
            double next = prior.at(i) * std::exp2(divergence[static_cast<std::size_t>(i)] - max_divergence);
            if (next < 1e-300) next = 0.0;
            prior.p[static_cast<std::size_t>(i)] = next;
            norm += next;
        }
        for (int i = 0; i < m; ++i) prior.p[static_cast<std::size_t>(i)] /= norm;
    }
    throw ConvergenceError("alternating maximization did not certify the gap within the iteration cap",
                           report);
}

BhattacharyyaMatrix bhattacharyya_matrix(const ChannelMatrix& channel) {
    validate_channel(channel);
    const int m = channel.order;
    std::array<std::array<double, kMaxSymbols>, kMaxSymbols> root{};
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            root[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = std::sqrt(channel.at(i, j));
        }
    }
    BhattacharyyaMatrix bh;
    bh.order = m;
    for (int i = 0; i < m; ++i) {
        for (int k = i; k < m; ++k) {
            double sum = 0.0;
            for (int j = 0; j < m; ++j) {
                sum += root[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] *
                       root[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
            }
            bh.b[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] = sum;
            bh.b[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)] = sum;
        }
    }
    return bh;
}

namespace {

double quadratic_form(const BhattacharyyaMatrix& b, const PriorDistribution& prior) {
    double q = 0.0;
    for (int i = 0; i < b.order; ++i) {
        for (int j = 0; j < b.order; ++j) q += prior.at(i) * prior.at(j) * b.at(i, j);
    }
    return q;
}

// Solves a (dense, n <= 4) system in place; returns false if a pivot
// degenerates.
bool solve_small(std::array<std::array<double, kMaxSymbols + 1>, kMaxSymbols>& a, int n,
                 std::array<double, kMaxSymbols>& x) {
    double scale = 0.0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) scale = std::max(scale, std::abs(a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]));
    }
    if (scale == 0.0) return false;
    for (int col = 0; col < n; ++col) {
        int pivot = col;
        for (int row = col + 1; row < n; ++row) {
            if (std::abs(a[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)]) >
                std::abs(a[static_cast<std::size_t>(pivot)][static_cast<std::size_t>(col)])) {
                pivot = row;
            }
        }
        if (std::abs(a[static_cast<std::size_t>(pivot)][static_cast<std::size_t>(col)]) <= 1e-12 * scale) {
            return false;
        }
        std::swap(a[static_cast<std::size_t>(pivot)], a[static_cast<std::size_t>(col)]);
        for (int row = col + 1; row < n; ++row) {
            const double factor = a[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)] /
                                  a[static_cast<std::size_t>(col)][static_cast<std::size_t>(col)];
            for (int j = col; j <= n; ++j) {
                a[static_cast<std::size_t>(row)][static_cast<std::size_t>(j)] -=
                    factor * a[static_cast<std::size_t>(col)][static_cast<std::size_t>(j)];
            }
        }
    }
    for (int row = n - 1; row >= 0; --row) {
        double value = a[static_cast<std::size_t>(row)][static_cast<std::size_t>(n)];
        for (int j = row + 1; j < n; ++j) {
            value -= a[static_cast<std::size_t>(row)][static_cast<std::size_t>(j)] * x[static_cast<std::size_t>(j)];
        }
        x[static_cast<std::size_t>(row)] = value / a[static_cast<std::size_t>(row)][static_cast<std::size_t>(row)];
    }
    return true;
}

struct CutoffCandidate {
    double value = 0.0; // p^T b p at the candidate
    std::vector<int> support;
    PriorDistribution prior;
};

bool lex_before(const CutoffCandidate& a, const CutoffCandidate& b) {
    if (a.support != b.support) {
        return std::lexicographical_compare(a.support.begin(), a.support.end(),
                                            b.support.begin(), b.support.end());
    }
    for (int i = 0; i < a.prior.order; ++i) {
        if (a.prior.at(i) != b.prior.at(i)) return a.prior.at(i) < b.prior.at(i);
    }
    return false;
}

} // namespace

double cutoff_rate_at(const PriorDistribution& prior, const BhattacharyyaMatrix& b) {
    validate(prior);
    check_match(prior.order, b.order);
    double q = quadratic_form(b, prior);
    // q <= 1 up to rounding; snap the last few ulps so a flat channel yields
    // an exact zero rate.
    if (q > 1.0 - 4e-15) return 0.0;
    if (!(q > 0.0)) throw NumericalError("cutoff quadratic form must be positive");
    return -std::log(q);
}

OptimizationReport minimize_cutoff_objective(const BhattacharyyaMatrix& b) {
    const int m = b.order;
    if (m < 1 || m > kMaxSymbols) throw std::invalid_argument("matrix order out of range");

    std::vector<CutoffCandidate> candidates;
    std::uint64_t examined = 0;
    for (int mask = 1; mask < (1 << m); ++mask) {
        ++examined;
        std::vector<int> support;
        for (int i = 0; i < m; ++i) {
            if (mask >> i & 1) support.push_back(i);
        }
        const int n = static_cast<int>(support.size());

        std::array<std::array<double, kMaxSymbols + 1>, kMaxSymbols> a{};
        for (int r = 0; r < n; ++r) {
            for (int c = 0; c < n; ++c) {
                a[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] =
                    b.at(support[static_cast<std::size_t>(r)], support[static_cast<std::size_t>(c)]);
            }
            a[static_cast<std::size_t>(r)][static_cast<std::size_t>(n)] = 1.0;
        }
        std::array<double, kMaxSymbols> x{};
        if (!solve_small(a, n, x)) continue; // optimum lives on a sub-support

        double total = 0.0;
        bool positive = true;
        for (int r = 0; r < n; ++r) {
            if (!(x[static_cast<std::size_t>(r)] > 0.0)) {
                positive = false;
                break;
            }
            total += x[static_cast<std::size_t>(r)];
        }
        if (!positive || !(total > 0.0)) continue;

        CutoffCandidate candidate;
        candidate.support = support;
        candidate.prior.order = m;
        for (int r = 0; r < n; ++r) {
            candidate.prior.p[static_cast<std::size_t>(support[static_cast<std::size_t>(r)])] =
                x[static_cast<std::size_t>(r)] / total;
        }
        const double mu = 1.0 / total;
        candidate.value = mu;

        // KKT: inner products equal mu on the support by construction; no
        // improving direction may exist off it.
        bool feasible = true;
        for (int i = 0; i < m && feasible; ++i) {
            if (mask >> i & 1) continue;
            double inner = 0.0;
            for (int j = 0; j < m; ++j) inner += b.at(i, j) * candidate.prior.at(j);
            if (inner < mu - 1e-12) feasible = false;
        }
        if (feasible) candidates.push_back(std::move(candidate));
    }

    CutoffCandidate best;
    if (candidates.empty()) {
        // Fall back to the best vertex.
        int vertex = 0;
        for (int i = 1; i < m; ++i) {
            if (b.at(i, i) < b.at(vertex, vertex)) vertex = i;
        }
        best.support = {vertex};
        best.prior.order = m;
        best.prior.p[static_cast<std::size_t>(vertex)] = 1.0;
        best.value = b.at(vertex, vertex);
    } else {
        best = candidates.front();
        for (std::size_t k = 1; k < candidates.size(); ++k) {
            const CutoffCandidate& c = candidates[k];
            if (c.value < best.value - 1e-12 ||
                (std::abs(c.value - best.value) <= 1e-12 && lex_before(c, best))) {
                best = c;
            }
        }
    }

    OptimizationReport report;
    report.iterations = examined;
    report.optimality_gap = 0.0;
    if (best.value >= 1.0 - 1e-12) {
        // Flat objective: every prior is optimal, report the uniform one.
        report.optimal_prior = PriorDistribution::uniform(m);
        report.value = cutoff_rate_at(report.optimal_prior, b);
    } else {
        report.optimal_prior = best.prior;
        report.value = -std::log(best.value);
    }
    return report;
}

double average_error_rate(const ChannelMatrix& channel, const PriorDistribution& prior) {
    validate_channel(channel);
    validate(prior);
    check_match(channel.order, prior.order);
    double correct = 0.0;
    for (int i = 0; i < channel.order; ++i) correct += prior.at(i) * channel.at(i, i);
    return 1.0 - correct;
}

double decoding_error_bound(double cutoff_nats, std::uint64_t code_length) {
    if (!(cutoff_nats >= 0.0)) throw std::invalid_argument("cutoff rate must be >= 0");
    if (code_length < 1) throw std::invalid_argument("code length must be >= 1");
    return std::exp(-static_cast<double>(code_length) * cutoff_nats);
}

std::uint64_t required_code_length(double cutoff_nats, double target_error) {
    if (!(target_error > 0.0 && target_error < 1.0)) {
        throw std::invalid_argument("target error must be in (0, 1)");
    }
    if (!(cutoff_nats > 0.0)) {
        throw UnachievableRateError("target error unachievable: cutoff rate is zero");
    }
    const double length = -std::log(target_error) / cutoff_nats;
    if (!(length < 9e18)) {
        throw UnachievableRateError("target error unachievable: required code length overflows");
    }
    // Relative slack keeps exact boundaries (e.g. rc = ln 10, eps = 1e-9)
    // from rounding up through the last ulp.
    const double n = std::ceil(length * (1.0 - 1e-12));
    return n < 1.0 ? 1 : static_cast<std::uint64_t>(n);
}

} // namespace disprx
