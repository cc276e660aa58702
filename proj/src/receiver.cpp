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

#include "disprx/receiver.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace disprx {

void validate(const ReceiverConfig& config) {
    if (config.symbol_count != 3 && config.symbol_count != 4) {
        throw std::invalid_argument("symbol_count must be 3 or 4, got " +
                                    std::to_string(config.symbol_count));
    }
    if (!(config.alpha_sq >= 0.0)) {
        throw std::invalid_argument("alpha_sq must be >= 0");
    }
    if (!(config.efficiency >= 0.0 && config.efficiency <= 1.0)) {
        throw std::invalid_argument("efficiency must be in [0, 1]");
    }
    if (!(config.dark_count >= 0.0)) {
        throw std::invalid_argument("dark_count must be >= 0");
    }
    if (!(config.r1 > 0.0 && config.r1 < 1.0)) {
        throw std::invalid_argument("r1 must be in (0, 1)");
    }
    if (!(config.r2 > 0.0 && config.r2 < 1.0)) {
        throw std::invalid_argument("r2 must be in (0, 1)");
    }
}

std::array<double, kStageCount> stage_fractions(const ReceiverConfig& config) {
    return {1.0 - config.r1, config.r1 * config.r2, config.r1 * (1.0 - config.r2)};
}

double residual_distance_sq(int m, int h, int symbol_count, double alpha_sq) {
    if (symbol_count < 2 || symbol_count > kMaxSymbols) {
        throw std::invalid_argument("symbol_count out of range");
    }
    if (m < 0 || m >= symbol_count || h < 0 || h >= symbol_count) {
        throw std::invalid_argument("symbol index out of range");
    }
    if (!(alpha_sq >= 0.0)) {
        throw std::invalid_argument("alpha_sq must be >= 0");
    }
    if (m == h) return 0.0;
    const double s = std::sin(M_PI * std::abs(m - h) / symbol_count);
    return 4.0 * alpha_sq * s * s;
}

double off_probability(double d_sq, double efficiency, double dark_count) {
    if (!(d_sq >= 0.0)) throw std::invalid_argument("d_sq must be >= 0");
    if (!(efficiency >= 0.0 && efficiency <= 1.0)) {
        throw std::invalid_argument("efficiency must be in [0, 1]");
    }
    if (!(dark_count >= 0.0)) throw std::invalid_argument("dark_count must be >= 0");
    return std::exp(-dark_count - efficiency * d_sq);
}

int DecisionTree::hypothesis_at(int stage, int o1, int o2) const {
    switch (stage) {
        case 0: return root_hypothesis;
        case 1: return hypothesis_after_first[static_cast<std::size_t>(o1)];
        case 2: return hypothesis_after_second[static_cast<std::size_t>(o1)][static_cast<std::size_t>(o2)];
        default: throw std::invalid_argument("stage out of range");
    }
}

namespace {

LeafDecision single(int symbol) {
    LeafDecision d;
    d.numerator[static_cast<std::size_t>(symbol)] = 1;
    d.denominator = 1;
    return d;
}

LeafDecision uniform_over(std::initializer_list<int> symbols) {
    LeafDecision d;
    d.denominator = static_cast<int>(symbols.size());
    for (int symbol : symbols) d.numerator[static_cast<std::size_t>(symbol)] = 1;
    return d;
}

} // namespace

DecisionTree build_decision_tree(int symbol_count) {
    DecisionTree tree;
    tree.symbol_count = symbol_count;
    tree.root_hypothesis = 0;
    if (symbol_count == 4) {
        tree.hypothesis_after_first = {0, 2};
        tree.hypothesis_after_second = {{{0, 2}, {2, 1}}};
        tree.leaves[0] = single(0);             // (off,off,off)
        tree.leaves[1] = uniform_over({1, 2, 3}); // (off,off,on)
        tree.leaves[2] = single(2);             // (off,on,off)
        tree.leaves[3] = uniform_over({1, 3});  // (off,on,on)
        tree.leaves[4] = single(2);             // (on,off,off)
        tree.leaves[5] = uniform_over({1, 3});  // (on,off,on)
        tree.leaves[6] = single(1);             // (on,on,off)
        tree.leaves[7] = single(3);             // (on,on,on)
    } else if (symbol_count == 3) {
        tree.hypothesis_after_first = {0, 1};
        // After two clicks the decision no longer depends on stage 3; the
        // stage is still run with hypothesis 1 and its outcome discarded.
        tree.hypothesis_after_second = {{{0, 1}, {1, 1}}};
        tree.leaves[0] = single(0);            // (off,off,off)
        tree.leaves[1] = uniform_over({1, 2}); // (off,off,on)
        tree.leaves[2] = single(1);            // (off,on,off)
        tree.leaves[3] = single(2);            // (off,on,on)
        tree.leaves[4] = single(1);            // (on,off,off)
        tree.leaves[5] = single(2);            // (on,off,on)
        tree.leaves[6] = single(2);            // (on,on,off)
        tree.leaves[7] = single(2);            // (on,on,on)
        tree.third_outcome_ignored[1][1] = true;
    } else {
        throw std::invalid_argument("decision tree only defined for M in {3, 4}");
    }
    return tree;
}

double ChannelMatrix::row_sum(int i) const {
    double sum = 0.0;
    for (int j = 0; j < order; ++j) sum += at(i, j);
    return sum;
}

bool is_row_stochastic(const ChannelMatrix& channel, double tol) {
    for (int i = 0; i < channel.order; ++i) {
        if (std::abs(channel.row_sum(i) - 1.0) > tol) return false;
        for (int j = 0; j < channel.order; ++j) {
            if (!(channel.at(i, j) >= 0.0 && channel.at(i, j) <= 1.0)) return false;
        }
    }
    return true;
}

ChannelMatrix exact_channel_matrix(const ReceiverConfig& config, const DecisionTree& tree) {
    validate(config);
    if (tree.symbol_count != config.symbol_count) {
        throw std::invalid_argument("decision tree symbol count does not match config");
    }
    const int m = config.symbol_count;
    const auto fractions = stage_fractions(config);

    ChannelMatrix channel;
    channel.order = m;
    for (int input = 0; input < m; ++input) {
        for (int o1 = 0; o1 < 2; ++o1) {
            const double q1 = off_probability(
                fractions[0] * residual_distance_sq(input, tree.hypothesis_at(0, 0, 0), m, config.alpha_sq),
                config.efficiency, config.dark_count);
            const double w1 = o1 == 0 ? q1 : 1.0 - q1;
            for (int o2 = 0; o2 < 2; ++o2) {
                const double q2 = off_probability(
                    fractions[1] * residual_distance_sq(input, tree.hypothesis_at(1, o1, 0), m, config.alpha_sq),
                    config.efficiency, config.dark_count);
                const double w2 = o2 == 0 ? q2 : 1.0 - q2;
                for (int o3 = 0; o3 < 2; ++o3) {
                    const double q3 = off_probability(
                        fractions[2] * residual_distance_sq(input, tree.hypothesis_at(2, o1, o2), m, config.alpha_sq),
                        config.efficiency, config.dark_count);
                    const double w3 = o3 == 0 ? q3 : 1.0 - q3;
                    const double path = w1 * w2 * w3;
                    const LeafDecision& leaf = tree.leaf(o1, o2, o3);
                    for (int j = 0; j < m; ++j) {
                        if (leaf.numerator[static_cast<std::size_t>(j)] != 0) {
                            channel.at(input, j) += path * leaf.weight(j);
                        }
                    }
                }
            }
        }
    }
    return channel;
}

namespace {

// Transcriptions of the published closed-form tables. Each expression is
// kept term for term as printed, including the known misprints; the audit
// quantifies them against the tree evaluator. E(c) is the off-probability
// for a residual of c * alpha_sq photons.

ChannelMatrix tabulated_4psk(const ReceiverConfig& config) {
    const double g = config.dark_count;
    const double ea = config.efficiency * config.alpha_sq;
    const double r1 = config.r1, r2 = config.r2;
    const auto E = [&](double c) { return std::exp(-g - c * ea); };

    const double G = E(0.0);
    const double u1 = 2.0 * (1.0 - r1), u2 = 2.0 * r1 * r2, u3 = 2.0 * r1 * (1.0 - r2);
    const double v1 = 4.0 * (1.0 - r1), v2 = 4.0 * r1 * r2, v3 = 4.0 * r1 * (1.0 - r2);

    ChannelMatrix t;
    t.order = 4;
    t.at(0, 0) = G * G * G;
    // P(1|0) and P(3|0): the printed fourth terms carry E(v2) where the
    // consistent expression needs (1 - E(v2)).
    t.at(0, 1) = (1.0 / 3.0) * G * G * (1.0 - G) + 0.5 * G * (1.0 - G) * (1.0 - E(v3)) +
                 0.5 * (1.0 - G) * E(v2) * (1.0 - E(v3)) + (1.0 - G) * E(v2) * E(u3);
    // P(2|0): the printed second term carries (1 - E(v3)) where the
    // consistent expression needs E(v3).
    t.at(0, 2) = (1.0 / 3.0) * G * G * (1.0 - G) + G * (1.0 - G) * (1.0 - E(v3)) +
                 (1.0 - G) * E(v2) * E(v3);
    t.at(0, 3) = (1.0 / 3.0) * G * G * (1.0 - G) + 0.5 * G * (1.0 - G) * (1.0 - E(v3)) +
                 0.5 * (1.0 - G) * E(v2) * (1.0 - E(v3)) + (1.0 - G) * E(v2) * (1.0 - E(u3));

    for (int i : {1, 3}) {
        t.at(i, 0) = E(u1) * E(u2) * E(u3);
        t.at(i, 1) = (1.0 / 3.0) * E(u1) * E(u2) * (1.0 - E(u3)) +
                     0.5 * E(u1) * (1.0 - E(u2)) * (1.0 - E(u3)) +
                     0.5 * (1.0 - E(u1)) * E(u2) * (1.0 - E(u3)) +
                     (1.0 - E(u1)) * (1.0 - E(u2)) * (i == 1 ? G : E(v3));
        t.at(i, 2) = (1.0 / 3.0) * E(u1) * E(u2) * (1.0 - E(u3)) +
                     E(u1) * (1.0 - E(u2)) * E(u3) + (1.0 - E(u1)) * E(u2) * E(u3);
        t.at(i, 3) = (1.0 / 3.0) * E(u1) * E(u2) * (1.0 - E(u3)) +
                     0.5 * E(u1) * (1.0 - E(u2)) * (1.0 - E(u3)) +
                     0.5 * (1.0 - E(u1)) * E(u2) * (1.0 - E(u3)) +
                     (1.0 - E(u1)) * (1.0 - E(u2)) * (i == 1 ? (1.0 - G) : (1.0 - E(v3)));
    }

    t.at(2, 0) = E(v1) * E(v2) * E(v3);
    t.at(2, 1) = (1.0 / 3.0) * E(v1) * E(v2) * (1.0 - E(v3)) +
                 0.5 * E(v1) * (1.0 - E(v2)) * (1.0 - G) + 0.5 * (1.0 - E(v1)) * G * (1.0 - G) +
                 (1.0 - E(v1)) * (1.0 - G) * E(u3);
    t.at(2, 2) = (1.0 / 3.0) * E(v1) * E(v2) * (1.0 - E(v3)) + E(v1) * (1.0 - E(v2)) * G +
                 (1.0 - E(v1)) * G * G;
    t.at(2, 3) = (1.0 / 3.0) * E(v1) * E(v2) * (1.0 - E(v3)) +
                 0.5 * E(v1) * (1.0 - E(v2)) * (1.0 - G) + 0.5 * (1.0 - E(v1)) * G * (1.0 - G) +
                 (1.0 - E(v1)) * (1.0 - G) * (1.0 - E(u3));
    return t;
}

ChannelMatrix tabulated_3psk(const ReceiverConfig& config) {
    const double g = config.dark_count;
    const double ea = config.efficiency * config.alpha_sq;
    const double r1 = config.r1, r2 = config.r2;
    const auto E = [&](double c) { return std::exp(-g - c * ea); };

    const double G = E(0.0);
    // The printed 3-PSK table assigns r1*(1-r2) to stage 2 and r1*r2 to
    // stage 3, the opposite of the 4-PSK table; identical at the defaults.
    const double w1 = 3.0 * (1.0 - r1), w2 = 3.0 * r1 * (1.0 - r2), w3 = 3.0 * r1 * r2;

    ChannelMatrix t;
    t.order = 3;
    t.at(0, 0) = G * G * G;
    t.at(0, 1) = 0.5 * G * G * (1.0 - G) + G * (1.0 - G) * E(w3) + (1.0 - G) * E(w2) * E(w3);
    t.at(0, 2) = 0.5 * G * G * (1.0 - G) + G * (1.0 - G) * (1.0 - E(w3)) +
                 (1.0 - G) * E(w2) * (1.0 - E(w3)) + (1.0 - G) * (1.0 - E(w2));

    t.at(1, 0) = E(w1) * E(w2) * E(w3);
    t.at(1, 1) = 0.5 * E(w1) * E(w2) * (1.0 - E(w3)) + E(w1) * (1.0 - E(w2)) * G +
                 (1.0 - E(w1)) * G * G;
    // P(2|1): printed with a trailing (1 - G); the consistent expression
    // needs (1 - G*G), i.e. the (on,off,on) path is missing.
    t.at(1, 2) = 0.5 * E(w1) * E(w2) * (1.0 - E(w3)) + E(w1) * (1.0 - E(w2)) * (1.0 - G) +
                 (1.0 - E(w1)) * (1.0 - G);

    t.at(2, 0) = E(w1) * E(w2) * E(w3);
    t.at(2, 1) = 0.5 * E(w1) * E(w2) * (1.0 - E(w3)) + E(w1) * (1.0 - E(w2)) * E(w3) +
                 (1.0 - E(w1)) * E(w2) * E(w3);
    // P(2|2): the printed third and fourth terms duplicate the stage-1
    // exponent w1 where w2 belongs; harmless at the default reflectances.
    t.at(2, 2) = 0.5 * E(w1) * E(w2) * (1.0 - E(w3)) + E(w1) * (1.0 - E(w2)) * (1.0 - E(w3)) +
                 (1.0 - E(w1)) * E(w1) * (1.0 - E(w3)) + (1.0 - E(w1)) * (1.0 - E(w1));
    return t;
}

} // namespace

ChannelMatrix tabulated_channel_matrix(const ReceiverConfig& config, TabulatedVariant variant) {
    validate(config);
    const int expected = variant == TabulatedVariant::FourPsk ? 4 : 3;
    if (config.symbol_count != expected) {
        throw std::invalid_argument("tabulated variant does not match symbol_count");
    }
    return variant == TabulatedVariant::FourPsk ? tabulated_4psk(config) : tabulated_3psk(config);
}

TabulatedAudit tabulated_matrix_audit(const ReceiverConfig& config, TabulatedVariant variant) {
    TabulatedAudit audit;
    audit.tabulated = tabulated_channel_matrix(config, variant);
    audit.exact = exact_channel_matrix(config, build_decision_tree(config.symbol_count));
    for (int i = 0; i < audit.exact.order; ++i) {
        for (int j = 0; j < audit.exact.order; ++j) {
            audit.diff[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                audit.tabulated.at(i, j) - audit.exact.at(i, j);
        }
    }
    return audit;
}

std::vector<std::pair<int, int>> TabulatedAudit::flagged_entries(double tol) const {
    std::vector<std::pair<int, int>> entries;
    for (int i = 0; i < exact.order; ++i) {
        for (int j = 0; j < exact.order; ++j) {
            if (std::abs(diff[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) > tol) {
                entries.emplace_back(i, j);
            }
        }
    }
    return entries;
}

} // namespace disprx
