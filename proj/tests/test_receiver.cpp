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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "disprx/receiver.hpp"

using namespace disprx;

TEST_CASE("residual distance matches the PSK geometry") {
    CHECK(residual_distance_sq(2, 2, 4, 1.0) == 0.0);
    CHECK(residual_distance_sq(2, 0, 4, 1.0) == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(residual_distance_sq(1, 0, 3, 1.0) == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(residual_distance_sq(1, 0, 4, 2.5) == doctest::Approx(2.0 * 2.5).epsilon(1e-12));

    CHECK_THROWS_AS(residual_distance_sq(4, 0, 4, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(residual_distance_sq(0, -1, 4, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(residual_distance_sq(0, 0, 4, -1.0), std::invalid_argument);
}

TEST_CASE("residual distance is symmetric and vanishes only on the diagonal") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> amp(0.0, 10.0);
    for (int m : {3, 4}) {
        for (int rep = 0; rep < 50; ++rep) {
            const double a2 = amp(rng);
            for (int i = 0; i < m; ++i) {
                for (int j = 0; j < m; ++j) {
                    const double dij = residual_distance_sq(i, j, m, a2);
                    CHECK(dij == residual_distance_sq(j, i, m, a2));
                    if (i == j) {
                        CHECK(dij == 0.0);
                    } else if (a2 > 0.0) {
                        CHECK(dij > 0.0);
                    }
                }
            }
        }
    }
}

TEST_CASE("off probability follows the detector model") {
    CHECK(off_probability(0.0, 1.0, 0.0) == 1.0);
    CHECK(off_probability(0.0, 1.0, 1e-8) == doctest::Approx(std::exp(-1e-8)).epsilon(1e-15));
    CHECK(off_probability(2.0, 0.5, 0.1) == doctest::Approx(std::exp(-1.1)).epsilon(1e-15));

    CHECK_THROWS_AS(off_probability(-1.0, 1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(off_probability(0.0, 1.5, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(off_probability(0.0, 1.0, -0.1), std::invalid_argument);
}

TEST_CASE("config validation") {
    ReceiverConfig config;
    CHECK_NOTHROW(validate(config));

    auto bad = config;
    bad.symbol_count = 5;
    CHECK_THROWS_AS(validate(bad), std::invalid_argument);
    bad = config;
    bad.alpha_sq = -0.1;
    CHECK_THROWS_AS(validate(bad), std::invalid_argument);
    bad = config;
    bad.efficiency = 1.2;
    CHECK_THROWS_AS(validate(bad), std::invalid_argument);
    bad = config;
    bad.r1 = 1.0;
    CHECK_THROWS_AS(validate(bad), std::invalid_argument);
    bad = config;
    bad.r2 = 0.0;
    CHECK_THROWS_AS(validate(bad), std::invalid_argument);

    const auto fractions = stage_fractions(config);
    CHECK(fractions[0] + fractions[1] + fractions[2] == 1.0);
}

TEST_CASE("stage fractions sum to one exactly for random reflectances") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> refl(0.2, 0.8);
    for (int rep = 0; rep < 200; ++rep) {
        ReceiverConfig config;
        config.r1 = refl(rng);
        config.r2 = refl(rng);
        const auto fractions = stage_fractions(config);
        // 1 - r1 + r1*r2 + r1*(1 - r2): exact in floating point as long as
        // r1*r2 and r1*(1-r2) pair back to r1.
        CHECK(std::abs(fractions[0] + fractions[1] + fractions[2] - 1.0) <= 1e-15);
    }
}

TEST_CASE("canonical decision trees") {
    const DecisionTree four = build_decision_tree(4);
    CHECK(four.root_hypothesis == 0);
    CHECK(four.hypothesis_after_first[0] == 0);
    CHECK(four.hypothesis_after_first[1] == 2); // a click points at the diagonal symbol
    CHECK(four.hypothesis_after_second[0][1] == 2);
    CHECK(four.hypothesis_after_second[1][0] == 2);
    CHECK(four.hypothesis_after_second[1][1] == 1);
    CHECK(four.leaf(0, 0, 1).weight(1) == doctest::Approx(1.0 / 3.0));
    CHECK(four.leaf(0, 0, 1).weight(2) == doctest::Approx(1.0 / 3.0));
    CHECK(four.leaf(0, 0, 1).weight(3) == doctest::Approx(1.0 / 3.0));
    CHECK(four.leaf(0, 0, 1).weight(0) == 0.0);
    CHECK(four.leaf(1, 1, 0).weight(1) == 1.0);
    CHECK(four.leaf(1, 1, 1).weight(3) == 1.0);

    const DecisionTree three = build_decision_tree(3);
    CHECK(three.root_hypothesis == 0);
    CHECK(three.hypothesis_after_first[1] == 1);
    CHECK(three.leaf(0, 0, 1).weight(1) == 0.5);
    CHECK(three.leaf(0, 0, 1).weight(2) == 0.5);
    CHECK(three.leaf(1, 1, 0).weight(2) == 1.0);
    CHECK(three.leaf(1, 1, 1).weight(2) == 1.0);
    CHECK(three.third_outcome_ignored[1][1]);

    CHECK_THROWS_AS(build_decision_tree(5), std::invalid_argument);
    CHECK_THROWS_AS(build_decision_tree(2), std::invalid_argument);
}

TEST_CASE("leaf decisions are exact rational distributions") {
    for (int m : {3, 4}) {
        const DecisionTree tree = build_decision_tree(m);
        for (const LeafDecision& leaf : tree.leaves) {
            int total = 0;
            for (int j = 0; j < m; ++j) {
                CHECK(leaf.numerator[static_cast<std::size_t>(j)] >= 0);
                total += leaf.numerator[static_cast<std::size_t>(j)];
            }
            CHECK(total == leaf.denominator); // sums to 1 with no rounding
        }
    }
}

TEST_CASE("exact channel matrix limits") {
    ReceiverConfig config;
    config.symbol_count = 4;
    config.alpha_sq = 0.0;
    config.dark_count = 0.0;
    const DecisionTree tree = build_decision_tree(4);

    const ChannelMatrix flat = exact_channel_matrix(config, tree);
    for (int i = 0; i < 4; ++i) {
        CHECK(flat.at(i, 0) == 1.0); // no light, no dark counts: nothing ever clicks
        for (int j = 1; j < 4; ++j) CHECK(flat.at(i, j) == 0.0);
    }

    config.alpha_sq = 50.0;
    const ChannelMatrix sharp = exact_channel_matrix(config, tree);
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            CHECK(std::abs(sharp.at(i, j) - (i == j ? 1.0 : 0.0)) < 1e-10);
        }
    }

    CHECK_THROWS_AS(exact_channel_matrix(config, build_decision_tree(3)), std::invalid_argument);
}

TEST_CASE("exact channel matrix is row-stochastic over random configs") {
    std::mt19937_64 rng(1234);
    std::uniform_real_distribution<double> amp(0.0, 10.0);
    std::uniform_real_distribution<double> eff(0.1, 1.0);
    std::uniform_real_distribution<double> dark(0.0, 0.1);
    std::uniform_real_distribution<double> refl(0.2, 0.8);
    for (int rep = 0; rep < 1000; ++rep) {
        ReceiverConfig config;
        config.symbol_count = rep % 2 == 0 ? 3 : 4;
        config.alpha_sq = amp(rng);
        config.efficiency = eff(rng);
        config.dark_count = dark(rng);
        config.r1 = refl(rng);
        config.r2 = refl(rng);
        const ChannelMatrix channel =
            exact_channel_matrix(config, build_decision_tree(config.symbol_count));
        for (int i = 0; i < channel.order; ++i) {
            CHECK(std::abs(channel.row_sum(i) - 1.0) <= 1e-12);
            for (int j = 0; j < channel.order; ++j) {
                CHECK(channel.at(i, j) >= 0.0);
                CHECK(channel.at(i, j) <= 1.0);
            }
        }
    }
}

TEST_CASE("exact channel matrix is smooth in alpha_sq") {
    const DecisionTree tree = build_decision_tree(4);
    ReceiverConfig config;
    const ChannelMatrix base = exact_channel_matrix(config, tree);
    config.alpha_sq += 1e-8;
    const ChannelMatrix bumped = exact_channel_matrix(config, tree);
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            CHECK(std::abs(bumped.at(i, j) - base.at(i, j)) <= 1e-6);
        }
    }
}

TEST_CASE("diagonal confidence grows with photon number") {
    for (int m : {3, 4}) {
        const DecisionTree tree = build_decision_tree(m);
        ReceiverConfig weak;
        weak.symbol_count = m;
        weak.alpha_sq = 1.0;
        weak.dark_count = 0.0;
        ReceiverConfig strong = weak;
        strong.alpha_sq = 20.0;
        const ChannelMatrix low = exact_channel_matrix(weak, tree);
        const ChannelMatrix high = exact_channel_matrix(strong, tree);
        // P(0|0) is exactly exp(-3*gamma) at any amplitude (the matched
        // all-off path never clicks), so strictness applies to i >= 1 only.
        CHECK(high.at(0, 0) >= low.at(0, 0));
        for (int i = 1; i < m; ++i) CHECK(high.at(i, i) > low.at(i, i));
    }
}

namespace {

std::set<std::pair<int, int>> flagged_set(const TabulatedAudit& audit, double tol = 1e-12) {
    const auto entries = audit.flagged_entries(tol);
    return {entries.begin(), entries.end()};
}

} // namespace

TEST_CASE("tabulated transcription agrees exactly when dark counts vanish") {
    for (int m : {3, 4}) {
        for (double a2 : {0.0, 0.25, 1.0, 4.0}) {
            ReceiverConfig config;
            config.symbol_count = m;
            config.alpha_sq = a2;
            config.dark_count = 0.0;
            const auto variant = m == 4 ? TabulatedVariant::FourPsk : TabulatedVariant::ThreePsk;
            const TabulatedAudit audit = tabulated_matrix_audit(config, variant);
            CHECK(flagged_set(audit).empty());
        }
    }
}

TEST_CASE("tabulated audit flags exactly the known misprints at the defaults") {
    const std::set<std::pair<int, int>> expected_four = {{0, 1}, {0, 2}, {0, 3}};
    const std::set<std::pair<int, int>> expected_three = {{1, 2}};
    for (double a2 : {0.25, 1.0, 4.0}) {
        ReceiverConfig config;
        config.alpha_sq = a2;

        config.symbol_count = 4;
        const TabulatedAudit four = tabulated_matrix_audit(config, TabulatedVariant::FourPsk);
        CHECK(flagged_set(four) == expected_four);
        // Rows conditioned on inputs 1..3 are internally consistent.
        for (int i = 1; i < 4; ++i) {
            for (int j = 0; j < 4; ++j) {
                CHECK(std::abs(four.diff[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) <= 1e-12);
            }
        }

        config.symbol_count = 3;
        const TabulatedAudit three = tabulated_matrix_audit(config, TabulatedVariant::ThreePsk);
        CHECK(flagged_set(three) == expected_three);
        for (int i : {0, 2}) { // the internally consistent rows
            for (int j = 0; j < 3; ++j) {
                CHECK(std::abs(three.diff[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) <= 1e-12);
            }
        }
    }
}

TEST_CASE("misprinted row 0 breaks stochasticity away from the default splitters") {
    // At r2 = 1/2 the misprint terms cancel in the row sum; push r2 off the
    // default to expose them.
    ReceiverConfig config;
    config.alpha_sq = 1.0;
    config.dark_count = 1e-3;
    config.r2 = 0.3;
    const TabulatedAudit audit = tabulated_matrix_audit(config, TabulatedVariant::FourPsk);
    CHECK(std::abs(audit.tabulated.row_sum(0) - 1.0) > 1e-6);
    for (int i = 1; i < 4; ++i) {
        CHECK(std::abs(audit.tabulated.row_sum(i) - 1.0) <= 1e-12);
    }
    CHECK(is_row_stochastic(audit.exact));
}

TEST_CASE("tabulated variant must match the configured symbol count") {
    ReceiverConfig config;
    config.symbol_count = 3;
    CHECK_THROWS_AS(tabulated_channel_matrix(config, TabulatedVariant::FourPsk),
                    std::invalid_argument);
}
