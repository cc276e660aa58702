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
#include <vector>

#include "disprx/baselines.hpp"
#include "disprx/info.hpp"

using namespace disprx;

namespace {

// Brute-force oracle for the sector probability: composite Simpson over a
// 2001x2001 polar grid (theta x radius), entirely independent of the
// adaptive 1D path used by the implementation.
double sector_probability_grid(int m, double alpha_sq, int sector) {
    const int n = 2001; // odd: 2000 Simpson intervals per axis
    const double amplitude = std::sqrt(alpha_sq);
    const double radius_max = amplitude + 8.0;
    const double theta_lo = 2.0 * M_PI * sector / m - M_PI / m;
    const double theta_hi = 2.0 * M_PI * sector / m + M_PI / m;
    const double dt = (theta_hi - theta_lo) / (n - 1);
    const double dr = radius_max / (n - 1);

    auto simpson_weight = [n](int k) { return k == 0 || k == n - 1 ? 1.0 : (k % 2 == 1 ? 4.0 : 2.0); };

    double total = 0.0;
    for (int a = 0; a < n; ++a) {
        const double theta = theta_lo + a * dt;
        const double cos_t = std::cos(theta);
        double radial = 0.0;
        for (int r = 0; r < n; ++r) {
            const double rho = r * dr;
            radial += simpson_weight(r) * rho *
                      std::exp(-(rho * rho - 2.0 * rho * amplitude * cos_t + alpha_sq));
        }
        total += simpson_weight(a) * radial;
    }
    return total * dt * dr / (9.0 * M_PI);
}

} // namespace

TEST_CASE("heterodyne matrix is flat at zero photons") {
    for (int m : {3, 4}) {
        const ChannelMatrix channel = heterodyne_channel_matrix({m, 0.0, 1e-10});
        for (int i = 0; i < m; ++i) {
            for (int j = 0; j < m; ++j) {
                CHECK(channel.at(i, j) == doctest::Approx(1.0 / m).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("heterodyne matrix is circulant and row-stochastic") {
    for (int m : {3, 4}) {
        const ChannelMatrix channel = heterodyne_channel_matrix({m, 1.7, 1e-10});
        for (int i = 0; i < m; ++i) {
            CHECK(std::abs(channel.row_sum(i) - 1.0) <= 1e-9); // 10x quadrature tolerance
            for (int j = 0; j < m; ++j) {
                CHECK(std::abs(channel.at(i, j) - channel.at(0, (j - i + m) % m)) <= 1e-9);
            }
        }
    }
}

TEST_CASE("heterodyne sector probability matches the grid oracle") {
    const ChannelMatrix channel = heterodyne_channel_matrix({4, 1.0, 1e-10});
    const double oracle = sector_probability_grid(4, 1.0, 0);
    CHECK(std::abs(channel.at(0, 0) - oracle) <= 1e-6);
    // A neighbouring sector as well, to exercise an off-center interval.
    const double oracle_side = sector_probability_grid(4, 1.0, 1);
    CHECK(std::abs(channel.at(0, 1) - oracle_side) <= 1e-6);
}

TEST_CASE("heterodyne confusion shrinks with photon number") {
    const ChannelMatrix weak = heterodyne_channel_matrix({4, 1.0, 1e-10});
    const ChannelMatrix strong = heterodyne_channel_matrix({4, 4.0, 1e-10});
    CHECK(strong.at(0, 0) > weak.at(0, 0));
}

TEST_CASE("heterodyne input validation") {
    CHECK_THROWS_AS(heterodyne_channel_matrix({5, 1.0, 1e-10}), std::invalid_argument);
    CHECK_THROWS_AS(heterodyne_channel_matrix({4, -1.0, 1e-10}), std::invalid_argument);
    CHECK_THROWS_AS(heterodyne_channel_matrix({4, 1.0, 0.0}), std::invalid_argument);
}

TEST_CASE("Helstrom limit endpoints") {
    for (int m : {2, 3, 4}) {
        CHECK(helstrom_error_psk(m, 0.0) == doctest::Approx(1.0 - 1.0 / m).epsilon(1e-12));
        CHECK(helstrom_error_psk(m, 20.0) < 1e-6);
    }
    CHECK_THROWS_AS(helstrom_error_psk(5, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(helstrom_error_psk(4, -0.5), std::invalid_argument);
}

TEST_CASE("binary Helstrom limit matches the closed form") {
    for (double a2 : {0.1, 0.5, 1.0, 2.0}) {
        const double closed = 0.5 * (1.0 - std::sqrt(1.0 - std::exp(-4.0 * a2)));
        CHECK(std::abs(helstrom_error_psk(2, a2) - closed) <= 1e-12);
    }
}

TEST_CASE("Gram eigenvalues are nonnegative and conserve the trace") {
    for (int m : {2, 3, 4}) {
        for (double a2 : {0.0, 0.3, 1.0, 2.5, 10.0}) {
            const auto eigenvalues = helstrom_gram_eigenvalues(m, a2);
            double trace = 0.0;
            for (int k = 0; k < m; ++k) {
                CHECK(eigenvalues[static_cast<std::size_t>(k)] >= 0.0);
                trace += eigenvalues[static_cast<std::size_t>(k)];
            }
            CHECK(trace == doctest::Approx(static_cast<double>(m)).epsilon(1e-12));
        }
    }
}

TEST_CASE("Helstrom bounds both physical receivers") {
    for (int m : {3, 4}) {
        const DecisionTree tree = build_decision_tree(m);
        for (double a2 : {0.25, 0.5, 1.0, 2.0, 4.0}) {
            ReceiverConfig config;
            config.symbol_count = m;
            config.alpha_sq = a2;
            const PriorDistribution uniform = PriorDistribution::uniform(m);
            const double displacement = average_error_rate(exact_channel_matrix(config, tree), uniform);
            const double heterodyne =
                average_error_rate(heterodyne_channel_matrix({m, a2, 1e-10}), uniform);
            const double quantum = helstrom_error_psk(m, a2);
            CHECK(quantum <= displacement + 1e-9);
            CHECK(quantum <= heterodyne + 1e-9);
        }
    }
}

TEST_CASE("adaptive quadrature integrates analytic references") {
    const auto gaussian = [](double x, const void*) { return std::exp(-x * x); };
    const double integral = integrate_adaptive(gaussian, nullptr, -8.0, 8.0, 1e-12);
    CHECK(integral == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-12));

    const auto wiggle = [](double x, const void*) { return std::cos(10.0 * x); };
    const double wiggly = integrate_adaptive(wiggle, nullptr, 0.0, 2.0, 1e-11);
    CHECK(wiggly == doctest::Approx(std::sin(20.0) / 10.0).epsilon(1e-10));
}

TEST_CASE("adaptive quadrature reports unreachable tolerances with its estimate") {
    const auto chirp = [](double x, const void*) { return std::cos(1e6 * x * x); };
    CHECK_THROWS_AS(integrate_adaptive(chirp, nullptr, 0.0, 3.0, 1e-14), QuadratureError);
    try {
        integrate_adaptive(chirp, nullptr, 0.0, 3.0, 1e-14);
    } catch (const QuadratureError& e) {
        CHECK(std::isfinite(e.estimate));
        CHECK(e.achieved_tol > 1e-14);
    }
}
