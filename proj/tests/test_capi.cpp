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
#include <cstring>
#include <string>
#include <vector>

#include "disprx.h"
#include "disprx/info.hpp"
#include "disprx/receiver.hpp"

TEST_CASE("receiver lifecycle and validation") {
    disprx_receiver* receiver = nullptr;
    CHECK(disprx_receiver_create(4, 1.0, 1.0, 1e-8, 2.0 / 3.0, 0.5, &receiver) == DISPRX_OK);
    REQUIRE(receiver != nullptr);
    CHECK(disprx_receiver_symbol_count(receiver) == 4);
    disprx_receiver_destroy(receiver);

    disprx_receiver* bad = nullptr;
    CHECK(disprx_receiver_create(5, 1.0, 1.0, 1e-8, 0.5, 0.5, &bad) ==
          DISPRX_ERROR_INVALID_ARGUMENT);
    CHECK(bad == nullptr);
    CHECK(std::strlen(disprx_last_error_message()) > 0);

    CHECK(disprx_receiver_create(4, -1.0, 1.0, 1e-8, 0.5, 0.5, &bad) ==
          DISPRX_ERROR_INVALID_ARGUMENT);
    CHECK(disprx_receiver_create(4, 1.0, 1.0, 1e-8, 0.5, 0.5, nullptr) ==
          DISPRX_ERROR_INVALID_ARGUMENT);
}

TEST_CASE("exact matrix through the C boundary matches the core") {
    disprx_receiver* receiver = nullptr;
    REQUIRE(disprx_receiver_create(3, 0.7, 0.9, 1e-4, 0.6, 0.4, &receiver) == DISPRX_OK);
    double matrix[9];
    CHECK(disprx_exact_channel_matrix(receiver, matrix) == DISPRX_OK);

    disprx::ReceiverConfig config{3, 0.7, 0.9, 1e-4, 0.6, 0.4};
    const disprx::ChannelMatrix expected =
        disprx::exact_channel_matrix(config, disprx::build_decision_tree(3));
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) CHECK(matrix[i * 3 + j] == expected.at(i, j));
    }
    disprx_receiver_destroy(receiver);
}

TEST_CASE("tabulated audit through the C boundary") {
    disprx_receiver* receiver = nullptr;
    REQUIRE(disprx_receiver_create(4, 1.0, 1.0, 1e-8, 2.0 / 3.0, 0.5, &receiver) == DISPRX_OK);
    double tabulated[16], diff[16];
    CHECK(disprx_tabulated_audit(receiver, tabulated, diff) == DISPRX_OK);
    int flagged = 0;
    for (double d : diff) flagged += std::abs(d) > 1e-12;
    CHECK(flagged == 3); // the three misprinted row-0 entries
    disprx_receiver_destroy(receiver);
}

TEST_CASE("simulation determinism through the C boundary") {
    disprx_receiver* receiver = nullptr;
    REQUIRE(disprx_receiver_create(4, 1.0, 1.0, 1e-8, 2.0 / 3.0, 0.5, &receiver) == DISPRX_OK);
    std::vector<uint64_t> counts_a(16), counts_b(16);
    CHECK(disprx_simulate(receiver, 50000, 7, 1, counts_a.data()) == DISPRX_OK);
    CHECK(disprx_simulate(receiver, 50000, 7, 8, counts_b.data()) == DISPRX_OK);
    CHECK(counts_a == counts_b);
    CHECK(disprx_simulate(receiver, 0, 7, 1, counts_a.data()) == DISPRX_ERROR_INVALID_ARGUMENT);
    disprx_receiver_destroy(receiver);
}

TEST_CASE("information metrics through the C boundary") {
    const double channel[4] = {0.9, 0.1, 0.1, 0.9};
    const double uniform[2] = {0.5, 0.5};

    double bits = 0.0;
    CHECK(disprx_mutual_information(2, channel, uniform, &bits) == DISPRX_OK);
    const double expected = 1.0 + 0.9 * std::log2(0.9) + 0.1 * std::log2(0.1);
    CHECK(bits == doctest::Approx(expected).epsilon(1e-12));

    double prior[2], capacity = 0.0, gap = 0.0;
    uint64_t iterations = 0;
    CHECK(disprx_capacity(2, channel, 0.0, 0, prior, &capacity, &gap, &iterations) == DISPRX_OK);
    CHECK(capacity == doctest::Approx(expected).epsilon(1e-9));
    CHECK(gap <= 1e-10);
    CHECK(iterations >= 1);

    double gram[4];
    CHECK(disprx_bhattacharyya(2, channel, gram) == DISPRX_OK);
    CHECK(gram[1] == doctest::Approx(0.6).epsilon(1e-14));

    double nats = 0.0;
    CHECK(disprx_cutoff_rate(2, gram, uniform, &nats) == DISPRX_OK);
    CHECK(nats == doctest::Approx(-std::log(0.8)).epsilon(1e-12));

    double best_prior[2], best_nats = 0.0;
    uint64_t supports = 0;
    CHECK(disprx_cutoff_optimize(2, gram, best_prior, &best_nats, &supports) == DISPRX_OK);
    CHECK(best_nats == doctest::Approx(-std::log(0.8)).epsilon(1e-12));
    CHECK(supports == 3);

    double rate = 0.0;
    CHECK(disprx_average_error_rate(2, channel, uniform, &rate) == DISPRX_OK);
    CHECK(rate == doctest::Approx(0.1).epsilon(1e-12));

    double bound = 0.0;
    CHECK(disprx_decoding_error_bound(std::log(10.0), 9, &bound) == DISPRX_OK);
    CHECK(bound == doctest::Approx(1e-9).epsilon(1e-12));

    uint64_t length = 0;
    CHECK(disprx_required_code_length(std::log(10.0), 1e-9, &length) == DISPRX_OK);
    CHECK(length == 9);
    CHECK(disprx_required_code_length(0.0, 1e-9, &length) == DISPRX_ERROR_UNACHIEVABLE);
    CHECK(length == 9); // untouched on failure
}

TEST_CASE("baselines through the C boundary") {
    double matrix[16];
    CHECK(disprx_heterodyne_matrix(4, 0.0, 0.0, matrix) == DISPRX_OK);
    CHECK(matrix[0] == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(disprx_heterodyne_matrix(7, 1.0, 0.0, matrix) == DISPRX_ERROR_INVALID_ARGUMENT);

    double error = 0.0;
    CHECK(disprx_helstrom_error(2, 1.0, &error) == DISPRX_OK);
    const double closed = 0.5 * (1.0 - std::sqrt(1.0 - std::exp(-4.0)));
    CHECK(error == doctest::Approx(closed).epsilon(1e-12));
}

TEST_CASE("status strings") {
    CHECK(std::string(disprx_status_message(DISPRX_OK)) == "ok");
    CHECK(std::string(disprx_status_message(DISPRX_ERROR_UNACHIEVABLE)) == "unachievable target");
    CHECK(std::string(disprx_version()).size() > 0);
}
