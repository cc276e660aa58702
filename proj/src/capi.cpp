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

#include "disprx.h"

#include <cstring>
#include <string>

#include "disprx/baselines.hpp"
#include "disprx/errors.hpp"
#include "disprx/info.hpp"
#include "disprx/receiver.hpp"
#include "disprx/simulate.hpp"

namespace {

thread_local std::string g_last_error;

void set_last_error(const char* message) {
    g_last_error = message == nullptr ? "" : message;
}

// Runs fn, translating core exceptions into status codes.
template <typename Fn>
disprx_status guarded(Fn&& fn) {
    try {
        fn();
        set_last_error("");
        return DISPRX_OK;
    } catch (const disprx::DimensionMismatchError& e) {
        set_last_error(e.what());
        return DISPRX_ERROR_DIMENSION_MISMATCH;
    } catch (const disprx::UnachievableRateError& e) {
        set_last_error(e.what());
        return DISPRX_ERROR_UNACHIEVABLE;
    } catch (const disprx::ConvergenceError& e) {
        set_last_error(e.what());
        return DISPRX_ERROR_NO_CONVERGENCE;
    } catch (const disprx::NumericalError& e) {
        set_last_error(e.what());
        return DISPRX_ERROR_NUMERICAL;
    } catch (const std::invalid_argument& e) {
        set_last_error(e.what());
        return DISPRX_ERROR_INVALID_ARGUMENT;
    } catch (const std::exception& e) {
        set_last_error(e.what());
        return DISPRX_ERROR_NUMERICAL;
    }
}

disprx::ChannelMatrix channel_from(int order, const double* data) {
    if (order < 1 || order > disprx::kMaxSymbols) {
        throw std::invalid_argument("order must be in [1, 4]");
    }
    if (data == nullptr) throw std::invalid_argument("matrix pointer is null");
    disprx::ChannelMatrix channel;
    channel.order = order;
    for (int i = 0; i < order; ++i) {
        for (int j = 0; j < order; ++j) channel.at(i, j) = data[i * order + j];
    }
    return channel;
}

disprx::PriorDistribution prior_from(int order, const double* data) {
    if (data == nullptr) throw std::invalid_argument("prior pointer is null");
    disprx::PriorDistribution prior;
    prior.order = order;
    for (int i = 0; i < order; ++i) prior.p[static_cast<std::size_t>(i)] = data[i];
    return prior;
}

disprx::BhattacharyyaMatrix gram_from(int order, const double* data) {
    if (order < 1 || order > disprx::kMaxSymbols) {
        throw std::invalid_argument("order must be in [1, 4]");
    }
    if (data == nullptr) throw std::invalid_argument("matrix pointer is null");
    disprx::BhattacharyyaMatrix gram;
    gram.order = order;
    for (int i = 0; i < order; ++i) {
        for (int j = 0; j < order; ++j) {
            gram.b[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = data[i * order + j];
        }
    }
    return gram;
}

void store_matrix(const disprx::ChannelMatrix& channel, double* out) {
    for (int i = 0; i < channel.order; ++i) {
        for (int j = 0; j < channel.order; ++j) out[i * channel.order + j] = channel.at(i, j);
    }
}

} // namespace

struct disprx_receiver {
    disprx::ReceiverConfig config;
    disprx::DecisionTree tree;
};

extern "C" {

const char* disprx_status_message(disprx_status status) {
    switch (status) {
        case DISPRX_OK: return "ok";
        case DISPRX_ERROR_INVALID_ARGUMENT: return "invalid argument";
        case DISPRX_ERROR_DIMENSION_MISMATCH: return "dimension mismatch";
        case DISPRX_ERROR_NO_CONVERGENCE: return "no convergence";
        case DISPRX_ERROR_UNACHIEVABLE: return "unachievable target";
        case DISPRX_ERROR_NUMERICAL: return "numerical failure";
    }
    return "unknown status";
}

const char* disprx_last_error_message(void) {
    return g_last_error.c_str();
}

const char* disprx_version(void) {
    return "0.1.0";
}

disprx_status disprx_receiver_create(int symbol_count, double alpha_sq, double efficiency,
                                     double dark_count, double r1, double r2,
                                     disprx_receiver** out_receiver) {
    return guarded([&] {
        if (out_receiver == nullptr) throw std::invalid_argument("out_receiver is null");
        disprx::ReceiverConfig config{symbol_count, alpha_sq, efficiency, dark_count, r1, r2};
        disprx::validate(config);
        *out_receiver = new disprx_receiver{config, disprx::build_decision_tree(symbol_count)};
    });
}

void disprx_receiver_destroy(disprx_receiver* receiver) {
    delete receiver;
}

int disprx_receiver_symbol_count(const disprx_receiver* receiver) {
    return receiver == nullptr ? 0 : receiver->config.symbol_count;
}

disprx_status disprx_exact_channel_matrix(const disprx_receiver* receiver, double* out_matrix) {
    return guarded([&] {
        if (receiver == nullptr || out_matrix == nullptr) {
            throw std::invalid_argument("null pointer argument");
        }
        store_matrix(disprx::exact_channel_matrix(receiver->config, receiver->tree), out_matrix);
    });
}

disprx_status disprx_tabulated_audit(const disprx_receiver* receiver, double* out_tabulated,
                                     double* out_diff) {
    return guarded([&] {
        if (receiver == nullptr) throw std::invalid_argument("null receiver");
        const auto variant = receiver->config.symbol_count == 4
                                 ? disprx::TabulatedVariant::FourPsk
                                 : disprx::TabulatedVariant::ThreePsk;
        const disprx::TabulatedAudit audit = disprx::tabulated_matrix_audit(receiver->config, variant);
        const int m = audit.exact.order;
        if (out_tabulated != nullptr) store_matrix(audit.tabulated, out_tabulated);
        if (out_diff != nullptr) {
            for (int i = 0; i < m; ++i) {
                for (int j = 0; j < m; ++j) {
                    out_diff[i * m + j] =
                        audit.diff[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
                }
            }
        }
    });
}

disprx_status disprx_simulate(const disprx_receiver* receiver, uint64_t trials_per_input,
                              uint64_t seed, int threads, uint64_t* out_counts) {
    return guarded([&] {
        if (receiver == nullptr || out_counts == nullptr) {
            throw std::invalid_argument("null pointer argument");
        }
        disprx::SimulationSpec spec{receiver->config, trials_per_input, seed};
        const disprx::SimulationReport report =
            disprx::estimate_channel_matrix(spec, receiver->tree, threads);
        const int m = report.order;
        for (int i = 0; i < m; ++i) {
            for (int j = 0; j < m; ++j) {
                out_counts[i * m + j] =
                    report.counts[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            }
        }
    });
}

disprx_status disprx_mutual_information(int order, const double* channel, const double* prior,
                                        double* out_bits) {
    return guarded([&] {
        if (out_bits == nullptr) throw std::invalid_argument("out_bits is null");
        *out_bits = disprx::mutual_information(channel_from(order, channel), prior_from(order, prior));
    });
}

disprx_status disprx_capacity(int order, const double* channel, double tolerance_bits,
                              uint64_t max_iterations, double* out_prior, double* out_bits,
                              double* out_gap_bits, uint64_t* out_iterations) {
    return guarded([&] {
        const disprx::OptimizationReport report = disprx::maximize_mutual_information(
            channel_from(order, channel), tolerance_bits > 0.0 ? tolerance_bits : 1e-10,
            max_iterations > 0 ? max_iterations : 1000000);
        if (out_prior != nullptr) {
            for (int i = 0; i < order; ++i) out_prior[i] = report.optimal_prior.at(i);
        }
        if (out_bits != nullptr) *out_bits = report.value;
        if (out_gap_bits != nullptr) *out_gap_bits = report.optimality_gap;
        if (out_iterations != nullptr) *out_iterations = report.iterations;
    });
}

disprx_status disprx_bhattacharyya(int order, const double* channel, double* out_matrix) {
    return guarded([&] {
        if (out_matrix == nullptr) throw std::invalid_argument("out_matrix is null");
        const disprx::BhattacharyyaMatrix gram =
            disprx::bhattacharyya_matrix(channel_from(order, channel));
        for (int i = 0; i < order; ++i) {
            for (int j = 0; j < order; ++j) out_matrix[i * order + j] = gram.at(i, j);
        }
    });
}

disprx_status disprx_cutoff_rate(int order, const double* bhattacharyya, const double* prior,
                                 double* out_nats) {
    return guarded([&] {
        if (out_nats == nullptr) throw std::invalid_argument("out_nats is null");
        *out_nats = disprx::cutoff_rate_at(prior_from(order, prior), gram_from(order, bhattacharyya));
    });
}

disprx_status disprx_cutoff_optimize(int order, const double* bhattacharyya, double* out_prior,
                                     double* out_nats, uint64_t* out_supports_examined) {
    return guarded([&] {
        const disprx::OptimizationReport report =
            disprx::minimize_cutoff_objective(gram_from(order, bhattacharyya));
        if (out_prior != nullptr) {
            for (int i = 0; i < order; ++i) out_prior[i] = report.optimal_prior.at(i);
        }
        if (out_nats != nullptr) *out_nats = report.value;
        if (out_supports_examined != nullptr) *out_supports_examined = report.iterations;
    });
}

disprx_status disprx_average_error_rate(int order, const double* channel, const double* prior,
                                        double* out_rate) {
    return guarded([&] {
        if (out_rate == nullptr) throw std::invalid_argument("out_rate is null");
        *out_rate = disprx::average_error_rate(channel_from(order, channel), prior_from(order, prior));
    });
}

disprx_status disprx_decoding_error_bound(double cutoff_nats, uint64_t code_length,
                                          double* out_bound) {
    return guarded([&] {
        if (out_bound == nullptr) throw std::invalid_argument("out_bound is null");
        *out_bound = disprx::decoding_error_bound(cutoff_nats, code_length);
    });
}

disprx_status disprx_required_code_length(double cutoff_nats, double target_error,
                                          uint64_t* out_length) {
    return guarded([&] {
        if (out_length == nullptr) throw std::invalid_argument("out_length is null");
        *out_length = disprx::required_code_length(cutoff_nats, target_error);
    });
}

disprx_status disprx_heterodyne_matrix(int order, double alpha_sq, double abs_tol,
                                       double* out_matrix) {
    return guarded([&] {
        if (out_matrix == nullptr) throw std::invalid_argument("out_matrix is null");
        disprx::HeterodyneSpec spec{order, alpha_sq, abs_tol > 0.0 ? abs_tol : 1e-10};
        store_matrix(disprx::heterodyne_channel_matrix(spec), out_matrix);
    });
}

disprx_status disprx_helstrom_error(int order, double alpha_sq, double* out_error) {
    return guarded([&] {
        if (out_error == nullptr) throw std::invalid_argument("out_error is null");
        *out_error = disprx::helstrom_error_psk(order, alpha_sq);
    });
}

} // extern "C"
