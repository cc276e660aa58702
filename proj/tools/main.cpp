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

// Command-line front end. Everything numerical goes through the C API in
// disprx.h; this file only handles flags, scheduling and serialization.

#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "disprx.h"

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr double kAuditTol = 1e-12;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ApiError : std::runtime_error {
    ApiError(disprx_status code, const std::string& context)
        : std::runtime_error(context + ": " + disprx_status_message(code) +
                             (std::string(disprx_last_error_message()).empty()
                                  ? std::string()
                                  : " (" + std::string(disprx_last_error_message()) + ")")),
          status(code) {}
    disprx_status status;
};

void check(disprx_status status, const char* context) {
    if (status != DISPRX_OK) throw ApiError(status, context);
}

std::string format_double(double value) {
    char buffer[40];
    std::snprintf(buffer, sizeof buffer, "%.17g", value);
    return buffer;
}

struct ReceiverHandle {
    explicit ReceiverHandle(disprx_receiver* r) : ptr(r, &disprx_receiver_destroy) {}
    std::unique_ptr<disprx_receiver, void (*)(disprx_receiver*)> ptr;
    disprx_receiver* get() const { return ptr.get(); }
};

ReceiverHandle make_receiver(int m, double alpha_sq, double eta, double gamma, double r1, double r2) {
    disprx_receiver* receiver = nullptr;
    check(disprx_receiver_create(m, alpha_sq, eta, gamma, r1, r2, &receiver), "receiver");
    return ReceiverHandle(receiver);
}

// All settings a run can carry; filled from defaults, then an optional JSON
// config file, then flags (flags win).
struct Settings {
    int m = 4;
    double alpha_sq = 1.0;
    double alpha_sq_min = 0.0;
    double alpha_sq_max = 5.0;
    int steps = 101;
    bool log_grid = false;
    double eta = 1.0;
    double gamma = 1e-8;
    double r1 = 2.0 / 3.0;
    double r2 = 0.5;
    std::string objective = "mi";
    std::vector<std::string> schemes = {"displacement_optimized", "displacement_equal", "heterodyne",
                                        "helstrom"};
    double target_error = 1e-9;
    std::uint64_t trials = 100000;
    std::uint64_t seed = 1;
    std::string format; // resolved per subcommand
    std::string output;
    int threads = 0;

    bool single_point_requested = false;
    bool range_requested = false;
};

void apply_config_file(Settings& settings, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open config file: " + path);
    ordered_json config;
    try {
        in >> config;
    } catch (const std::exception& e) {
        throw UsageError("cannot parse config file: " + std::string(e.what()));
    }
    if (!config.is_object()) throw UsageError("config file must hold a JSON object");
    for (const auto& [key, value] : config.items()) {
        if (key == "m") settings.m = value.get<int>();
        else if (key == "alpha_sq") {
            settings.alpha_sq = value.get<double>();
            settings.single_point_requested = true;
        } else if (key == "alpha_sq_min") {
            settings.alpha_sq_min = value.get<double>();
            settings.range_requested = true;
        } else if (key == "alpha_sq_max") {
            settings.alpha_sq_max = value.get<double>();
            settings.range_requested = true;
        } else if (key == "steps") {
            settings.steps = value.get<int>();
            settings.range_requested = true;
        } else if (key == "log_grid") settings.log_grid = value.get<bool>();
        else if (key == "eta") settings.eta = value.get<double>();
        else if (key == "gamma") settings.gamma = value.get<double>();
        else if (key == "r1") settings.r1 = value.get<double>();
        else if (key == "r2") settings.r2 = value.get<double>();
        else if (key == "objective") settings.objective = value.get<std::string>();
        else if (key == "schemes") settings.schemes = value.get<std::vector<std::string>>();
        else if (key == "target_error") settings.target_error = value.get<double>();
        else if (key == "trials") settings.trials = value.get<std::uint64_t>();
        else if (key == "seed") settings.seed = value.get<std::uint64_t>();
        else if (key == "format") settings.format = value.get<std::string>();
        else if (key == "output") settings.output = value.get<std::string>();
        else if (key == "threads") settings.threads = value.get<int>();
        else throw UsageError("unknown config key: " + key);
    }
}

// Registers the shared flags on a subcommand, bound into `settings`.
void add_common_options(CLI::App* cmd, Settings& settings, std::string& config_path) {
    cmd->add_option("--config", config_path, "JSON config file; flags override its values");
    cmd->add_option("--m", settings.m, "symbol count (3 or 4)");
    cmd->add_option("--eta", settings.eta, "detector efficiency in [0, 1]");
    cmd->add_option("--gamma", settings.gamma, "dark count exponent (>= 0)");
    cmd->add_option("--r1", settings.r1, "first splitter reflectance in (0, 1)");
    cmd->add_option("--r2", settings.r2, "second splitter reflectance in (0, 1)");
    cmd->add_option("--output", settings.output, "output path (default: stdout)");
    cmd->add_option("--threads", settings.threads, "worker threads (0 = auto)");
}

int resolve_threads(int requested) {
    if (requested > 0) return std::min(requested, 64);
    const unsigned hardware = std::thread::hardware_concurrency();
    return hardware == 0 ? 1 : static_cast<int>(std::min(hardware, 64u));
}

void write_output(const Settings& settings, const std::string& payload) {
    if (settings.output.empty()) {
        std::fwrite(payload.data(), 1, payload.size(), stdout);
        return;
    }
    std::ofstream out(settings.output, std::ios::binary);
    if (!out) throw UsageError("cannot open output file: " + settings.output);
    out.write(payload.data(), static_cast<std::streamsize>(payload.size()));
}

ordered_json matrix_to_json(const std::vector<double>& matrix, int m) {
    ordered_json rows = ordered_json::array();
    for (int i = 0; i < m; ++i) {
        ordered_json row = ordered_json::array();
        for (int j = 0; j < m; ++j) row.push_back(matrix[static_cast<std::size_t>(i * m + j)]);
        rows.push_back(std::move(row));
    }
    return rows;
}

ordered_json receiver_config_json(const Settings& settings, double alpha_sq) {
    ordered_json config;
    config["m"] = settings.m;
    config["alpha_sq"] = alpha_sq;
    config["eta"] = settings.eta;
    config["gamma"] = settings.gamma;
    config["r1"] = settings.r1;
    config["r2"] = settings.r2;
    return config;
}

// ---- matrix -----------------------------------------------------------------

void append_matrix_block(std::string& text, const char* title, const std::vector<double>& matrix,
                         int m) {
    text += title;
    text += "\n";
    for (int i = 0; i < m; ++i) {
        text += " ";
        for (int j = 0; j < m; ++j) {
            text += " " + format_double(matrix[static_cast<std::size_t>(i * m + j)]);
        }
        text += "\n";
    }
}

int run_matrix(const Settings& settings) {
    if (settings.format != "text" && settings.format != "json") {
        throw UsageError("matrix supports --format text or json");
    }
    const int m = settings.m;
    ReceiverHandle receiver =
        make_receiver(m, settings.alpha_sq, settings.eta, settings.gamma, settings.r1, settings.r2);

    std::vector<double> exact(static_cast<std::size_t>(m * m));
    std::vector<double> tabulated(static_cast<std::size_t>(m * m));
    std::vector<double> diff(static_cast<std::size_t>(m * m));
    check(disprx_exact_channel_matrix(receiver.get(), exact.data()), "exact matrix");
    check(disprx_tabulated_audit(receiver.get(), tabulated.data(), diff.data()), "audit");

    std::vector<std::pair<int, int>> flagged;
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            if (std::abs(diff[static_cast<std::size_t>(i * m + j)]) > kAuditTol) {
                flagged.emplace_back(i, j);
            }
        }
    }

    std::string payload;
    if (settings.format == "json") {
        ordered_json doc;
        doc["config"] = receiver_config_json(settings, settings.alpha_sq);
        doc["exact"] = matrix_to_json(exact, m);
        doc["tabulated"] = matrix_to_json(tabulated, m);
        doc["diff"] = matrix_to_json(diff, m);
        ordered_json flags = ordered_json::array();
        for (const auto& [i, j] : flagged) {
            ordered_json entry;
            entry["input"] = i;
            entry["output"] = j;
            entry["diff"] = diff[static_cast<std::size_t>(i * m + j)];
            flags.push_back(std::move(entry));
        }
        doc["flagged"] = std::move(flags);
        payload = doc.dump(2) + "\n";
    } else {
        payload += "m = " + std::to_string(m) + ", alpha_sq = " + format_double(settings.alpha_sq) +
                   ", eta = " + format_double(settings.eta) +
                   ", gamma = " + format_double(settings.gamma) +
                   ", r1 = " + format_double(settings.r1) + ", r2 = " + format_double(settings.r2) +
                   "\n\n";
        append_matrix_block(payload, "exact channel matrix P(j|i), one row per input i:", exact, m);
        payload += "\n";
        append_matrix_block(payload, "tabulated closed-form matrix (misprints preserved):", tabulated,
                            m);
        payload += "\n";
        append_matrix_block(payload, "audit diff (tabulated - exact):", diff, m);
        payload += "\nflagged entries with |diff| > 1e-12:";
        if (flagged.empty()) {
            payload += " none\n";
        } else {
            payload += "\n";
            for (const auto& [i, j] : flagged) {
                payload += "  P(" + std::to_string(j) + "|" + std::to_string(i) +
                           "): diff = " + format_double(diff[static_cast<std::size_t>(i * m + j)]) +
                           "\n";
            }
        }
    }
    write_output(settings, payload);
    return 0;
}

// ---- sweep ------------------------------------------------------------------

struct MetricCell {
    bool present = false;
    double value = 0.0;
};

struct CodeLengthCell {
    enum class State { Empty, Value, Unachievable } state = State::Empty;
    std::uint64_t value = 0;
};

struct SweepRow {
    double alpha_sq = 0.0;
    std::string scheme;
    MetricCell mi_bits;
    MetricCell error_rate;
    MetricCell cutoff_nats;
    CodeLengthCell code_length;
    bool prior_present = false;
    std::vector<double> prior;
};

CodeLengthCell code_length_from(double cutoff_nats, double target_error) {
    CodeLengthCell cell;
    std::uint64_t length = 0;
    const disprx_status status = disprx_required_code_length(cutoff_nats, target_error, &length);
    if (status == DISPRX_OK) {
        cell.state = CodeLengthCell::State::Value;
        cell.value = length;
    } else if (status == DISPRX_ERROR_UNACHIEVABLE) {
        cell.state = CodeLengthCell::State::Unachievable;
    } else {
        throw ApiError(status, "code length");
    }
    return cell;
}

std::vector<SweepRow> evaluate_point(const Settings& settings, double alpha_sq) {
    const int m = settings.m;
    std::vector<SweepRow> rows;

    bool need_displacement = false;
    for (const std::string& scheme : settings.schemes) {
        need_displacement |= scheme == "displacement_optimized" || scheme == "displacement_equal";
    }

    std::vector<double> channel(static_cast<std::size_t>(m * m));
    std::vector<double> gram(static_cast<std::size_t>(m * m));
    if (need_displacement) {
        ReceiverHandle receiver =
            make_receiver(m, alpha_sq, settings.eta, settings.gamma, settings.r1, settings.r2);
        check(disprx_exact_channel_matrix(receiver.get(), channel.data()), "exact matrix");
        check(disprx_bhattacharyya(m, channel.data(), gram.data()), "bhattacharyya");
    }

    const std::vector<double> uniform(static_cast<std::size_t>(m), 1.0 / m);

    auto displacement_row = [&](const std::string& scheme, const std::vector<double>& prior) {
        SweepRow row;
        row.alpha_sq = alpha_sq;
        row.scheme = scheme;
        double value = 0.0;
        check(disprx_mutual_information(m, channel.data(), prior.data(), &value), "mutual information");
        row.mi_bits = {true, value};
        check(disprx_average_error_rate(m, channel.data(), prior.data(), &value), "error rate");
        row.error_rate = {true, value};
        check(disprx_cutoff_rate(m, gram.data(), prior.data(), &value), "cutoff rate");
        row.cutoff_nats = {true, value};
        row.code_length = code_length_from(value, settings.target_error);
        row.prior_present = true;
        row.prior = prior;
        return row;
    };

    for (const std::string& scheme : settings.schemes) {
        if (scheme == "displacement_optimized") {
            std::vector<double> prior(static_cast<std::size_t>(m));
            if (settings.objective == "mi") {
                check(disprx_capacity(m, channel.data(), 0.0, 0, prior.data(), nullptr, nullptr,
                                      nullptr),
                      "capacity");
            } else {
                check(disprx_cutoff_optimize(m, gram.data(), prior.data(), nullptr, nullptr),
                      "cutoff optimization");
            }
            rows.push_back(displacement_row(scheme, prior));
        } else if (scheme == "displacement_equal") {
            rows.push_back(displacement_row(scheme, uniform));
        } else if (scheme == "heterodyne") {
            SweepRow row;
            row.alpha_sq = alpha_sq;
            row.scheme = scheme;
            std::vector<double> het(static_cast<std::size_t>(m * m));
            check(disprx_heterodyne_matrix(m, alpha_sq, 0.0, het.data()), "heterodyne matrix");
            std::vector<double> het_gram(static_cast<std::size_t>(m * m));
            check(disprx_bhattacharyya(m, het.data(), het_gram.data()), "bhattacharyya");
            double value = 0.0;
            check(disprx_mutual_information(m, het.data(), uniform.data(), &value),
                  "mutual information");
            row.mi_bits = {true, value};
            check(disprx_average_error_rate(m, het.data(), uniform.data(), &value), "error rate");
            row.error_rate = {true, value};
            check(disprx_cutoff_rate(m, het_gram.data(), uniform.data(), &value), "cutoff rate");
            row.cutoff_nats = {true, value};
            row.code_length = code_length_from(value, settings.target_error);
            rows.push_back(std::move(row));
        } else if (scheme == "helstrom") {
            SweepRow row;
            row.alpha_sq = alpha_sq;
            row.scheme = scheme;
            double value = 0.0;
            check(disprx_helstrom_error(m, alpha_sq, &value), "helstrom");
            row.error_rate = {true, value};
            rows.push_back(std::move(row));
        } else {
            throw UsageError("unknown scheme: " + scheme);
        }
    }
    return rows;
}

std::vector<double> build_grid(const Settings& settings) {
    if (settings.single_point_requested && !settings.range_requested) {
        return {settings.alpha_sq};
    }
    if (settings.steps < 1) throw UsageError("steps must be >= 1");
    if (settings.alpha_sq_min > settings.alpha_sq_max) {
        throw UsageError("alpha-sq-min must not exceed alpha-sq-max");
    }
    if (settings.steps == 1) return {settings.alpha_sq_min};
    std::vector<double> grid(static_cast<std::size_t>(settings.steps));
    if (settings.log_grid) {
        if (!(settings.alpha_sq_min > 0.0)) throw UsageError("log grid needs alpha-sq-min > 0");
        const double ratio = std::log(settings.alpha_sq_max / settings.alpha_sq_min);
        for (int i = 0; i < settings.steps; ++i) {
            grid[static_cast<std::size_t>(i)] =
                settings.alpha_sq_min * std::exp(ratio * i / (settings.steps - 1));
        }
    } else {
        for (int i = 0; i < settings.steps; ++i) {
            grid[static_cast<std::size_t>(i)] =
                settings.alpha_sq_min +
                (settings.alpha_sq_max - settings.alpha_sq_min) * i / (settings.steps - 1);
        }
    }
    return grid;
}

std::string render_csv(const Settings& settings, const std::vector<SweepRow>& rows) {
    std::string csv = "alpha_sq,scheme,mi_bits,error_rate,cutoff_nats,code_length,p0,p1,p2,p3\n";
    for (const SweepRow& row : rows) {
        csv += format_double(row.alpha_sq);
        csv += "," + row.scheme;
        csv += ",";
        if (row.mi_bits.present) csv += format_double(row.mi_bits.value);
        csv += ",";
        if (row.error_rate.present) csv += format_double(row.error_rate.value);
        csv += ",";
        if (row.cutoff_nats.present) csv += format_double(row.cutoff_nats.value);
        csv += ",";
        if (row.code_length.state == CodeLengthCell::State::Value) {
            csv += std::to_string(row.code_length.value);
        } else if (row.code_length.state == CodeLengthCell::State::Unachievable) {
            csv += "inf";
        }
        for (int i = 0; i < 4; ++i) {
            csv += ",";
            if (row.prior_present && i < settings.m) {
                csv += format_double(row.prior[static_cast<std::size_t>(i)]);
            }
        }
        csv += "\n";
    }
    return csv;
}

ordered_json sweep_config_json(const Settings& settings, const std::vector<double>& grid) {
    ordered_json config;
    config["m"] = settings.m;
    config["alpha_sq_min"] = grid.front();
    config["alpha_sq_max"] = grid.back();
    config["steps"] = static_cast<int>(grid.size());
    config["log_grid"] = settings.log_grid;
    config["eta"] = settings.eta;
    config["gamma"] = settings.gamma;
    config["r1"] = settings.r1;
    config["r2"] = settings.r2;
    config["objective"] = settings.objective;
    config["schemes"] = settings.schemes;
    config["target_error"] = settings.target_error;
    return config;
}

std::string render_json(const Settings& settings, const std::vector<double>& grid,
                        const std::vector<SweepRow>& rows) {
    ordered_json doc;
    doc["config"] = sweep_config_json(settings, grid);
    ordered_json out_rows = ordered_json::array();
    for (const SweepRow& row : rows) {
        ordered_json r;
        r["alpha_sq"] = row.alpha_sq;
        r["scheme"] = row.scheme;
        r["mi_bits"] = row.mi_bits.present ? ordered_json(row.mi_bits.value) : ordered_json(nullptr);
        r["error_rate"] =
            row.error_rate.present ? ordered_json(row.error_rate.value) : ordered_json(nullptr);
        r["cutoff_nats"] =
            row.cutoff_nats.present ? ordered_json(row.cutoff_nats.value) : ordered_json(nullptr);
        switch (row.code_length.state) {
            case CodeLengthCell::State::Value: r["code_length"] = row.code_length.value; break;
            case CodeLengthCell::State::Unachievable: r["code_length"] = "inf"; break;
            case CodeLengthCell::State::Empty: r["code_length"] = nullptr; break;
        }
        r["prior"] = row.prior_present
                         ? ordered_json(std::vector<double>(row.prior.begin(),
                                                            row.prior.begin() + settings.m))
                         : ordered_json(nullptr);
        out_rows.push_back(std::move(r));
    }
    doc["rows"] = std::move(out_rows);
    return doc.dump(2) + "\n";
}

int run_sweep(const Settings& settings) {
    if (settings.format != "csv" && settings.format != "json") {
        throw UsageError("sweep supports --format csv or json");
    }
    if (settings.objective != "mi" && settings.objective != "cutoff") {
        throw UsageError("objective must be mi or cutoff");
    }
    if (settings.schemes.empty()) throw UsageError("at least one scheme is required");
    for (const std::string& scheme : settings.schemes) {
        if (scheme != "displacement_optimized" && scheme != "displacement_equal" &&
            scheme != "heterodyne" && scheme != "helstrom") {
            throw UsageError("unknown scheme: " + scheme);
        }
    }

    const std::vector<double> grid = build_grid(settings);
    std::vector<std::vector<SweepRow>> per_point(grid.size());
    std::vector<std::string> failures(grid.size());
    std::vector<disprx_status> failure_codes(grid.size(), DISPRX_OK);

    const int threads =
        std::min<int>(resolve_threads(settings.threads), static_cast<int>(grid.size()));
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        while (true) {
            const std::size_t index = next.fetch_add(1);
            if (index >= grid.size()) break;
            try {
                per_point[index] = evaluate_point(settings, grid[index]);
            } catch (const ApiError& e) {
                failures[index] = e.what();
                failure_codes[index] = e.status;
            } catch (const std::exception& e) {
                failures[index] = e.what();
                failure_codes[index] = DISPRX_ERROR_NUMERICAL;
            }
        }
    };
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!failures[i].empty()) {
            if (failure_codes[i] == DISPRX_ERROR_INVALID_ARGUMENT) throw UsageError(failures[i]);
            throw std::runtime_error(failures[i]);
        }
    }

    std::vector<SweepRow> rows;
    rows.reserve(grid.size() * settings.schemes.size());
    for (auto& group : per_point) {
        for (auto& row : group) rows.push_back(std::move(row));
    }

    write_output(settings, settings.format == "csv" ? render_csv(settings, rows)
                                                    : render_json(settings, grid, rows));
    return 0;
}

// ---- simulate ---------------------------------------------------------------

int run_simulate(const Settings& settings) {
    if (settings.format != "json") throw UsageError("simulate supports --format json");
    if (settings.trials < 1) throw UsageError("trials must be >= 1");
    const int m = settings.m;
    ReceiverHandle receiver =
        make_receiver(m, settings.alpha_sq, settings.eta, settings.gamma, settings.r1, settings.r2);

    std::vector<std::uint64_t> counts(static_cast<std::size_t>(m * m));
    check(disprx_simulate(receiver.get(), settings.trials, settings.seed, settings.threads,
                          counts.data()),
          "simulate");
    std::vector<double> exact(static_cast<std::size_t>(m * m));
    check(disprx_exact_channel_matrix(receiver.get(), exact.data()), "exact matrix");

    std::vector<double> empirical(static_cast<std::size_t>(m * m));
    double max_deviation = 0.0;
    for (int k = 0; k < m * m; ++k) {
        empirical[static_cast<std::size_t>(k)] =
            static_cast<double>(counts[static_cast<std::size_t>(k)]) /
            static_cast<double>(settings.trials);
        max_deviation = std::max(
            max_deviation,
            std::abs(empirical[static_cast<std::size_t>(k)] - exact[static_cast<std::size_t>(k)]));
    }

    ordered_json doc;
    doc["config"] = receiver_config_json(settings, settings.alpha_sq);
    doc["trials_per_input"] = settings.trials;
    doc["seed"] = settings.seed;
    ordered_json count_rows = ordered_json::array();
    for (int i = 0; i < m; ++i) {
        ordered_json row = ordered_json::array();
        for (int j = 0; j < m; ++j) row.push_back(counts[static_cast<std::size_t>(i * m + j)]);
        count_rows.push_back(std::move(row));
    }
    doc["counts"] = std::move(count_rows);
    doc["empirical"] = matrix_to_json(empirical, m);
    doc["exact"] = matrix_to_json(exact, m);
    doc["max_abs_deviation"] = max_deviation;
    write_output(settings, doc.dump(2) + "\n");
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"displacement receiver analysis for weak PSK signals"};
    app.require_subcommand(1);

    Settings settings;
    std::string config_path;

    // The config file must be applied before CLI11 assigns flag values, so
    // scan for --config up front.
    try {
        for (int i = 1; i < argc; ++i) {
            const std::string arg = argv[i];
            if (arg == "--config" && i + 1 < argc) {
                config_path = argv[i + 1];
            } else if (arg.rfind("--config=", 0) == 0) {
                config_path = arg.substr(9);
            }
        }
        if (!config_path.empty()) apply_config_file(settings, config_path);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    const std::string config_format = settings.format;

    CLI::App* matrix = app.add_subcommand("matrix", "exact vs tabulated channel matrix with audit");
    add_common_options(matrix, settings, config_path);
    matrix->add_option("--alpha-sq", settings.alpha_sq, "mean photon number |alpha|^2");
    matrix->add_option("--format", settings.format, "text or json");

    CLI::App* sweep = app.add_subcommand("sweep", "metric sweep over mean photon number");
    add_common_options(sweep, settings, config_path);
    auto* single = sweep->add_option("--alpha-sq", settings.alpha_sq, "evaluate a single grid point");
    auto* grid_min = sweep->add_option("--alpha-sq-min", settings.alpha_sq_min, "grid start");
    auto* grid_max = sweep->add_option("--alpha-sq-max", settings.alpha_sq_max, "grid end");
    auto* grid_steps = sweep->add_option("--steps", settings.steps, "grid points (>= 1)");
    sweep->add_flag("--log-grid", settings.log_grid, "logarithmic grid spacing");
    sweep->add_option("--objective", settings.objective,
                      "prior optimization objective: mi or cutoff");
    sweep->add_option("--schemes", settings.schemes, "comma-separated scheme list")->delimiter(',');
    sweep->add_option("--target-error", settings.target_error,
                      "decoding-error target for code lengths");
    sweep->add_option("--seed", settings.seed, "seed for simulation columns");
    sweep->add_option("--format", settings.format, "csv or json");

    CLI::App* simulate = app.add_subcommand("simulate", "seeded Monte-Carlo trial runs");
    add_common_options(simulate, settings, config_path);
    simulate->add_option("--alpha-sq", settings.alpha_sq, "mean photon number |alpha|^2");
    simulate->add_option("--trials", settings.trials, "trials per input symbol");
    simulate->add_option("--seed", settings.seed, "simulation seed");
    simulate->add_option("--format", settings.format, "json");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp" ||
            e.get_name() == "CallForVersion") {
            return app.exit(e);
        }
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (sweep->parsed()) {
            if (single->count() > 0) {
                settings.single_point_requested = true;
                settings.range_requested = false;
            }
            settings.range_requested |=
                grid_min->count() > 0 || grid_max->count() > 0 || grid_steps->count() > 0;
        }
        // Per-subcommand default formats; an explicit flag or config wins.
        if (settings.format.empty()) {
            settings.format = matrix->parsed() ? "text" : sweep->parsed() ? "csv" : "json";
        } else if (matrix->parsed() && settings.format == config_format && config_format == "csv") {
            settings.format = "text"; // csv in a shared config file does not apply to matrix
        }

        if (matrix->parsed()) return run_matrix(settings);
        if (sweep->parsed()) return run_sweep(settings);
        if (simulate->parsed()) return run_simulate(settings);
        return 2;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ApiError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.status == DISPRX_ERROR_INVALID_ARGUMENT ? 2 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
