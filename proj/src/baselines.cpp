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

#include "disprx/baselines.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

namespace disprx {

namespace {

// Gauss 7 / Kronrod 15 nodes and weights on [-1, 1]. Column layout:
// abscissa, Gauss weight (0 for Kronrod-only nodes), Kronrod weight.
constexpr double kGK15[8][3] = {
    {0.000000000000000, 0.417959183673469, 0.209482141084728},
    {0.405845151377397, 0.381830050505119, 0.190350578064785},
    {0.741531185599394, 0.279705391489277, 0.140653259715525},
    {0.949107912342759, 0.129484966168870, 0.063092092629979},
    {0.207784955007898, 0.0, 0.204432940075298},
    {0.586087235467691, 0.0, 0.169004726639267},
    {0.864864423359769, 0.0, 0.104790010322250},
    {0.991455371120813, 0.0, 0.022935322010529},
};

struct Interval {
    double a, b, estimate, error;
};

Interval gk15(double (*f)(double, const void*), const void* context, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double f0 = f(center, context);
    double gauss = kGK15[0][1] * f0;
    double kronrod = kGK15[0][2] * f0;
    for (int i = 1; i < 8; ++i) {
        const double dx = half * kGK15[i][0];
        const double fsum = f(center + dx, context) + f(center - dx, context);
        gauss += kGK15[i][1] * fsum;
        kronrod += kGK15[i][2] * fsum;
    }
    gauss *= half;
    kronrod *= half;
    const double rough = std::abs(gauss - kronrod);
    // Standard sharpened estimate; never report less than a few ulps.
    double error = rough > 0.0 ? std::pow(200.0 * rough, 1.5) : 0.0;
    error = std::max(std::min(error, rough), std::abs(kronrod) * 1e-16);
    return {a, b, kronrod, error};
}

} // namespace

double integrate_adaptive(double (*f)(double, const void*), const void* context, double a, double b,
                          double abs_tol) {
    if (!(abs_tol > 0.0)) throw std::invalid_argument("abs_tol must be > 0");
    constexpr int kMaxIntervals = 4000;
    std::vector<Interval> stack;
    stack.push_back(gk15(f, context, a, b));
    double total = 0.0;
    int evaluations = 1;
    while (!stack.empty()) {
        // Each interval gets a tolerance share proportional to its length,
        // so the per-interval bounds sum to abs_tol.
        const Interval top = stack.back();
        const double share = abs_tol * std::abs(top.b - top.a) / std::abs(b - a);
        if (top.error <= share) {
            total += top.estimate;
            stack.pop_back();
            continue;
        }
        if (evaluations >= kMaxIntervals) {
            double estimate = total;
            double achieved = 0.0;
            for (const Interval& rest : stack) {
                estimate += rest.estimate;
                achieved += rest.error;
            }
            throw QuadratureError("adaptive quadrature failed to reach tolerance", estimate,
                                  achieved);
        }
        stack.pop_back();
        const double mid = 0.5 * (top.a + top.b);
        stack.push_back(gk15(f, context, top.a, mid));
        stack.push_back(gk15(f, context, mid, top.b));
        evaluations += 2;
    }
    return total;
}

namespace {

struct SectorContext {
    double amplitude; // sqrt(alpha_sq)
    double alpha_sq;
};

// Angular density of the heterodyne outcome for a signal at phase 0: the
// radial part of the Gaussian integrates in closed form.
double sector_integrand(double theta, const void* context) {
    const auto* ctx = static_cast<const SectorContext*>(context);
    const double projection = ctx->amplitude * std::cos(theta);
    const double sine = ctx->amplitude * std::sin(theta);
    const double radial = 0.5 * std::exp(-ctx->alpha_sq) +
                          0.5 * std::sqrt(M_PI) * projection * std::exp(-sine * sine) *
                              (1.0 + std::erf(projection));
    return radial / M_PI;
}

} // namespace

ChannelMatrix heterodyne_channel_matrix(const HeterodyneSpec& spec) {
    if (spec.symbol_count < 2 || spec.symbol_count > kMaxSymbols) {
        throw std::invalid_argument("symbol_count must be in [2, 4]");
    }
    if (!(spec.alpha_sq >= 0.0)) throw std::invalid_argument("alpha_sq must be >= 0");
    if (!(spec.quadrature_abs_tol > 0.0)) throw std::invalid_argument("tolerance must be > 0");

    const int m = spec.symbol_count;
    SectorContext context{std::sqrt(spec.alpha_sq), spec.alpha_sq};
    ChannelMatrix channel;
    channel.order = m;
    const double sector_half = M_PI / m;
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            // Sector j seen from signal i; reduced to the relative angle.
            const double center = 2.0 * M_PI * (j - i) / m;
            channel.at(i, j) = integrate_adaptive(sector_integrand, &context, center - sector_half,
                                                  center + sector_half, spec.quadrature_abs_tol);
        }
    }
    return channel;
}

std::array<double, kMaxSymbols> helstrom_gram_eigenvalues(int symbol_count, double alpha_sq) {
    if (symbol_count < 2 || symbol_count > kMaxSymbols) {
        throw std::invalid_argument("symbol_count must be in [2, 4]");
    }
    if (!(alpha_sq >= 0.0)) throw std::invalid_argument("alpha_sq must be >= 0");

    const int m = symbol_count;
    // Circulant Gram matrix of the signal set; its eigenvalues come from the
    // DFT of the first row and are real and nonnegative.
    std::array<std::complex<double>, kMaxSymbols> overlaps;
    for (int k = 0; k < m; ++k) {
        const std::complex<double> u = std::polar(1.0, 2.0 * M_PI * k / m);
        overlaps[static_cast<std::size_t>(k)] = std::exp(-alpha_sq + alpha_sq * u);
    }
    std::array<double, kMaxSymbols> eigenvalues{};
    for (int k = 0; k < m; ++k) {
        std::complex<double> lambda = 0.0;
        for (int n = 0; n < m; ++n) {
            lambda += overlaps[static_cast<std::size_t>(n)] * std::polar(1.0, -2.0 * M_PI * k * n / m);
        }
        if (std::abs(lambda.imag()) > 1e-9) {
            throw NumericalError("Gram eigenvalue has a non-negligible imaginary part");
        }
        if (lambda.real() < -1e-9) {
            throw NumericalError("Gram eigenvalue is negative beyond tolerance");
        }
        eigenvalues[static_cast<std::size_t>(k)] = std::max(lambda.real(), 0.0);
    }
    // Rounding noise of order 1e-16 would blow up to 1e-8 under the square
    // root; zero anything far below the trace (= M).
    for (int k = 0; k < m; ++k) {
        if (eigenvalues[static_cast<std::size_t>(k)] < 1e-14 * m) {
            eigenvalues[static_cast<std::size_t>(k)] = 0.0;
        }
    }
    return eigenvalues;
}

double helstrom_error_psk(int symbol_count, double alpha_sq) {
    const auto eigenvalues = helstrom_gram_eigenvalues(symbol_count, alpha_sq);
    const int m = symbol_count;
    double root_sum = 0.0;
    for (int k = 0; k < m; ++k) root_sum += std::sqrt(eigenvalues[static_cast<std::size_t>(k)]);
    const double success = root_sum * root_sum / (static_cast<double>(m) * m);
    return std::max(0.0, 1.0 - success);
}

} // namespace disprx
