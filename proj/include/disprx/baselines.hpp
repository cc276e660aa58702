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

#ifndef DISPRX_BASELINES_HPP
#define DISPRX_BASELINES_HPP

#include "disprx/errors.hpp"
#include "disprx/receiver.hpp"

namespace disprx {

/// Ideal heterodyne reference: Gaussian outcome density over the complex
/// plane, decided by nearest signal phase (angular sectors of width 2*pi/M).
struct HeterodyneSpec {
    int symbol_count = 4;
    double alpha_sq = 1.0;
    double quadrature_abs_tol = 1e-10;
};

/// Adaptive quadrature could not certify the requested absolute tolerance;
/// carries what it reached.
struct QuadratureError : NumericalError {
    QuadratureError(const char* message, double estimate_value, double error_bound)
        : NumericalError(message), estimate(estimate_value), achieved_tol(error_bound) {}
    double estimate;
    double achieved_tol;
};

/// Sector-decision heterodyne channel matrix. Rows integrate to 1 within the
/// quadrature tolerance; entries depend only on (j - i) mod M up to that
/// tolerance.
ChannelMatrix heterodyne_channel_matrix(const HeterodyneSpec& spec);

/// Minimum-error (Helstrom) probability for equiprobable M-PSK coherent
/// states, via the square-root measurement on the circulant Gram matrix.
/// M in {2, 3, 4}; M = 2 doubles as the closed-form anchor case.
double helstrom_error_psk(int symbol_count, double alpha_sq);

/// Eigenvalues of the signal-set Gram matrix (DFT of its first row). Real,
/// nonnegative, and summing to M; raises NumericalError past 1e-9 defects.
std::array<double, kMaxSymbols> helstrom_gram_eigenvalues(int symbol_count, double alpha_sq);

/// Adaptive Gauss-Kronrod (G7, K15) integration of f over [a, b] to a
/// certified absolute tolerance. Exposed for reuse by tests.
double integrate_adaptive(double (*f)(double, const void*), const void* context, double a, double b,
                          double abs_tol);

} // namespace disprx

#endif
