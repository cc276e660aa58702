/* Copyright 2026 The disprx Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C API of the disprx shared library.
 *
 * disprx models a three-stage feedforward displacement receiver for weak
 * 3-/4-PSK coherent signals: exact decision-tree channel matrices, a seeded
 * Monte-Carlo trial simulator, mutual-information / cutoff-rate prior
 * optimization, and heterodyne / Helstrom reference curves.
 *
 * Conventions:
 *  - matrices are row-major double buffers of size M*M, entry [i*M + j]
 *    holding P(decide j | input i); priors are length-M double buffers;
 *  - every function returns a disprx_status; on failure the out-parameters
 *    are untouched and disprx_last_error_message() describes the cause
 *    (thread-local);
 *  - the receiver handle is opaque; create/destroy must pair.
 */

#ifndef DISPRX_H
#define DISPRX_H

#include <stddef.h>
#include <stdint.h>

#if defined(__cplusplus)
extern "C" {
#endif

typedef enum disprx_status {
    DISPRX_OK = 0,
    DISPRX_ERROR_INVALID_ARGUMENT = 1,
    DISPRX_ERROR_DIMENSION_MISMATCH = 2,
    DISPRX_ERROR_NO_CONVERGENCE = 3,
    DISPRX_ERROR_UNACHIEVABLE = 4,
    DISPRX_ERROR_NUMERICAL = 5
} disprx_status;

/* Static description of a status code. */
const char* disprx_status_message(disprx_status status);

/* Detail message of the most recent failure on this thread ("" if none). */
const char* disprx_last_error_message(void);

const char* disprx_version(void);

/* ---- receiver model ---------------------------------------------------- */

typedef struct disprx_receiver disprx_receiver;

/* Validates the parameters and builds the receiver (configuration plus its
 * canonical three-stage decision tree). symbol_count must be 3 or 4. */
disprx_status disprx_receiver_create(int symbol_count, double alpha_sq, double efficiency,
                                     double dark_count, double r1, double r2,
                                     disprx_receiver** out_receiver);
void disprx_receiver_destroy(disprx_receiver* receiver);
int disprx_receiver_symbol_count(const disprx_receiver* receiver);

/* Exact channel matrix by tree-path enumeration (no sampling). */
disprx_status disprx_exact_channel_matrix(const disprx_receiver* receiver, double* out_matrix);

/* Literal transcription of the published closed-form table (misprints
 * preserved) and its signed difference against the exact evaluator. Either
 * output may be NULL to skip it. */
disprx_status disprx_tabulated_audit(const disprx_receiver* receiver, double* out_tabulated,
                                     double* out_diff);

/* Seeded Monte-Carlo estimate: trials_per_input trials for each input.
 * out_counts is M*M row-major, [i*M + j] = trials of input i decided as j.
 * Bit-for-bit reproducible for a seed under any thread count (threads <= 0
 * picks hardware concurrency). */
disprx_status disprx_simulate(const disprx_receiver* receiver, uint64_t trials_per_input,
                              uint64_t seed, int threads, uint64_t* out_counts);

/* ---- information metrics ----------------------------------------------- */

/* Mutual information of (channel, prior) in bits. */
disprx_status disprx_mutual_information(int order, const double* channel, const double* prior,
                                        double* out_bits);

/* Channel capacity via alternating maximization. Certifies
 * max_i D(P(.|i) || output) - I <= tolerance_bits on success. Pass
 * tolerance_bits <= 0 and/or max_iterations == 0 for the defaults (1e-10,
 * 1e6). Any out-pointer may be NULL. */
disprx_status disprx_capacity(int order, const double* channel, double tolerance_bits,
                              uint64_t max_iterations, double* out_prior, double* out_bits,
                              double* out_gap_bits, uint64_t* out_iterations);

/* Gram matrix of square-rooted channel rows (M*M, symmetric). */
disprx_status disprx_bhattacharyya(int order, const double* channel, double* out_matrix);

/* Cutoff rate -ln(p^T b p) at a given prior, in nats. */
disprx_status disprx_cutoff_rate(int order, const double* bhattacharyya, const double* prior,
                                 double* out_nats);

/* Exact cutoff-rate maximization over the prior simplex (support
 * enumeration). Any out-pointer may be NULL. */
disprx_status disprx_cutoff_optimize(int order, const double* bhattacharyya, double* out_prior,
                                     double* out_nats, uint64_t* out_supports_examined);

/* Symbol error rate 1 - sum_i p_i P(i|i). */
disprx_status disprx_average_error_rate(int order, const double* channel, const double* prior,
                                        double* out_rate);

/* exp(-code_length * cutoff_nats). */
disprx_status disprx_decoding_error_bound(double cutoff_nats, uint64_t code_length,
                                          double* out_bound);

/* Least N with exp(-N * cutoff_nats) <= target_error;
 * DISPRX_ERROR_UNACHIEVABLE when cutoff_nats <= 0. */
disprx_status disprx_required_code_length(double cutoff_nats, double target_error,
                                          uint64_t* out_length);

/* ---- reference curves --------------------------------------------------- */

/* Sector-decision heterodyne channel matrix, quadrature-certified to
 * abs_tol (pass <= 0 for the default 1e-10). order in [2, 4]. */
disprx_status disprx_heterodyne_matrix(int order, double alpha_sq, double abs_tol,
                                       double* out_matrix);

/* Helstrom (minimum-error) probability for equiprobable PSK, order in
 * [2, 4]. */
disprx_status disprx_helstrom_error(int order, double alpha_sq, double* out_error);

#if defined(__cplusplus)
}
#endif

#endif /* DISPRX_H */
