/* Copyright 2026 The dampest Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/


/* C interface to the dampest library.
 *
 * Series and results are opaque handles owned by the caller and released with
 * the matching *_free function. Every fallible call returns a dampest_status;
 * the message of the most recent failure on the calling thread is available
 * from dampest_last_error(). */

#ifndef DAMPEST_DAMPEST_H_
#define DAMPEST_DAMPEST_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(DAMPEST_BUILDING_LIBRARY)
#define DAMPEST_API __declspec(dllexport)
#else
#define DAMPEST_API __declspec(dllimport)
#endif
#else
#define DAMPEST_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dampest_status {
  DAMPEST_OK = 0,
  DAMPEST_INVALID_ARGUMENT,
  DAMPEST_PARSE,
  DAMPEST_NON_UNIFORM,
  DAMPEST_TOO_SHORT,
  DAMPEST_IO,
  DAMPEST_NO_CROSSINGS,
  DAMPEST_INSUFFICIENT_POINTS,
  DAMPEST_NO_ENVELOPE_POINTS,
  DAMPEST_NO_VALID_CANDIDATES,
  DAMPEST_INTERNAL
} dampest_status;

typedef enum dampest_stage {
  DAMPEST_STAGE_NONE = 0,
  DAMPEST_STAGE_INPUT,
  DAMPEST_STAGE_SMOOTHING,
  DAMPEST_STAGE_EXTRACTION,
  DAMPEST_STAGE_ESTIMATION
} dampest_stage;

/* x(t) = C exp(-b t) sin(alpha t + phi). */
typedef struct dampest_params {
  double C;
  double b;
  double alpha;
  double phi;
} dampest_params;

typedef struct dampest_series dampest_series;
typedef struct dampest_result dampest_result;

DAMPEST_API const char* dampest_version(void);
DAMPEST_API const char* dampest_status_string(dampest_status status);
/* Message of the last failed call on this thread; "" if none. */
DAMPEST_API const char* dampest_last_error(void);
/* Stage the last pipeline failure on this thread surfaced from. */
DAMPEST_API dampest_stage dampest_last_error_stage(void);

/* ---- model ------------------------------------------------------------- */

DAMPEST_API dampest_status dampest_params_validate(const dampest_params* params);
DAMPEST_API dampest_status dampest_evaluate(const dampest_params* params,
                                            double t, double* out);
DAMPEST_API dampest_status dampest_integral(const dampest_params* params,
                                            double t1, double t2, double* out);
DAMPEST_API dampest_status dampest_zero_cross_time(
    const dampest_params* params, int k, double* out);
DAMPEST_API dampest_status dampest_envelope_tangent_time(
    const dampest_params* params, int k, double* out);
DAMPEST_API dampest_status dampest_first_peak_time(
    const dampest_params* params, double* out);
/* Normalized windowed autocorrelation; numeric != 0 selects quadrature. */
DAMPEST_API dampest_status dampest_acf_normalized(const dampest_params* params,
                                                  double window, double lag,
                                                  int numeric, double* out);

/* ---- series ------------------------------------------------------------ */

DAMPEST_API dampest_status dampest_series_synth(const dampest_params* params,
                                                double t0, double dt, size_t n,
                                                dampest_series** out);
DAMPEST_API dampest_status dampest_series_from_samples(double t0, double dt,
                                                       const double* samples,
                                                       size_t n,
                                                       dampest_series** out);
DAMPEST_API dampest_status dampest_series_read_csv(const char* path,
                                                   dampest_series** out);
/* New series with N(0, (percent * scale)^2) noise from a seeded generator. */
DAMPEST_API dampest_status dampest_series_add_noise(const dampest_series* in,
                                                    double percent,
                                                    uint64_t seed, double scale,
                                                    dampest_series** out);
DAMPEST_API size_t dampest_series_size(const dampest_series* series);
DAMPEST_API double dampest_series_t0(const dampest_series* series);
DAMPEST_API double dampest_series_dt(const dampest_series* series);
/* Copies min(capacity, size) samples into out; returns the count copied. */
DAMPEST_API size_t dampest_series_copy(const dampest_series* series,
                                       double* out, size_t capacity);
DAMPEST_API void dampest_series_free(dampest_series* series);

/* ---- pipeline ---------------------------------------------------------- */

enum {
  DAMPEST_FILTER_MEAN = 1u << 0,
  DAMPEST_FILTER_MEDIAN = 1u << 1
};

typedef struct dampest_options {
  unsigned filter_kinds;   /* DAMPEST_FILTER_* bitmask; 0 means mean */
  const size_t* k_values;  /* NULL or k_count == 0 selects defaults */
  size_t k_count;
  double hysteresis;       /* <= 0 selects 0.01 */
  int has_truth;
  dampest_params truth;
} dampest_options;

DAMPEST_API void dampest_options_init(dampest_options* options);

DAMPEST_API dampest_status dampest_run_pipeline(const dampest_series* input,
                                                const dampest_options* options,
                                                dampest_result** out);

typedef enum dampest_method {
  DAMPEST_METHOD_PROPOSED = 0,
  DAMPEST_METHOD_TRADITIONAL = 1
} dampest_method;

typedef struct dampest_estimate {
  double period;
  double frequency;
  double phase;
  double shift;
  double damping;    /* NaN when has_envelope == 0 */
  double amplitude;  /* NaN when has_envelope == 0 */
  int has_envelope;
  size_t crossings_used;
  size_t envelope_points_used;
  /* Relative errors against the truth, when has_errors. amplitude and
   * damping errors are NaN without an envelope estimate. */
  int has_errors;
  double period_error;
  double frequency_error;
  double phase_error;
  double amplitude_error;
  double damping_error;
} dampest_estimate;

/* DAMPEST_INSUFFICIENT_POINTS (or the recorded failure code) when the
 * traditional estimate could not be formed. */
DAMPEST_API dampest_status dampest_result_estimate(const dampest_result* result,
                                                   dampest_method method,
                                                   dampest_estimate* out);
DAMPEST_API size_t dampest_result_crossing_count(const dampest_result* result);
DAMPEST_API size_t dampest_result_smoothing_k(const dampest_result* result);
DAMPEST_API double dampest_result_period_hint(const dampest_result* result);

/* Report as a NUL-terminated JSON string; release with dampest_string_free. */
DAMPEST_API dampest_status dampest_result_report_json(
    const dampest_result* result, char** out);
DAMPEST_API void dampest_string_free(char* str);

enum {
  DAMPEST_EMIT_REPORT = 1u << 0,
  DAMPEST_EMIT_PLOTS = 1u << 1,
  DAMPEST_EMIT_ACF = 1u << 2
};

/* Describes the analysed series in report.json. Optional. */
typedef struct dampest_run_info {
  const char* source;      /* "synth" or "file" */
  const char* input_path;  /* may be NULL */
  int has_synth;
  dampest_params synth;
  double noise_percent;
  uint64_t seed;
} dampest_run_info;

DAMPEST_API dampest_status dampest_result_write(const dampest_result* result,
                                                const dampest_run_info* info,
                                                unsigned emit_flags,
                                                const char* out_dir);
DAMPEST_API void dampest_result_free(dampest_result* result);

#ifdef __cplusplus
}
#endif

#endif /* DAMPEST_DAMPEST_H_ */
