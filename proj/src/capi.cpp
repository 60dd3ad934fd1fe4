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


#include "dampest/dampest.h"

#include <cmath>
#include <cstring>
#include <exception>
#include <limits>
#include <new>
#include <optional>
#include <string>
#include <vector>

#include "dampest/error.hpp"
#include "dampest/estimate.hpp"
#include "dampest/io.hpp"
#include "dampest/model.hpp"
#include "dampest/synth.hpp"

struct dampest_series {
  dampest::TimeSeries series;
};

struct dampest_result {
  dampest::TimeSeries input;
  dampest::PipelineResult result;
};

namespace {

thread_local std::string last_error;
thread_local dampest_stage last_stage = DAMPEST_STAGE_NONE;

dampest_status to_status(dampest::ErrorCode code) {
  using dampest::ErrorCode;
  switch (code) {
    case ErrorCode::invalid_argument: return DAMPEST_INVALID_ARGUMENT;
    case ErrorCode::parse: return DAMPEST_PARSE;
    case ErrorCode::non_uniform: return DAMPEST_NON_UNIFORM;
    case ErrorCode::too_short: return DAMPEST_TOO_SHORT;
    case ErrorCode::io: return DAMPEST_IO;
    case ErrorCode::no_crossings: return DAMPEST_NO_CROSSINGS;
    case ErrorCode::insufficient_points: return DAMPEST_INSUFFICIENT_POINTS;
    case ErrorCode::no_envelope_points: return DAMPEST_NO_ENVELOPE_POINTS;
    case ErrorCode::no_valid_candidates: return DAMPEST_NO_VALID_CANDIDATES;
  }
  return DAMPEST_INTERNAL;
}

dampest_stage to_stage(dampest::Stage stage) {
  switch (stage) {
    case dampest::Stage::none: return DAMPEST_STAGE_NONE;
    case dampest::Stage::input: return DAMPEST_STAGE_INPUT;
    case dampest::Stage::smoothing: return DAMPEST_STAGE_SMOOTHING;
    case dampest::Stage::extraction: return DAMPEST_STAGE_EXTRACTION;
    case dampest::Stage::estimation: return DAMPEST_STAGE_ESTIMATION;
  }
  return DAMPEST_STAGE_NONE;
}

dampest_status fail(dampest_status status, std::string message,
                    dampest_stage stage = DAMPEST_STAGE_NONE) {
  last_error = std::move(message);
  last_stage = stage;
  return status;
}

// Runs fn, translating exceptions into status codes.
template <typename Fn>
dampest_status guarded(Fn&& fn) {
  try {
    last_error.clear();
    last_stage = DAMPEST_STAGE_NONE;
    fn();
    return DAMPEST_OK;
  } catch (const dampest::Error& e) {
    return fail(to_status(e.code()), e.what(), to_stage(e.stage()));
  } catch (const std::bad_alloc&) {
    return fail(DAMPEST_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(DAMPEST_INTERNAL, e.what());
  } catch (...) {
    return fail(DAMPEST_INTERNAL, "unknown error");
  }
}

dampest::OscillatorParams to_params(const dampest_params* p) {
  if (p == nullptr) throw dampest::Error(dampest::ErrorCode::invalid_argument, "params is NULL");
  return dampest::OscillatorParams(p->C, p->b, p->alpha, p->phi);
}

template <typename T>
void require(const T* ptr, const char* name) {
  if (ptr == nullptr)
    throw dampest::Error(dampest::ErrorCode::invalid_argument, std::string(name) + " is NULL");
}

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

}  // namespace

extern "C" {

const char* dampest_version(void) { return DAMPEST_VERSION_STRING; }

const char* dampest_status_string(dampest_status status) {
  switch (status) {
    case DAMPEST_OK: return "Ok";
    case DAMPEST_INVALID_ARGUMENT: return "InvalidArgument";
    case DAMPEST_PARSE: return "Parse";
    case DAMPEST_NON_UNIFORM: return "NonUniform";
    case DAMPEST_TOO_SHORT: return "TooShort";
    case DAMPEST_IO: return "Io";
    case DAMPEST_NO_CROSSINGS: return "NoCrossings";
    case DAMPEST_INSUFFICIENT_POINTS: return "InsufficientPoints";
    case DAMPEST_NO_ENVELOPE_POINTS: return "NoEnvelopePoints";
    case DAMPEST_NO_VALID_CANDIDATES: return "NoValidCandidates";
    case DAMPEST_INTERNAL: return "Internal";
  }
  return "Unknown";
}

const char* dampest_last_error(void) { return last_error.c_str(); }

dampest_stage dampest_last_error_stage(void) { return last_stage; }

dampest_status dampest_params_validate(const dampest_params* params) {
  return guarded([&] { (void)to_params(params); });
}

dampest_status dampest_evaluate(const dampest_params* params, double t, double* out) {
  return guarded([&] {
    require(out, "out");
    *out = dampest::evaluate(to_params(params), t);
  });
}

dampest_status dampest_integral(const dampest_params* params, double t1, double t2,
                                double* out) {
  return guarded([&] {
    require(out, "out");
    *out = dampest::integral_over_interval(to_params(params), t1, t2);
  });
}

dampest_status dampest_zero_cross_time(const dampest_params* params, int k, double* out) {
  return guarded([&] {
    require(out, "out");
    *out = dampest::zero_cross_time(to_params(params), k);
  });
}

dampest_status dampest_envelope_tangent_time(const dampest_params* params, int k,
                                             double* out) {
  return guarded([&] {
    require(out, "out");
    *out = dampest::envelope_tangent_time(to_params(params), k);
  });
}

dampest_status dampest_first_peak_time(const dampest_params* params, double* out) {
  return guarded([&] {
    require(out, "out");
    *out = dampest::first_peak_time(to_params(params));
  });
}

dampest_status dampest_acf_normalized(const dampest_params* params, double window,
                                      double lag, int numeric, double* out) {
  return guarded([&] {
    require(out, "out");
    *out = dampest::acf_normalized(
        to_params(params), dampest::AcfSpec(window, lag),
        numeric ? dampest::AcfMode::numeric : dampest::AcfMode::closed_form);
  });
}

dampest_status dampest_series_synth(const dampest_params* params, double t0, double dt,
                                    size_t n, dampest_series** out) {
  return guarded([&] {
    require(out, "out");
    *out = new dampest_series{dampest::generate_series(to_params(params), t0, dt, n)};
  });
}

dampest_status dampest_series_from_samples(double t0, double dt, const double* samples,
                                           size_t n, dampest_series** out) {
  return guarded([&] {
    require(out, "out");
    if (n > 0) require(samples, "samples");
    std::vector<double> x(samples, samples + n);
    *out = new dampest_series{dampest::TimeSeries(t0, dt, std::move(x))};
  });
}

dampest_status dampest_series_read_csv(const char* path, dampest_series** out) {
  return guarded([&] {
    require(out, "out");
    require(path, "path");
    *out = new dampest_series{dampest::ingest_csv(path)};
  });
}

dampest_status dampest_series_add_noise(const dampest_series* in, double percent,
                                        uint64_t seed, double scale,
                                        dampest_series** out) {
  return guarded([&] {
    require(in, "series");
    require(out, "out");
    *out = new dampest_series{
        dampest::add_gaussian_noise(in->series, dampest::NoiseSpec{percent, seed}, scale)};
  });
}

size_t dampest_series_size(const dampest_series* series) {
  return series ? series->series.size() : 0;
}

double dampest_series_t0(const dampest_series* series) {
  return series ? series->series.t0() : kNaN;
}

double dampest_series_dt(const dampest_series* series) {
  return series ? series->series.dt() : kNaN;
}

size_t dampest_series_copy(const dampest_series* series, double* out, size_t capacity) {
  if (series == nullptr || out == nullptr) return 0;
  const auto samples = series->series.samples();
  const size_t n = std::min(capacity, samples.size());
  std::copy_n(samples.begin(), n, out);
  return n;
}

void dampest_series_free(dampest_series* series) { delete series; }

void dampest_options_init(dampest_options* options) {
  if (options == nullptr) return;
  *options = dampest_options{};
  options->filter_kinds = DAMPEST_FILTER_MEAN;
  options->hysteresis = 0.01;
}

dampest_status dampest_run_pipeline(const dampest_series* input,
                                    const dampest_options* options,
                                    dampest_result** out) {
  return guarded([&] {
    require(input, "input");
    require(out, "out");
    dampest::PipelineOptions opts;
    std::optional<dampest::OscillatorParams> truth;
    if (options != nullptr) {
      opts.kinds.clear();
      if (options->filter_kinds & DAMPEST_FILTER_MEAN) opts.kinds.push_back(dampest::FilterKind::mean);
      if (options->filter_kinds & DAMPEST_FILTER_MEDIAN)
        opts.kinds.push_back(dampest::FilterKind::median);
      if (opts.kinds.empty()) opts.kinds.push_back(dampest::FilterKind::mean);
      if (options->k_count > 0) {
        require(options->k_values, "k_values");
        opts.k_candidates.assign(options->k_values, options->k_values + options->k_count);
      }
      if (options->hysteresis > 0.0) opts.hysteresis = options->hysteresis;
      if (options->has_truth) truth = to_params(&options->truth);
    }
    auto result = dampest::run_pipeline(input->series, opts, truth);
    *out = new dampest_result{input->series, std::move(result)};
  });
}

dampest_status dampest_result_estimate(const dampest_result* result, dampest_method method,
                                       dampest_estimate* out) {
  return guarded([&] {
    require(result, "result");
    require(out, "out");
    const dampest::EstimationReport* report = &result->result.proposed;
    if (method == DAMPEST_METHOD_TRADITIONAL) {
      if (!result->result.traditional) {
        if (const auto& f = result->result.traditional_failure)
          throw dampest::Error(f->code, f->message, dampest::Stage::estimation);
        throw dampest::Error(dampest::ErrorCode::insufficient_points,
                             "traditional estimate unavailable", dampest::Stage::estimation);
      }
      report = &*result->result.traditional;
    }
    dampest_estimate e{};
    e.period = report->period;
    e.frequency = report->frequency;
    e.phase = report->phase;
    e.shift = report->shift;
    e.has_envelope = report->damping && report->amplitude;
    e.damping = report->damping.value_or(kNaN);
    e.amplitude = report->amplitude.value_or(kNaN);
    e.crossings_used = report->crossings_used;
    e.envelope_points_used = report->envelope_points_used;
    if (const auto& err = report->errors_vs_truth) {
      e.has_errors = 1;
      e.period_error = err->period;
      e.frequency_error = err->frequency;
      e.phase_error = err->phase;
      e.amplitude_error = err->amplitude.value_or(kNaN);
      e.damping_error = err->damping.value_or(kNaN);
    }
    *out = e;
  });
}

size_t dampest_result_crossing_count(const dampest_result* result) {
  return result ? result->result.crossings.crossings.size() : 0;
}

size_t dampest_result_smoothing_k(const dampest_result* result) {
  return result ? result->result.smoothing.k : 0;
}

double dampest_result_period_hint(const dampest_result* result) {
  return result ? result->result.period_hint : kNaN;
}

namespace {

dampest::RunInfo to_run_info(const dampest_run_info* info) {
  dampest::RunInfo run;
  if (info == nullptr) return run;
  if (info->source) run.source = info->source;
  if (info->input_path) run.input_path = info->input_path;
  if (info->has_synth) run.synth_params = to_params(&info->synth);
  run.noise = dampest::NoiseSpec{info->noise_percent, info->seed};
  return run;
}

}  // namespace

dampest_status dampest_result_report_json(const dampest_result* result, char** out) {
  return guarded([&] {
    require(result, "result");
    require(out, "out");
    const std::string json = dampest::report_json(result->result, result->input, {});
    char* buf = new char[json.size() + 1];
    std::memcpy(buf, json.c_str(), json.size() + 1);
    *out = buf;
  });
}

void dampest_string_free(char* str) { delete[] str; }

dampest_status dampest_result_write(const dampest_result* result,
                                    const dampest_run_info* info, unsigned emit_flags,
                                    const char* out_dir) {
  return guarded([&] {
    require(result, "result");
    require(out_dir, "out_dir");
    const dampest::EmitFlags flags{(emit_flags & DAMPEST_EMIT_REPORT) != 0,
                                   (emit_flags & DAMPEST_EMIT_PLOTS) != 0,
                                   (emit_flags & DAMPEST_EMIT_ACF) != 0};
    dampest::emit_report(result->result, result->input, to_run_info(info), flags, out_dir);
  });
}

void dampest_result_free(dampest_result* result) { delete result; }

}  // extern "C"
