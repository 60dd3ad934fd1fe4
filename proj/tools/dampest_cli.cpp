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


// dampest: estimate damped-oscillator parameters from a synthetic benchmark
// or a CSV time series and write a JSON report plus plot-ready CSV files.
//
// Exit codes: 0 success, 1 usage error, 2 data or I/O error, 3 estimation
// failure.

#include <cmath>
#include <cstdio>
#include <cstdint>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dampest/dampest.h"

namespace {

enum ExitCode { kOk = 0, kUsage = 1, kData = 2, kEstimation = 3 };

int exit_code_for(dampest_status status) {
  switch (status) {
    case DAMPEST_OK:
      return kOk;
    case DAMPEST_NO_CROSSINGS:
    case DAMPEST_INSUFFICIENT_POINTS:
    case DAMPEST_NO_ENVELOPE_POINTS:
    case DAMPEST_NO_VALID_CANDIDATES:
      return kEstimation;
    case DAMPEST_INVALID_ARGUMENT:
      return kUsage;
    default:
      return kData;
  }
}

int report_failure(dampest_status status, const char* what) {
  std::fprintf(stderr, "dampest: %s: %s: %s\n", what, dampest_status_string(status),
               dampest_last_error());
  return exit_code_for(status);
}

std::optional<dampest_params> parse_truth(const std::string& text) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    try {
      std::size_t used = 0;
      values.push_back(std::stod(cell, &used));
      if (used != cell.size()) return std::nullopt;
    } catch (const std::exception&) {
      return std::nullopt;
    }
  }
  if (values.size() != 4) return std::nullopt;
  return dampest_params{values[0], values[1], values[2], values[3]};
}

struct SeriesHandle {
  dampest_series* ptr = nullptr;
  ~SeriesHandle() { dampest_series_free(ptr); }
};

struct ResultHandle {
  dampest_result* ptr = nullptr;
  ~ResultHandle() { dampest_result_free(ptr); }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Damped oscillator parameter estimation", "dampest"};
  app.set_version_flag("--version", std::string(dampest_version()));

  bool synth = false;
  std::string input_path;
  dampest_params params{2.0, 1.0, std::numbers::pi, std::numbers::pi / 4.0};
  double dt = 0.005;
  double duration = 5.0;
  double noise = 0.0;
  std::uint64_t seed = 42;
  std::vector<std::size_t> k_candidates;
  std::string filter = "mean";
  std::string truth_text;
  std::string out_dir = "dampest_out";
  std::vector<std::string> emit{"report", "plots"};

  auto* synth_flag = app.add_flag("--synth", synth, "Synthesize the input signal");
  auto* input_opt = app.add_option("--input", input_path, "CSV file of t,x rows");
  synth_flag->excludes(input_opt);
  app.add_option("--C", params.C, "Amplitude of the synthetic signal")->capture_default_str();
  app.add_option("--b", params.b, "Damping factor")->capture_default_str();
  app.add_option("--alpha", params.alpha, "Damped angular frequency")->capture_default_str();
  app.add_option("--phi", params.phi, "Phase in radians")->capture_default_str();
  app.add_option("--dt", dt, "Sample spacing in seconds")->capture_default_str();
  app.add_option("--duration", duration, "Record length in seconds")->capture_default_str();
  app.add_option("--noise", noise, "Noise sigma as a fraction of C")->capture_default_str();
  app.add_option("--seed", seed, "Noise generator seed")->capture_default_str();
  app.add_option("--k-candidates", k_candidates, "Smoothing windows to try")
      ->delimiter(',')
      ->check(CLI::PositiveNumber);
  app.add_option("--filter", filter, "Smoothing filter family")
      ->check(CLI::IsMember({"mean", "median", "both"}))
      ->capture_default_str();
  app.add_option("--truth", truth_text, "Known parameters C,b,alpha,phi for error reporting");
  app.add_option("--out", out_dir, "Output directory")->capture_default_str();
  app.add_option("--emit", emit, "Outputs to write: report,plots,acf or none")
      ->delimiter(',')
      ->check(CLI::IsMember({"report", "plots", "acf", "none"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  if (!synth && input_path.empty()) {
    std::fprintf(stderr, "dampest: one of --synth or --input is required\n%s",
                 app.help().c_str());
    return kUsage;
  }

  std::optional<dampest_params> truth;
  if (!truth_text.empty()) {
    truth = parse_truth(truth_text);
    if (!truth) {
      std::fprintf(stderr, "dampest: --truth expects four numbers C,b,alpha,phi\n");
      return kUsage;
    }
    if (dampest_status s = dampest_params_validate(&*truth); s != DAMPEST_OK)
      return report_failure(s, "--truth");
  }

  unsigned emit_flags = 0;
  for (const auto& e : emit) {
    if (e == "report") emit_flags |= DAMPEST_EMIT_REPORT;
    if (e == "plots") emit_flags |= DAMPEST_EMIT_PLOTS;
    if (e == "acf") emit_flags |= DAMPEST_EMIT_ACF;
  }

  SeriesHandle input;
  dampest_run_info info{};
  if (synth) {
    if (dampest_status s = dampest_params_validate(&params); s != DAMPEST_OK)
      return report_failure(s, "synthetic parameters");
    if (!(dt > 0.0) || !std::isfinite(dt) || !(duration > 0.0) || !std::isfinite(duration)) {
      std::fprintf(stderr, "dampest: --dt and --duration must be positive\n");
      return kUsage;
    }
    if (!(noise >= 0.0) || !std::isfinite(noise)) {
      std::fprintf(stderr, "dampest: --noise must be non-negative\n");
      return kUsage;
    }
    const auto n = static_cast<std::size_t>(std::llround(duration / dt)) + 1;
    SeriesHandle clean;
    if (dampest_status s = dampest_series_synth(&params, 0.0, dt, n, &clean.ptr);
        s != DAMPEST_OK)
      return report_failure(s, "synthesis");
    if (dampest_status s =
            dampest_series_add_noise(clean.ptr, noise, seed, params.C, &input.ptr);
        s != DAMPEST_OK)
      return report_failure(s, "noise");
    info.source = "synth";
    info.has_synth = 1;
    info.synth = params;
    info.noise_percent = noise;
    info.seed = seed;
    if (!truth) truth = params;
  } else {
    if (dampest_status s = dampest_series_read_csv(input_path.c_str(), &input.ptr);
        s != DAMPEST_OK)
      return report_failure(s, "input");
    info.source = "file";
    info.input_path = input_path.c_str();
  }

  dampest_options options;
  dampest_options_init(&options);
  options.filter_kinds = filter == "mean"     ? DAMPEST_FILTER_MEAN
                         : filter == "median" ? DAMPEST_FILTER_MEDIAN
                                              : DAMPEST_FILTER_MEAN | DAMPEST_FILTER_MEDIAN;
  options.k_values = k_candidates.data();
  options.k_count = k_candidates.size();
  if (truth) {
    options.has_truth = 1;
    options.truth = *truth;
  }

  ResultHandle result;
  if (dampest_status s = dampest_run_pipeline(input.ptr, &options, &result.ptr);
      s != DAMPEST_OK)
    return report_failure(s, "pipeline");

  if (emit_flags != 0) {
    if (dampest_status s = dampest_result_write(result.ptr, &info, emit_flags, out_dir.c_str());
        s != DAMPEST_OK)
      return report_failure(s, "writing outputs");
  }

  dampest_estimate est{};
  dampest_result_estimate(result.ptr, DAMPEST_METHOD_PROPOSED, &est);
  std::printf("proposed: T=%.6g alpha=%.6g phi=%.6g", est.period, est.frequency, est.phase);
  if (est.has_envelope) std::printf(" b=%.6g C=%.6g", est.damping, est.amplitude);
  std::printf("\n");
  if (dampest_result_estimate(result.ptr, DAMPEST_METHOD_TRADITIONAL, &est) == DAMPEST_OK) {
    std::printf("traditional: T=%.6g alpha=%.6g phi=%.6g b=%.6g C=%.6g\n", est.period,
                est.frequency, est.phase, est.damping, est.amplitude);
  } else {
    std::printf("traditional: unavailable (%s)\n", dampest_last_error());
  }
  return kOk;
}
