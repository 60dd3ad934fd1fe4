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


// Parameter estimation for x(t) = C e^{-bt} sin(alpha t + phi).
//
// Two estimators are provided:
//
//  * traditional: damping from the log-ratio of two envelope read-offs one
//    period apart, then the amplitude, then the phase from x(0), then the
//    frequency from the envelope tangency condition;
//  * proposed: period and time delay from the zero crossings first (averaged
//    over every crossing), phase and frequency from those, and damping and
//    amplitude last from the envelope points.

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dampest/error.hpp"
#include "dampest/extract.hpp"
#include "dampest/filter.hpp"
#include "dampest/model.hpp"
#include "dampest/synth.hpp"

namespace dampest {

enum class Method { traditional, proposed };

std::string to_string(Method method);

/// Per-parameter relative errors |est - true| / |true|.
///
/// The phase error uses the wrapped angular difference, divided by pi instead
/// of |phi| when |phi_true| < 0.1. The damping error is absolute when the
/// true damping is zero.
struct ParamErrors {
  double period;
  double frequency;
  double phase;
  std::optional<double> amplitude;
  std::optional<double> damping;
  bool damping_is_absolute = false;
};

/// Read-offs and intermediate values of a traditional estimate.
struct TraditionalDetail {
  double t1, e1, t2, e2;
  int half_index;        // odd k with t1 = t_{k pi / 2}
  double x0;             // displacement used for the phase
  bool x0_extrapolated;  // x(0) was not observable and was back-projected
  double amplitude_single_point;
  double phase_arctan;
  double phase_arcsin;
};

struct EstimationReport {
  Method method;
  double period;
  double frequency;
  double phase;
  double shift;  // time delay; phase == frequency * shift (mod 2 pi)
  std::optional<double> damping;
  std::optional<double> amplitude;
  std::optional<DECoefficients> de;
  std::size_t crossings_used = 0;
  std::size_t envelope_points_used = 0;
  std::vector<std::string> notes;
  std::optional<TraditionalDetail> traditional;
  std::optional<ParamErrors> errors_vs_truth;

  /// Full parameter set, when damping and amplitude were estimated.
  std::optional<OscillatorParams> params() const;
};

// ---------------------------------------------------------------------------
// Traditional sequence.

/// b = ln(e1 / e2) / (t2 - t1).
double estimate_b_from_envelope(double e1, double e2, double t1, double t2);

/// C = (e1 e^{b t1} + e2 e^{b t2}) / 2.
double estimate_C_from_envelope(double e1, double e2, double t1, double t2,
                                double b);

/// C = e1 e^{b t1}.
double estimate_C_single_point(double e1, double t1, double b);

struct PhasePair {
  double arctan_form;  // atan(x0 / sqrt(C^2 - x0^2))
  double arcsin_form;  // asin(x0 / C)
};

/// Both phase forms from x(0) and C. Only resolves (-pi/2, pi/2].
PhasePair estimate_phi_traditional(double x0, double amplitude);

/// alpha = (k pi / 2 - phi) / t for the tangent time t = t_{k pi / 2}, k odd.
double estimate_alpha_traditional(double t_tangent, double phi, int k);

struct TraditionalReadings {
  double t1;
  double e1;
  double t2;
  double e2;
  int half_index = 1;
  double x0;
};

EstimationReport estimate_traditional(const TraditionalReadings& readings);

/// Traditional estimate with read-offs taken from the extracted points: the
/// earliest pair of envelope points one period apart, and x(0) from the
/// series (or back-projected when t = 0 is not observable).
EstimationReport estimate_traditional(const CrossingSet& set,
                                      const TimeSeries& series);

// ---------------------------------------------------------------------------
// Proposed sequence.

struct StructuralSolution {
  double period;          // T = 2 (t_{2pi} - t_pi)
  double quarter;         // T / 4
  double t_half_pi;       // t_pi - T / 4
  double t_five_half_pi;  // t_half_pi + T
};

/// Period from the first two crossings, and back-substituted tangent times.
StructuralSolution solve_structural_equations(const CrossingSet& set);

/// T = t_{k pi/2} - t_{(k-4) pi/2}: the gap between envelope points two
/// half periods apart, starting at points[first].
double period_from_tangent_points(std::span<const EnvelopePoint> points,
                                  std::size_t first);

struct Phase {
  double radians;
  double degrees;
};

/// phi = (T - t_{2pi}) (k pi - 2 pi) / (t_{k pi} - t_{2pi}), k != 2.
Phase phase_from_crossing(int k, double t_k, double t_2pi, double period);

/// phi = pi * shift / (t_{k pi} - t_{(k-1) pi}).
Phase phase_from_half_period(double shift, double t_k, double t_prev);

struct Averages {
  std::optional<double> period;     // mean of doubled crossing gaps
  std::optional<double> shift;      // mean of (k T / 2 - t_{k pi})
  std::optional<double> damping;    // mean half-period log-ratio
  std::optional<double> amplitude;  // mean back-projected amplitude
  std::vector<std::string> missing;
};

/// Multi-period averages. Crossing k indices start at 1 for a falling first
/// crossing and 2 for a rising one; envelope points are paired with their
/// successor.
Averages average_parameters(std::span<const Crossing> crossings,
                            std::span<const EnvelopePoint> envelope);

/// average_parameters over set.crossings and set.midpoints.
Averages average_parameters(const CrossingSet& set);

EstimationReport estimate_proposed(const CrossingSet& set,
                                   const TimeSeries& series);

ParamErrors relative_errors(const EstimationReport& report,
                            const OscillatorParams& truth);

// ---------------------------------------------------------------------------
// End-to-end pipeline.

struct PipelineOptions {
  std::vector<FilterKind> kinds{FilterKind::mean};
  /// Empty selects default_k_candidates().
  std::vector<std::size_t> k_candidates;
  double hysteresis = 0.01;
};

struct MethodFailure {
  ErrorCode code;
  std::string message;
};

struct PipelineResult {
  double period_hint;
  SmoothingChoice smoothing;
  TimeSeries filtered;
  CrossingSet crossings;
  EstimationReport proposed;
  std::optional<EstimationReport> traditional;
  std::optional<MethodFailure> traditional_failure;
  std::optional<OscillatorParams> truth;
};

/// select_smoothing -> filter -> find_zero_crossings (delay corrected) ->
/// locate_midpoints -> both estimators. Errors are rethrown tagged with the
/// stage they came from. A traditional failure is recorded in the result; a
/// proposed failure is fatal.
PipelineResult run_pipeline(const TimeSeries& input,
                            const PipelineOptions& options = {},
                            const std::optional<OscillatorParams>& truth = {});

}  // namespace dampest
