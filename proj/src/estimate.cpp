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


#include "dampest/estimate.hpp"

#include <cmath>
#include <numbers>

#include "dampest/error.hpp"

namespace dampest {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

[[noreturn]] void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

void require(bool ok, const std::string& message) {
  if (!ok) fail(ErrorCode::invalid_argument, message);
}

// Index k of the first crossing under the convention t_{k pi} =
// (k pi - phi) / alpha: a falling crossing sits at an odd multiple of pi.
int parity_index(const Crossing& first) {
  return first.direction == Direction::falling ? 1 : 2;
}

// Period, delay and phase from the crossings alone.
struct Timing {
  double period;
  double shift;  // reduced into [0, T)
  double phase;
  double frequency;
  int first_index;  // absolute k of crossings[0]
};

Timing timing_from_crossings(const CrossingSet& set) {
  if (set.crossings.size() < 2)
    fail(ErrorCode::insufficient_points,
         "period estimation needs at least 2 crossings");

  const Averages avg = average_parameters(set.crossings, {});
  const double period = set.crossings.size() >= 3
                            ? *avg.period
                            : solve_structural_equations(set).period;
  if (!(period > 0.0))
    fail(ErrorCode::insufficient_points, "crossings give a non-positive period");

  // Recompute the delay against the period actually in use.
  const int k0 = parity_index(set.crossings.front());
  double sum = 0.0;
  for (std::size_t j = 0; j < set.crossings.size(); ++j)
    sum += static_cast<double>(k0 + static_cast<int>(j)) * period / 2.0 -
           set.crossings[j].time;
  double shift = std::fmod(sum / static_cast<double>(set.crossings.size()), period);
  if (shift < 0.0) shift += period;
  if (shift >= period) shift = 0.0;

  const double phase = shift == 0.0 ? 0.0 : normalize_angle(kTwoPi * shift / period);
  const double frequency = kTwoPi / period;

  // Absolute index: alpha t + phi = k pi at a crossing, with the parity
  // fixed by the crossing direction.
  const double raw_index = (frequency * set.crossings.front().time + phase) / kPi;
  int k = static_cast<int>(std::lround(raw_index));
  if ((k - k0) % 2 != 0) k += raw_index > k ? 1 : -1;
  return {period, shift, phase, frequency, k};
}

double wrapped_difference(double a, double b) {
  return std::abs(normalize_angle(a - b));
}

void finish_de(EstimationReport& r) {
  if (auto p = r.params()) r.de = reconstruct_de(*p);
}

}  // namespace

std::string to_string(Method method) {
  return method == Method::traditional ? "traditional" : "proposed";
}

std::optional<OscillatorParams> EstimationReport::params() const {
  if (!damping || !amplitude) return std::nullopt;
  return OscillatorParams(*amplitude, *damping, frequency, phase);
}

double estimate_b_from_envelope(double e1, double e2, double t1, double t2) {
  require(e1 > 0.0 && e2 > 0.0, "envelope magnitudes must be > 0");
  require(t2 > t1, "envelope read-offs need t2 > t1");
  return std::log(e1 / e2) / (t2 - t1);
}

double estimate_C_from_envelope(double e1, double e2, double t1, double t2,
                                double b) {
  require(e1 > 0.0 && e2 > 0.0, "envelope magnitudes must be > 0");
  require(t2 > t1, "envelope read-offs need t2 > t1");
  return 0.5 * (e1 * std::exp(b * t1) + e2 * std::exp(b * t2));
}

double estimate_C_single_point(double e1, double t1, double b) {
  require(e1 > 0.0, "envelope magnitude must be > 0");
  return e1 * std::exp(b * t1);
}

PhasePair estimate_phi_traditional(double x0, double amplitude) {
  require(amplitude > 0.0, "amplitude must be > 0");
  require(std::abs(x0) <= amplitude, "|x(0)| must not exceed the amplitude");
  if (std::abs(x0) == amplitude) {
    const double q = std::copysign(kPi / 2.0, x0);
    return {q, q};
  }
  const double adjacent = std::sqrt(amplitude * amplitude - x0 * x0);
  return {std::atan(x0 / adjacent), std::asin(x0 / amplitude)};
}

double estimate_alpha_traditional(double t_tangent, double phi, int k) {
  require(t_tangent > 0.0, "tangent time must be > 0");
  require(k >= 1 && k % 2 == 1, "tangent index k must be odd and >= 1");
  return (k * kPi / 2.0 - phi) / t_tangent;
}

EstimationReport estimate_traditional(const TraditionalReadings& in) {
  EstimationReport r{};
  r.method = Method::traditional;

  const double b = estimate_b_from_envelope(in.e1, in.e2, in.t1, in.t2);
  const double amplitude = estimate_C_from_envelope(in.e1, in.e2, in.t1, in.t2, b);
  const double single = estimate_C_single_point(in.e1, in.t1, b);

  double x0 = in.x0;
  if (std::abs(x0) > amplitude) {
    x0 = std::copysign(amplitude, x0);
    r.notes.push_back("x(0) exceeded the amplitude estimate and was clamped");
  }
  const PhasePair phase = estimate_phi_traditional(x0, amplitude);
  const double alpha = estimate_alpha_traditional(in.t1, phase.arcsin_form, in.half_index);
  if (!(alpha > 0.0))
    fail(ErrorCode::insufficient_points,
         "tangent read-off gives a non-positive frequency");

  r.frequency = alpha;
  r.period = kTwoPi / alpha;
  r.phase = normalize_angle(phase.arcsin_form);
  r.shift = r.phase / alpha;
  r.amplitude = amplitude;
  r.damping = b;
  if (b < 0.0) {
    r.damping = 0.0;
    r.notes.push_back("negative damping estimate clamped to 0");
  }
  r.envelope_points_used = 2;
  r.traditional = TraditionalDetail{in.t1, in.e1, in.t2, in.e2, in.half_index,
                                    x0, false, single, phase.arctan_form,
                                    phase.arcsin_form};
  finish_de(r);
  return r;
}

EstimationReport estimate_traditional(const CrossingSet& set,
                                      const TimeSeries& series) {
  const Timing timing = timing_from_crossings(set);
  const LeadingPoint leading = leading_tangent_point(set, series, timing.period);
  const std::vector<EnvelopePoint> points = envelope_points(set, leading);
  if (points.size() < 3)
    fail(ErrorCode::insufficient_points,
         "traditional estimate needs two envelope points one period apart");

  const EnvelopePoint& p1 = points[0];
  const EnvelopePoint& p2 = points[2];
  // t_{k pi/2} for the leading tangent is k = 2 k0 - 1; the midpoint after
  // crossing k0 is k = 2 k0 + 1.
  const int k = leading.envelope() ? 2 * timing.first_index - 1
                                   : 2 * timing.first_index + 1;
  if (k < 1)
    fail(ErrorCode::insufficient_points,
         "first envelope point precedes the first tangent after t = 0");

  TraditionalReadings readings{p1.time, p1.magnitude, p2.time, p2.magnitude, k, 0.0};
  bool extrapolated = false;
  if (auto x0 = value_at(series, 0.0, set.delay_correction)) {
    readings.x0 = *x0;
  } else {
    const double b = estimate_b_from_envelope(p1.magnitude, p2.magnitude, p1.time, p2.time);
    const double amplitude =
        estimate_C_from_envelope(p1.magnitude, p2.magnitude, p1.time, p2.time, b);
    readings.x0 = amplitude * std::sin(timing.phase);
    extrapolated = true;
  }

  EstimationReport r = estimate_traditional(readings);
  r.crossings_used = set.crossings.size();
  if (extrapolated) {
    r.traditional->x0_extrapolated = true;
    r.notes.push_back(
        "x(0) not observable after filtering; back-projected from the "
        "crossing-based delay");
  }
  return r;
}

StructuralSolution solve_structural_equations(const CrossingSet& set) {
  if (set.crossings.size() < 2)
    fail(ErrorCode::insufficient_points,
         "structural equations need two consecutive crossings");
  const double t_pi = set.crossings[0].time;
  const double period = 2.0 * (set.crossings[1].time - t_pi);
  const double quarter = period / 4.0;
  const double t_half = t_pi - quarter;
  return {period, quarter, t_half, t_half + period};
}

double period_from_tangent_points(std::span<const EnvelopePoint> points,
                                  std::size_t first) {
  if (first + 2 >= points.size())
    fail(ErrorCode::insufficient_points,
         "need envelope points two half periods apart");
  return points[first + 2].time - points[first].time;
}

Phase phase_from_crossing(int k, double t_k, double t_2pi, double period) {
  require(k != 2 && t_k != t_2pi, "phase_from_crossing needs k != 2");
  const double rad = (period - t_2pi) * (k * kPi - kTwoPi) / (t_k - t_2pi);
  return {rad, rad * 180.0 / kPi};
}

Phase phase_from_half_period(double shift, double t_k, double t_prev) {
  require(t_k != t_prev, "phase_from_half_period needs distinct crossings");
  const double rad = kPi * shift / (t_k - t_prev);
  return {rad, rad * 180.0 / kPi};
}

Averages average_parameters(std::span<const Crossing> crossings,
                            std::span<const EnvelopePoint> envelope) {
  Averages out;
  const std::size_t K = crossings.size();
  if (K >= 2) {
    double sum = 0.0;
    for (std::size_t j = 1; j < K; ++j)
      sum += crossings[j].time - crossings[j - 1].time;
    out.period = 2.0 * sum / static_cast<double>(K - 1);

    const int k0 = parity_index(crossings.front());
    double shift = 0.0;
    for (std::size_t j = 0; j < K; ++j)
      shift += static_cast<double>(k0 + static_cast<int>(j)) * *out.period / 2.0 -
               crossings[j].time;
    out.shift = shift / static_cast<double>(K);
  } else {
    out.missing.push_back("period: needs at least 2 crossings");
    out.missing.push_back("shift: needs the averaged period");
  }

  double b_sum = 0.0;
  std::size_t pairs = 0;
  for (std::size_t j = 0; j + 1 < envelope.size(); ++j) {
    const EnvelopePoint& a = envelope[j];
    const EnvelopePoint& c = envelope[j + 1];
    const double half = c.time - a.time;
    if (!(a.magnitude > 0.0) || !(c.magnitude > 0.0) || !(half > 0.0)) continue;
    b_sum += std::log(std::abs(a.magnitude / c.magnitude)) / half;
    ++pairs;
  }
  if (pairs == 0) {
    out.missing.push_back("damping: needs 2 envelope points with nonzero magnitude");
    out.missing.push_back("amplitude: needs the averaged damping");
    return out;
  }
  const double b = b_sum / static_cast<double>(pairs);
  out.damping = b;

  double c_sum = 0.0;
  for (std::size_t j = 0; j + 1 < envelope.size(); ++j) {
    const EnvelopePoint& a = envelope[j];
    const EnvelopePoint& c = envelope[j + 1];
    if (!(a.magnitude > 0.0) || !(c.magnitude > 0.0) || !(c.time > a.time)) continue;
    c_sum += 0.5 * (std::abs(a.magnitude) * std::exp(b * a.time) +
                    std::abs(c.magnitude) * std::exp(b * c.time));
  }
  out.amplitude = c_sum / static_cast<double>(pairs);
  return out;
}

Averages average_parameters(const CrossingSet& set) {
  return average_parameters(set.crossings, set.midpoints);
}

EstimationReport estimate_proposed(const CrossingSet& set,
                                   const TimeSeries& series) {
  const Timing timing = timing_from_crossings(set);

  EstimationReport r{};
  r.method = Method::proposed;
  r.period = timing.period;
  r.frequency = timing.frequency;
  r.phase = timing.phase;
  r.shift = timing.shift;
  r.crossings_used = set.crossings.size();

  const LeadingPoint leading = leading_tangent_point(set, series, timing.period);
  const std::vector<EnvelopePoint> points = envelope_points(set, leading);
  const Averages avg = average_parameters({}, points);
  r.envelope_points_used = points.size();
  if (avg.damping && avg.amplitude && *avg.amplitude > 0.0 &&
      std::isfinite(*avg.amplitude)) {
    r.damping = *avg.damping;
    r.amplitude = *avg.amplitude;
    if (*r.damping < 0.0) {
      r.damping = 0.0;
      r.notes.push_back("negative damping estimate clamped to 0");
    }
  } else {
    r.notes.push_back(std::string(to_string(ErrorCode::no_envelope_points)) +
                      ": damping and amplitude not estimated");
  }
  if (set.irregular_gaps)
    r.notes.push_back("crossing gaps deviate from their mean by more than 10%");
  finish_de(r);
  return r;
}

ParamErrors relative_errors(const EstimationReport& r,
                            const OscillatorParams& truth) {
  ParamErrors e{};
  e.period = std::abs(r.period - truth.period()) / truth.period();
  e.frequency = std::abs(r.frequency - truth.frequency()) / truth.frequency();
  const double dphi = wrapped_difference(r.phase, truth.phase());
  e.phase = std::abs(truth.phase()) < 0.1 ? dphi / kPi : dphi / std::abs(truth.phase());
  if (r.amplitude)
    e.amplitude = std::abs(*r.amplitude - truth.amplitude()) / truth.amplitude();
  if (r.damping) {
    if (truth.damping() > 0.0) {
      e.damping = std::abs(*r.damping - truth.damping()) / truth.damping();
    } else {
      e.damping = std::abs(*r.damping);
      e.damping_is_absolute = true;
    }
  }
  return e;
}

}  // namespace dampest
