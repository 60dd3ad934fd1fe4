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

// Closed-form mathematics of the underdamped oscillator
//
//     x(t) = C e^{-b t} sin(alpha t + phi),
//
// the solution of x'' + 2b x' + omega^2 x = 0 with omega^2 = alpha^2 + b^2.
// Everything here is a pure function of immutable values.

#pragma once

#include <complex>
#include <numbers>

namespace dampest {

/// Wraps an angle into [-pi, pi).
double normalize_angle(double radians) noexcept;

/// Parameter set {C, b, alpha, phi} of an underdamped oscillator.
///
/// Construction validates C > 0, alpha > 0, b >= 0 (all finite) and stores
/// phi wrapped into [-pi, pi). b < omega holds by construction since
/// omega^2 = alpha^2 + b^2.
class OscillatorParams {
 public:
  OscillatorParams(double amplitude, double damping, double frequency,
                   double phase);

  double amplitude() const noexcept { return amplitude_; }
  double damping() const noexcept { return damping_; }
  double frequency() const noexcept { return frequency_; }
  double phase() const noexcept { return phase_; }

  /// T = 2 pi / alpha.
  double period() const noexcept;
  /// omega^2 = alpha^2 + b^2.
  double omega_squared() const noexcept;
  /// Time delay phi / alpha.
  double shift() const noexcept;

  friend bool operator==(const OscillatorParams&,
                         const OscillatorParams&) = default;

 private:
  double amplitude_;
  double damping_;
  double frequency_;
  double phase_;
};

struct Derivatives {
  double velocity;
  double acceleration;
};

/// Coefficients of x'' + damping_term x' + stiffness_term x = 0.
struct DECoefficients {
  double damping_term;
  double stiffness_term;
  std::complex<double> root_upper;  // -b + alpha i
  std::complex<double> root_lower;  // -b - alpha i

  /// b^2 - omega^2; negative in the underdamped regime.
  double discriminant() const noexcept;
};

/// Integration window and lag of the windowed autocorrelation.
class AcfSpec {
 public:
  AcfSpec(double window, double lag);

  double window() const noexcept { return window_; }
  double lag() const noexcept { return lag_; }

 private:
  double window_;
  double lag_;
};

enum class AcfMode { closed_form, numeric };

double evaluate(const OscillatorParams& params, double t) noexcept;
Derivatives evaluate_derivatives(const OscillatorParams& params,
                                 double t) noexcept;

/// F(t) = -C e^{-bt} [b sin(alpha t + phi) + alpha cos(alpha t + phi)]
///        / (alpha^2 + b^2), so that F'(t) = x(t).
double antiderivative(const OscillatorParams& params, double t) noexcept;

/// Integral of x(t) over [t1, t2]. Throws if t1 > t2.
double integral_over_interval(const OscillatorParams& params, double t1,
                              double t2);

double period(const OscillatorParams& params) noexcept;
double shift_factor(const OscillatorParams& params) noexcept;

/// t_{k pi} = (k pi - phi) / alpha, the k-th root of the sine argument.
/// Throws for k < 1.
double zero_cross_time(const OscillatorParams& params, int k);

/// t_{(2k+1) pi / 2} = ((2k+1) pi - 2 phi) / (2 alpha): the midpoint of a
/// half period, where x(t) touches the envelope +-C e^{-bt}. Throws for k < 0.
double envelope_tangent_time(const OscillatorParams& params, int k);

/// Time of the first stationary point, (atan(alpha/b) - phi) / alpha, or
/// (pi/2 - phi) / alpha when b == 0. Strictly earlier than the first
/// envelope tangent whenever b > 0.
double first_peak_time(const OscillatorParams& params) noexcept;

DECoefficients reconstruct_de(const OscillatorParams& params) noexcept;

/// R_xx(lag) = (1/W) * integral_0^W x(t) x(t + lag) dt.
double acf(const OscillatorParams& params, const AcfSpec& spec,
           AcfMode mode = AcfMode::closed_form);

/// acf(lag) / acf(0) over the same window.
double acf_normalized(const OscillatorParams& params, const AcfSpec& spec,
                      AcfMode mode = AcfMode::closed_form);

}  // namespace dampest
