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


#include "dampest/model.hpp"

#include <cmath>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "dampest/error.hpp"

namespace dampest {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require(bool ok, const std::string& message) {
  if (!ok) throw Error(ErrorCode::invalid_argument, message);
}

}  // namespace

double normalize_angle(double radians) noexcept {
  double r = std::fmod(radians + kPi, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  double out = r - kPi;
  // fmod can land exactly on the upper edge after the shift.
  if (out >= kPi) out -= kTwoPi;
  return out;
}

OscillatorParams::OscillatorParams(double amplitude, double damping,
                                   double frequency, double phase)
    : amplitude_(amplitude),
      damping_(damping),
      frequency_(frequency),
      phase_(0.0) {
  require(std::isfinite(amplitude) && amplitude > 0.0,
          "amplitude C must be finite and > 0");
  require(std::isfinite(damping) && damping >= 0.0,
          "damping b must be finite and >= 0");
  require(std::isfinite(frequency) && frequency > 0.0,
          "frequency alpha must be finite and > 0");
  require(std::isfinite(phase), "phase phi must be finite");
  phase_ = normalize_angle(phase);
}

double OscillatorParams::period() const noexcept {
  return kTwoPi / frequency_;
}

double OscillatorParams::omega_squared() const noexcept {
  return frequency_ * frequency_ + damping_ * damping_;
}

double OscillatorParams::shift() const noexcept { return phase_ / frequency_; }

double DECoefficients::discriminant() const noexcept {
  const double b = damping_term / 2.0;
  return b * b - stiffness_term;
}

AcfSpec::AcfSpec(double window, double lag) : window_(window), lag_(lag) {
  require(std::isfinite(window) && window > 0.0,
          "ACF window must be finite and > 0");
  require(std::isfinite(lag) && lag >= 0.0, "ACF lag must be finite and >= 0");
}

double evaluate(const OscillatorParams& p, double t) noexcept {
  return p.amplitude() * std::exp(-p.damping() * t) *
         std::sin(p.frequency() * t + p.phase());
}

Derivatives evaluate_derivatives(const OscillatorParams& p, double t) noexcept {
  const double a = p.frequency();
  const double b = p.damping();
  const double env = p.amplitude() * std::exp(-b * t);
  const double s = std::sin(a * t + p.phase());
  const double c = std::cos(a * t + p.phase());
  return {env * (a * c - b * s), env * ((b * b - a * a) * s - 2.0 * a * b * c)};
}

double antiderivative(const OscillatorParams& p, double t) noexcept {
  const double a = p.frequency();
  const double b = p.damping();
  const double arg = a * t + p.phase();
  return -p.amplitude() * std::exp(-b * t) *
         (b * std::sin(arg) + a * std::cos(arg)) / (a * a + b * b);
}

double integral_over_interval(const OscillatorParams& p, double t1,
                              double t2) {
  require(t1 <= t2, "integral_over_interval requires t1 <= t2");
  if (t1 == t2) return 0.0;
  return antiderivative(p, t2) - antiderivative(p, t1);
}

double period(const OscillatorParams& p) noexcept { return p.period(); }

double shift_factor(const OscillatorParams& p) noexcept { return p.shift(); }

double zero_cross_time(const OscillatorParams& p, int k) {
  require(k >= 1, "zero_cross_time requires k >= 1");
  return (k * kPi - p.phase()) / p.frequency();
}

double envelope_tangent_time(const OscillatorParams& p, int k) {
  require(k >= 0, "envelope_tangent_time requires k >= 0");
  return ((2 * k + 1) * kPi - 2.0 * p.phase()) / (2.0 * p.frequency());
}

double first_peak_time(const OscillatorParams& p) noexcept {
  // atan(alpha / b) -> pi/2 as b -> 0, which is the SHM peak.
  const double angle = p.damping() > 0.0
                           ? std::atan(p.frequency() / p.damping())
                           : kPi / 2.0;
  return (angle - p.phase()) / p.frequency();
}

DECoefficients reconstruct_de(const OscillatorParams& p) noexcept {
  const double b = p.damping();
  const double a = p.frequency();
  return {2.0 * b, p.omega_squared(), {-b, a}, {-b, -a}};
}

namespace {

// x(t) x(t + lag) = C^2 e^{-b(2t + lag)} sin(u) sin(u + alpha lag), and
// sin(u) sin(v) = [cos(u - v) - cos(u + v)] / 2 splits the integral into a
// pure exponential and an exponentially weighted cosine of 2 alpha t + psi.
double acf_closed_form(const OscillatorParams& p, const AcfSpec& spec) {
  const double a = p.frequency();
  const double b = p.damping();
  const double w = spec.window();
  const double lag = spec.lag();
  const double psi = a * lag + 2.0 * p.phase();

  const double decay_integral =
      b > 0.0 ? -std::expm1(-2.0 * b * w) / (2.0 * b) : w;
  const double denom = 2.0 * (a * a + b * b);
  auto weighted_cos = [&](double t) {
    const double arg = 2.0 * a * t + psi;
    return std::exp(-2.0 * b * t) * (a * std::sin(arg) - b * std::cos(arg)) /
           denom;
  };
  const double oscillating_integral = weighted_cos(w) - weighted_cos(0.0);

  const double c2 = p.amplitude() * p.amplitude();
  return c2 * std::exp(-b * lag) / (2.0 * w) *
         (std::cos(a * lag) * decay_integral - oscillating_integral);
}

double acf_numeric(const OscillatorParams& p, const AcfSpec& spec) {
  using boost::math::quadrature::gauss_kronrod;
  const double lag = spec.lag();
  auto integrand = [&](double t) { return evaluate(p, t) * evaluate(p, t + lag); };
  const double value = gauss_kronrod<double, 61>::integrate(
      integrand, 0.0, spec.window(), 20, 1e-14);
  return value / spec.window();
}

}  // namespace

double acf(const OscillatorParams& p, const AcfSpec& spec, AcfMode mode) {
  return mode == AcfMode::closed_form ? acf_closed_form(p, spec)
                                      : acf_numeric(p, spec);
}

double acf_normalized(const OscillatorParams& p, const AcfSpec& spec,
                      AcfMode mode) {
  const double zero = acf(p, AcfSpec(spec.window(), 0.0), mode);
  return acf(p, spec, mode) / zero;
}

}  // namespace dampest
