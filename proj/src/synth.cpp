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


#include "dampest/synth.hpp"

#include <cmath>
#include <numbers>
#include <utility>

#include "dampest/error.hpp"

namespace dampest {

std::string to_string(FilterKind kind) {
  return kind == FilterKind::mean ? "mean" : "median";
}

std::string SeriesLabel::to_string() const {
  switch (source) {
    case Source::raw: return "raw";
    case Source::noisy: return "noisy";
    case Source::filtered:
      return "filtered(" + dampest::to_string(filter) + "," +
             std::to_string(window) + ")";
  }
  return "raw";
}

TimeSeries::TimeSeries(double t0, double dt, std::vector<double> samples,
                       SeriesLabel label, std::size_t zeroed_prefix)
    : t0_(t0),
      dt_(dt),
      x_(std::move(samples)),
      label_(label),
      zeroed_prefix_(zeroed_prefix) {
  if (!std::isfinite(t0) || !std::isfinite(dt) || !(dt > 0.0))
    throw Error(ErrorCode::invalid_argument,
                "time series needs finite t0 and dt > 0");
  if (x_.size() < 2)
    throw Error(ErrorCode::too_short, "time series needs at least 2 samples");
  if (zeroed_prefix_ >= x_.size())
    throw Error(ErrorCode::invalid_argument,
                "zeroed prefix must leave at least one sample");
}

bool TimeSeries::same_grid(const TimeSeries& other) const noexcept {
  return t0_ == other.t0_ && dt_ == other.dt_ && x_.size() == other.x_.size();
}

std::uint64_t SplitMix64::next() noexcept {
  std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double SplitMix64::next_unit() noexcept {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

double GaussianSource::next() noexcept {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = uniform_.next_unit();
  const double u2 = uniform_.next_unit();
  const double radius = std::sqrt(-2.0 * std::log(1.0 - u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

TimeSeries generate_series(const OscillatorParams& params, double t0,
                           double dt, std::size_t n) {
  if (!(dt > 0.0) || !std::isfinite(dt))
    throw Error(ErrorCode::invalid_argument, "dt must be > 0");
  if (n < 2)
    throw Error(ErrorCode::too_short, "series needs at least 2 samples");
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i)
    x[i] = evaluate(params, t0 + static_cast<double>(i) * dt);
  return TimeSeries(t0, dt, std::move(x));
}

TimeSeries add_gaussian_noise(const TimeSeries& series, const NoiseSpec& spec,
                              double scale_amplitude) {
  if (!(scale_amplitude > 0.0) || !std::isfinite(scale_amplitude))
    throw Error(ErrorCode::invalid_argument, "noise scale amplitude must be > 0");
  if (!(spec.percent >= 0.0) || !std::isfinite(spec.percent))
    throw Error(ErrorCode::invalid_argument, "noise percent must be >= 0");

  std::vector<double> x(series.samples().begin(), series.samples().end());
  SeriesLabel label{SeriesLabel::Source::noisy};
  if (spec.percent == 0.0)
    return TimeSeries(series.t0(), series.dt(), std::move(x), label);

  const double sigma = spec.percent * scale_amplitude;
  GaussianSource gauss(spec.seed);
  for (double& v : x) v += sigma * gauss.next();
  return TimeSeries(series.t0(), series.dt(), std::move(x), label);
}

}  // namespace dampest
