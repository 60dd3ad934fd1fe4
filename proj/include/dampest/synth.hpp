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


// Uniformly sampled time series, signal synthesis and seeded Gaussian noise.

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "dampest/model.hpp"

namespace dampest {

enum class FilterKind { mean, median };

std::string to_string(FilterKind kind);

/// Provenance of a series: raw, noisy, or filtered(kind, k).
struct SeriesLabel {
  enum class Source { raw, noisy, filtered };

  Source source = Source::raw;
  FilterKind filter = FilterKind::mean;  // meaningful only when filtered
  std::size_t window = 0;                // meaningful only when filtered

  std::string to_string() const;
  friend bool operator==(const SeriesLabel&, const SeriesLabel&) = default;
};

/// Samples x[i] taken at t0 + i * dt. Filtered series carry the count of
/// leading samples a causal filter zeroed out; those are not data.
class TimeSeries {
 public:
  TimeSeries(double t0, double dt, std::vector<double> samples,
             SeriesLabel label = {}, std::size_t zeroed_prefix = 0);

  double t0() const noexcept { return t0_; }
  double dt() const noexcept { return dt_; }
  std::size_t size() const noexcept { return x_.size(); }
  std::span<const double> samples() const noexcept { return x_; }
  double operator[](std::size_t i) const noexcept { return x_[i]; }
  double time(std::size_t i) const noexcept {
    return t0_ + static_cast<double>(i) * dt_;
  }
  const SeriesLabel& label() const noexcept { return label_; }
  std::size_t zeroed_prefix() const noexcept { return zeroed_prefix_; }

  /// Same time grid (start, spacing and length), compared exactly.
  bool same_grid(const TimeSeries& other) const noexcept;

  friend bool operator==(const TimeSeries&, const TimeSeries&) = default;

 private:
  double t0_;
  double dt_;
  std::vector<double> x_;
  SeriesLabel label_;
  std::size_t zeroed_prefix_;
};

struct NoiseSpec {
  double percent = 0.0;  // sigma as a fraction of the scale amplitude
  std::uint64_t seed = 0;
};

/// SplitMix64: 64 bits of state advanced by the golden-ratio increment
/// 0x9E3779B97F4A7C15 and finalized with the Stafford variant-13 mixer.
/// Output is fully specified, so a seed reproduces on any platform.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  std::uint64_t next() noexcept;
  /// Top 53 bits scaled into [0, 1).
  double next_unit() noexcept;

 private:
  std::uint64_t state_;
};

/// Standard normal deviates by the Box-Muller transform over SplitMix64.
/// Each pair of uniforms (u1, u2) yields sqrt(-2 ln(1 - u1)) * cos(2 pi u2)
/// followed by the matching sin term.
class GaussianSource {
 public:
  explicit GaussianSource(std::uint64_t seed) noexcept : uniform_(seed) {}

  double next() noexcept;

 private:
  SplitMix64 uniform_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// x[i] = evaluate(params, t0 + i * dt). Requires dt > 0 and n >= 2.
TimeSeries generate_series(const OscillatorParams& params, double t0,
                           double dt, std::size_t n);

/// Adds i.i.d. N(0, (percent * scale_amplitude)^2) noise drawn from a
/// GaussianSource seeded with spec.seed.
TimeSeries add_gaussian_noise(const TimeSeries& series, const NoiseSpec& spec,
                              double scale_amplitude);

}  // namespace dampest
