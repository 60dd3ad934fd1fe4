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


// Causal moving-average / moving-median smoothing and RMS(k) window selection.
//
// Both filters use a trailing window of k samples, so output[i] summarizes
// input[i-k+1 .. i]. The first k-1 outputs have no full window; they are set
// to zero and reported through TimeSeries::zeroed_prefix(). The trailing
// window delays the signal by (k-1)/2 samples.

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dampest/synth.hpp"

namespace dampest {

TimeSeries moving_average(const TimeSeries& series, std::size_t k);
TimeSeries moving_median(const TimeSeries& series, std::size_t k);
TimeSeries apply_filter(const TimeSeries& series, FilterKind kind,
                        std::size_t k);

/// RMS(k) = sqrt( sum_{j=k}^{N} (filtered_j - raw_j)^2 / (N - k) ), with j
/// 1-based. Samples before index k (the filter's zeroed prefix) are ignored.
double rms_fit(const TimeSeries& raw, const TimeSeries& filtered,
               std::size_t k);

struct SmoothingCandidate {
  FilterKind kind;
  std::size_t k;
  std::optional<double> rms;  // empty when the candidate was rejected
  std::string rejected;       // reason, when rejected
};

struct SmoothingChoice {
  FilterKind kind;
  std::size_t k;
  double rms;
  /// (k - 1) / 2 * dt: time lag of the trailing window.
  double group_delay;
  std::vector<SmoothingCandidate> candidates;
};

/// Evaluates every (kind, k) pair and returns the RMS(k) minimizer. Ties go to
/// the smaller k, then mean before median. Invalid candidates are recorded
/// as rejected; throws only when none is valid.
SmoothingChoice select_smoothing(const TimeSeries& series,
                                 std::span<const FilterKind> kinds,
                                 std::span<const std::size_t> k_candidates);

/// Odd windows 3, 5, ... up to min(2 * floor(P / 10) + 1, n / 4), where P is
/// the number of samples per period. Without a period estimate only the n / 4
/// bound applies. Falls back to {1} for very short series.
std::vector<std::size_t> default_k_candidates(std::size_t n, double dt,
                                              double period_estimate);

}  // namespace dampest
