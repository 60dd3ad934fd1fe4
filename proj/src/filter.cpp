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


#include "dampest/filter.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "dampest/error.hpp"

namespace dampest {

namespace {

void check_window(const TimeSeries& series, std::size_t k) {
  if (k < 1 || k > series.size())
    throw Error(ErrorCode::invalid_argument,
                "window k=" + std::to_string(k) + " outside [1, " +
                    std::to_string(series.size()) + "]");
}

TimeSeries make_filtered(const TimeSeries& in, std::vector<double> out,
                         FilterKind kind, std::size_t k) {
  SeriesLabel label{SeriesLabel::Source::filtered, kind, k};
  return TimeSeries(in.t0(), in.dt(), std::move(out), label, k - 1);
}

}  // namespace

TimeSeries moving_average(const TimeSeries& series, std::size_t k) {
  check_window(series, k);
  const auto x = series.samples();
  if (k == 1)
    return make_filtered(series, {x.begin(), x.end()}, FilterKind::mean, 1);
  std::vector<double> out(x.size(), 0.0);

  // Running window sum, carried in extended precision to keep the drift of
  // add/subtract pairs well below double resolution.
  long double sum = 0.0L;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sum += x[i];
    if (i >= k) sum -= x[i - k];
    if (i + 1 >= k) out[i] = static_cast<double>(sum / static_cast<long double>(k));
  }
  return make_filtered(series, std::move(out), FilterKind::mean, k);
}

TimeSeries moving_median(const TimeSeries& series, std::size_t k) {
  check_window(series, k);
  const auto x = series.samples();
  std::vector<double> out(x.size(), 0.0);
  std::vector<double> window(k);
  const std::size_t mid = k / 2;
  for (std::size_t i = k - 1; i < x.size(); ++i) {
    std::copy(x.begin() + static_cast<std::ptrdiff_t>(i + 1 - k),
              x.begin() + static_cast<std::ptrdiff_t>(i + 1), window.begin());
    std::nth_element(window.begin(), window.begin() + mid, window.end());
    double m = window[mid];
    if (k % 2 == 0) {
      const double lower =
          *std::max_element(window.begin(), window.begin() + mid);
      m = 0.5 * (lower + m);
    }
    out[i] = m;
  }
  return make_filtered(series, std::move(out), FilterKind::median, k);
}

TimeSeries apply_filter(const TimeSeries& series, FilterKind kind,
                        std::size_t k) {
  return kind == FilterKind::mean ? moving_average(series, k)
                                  : moving_median(series, k);
}

double rms_fit(const TimeSeries& raw, const TimeSeries& filtered,
               std::size_t k) {
  if (!raw.same_grid(filtered))
    throw Error(ErrorCode::invalid_argument,
                "rms_fit needs raw and filtered series on the same grid");
  if (k < 1) throw Error(ErrorCode::invalid_argument, "rms_fit needs k >= 1");
  const std::size_t n = raw.size();
  if (n <= k)
    throw Error(ErrorCode::invalid_argument,
                "rms_fit needs more samples than the window (N > k)");
  double sum = 0.0;
  for (std::size_t j = k - 1; j < n; ++j) {
    const double d = filtered[j] - raw[j];
    sum += d * d;
  }
  return std::sqrt(sum / static_cast<double>(n - k));
}

SmoothingChoice select_smoothing(const TimeSeries& series,
                                 std::span<const FilterKind> kinds,
                                 std::span<const std::size_t> k_candidates) {
  if (kinds.empty() || k_candidates.empty())
    throw Error(ErrorCode::invalid_argument,
                "select_smoothing needs at least one kind and one window");

  // Canonical evaluation order doubles as the tie-break order.
  std::vector<std::size_t> ks(k_candidates.begin(), k_candidates.end());
  std::sort(ks.begin(), ks.end());
  ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
  std::vector<FilterKind> ordered_kinds;
  for (FilterKind kind : {FilterKind::mean, FilterKind::median})
    if (std::find(kinds.begin(), kinds.end(), kind) != kinds.end())
      ordered_kinds.push_back(kind);

  SmoothingChoice choice{FilterKind::mean, 0, 0.0, 0.0, {}};
  bool found = false;
  for (std::size_t k : ks) {
    for (FilterKind kind : ordered_kinds) {
      SmoothingCandidate cand{kind, k, std::nullopt, {}};
      if (k < 1 || k >= series.size()) {
        cand.rejected = "window must satisfy 1 <= k < n";
      } else {
        const double rms = rms_fit(series, apply_filter(series, kind, k), k);
        cand.rms = rms;
        if (!found || rms < choice.rms) {
          choice.kind = kind;
          choice.k = k;
          choice.rms = rms;
          found = true;
        }
      }
      choice.candidates.push_back(std::move(cand));
    }
  }
  if (!found)
    throw Error(ErrorCode::no_valid_candidates,
                "no smoothing candidate is valid for a series of " +
                    std::to_string(series.size()) + " samples");
  choice.group_delay =
      static_cast<double>(choice.k - 1) / 2.0 * series.dt();
  return choice;
}

std::vector<std::size_t> default_k_candidates(std::size_t n, double dt,
                                              double period_estimate) {
  std::size_t upper = n / 4;
  if (period_estimate > 0.0 && dt > 0.0) {
    const double per_period = period_estimate / dt;
    const auto tenth = static_cast<std::size_t>(std::floor(per_period / 10.0));
    upper = std::min(upper, 2 * tenth + 1);
  }
  std::vector<std::size_t> ks;
  for (std::size_t k = 3; k <= upper; k += 2) ks.push_back(k);
  if (ks.empty()) ks.push_back(1);
  return ks;
}

}  // namespace dampest
