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


#include "dampest/extract.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "dampest/error.hpp"

namespace dampest {

namespace {

// Autocorrelation of series longer than this is computed on block means.
constexpr std::size_t kHintLength = 2048;

int classify(double v, double band) {
  if (v > band) return 1;
  if (v < -band) return -1;
  return 0;
}

// Zero between samples a (on the side `from`) and b, located at the first
// sample that leaves that side.
double locate_zero(const TimeSeries& s, std::size_t a, std::size_t b,
                   int from) {
  for (std::size_t j = a + 1; j <= b; ++j) {
    const double v = s[j];
    if (v == 0.0) return s.time(j);
    if ((v > 0.0 ? 1 : -1) != from) {
      const double u = s[j - 1];
      if (u == 0.0) return s.time(j - 1);
      return s.time(j - 1) + s.dt() * u / (u - v);
    }
  }
  return s.time(b);
}

struct RawCrossing {
  double time;
  Direction direction;
};

// Zero of the least-squares quadratic through the samples within half_width
// of centre, taking the root nearest the centre. The quadratic term absorbs
// the envelope's curvature, which would otherwise shift a straight-line zero
// by about b * half_width^2 / 3. Empty when the fit is degenerate or slopes
// the wrong way at the root.
constexpr double kGapTolerance = 0.15;

std::optional<double> fitted_zero(const TimeSeries& s, double centre,
                                  double half_width, Direction dir) {
  const double lo_t = centre - half_width;
  const double hi_t = centre + half_width;
  const auto first = static_cast<double>(s.zeroed_prefix());
  const double last = static_cast<double>(s.size() - 1);
  const double lo = std::max(first, std::ceil((lo_t - s.t0()) / s.dt()));
  const double hi = std::min(last, std::floor((hi_t - s.t0()) / s.dt()));
  if (hi - lo < 3.0) return std::nullopt;

  // Normal equations in the scaled abscissa v = u / half_width.
  double m[3][4] = {};
  for (auto i = static_cast<std::size_t>(lo); i <= static_cast<std::size_t>(hi);
       ++i) {
    const double v = (s.time(i) - centre) / half_width;
    const double basis[3] = {1.0, v, v * v};
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) m[r][c] += basis[r] * basis[c];
      m[r][3] += basis[r] * s[i];
    }
  }
  for (int col = 0; col < 3; ++col) {
    int pivot = col;
    for (int r = col + 1; r < 3; ++r)
      if (std::abs(m[r][col]) > std::abs(m[pivot][col])) pivot = r;
    if (!(std::abs(m[pivot][col]) > 0.0)) return std::nullopt;
    std::swap(m[col], m[pivot]);
    for (int r = 0; r < 3; ++r) {
      if (r == col) continue;
      const double f = m[r][col] / m[col][col];
      for (int c = col; c < 4; ++c) m[r][c] -= f * m[col][c];
    }
  }
  const double a = m[0][3] / m[0][0];
  const double slope = m[1][3] / m[1][1];
  const double curve = m[2][3] / m[2][2];

  double v = 0.0;
  if (std::abs(curve) <= 1e-12 * std::abs(slope)) {
    if (slope == 0.0) return std::nullopt;
    v = -a / slope;
  } else {
    const double disc = slope * slope - 4.0 * curve * a;
    if (disc < 0.0) return std::nullopt;
    // Numerically stable pair of roots; keep the one nearest the centre.
    const double q = -0.5 * (slope + std::copysign(std::sqrt(disc), slope));
    const double r1 = q / curve;
    const double r2 = q != 0.0 ? a / q : r1;
    v = std::abs(r1) < std::abs(r2) ? r1 : r2;
  }
  const double slope_at_root = slope + 2.0 * curve * v;
  const bool rising = dir == Direction::rising;
  if (slope_at_root == 0.0 || (slope_at_root > 0.0) != rising) return std::nullopt;
  return centre + v * half_width;
}

}  // namespace

double estimate_period_hint(const TimeSeries& series) {
  const auto x = series.samples();
  const std::size_t start = series.zeroed_prefix();
  const std::size_t n = x.size() - start;
  const std::size_t block = std::max<std::size_t>(1, (n + kHintLength - 1) / kHintLength);
  const std::size_t m = n / block;
  if (m < 8) return 0.0;

  std::vector<double> y(m);
  for (std::size_t i = 0; i < m; ++i) {
    const auto begin = x.begin() + static_cast<std::ptrdiff_t>(start + i * block);
    y[i] = std::accumulate(begin, begin + static_cast<std::ptrdiff_t>(block), 0.0) /
           static_cast<double>(block);
  }
  const double mean = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(m);
  for (double& v : y) v -= mean;

  // With the biased estimator's triangular taper, the deepest trough is the
  // first negative lobe, at half a period.
  const std::size_t max_lag = 3 * m / 4;
  double best = 0.0;
  std::size_t best_lag = 0;
  for (std::size_t lag = 1; lag <= max_lag; ++lag) {
    double r = 0.0;
    for (std::size_t i = 0; i + lag < m; ++i) r += y[i] * y[i + lag];
    if (r < best) {
      best = r;
      best_lag = lag;
    }
  }
  if (best_lag == 0 || best_lag == max_lag) return 0.0;
  return 2.0 * static_cast<double>(best_lag * block) * series.dt();
}

std::optional<double> value_at(const TimeSeries& s, double t, double delay) {
  const double pos = (t + delay - s.t0()) / s.dt();
  const auto first = static_cast<double>(s.zeroed_prefix());
  const double last = static_cast<double>(s.size() - 1);
  // Tolerate rounding right at the grid edges.
  constexpr double eps = 1e-9;
  if (!(pos >= first - eps) || !(pos <= last + eps)) return std::nullopt;
  const double clamped = std::clamp(pos, first, last);
  const auto i = static_cast<std::size_t>(std::floor(clamped));
  if (i + 1 >= s.size()) return s[s.size() - 1];
  const double frac = clamped - static_cast<double>(i);
  if (frac == 0.0) return s[i];
  return s[i] + frac * (s[i + 1] - s[i]);
}

CrossingSet find_zero_crossings(const TimeSeries& series, double delay,
                                const ExtractOptions& options) {
  const auto x = series.samples();
  const std::size_t start = series.zeroed_prefix();
  double peak = 0.0;
  for (std::size_t i = start; i < x.size(); ++i) peak = std::max(peak, std::abs(x[i]));
  if (!(peak > 0.0))
    throw Error(ErrorCode::no_crossings, "series is identically zero");
  const double band = options.hysteresis * peak;

  std::vector<RawCrossing> raw;
  int state = 0;
  std::size_t last = start;
  for (std::size_t i = start; i < x.size(); ++i) {
    const int s = classify(x[i], band);
    if (s == 0) continue;
    if (state != 0 && s != state)
      raw.push_back({locate_zero(series, last, i, state),
                     s > 0 ? Direction::rising : Direction::falling});
    state = s;
    last = i;
  }

  const double period =
      options.period_hint > 0.0 ? options.period_hint : estimate_period_hint(series);
  const double merge_gap = period / 10.0;

  CrossingSet set;
  set.delay_correction = delay;
  set.dead_band = band;
  std::size_t i = 0;
  while (i < raw.size()) {
    std::size_t j = i + 1;
    while (j < raw.size() && raw[j].time - raw[j - 1].time <= merge_gap) ++j;
    const std::size_t count = j - i;
    if (count == 1) {
      set.crossings.push_back({raw[i].time, raw[i].direction});
    } else if (count % 2 == 1) {
      // Chatter alternates, so an odd cluster keeps the direction of its
      // first member.
      double centre = 0.0;
      for (std::size_t q = i; q < j; ++q) centre += raw[q].time;
      centre /= static_cast<double>(count);
      double t = centre;
      if (auto z = fitted_zero(series, centre, period / 8.0, raw[i].direction)) {
        const double slack = period / 20.0;
        if (*z >= raw[i].time - slack && *z <= raw[j - 1].time + slack) t = *z;
      }
      set.crossings.push_back({t, raw[i].direction});
      ++set.merged_clusters;
    } else {
      ++set.merged_clusters;
    }
    i = j;
  }

  if (set.crossings.size() < 2)
    throw Error(ErrorCode::no_crossings,
                "found " + std::to_string(set.crossings.size()) +
                    " zero crossing(s); at least 2 are needed");

  // Once the envelope sinks into the noise, crossings go missing or appear
  // at random. Keep the leading run whose gaps agree with the period hint
  // (coarse, so loosely) and then with the gaps accepted so far.
  for (std::size_t q = 1; q < set.crossings.size(); ++q) {
    const double gap = set.crossings[q].time - set.crossings[q - 1].time;
    bool consistent = true;
    if (q == 1) {
      // The hint runs up to a third low on short damped records; a lost
      // pair of crossings triples the gap.
      if (period > 0.0) consistent = gap >= period / 4.0 && gap <= period;
    } else {
      const double accepted =
          (set.crossings[q - 1].time - set.crossings.front().time) /
          static_cast<double>(q - 1);
      consistent = std::abs(gap - accepted) <= kGapTolerance * accepted;
    }
    if (!consistent) {
      set.trailing_dropped = set.crossings.size() - q;
      set.crossings.resize(q);
      break;
    }
  }
  if (set.crossings.size() < 2)
    throw Error(ErrorCode::no_crossings,
                "found 1 zero crossing consistent with the period estimate; at "
                "least 2 are needed");

  for (auto& c : set.crossings) c.time -= delay;

  const double mean_gap = (set.crossings.back().time - set.crossings.front().time) /
                          static_cast<double>(set.crossings.size() - 1);
  for (std::size_t q = 1; q < set.crossings.size(); ++q) {
    const double gap = set.crossings[q].time - set.crossings[q - 1].time;
    if (std::abs(gap - mean_gap) > 0.1 * mean_gap) set.irregular_gaps = true;
  }
  if (set.trailing_dropped > 0) set.irregular_gaps = true;
  return set;
}

CrossingSet locate_midpoints(CrossingSet set, const TimeSeries& series) {
  if (set.crossings.size() < 2)
    throw Error(ErrorCode::insufficient_points,
                "locate_midpoints needs at least 2 crossings");
  set.midpoints.clear();
  for (std::size_t i = 0; i + 1 < set.crossings.size(); ++i) {
    const Crossing& a = set.crossings[i];
    const double t = 0.5 * (a.time + set.crossings[i + 1].time);
    const double v = value_at(series, t, set.delay_correction).value_or(0.0);
    set.midpoints.push_back(
        {t, std::abs(v), a.direction == Direction::rising ? 1 : -1});
  }
  return set;
}

std::optional<EnvelopePoint> LeadingPoint::envelope() const {
  if (!magnitude) return std::nullopt;
  return EnvelopePoint{time, *magnitude, sign};
}

LeadingPoint leading_tangent_point(const CrossingSet& set,
                                   const TimeSeries& series, double period) {
  if (set.crossings.empty())
    throw Error(ErrorCode::insufficient_points,
                "leading_tangent_point needs a crossing");
  const Crossing& first = set.crossings.front();
  LeadingPoint lp{first.time - period / 4.0, std::nullopt,
                  first.direction == Direction::falling ? 1 : -1};
  if (auto v = value_at(series, lp.time, set.delay_correction))
    lp.magnitude = std::abs(*v);
  return lp;
}

std::vector<EnvelopePoint> envelope_points(const CrossingSet& set,
                                           const LeadingPoint& leading) {
  std::vector<EnvelopePoint> out;
  out.reserve(set.midpoints.size() + 1);
  if (auto e = leading.envelope()) out.push_back(*e);
  out.insert(out.end(), set.midpoints.begin(), set.midpoints.end());
  const auto lost = std::find_if(out.begin(), out.end(), [&](const EnvelopePoint& p) {
    return !(p.magnitude > set.dead_band);
  });
  out.erase(lost, out.end());
  return out;
}

}  // namespace dampest
