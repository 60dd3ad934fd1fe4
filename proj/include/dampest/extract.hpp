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


// Characteristic time points of a smoothed damped oscillation: zero crossings
// t_{k pi}, the half-period midpoints t_{(2k+1) pi / 2} where the signal
// touches its envelope, and the envelope magnitudes read off at those points.
//
// All times returned here are in signal time: the filter's group delay has
// already been subtracted (see CrossingSet::delay_correction).

#pragma once

#include <optional>
#include <vector>

#include "dampest/synth.hpp"

namespace dampest {

enum class Direction { falling, rising };

struct Crossing {
  double time;
  Direction direction;
};

/// A point where the oscillation is tangent to +-C e^{-bt}.
struct EnvelopePoint {
  double time;
  double magnitude;  // |x(time)|
  int sign;          // +1 on a peak, -1 on a valley
};

struct CrossingSet {
  std::vector<Crossing> crossings;
  std::vector<EnvelopePoint> midpoints;
  /// Seconds subtracted from every time to undo the filter delay.
  double delay_correction = 0.0;
  /// Set when some crossing gap deviates from the mean gap by more than 10%,
  /// or when trailing crossings were dropped.
  bool irregular_gaps = false;
  /// Number of noisy chatter clusters collapsed into single crossings.
  std::size_t merged_clusters = 0;
  /// Crossings discarded after the first inconsistent gap: the first gap
  /// must lie within a factor of two of half the period hint, later ones
  /// within 15% of the mean of the gaps before them.
  std::size_t trailing_dropped = 0;
  /// Absolute hysteresis band used for detection. Envelope read-offs at or
  /// below it are indistinguishable from residual noise.
  double dead_band = 0.0;
};

struct ExtractOptions {
  /// Rough period in seconds; <= 0 asks find_zero_crossings to estimate one.
  double period_hint = 0.0;
  /// Dead band around zero as a fraction of max |x|.
  double hysteresis = 0.01;
};

/// Rough period from the first negative lobe of the sample autocorrelation
/// of the valid (non-prefix) samples. Returns 0 when no lobe is found.
double estimate_period_hint(const TimeSeries& series);

/// Linear interpolation of a filtered series at signal time t, i.e. at
/// t + delay on the series grid. Empty inside the zeroed prefix or outside
/// the sampled range.
std::optional<double> value_at(const TimeSeries& series, double t,
                               double delay);

/// Sign changes of the series outside its zeroed prefix, each located by
/// linear interpolation between the straddling samples and shifted by -delay.
///
/// Sign detection uses a hysteresis dead band. Crossings closer than a tenth
/// of the period hint are treated as one noisy cluster: clusters with an even
/// count carry no net sign change and are dropped; odd clusters become one
/// crossing, placed at the zero of a least-squares quadratic through the
/// samples within an eighth of a period of the cluster centre.
///
/// Throws NoCrossings when fewer than two crossings remain.
CrossingSet find_zero_crossings(const TimeSeries& series, double delay,
                                const ExtractOptions& options = {});

/// Fills set.midpoints: one per pair of consecutive crossings, at the mean of
/// the two times, with the magnitude of the series there. Throws
/// InsufficientPoints for fewer than two crossings.
CrossingSet locate_midpoints(CrossingSet set, const TimeSeries& series);

struct LeadingPoint {
  double time;
  /// Empty when the time falls in the zeroed prefix or before the record.
  std::optional<double> magnitude;
  int sign;

  std::optional<EnvelopePoint> envelope() const;
};

/// First envelope tangent before the first crossing: crossings[0] - T/4.
LeadingPoint leading_tangent_point(const CrossingSet& set,
                                   const TimeSeries& series, double period);

/// Envelope points in time order: the leading tangent (when available)
/// followed by the midpoints, cut off at the first point whose magnitude does
/// not exceed set.dead_band.
std::vector<EnvelopePoint> envelope_points(const CrossingSet& set,
                                           const LeadingPoint& leading);

}  // namespace dampest
