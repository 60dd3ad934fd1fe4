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


#include "dampest/error.hpp"
#include "dampest/estimate.hpp"

namespace dampest {

namespace {

template <typename F>
auto run_stage(Stage stage, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    throw e.at_stage(stage);
  }
}

}  // namespace

PipelineResult run_pipeline(const TimeSeries& input,
                            const PipelineOptions& options,
                            const std::optional<OscillatorParams>& truth) {
  const double hint = estimate_period_hint(input);

  SmoothingChoice smoothing = run_stage(Stage::smoothing, [&] {
    const std::vector<std::size_t> ks =
        options.k_candidates.empty()
            ? default_k_candidates(input.size(), input.dt(), hint)
            : options.k_candidates;
    return select_smoothing(input, options.kinds, ks);
  });
  TimeSeries filtered = apply_filter(input, smoothing.kind, smoothing.k);

  CrossingSet crossings = run_stage(Stage::extraction, [&] {
    ExtractOptions extract{hint, options.hysteresis};
    CrossingSet set = find_zero_crossings(filtered, smoothing.group_delay, extract);
    return locate_midpoints(std::move(set), filtered);
  });

  EstimationReport proposed =
      run_stage(Stage::estimation, [&] { return estimate_proposed(crossings, filtered); });

  std::optional<EstimationReport> traditional;
  std::optional<MethodFailure> failure;
  try {
    traditional = estimate_traditional(crossings, filtered);
  } catch (const Error& e) {
    failure = MethodFailure{e.code(), e.what()};
  }

  if (truth) {
    proposed.errors_vs_truth = relative_errors(proposed, *truth);
    if (traditional) traditional->errors_vs_truth = relative_errors(*traditional, *truth);
  }

  return PipelineResult{hint,
                        std::move(smoothing),
                        std::move(filtered),
                        std::move(crossings),
                        std::move(proposed),
                        std::move(traditional),
                        std::move(failure),
                        truth};
}

}  // namespace dampest
