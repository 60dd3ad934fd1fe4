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


// CSV ingestion and report / plot-data emission.

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dampest/estimate.hpp"
#include "dampest/synth.hpp"

namespace dampest {

/// Reads `t,x` rows. Blank lines and lines starting with '#' are skipped; a
/// single non-numeric header row is allowed before the data. Spacing must be
/// uniform: every successive dt within 0.1% of the median dt, which becomes
/// the series spacing.
///
/// Throws Parse (with line number), NonUniform (with the worst row index),
/// TooShort, or Io.
TimeSeries ingest_csv(const std::filesystem::path& path);
TimeSeries parse_csv(std::istream& in, const std::string& source = "<stream>");

/// Where the analysed series came from, echoed into the report.
struct RunInfo {
  std::string source = "file";  // "synth" or "file"
  std::string input_path;
  std::optional<OscillatorParams> synth_params;
  NoiseSpec noise;
};

struct EmitFlags {
  bool report = true;
  bool plots = true;
  bool acf = false;
};

/// report.json contents. Keys are stable; doubles round-trip exactly.
std::string report_json(const PipelineResult& result, const TimeSeries& input,
                        const RunInfo& info);

/// "x'' + {2b}x' + {omega^2}x = 0".
std::string de_equation(const DECoefficients& de);

/// Writes report.json and the plot CSVs selected by `flags` into out_dir
/// (created if needed). Returns the files written, in write order.
std::vector<std::filesystem::path> emit_report(
    const PipelineResult& result, const TimeSeries& input, const RunInfo& info,
    const EmitFlags& flags, const std::filesystem::path& out_dir);

}  // namespace dampest
