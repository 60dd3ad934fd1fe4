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


#include "dampest/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string_view>

#include <json.hpp>

#include "dampest/error.hpp"

namespace dampest {

namespace {

using Json = nlohmann::ordered_json;

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::optional<double> parse_number(std::string_view field) {
  field = trim(field);
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc() || ptr != field.data() + field.size() || !std::isfinite(v))
    return std::nullopt;
  return v;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Json nullable(const std::optional<double>& v) {
  return v ? Json(*v) : Json(nullptr);
}

Json params_json(const OscillatorParams& p) {
  return Json{{"C", p.amplitude()},
              {"b", p.damping()},
              {"alpha", p.frequency()},
              {"phi", p.phase()},
              {"phi_deg", p.phase() * 180.0 / std::numbers::pi}};
}

Json estimate_json(const EstimationReport& r) {
  Json j;
  j["method"] = to_string(r.method);
  j["T_hat"] = r.period;
  j["params_hat"] = Json{{"C", nullable(r.amplitude)},
                         {"b", nullable(r.damping)},
                         {"alpha", r.frequency},
                         {"phi", r.phase},
                         {"phi_deg", r.phase * 180.0 / std::numbers::pi}};
  j["dt_hat"] = r.shift;
  if (r.de) {
    j["de_hat"] = Json{{"damping_term", r.de->damping_term},
                       {"stiffness_term", r.de->stiffness_term},
                       {"roots", Json::array({Json{{"re", r.de->root_upper.real()},
                                                   {"im", r.de->root_upper.imag()}},
                                              Json{{"re", r.de->root_lower.real()},
                                                   {"im", r.de->root_lower.imag()}}})},
                       {"equation", de_equation(*r.de)}};
  } else {
    j["de_hat"] = nullptr;
  }
  j["crossings_used"] = r.crossings_used;
  j["envelope_points_used"] = r.envelope_points_used;
  j["notes"] = r.notes;
  if (r.traditional) {
    const TraditionalDetail& d = *r.traditional;
    j["readings"] = Json{{"t1", d.t1},
                         {"e1", d.e1},
                         {"t2", d.t2},
                         {"e2", d.e2},
                         {"half_index", d.half_index},
                         {"x0", d.x0},
                         {"x0_extrapolated", d.x0_extrapolated},
                         {"C_single_point", d.amplitude_single_point},
                         {"phi_arctan", d.phase_arctan},
                         {"phi_arcsin", d.phase_arcsin}};
  }
  if (r.errors_vs_truth) {
    const ParamErrors& e = *r.errors_vs_truth;
    j["errors_vs_truth"] = Json{{"T", e.period},
                                {"C", nullable(e.amplitude)},
                                {"alpha", e.frequency},
                                {"b", nullable(e.damping)},
                                {"phi", e.phase},
                                {"b_is_absolute", e.damping_is_absolute}};
  }
  return j;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::io, "cannot open " + path.string() + " for writing");
  out << content;
  out.close();
  if (!out) throw Error(ErrorCode::io, "failed writing " + path.string());
}

std::string optional_cell(const std::optional<OscillatorParams>& p, double t) {
  return p ? num(evaluate(*p, t)) : std::string();
}

}  // namespace

TimeSeries parse_csv(std::istream& in, const std::string& source) {
  std::vector<double> t;
  std::vector<double> x;
  std::string line;
  std::size_t line_no = 0;
  bool header_allowed = true;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view view = trim(line);
    if (view.empty() || view.front() == '#') continue;

    const auto comma = view.find(',');
    std::optional<double> tv, xv;
    if (comma != std::string_view::npos && view.find(',', comma + 1) == std::string_view::npos) {
      tv = parse_number(view.substr(0, comma));
      xv = parse_number(view.substr(comma + 1));
    }
    if (!tv || !xv) {
      if (header_allowed && comma != std::string_view::npos) {
        header_allowed = false;
        continue;
      }
      throw Error(ErrorCode::parse, source + ": line " + std::to_string(line_no) +
                                        ": expected two numeric columns 't,x'",
                  Stage::input);
    }
    header_allowed = false;
    t.push_back(*tv);
    x.push_back(*xv);
  }
  if (in.bad()) throw Error(ErrorCode::io, source + ": read failure", Stage::input);
  if (t.size() < 2)
    throw Error(ErrorCode::too_short,
                source + ": need at least 2 data rows, found " + std::to_string(t.size()),
                Stage::input);

  std::vector<double> gaps(t.size() - 1);
  for (std::size_t i = 1; i < t.size(); ++i) {
    gaps[i - 1] = t[i] - t[i - 1];
    if (!(gaps[i - 1] > 0.0))
      throw Error(ErrorCode::non_uniform,
                  source + ": time column not strictly increasing at row " +
                      std::to_string(i),
                  Stage::input);
  }
  std::vector<double> sorted = gaps;
  const auto mid = sorted.begin() + static_cast<std::ptrdiff_t>(sorted.size() / 2);
  std::nth_element(sorted.begin(), mid, sorted.end());
  double median = *mid;
  if (sorted.size() % 2 == 0) median = 0.5 * (median + *std::max_element(sorted.begin(), mid));

  std::size_t worst = 0;
  double worst_dev = -1.0;
  for (std::size_t i = 0; i < gaps.size(); ++i) {
    const double dev = std::abs(gaps[i] - median);
    if (dev > worst_dev) {
      worst_dev = dev;
      worst = i + 1;
    }
  }
  if (worst_dev > 1e-3 * median)
    throw Error(ErrorCode::non_uniform,
                source + ": non-uniform sampling, worst spacing at row " +
                    std::to_string(worst) + " deviates " + num(worst_dev / median * 100.0) +
                    "% from the median dt",
                Stage::input);
  return TimeSeries(t.front(), median, std::move(x));
}

TimeSeries ingest_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io, "cannot open " + path.string(), Stage::input);
  return parse_csv(in, path.string());
}

std::string de_equation(const DECoefficients& de) {
  return "x'' + " + num(de.damping_term) + "x' + " + num(de.stiffness_term) + "x = 0";
}

std::string report_json(const PipelineResult& result, const TimeSeries& input,
                        const RunInfo& info) {
  Json j;
  j["format"] = "dampest-report";
  j["version"] = 1;

  Json in{{"source", info.source}};
  if (!info.input_path.empty()) in["path"] = info.input_path;
  in["t0"] = input.t0();
  in["dt"] = input.dt();
  in["samples"] = input.size();
  if (info.synth_params) {
    Json synth = params_json(*info.synth_params);
    synth["noise_percent"] = info.noise.percent;
    synth["seed"] = info.noise.seed;
    in["synth"] = synth;
  }
  j["input"] = in;
  j["period_hint"] = result.period_hint;

  const SmoothingChoice& s = result.smoothing;
  Json candidates = Json::array();
  for (const auto& c : s.candidates) {
    Json row{{"kind", to_string(c.kind)}, {"k", c.k}, {"rms", nullable(c.rms)}};
    if (!c.rejected.empty()) row["rejected"] = c.rejected;
    candidates.push_back(row);
  }
  j["smoothing"] = Json{{"kind", to_string(s.kind)},
                        {"k", s.k},
                        {"rms", s.rms},
                        {"group_delay", s.group_delay},
                        {"candidates", candidates}};

  const CrossingSet& cs = result.crossings;
  Json times = Json::array();
  Json directions = Json::array();
  for (const auto& c : cs.crossings) {
    times.push_back(c.time);
    directions.push_back(c.direction == Direction::rising ? "rising" : "falling");
  }
  Json mids = Json::array();
  for (const auto& m : cs.midpoints)
    mids.push_back(Json{{"t", m.time}, {"magnitude", m.magnitude}, {"sign", m.sign}});
  j["crossings"] = Json{{"count", cs.crossings.size()},
                        {"delay_correction", cs.delay_correction},
                        {"merged_clusters", cs.merged_clusters},
                        {"trailing_dropped", cs.trailing_dropped},
                        {"irregular_gaps", cs.irregular_gaps},
                        {"times", times},
                        {"directions", directions},
                        {"midpoints", mids}};

  if (result.truth) j["truth"] = params_json(*result.truth);

  Json estimates;
  estimates["proposed"] = estimate_json(result.proposed);
  if (result.traditional) {
    estimates["traditional"] = estimate_json(*result.traditional);
  } else if (result.traditional_failure) {
    estimates["traditional"] =
        Json{{"method", "traditional"},
             {"error", Json{{"code", to_string(result.traditional_failure->code)},
                            {"message", result.traditional_failure->message}}}};
  }
  j["estimates"] = estimates;
  return j.dump(2) + "\n";
}

std::vector<std::filesystem::path> emit_report(
    const PipelineResult& result, const TimeSeries& input, const RunInfo& info,
    const EmitFlags& flags, const std::filesystem::path& out_dir) {
  std::vector<std::filesystem::path> written;
  if (!flags.report && !flags.plots && !flags.acf) return written;

  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw Error(ErrorCode::io, "cannot create " + out_dir.string() + ": " + ec.message());

  auto emit = [&](const char* name, const std::string& content) {
    const auto path = out_dir / name;
    write_file(path, content);
    written.push_back(path);
  };

  if (flags.report) emit("report.json", report_json(result, input, info));

  const std::optional<OscillatorParams> proposed = result.proposed.params();
  const std::optional<OscillatorParams> traditional =
      result.traditional ? result.traditional->params() : std::nullopt;

  if (flags.plots) {
    const TimeSeries& f = result.filtered;
    std::ostringstream filtered;
    filtered << "t,input,filtered,valid\n";
    for (std::size_t i = 0; i < input.size(); ++i)
      filtered << num(input.time(i)) << ',' << num(input[i]) << ',' << num(f[i]) << ','
               << (i >= f.zeroed_prefix() ? 1 : 0) << '\n';
    emit("filtered.csv", filtered.str());

    std::ostringstream markers;
    markers << "kind,t,value\n";
    for (const auto& c : result.crossings.crossings)
      markers << (c.direction == Direction::rising ? "crossing_rising" : "crossing_falling")
              << ',' << num(c.time) << ",0\n";
    for (const auto& m : result.crossings.midpoints)
      markers << "midpoint," << num(m.time) << ',' << num(m.sign * m.magnitude) << '\n';
    emit("markers.csv", markers.str());

    std::ostringstream envelope;
    envelope << "t,upper,lower\n";
    for (std::size_t i = 0; i < input.size(); ++i) {
      const double t = input.time(i);
      envelope << num(t);
      if (proposed) {
        const double e = proposed->amplitude() * std::exp(-proposed->damping() * t);
        envelope << ',' << num(e) << ',' << num(-e) << '\n';
      } else {
        envelope << ",,\n";
      }
    }
    emit("envelope.csv", envelope.str());

    std::ostringstream overlay;
    overlay << "t,input,proposed,traditional,truth\n";
    for (std::size_t i = 0; i < input.size(); ++i) {
      const double t = input.time(i);
      overlay << num(t) << ',' << num(input[i]) << ',' << optional_cell(proposed, t) << ','
              << optional_cell(traditional, t) << ',' << optional_cell(result.truth, t) << '\n';
    }
    emit("overlay.csv", overlay.str());
  }

  if (flags.acf && proposed) {
    const double window = input.time(input.size() - 1) - input.t0();
    std::ostringstream acf_out;
    acf_out << "lag,acf_normalized\n";
    for (std::size_t i = 0; i < input.size(); ++i) {
      const double lag = static_cast<double>(i) * input.dt();
      acf_out << num(lag) << ',' << num(acf_normalized(*proposed, AcfSpec(window, lag)))
              << '\n';
    }
    emit("acf.csv", acf_out.str());
  }
  return written;
}

}  // namespace dampest
