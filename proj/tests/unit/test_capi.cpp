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


#include <cmath>
#include <cstring>
#include <filesystem>
#include <numbers>
#include <string>
#include <vector>

#include <doctest.h>

#include "dampest/dampest.h"

namespace {

constexpr double kPi = std::numbers::pi;
const dampest_params kExample{2.0, 1.0, kPi, kPi / 4.0};

}  // namespace

TEST_CASE("version and status strings") {
  CHECK(std::strlen(dampest_version()) > 0);
  CHECK(std::string(dampest_status_string(DAMPEST_NO_CROSSINGS)) == "NoCrossings");
  CHECK(std::string(dampest_status_string(DAMPEST_OK)) == "Ok");
}

TEST_CASE("model functions") {
  double v = 0.0;
  REQUIRE(dampest_evaluate(&kExample, 0.0, &v) == DAMPEST_OK);
  CHECK(v == doctest::Approx(std::sqrt(2.0)));
  REQUIRE(dampest_zero_cross_time(&kExample, 1, &v) == DAMPEST_OK);
  CHECK(v == doctest::Approx(0.75));
  REQUIRE(dampest_envelope_tangent_time(&kExample, 0, &v) == DAMPEST_OK);
  CHECK(v == doctest::Approx(0.25));
  REQUIRE(dampest_first_peak_time(&kExample, &v) == DAMPEST_OK);
  CHECK(v < 0.25);
  REQUIRE(dampest_integral(&kExample, 0.25, 2.25, &v) == DAMPEST_OK);
  CHECK(v == doctest::Approx(0.1239).epsilon(1e-3));
  REQUIRE(dampest_acf_normalized(&kExample, 2.0, 0.0, 1, &v) == DAMPEST_OK);
  CHECK(v == doctest::Approx(1.0));
}

TEST_CASE("errors are reported through status codes") {
  const dampest_params bad{-1.0, 0.0, 1.0, 0.0};
  double v = 0.0;
  CHECK(dampest_params_validate(&bad) == DAMPEST_INVALID_ARGUMENT);
  CHECK(std::strlen(dampest_last_error()) > 0);
  CHECK(dampest_evaluate(nullptr, 0.0, &v) == DAMPEST_INVALID_ARGUMENT);
  CHECK(dampest_zero_cross_time(&kExample, 0, &v) == DAMPEST_INVALID_ARGUMENT);
  CHECK(dampest_params_validate(&kExample) == DAMPEST_OK);
  CHECK(std::string(dampest_last_error()).empty());

  dampest_series* s = nullptr;
  CHECK(dampest_series_read_csv("/nonexistent/x.csv", &s) == DAMPEST_IO);
  CHECK(s == nullptr);
  CHECK(dampest_series_synth(&kExample, 0.0, 0.01, 1, &s) == DAMPEST_TOO_SHORT);
}

TEST_CASE("series handles") {
  dampest_series* s = nullptr;
  REQUIRE(dampest_series_synth(&kExample, 0.0, 0.005, 1001, &s) == DAMPEST_OK);
  CHECK(dampest_series_size(s) == 1001);
  CHECK(dampest_series_dt(s) == 0.005);
  CHECK(dampest_series_t0(s) == 0.0);
  std::vector<double> buf(4);
  CHECK(dampest_series_copy(s, buf.data(), buf.size()) == 4);
  CHECK(buf[0] == doctest::Approx(std::sqrt(2.0)));

  dampest_series* a = nullptr;
  dampest_series* b = nullptr;
  REQUIRE(dampest_series_add_noise(s, 0.1, 9, 2.0, &a) == DAMPEST_OK);
  REQUIRE(dampest_series_add_noise(s, 0.1, 9, 2.0, &b) == DAMPEST_OK);
  std::vector<double> xa(1001), xb(1001);
  dampest_series_copy(a, xa.data(), xa.size());
  dampest_series_copy(b, xb.data(), xb.size());
  CHECK(xa == xb);

  const double raw[] = {0.0, 1.0, 0.0, -1.0};
  dampest_series* c = nullptr;
  REQUIRE(dampest_series_from_samples(0.0, 0.25, raw, 4, &c) == DAMPEST_OK);
  CHECK(dampest_series_size(c) == 4);

  dampest_series_free(a);
  dampest_series_free(b);
  dampest_series_free(c);
  dampest_series_free(s);
  dampest_series_free(nullptr);
}

TEST_CASE("pipeline through the C interface") {
  dampest_series* s = nullptr;
  REQUIRE(dampest_series_synth(&kExample, 0.0, 0.005, 1001, &s) == DAMPEST_OK);

  dampest_options opts;
  dampest_options_init(&opts);
  opts.has_truth = 1;
  opts.truth = kExample;
  dampest_result* r = nullptr;
  REQUIRE(dampest_run_pipeline(s, &opts, &r) == DAMPEST_OK);
  CHECK(dampest_result_crossing_count(r) >= 4);
  CHECK(dampest_result_smoothing_k(r) >= 1);
  CHECK(dampest_result_period_hint(r) > 0.0);

  dampest_estimate e{};
  REQUIRE(dampest_result_estimate(r, DAMPEST_METHOD_PROPOSED, &e) == DAMPEST_OK);
  CHECK(e.period == doctest::Approx(2.0).epsilon(0.01));
  CHECK(e.has_envelope == 1);
  CHECK(e.has_errors == 1);
  CHECK(e.amplitude_error <= 0.02);
  CHECK(e.damping_error <= 0.02);
  REQUIRE(dampest_result_estimate(r, DAMPEST_METHOD_TRADITIONAL, &e) == DAMPEST_OK);
  CHECK(e.frequency == doctest::Approx(kPi).epsilon(0.05));

  char* json = nullptr;
  REQUIRE(dampest_result_report_json(r, &json) == DAMPEST_OK);
  CHECK(std::string(json).find("\"estimates\"") != std::string::npos);
  dampest_string_free(json);

  const auto dir = std::filesystem::temp_directory_path() / "dampest_capi_out";
  std::filesystem::remove_all(dir);
  REQUIRE(dampest_result_write(r, nullptr, DAMPEST_EMIT_REPORT, dir.c_str()) == DAMPEST_OK);
  CHECK(std::filesystem::exists(dir / "report.json"));
  CHECK_FALSE(std::filesystem::exists(dir / "overlay.csv"));
  std::filesystem::remove_all(dir);

  dampest_result_free(r);
  dampest_series_free(s);
}

TEST_CASE("pipeline failure carries code and stage") {
  const std::vector<double> zeros(200, 0.0);
  dampest_series* s = nullptr;
  REQUIRE(dampest_series_from_samples(0.0, 0.01, zeros.data(), zeros.size(), &s) == DAMPEST_OK);
  dampest_result* r = nullptr;
  CHECK(dampest_run_pipeline(s, nullptr, &r) == DAMPEST_NO_CROSSINGS);
  CHECK(dampest_last_error_stage() == DAMPEST_STAGE_EXTRACTION);
  CHECK(r == nullptr);
  dampest_series_free(s);
}
