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

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dampest {

enum class ErrorCode {
  invalid_argument,
  parse,
  non_uniform,
  too_short,
  io,
  no_crossings,
  insufficient_points,
  no_envelope_points,
  no_valid_candidates,
};

/// Pipeline stage an error was raised in. `none` for direct library calls.
enum class Stage { none, input, smoothing, extraction, estimation };

std::string_view to_string(ErrorCode code) noexcept;
std::string_view to_string(Stage stage) noexcept;

/// The single exception type thrown by the library.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, Stage stage = Stage::none)
      : std::runtime_error(message), code_(code), stage_(stage) {}

  ErrorCode code() const noexcept { return code_; }
  Stage stage() const noexcept { return stage_; }

  /// Copy of this error re-tagged with the stage it surfaced from.
  Error at_stage(Stage stage) const { return Error(code_, what(), stage); }

 private:
  ErrorCode code_;
  Stage stage_;
};

}  // namespace dampest
