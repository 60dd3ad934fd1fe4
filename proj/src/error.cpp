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

namespace dampest {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_argument: return "InvalidArgument";
    case ErrorCode::parse: return "Parse";
    case ErrorCode::non_uniform: return "NonUniform";
    case ErrorCode::too_short: return "TooShort";
    case ErrorCode::io: return "Io";
    case ErrorCode::no_crossings: return "NoCrossings";
    case ErrorCode::insufficient_points: return "InsufficientPoints";
    case ErrorCode::no_envelope_points: return "NoEnvelopePoints";
    case ErrorCode::no_valid_candidates: return "NoValidCandidates";
  }
  return "Unknown";
}

std::string_view to_string(Stage stage) noexcept {
  switch (stage) {
    case Stage::none: return "none";
    case Stage::input: return "input";
    case Stage::smoothing: return "smoothing";
    case Stage::extraction: return "extraction";
    case Stage::estimation: return "estimation";
  }
  return "unknown";
}

}  // namespace dampest
