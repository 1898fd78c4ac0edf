// Copyright 2026 The Risklab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef RISKLAB_TEXT_FORMAT_H_
#define RISKLAB_TEXT_FORMAT_H_

#include <string>
#include <string_view>

namespace risklab {

// Shortest decimal representation that round-trips to the same double.
// All emitted files use this so that re-parsing reproduces values bit-exactly.
std::string format_double(double value);

// Strict double parse; the whole token must be consumed.
// Returns false on any trailing garbage or empty input.
bool parse_double(std::string_view token, double* out);

bool parse_u64(std::string_view token, std::uint64_t* out);
bool parse_int(std::string_view token, int* out);

}  // namespace risklab

#endif  // RISKLAB_TEXT_FORMAT_H_
