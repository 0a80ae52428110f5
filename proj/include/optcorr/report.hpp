// Copyright 2026 The optcorr Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file
 * Machine-readable output: fixed-column CSV rows and JSON-lines records.
 * Floating-point values use decimal scientific notation with 12
 * significant digits.
 */

#pragma once

#include <string>
#include <string_view>

#include "json.hpp"

#include "optcorr/analysis.hpp"
#include "optcorr/measure.hpp"
#include "optcorr/optimize.hpp"

namespace optcorr {

/// "%.11e", or "nan".
std::string format_double(double x);

/// Value rounded to 12 significant digits (what format_double prints).
double round12(double x);

std::string csv_header();
std::string csv_row(const SweepRow &row);
/// Parses a line produced by csv_row. Throws InvalidInput on malformed input.
SweepRow parse_csv_row(std::string_view line);

nlohmann::json to_json(const Measurement &m);
nlohmann::json to_json(const OptResult &r);
/// Row fields plus the full optimizer result when present.
nlohmann::json to_json(const SweepRow &row);

} // namespace optcorr
