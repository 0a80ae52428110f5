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
 * Command-line front end. Subcommands: sweep, point, optimize, factorize,
 * fit. Options may also come from a TOML/INI config file (--config);
 * flags given on the command line take precedence.
 */

#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "optcorr/analysis.hpp"

namespace optcorr {

struct Grid {
    double lo = 0.0;
    double hi = 0.0;
    int count = 1;
};

/// Parses "lo:hi:count" (endpoints inclusive) or a single value.
Grid parse_grid(const std::string &text);
/// Parses "lo:hi".
std::pair<double, double> parse_bracket(const std::string &text);

struct RunConfig {
    std::string subcommand;
    std::string model = "ising";
    std::optional<double> jx, jy, jz;
    int sites = 14;
    std::optional<double> hx;
    std::string fields = "0:2:21";
    std::vector<int> separations{1};
    std::vector<std::string> strategies{"proj-z", "proj-rot", "sic-rot", "cic-rot", "cic-3par"};
    int n_theta = 61;
    int n_phi = 121;
    std::string output = "-";
    std::string format = "csv";
    std::string bracket;
    std::string input;
    int exponent = 8;
    int threads = 1;

    [[nodiscard]] ModelFamily model_family() const;
    [[nodiscard]] double bias() const;
};

/// Runs the CLI. Returns 0 on success, 1 on compute errors and 2 on
/// configuration errors. Diagnostics go to `err`.
int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

} // namespace optcorr
