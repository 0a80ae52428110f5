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

#include "optcorr/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <sstream>
#include <vector>

#include "optcorr/error.hpp"

namespace optcorr {

namespace {

constexpr const char *kColumns[] = {
    "model", "L",     "h",       "hx",       "r",        "strategy",   "S_A",
    "S_B",   "S_AB",  "I",       "S_C",      "C",        "Q",          "C_max",
    "theta_opt", "phi_opt", "n_optima", "flat_theta", "flat_phi", "sx_mid", "sz_mid"};
constexpr std::size_t kNumColumns = sizeof(kColumns) / sizeof(kColumns[0]);

double parse_double(const std::string &s) {
    if (s == "nan") {
        return std::numeric_limits<double>::quiet_NaN();
    }
    char *end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0') {
        throw InvalidInput("csv: bad number '" + s + "'");
    }
    return v;
}

int parse_int(const std::string &s) {
    char *end = nullptr;
    const long v = std::strtol(s.c_str(), &end, 10);
    if (end == s.c_str() || *end != '\0') {
        throw InvalidInput("csv: bad integer '" + s + "'");
    }
    return static_cast<int>(v);
}

bool parse_bool(const std::string &s) {
    if (s == "0" || s == "1") {
        return s == "1";
    }
    throw InvalidInput("csv: bad boolean '" + s + "'");
}

nlohmann::json number(double x) {
    if (!std::isfinite(x)) {
        return nullptr;
    }
    return round12(x);
}

} // namespace

std::string format_double(double x) {
    if (std::isnan(x)) {
        return "nan";
    }
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.11e", x);
    return buf;
}

double round12(double x) {
    if (!std::isfinite(x)) {
        return x;
    }
    return std::strtod(format_double(x).c_str(), nullptr);
}

std::string csv_header() {
    std::string out;
    for (std::size_t i = 0; i < kNumColumns; ++i) {
        out += (i ? "," : "");
        out += kColumns[i];
    }
    return out;
}

std::string csv_row(const SweepRow &row) {
    std::ostringstream os;
    const auto &v = row.values;
    os << row.model << ',' << row.sites << ',' << format_double(row.h) << ','
       << format_double(row.hx) << ',' << row.r << ',' << to_string(row.strategy) << ','
       << format_double(v.s_a) << ',' << format_double(v.s_b) << ',' << format_double(v.s_ab)
       << ',' << format_double(v.mutual) << ',' << format_double(v.conditional) << ','
       << format_double(v.classical) << ',' << format_double(v.discord) << ','
       << format_double(row.c_max) << ',' << format_double(row.theta_opt) << ','
       << format_double(row.phi_opt) << ',' << row.n_optima << ','
       << (row.flat_theta ? 1 : 0) << ',' << (row.flat_phi ? 1 : 0) << ','
       << format_double(row.sx_mid) << ',' << format_double(row.sz_mid);
    return os.str();
}

SweepRow parse_csv_row(std::string_view line) {
    std::vector<std::string> f;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            f.push_back(cur);
            cur.clear();
        } else if (c != '\r' && c != '\n') {
            cur += c;
        }
    }
    f.push_back(cur);
    if (f.size() != kNumColumns) {
        throw InvalidInput("csv: expected " + std::to_string(kNumColumns) + " fields, got " +
                           std::to_string(f.size()));
    }
    SweepRow row;
    row.model = f[0];
    row.sites = parse_int(f[1]);
    row.h = parse_double(f[2]);
    row.hx = parse_double(f[3]);
    row.r = parse_int(f[4]);
    row.strategy = strategy_from_string(f[5]);
    row.values = {parse_double(f[6]),  parse_double(f[7]),  parse_double(f[8]),
                  parse_double(f[9]),  parse_double(f[10]), parse_double(f[11]),
                  parse_double(f[12])};
    row.c_max = parse_double(f[13]);
    row.theta_opt = parse_double(f[14]);
    row.phi_opt = parse_double(f[15]);
    row.n_optima = parse_int(f[16]);
    row.flat_theta = parse_bool(f[17]);
    row.flat_phi = parse_bool(f[18]);
    row.sx_mid = parse_double(f[19]);
    row.sz_mid = parse_double(f[20]);
    return row;
}

nlohmann::json to_json(const Measurement &m) {
    nlohmann::json j;
    j["family"] = std::string(to_string(m.label().family));
    nlohmann::json params = nlohmann::json::array();
    for (double p : m.label().params) {
        params.push_back(number(p));
    }
    j["params"] = params;
    nlohmann::json rots = nlohmann::json::array();
    for (const auto &[t, p] : m.label().rotations) {
        rots.push_back({number(t), number(p)});
    }
    j["rotations"] = rots;
    nlohmann::json el = nlohmann::json::array();
    for (const auto &e : m.elements()) {
        el.push_back({{"c", number(e.weight)},
                      {"a", {number(e.axis.x()), number(e.axis.y()), number(e.axis.z())}}});
    }
    j["elements"] = el;
    return j;
}

nlohmann::json to_json(const OptResult &r) {
    nlohmann::json j;
    j["family"] = std::string(to_string(r.family));
    j["C_max"] = number(r.c_max);
    j["grid_max"] = number(r.grid_max);
    j["flat_theta"] = r.flat_theta;
    j["flat_phi"] = r.flat_phi;
    j["n_evals"] = r.n_evals;
    nlohmann::json optima = nlohmann::json::array();
    for (const auto &o : r.optima) {
        optima.push_back({{"theta", number(o.theta)},
                          {"phi", number(o.phi)},
                          {"C", number(o.value)},
                          {"measurement", to_json(o.measurement)}});
    }
    j["optima"] = optima;
    return j;
}

nlohmann::json to_json(const SweepRow &row) {
    const auto &v = row.values;
    nlohmann::json j = {
        {"model", row.model},
        {"L", row.sites},
        {"h", number(row.h)},
        {"hx", number(row.hx)},
        {"r", row.r},
        {"strategy", std::string(to_string(row.strategy))},
        {"S_A", number(v.s_a)},
        {"S_B", number(v.s_b)},
        {"S_AB", number(v.s_ab)},
        {"I", number(v.mutual)},
        {"S_C", number(v.conditional)},
        {"C", number(v.classical)},
        {"Q", number(v.discord)},
        {"C_max", number(row.c_max)},
        {"theta_opt", number(row.theta_opt)},
        {"phi_opt", number(row.phi_opt)},
        {"n_optima", row.n_optima},
        {"flat_theta", row.flat_theta},
        {"flat_phi", row.flat_phi},
        {"sx_mid", number(row.sx_mid)},
        {"sz_mid", number(row.sz_mid)},
    };
    if (!row.error.empty()) {
        j["error"] = row.error;
    }
    if (row.result) {
        j["result"] = to_json(*row.result);
    }
    return j;
}

} // namespace optcorr
