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

#include "optcorr/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "optcorr/error.hpp"
#include "optcorr/report.hpp"

namespace optcorr {

namespace {

/// Configuration problems, reported with exit status 2.
class ConfigError : public Error {
  public:
    using Error::Error;
};

double to_double(const std::string &s) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &pos);
    } catch (const std::exception &) {
        throw ConfigError("bad number '" + s + "'");
    }
    if (pos != s.size()) {
        throw ConfigError("bad number '" + s + "'");
    }
    return v;
}

std::vector<std::string> split(const std::string &s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string part;
    while (std::getline(ss, part, sep)) {
        out.push_back(part);
    }
    return out;
}

void add_model_options(CLI::App *sub, RunConfig &cfg) {
    sub->add_option("--model", cfg.model, "ising | xyx | xxz | custom")->capture_default_str();
    sub->add_option("--jx", cfg.jx, "Jx for --model custom");
    sub->add_option("--jy", cfg.jy, "Jy for --model custom");
    sub->add_option("--jz", cfg.jz, "Jz for --model custom");
    sub->add_option("--L", cfg.sites, "chain length")->capture_default_str();
    sub->add_option("--hx", cfg.hx, "longitudinal bias (default 1e-6 for ising/xyx, 0 otherwise)");
}

void add_strategy_options(CLI::App *sub, RunConfig &cfg) {
    sub->add_option("--r", cfg.separations, "site separations")->delimiter(',');
    sub->add_option("--strategies,--strategy", cfg.strategies,
                    "proj-z, proj-rot, sic, sic-rot, cic, cic-rot, cic-3par")
        ->delimiter(',');
    sub->add_option("--ntheta", cfg.n_theta, "theta grid points")->capture_default_str();
    sub->add_option("--nphi", cfg.n_phi, "phi grid points")->capture_default_str();
}

void add_output_options(CLI::App *sub, RunConfig &cfg) {
    sub->add_option("--output,-o", cfg.output, "output file, - for stdout")->capture_default_str();
    sub->add_option("--format", cfg.format, "csv | jsonl")
        ->check(CLI::IsMember({"csv", "jsonl"}))
        ->capture_default_str();
}

SweepConfig sweep_config(const RunConfig &cfg, std::vector<double> fields) {
    SweepConfig sc;
    sc.model = cfg.model_family();
    sc.fields = std::move(fields);
    sc.hx = cfg.bias();
    sc.sites = cfg.sites;
    sc.separations = cfg.separations;
    for (const auto &name : cfg.strategies) {
        try {
            sc.strategies.push_back(strategy_from_string(name));
        } catch (const InvalidInput &e) {
            throw ConfigError(e.what());
        }
    }
    sc.n_theta = cfg.n_theta;
    sc.n_phi = cfg.n_phi;
    sc.threads = cfg.threads;
    if (sc.strategies.empty() || sc.separations.empty()) {
        throw ConfigError("strategy and separation lists must be non-empty");
    }
    try {
        make_strategy(sc.strategies.front(), sc.model.couplings(), sc.n_theta, sc.n_phi)
            .validate();
        sc.model.at(sc.fields.front(), sc.sites, sc.hx).validate();
        for (int r : sc.separations) {
            mid_chain_sites(sc.sites, r);
        }
    } catch (const InvalidInput &e) {
        throw ConfigError(e.what());
    }
    return sc;
}

/// Writes rows; returns 1 and names the first failing row, else 0.
int emit_rows(const std::vector<SweepRow> &rows, const RunConfig &cfg, std::ostream &out,
              std::ostream &err) {
    int status = 0;
    if (cfg.format == "csv") {
        out << csv_header() << '\n';
    }
    for (const auto &row : rows) {
        if (cfg.format == "csv") {
            out << csv_row(row) << '\n';
        } else {
            out << to_json(row).dump() << '\n';
        }
        if (!row.error.empty() && status == 0) {
            err << "error: row h=" << format_double(row.h) << " r=" << row.r
                << " strategy=" << to_string(row.strategy) << ": " << row.error << '\n';
            status = 1;
        }
    }
    return status;
}

std::vector<std::pair<double, double>> read_fit_points(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open fit input '" + path + "'");
    }
    std::vector<std::pair<double, double>> pts;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') {
            continue;
        }
        const auto f = split(line, ',');
        if (f.size() != 2) {
            throw ConfigError("fit input: expected 'm,theta' per line");
        }
        try {
            pts.emplace_back(to_double(f[0]), to_double(f[1]));
        } catch (const ConfigError &) {
            if (pts.empty()) {
                continue; // header line
            }
            throw;
        }
    }
    return pts;
}

int dispatch(const RunConfig &cfg, std::ostream &out, std::ostream &err) {
    if (cfg.subcommand == "sweep" || cfg.subcommand == "point") {
        const Grid g = parse_grid(cfg.fields);
        const auto rows = sweep(sweep_config(cfg, linspace(g.lo, g.hi, g.count)));
        return emit_rows(rows, cfg, out, err);
    }
    if (cfg.subcommand == "optimize") {
        const Grid g = parse_grid(cfg.fields);
        const auto rows = sweep(sweep_config(cfg, linspace(g.lo, g.hi, g.count)));
        RunConfig json_cfg = cfg;
        json_cfg.format = "jsonl";
        return emit_rows(rows, json_cfg, out, err);
    }
    if (cfg.subcommand == "factorize") {
        if (cfg.bracket.empty()) {
            throw ConfigError("factorize needs --bracket lo:hi");
        }
        const auto [lo, hi] = parse_bracket(cfg.bracket);
        const ModelFamily model = cfg.model_family();
        const int r = cfg.separations.empty() ? 1 : cfg.separations.front();
        FactorizationResult res;
        try {
            model.at(lo, cfg.sites, cfg.bias()).validate();
            mid_chain_sites(cfg.sites, r);
        } catch (const InvalidInput &e) {
            throw ConfigError(e.what());
        }
        res = detect_factorization(model, cfg.sites, cfg.bias(), lo, hi, r);
        nlohmann::json j = {{"model", model.tag},
                            {"L", cfg.sites},
                            {"hx", round12(cfg.bias())},
                            {"r", r},
                            {"bracket", {round12(lo), round12(hi)}},
                            {"h_min", round12(res.h_min)},
                            {"I_min", round12(res.mutual_min)},
                            {"endpoint_minimum", res.endpoint_minimum},
                            {"evaluations", res.evaluations}};
        try {
            j["h_f_formula"] = round12(factorization_field(model.jy, model.jz));
        } catch (const NoFactorization &) {
            j["h_f_formula"] = nullptr;
        }
        out << j.dump() << '\n';
        if (res.endpoint_minimum) {
            err << "warning: minimum at the bracket edge, bracket may not be unimodal\n";
        }
        return 0;
    }
    if (cfg.subcommand == "fit") {
        std::vector<std::pair<double, double>> pts;
        nlohmann::json j;
        if (!cfg.input.empty()) {
            pts = read_fit_points(cfg.input);
            j["source"] = cfg.input;
        } else {
            const Grid g = parse_grid(cfg.fields);
            RunConfig sweep_cfg = cfg;
            sweep_cfg.strategies = {"proj-rot"};
            sweep_cfg.separations = {1};
            const auto fields = linspace(g.lo, g.hi, g.count);
            const auto rows = sweep(sweep_config(sweep_cfg, fields));
            for (const auto &row : rows) {
                if (!row.error.empty()) {
                    err << "error: row h=" << format_double(row.h) << ": " << row.error << '\n';
                    return 1;
                }
            }
            const double step = g.count > 1 ? (g.hi - g.lo) / (g.count - 1) : 0.0;
            pts = theta_fit_points(rows, cfg.model_family().critical_field, 0.5 * step);
            j["source"] = cfg.model_family().tag;
        }
        const FitResult fit = fit_theta_opt(pts, cfg.exponent);
        j["A"] = round12(fit.a);
        j["B"] = round12(fit.b);
        j["k"] = round12(fit.k);
        j["n"] = fit.n;
        j["residual"] = round12(fit.residual);
        j["points"] = pts.size();
        out << j.dump() << '\n';
        return 0;
    }
    throw ConfigError("unknown subcommand '" + cfg.subcommand + "'");
}

} // namespace

Grid parse_grid(const std::string &text) {
    const auto parts = split(text, ':');
    if (parts.size() == 1) {
        const double v = to_double(parts[0]);
        return {v, v, 1};
    }
    if (parts.size() != 3) {
        throw ConfigError("grid '" + text + "' is not lo:hi:count");
    }
    Grid g{to_double(parts[0]), to_double(parts[1]), 0};
    const double count = to_double(parts[2]);
    if (count < 1 || count != static_cast<int>(count)) {
        throw ConfigError("grid '" + text + "' needs a positive integer count");
    }
    g.count = static_cast<int>(count);
    if (g.count > 1 && !(g.lo < g.hi)) {
        throw ConfigError("grid '" + text + "' needs lo < hi");
    }
    return g;
}

std::pair<double, double> parse_bracket(const std::string &text) {
    const auto parts = split(text, ':');
    if (parts.size() != 2) {
        throw ConfigError("bracket '" + text + "' is not lo:hi");
    }
    const double lo = to_double(parts[0]);
    const double hi = to_double(parts[1]);
    if (!(lo < hi)) {
        throw ConfigError("bracket '" + text + "' needs lo < hi");
    }
    return {lo, hi};
}

ModelFamily RunConfig::model_family() const {
    if (model == "custom") {
        if (!jx || !jy || !jz) {
            throw ConfigError("--model custom needs --jx, --jy and --jz");
        }
        return custom_model(*jx, *jy, *jz, hx.value_or(0.0));
    }
    try {
        return optcorr::model_family(model);
    } catch (const InvalidInput &e) {
        throw ConfigError(e.what());
    }
}

double RunConfig::bias() const { return hx.value_or(model_family().default_hx); }

int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    RunConfig cfg;
    if (const char *env = std::getenv("OPTCORR_THREADS")) {
        cfg.threads = std::max(1, std::atoi(env));
    }

    CLI::App app{"Optimal classical correlations between two spins of an XYZ chain"};
    app.set_config("--config", "", "TOML/INI file with option values");
    app.set_help_flag("--help", "print help");
    app.require_subcommand(1);

    auto *sweep_cmd = app.add_subcommand("sweep", "rows over a field grid");
    add_model_options(sweep_cmd, cfg);
    sweep_cmd->add_option("--h", cfg.fields, "field grid lo:hi:count")->capture_default_str();
    add_strategy_options(sweep_cmd, cfg);
    add_output_options(sweep_cmd, cfg);

    auto *point_cmd = app.add_subcommand("point", "rows at a single field");
    add_model_options(point_cmd, cfg);
    point_cmd->add_option("--h", cfg.fields, "field value")->required();
    add_strategy_options(point_cmd, cfg);
    add_output_options(point_cmd, cfg);

    auto *opt_cmd = app.add_subcommand("optimize", "full optimizer output as JSON lines");
    add_model_options(opt_cmd, cfg);
    opt_cmd->add_option("--h", cfg.fields, "field value or grid")->required();
    add_strategy_options(opt_cmd, cfg);
    opt_cmd->add_option("--output,-o", cfg.output, "output file, - for stdout");

    auto *fact_cmd = app.add_subcommand("factorize", "locate the minimum of mutual information");
    add_model_options(fact_cmd, cfg);
    fact_cmd->add_option("--bracket", cfg.bracket, "field bracket lo:hi")->required();
    fact_cmd->add_option("--r", cfg.separations, "site separation")->delimiter(',');
    fact_cmd->add_option("--output,-o", cfg.output, "output file, - for stdout");

    auto *fit_cmd = app.add_subcommand("fit", "fit theta_opt = A sqrt(B - m^n) + k");
    add_model_options(fit_cmd, cfg);
    fit_cmd->add_option("--h", cfg.fields, "field grid lo:hi:count for computed points");
    fit_cmd->add_option("--input", cfg.input, "CSV file of m,theta pairs");
    fit_cmd->add_option("--n", cfg.exponent, "exponent n")->capture_default_str();
    fit_cmd->add_option("--ntheta", cfg.n_theta, "theta grid points");
    fit_cmd->add_option("--nphi", cfg.n_phi, "phi grid points");
    fit_cmd->add_option("--output,-o", cfg.output, "output file, - for stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp &e) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
    for (auto *sub : app.get_subcommands()) {
        cfg.subcommand = sub->get_name();
    }

    try {
        std::ofstream file;
        std::ostream *sink = &out;
        if (cfg.output != "-") {
            file.open(cfg.output);
            if (!file) {
                throw ConfigError("cannot write '" + cfg.output + "'");
            }
            sink = &file;
        }
        return dispatch(cfg, *sink, err);
    } catch (const ConfigError &e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const Error &e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

} // namespace optcorr
