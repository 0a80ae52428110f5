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

#include "optcorr/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <thread>

#include "optcorr/error.hpp"

namespace optcorr {

namespace {

constexpr double kPi = std::numbers::pi;

double circular_distance(double a, double b) {
    const double two_pi = 2.0 * kPi;
    double d = std::fmod(std::abs(a - b), two_pi);
    return std::min(d, two_pi - d);
}

struct LinearFit {
    double a = 0.0;
    double k = 0.0;
    double ss = 0.0;
};

/// Least squares of theta ~ a u + k.
LinearFit linear_fit(const std::vector<double> &u, const std::vector<double> &y) {
    const auto n = static_cast<Eigen::Index>(u.size());
    Eigen::MatrixXd design(n, 2);
    Eigen::VectorXd rhs(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        design(i, 0) = u[static_cast<std::size_t>(i)];
        design(i, 1) = 1.0;
        rhs(i) = y[static_cast<std::size_t>(i)];
    }
    const Eigen::Vector2d sol = design.colPivHouseholderQr().solve(rhs);
    const double ss = (design * sol - rhs).squaredNorm();
    return {sol(0), sol(1), ss};
}

void fill_row_error(SweepRow &row, const std::string &what) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    row.values = {nan, nan, nan, nan, nan, nan, nan};
    row.c_max = row.theta_opt = row.phi_opt = nan;
    row.sx_mid = row.sz_mid = nan;
    row.error = what;
}

std::vector<SweepRow> sweep_field(const SweepConfig &cfg, double h) {
    std::vector<SweepRow> rows;
    const ModelSpec spec = cfg.model.at(h, cfg.sites, cfg.hx);
    std::optional<OrderedGroundState> ground;
    std::string ground_error;
    try {
        ground = symmetry_broken_ground_state(spec);
    } catch (const Error &e) {
        ground_error = e.what();
    }
    for (int r : cfg.separations) {
        std::optional<PairSample> pair;
        std::string pair_error = ground_error;
        if (ground) {
            try {
                pair = pair_sample(spec, *ground, r);
            } catch (const Error &e) {
                pair_error = e.what();
            }
        }
        for (Strategy s : cfg.strategies) {
            SweepRow row;
            row.model = cfg.model.tag;
            row.sites = cfg.sites;
            row.h = h;
            row.hx = cfg.hx;
            row.r = r;
            row.strategy = s;
            if (!pair) {
                fill_row_error(row, pair_error);
                rows.push_back(std::move(row));
                continue;
            }
            try {
                const auto strat =
                    make_strategy(s, cfg.model.couplings(), cfg.n_theta, cfg.n_phi);
                OptResult res = optimize(pair->rho_ab, strat);
                const Optimum &best = res.best();
                row.values = correlation_values(pair->rho_ab, best.measurement);
                row.c_max = res.c_max;
                row.theta_opt = best.theta;
                row.phi_opt = best.phi;
                row.n_optima = static_cast<int>(res.optima.size());
                row.flat_theta = res.flat_theta;
                row.flat_phi = res.flat_phi;
                row.sx_mid = pair->sx_mid;
                row.sz_mid = pair->sz_mid;
                row.result = std::move(res);
            } catch (const Error &e) {
                fill_row_error(row, e.what());
            }
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

} // namespace

ModelSpec ModelFamily::at(double h, int sites, double hx) const {
    ModelSpec spec{jx, jy, jz, h, hx, sites};
    spec.validate();
    return spec;
}

ModelFamily model_family(std::string_view name) {
    if (name == "ising") {
        return {"ising", -1.0, 0.0, 0.0, 1e-6, 1.0};
    }
    if (name == "xyx") {
        return {"xyx", 1.0, 0.25, 1.0, 1e-6, 3.21};
    }
    if (name == "xxz") {
        return {"xxz", 1.0, 1.0, 0.5, 0.0, std::nullopt};
    }
    throw InvalidInput("unknown model '" + std::string(name) + "'");
}

ModelFamily custom_model(double jx, double jy, double jz, double hx) {
    return {"custom", jx, jy, jz, hx, std::nullopt};
}

double factorization_field(double jy, double jz) {
    const double radicand = (1.0 - jz) * (jy - jz);
    if (radicand < 0.0) {
        throw NoFactorization("factorization_field: negative radicand " +
                              std::to_string(radicand));
    }
    return 2.0 * std::sqrt(radicand) + 0.0; // + 0.0 maps a -0 radicand to +0
}

double ising_order_parameter_exact(double h) {
    if (h < 0.0) {
        throw InvalidInput("ising_order_parameter_exact: field must be non-negative");
    }
    return h < 1.0 ? std::pow(1.0 - h * h, 0.125) : 0.0;
}

PairSample pair_sample(const ModelSpec &spec, const OrderedGroundState &ground, int r) {
    const auto [a, b] = mid_chain_sites(spec.sites, r);
    PairSample out;
    out.ground = ground;
    out.site_a = a;
    out.site_b = b;
    out.rho_ab = two_site_rdm(ground.state, a, b);
    out.sx_mid = expectation_sigma(ground.state, a, Axis::X);
    out.sz_mid = expectation_sigma(ground.state, a, Axis::Z);
    return out;
}

PairSample pair_sample(const ModelSpec &spec, int r, const SolverOptions &opts) {
    return pair_sample(spec, symmetry_broken_ground_state(spec, opts), r);
}

double pair_mutual_information(const ModelSpec &spec, int r) {
    return mutual_information(pair_sample(spec, r).rho_ab);
}

FactorizationResult detect_factorization(const ModelFamily &model, int sites, double hx,
                                         double h_lo, double h_hi, int r,
                                         double bracket_tol) {
    if (!(h_lo < h_hi)) {
        throw InvalidInput("detect_factorization: need h_lo < h_hi");
    }
    if (!(bracket_tol > 0.0)) {
        throw InvalidInput("detect_factorization: bracket tolerance must be positive");
    }
    FactorizationResult out;
    auto mi = [&](double h) {
        ++out.evaluations;
        return pair_mutual_information(model.at(h, sites, hx), r);
    };
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double lo = h_lo;
    double hi = h_hi;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = mi(x1);
    double f2 = mi(x2);
    while (hi - lo > bracket_tol) {
        if (f1 <= f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = mi(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = mi(x2);
        }
    }
    out.h_min = f1 <= f2 ? x1 : x2;
    out.mutual_min = std::min(f1, f2);
    const double margin = 2.0 * bracket_tol;
    out.endpoint_minimum = out.h_min - h_lo < margin || h_hi - out.h_min < margin;
    return out;
}

FitResult fit_theta_opt(const std::vector<std::pair<double, double>> &points, int n) {
    if (points.size() < 4) {
        throw InvalidInput("fit_theta_opt: need at least 4 points");
    }
    if (n < 1) {
        throw InvalidInput("fit_theta_opt: exponent must be positive");
    }
    std::vector<double> x;
    std::vector<double> y;
    for (const auto &[m, theta] : points) {
        if (!(m >= 0.0 && m <= 1.0) || !std::isfinite(theta)) {
            throw InvalidInput("fit_theta_opt: order parameter outside [0, 1]");
        }
        x.push_back(std::pow(m, n));
        y.push_back(theta);
    }
    const auto [xmin_it, xmax_it] = std::minmax_element(x.begin(), x.end());
    const double xmax = *xmax_it;
    if (xmax - *xmin_it <= 1e-14) {
        throw FitUnderdetermined("fit_theta_opt: all order-parameter values coincide");
    }

    auto fit_at = [&](double b) {
        std::vector<double> u(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) {
            u[i] = std::sqrt(std::max(0.0, b - x[i]));
        }
        return linear_fit(u, y);
    };
    auto misfit = [&](double b) { return std::sqrt(fit_at(b).ss); };

    // log-spaced offsets above max m^n, then golden refinement between the
    // neighbours of the best grid point
    std::vector<double> grid_b{xmax};
    for (int i = 0; i <= 300; ++i) {
        grid_b.push_back(xmax + std::pow(10.0, -12.0 + 15.0 * i / 300.0));
    }
    std::size_t best = 0;
    double best_val = misfit(grid_b[0]);
    for (std::size_t i = 1; i < grid_b.size(); ++i) {
        const double v = misfit(grid_b[i]);
        if (v < best_val) {
            best_val = v;
            best = i;
        }
    }
    double lo = grid_b[best == 0 ? 0 : best - 1];
    double hi = grid_b[std::min(best + 1, grid_b.size() - 1)];
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = misfit(x1);
    double f2 = misfit(x2);
    while (hi - lo > 1e-8 * std::max(std::abs(hi), 1e-300)) {
        if (f1 <= f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = misfit(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = misfit(x2);
        }
    }
    double b = f1 <= f2 ? x1 : x2;
    if (best_val < std::min(f1, f2)) {
        b = grid_b[best];
    }
    const auto lin = fit_at(b);
    FitResult out;
    out.a = lin.a;
    out.b = b;
    out.k = lin.k;
    out.n = n;
    out.residual = std::sqrt(lin.ss / static_cast<double>(x.size()));
    return out;
}

StrategySpec make_strategy(Strategy family, const Vec3 &couplings, int n_theta, int n_phi) {
    StrategySpec spec;
    spec.family = family;
    spec.couplings = couplings;
    spec.n_theta = n_theta;
    spec.n_phi = n_phi;
    return spec;
}

double strategy_spread(const DensityMatrix &rho_ab, const std::vector<StrategySpec> &specs) {
    if (specs.size() < 2) {
        throw InvalidInput("strategy_spread: need at least two strategies");
    }
    std::vector<double> c;
    for (const auto &s : specs) {
        c.push_back(optimize(rho_ab, s).c_max);
    }
    double mean = 0.0;
    for (double v : c) {
        mean += v;
    }
    mean /= static_cast<double>(c.size());
    double spread = 0.0;
    for (double v : c) {
        spread += (v - mean) * (v - mean);
    }
    return spread;
}

std::vector<SweepRow> sweep(const SweepConfig &config) {
    if (config.fields.empty() || config.separations.empty() || config.strategies.empty()) {
        throw InvalidInput("sweep: fields, separations and strategies must be non-empty");
    }
    for (int r : config.separations) {
        mid_chain_sites(config.sites, r);
    }
    const std::size_t nfields = config.fields.size();
    std::vector<std::vector<SweepRow>> per_field(nfields);
    const auto threads = static_cast<std::size_t>(std::max(1, config.threads));
    if (threads == 1) {
        for (std::size_t i = 0; i < nfields; ++i) {
            per_field[i] = sweep_field(config, config.fields[i]);
        }
    } else {
        std::vector<std::thread> pool;
        for (std::size_t t = 0; t < threads; ++t) {
            pool.emplace_back([&, t] {
                for (std::size_t i = t; i < nfields; i += threads) {
                    per_field[i] = sweep_field(config, config.fields[i]);
                }
            });
        }
        for (auto &th : pool) {
            th.join();
        }
    }
    std::vector<SweepRow> rows;
    for (auto &chunk : per_field) {
        for (auto &row : chunk) {
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

std::vector<std::pair<double, double>>
theta_fit_points(const std::vector<SweepRow> &rows, std::optional<double> exclude_center,
                 double exclude_half_width) {
    std::vector<std::pair<double, double>> pts;
    for (const auto &row : rows) {
        if (row.strategy != Strategy::ProjRot || !row.error.empty()) {
            continue;
        }
        if (exclude_center && std::abs(row.h - *exclude_center) < exclude_half_width) {
            continue;
        }
        double theta = row.theta_opt;
        if (circular_distance(row.phi_opt, kPi) < circular_distance(row.phi_opt, 0.0)) {
            theta = kPi - theta;
        }
        pts.emplace_back(std::min(1.0, std::abs(row.sx_mid)), theta);
    }
    return pts;
}

std::optional<double> peak_field(const std::vector<SweepRow> &rows, int r) {
    std::optional<double> best_h;
    double best = -1.0;
    for (const auto &row : rows) {
        if (row.r == r && row.error.empty() && row.values.mutual > best) {
            best = row.values.mutual;
            best_h = row.h;
        }
    }
    return best_h;
}

std::vector<double> linspace(double lo, double hi, int count) {
    if (count < 1) {
        throw InvalidInput("linspace: count must be positive");
    }
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        out.push_back(count == 1 ? lo : lo + (hi - lo) * i / (count - 1));
    }
    return out;
}

} // namespace optcorr
