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
 * Physics drivers: model presets, field sweeps, factorization detection,
 * the optimal-angle fit and the spread of optimal correlations across
 * strategies.
 */

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "optcorr/infotheory.hpp"
#include "optcorr/optimize.hpp"
#include "optcorr/rdm.hpp"
#include "optcorr/spinchain.hpp"

namespace optcorr {

/// Couplings of a named model, in units of |Jx| = 1.
struct ModelFamily {
    std::string tag = "custom";
    double jx = -1.0;
    double jy = 0.0;
    double jz = 0.0;
    double default_hx = 0.0;
    std::optional<double> critical_field;

    [[nodiscard]] ModelSpec at(double h, int sites, double hx) const;
    [[nodiscard]] Vec3 couplings() const { return {jx, jy, jz}; }
};

/// "ising": Jx = -1, Jy = Jz = 0, bias 1e-6, h_c = 1.
/// "xyx":   Jx = Jz = 1, Jy = 1/4, bias 1e-6, h_c ~ 3.21.
/// "xxz":   Jx = Jy = 1, Jz = 1/2, no bias.
ModelFamily model_family(std::string_view name);
ModelFamily custom_model(double jx, double jy, double jz, double hx = 0.0);

/// 2 sqrt((1 - Jz)(Jy - Jz)); throws NoFactorization for a negative radicand.
double factorization_field(double jy, double jz);

/// |1 - h^2|^(1/8) for h < 1, zero otherwise.
double ising_order_parameter_exact(double h);

/// Ground state of one field value together with the mid-chain pair state.
struct PairSample {
    OrderedGroundState ground;
    int site_a = 0;
    int site_b = 0;
    DensityMatrix rho_ab;
    double sx_mid = 0.0;
    double sz_mid = 0.0;
};

PairSample pair_sample(const ModelSpec &spec, int r, const SolverOptions &opts = {});
/// Re-uses a computed ground state for another separation.
PairSample pair_sample(const ModelSpec &spec, const OrderedGroundState &ground, int r);

/// Mutual information of the mid-chain pair at separation r.
double pair_mutual_information(const ModelSpec &spec, int r);

struct FactorizationResult {
    double h_min = 0.0;
    double mutual_min = 0.0;
    bool endpoint_minimum = false; ///< minimum not separated from the bracket ends
    int evaluations = 0;
};

/// Golden-section minimization of the mid-chain mutual information over
/// h in [h_lo, h_hi] until the bracket is narrower than `bracket_tol`.
FactorizationResult detect_factorization(const ModelFamily &model, int sites, double hx,
                                         double h_lo, double h_hi, int r,
                                         double bracket_tol = 1e-4);

struct FitResult {
    double a = 0.0;
    double b = 0.0;
    double k = 0.0;
    int n = 8;
    double residual = 0.0; ///< root-mean-square misfit
};

/// Least-squares fit of theta = A sqrt(B - m^n) + k over points (m, theta).
FitResult fit_theta_opt(const std::vector<std::pair<double, double>> &points, int n = 8);

/// Sum over strategies of (C_max - mean C_max)^2.
double strategy_spread(const DensityMatrix &rho_ab, const std::vector<StrategySpec> &specs);

/// StrategySpec for a family with the model couplings as CIC seed.
StrategySpec make_strategy(Strategy family, const Vec3 &couplings, int n_theta = 61,
                           int n_phi = 121);

struct SweepRow {
    std::string model;
    int sites = 0;
    double h = 0.0;
    double hx = 0.0;
    int r = 1;
    Strategy strategy = Strategy::ProjZ;
    CorrelationValues values;
    double c_max = 0.0;
    double theta_opt = 0.0;
    double phi_opt = 0.0;
    int n_optima = 0;
    bool flat_theta = false;
    bool flat_phi = false;
    double sx_mid = 0.0;
    double sz_mid = 0.0;
    std::string error;              ///< empty unless the row failed
    std::optional<OptResult> result; ///< full optimizer output
};

struct SweepConfig {
    ModelFamily model;
    std::vector<double> fields;
    double hx = 0.0;
    int sites = 14;
    std::vector<int> separations{1};
    std::vector<Strategy> strategies;
    int n_theta = 61;
    int n_phi = 121;
    int threads = 1;
};

/// Rows ordered by field, then separation, then strategy. A failing field or
/// row is reported in SweepRow::error and the sweep continues.
std::vector<SweepRow> sweep(const SweepConfig &config);

/// Points (|<sx>|, theta_opt) from proj-rot rows, with theta mapped onto the
/// phi = 0 branch of the antipodal pair. Rows whose field lies within
/// `exclude_half_width` of `exclude_center` are dropped.
std::vector<std::pair<double, double>>
theta_fit_points(const std::vector<SweepRow> &rows, std::optional<double> exclude_center,
                 double exclude_half_width);

/// Field of maximal mutual information among rows at separation r.
std::optional<double> peak_field(const std::vector<SweepRow> &rows, int r);

/// Evenly spaced values lo..hi inclusive.
std::vector<double> linspace(double lo, double hi, int count);

} // namespace optcorr
