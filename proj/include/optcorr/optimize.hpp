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
 * Maximization of classical correlations over measurement strategies.
 *
 * Rotated families scan the rigid rotation R_z(phi) R_y(theta) of a base
 * measurement over theta in [0, pi], phi in [0, 2 pi]. The three-parameter
 * coupling-oriented family scans the unit coupling direction n(theta, phi).
 * Each scan is a coarse grid followed by a Nelder-Mead refinement started
 * from every grid point within kSeedWindow of the grid maximum.
 */

#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "optcorr/infotheory.hpp"
#include "optcorr/measure.hpp"
#include "optcorr/rdm.hpp"

namespace optcorr {

enum class Strategy {
    ProjZ,   ///< fixed projective measurement along z
    ProjRot, ///< rotated projective measurement
    SicRot,  ///< rotated SIC POVM
    CicRot,  ///< rotated coupling-oriented POVM
    Cic3Par, ///< coupling-oriented POVM over all coupling directions
    Sic,     ///< fixed SIC POVM
    Cic,     ///< fixed coupling-oriented POVM
};

std::string_view to_string(Strategy s);
/// Inverse of to_string; throws InvalidInput on unknown names.
Strategy strategy_from_string(std::string_view name);
[[nodiscard]] bool is_optimized(Strategy s);

inline constexpr double kSeedWindow = 1e-6;
inline constexpr double kFlatTol = 1e-8;
inline constexpr double kDedupTol = 1e-4;

struct StrategySpec {
    Strategy family = Strategy::ProjRot;
    Vec3 couplings = Vec3::Zero(); ///< seed for Cic, CicRot, Cic3Par
    int n_theta = 61;
    int n_phi = 121;
    double refine_tol = 1e-8; ///< Nelder-Mead parameter tolerance

    void validate() const;
};

struct Optimum {
    double theta = 0.0;
    double phi = 0.0;
    double value = 0.0;
    Measurement measurement;
};

struct OptResult {
    Strategy family = Strategy::ProjRot;
    double c_max = 0.0;
    double grid_max = 0.0;
    std::vector<Optimum> optima; ///< sorted by (theta, phi)
    bool flat_theta = false;
    bool flat_phi = false;
    long n_evals = 0;

    [[nodiscard]] const Optimum &best() const { return optima.front(); }
};

/// Measurement of a strategy at parameter point (theta, phi).
Measurement strategy_measurement(const StrategySpec &spec, double theta, double phi);

/// C(rho_AB | measurement at (theta, phi)), evaluated through a kernel.
double strategy_value(const ConditioningKernel &kernel, const StrategySpec &spec,
                      double theta, double phi);

OptResult optimize(const DensityMatrix &rho_ab, const StrategySpec &spec);

std::map<Strategy, OptResult> optimize_all(const DensityMatrix &rho_ab,
                                           const std::vector<StrategySpec> &specs);

/// Normalized (Jx, Jy, Jz): the axis of sigma_loc = J . sigma.
Vec3 local_operator_axis(double jx, double jy, double jz);

/// Unit coupling direction of a Cic3Par optimum.
Vec3 coupling_direction(const Optimum &opt);

} // namespace optcorr
