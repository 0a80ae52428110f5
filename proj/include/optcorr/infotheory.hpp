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
 * Entropic functionals in bits: von Neumann entropy, mutual information,
 * measurement-conditioned entropy, classical correlations and discord.
 *
 * Measurements act on subsystem B. Only rank-one elements are accepted, for
 * which the post-measurement state of AB is rho_A^(k) (x) |b_k><b_k| and
 * S(rho_AB^(k)) reduces to S(rho_A^(k)).
 */

#pragma once

#include <array>

#include "optcorr/measure.hpp"
#include "optcorr/rdm.hpp"

namespace optcorr {

inline constexpr double kOutcomeFloor = 1e-14;

double von_neumann_entropy(const DensityMatrix &rho);

/// Entropy of a 2x2 Hermitian matrix from its closed-form eigenvalues.
double qubit_entropy(const Eigen::Matrix2cd &rho);

double mutual_information(const DensityMatrix &rho_ab);

double conditional_entropy(const DensityMatrix &rho_ab, const Measurement &m);

/// S(rho_A) - S_C(rho_AB | m), not clipped.
double classical_correlations_given(const DensityMatrix &rho_ab, const Measurement &m);

double discord_given(const DensityMatrix &rho_ab, const Measurement &m);

struct CorrelationValues {
    double s_a = 0.0;
    double s_b = 0.0;
    double s_ab = 0.0;
    double mutual = 0.0;      ///< I
    double conditional = 0.0; ///< S_C
    double classical = 0.0;   ///< C
    double discord = 0.0;     ///< Q = I - C
};

CorrelationValues correlation_values(const DensityMatrix &rho_ab, const Measurement &m);

/// Precomputed partial traces of rho_AB used for fast repeated evaluation
/// of C(rho_AB | m) over many measurements.
///
/// For B_k = c (I + a . sigma):
///   Tr_B[(I (x) B_k) rho_AB] = c (rho_A + a_x R_x + a_y R_y + a_z R_z)
/// with R_b = Tr_B[(I (x) sigma^b) rho_AB].
class ConditioningKernel {
  public:
    explicit ConditioningKernel(const DensityMatrix &rho_ab);

    [[nodiscard]] double entropy_a() const noexcept { return s_a_; }

    /// Conditional entropy of one rank-one element, p_k S(rho_A^(k)).
    [[nodiscard]] double outcome_term(double weight, const Vec3 &axis) const;

    [[nodiscard]] double conditional_entropy(const Measurement &m) const;
    [[nodiscard]] double classical_correlations(const Measurement &m) const;

  private:
    Eigen::Matrix2cd rho_a_;
    std::array<Eigen::Matrix2cd, 3> r_;
    double s_a_ = 0.0;
};

} // namespace optcorr
