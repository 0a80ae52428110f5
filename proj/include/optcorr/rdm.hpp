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
 * One- and two-site reduced density matrices of a chain state, by direct
 * partial trace and by reconstruction from Pauli correlators.
 */

#pragma once

#include <array>

#include <Eigen/Dense>

#include "optcorr/spinchain.hpp"

namespace optcorr {

/// Hermitian, unit-trace, positive semidefinite 2x2 or 4x4 matrix.
/// Two-site basis order is |uu>, |ud>, |du>, |dd> with subsystem A first.
class DensityMatrix {
  public:
    DensityMatrix() = default;
    /// Validates the matrix; throws InvalidState on failure.
    explicit DensityMatrix(Eigen::MatrixXcd m);

    /// Wraps without validation. For intermediate results whose invariants
    /// follow from construction.
    static DensityMatrix unchecked(Eigen::MatrixXcd m);

    [[nodiscard]] Eigen::Index dim() const noexcept { return m_.rows(); }
    [[nodiscard]] const Eigen::MatrixXcd &matrix() const noexcept { return m_; }
    [[nodiscard]] Complex operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }

    /// Eigenvalues in ascending order.
    [[nodiscard]] Eigen::VectorXd eigenvalues() const;

  private:
    Eigen::MatrixXcd m_;
};

/// T[a][b] = <s^a_A s^b_B> for a, b in {0 = identity, x, y, z}.
struct CorrelatorTable {
    std::array<std::array<double, 4>, 4> t{};

    [[nodiscard]] double operator()(int a, int b) const { return t[a][b]; }
    double &operator()(int a, int b) { return t[a][b]; }
};

/// Pauli matrix by index 0..3 (identity, x, y, z).
Eigen::Matrix2cd pauli_matrix(int index);

DensityMatrix single_site_rdm(const StateVector &v, int site);

/// Subsystem A is site i, B is site j; requires i < j.
DensityMatrix two_site_rdm(const StateVector &v, int i, int j);

CorrelatorTable pauli_correlators(const StateVector &v, int i, int j);

/// rho = 1/4 sum_ab T[a][b] s^a (x) s^b. Throws InconsistentCorrelators when
/// the result has an eigenvalue below -1e-8.
DensityMatrix rdm_from_correlators(const CorrelatorTable &t);

/// Correlators of a 4x4 state (inverse of rdm_from_correlators).
CorrelatorTable correlators_of(const DensityMatrix &rho);

/// Tr_B of a 4x4 state.
DensityMatrix trace_out_b(const DensityMatrix &rho_ab);
/// Tr_A of a 4x4 state.
DensityMatrix trace_out_a(const DensityMatrix &rho_ab);

} // namespace optcorr
