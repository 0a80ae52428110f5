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
 * Single-qubit measurement families parameterized on the Bloch sphere.
 *
 * Every element is B_k = c_k (I + a_k . sigma). The families built here are
 * all rank one (|a_k| = 1): projective measurements, the tetrahedral SIC
 * POVM and the coupling-oriented POVM whose vectors follow the exchange
 * couplings (Jx, Jy, Jz) of the chain.
 */

#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace optcorr {

using Vec3 = Eigen::Vector3d;

enum class MeasurementFamily { Proj, Sic, Cic, Cic3 };

std::string_view to_string(MeasurementFamily f);

struct MeasurementElement {
    double weight = 0.0; ///< c_k
    Vec3 axis = Vec3::Zero(); ///< a_k
};

/// How a measurement was generated: family, generator parameters, and the
/// rigid rotations applied since, in order.
struct MeasurementLabel {
    MeasurementFamily family = MeasurementFamily::Proj;
    std::vector<double> params;
    std::vector<std::pair<double, double>> rotations;
};

class Measurement {
  public:
    Measurement(std::vector<MeasurementElement> elements, MeasurementLabel label);

    [[nodiscard]] const std::vector<MeasurementElement> &elements() const noexcept {
        return elements_;
    }
    [[nodiscard]] const MeasurementLabel &label() const noexcept { return label_; }
    [[nodiscard]] std::size_t size() const noexcept { return elements_.size(); }

    /// B_k as a 2x2 matrix.
    [[nodiscard]] Eigen::Matrix2cd element_matrix(std::size_t k) const;

    /// True when every |a_k| is one within `tol`.
    [[nodiscard]] bool is_rank1(double tol = 1e-8) const;

  private:
    std::vector<MeasurementElement> elements_;
    MeasurementLabel label_;
};

/// Bloch vector (sin t cos p, sin t sin p, cos t).
Vec3 bloch_vector(double theta, double phi);

/// Active rotation R_z(phi) R_y(theta).
Eigen::Matrix3d rotation_matrix(double theta, double phi);

/// {1/2 (I +- n(theta, phi) . sigma)}.
Measurement projective(double theta, double phi);

/// Four elements with weight 1/4 and vectors
/// a1 = n (Jx, Jy, Jz), a2 = n (Jx, -Jy, -Jz), a3 = n (-Jx, Jy, -Jz),
/// a4 = n (-Jx, -Jy, Jz), n = 1 / |J|. Coinciding vectors are kept.
Measurement cic_povm(double jx, double jy, double jz);

/// cic_povm(1, 1, 1): a regular tetrahedron.
Measurement sic_povm();

/// Coupling-oriented POVM whose coupling direction is n(theta_j, phi_j).
Measurement cic_povm_direction(double theta_j, double phi_j);

Measurement rotate(const Measurement &m, double theta, double phi);

struct Rank1State {
    double theta = 0.0; ///< [0, pi]
    double phi = 0.0;   ///< [0, 2 pi)
    double weight = 0.0;
};

/// Bloch angles of each element. Throws UnsupportedMeasurement unless every
/// element is rank one within 1e-8.
std::vector<Rank1State> rank1_decomposition(const Measurement &m);

/// Bloch angles of a unit vector, phi in [0, 2 pi) and 0 at the poles.
std::pair<double, double> bloch_angles(const Vec3 &v);

/// Same elements up to ordering, vectors and weights within `tol`.
bool same_elements(const Measurement &a, const Measurement &b, double tol);

} // namespace optcorr
