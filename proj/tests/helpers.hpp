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

// Fixtures shared by the unit tests: canonical two-qubit states and seeded random
// matrices. Everything here is built from first principles (no library calls
// beyond the type constructors) so it can serve as an independent reference.
#pragma once

#include <cmath>
#include <complex>
#include <random>

#include <Eigen/Dense>

#include "optcorr/rdm.hpp"
#include "optcorr/spinchain.hpp"

namespace testing {

using optcorr::Complex;
using optcorr::DensityMatrix;
using optcorr::StateVector;

inline constexpr double kPi = 3.14159265358979323846;

// Two-qubit kets in the (2*b_A + b_B) ordering, 0 = up.
inline Eigen::Vector4cd ket(int b_a, int b_b) {
    Eigen::Vector4cd v = Eigen::Vector4cd::Zero();
    v(2 * b_a + b_b) = 1.0;
    return v;
}

inline DensityMatrix projector(const Eigen::Vector4cd &v) {
    const Eigen::Vector4cd n = v.normalized();
    return DensityMatrix(n * n.adjoint());
}

inline DensityMatrix bell_phi_plus() { return projector(ket(0, 0) + ket(1, 1)); }
inline DensityMatrix singlet_rho() { return projector(ket(0, 1) - ket(1, 0)); }

inline DensityMatrix classical_mixture() {
    Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
    m(0, 0) = 0.5;
    m(3, 3) = 0.5;
    return DensityMatrix(m);
}

inline DensityMatrix maximally_mixed() { return DensityMatrix(Eigen::Matrix4cd::Identity() / 4.0); }

inline Eigen::Matrix4cd kron(const Eigen::Matrix2cd &a, const Eigen::Matrix2cd &b) {
    Eigen::Matrix4cd out;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
        }
    }
    return out;
}

class Rng {
  public:
    explicit Rng(unsigned seed) : gen_(seed) {}

    double uniform(double lo = 0.0, double hi = 1.0) {
        return std::uniform_real_distribution<double>(lo, hi)(gen_);
    }
    double normal() { return std::normal_distribution<double>(0.0, 1.0)(gen_); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen_); }

    Eigen::MatrixXcd ginibre(int n, int m) {
        Eigen::MatrixXcd g(n, m);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < m; ++j) {
                g(i, j) = Complex(normal(), normal());
            }
        }
        return g;
    }

    // Random mixed state of the given rank (full rank by default).
    Eigen::MatrixXcd density(int n, int rank = -1) {
        const Eigen::MatrixXcd g = ginibre(n, rank < 0 ? n : rank);
        Eigen::MatrixXcd rho = g * g.adjoint();
        rho /= rho.trace().real();
        return 0.5 * (rho + rho.adjoint());
    }

    Eigen::MatrixXcd unitary(int n) {
        Eigen::HouseholderQR<Eigen::MatrixXcd> qr(ginibre(n, n));
        return qr.householderQ();
    }

    std::vector<Complex> amplitudes(std::size_t n) {
        std::vector<Complex> v(n);
        for (auto &z : v) {
            z = Complex(normal(), normal());
        }
        return v;
    }

  private:
    std::mt19937_64 gen_;
};

inline double max_abs(const Eigen::MatrixXcd &m) { return m.cwiseAbs().maxCoeff(); }

} // namespace testing
