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

#include "optcorr/rdm.hpp"

#include <cmath>
#include <string>

#include "optcorr/error.hpp"

namespace optcorr {

namespace {

constexpr double kHermTol = 1e-12;
constexpr double kTraceTol = 1e-12;
constexpr double kPsdTol = 1e-10;
constexpr double kImagTol = 1e-10;

void check_site(const StateVector &v, int site, const char *who) {
    if (site < 0 || site >= v.sites()) {
        throw InvalidInput(std::string(who) + ": site " + std::to_string(site) +
                           " out of range");
    }
}

void check_pair(const StateVector &v, int i, int j, const char *who) {
    check_site(v, i, who);
    check_site(v, j, who);
    if (i >= j) {
        throw InvalidInput(std::string(who) + ": need i < j");
    }
}

/// Applies s^a on `site` to the basis state `s`: returns the image index
/// and the amplitude factor.
inline std::pair<std::size_t, Complex> pauli_on_basis(int a, int site, std::size_t s) {
    const std::size_t mask = std::size_t{1} << site;
    const bool down = (s & mask) != 0U;
    switch (a) {
    case 1:
        return {s ^ mask, 1.0};
    case 2:
        return {s ^ mask, down ? Complex(0.0, -1.0) : Complex(0.0, 1.0)};
    case 3:
        return {s, down ? -1.0 : 1.0};
    default:
        return {s, 1.0};
    }
}

Eigen::Matrix4cd kron2(const Eigen::Matrix2cd &a, const Eigen::Matrix2cd &b) {
    Eigen::Matrix4cd out;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
        }
    }
    return out;
}

} // namespace

DensityMatrix::DensityMatrix(Eigen::MatrixXcd m) : m_(std::move(m)) {
    if (m_.rows() != m_.cols() || (m_.rows() != 2 && m_.rows() != 4)) {
        throw InvalidState("density matrix: must be 2x2 or 4x4");
    }
    if ((m_ - m_.adjoint()).cwiseAbs().maxCoeff() > kHermTol) {
        throw InvalidState("density matrix: not Hermitian");
    }
    if (std::abs(m_.trace() - Complex(1.0)) > kTraceTol) {
        throw InvalidState("density matrix: trace differs from one");
    }
    if (eigenvalues()(0) < -kPsdTol) {
        throw InvalidState("density matrix: negative eigenvalue");
    }
}

DensityMatrix DensityMatrix::unchecked(Eigen::MatrixXcd m) {
    DensityMatrix out;
    out.m_ = std::move(m);
    return out;
}

Eigen::VectorXd DensityMatrix::eigenvalues() const {
    const Eigen::MatrixXcd herm = 0.5 * (m_ + m_.adjoint());
    return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(herm, Eigen::EigenvaluesOnly)
        .eigenvalues();
}

Eigen::Matrix2cd pauli_matrix(int index) {
    using namespace std::complex_literals;
    Eigen::Matrix2cd m;
    switch (index) {
    case 0:
        m << 1.0, 0.0, 0.0, 1.0;
        break;
    case 1:
        m << 0.0, 1.0, 1.0, 0.0;
        break;
    case 2:
        m << 0.0, -1.0i, 1.0i, 0.0;
        break;
    case 3:
        m << 1.0, 0.0, 0.0, -1.0;
        break;
    default:
        throw InvalidInput("pauli_matrix: index must be 0..3");
    }
    return m;
}

DensityMatrix single_site_rdm(const StateVector &v, int site) {
    check_site(v, site, "single_site_rdm");
    const std::size_t mask = std::size_t{1} << site;
    Eigen::Matrix2cd rho = Eigen::Matrix2cd::Zero();
    for (std::size_t s = 0; s < v.size(); ++s) {
        if ((s & mask) != 0U) {
            continue;
        }
        const Complex up = v[s];
        const Complex dn = v[s | mask];
        rho(0, 0) += std::norm(up);
        rho(1, 1) += std::norm(dn);
        rho(0, 1) += up * std::conj(dn);
    }
    rho(1, 0) = std::conj(rho(0, 1));
    return DensityMatrix(rho);
}

DensityMatrix two_site_rdm(const StateVector &v, int i, int j) {
    check_pair(v, i, j, "two_site_rdm");
    const std::size_t mi = std::size_t{1} << i;
    const std::size_t mj = std::size_t{1} << j;
    // basis index of the pair: 2 * bit_i + bit_j
    const std::size_t offsets[4] = {0, mj, mi, mi | mj};
    Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
    for (std::size_t s = 0; s < v.size(); ++s) {
        if ((s & (mi | mj)) != 0U) {
            continue;
        }
        Complex amp[4];
        for (int k = 0; k < 4; ++k) {
            amp[k] = v[s | offsets[k]];
        }
        for (int a = 0; a < 4; ++a) {
            for (int b = 0; b < 4; ++b) {
                rho(a, b) += amp[a] * std::conj(amp[b]);
            }
        }
    }
    return DensityMatrix(rho);
}

CorrelatorTable pauli_correlators(const StateVector &v, int i, int j) {
    check_pair(v, i, j, "pauli_correlators");
    CorrelatorTable out;
    for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
            Complex acc = 0.0;
            for (std::size_t s = 0; s < v.size(); ++s) {
                const auto [s1, f1] = pauli_on_basis(b, j, s);
                const auto [s2, f2] = pauli_on_basis(a, i, s1);
                acc += std::conj(v[s2]) * f2 * f1 * v[s];
            }
            if (std::abs(acc.imag()) > kImagTol) {
                throw InconsistentCorrelators("pauli_correlators: imaginary residue " +
                                              std::to_string(acc.imag()));
            }
            out.t[a][b] = acc.real();
        }
    }
    out.t[0][0] = 1.0;
    return out;
}

DensityMatrix rdm_from_correlators(const CorrelatorTable &t) {
    for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
            if (std::abs(t.t[a][b]) > 1.0 + 1e-10 || !std::isfinite(t.t[a][b])) {
                throw InconsistentCorrelators("rdm_from_correlators: entry out of [-1, 1]");
            }
        }
    }
    if (t.t[0][0] != 1.0) {
        throw InconsistentCorrelators("rdm_from_correlators: T[0][0] must be 1");
    }
    Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
    for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
            if (t.t[a][b] != 0.0) {
                rho += (0.25 * t.t[a][b]) * kron2(pauli_matrix(a), pauli_matrix(b));
            }
        }
    }
    auto out = DensityMatrix::unchecked(rho);
    if (out.eigenvalues()(0) < -1e-8) {
        throw InconsistentCorrelators("rdm_from_correlators: reconstruction is not positive");
    }
    return out;
}

CorrelatorTable correlators_of(const DensityMatrix &rho) {
    if (rho.dim() != 4) {
        throw InvalidInput("correlators_of: need a two-site state");
    }
    CorrelatorTable out;
    for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
            out.t[a][b] = (rho.matrix() * kron2(pauli_matrix(a), pauli_matrix(b)))
                              .trace()
                              .real();
        }
    }
    out.t[0][0] = 1.0;
    return out;
}

DensityMatrix trace_out_b(const DensityMatrix &rho_ab) {
    if (rho_ab.dim() != 4) {
        throw InvalidInput("trace_out_b: need a two-site state");
    }
    const auto &m = rho_ab.matrix();
    Eigen::Matrix2cd r;
    for (int a = 0; a < 2; ++a) {
        for (int c = 0; c < 2; ++c) {
            r(a, c) = m(2 * a, 2 * c) + m(2 * a + 1, 2 * c + 1);
        }
    }
    return DensityMatrix::unchecked(r);
}

DensityMatrix trace_out_a(const DensityMatrix &rho_ab) {
    if (rho_ab.dim() != 4) {
        throw InvalidInput("trace_out_a: need a two-site state");
    }
    const auto &m = rho_ab.matrix();
    Eigen::Matrix2cd r;
    for (int b = 0; b < 2; ++b) {
        for (int d = 0; d < 2; ++d) {
            r(b, d) = m(b, d) + m(2 + b, 2 + d);
        }
    }
    return DensityMatrix::unchecked(r);
}

} // namespace optcorr
