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

#include "optcorr/infotheory.hpp"

#include <algorithm>
#include <cmath>

#include "optcorr/error.hpp"

namespace optcorr {

namespace {

constexpr double kClampTol = 1e-10;

double entropy_term(double lambda) {
    if (lambda < -kClampTol) {
        throw InvalidState("entropy: eigenvalue " + std::to_string(lambda) +
                           " below tolerance");
    }
    if (lambda <= 0.0) {
        return 0.0;
    }
    return -lambda * std::log2(lambda);
}

void require_rank1(const Measurement &m) {
    if (!m.is_rank1(1e-8)) {
        throw UnsupportedMeasurement("conditional entropy needs rank-one elements");
    }
}

void require_two_site(const DensityMatrix &rho) {
    if (rho.dim() != 4) {
        throw InvalidInput("expected a two-site density matrix");
    }
}

} // namespace

double von_neumann_entropy(const DensityMatrix &rho) {
    const Eigen::VectorXd ev = rho.eigenvalues();
    double s = 0.0;
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        s += entropy_term(ev(i));
    }
    return s;
}

double qubit_entropy(const Eigen::Matrix2cd &rho) {
    const double a = rho(0, 0).real();
    const double d = rho(1, 1).real();
    const double off = std::abs(rho(0, 1));
    const double mean = 0.5 * (a + d);
    const double radius = std::hypot(0.5 * (a - d), off);
    return entropy_term(mean + radius) + entropy_term(mean - radius);
}

double mutual_information(const DensityMatrix &rho_ab) {
    require_two_site(rho_ab);
    return von_neumann_entropy(trace_out_b(rho_ab)) + von_neumann_entropy(trace_out_a(rho_ab)) -
           von_neumann_entropy(rho_ab);
}

double conditional_entropy(const DensityMatrix &rho_ab, const Measurement &m) {
    require_two_site(rho_ab);
    require_rank1(m);
    const auto &rho = rho_ab.matrix();
    double total = 0.0;
    for (std::size_t k = 0; k < m.size(); ++k) {
        const Eigen::Matrix2cd b = m.element_matrix(k);
        // Tr_B[(I (x) B) rho]_{a,a'} = sum_{b,b'} B_{b b'} rho_{(a b'),(a' b)}
        Eigen::Matrix2cd cond = Eigen::Matrix2cd::Zero();
        for (int a = 0; a < 2; ++a) {
            for (int ap = 0; ap < 2; ++ap) {
                for (int bi = 0; bi < 2; ++bi) {
                    for (int bp = 0; bp < 2; ++bp) {
                        cond(a, ap) += b(bi, bp) * rho(2 * a + bp, 2 * ap + bi);
                    }
                }
            }
        }
        const double p = cond.trace().real();
        if (p < -1e-12) {
            throw InvalidState("conditional_entropy: negative outcome probability");
        }
        if (p <= kOutcomeFloor) {
            continue;
        }
        const DensityMatrix conditioned =
            DensityMatrix::unchecked(Eigen::MatrixXcd(cond / p));
        total += p * von_neumann_entropy(conditioned);
    }
    return total;
}

double classical_correlations_given(const DensityMatrix &rho_ab, const Measurement &m) {
    require_two_site(rho_ab);
    return von_neumann_entropy(trace_out_b(rho_ab)) - conditional_entropy(rho_ab, m);
}

double discord_given(const DensityMatrix &rho_ab, const Measurement &m) {
    return mutual_information(rho_ab) - classical_correlations_given(rho_ab, m);
}

CorrelationValues correlation_values(const DensityMatrix &rho_ab, const Measurement &m) {
    require_two_site(rho_ab);
    CorrelationValues v;
    v.s_a = von_neumann_entropy(trace_out_b(rho_ab));
    v.s_b = von_neumann_entropy(trace_out_a(rho_ab));
    v.s_ab = von_neumann_entropy(rho_ab);
    v.mutual = v.s_a + v.s_b - v.s_ab;
    v.conditional = conditional_entropy(rho_ab, m);
    v.classical = v.s_a - v.conditional;
    v.discord = v.mutual - v.classical;
    return v;
}

ConditioningKernel::ConditioningKernel(const DensityMatrix &rho_ab) {
    require_two_site(rho_ab);
    const auto &rho = rho_ab.matrix();
    auto partial = [&rho](const Eigen::Matrix2cd &op) {
        Eigen::Matrix2cd out = Eigen::Matrix2cd::Zero();
        for (int a = 0; a < 2; ++a) {
            for (int ap = 0; ap < 2; ++ap) {
                for (int bi = 0; bi < 2; ++bi) {
                    for (int bp = 0; bp < 2; ++bp) {
                        out(a, ap) += op(bi, bp) * rho(2 * a + bp, 2 * ap + bi);
                    }
                }
            }
        }
        return out;
    };
    rho_a_ = partial(pauli_matrix(0));
    for (int k = 0; k < 3; ++k) {
        r_[static_cast<std::size_t>(k)] = partial(pauli_matrix(k + 1));
    }
    s_a_ = qubit_entropy(rho_a_);
}

double ConditioningKernel::outcome_term(double weight, const Vec3 &axis) const {
    const Eigen::Matrix2cd cond =
        weight * (rho_a_ + axis.x() * r_[0] + axis.y() * r_[1] + axis.z() * r_[2]);
    const double p = cond.trace().real();
    if (p < -1e-12) {
        throw InvalidState("conditional entropy: negative outcome probability");
    }
    if (p <= kOutcomeFloor) {
        return 0.0;
    }
    return p * qubit_entropy(cond / p);
}

double ConditioningKernel::conditional_entropy(const Measurement &m) const {
    require_rank1(m);
    double total = 0.0;
    for (const auto &e : m.elements()) {
        total += outcome_term(e.weight, e.axis);
    }
    return total;
}

double ConditioningKernel::classical_correlations(const Measurement &m) const {
    return s_a_ - conditional_entropy(m);
}

} // namespace optcorr
