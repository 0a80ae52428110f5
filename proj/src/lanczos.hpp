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

// Restarted Lanczos with full reorthogonalization for real symmetric
// operators given as a matrix-free apply. Internal to the library.

#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "optcorr/error.hpp"

namespace optcorr::detail {

using RealVector = std::vector<double>;
using RealApply = std::function<void(std::span<const double>, std::span<double>)>;

struct RealEigenpair {
    double value = 0.0;
    RealVector vector;
    double residual = 0.0;
};

struct LanczosParams {
    double tol = 1e-10;
    int krylov_dim = 100;
    int max_restarts = 200;
};

inline double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        s += a[i] * b[i];
    }
    return s;
}

inline void axpy(double alpha, std::span<const double> x, std::span<double> y) {
    for (std::size_t i = 0; i < x.size(); ++i) {
        y[i] += alpha * x[i];
    }
}

inline double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

inline void scale(double alpha, std::span<double> x) {
    for (auto &e : x) {
        e *= alpha;
    }
}

/// Two passes of classical Gram-Schmidt against `basis`.
inline void orthogonalize(std::span<double> w, const std::vector<RealVector> &basis) {
    for (int pass = 0; pass < 2; ++pass) {
        for (const auto &q : basis) {
            axpy(-dot(q, w), q, w);
        }
    }
}

/// Lowest eigenpair of `apply` in the orthogonal complement of `locked`.
inline RealEigenpair lanczos_lowest(const RealApply &apply, std::size_t dim,
                                    const RealVector &start,
                                    const std::vector<RealVector> &locked,
                                    const LanczosParams &params) {
    RealVector v0 = start;
    orthogonalize(v0, locked);
    double n0 = norm(v0);
    if (n0 < 1e-8) {
        throw InvalidInput("lanczos: start vector lies in the locked subspace");
    }
    scale(1.0 / n0, v0);

    const std::size_t max_krylov =
        std::min<std::size_t>(static_cast<std::size_t>(params.krylov_dim),
                              dim - locked.size());
    RealVector w(dim);
    RealVector hy(dim);
    double last_residual = 0.0;

    for (int restart = 0; restart <= params.max_restarts; ++restart) {
        std::vector<RealVector> basis;
        basis.reserve(max_krylov);
        basis.push_back(v0);
        std::vector<double> alpha;
        std::vector<double> beta;

        Eigen::VectorXd ritz_coeffs;
        for (std::size_t j = 0; j < max_krylov; ++j) {
            apply(basis[j], w);
            const double a = dot(basis[j], w);
            alpha.push_back(a);
            axpy(-a, basis[j], w);
            if (j > 0) {
                axpy(-beta[j - 1], basis[j - 1], w);
            }
            orthogonalize(w, locked);
            orthogonalize(w, basis);
            const double b = norm(w);

            const auto m = static_cast<Eigen::Index>(alpha.size());
            Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
            for (Eigen::Index k = 0; k < m; ++k) {
                t(k, k) = alpha[static_cast<std::size_t>(k)];
                if (k + 1 < m) {
                    t(k, k + 1) = t(k + 1, k) = beta[static_cast<std::size_t>(k)];
                }
            }
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
            ritz_coeffs = es.eigenvectors().col(0);
            const double estimate = std::abs(b * ritz_coeffs(m - 1));

            const bool exhausted = b < 1e-12 * std::max(1.0, std::abs(a));
            if (estimate < 0.1 * params.tol || exhausted || j + 1 == max_krylov) {
                break;
            }
            beta.push_back(b);
            scale(1.0 / b, w);
            basis.push_back(w);
        }

        RealVector y(dim, 0.0);
        for (std::size_t k = 0; k < basis.size(); ++k) {
            axpy(ritz_coeffs(static_cast<Eigen::Index>(k)), basis[k], y);
        }
        orthogonalize(y, locked);
        scale(1.0 / norm(y), y);

        apply(y, hy);
        const double rayleigh = dot(y, hy);
        axpy(-rayleigh, y, hy);
        // components along locked eigenvectors are not part of the residual
        // in the deflated problem
        orthogonalize(hy, locked);
        last_residual = norm(hy);
        if (last_residual <= params.tol) {
            return {rayleigh, std::move(y), last_residual};
        }
        v0 = std::move(y);
    }
    throw ConvergenceError("lanczos: no convergence, residual " +
                               std::to_string(last_residual),
                           last_residual);
}

} // namespace optcorr::detail
