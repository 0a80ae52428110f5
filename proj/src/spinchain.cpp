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

#include "optcorr/spinchain.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lanczos.hpp"
#include "optcorr/error.hpp"

namespace optcorr {

namespace {

constexpr double kNormTol = 1e-10;

inline int spin(std::size_t index, int site) {
    return ((index >> site) & 1U) != 0U ? -1 : 1;
}

double squared_norm(std::span<const Complex> v) {
    double s = 0.0;
    for (const auto &a : v) {
        s += std::norm(a);
    }
    return s;
}

/// Uniform superposition with a fixed aperiodic perturbation.
detail::RealVector start_vector(std::size_t dim) {
    detail::RealVector v(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        v[i] = 1.0 + 0.1 * std::sin(0.7548776662466927 * static_cast<double>(i + 1));
    }
    return v;
}

StateVector to_state(int sites, const detail::RealVector &v) {
    std::vector<Complex> amps(v.begin(), v.end());
    return StateVector::normalized(sites, std::move(amps));
}

Eigen::Matrix2cd pauli(Axis axis) {
    using namespace std::complex_literals;
    Eigen::Matrix2cd m;
    switch (axis) {
    case Axis::X:
        m << 0.0, 1.0, 1.0, 0.0;
        break;
    case Axis::Y:
        m << 0.0, -1.0i, 1.0i, 0.0;
        break;
    case Axis::Z:
        m << 1.0, 0.0, 0.0, -1.0;
        break;
    }
    return m;
}

Eigen::MatrixXcd kron(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b) {
    Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

/// Operator acting with `ops[k]` on site k; site 0 is the rightmost factor.
Eigen::MatrixXcd site_product(int sites, const std::vector<std::pair<int, Axis>> &ops) {
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(1, 1);
    for (int k = sites - 1; k >= 0; --k) {
        Eigen::MatrixXcd factor = Eigen::MatrixXcd::Identity(2, 2);
        for (const auto &[site, axis] : ops) {
            if (site == k) {
                factor = pauli(axis);
            }
        }
        out = kron(out, factor);
    }
    return out;
}

} // namespace

void ModelSpec::validate(int max_sites) const {
    if (sites < 2) {
        throw InvalidInput("model: need at least 2 sites, got " + std::to_string(sites));
    }
    if (sites > max_sites) {
        throw InvalidInput("model: " + std::to_string(sites) + " sites exceeds the cap of " +
                           std::to_string(max_sites));
    }
    if (jx == 0.0 && jy == 0.0 && jz == 0.0 && h == 0.0) {
        throw InvalidInput("model: all couplings and the field are zero");
    }
    if (!(hx >= 0.0)) {
        throw InvalidInput("model: bias field hx must be non-negative");
    }
    for (double x : {jx, jy, jz, h, hx}) {
        if (!std::isfinite(x)) {
            throw InvalidInput("model: non-finite parameter");
        }
    }
}

StateVector::StateVector(int sites, std::vector<Complex> amplitudes)
    : sites_(sites), amps_(std::move(amplitudes)) {
    if (sites < 1 || sites > 30 || amps_.size() != (std::size_t{1} << sites)) {
        throw InvalidInput("state: length " + std::to_string(amps_.size()) +
                           " does not match 2^" + std::to_string(sites));
    }
    if (std::abs(std::sqrt(squared_norm(amps_)) - 1.0) > kNormTol) {
        throw InvalidInput("state: amplitudes are not normalized");
    }
}

StateVector StateVector::basis(int sites, std::size_t index) {
    std::vector<Complex> amps(std::size_t{1} << sites);
    if (index >= amps.size()) {
        throw InvalidInput("state: basis index out of range");
    }
    amps[index] = 1.0;
    return {sites, std::move(amps)};
}

StateVector StateVector::product(int sites, Complex up, Complex down) {
    const double n = std::sqrt(std::norm(up) + std::norm(down));
    if (n == 0.0) {
        throw InvalidInput("state: zero single-site state");
    }
    up /= n;
    down /= n;
    std::vector<Complex> amps(std::size_t{1} << sites);
    for (std::size_t s = 0; s < amps.size(); ++s) {
        Complex a = 1.0;
        for (int i = 0; i < sites; ++i) {
            a *= spin(s, i) > 0 ? up : down;
        }
        amps[s] = a;
    }
    return {sites, std::move(amps)};
}

StateVector StateVector::normalized(int sites, std::vector<Complex> amplitudes) {
    const double n = std::sqrt(squared_norm(amplitudes));
    if (n == 0.0) {
        throw InvalidInput("state: cannot normalize the zero vector");
    }
    for (auto &a : amplitudes) {
        a /= n;
    }
    return {sites, std::move(amplitudes)};
}

template <class Scalar>
void apply_hamiltonian(const ModelSpec &spec, std::span<const Scalar> in,
                       std::span<Scalar> out) {
    const std::size_t dim = spec.dimension();
    if (in.size() != dim || out.size() != dim) {
        throw InvalidInput("apply_hamiltonian: vector length does not match 2^L");
    }
    const int sites = spec.sites;
    for (std::size_t s = 0; s < dim; ++s) {
        double diag = 0.0;
        Scalar offdiag{};
        for (int i = 0; i + 1 < sites; ++i) {
            const int zz = spin(s, i) * spin(s, i + 1);
            diag += spec.jz * zz;
            // <s'|(Jx sx sx + Jy sy sy)|s> with s' = s with both bits flipped
            const double flip = spec.jx - spec.jy * zz;
            if (flip != 0.0) {
                offdiag += flip * in[s ^ (std::size_t{3} << i)];
            }
        }
        for (int i = 0; i < sites; ++i) {
            diag -= spec.h * spin(s, i);
            if (spec.hx != 0.0) {
                offdiag -= spec.hx * in[s ^ (std::size_t{1} << i)];
            }
        }
        out[s] = diag * in[s] + offdiag;
    }
}

template void apply_hamiltonian<double>(const ModelSpec &, std::span<const double>,
                                        std::span<double>);
template void apply_hamiltonian<Complex>(const ModelSpec &, std::span<const Complex>,
                                         std::span<Complex>);

std::vector<Complex> apply_hamiltonian(const ModelSpec &spec, std::span<const Complex> v) {
    std::vector<Complex> out(v.size());
    apply_hamiltonian<Complex>(spec, v, out);
    return out;
}

std::vector<Complex> apply_hamiltonian(const ModelSpec &spec, const StateVector &v) {
    return apply_hamiltonian(spec, v.amplitudes());
}

std::vector<Eigenpair> lowest_eigenpairs(const ModelSpec &spec, int count,
                                         const SolverOptions &opts) {
    spec.validate();
    const std::size_t dim = spec.dimension();
    if (count < 1 || static_cast<std::size_t>(count) > dim) {
        throw InvalidInput("lowest_eigenpairs: bad eigenpair count");
    }
    if (!(opts.tol > 0.0)) {
        throw InvalidInput("lowest_eigenpairs: tolerance must be positive");
    }
    // The Hamiltonian is real in the sz basis, so the Krylov space can be
    // kept real.
    const detail::RealApply apply = [&spec](std::span<const double> in,
                                            std::span<double> out) {
        apply_hamiltonian<double>(spec, in, out);
    };
    const detail::LanczosParams params{opts.tol, opts.krylov_dim, opts.max_restarts};
    const auto start = start_vector(dim);

    std::vector<detail::RealVector> locked;
    std::vector<Eigenpair> out;
    for (int k = 0; k < count; ++k) {
        auto pair = detail::lanczos_lowest(apply, dim, start, locked, params);
        out.push_back({pair.value, to_state(spec.sites, pair.vector), pair.residual});
        locked.push_back(std::move(pair.vector));
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const Eigenpair &a, const Eigenpair &b) { return a.energy < b.energy; });
    return out;
}

Eigenpair ground_state(const ModelSpec &spec, const SolverOptions &opts) {
    return std::move(lowest_eigenpairs(spec, 1, opts).front());
}

Eigen::MatrixXcd dense_hamiltonian(const ModelSpec &spec) {
    spec.validate();
    const auto dim = static_cast<Eigen::Index>(spec.dimension());
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);
    const std::pair<Axis, double> bonds[] = {
        {Axis::X, spec.jx}, {Axis::Y, spec.jy}, {Axis::Z, spec.jz}};
    for (int i = 0; i + 1 < spec.sites; ++i) {
        for (const auto &[axis, j] : bonds) {
            if (j != 0.0) {
                h += j * site_product(spec.sites, {{i, axis}, {i + 1, axis}});
            }
        }
    }
    for (int i = 0; i < spec.sites; ++i) {
        if (spec.h != 0.0) {
            h -= spec.h * site_product(spec.sites, {{i, Axis::Z}});
        }
        if (spec.hx != 0.0) {
            h -= spec.hx * site_product(spec.sites, {{i, Axis::X}});
        }
    }
    return h;
}

Eigenpair ground_state_dense(const ModelSpec &spec) {
    if (spec.sites > 10) {
        throw InvalidInput("ground_state_dense: limited to 10 sites");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(dense_hamiltonian(spec));
    const Eigen::VectorXcd v = es.eigenvectors().col(0);
    std::vector<Complex> amps(v.data(), v.data() + v.size());
    Eigenpair out{es.eigenvalues()(0), StateVector::normalized(spec.sites, std::move(amps)),
                  0.0};
    const auto hv = apply_hamiltonian(spec, out.state);
    double r2 = 0.0;
    for (std::size_t i = 0; i < hv.size(); ++i) {
        r2 += std::norm(hv[i] - out.energy * out.state[i]);
    }
    out.residual = std::sqrt(r2);
    return out;
}

OrderedGroundState symmetry_broken_ground_state(const ModelSpec &spec,
                                                const SolverOptions &opts) {
    if (spec.hx <= 0.0) {
        auto gs = ground_state(spec, opts);
        return {gs.energy, std::move(gs.state), false, 1.0};
    }
    const int count = spec.dimension() >= 3 ? 3 : 1;
    auto levels = lowest_eigenpairs(spec, count, opts);
    if (count < 3) {
        return {levels[0].energy, std::move(levels[0].state), false, 1.0};
    }
    const double e0 = levels[0].energy;
    const double e1 = levels[1].energy;
    const double e2 = levels[2].energy;
    const double ratio = e2 > e0 ? (e1 - e0) / (e2 - e0) : 0.0;
    if (!(e1 - e0 < 0.5 * (e2 - e1))) {
        return {e0, std::move(levels[0].state), false, ratio};
    }

    // order parameter restricted to the doublet
    const std::size_t dim = spec.dimension();
    const auto &u = levels[0].state;
    const auto &w = levels[1].state;
    auto order_apply = [&](const StateVector &a, const StateVector &b) {
        Complex acc = 0.0;
        for (int i = 0; i < spec.sites; ++i) {
            const double sign = (spec.jx > 0.0 && (i % 2 == 1)) ? -1.0 : 1.0;
            const std::size_t mask = std::size_t{1} << i;
            for (std::size_t s = 0; s < dim; ++s) {
                acc += sign * std::conj(a[s ^ mask]) * b[s];
            }
        }
        return acc;
    };
    Eigen::Matrix2cd o;
    o(0, 0) = order_apply(u, u);
    o(1, 1) = order_apply(w, w);
    o(0, 1) = order_apply(u, w);
    o(1, 0) = std::conj(o(0, 1));
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(o);
    Eigen::Vector2cd c = es.eigenvectors().col(1);
    // fix the global phase so the larger coefficient is real positive
    const Eigen::Index pivot = std::abs(c(0)) >= std::abs(c(1)) ? 0 : 1;
    c *= std::conj(c(pivot)) / std::abs(c(pivot));

    std::vector<Complex> amps(dim);
    for (std::size_t s = 0; s < dim; ++s) {
        amps[s] = c(0) * u[s] + c(1) * w[s];
    }
    OrderedGroundState out{0.0, StateVector::normalized(spec.sites, std::move(amps)), true,
                           ratio};
    out.energy = energy_expectation(spec, out.state);
    return out;
}

double expectation_sigma(const StateVector &v, int site, Axis axis) {
    if (site < 0 || site >= v.sites()) {
        throw InvalidInput("expectation_sigma: site " + std::to_string(site) +
                           " out of range");
    }
    const std::size_t mask = std::size_t{1} << site;
    double acc = 0.0;
    for (std::size_t s = 0; s < v.size(); ++s) {
        const bool down = (s & mask) != 0U;
        switch (axis) {
        case Axis::Z:
            acc += (down ? -1.0 : 1.0) * std::norm(v[s]);
            break;
        case Axis::X:
            acc += std::real(std::conj(v[s ^ mask]) * v[s]);
            break;
        case Axis::Y:
            // sy|up> = i|down>, sy|down> = -i|up>
            acc += std::real(std::conj(v[s ^ mask]) * v[s] *
                             Complex(0.0, down ? -1.0 : 1.0));
            break;
        }
    }
    return acc;
}

double energy_expectation(const ModelSpec &spec, const StateVector &v) {
    const auto hv = apply_hamiltonian(spec, v);
    Complex acc = 0.0;
    for (std::size_t s = 0; s < hv.size(); ++s) {
        acc += std::conj(v[s]) * hv[s];
    }
    return acc.real();
}

std::pair<int, int> mid_chain_sites(int sites, int r) {
    if (r < 1) {
        throw InvalidInput("mid_chain_sites: separation must be at least 1");
    }
    const int a = sites / 2 - 1;
    const int b = a + r;
    if (a < 0 || b >= sites) {
        throw InvalidInput("mid_chain_sites: separation " + std::to_string(r) +
                           " does not fit on " + std::to_string(sites) + " sites");
    }
    return {a, b};
}

} // namespace optcorr
