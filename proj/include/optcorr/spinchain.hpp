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
 * Anisotropic XYZ spin-1/2 chain with open boundaries in a transverse field.
 *
 * Basis convention: bit i of a basis index is the sigma^z state of site i,
 * 0 for spin up (+1) and 1 for spin down (-1). Site 0 is the least
 * significant bit.
 */

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace optcorr {

using Complex = std::complex<double>;

enum class Axis { X, Y, Z };

inline constexpr int kDefaultMaxSites = 16;

/// Couplings and fields of
///   H = sum_i (Jx sx_i sx_{i+1} + Jy sy_i sy_{i+1} + Jz sz_i sz_{i+1})
///       - h sum_i sz_i - hx sum_i sx_i
/// on an open chain of `sites` spins.
struct ModelSpec {
    double jx = 0.0;
    double jy = 0.0;
    double jz = 0.0;
    double h = 0.0;
    double hx = 0.0;
    int sites = 2;

    /// Throws InvalidInput when the spec violates its invariants.
    void validate(int max_sites = kDefaultMaxSites) const;

    [[nodiscard]] std::size_t dimension() const { return std::size_t{1} << sites; }
};

/// Normalized pure state of a chain.
class StateVector {
  public:
    StateVector() = default;
    /// Takes ownership of `amplitudes`; throws InvalidInput unless the
    /// length is 2^sites and the norm is one within 1e-10.
    StateVector(int sites, std::vector<Complex> amplitudes);

    /// Computational basis state; `index` follows the bit convention above.
    static StateVector basis(int sites, std::size_t index);
    /// Tensor product of identical single-site states (up, down amplitudes).
    static StateVector product(int sites, Complex up, Complex down);
    /// Normalizes `amplitudes` before wrapping them.
    static StateVector normalized(int sites, std::vector<Complex> amplitudes);

    [[nodiscard]] int sites() const noexcept { return sites_; }
    [[nodiscard]] std::size_t size() const noexcept { return amps_.size(); }
    [[nodiscard]] std::span<const Complex> amplitudes() const noexcept { return amps_; }
    [[nodiscard]] const Complex &operator[](std::size_t i) const { return amps_[i]; }

  private:
    int sites_ = 0;
    std::vector<Complex> amps_;
};

/// Matrix-free H*v, O(L 2^L). `in` and `out` must both have length 2^L and
/// must not alias.
template <class Scalar>
void apply_hamiltonian(const ModelSpec &spec, std::span<const Scalar> in,
                       std::span<Scalar> out);

/// H*v as a plain amplitude vector (the result is not normalized).
std::vector<Complex> apply_hamiltonian(const ModelSpec &spec, const StateVector &v);
std::vector<Complex> apply_hamiltonian(const ModelSpec &spec,
                                       std::span<const Complex> v);

struct SolverOptions {
    double tol = 1e-10;     ///< bound on ||Hv - Ev||
    int krylov_dim = 100;   ///< Lanczos vectors kept before a restart
    int max_restarts = 200;
};

struct Eigenpair {
    double energy = 0.0;
    StateVector state;
    double residual = 0.0;
};

/// Lowest eigenpair by restarted Lanczos with full reorthogonalization.
/// Deterministic for a given spec.
Eigenpair ground_state(const ModelSpec &spec, const SolverOptions &opts = {});

/// The `count` lowest eigenpairs, found one at a time with locking.
std::vector<Eigenpair> lowest_eigenpairs(const ModelSpec &spec, int count,
                                         const SolverOptions &opts = {});

/// Dense Hamiltonian built from Kronecker products of Pauli matrices.
/// Independent of the bit-twiddling path; meant for small chains.
Eigen::MatrixXcd dense_hamiltonian(const ModelSpec &spec);

/// Exhaustive dense diagonalization. Only for sites <= 10.
Eigenpair ground_state_dense(const ModelSpec &spec);

/// Ground state used for correlation analysis.
///
/// Without a bias (hx == 0) this is ground_state(). With hx > 0 the three
/// lowest levels are computed; when the lowest two form a quasi-degenerate
/// doublet, E1 - E0 < (E2 - E1) / 2, the returned state is the combination
/// inside the doublet that maximizes the order parameter sum_i s_i sx_i
/// (s_i = 1 for Jx <= 0, s_i = (-1)^i for Jx > 0).
struct OrderedGroundState {
    double energy = 0.0;
    StateVector state;
    bool doublet_mixed = false;
    double splitting_ratio = 1.0; ///< (E1 - E0) / (E2 - E0), 1 when not computed
};

OrderedGroundState symmetry_broken_ground_state(const ModelSpec &spec,
                                                const SolverOptions &opts = {});

/// <v| sigma^axis_site |v>.
double expectation_sigma(const StateVector &v, int site, Axis axis);

/// <v| H |v> for a normalized v.
double energy_expectation(const ModelSpec &spec, const StateVector &v);

/// Mid-chain pair (floor(L/2) - 1, floor(L/2) - 1 + r); throws when it
/// does not fit on the chain.
std::pair<int, int> mid_chain_sites(int sites, int r);

} // namespace optcorr
