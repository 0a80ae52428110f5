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

#include "doctest.h"
#include "helpers.hpp"

#include "optcorr/error.hpp"
#include "optcorr/rdm.hpp"

using namespace optcorr;
using testing::max_abs;
using testing::Rng;

namespace {

StateVector singlet() { return StateVector::normalized(2, {0.0, -1.0, 1.0, 0.0}); }
StateVector plus_plus() { return StateVector::product(2, 1.0, 1.0); }

// Reference partial trace by explicit summation over the other sites.
Eigen::Matrix4cd brute_two_site(const StateVector &v, int i, int j) {
    Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
    for (std::size_t x = 0; x < v.size(); ++x) {
        for (std::size_t y = 0; y < v.size(); ++y) {
            const std::size_t mask = ~((std::size_t{1} << i) | (std::size_t{1} << j));
            if ((x & mask) != (y & mask)) {
                continue;
            }
            const int a = static_cast<int>(2 * ((x >> i) & 1) + ((x >> j) & 1));
            const int b = static_cast<int>(2 * ((y >> i) & 1) + ((y >> j) & 1));
            rho(a, b) += v[x] * std::conj(v[y]);
        }
    }
    return rho;
}

} // namespace

TEST_CASE("single_site_rdm") {
    const auto up = single_site_rdm(StateVector::basis(4, 0), 3);
    CHECK(max_abs(up.matrix() - Eigen::Matrix2cd{{1.0, 0.0}, {0.0, 0.0}}) < 1e-15);

    const auto half = single_site_rdm(singlet(), 0);
    CHECK(max_abs(half.matrix() - Eigen::Matrix2cd::Identity() / 2.0) < 1e-15);

    const auto x = single_site_rdm(plus_plus(), 1);
    CHECK(max_abs(x.matrix() - Eigen::Matrix2cd::Constant(0.5)) < 1e-15);

    CHECK_THROWS_AS(single_site_rdm(singlet(), 2), InvalidInput);
}

TEST_CASE("two_site_rdm") {
    const auto up = two_site_rdm(StateVector::basis(6, 0), 2, 3);
    CHECK(max_abs(up.matrix() - testing::projector(testing::ket(0, 0)).matrix()) < 1e-15);

    const auto s = two_site_rdm(singlet(), 0, 1);
    CHECK(max_abs(s.matrix() - testing::singlet_rho().matrix()) < 1e-15);

    CHECK_THROWS_AS(two_site_rdm(singlet(), 0, 0), InvalidInput);
    CHECK_THROWS_AS(two_site_rdm(singlet(), 1, 0), InvalidInput);
    CHECK_THROWS_AS(two_site_rdm(singlet(), 0, 2), InvalidInput);
}

TEST_CASE("two_site_rdm matches explicit summation on random states") {
    Rng rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        const int sites = rng.integer(2, 7);
        const auto v = StateVector::normalized(sites, rng.amplitudes(std::size_t{1} << sites));
        const int i = rng.integer(0, sites - 2);
        const int j = rng.integer(i + 1, sites - 1);
        CHECK(max_abs(two_site_rdm(v, i, j).matrix() - brute_two_site(v, i, j)) < 1e-13);
    }
}

TEST_CASE("pauli_correlators on textbook states") {
    const auto up = pauli_correlators(StateVector::basis(4, 0), 1, 2);
    CHECK(up(3, 3) == doctest::Approx(1.0));
    CHECK(up(3, 0) == doctest::Approx(1.0));
    CHECK(up(0, 3) == doctest::Approx(1.0));
    CHECK(std::abs(up(1, 1)) < 1e-15);
    CHECK(std::abs(up(2, 2)) < 1e-15);

    const auto s = pauli_correlators(singlet(), 0, 1);
    for (int a = 1; a <= 3; ++a) {
        CHECK(s(a, a) == doctest::Approx(-1.0));
        CHECK(std::abs(s(a, 0)) < 1e-15);
        CHECK(std::abs(s(0, a)) < 1e-15);
    }

    const auto x = pauli_correlators(plus_plus(), 0, 1);
    CHECK(x(1, 1) == doctest::Approx(1.0));
    CHECK(x(1, 0) == doctest::Approx(1.0));
    CHECK(x(0, 1) == doctest::Approx(1.0));
    CHECK(std::abs(x(3, 3)) < 1e-15);
    CHECK(x(0, 0) == 1.0);
}

TEST_CASE("rdm_from_correlators") {
    const auto up = rdm_from_correlators(pauli_correlators(StateVector::basis(2, 0), 0, 1));
    CHECK(max_abs(up.matrix() - testing::projector(testing::ket(0, 0)).matrix()) < 1e-15);

    const auto s = rdm_from_correlators(pauli_correlators(singlet(), 0, 1));
    CHECK(max_abs(s.matrix() - two_site_rdm(singlet(), 0, 1).matrix()) < 1e-15);

    CorrelatorTable id;
    id(0, 0) = 1.0;
    CHECK(max_abs(rdm_from_correlators(id).matrix() - Eigen::Matrix4cd::Identity() / 4.0) < 1e-15);

    SUBCASE("inconsistent tables are rejected") {
        CorrelatorTable bad;
        bad(0, 0) = 1.0;
        bad(1, 1) = bad(2, 2) = bad(3, 3) = 1.0; // would need eigenvalue -1/2
        CHECK_THROWS_AS(rdm_from_correlators(bad), InconsistentCorrelators);
        CorrelatorTable no_trace;
        CHECK_THROWS_AS(rdm_from_correlators(no_trace), InconsistentCorrelators);
        CorrelatorTable too_big;
        too_big(0, 0) = 1.0;
        too_big(1, 2) = 1.5;
        CHECK_THROWS_AS(rdm_from_correlators(too_big), InconsistentCorrelators);
    }
}

TEST_CASE("pauli_correlators on a complex state") {
    // (|up,up> + i|down,down>)/sqrt2 has <x y> = 1.
    const auto v = StateVector::normalized(2, {1.0, 0.0, 0.0, Complex(0.0, 1.0)});
    const auto t = pauli_correlators(v, 0, 1);
    CHECK(t(1, 2) == doctest::Approx(1.0));
}

TEST_CASE("two extraction paths agree on random ground states") {
    Rng rng(101);
    for (int trial = 0; trial < 60; ++trial) {
        const int sites = 4 + 2 * rng.integer(0, 2);
        const ModelSpec spec{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1),
                             rng.uniform(0, 3),  rng.uniform(0, 0.3), sites};
        const auto gs = ground_state(spec);
        const int i = rng.integer(0, sites - 2);
        const int j = rng.integer(i + 1, sites - 1);
        const auto direct = two_site_rdm(gs.state, i, j);
        const auto rebuilt = rdm_from_correlators(pauli_correlators(gs.state, i, j));
        CHECK(max_abs(direct.matrix() - rebuilt.matrix()) <= 1e-12);

        // Marginals agree with the single-site reduction.
        CHECK(max_abs(trace_out_b(direct).matrix() - single_site_rdm(gs.state, i).matrix()) < 1e-12);
        CHECK(max_abs(trace_out_a(direct).matrix() - single_site_rdm(gs.state, j).matrix()) < 1e-12);

        // Purity bound.
        CHECK((direct.matrix() * direct.matrix()).trace().real() <= 1 + 1e-12);

        // Table round trip.
        const auto t = correlators_of(direct);
        const auto t2 = pauli_correlators(gs.state, i, j);
        for (int a = 0; a < 4; ++a) {
            for (int b = 0; b < 4; ++b) {
                CHECK(std::abs(t(a, b) - t2(a, b)) < 1e-12);
            }
        }
    }
}

TEST_CASE("symmetry-broken ising pair is beyond the X pattern") {
    for (double h : {0.3, 0.6, 0.9}) {
        const ModelSpec spec{-1.0, 0.0, 0.0, h, 1e-6, 10};
        const auto g = symmetry_broken_ground_state(spec);
        const auto rho = two_site_rdm(g.state, 4, 5);
        double off_x = 0.0;
        for (int a = 0; a < 4; ++a) {
            for (int b = 0; b < 4; ++b) {
                if (a != b && a + b != 3) {
                    off_x = std::max(off_x, std::abs(rho(a, b)));
                }
            }
        }
        CHECK(off_x > 1e-3);
    }
}

TEST_CASE("DensityMatrix validation") {
    CHECK_THROWS_AS(DensityMatrix(Eigen::Matrix3cd::Identity() / 3.0), InvalidState);
    Eigen::Matrix2cd nh{{0.5, 0.1}, {0.2, 0.5}};
    CHECK_THROWS_AS(DensityMatrix{nh}, InvalidState);
    CHECK_THROWS_AS(DensityMatrix(Eigen::Matrix2cd::Identity()), InvalidState);
    Eigen::Matrix2cd neg{{1.2, 0.0}, {0.0, -0.2}};
    CHECK_THROWS_AS(DensityMatrix{neg}, InvalidState);
    CHECK_THROWS_AS(pauli_matrix(4), InvalidInput);
    CHECK_THROWS_AS(trace_out_b(DensityMatrix(Eigen::Matrix2cd::Identity() / 2.0)), InvalidInput);
}
