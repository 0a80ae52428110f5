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

#include <array>

#include "doctest.h"
#include "helpers.hpp"
#include "oracle.hpp"

#include "optcorr/error.hpp"
#include "optcorr/optimize.hpp"
#include "optcorr/spinchain.hpp"

using namespace optcorr;
using testing::kPi;
using testing::Rng;

namespace {

StrategySpec spec_for(Strategy s, Vec3 couplings = Vec3::Zero()) {
    StrategySpec spec;
    spec.family = s;
    spec.couplings = couplings;
    return spec;
}

} // namespace

TEST_CASE("optimizer matches the dense brute-force grid") {
    Rng rng(2024);
    for (int t = 0; t < 3; ++t) {
        const DensityMatrix rho(rng.density(4, 1 + t));
        const auto proj = optimize(rho, spec_for(Strategy::ProjRot));
        CHECK(std::abs(proj.c_max - testing::oracle::grid_max(rho, testing::oracle::proj_axes())) < 1e-5);
        const auto sic = optimize(rho, spec_for(Strategy::SicRot));
        CHECK(std::abs(sic.c_max - testing::oracle::grid_max(rho, testing::oracle::tetra_axes())) < 1e-5);
    }
}

TEST_CASE("textbook states") {
    SUBCASE("Bell state: every projective direction is optimal") {
        const auto r = optimize(testing::bell_phi_plus(), spec_for(Strategy::ProjRot));
        CHECK(r.c_max == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(r.flat_theta);
        CHECK(r.flat_phi);
    }
    SUBCASE("Bell state: all families reach one") {
        const std::vector<StrategySpec> specs = {
            spec_for(Strategy::ProjRot), spec_for(Strategy::SicRot),
            spec_for(Strategy::CicRot, Vec3(1, 0.25, 1)), spec_for(Strategy::Cic3Par, Vec3(1, 0.25, 1))};
        for (const auto &[family, r] : optimize_all(testing::bell_phi_plus(), specs)) {
            CHECK(r.c_max == doctest::Approx(1.0).epsilon(1e-6));
        }
    }
    SUBCASE("polarized product state carries nothing") {
        const DensityMatrix up = testing::projector(testing::ket(0, 0));
        for (Strategy s : {Strategy::ProjRot, Strategy::SicRot}) {
            const auto r = optimize(up, spec_for(s));
            CHECK(std::abs(r.c_max) < 1e-12);
            CHECK(r.flat_theta);
            CHECK(r.flat_phi);
        }
    }
    SUBCASE("classical mixture is optimal along z") {
        const auto r = optimize(testing::classical_mixture(), spec_for(Strategy::ProjRot));
        CHECK(r.c_max == doctest::Approx(1.0).epsilon(1e-9));
        const Vec3 n = bloch_vector(r.best().theta, r.best().phi);
        CHECK(std::abs(std::abs(n.z()) - 1.0) < 1e-6);
    }
}

TEST_CASE("pure states: optimal C equals the entanglement entropy") {
    Rng rng(77);
    for (int t = 0; t < 5; ++t) {
        const DensityMatrix rho(rng.density(4, 1));
        const auto r = optimize(rho, spec_for(Strategy::ProjRot));
        CHECK(std::abs(r.c_max - von_neumann_entropy(trace_out_b(rho))) < 1e-8);
    }
}

TEST_CASE("refinement, bounds and listed optima") {
    Rng rng(5);
    for (int t = 0; t < 6; ++t) {
        const DensityMatrix rho(rng.density(4));
        for (Strategy s : {Strategy::ProjRot, Strategy::SicRot, Strategy::CicRot, Strategy::Cic3Par}) {
            const auto r = optimize(rho, spec_for(s, Vec3(rng.normal(), rng.normal(), rng.normal())));
            CHECK(r.c_max >= r.grid_max - 1e-12);
            CHECK(r.c_max >= -1e-8);
            CHECK(r.c_max <= mutual_information(rho) + 1e-8);
            REQUIRE_FALSE(r.optima.empty());
            for (const auto &o : r.optima) {
                CHECK(std::abs(o.value - r.c_max) <= 1e-9);
                CHECK(o.theta >= 0.0);
                CHECK(o.theta <= kPi);
            }
        }
    }
}

TEST_CASE("projective landscape is symmetric under antipodal relabelling") {
    Rng rng(13);
    const DensityMatrix rho(rng.density(4));
    const ConditioningKernel kernel(rho);
    const auto spec = spec_for(Strategy::ProjRot);
    for (int t = 0; t < 200; ++t) {
        const double th = rng.uniform(0, kPi);
        const double ph = rng.uniform(0, 2 * kPi);
        CHECK(std::abs(strategy_value(kernel, spec, th, ph) -
                       strategy_value(kernel, spec, kPi - th, ph + kPi)) < 1e-12);
    }
}

TEST_CASE("fixed strategies are contained in their rotated families") {
    Rng rng(19);
    for (int t = 0; t < 5; ++t) {
        const DensityMatrix rho(rng.density(4));
        const Vec3 j(rng.normal(), rng.normal(), rng.normal());
        const double z = optimize(rho, spec_for(Strategy::ProjZ)).c_max;
        CHECK(z == doctest::Approx(classical_correlations_given(rho, projective(0, 0))).epsilon(1e-12));
        CHECK(optimize(rho, spec_for(Strategy::ProjRot)).c_max >= z - 1e-8);
        const double sic = optimize(rho, spec_for(Strategy::Sic)).c_max;
        CHECK(optimize(rho, spec_for(Strategy::SicRot)).c_max >= sic - 1e-8);
        const double cic = optimize(rho, spec_for(Strategy::Cic, j)).c_max;
        CHECK(optimize(rho, spec_for(Strategy::CicRot, j)).c_max >= cic - 1e-8);
    }
}

TEST_CASE("optimizer is deterministic") {
    Rng rng(99);
    const DensityMatrix rho(rng.density(4));
    const auto a = optimize(rho, spec_for(Strategy::SicRot));
    const auto b = optimize(rho, spec_for(Strategy::SicRot));
    CHECK(a.c_max == b.c_max);
    CHECK(a.n_evals == b.n_evals);
    REQUIRE(a.optima.size() == b.optima.size());
    for (std::size_t k = 0; k < a.optima.size(); ++k) {
        CHECK(a.optima[k].theta == b.optima[k].theta);
        CHECK(a.optima[k].phi == b.optima[k].phi);
    }
}

TEST_CASE("disordered ising pair is optimally measured along x") {
    const ModelSpec spec{-1.0, 0.0, 0.0, 2.0, 1e-6, 10};
    const auto gs = ground_state(spec);
    const auto rho = two_site_rdm(gs.state, 4, 5);
    const auto r = optimize(rho, spec_for(Strategy::ProjRot));
    const Vec3 axis = local_operator_axis(-1, 0, 0);
    for (const auto &o : r.optima) {
        CHECK(std::abs(std::abs(bloch_vector(o.theta, o.phi).dot(axis)) - 1.0) < 1e-3);
    }
    const auto c3 = optimize(rho, spec_for(Strategy::Cic3Par, Vec3(-1, 0, 0)));
    const Vec3 dir = coupling_direction(c3.best());
    CHECK(std::abs(std::abs(dir.x()) - 1.0) < 0.02);
}

TEST_CASE("local operator axis") {
    CHECK((local_operator_axis(-1, 0, 0) - Vec3(-1, 0, 0)).norm() < 1e-15);
    CHECK((local_operator_axis(1, 1, 1) - Vec3(1, 1, 1) / std::sqrt(3.0)).norm() < 1e-15);
    CHECK_THROWS_AS(local_operator_axis(0, 0, 0), InvalidInput);
}

TEST_CASE("strategy names and validation") {
    for (Strategy s : {Strategy::ProjZ, Strategy::ProjRot, Strategy::SicRot, Strategy::CicRot,
                       Strategy::Cic3Par, Strategy::Sic, Strategy::Cic}) {
        CHECK(strategy_from_string(to_string(s)) == s);
    }
    CHECK_THROWS_AS(strategy_from_string("proj-x"), InvalidInput);
    CHECK_FALSE(is_optimized(Strategy::ProjZ));
    CHECK(is_optimized(Strategy::Cic3Par));

    const auto rho = testing::bell_phi_plus();
    CHECK_THROWS_AS(optimize(rho, spec_for(Strategy::CicRot)), InvalidInput);
    CHECK_THROWS_AS(optimize(rho, spec_for(Strategy::Cic)), InvalidInput);
    auto coarse = spec_for(Strategy::ProjRot);
    coarse.n_theta = 5;
    CHECK_THROWS_AS(optimize(rho, coarse), InvalidInput);
}
