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

#include "optcorr/optimize.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <tuple>

#include "optcorr/error.hpp"
#include "optcorr/nelder_mead.hpp"

namespace optcorr {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kOptimumValueTol = 1e-9;

double wrap_phi(double phi) {
    double p = std::fmod(phi, kTwoPi);
    if (p < 0.0) {
        p += kTwoPi;
    }
    return p >= kTwoPi ? 0.0 : p;
}

double circular_distance(double a, double b) {
    const double d = std::abs(wrap_phi(a) - wrap_phi(b));
    return std::min(d, kTwoPi - d);
}

/// Unrotated base measurement of a family.
std::vector<MeasurementElement> base_elements(const StrategySpec &spec) {
    switch (spec.family) {
    case Strategy::ProjZ:
    case Strategy::ProjRot:
        return projective(0.0, 0.0).elements();
    case Strategy::Sic:
    case Strategy::SicRot:
        return sic_povm().elements();
    case Strategy::Cic:
    case Strategy::CicRot:
        return cic_povm(spec.couplings.x(), spec.couplings.y(), spec.couplings.z()).elements();
    case Strategy::Cic3Par:
        return {};
    }
    return {};
}

/// Evaluates C over the parameter plane of one strategy, counting calls.
class Landscape {
  public:
    Landscape(const ConditioningKernel &kernel, const StrategySpec &spec)
        : kernel_(kernel), spec_(spec), base_(base_elements(spec)) {}

    double operator()(double theta, double phi) {
        ++evals_;
        if (spec_.family == Strategy::Cic3Par) {
            const Vec3 n = bloch_vector(theta, phi);
            const double x = n.x();
            const double y = n.y();
            const double z = n.z();
            return kernel_.entropy_a() -
                   (kernel_.outcome_term(0.25, Vec3(x, y, z)) +
                    kernel_.outcome_term(0.25, Vec3(x, -y, -z)) +
                    kernel_.outcome_term(0.25, Vec3(-x, y, -z)) +
                    kernel_.outcome_term(0.25, Vec3(-x, -y, z)));
        }
        const Eigen::Matrix3d r = rotation_matrix(std::clamp(theta, 0.0, kPi), phi);
        double sc = 0.0;
        for (const auto &e : base_) {
            sc += kernel_.outcome_term(e.weight, r * e.axis);
        }
        return kernel_.entropy_a() - sc;
    }

    [[nodiscard]] long evaluations() const noexcept { return evals_; }

  private:
    const ConditioningKernel &kernel_;
    const StrategySpec &spec_;
    std::vector<MeasurementElement> base_;
    long evals_ = 0;
};

/// Canonical (theta, phi) for a refined point.
std::pair<double, double> normalize_point(Strategy family, double theta, double phi) {
    if (family == Strategy::Cic3Par) {
        return bloch_angles(bloch_vector(theta, phi));
    }
    return {std::clamp(theta, 0.0, kPi), wrap_phi(phi)};
}

struct Candidate {
    double theta;
    double phi;
    double value;
};

} // namespace

std::string_view to_string(Strategy s) {
    switch (s) {
    case Strategy::ProjZ:
        return "proj-z";
    case Strategy::ProjRot:
        return "proj-rot";
    case Strategy::SicRot:
        return "sic-rot";
    case Strategy::CicRot:
        return "cic-rot";
    case Strategy::Cic3Par:
        return "cic-3par";
    case Strategy::Sic:
        return "sic";
    case Strategy::Cic:
        return "cic";
    }
    return "?";
}

Strategy strategy_from_string(std::string_view name) {
    for (auto s : {Strategy::ProjZ, Strategy::ProjRot, Strategy::SicRot, Strategy::CicRot,
                   Strategy::Cic3Par, Strategy::Sic, Strategy::Cic}) {
        if (to_string(s) == name) {
            return s;
        }
    }
    throw InvalidInput("unknown strategy '" + std::string(name) + "'");
}

bool is_optimized(Strategy s) {
    return s == Strategy::ProjRot || s == Strategy::SicRot || s == Strategy::CicRot ||
           s == Strategy::Cic3Par;
}

void StrategySpec::validate() const {
    if (n_theta < 13 || n_phi < 25) {
        throw InvalidInput("strategy: grid must be at least 13 x 25");
    }
    if (!(refine_tol > 0.0)) {
        throw InvalidInput("strategy: refinement tolerance must be positive");
    }
    const bool needs_seed =
        family == Strategy::Cic || family == Strategy::CicRot || family == Strategy::Cic3Par;
    if (needs_seed && !(couplings.norm() > 0.0)) {
        throw InvalidInput("strategy: " + std::string(to_string(family)) +
                           " needs a nonzero coupling seed");
    }
}

Measurement strategy_measurement(const StrategySpec &spec, double theta, double phi) {
    switch (spec.family) {
    case Strategy::ProjZ:
        return projective(0.0, 0.0);
    case Strategy::Sic:
        return sic_povm();
    case Strategy::Cic:
        return cic_povm(spec.couplings.x(), spec.couplings.y(), spec.couplings.z());
    case Strategy::ProjRot:
        return rotate(projective(0.0, 0.0), theta, phi);
    case Strategy::SicRot:
        return rotate(sic_povm(), theta, phi);
    case Strategy::CicRot:
        return rotate(cic_povm(spec.couplings.x(), spec.couplings.y(), spec.couplings.z()),
                      theta, phi);
    case Strategy::Cic3Par:
        return cic_povm_direction(theta, phi);
    }
    throw InvalidInput("strategy_measurement: unknown family");
}

double strategy_value(const ConditioningKernel &kernel, const StrategySpec &spec,
                      double theta, double phi) {
    Landscape f(kernel, spec);
    return f(theta, phi);
}

OptResult optimize(const DensityMatrix &rho_ab, const StrategySpec &spec) {
    spec.validate();
    const ConditioningKernel kernel(rho_ab);
    Landscape f(kernel, spec);
    OptResult out;
    out.family = spec.family;

    if (!is_optimized(spec.family)) {
        const double v = f(0.0, 0.0);
        out.c_max = out.grid_max = v;
        out.optima.push_back({0.0, 0.0, v, strategy_measurement(spec, 0.0, 0.0)});
        out.n_evals = f.evaluations();
        return out;
    }

    const int nt = spec.n_theta;
    const int np = spec.n_phi;
    const double dt = kPi / (nt - 1);
    const double dp = kTwoPi / (np - 1);
    std::vector<double> grid(static_cast<std::size_t>(nt * np));
    double gmax = -1e300;
    double gmin = 1e300;
    for (int i = 0; i < nt; ++i) {
        for (int j = 0; j < np; ++j) {
            const double v = f(i * dt, j * dp);
            grid[static_cast<std::size_t>(i * np + j)] = v;
            gmax = std::max(gmax, v);
            gmin = std::min(gmin, v);
        }
    }
    out.grid_max = gmax;

    std::vector<Candidate> candidates;
    const double step = 0.5 * std::min(dt, dp);
    // A landscape that is flat over the whole grid (pure states under projective
    // measurements, product states) has no isolated optimum to refine: every grid
    // point would seed a simplex. Report the best grid point instead.
    const bool flat_everywhere = gmax - gmin < kFlatTol;
    if (flat_everywhere) {
        const auto at = static_cast<int>(std::max_element(grid.begin(), grid.end()) - grid.begin());
        candidates.push_back({(at / np) * dt, (at % np) * dp, gmax});
    }
    for (int i = 0; i < nt && !flat_everywhere; ++i) {
        for (int j = 0; j < np; ++j) {
            if (grid[static_cast<std::size_t>(i * np + j)] < gmax - kSeedWindow) {
                continue;
            }
            auto neg = [&f](const std::array<double, 2> &x) { return -f(x[0], x[1]); };
            const auto res = nelder_mead<2>(neg, {i * dt, j * dp}, step, spec.refine_tol);
            const auto [t, p] = normalize_point(spec.family, res.x[0], res.x[1]);
            candidates.push_back({t, p, -res.value});
        }
    }

    double cmax = gmax;
    for (const auto &c : candidates) {
        cmax = std::max(cmax, c.value);
    }
    out.c_max = cmax;

    std::sort(candidates.begin(), candidates.end(), [](const Candidate &a, const Candidate &b) {
        return std::tie(a.theta, a.phi, a.value) < std::tie(b.theta, b.phi, b.value);
    });
    for (const auto &c : candidates) {
        if (c.value < cmax - kOptimumValueTol) {
            continue;
        }
        Measurement m = strategy_measurement(spec, c.theta, c.phi);
        const bool duplicate =
            std::any_of(out.optima.begin(), out.optima.end(), [&](const Optimum &o) {
                const double d = std::hypot(c.theta - o.theta, circular_distance(c.phi, o.phi));
                return d < kDedupTol || same_elements(m, o.measurement, kDedupTol);
            });
        if (!duplicate) {
            out.optima.push_back({c.theta, c.phi, c.value, std::move(m)});
        }
    }

    // variation along the grid lines through the first optimum
    const auto &best = out.optima.front();
    double lo = 1e300;
    double hi = -1e300;
    for (int i = 0; i < nt; ++i) {
        const double v = f(i * dt, best.phi);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    out.flat_theta = hi - lo < kFlatTol;
    lo = 1e300;
    hi = -1e300;
    for (int j = 0; j < np; ++j) {
        const double v = f(best.theta, j * dp);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    out.flat_phi = hi - lo < kFlatTol;
    out.n_evals = f.evaluations();
    return out;
}

std::map<Strategy, OptResult> optimize_all(const DensityMatrix &rho_ab,
                                           const std::vector<StrategySpec> &specs) {
    std::map<Strategy, OptResult> out;
    for (const auto &spec : specs) {
        out.insert_or_assign(spec.family, optimize(rho_ab, spec));
    }
    return out;
}

Vec3 local_operator_axis(double jx, double jy, double jz) {
    const Vec3 j(jx, jy, jz);
    const double n = j.norm();
    if (!(n > 0.0)) {
        throw InvalidInput("local_operator_axis: coupling vector must be nonzero");
    }
    return j / n;
}

Vec3 coupling_direction(const Optimum &opt) { return bloch_vector(opt.theta, opt.phi); }

} // namespace optcorr
