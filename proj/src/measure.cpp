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

#include "optcorr/measure.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "optcorr/error.hpp"

namespace optcorr {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_phi(double phi) {
    double p = std::fmod(phi, kTwoPi);
    if (p < 0.0) {
        p += kTwoPi;
    }
    return p >= kTwoPi ? 0.0 : p;
}

Measurement cic_from_unit(const Vec3 &n, MeasurementLabel label) {
    const double x = n.x();
    const double y = n.y();
    const double z = n.z();
    std::vector<MeasurementElement> el = {
        {0.25, Vec3(x, y, z)},
        {0.25, Vec3(x, -y, -z)},
        {0.25, Vec3(-x, y, -z)},
        {0.25, Vec3(-x, -y, z)},
    };
    return {std::move(el), std::move(label)};
}

} // namespace

std::string_view to_string(MeasurementFamily f) {
    switch (f) {
    case MeasurementFamily::Proj:
        return "PROJ";
    case MeasurementFamily::Sic:
        return "SIC";
    case MeasurementFamily::Cic:
        return "CIC";
    case MeasurementFamily::Cic3:
        return "CIC3";
    }
    return "?";
}

Measurement::Measurement(std::vector<MeasurementElement> elements, MeasurementLabel label)
    : elements_(std::move(elements)), label_(std::move(label)) {
    if (elements_.empty()) {
        throw InvalidInput("measurement: no elements");
    }
    double total = 0.0;
    Vec3 centre = Vec3::Zero();
    for (const auto &e : elements_) {
        if (!(e.weight >= 0.0) || e.axis.norm() > 1.0 + 1e-12) {
            throw InvalidInput("measurement: element is not a positive operator");
        }
        total += e.weight;
        centre += e.weight * e.axis;
    }
    if (std::abs(total - 1.0) > 1e-12 || centre.norm() > 1e-12) {
        throw InvalidInput("measurement: elements do not resolve the identity");
    }
}

Eigen::Matrix2cd Measurement::element_matrix(std::size_t k) const {
    const auto &e = elements_.at(k);
    Eigen::Matrix2cd m;
    const std::complex<double> off(e.axis.x(), -e.axis.y());
    m << 1.0 + e.axis.z(), off, std::conj(off), 1.0 - e.axis.z();
    return e.weight * m;
}

bool Measurement::is_rank1(double tol) const {
    return std::all_of(elements_.begin(), elements_.end(), [tol](const auto &e) {
        return std::abs(e.axis.norm() - 1.0) <= tol;
    });
}

Vec3 bloch_vector(double theta, double phi) {
    return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
            std::cos(theta)};
}

Eigen::Matrix3d rotation_matrix(double theta, double phi) {
    const double ct = std::cos(theta);
    const double st = std::sin(theta);
    const double cp = std::cos(phi);
    const double sp = std::sin(phi);
    Eigen::Matrix3d ry;
    ry << ct, 0.0, st, 0.0, 1.0, 0.0, -st, 0.0, ct;
    Eigen::Matrix3d rz;
    rz << cp, -sp, 0.0, sp, cp, 0.0, 0.0, 0.0, 1.0;
    return rz * ry;
}

Measurement projective(double theta, double phi) {
    const Vec3 n = bloch_vector(theta, phi);
    const auto [t, p] = bloch_angles(n);
    return {{{0.5, n}, {0.5, -n}}, {MeasurementFamily::Proj, {t, p}, {}}};
}

Measurement cic_povm(double jx, double jy, double jz) {
    const Vec3 j(jx, jy, jz);
    const double n = j.norm();
    if (!(n > 0.0) || !std::isfinite(n)) {
        throw InvalidInput("cic_povm: coupling vector must be nonzero");
    }
    return cic_from_unit(j / n, {MeasurementFamily::Cic, {jx, jy, jz}, {}});
}

Measurement sic_povm() {
    auto m = cic_povm(1.0, 1.0, 1.0);
    return {m.elements(), {MeasurementFamily::Sic, {}, {}}};
}

Measurement cic_povm_direction(double theta_j, double phi_j) {
    const Vec3 n = bloch_vector(theta_j, phi_j);
    return cic_from_unit(n, {MeasurementFamily::Cic3, {n.x(), n.y(), n.z()}, {}});
}

Measurement rotate(const Measurement &m, double theta, double phi) {
    const Eigen::Matrix3d r = rotation_matrix(theta, phi);
    std::vector<MeasurementElement> el = m.elements();
    for (auto &e : el) {
        e.axis = r * e.axis;
    }
    MeasurementLabel label = m.label();
    label.rotations.emplace_back(theta, phi);
    return {std::move(el), std::move(label)};
}

std::pair<double, double> bloch_angles(const Vec3 &v) {
    const double n = v.norm();
    const double theta = std::acos(std::clamp(v.z() / n, -1.0, 1.0));
    const double rho = std::hypot(v.x(), v.y());
    const double phi = rho <= 1e-15 * n ? 0.0 : wrap_phi(std::atan2(v.y(), v.x()));
    return {theta, phi};
}

std::vector<Rank1State> rank1_decomposition(const Measurement &m) {
    if (!m.is_rank1(1e-8)) {
        throw UnsupportedMeasurement("rank1_decomposition: element is not rank one");
    }
    std::vector<Rank1State> out;
    out.reserve(m.size());
    for (const auto &e : m.elements()) {
        const auto [t, p] = bloch_angles(e.axis);
        out.push_back({t, p, e.weight});
    }
    return out;
}

bool same_elements(const Measurement &a, const Measurement &b, double tol) {
    if (a.size() != b.size()) {
        return false;
    }
    std::vector<bool> used(b.size(), false);
    for (const auto &ea : a.elements()) {
        bool found = false;
        for (std::size_t k = 0; k < b.size(); ++k) {
            const auto &eb = b.elements()[k];
            if (!used[k] && std::abs(ea.weight - eb.weight) <= tol &&
                (ea.axis - eb.axis).norm() <= tol) {
                used[k] = true;
                found = true;
                break;
            }
        }
        if (!found) {
            return false;
        }
    }
    return true;
}

} // namespace optcorr
