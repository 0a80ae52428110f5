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

// Nelder-Mead simplex minimization for small unconstrained problems.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <numeric>

namespace optcorr {

template <std::size_t N>
struct SimplexResult {
    std::array<double, N> x{};
    double value = 0.0;
    int evaluations = 0;
    bool converged = false;
};

/// Minimizes `f` starting from `x0` with an axis-aligned initial simplex of
/// edge `step`. Stops when every vertex lies within `xtol` of the best one
/// or after `max_evals` evaluations. The returned point is never worse than
/// `x0`.
template <std::size_t N, class F>
SimplexResult<N> nelder_mead(F &&f, const std::array<double, N> &x0, double step,
                             double xtol, int max_evals = 2000) {
    using Point = std::array<double, N>;
    constexpr double kReflect = 1.0;
    constexpr double kExpand = 2.0;
    constexpr double kContract = 0.5;
    constexpr double kShrink = 0.5;

    std::array<Point, N + 1> pts;
    std::array<double, N + 1> vals;
    int evals = 0;
    auto eval = [&](const Point &p) {
        ++evals;
        return f(p);
    };
    pts[0] = x0;
    vals[0] = eval(x0);
    for (std::size_t i = 0; i < N; ++i) {
        pts[i + 1] = x0;
        pts[i + 1][i] += step;
        vals[i + 1] = eval(pts[i + 1]);
    }

    std::array<std::size_t, N + 1> order;
    auto sort_vertices = [&] {
        std::iota(order.begin(), order.end(), std::size_t{0});
        // ties broken by vertex index so runs are reproducible
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
        std::array<Point, N + 1> p2;
        std::array<double, N + 1> v2;
        for (std::size_t i = 0; i <= N; ++i) {
            p2[i] = pts[order[i]];
            v2[i] = vals[order[i]];
        }
        pts = p2;
        vals = v2;
    };
    auto combine = [](const Point &a, const Point &b, double t) {
        Point out;
        for (std::size_t i = 0; i < N; ++i) {
            out[i] = a[i] + t * (b[i] - a[i]);
        }
        return out;
    };

    bool converged = false;
    while (evals < max_evals) {
        sort_vertices();
        double spread = 0.0;
        for (std::size_t v = 1; v <= N; ++v) {
            for (std::size_t i = 0; i < N; ++i) {
                spread = std::max(spread, std::abs(pts[v][i] - pts[0][i]));
            }
        }
        if (spread <= xtol) {
            converged = true;
            break;
        }
        Point centroid{};
        for (std::size_t v = 0; v < N; ++v) {
            for (std::size_t i = 0; i < N; ++i) {
                centroid[i] += pts[v][i] / static_cast<double>(N);
            }
        }
        const Point xr = combine(centroid, pts[N], -kReflect);
        const double fr = eval(xr);
        if (fr < vals[0]) {
            const Point xe = combine(centroid, pts[N], -kExpand);
            const double fe = eval(xe);
            if (fe < fr) {
                pts[N] = xe;
                vals[N] = fe;
            } else {
                pts[N] = xr;
                vals[N] = fr;
            }
            continue;
        }
        if (fr < vals[N - 1]) {
            pts[N] = xr;
            vals[N] = fr;
            continue;
        }
        const bool outside = fr < vals[N];
        const Point xc = outside ? combine(centroid, xr, kContract)
                                 : combine(centroid, pts[N], kContract);
        const double fc = eval(xc);
        if (fc < (outside ? fr : vals[N])) {
            pts[N] = xc;
            vals[N] = fc;
            continue;
        }
        for (std::size_t v = 1; v <= N; ++v) {
            pts[v] = combine(pts[0], pts[v], kShrink);
            vals[v] = eval(pts[v]);
        }
    }
    sort_vertices();
    return {pts[0], vals[0], evals, converged};
}

} // namespace optcorr
