// SPDX-License-Identifier: Apache-2.0
//
// thz-nirs: channel processing and coverage analysis for reflector-aided THz links
// Copyright (C) 2026 The thz-nirs authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "thznirs/geometry.hpp"
#include "thznirs/error.hpp"

#include <algorithm>
#include <string>

namespace thznirs
{
    Vec3 normalized(const Vec3 &a)
    {
        const double n = norm(a);
        if (n == 0.0)
            throw DomainError("cannot normalize a zero-length vector");
        return a * (1.0 / n);
    }

    Vec3 direction_from_angles(double azimuth_deg, double elevation_deg)
    {
        const double az = deg2rad(azimuth_deg), el = deg2rad(elevation_deg);
        return {std::cos(el) * std::cos(az), std::cos(el) * std::sin(az), std::sin(el)};
    }

    double angle_between_deg(const Vec3 &a, const Vec3 &b)
    {
        // atan2 form stays accurate near 0 and 180 degrees
        return rad2deg(std::atan2(norm(cross(a, b)), dot(a, b)));
    }

    Rectangle Rectangle::from_corners(const std::array<Vec3, 4> &c)
    {
        const Vec3 u = c[1] - c[0];
        const Vec3 v = c[3] - c[0];
        const double lu = norm(u), lv = norm(v);
        if (lu == 0.0 || lv == 0.0)
            throw ValidationError("rectangle", "degenerate edge (repeated corner)");
        const Vec3 n_raw = cross(u, v);
        if (norm(n_raw) <= 1e-12 * lu * lv)
            throw ValidationError("rectangle", "collinear corners");
        const Vec3 n = normalized(n_raw);

        const double residual = std::abs(dot(c[2] - c[0], n));
        if (residual >= 1e-9)
            throw ValidationError("coplanarity", "fourth corner is " + std::to_string(residual) +
                                                     " m off the plane of the other three");
        const double scale = std::max(lu, lv);
        if (norm(c[2] - (c[0] + u + v)) > 1e-6 * scale)
            throw ValidationError("rectangle", "corners do not form a parallelogram in order c0,c1,c2,c3");
        if (std::abs(dot(u, v)) > 1e-6 * lu * lv)
            throw ValidationError("rectangle", "edges are not perpendicular");

        Rectangle r;
        r.origin_ = c[0];
        r.u_ = u;
        r.v_ = v;
        r.normal_ = n;
        return r;
    }

    std::array<double, 2> Rectangle::local(const Vec3 &p) const
    {
        const Vec3 d = p - origin_;
        return {dot(d, u_) / dot(u_, u_), dot(d, v_) / dot(v_, v_)};
    }

    bool Rectangle::contains(const Vec3 &p, double tol) const
    {
        if (std::abs(plane_distance(p)) > 1e-6)
            return false;
        const auto [s, t] = local(p);
        const double ts = tol / norm(u_), tt = tol / norm(v_);
        return s >= -ts && s <= 1.0 + ts && t >= -tt && t <= 1.0 + tt;
    }

    Rectangle Rectangle::cell(int row, int col, int rows, int cols) const
    {
        Rectangle r;
        r.u_ = u_ * (1.0 / cols);
        r.v_ = v_ * (1.0 / rows);
        r.origin_ = origin_ + r.u_ * double(col) + r.v_ * double(row);
        r.normal_ = normal_;
        return r;
    }

    std::optional<double> Rectangle::ray_hit(const Vec3 &o, const Vec3 &d, double min_t) const
    {
        const double denom = dot(normal_, d);
        if (std::abs(denom) < 1e-15)
            return std::nullopt;
        const double t = dot(normal_, origin_ - o) / denom;
        if (t < min_t)
            return std::nullopt;
        const auto [s, q] = local(o + t * d);
        constexpr double tol = 1e-12;
        if (s < -tol || s > 1.0 + tol || q < -tol || q > 1.0 + tol)
            return std::nullopt;
        return t;
    }

    bool Rectangle::blocks_segment(const Vec3 &a, const Vec3 &b, double eps) const
    {
        const double da = plane_distance(a), db = plane_distance(b);
        // both ends strictly on one side, or segment lies in the plane
        if ((da > 0.0 && db > 0.0) || (da < 0.0 && db < 0.0) || da == db)
            return false;
        const double t = da / (da - db);
        if (t <= eps || t >= 1.0 - eps)
            return false;
        const auto [s, q] = local(a + t * (b - a));
        return s >= 0.0 && s <= 1.0 && q >= 0.0 && q <= 1.0;
    }

    bool coplanar(const Rectangle &a, const Rectangle &b, double tol)
    {
        if (std::abs(std::abs(dot(a.normal(), b.normal())) - 1.0) > 1e-9)
            return false;
        return std::abs(a.plane_distance(b.origin())) <= tol;
    }
} // namespace thznirs
