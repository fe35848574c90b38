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

#ifndef THZNIRS_GEOMETRY_HPP
#define THZNIRS_GEOMETRY_HPP

#include <array>
#include <cmath>
#include <optional>

namespace thznirs
{
    inline constexpr double kPi = 3.14159265358979323846;
    inline constexpr double kSpeedOfLight = 299792458.0; // m/s

    inline constexpr double deg2rad(double deg)
    {
        return deg * kPi / 180.0;
    }
    inline constexpr double rad2deg(double rad)
    {
        return rad * 180.0 / kPi;
    }

    struct Vec3
    {
        double x = 0.0;
        double y = 0.0;
        double z = 0.0;

        constexpr Vec3 &operator+=(const Vec3 &o)
        {
            x += o.x, y += o.y, z += o.z;
            return *this;
        }
        constexpr Vec3 &operator-=(const Vec3 &o)
        {
            x -= o.x, y -= o.y, z -= o.z;
            return *this;
        }
        constexpr Vec3 &operator*=(double s)
        {
            x *= s, y *= s, z *= s;
            return *this;
        }
        friend constexpr Vec3 operator+(Vec3 a, const Vec3 &b) { return a += b; }
        friend constexpr Vec3 operator-(Vec3 a, const Vec3 &b) { return a -= b; }
        friend constexpr Vec3 operator*(Vec3 a, double s) { return a *= s; }
        friend constexpr Vec3 operator*(double s, Vec3 a) { return a *= s; }
        friend constexpr Vec3 operator-(const Vec3 &a) { return {-a.x, -a.y, -a.z}; }
        friend constexpr bool operator==(const Vec3 &, const Vec3 &) = default;
    };

    inline constexpr double dot(const Vec3 &a, const Vec3 &b)
    {
        return a.x * b.x + a.y * b.y + a.z * b.z;
    }
    inline constexpr Vec3 cross(const Vec3 &a, const Vec3 &b)
    {
        return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
    }
    inline double norm(const Vec3 &a)
    {
        return std::sqrt(dot(a, a));
    }
    inline double distance(const Vec3 &a, const Vec3 &b)
    {
        return norm(a - b);
    }
    Vec3 normalized(const Vec3 &a);

    // Unit vector for an azimuth (from +x towards +y) and elevation (from the xy plane towards +z).
    Vec3 direction_from_angles(double azimuth_deg, double elevation_deg);

    // Angle between two non-zero vectors in degrees, in [0, 180].
    double angle_between_deg(const Vec3 &a, const Vec3 &b);

    // Planar rectangle spanned from `origin` by two orthogonal edges.
    // Corner order is origin, origin + u, origin + u + v, origin + v.
    class Rectangle
    {
      public:
        Rectangle() = default;

        // Builds from four corners; throws ValidationError("coplanarity" / "rectangle")
        // when the corners are not a planar rectangle.
        static Rectangle from_corners(const std::array<Vec3, 4> &corners);

        const Vec3 &origin() const noexcept { return origin_; }
        const Vec3 &edge_u() const noexcept { return u_; }
        const Vec3 &edge_v() const noexcept { return v_; }
        const Vec3 &normal() const noexcept { return normal_; }
        Vec3 center() const { return origin_ + 0.5 * u_ + 0.5 * v_; }
        std::array<Vec3, 4> corners() const { return {origin_, origin_ + u_, origin_ + u_ + v_, origin_ + v_}; }
        double area() const { return norm(cross(u_, v_)); }

        // Signed distance of a point from the rectangle's plane (along the normal).
        double plane_distance(const Vec3 &p) const { return dot(p - origin_, normal_); }

        // Mirror image of a point across the rectangle's plane.
        Vec3 mirror(const Vec3 &p) const { return p - 2.0 * plane_distance(p) * normal_; }

        // Local (s, t) coordinates in units of the two edges; inside iff both in [0, 1].
        std::array<double, 2> local(const Vec3 &p) const;
        bool contains(const Vec3 &p, double tol = 1e-9) const;

        // Sub-rectangle of a rows x cols subdivision. Columns run along u, rows along v.
        Rectangle cell(int row, int col, int rows, int cols) const;

        // Parameter t >= min_t of the first intersection of o + t*d with the rectangle.
        std::optional<double> ray_hit(const Vec3 &o, const Vec3 &d, double min_t = 1e-12) const;

        // True when the open segment (a, b) crosses the rectangle strictly between its ends.
        bool blocks_segment(const Vec3 &a, const Vec3 &b, double eps = 1e-9) const;

        // Rigid transform of all corners.
        template <typename F> Rectangle transformed(F &&f) const
        {
            Rectangle r;
            r.origin_ = f(origin_);
            r.u_ = f(origin_ + u_) - r.origin_;
            r.v_ = f(origin_ + v_) - r.origin_;
            r.normal_ = normalized(cross(r.u_, r.v_));
            return r;
        }

      private:
        Vec3 origin_, u_, v_, normal_;
    };

    // Two rectangles lie in the same plane (parallel normals, zero offset).
    bool coplanar(const Rectangle &a, const Rectangle &b, double tol = 1e-6);
} // namespace thznirs

#endif
