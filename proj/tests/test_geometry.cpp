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

#include "thznirs/error.hpp"
#include "thznirs/geometry.hpp"

#include "oracles.hpp"

#include <catch_amalgamated.hpp>

using namespace thznirs;
using Catch::Matchers::WithinAbs;

TEST_CASE("direction_from_angles follows the azimuth/elevation convention")
{
    const Vec3 east = direction_from_angles(0.0, 0.0);
    const Vec3 north = direction_from_angles(90.0, 0.0);
    const Vec3 up = direction_from_angles(123.0, 90.0);
    CHECK_THAT(east.x, WithinAbs(1.0, 1e-15));
    CHECK_THAT(north.y, WithinAbs(1.0, 1e-15));
    CHECK_THAT(north.x, WithinAbs(0.0, 1e-15));
    CHECK_THAT(up.z, WithinAbs(1.0, 1e-15));
    const Vec3 d = direction_from_angles(30.0, 20.0);
    CHECK_THAT(norm(d), WithinAbs(1.0, 1e-15));
    CHECK_THAT(d.z, WithinAbs(std::sin(deg2rad(20.0)), 1e-15));
}

TEST_CASE("angle_between_deg")
{
    CHECK_THAT(angle_between_deg({1, 0, 0}, {0, 2, 0}), WithinAbs(90.0, 1e-12));
    CHECK_THAT(angle_between_deg({1, 0, 0}, {-3, 0, 0}), WithinAbs(180.0, 1e-12));
    CHECK_THAT(angle_between_deg({1, 1, 0}, {1, 0, 0}), WithinAbs(45.0, 1e-12));
    // tiny angles stay accurate
    CHECK_THAT(angle_between_deg({1, 0, 0}, {1, 1e-9, 0}), WithinAbs(rad2deg(1e-9), 1e-18));
}

TEST_CASE("Rectangle construction validates planarity and shape")
{
    const Rectangle r = oracle::vertical_rect(0, 0, 4, 0, 0, 3);
    CHECK_THAT(r.area(), WithinAbs(12.0, 1e-12));
    CHECK_THAT(std::abs(r.normal().y), WithinAbs(1.0, 1e-15));
    CHECK(r.center() == Vec3{2.0, 0.0, 1.5});

    try
    {
        Rectangle::from_corners({Vec3{0, 0, 0}, Vec3{1, 0, 0}, Vec3{1, 1e-3, 1}, Vec3{0, 0, 1}});
        FAIL("nonplanar corners accepted");
    }
    catch (const ValidationError &e)
    {
        CHECK(e.invariant() == "coplanarity");
    }
    try
    {
        Rectangle::from_corners({Vec3{0, 0, 0}, Vec3{1, 0, 0}, Vec3{2, 0, 1}, Vec3{1, 0, 1}});
        FAIL("parallelogram accepted");
    }
    catch (const ValidationError &e)
    {
        CHECK(e.invariant() == "rectangle");
    }
    CHECK_THROWS_AS(Rectangle::from_corners({Vec3{0, 0, 0}, Vec3{0, 0, 0}, Vec3{1, 0, 1}, Vec3{0, 0, 1}}),
                    ValidationError);
}

TEST_CASE("Rectangle containment, cells and mirror")
{
    const Rectangle r = oracle::vertical_rect(0, 0, 3, 0, 0, 3);
    CHECK(r.contains({1.5, 0.0, 1.5}));
    CHECK(r.contains({3.0, 0.0, 3.0}));
    CHECK_FALSE(r.contains({3.1, 0.0, 1.0}));
    CHECK_FALSE(r.contains({1.0, 0.5, 1.0}));

    double total = 0.0;
    for (int row = 0; row < 3; ++row)
        for (int col = 0; col < 3; ++col)
        {
            const Rectangle c = r.cell(row, col, 3, 3);
            CHECK_THAT(c.area(), WithinAbs(1.0, 1e-12));
            CHECK(r.contains(c.center()));
            total += c.area();
        }
    CHECK_THAT(total, WithinAbs(r.area(), 1e-12));
    CHECK(r.cell(0, 0, 3, 3).contains({0.5, 0.0, 0.5}));
    CHECK(r.cell(2, 1, 3, 3).contains({1.5, 0.0, 2.5}));

    const Vec3 p{1.0, 2.0, 1.0};
    const Vec3 m = r.mirror(p);
    CHECK_THAT(m.y, WithinAbs(-2.0, 1e-15));
    CHECK_THAT(r.plane_distance(p), WithinAbs(-r.plane_distance(m), 1e-15));
}

TEST_CASE("ray_hit and blocks_segment")
{
    const Rectangle r = oracle::vertical_rect(5, -1, 5, 1, 0, 2);
    const auto t = r.ray_hit({0, 0, 1}, {1, 0, 0});
    REQUIRE(t.has_value());
    CHECK_THAT(*t, WithinAbs(5.0, 1e-12));
    CHECK_FALSE(r.ray_hit({0, 0, 1}, {-1, 0, 0}).has_value());
    CHECK_FALSE(r.ray_hit({0, 0, 1}, {1, 1, 0}).has_value());
    CHECK_FALSE(r.ray_hit({0, 0, 1}, {0, 1, 0}).has_value());

    CHECK(r.blocks_segment({0, 0, 1}, {10, 0, 1}));
    CHECK_FALSE(r.blocks_segment({0, 0, 1}, {4, 0, 1}));
    CHECK_FALSE(r.blocks_segment({0, 0, 1}, {5, 0, 1}));  // ends on the surface
    CHECK_FALSE(r.blocks_segment({0, 0, 3}, {10, 0, 3})); // passes above
}

TEST_CASE("coplanar")
{
    const Rectangle wall = oracle::vertical_rect(0, 0, 10, 0, 0, 3);
    CHECK(coplanar(wall, oracle::vertical_rect(2, 0, 3, 0, 1, 2)));
    CHECK(coplanar(wall, oracle::vertical_rect(3, 0, 2, 0, 1, 2)));
    CHECK_FALSE(coplanar(wall, oracle::vertical_rect(2, 0.1, 3, 0.1, 1, 2)));
    CHECK_FALSE(coplanar(wall, oracle::vertical_rect(2, 0, 3, 1, 1, 2)));
}
