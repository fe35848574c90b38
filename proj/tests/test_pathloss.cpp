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
#include "thznirs/pathloss.hpp"

#include "oracles.hpp"

#include <catch_amalgamated.hpp>

#include <algorithm>

using namespace thznirs;
using Catch::Matchers::WithinAbs;

namespace
{
    Pdap sentinel_pdap(std::size_t n_el, std::size_t n_az, std::size_t n_delay)
    {
        Pdap p;
        p.grid = oracle::small_grid(n_el, n_az);
        p.n_delay = n_delay;
        p.delay_step_s = 1.0 / 15e9;
        p.power_db.assign(p.grid.size() * n_delay, kSentinelDb);
        return p;
    }

    std::vector<DirectionIndex> random_subset(Rng &rng, const ScanGrid &g, double keep)
    {
        std::vector<DirectionIndex> out;
        for (std::size_t i = 0; i < g.n_elevation(); ++i)
            for (std::size_t j = 0; j < g.n_azimuth(); ++j)
                if (rng.uniform() < keep)
                    out.push_back({i, j});
        return out;
    }

    // Band-averaged power of one path seen through a set of Rx scan directions.
    double band_mean_spreading(const FrequencyPlan &plan, double length)
    {
        double s = 0.0;
        const auto f = frequency_grid(plan);
        for (std::size_t m = 0; m + 1 < f.size(); ++m)
            s += std::pow(kSpeedOfLight / (4.0 * kPi * f[m] * length), 2);
        return s / double(f.size() - 1);
    }
} // namespace

TEST_CASE("single and paired entries")
{
    Pdap p = sentinel_pdap(1, 4, 8);
    p.power_db[p.index(0, 1, 3)] = -100.0;
    const std::vector<DirectionIndex> one{{0, 1}};
    CHECK_THAT(directional_path_loss(p, one), WithinAbs(100.0, 1e-12));
    CHECK_THAT(omni_path_loss(p), WithinAbs(100.0, 1e-12));
    p.power_db[p.index(0, 2, 5)] = -100.0;
    const std::vector<DirectionIndex> two{{0, 1}, {0, 2}};
    CHECK_THAT(directional_path_loss(p, two), WithinAbs(96.99, 0.005));
    CHECK_THAT(directional_path_loss(p, two), WithinAbs(-10.0 * std::log10(2e-10), 1e-12));
}

TEST_CASE("duplicate directions count once")
{
    Pdap p = sentinel_pdap(1, 2, 2);
    p.power_db[p.index(0, 0, 0)] = -90.0;
    const std::vector<DirectionIndex> dup{{0, 0}, {0, 0}};
    CHECK_THAT(directional_path_loss(p, dup), WithinAbs(90.0, 1e-12));
}

TEST_CASE("errors: empty set, out of grid, no signal")
{
    Pdap p = sentinel_pdap(2, 2, 3);
    CHECK_THROWS_AS(directional_path_loss(p, {}), ValidationError);
    const std::vector<DirectionIndex> outside{{2, 0}};
    CHECK_THROWS_AS(directional_path_loss(p, outside), ValidationError);
    const std::vector<DirectionIndex> d{{1, 1}};
    CHECK_THROWS_AS(directional_path_loss(p, d), NoSignalError);
    CHECK_THROWS_AS(omni_path_loss(p), NoSignalError);
}

TEST_CASE("subset property on random profiles")
{
    Rng rng(31);
    const ScanGrid g = oracle::small_grid(5, 12);
    for (int trial = 0; trial < 50; ++trial)
    {
        const Pdap p = oracle::random_pdap(rng, g, 30, -200.0, -90.0);
        auto b = random_subset(rng, g, 0.6);
        if (b.empty())
            b.push_back({0, 0});
        std::vector<DirectionIndex> a;
        for (const auto &d : b)
            if (a.empty() || rng.uniform() < 0.5)
                a.push_back(d);
        const double pa = directional_path_loss(p, a);
        const double pb = directional_path_loss(p, b);
        CHECK(pa >= pb);
        CHECK(pb >= omni_path_loss(p));
    }
}

TEST_CASE("adding a surviving entry strictly lowers the path loss")
{
    Rng rng(32);
    const ScanGrid g = oracle::small_grid(2, 4);
    Pdap p = oracle::random_pdap(rng, g, 20, -200.0, -120.0);
    double before = omni_path_loss(p);
    for (std::size_t n = 0; n < p.power_db.size(); ++n)
        if (Pdap::is_sentinel(p.power_db[n]))
        {
            p.power_db[n] = -159.0;
            const double after = omni_path_loss(p);
            CHECK(after < before);
            before = after;
        }
}

TEST_CASE("CI model examples")
{
    for (double ple : {1.0, 1.35, 2.0, 3.3})
        CHECK_THAT(ci_path_loss({ple}, 313.5e9, 1.0), WithinAbs(82.37, 0.005));
    CHECK_THAT(ci_path_loss({2.0}, 313.5e9, 10.0), WithinAbs(102.37, 0.005));
    CHECK_THAT(ci_path_loss(CiModel::corridor(), 313.5e9, 10.0), WithinAbs(95.87, 0.005));
    CHECK_THAT(ci_path_loss({2.0}, 313.5e9, 10.0), WithinAbs(oracle::fspl_db(313.5e9, 10.0), 1e-12));
}

TEST_CASE("CI model domain and monotonicity")
{
    CHECK_THROWS_AS(ci_path_loss({2.0}, 313.5e9, 0.99), DomainError);
    CHECK_THROWS_AS(ci_path_loss({0.0}, 313.5e9, 2.0), ValidationError);
    Rng rng(33);
    for (int k = 0; k < 100; ++k)
    {
        const double d = rng.uniform(1.0, 50.0), f = rng.uniform(100e9, 400e9);
        CHECK(ci_path_loss(CiModel::hallway(), f, d * 1.01) > ci_path_loss(CiModel::hallway(), f, d));
        CHECK(ci_path_loss(CiModel::hallway(), f * 1.01, d) > ci_path_loss(CiModel::hallway(), f, d));
    }
}

TEST_CASE("LoS omni path loss follows Friis with the scan-grid gains")
{
    const Scene s = oracle::open_scene({0, 0, 1.75}, {{10, 0, 1.75}});
    ScanGrid grid;
    for (int a = 0; a < 36; ++a)
        grid.azimuth_deg.push_back(10.0 * a);
    grid.elevation_deg = {0.0};
    const FrequencyPlan plan = FrequencyPlan::band_306_321();
    const Pdap p = process_bundle(synthesize_sweep(s, 0, plan, grid), SystemResponse::identity(plan));
    double gr = 0.0;
    for (double az : grid.azimuth_deg)
        gr += std::pow(10.0, s.rx_antenna.gain_dbi(std::abs(az - 180.0)) / 10.0);
    const double expect = 102.37 - 7.0 - 10.0 * std::log10(gr);
    CHECK_THAT(omni_path_loss(p), WithinAbs(expect, 0.5));
}

TEST_CASE("directional path loss of a Tx-panel-Rx link matches the path budget")
{
    Scene s = oracle::open_scene({0, 0, 2.0}, {{4, 0, 1.75}});
    const double panel_loss = 5.0;
    s.nirs_panels.push_back(
        NirsPanel::make("p", oracle::vertical_rect(1.4, 3, 2.6, 3, 1.2, 2.6), LossTable::constant(panel_loss)));
    // unfolded through the image of the Tx in the panel plane y = 3
    const Vec3 image{0, 6, 2.0};
    const double length = distance(image, s.rx_positions[0]);
    const Vec3 point{2.0, 3.0, 1.875};
    s.tx.boresight = normalized(point - s.tx.position);

    const ScanGrid grid = ScanGrid::measurement_default();
    const FrequencyPlan plan = FrequencyPlan::band_306_321();
    const AngleSet set = nirs_angle_set(s, 0, grid);
    REQUIRE_FALSE(set.directions.empty());
    const Pdap p = process_bundle(synthesize_sweep(s, 0, plan, grid), SystemResponse::identity(plan));

    const Vec3 arrival = normalized(point - s.rx_positions[0]);
    double lin = 0.0;
    for (const auto &d : set.directions)
    {
        const double off = angle_between_deg(arrival, grid.direction(d.elevation, d.azimuth));
        lin += std::pow(10.0, (7.0 + s.rx_antenna.gain_dbi(off) - panel_loss) / 10.0);
    }
    const double expect = -10.0 * std::log10(lin * band_mean_spreading(plan, length));
    CHECK_THAT(directional_path_loss(p, set.directions), WithinAbs(expect, 0.5));
}

TEST_CASE("path-loss table formatting and parsing")
{
    const std::vector<PathLossRecord> rows{{1, 110.123456, 100.5, 26.3, 3.25, 4.0},
                                           {2, std::nan(""), 99.0, 0.0, 1.0, 2.0}};
    const std::string csv = pathloss_table_csv(rows);
    CHECK(csv == "rx_id,pl_dir_db,pl_omni_db,reflection_angle_deg,d1_m,d2_m\n"
                 "1,110.123,100.5,26.3,3.25,4\n"
                 "2,nan,99,0,1,2\n");
    const auto back = pathloss_table_from_csv(csv, "t");
    REQUIRE(back.size() == 2);
    CHECK(back[0].pl_omni_db == 100.5);
    CHECK(std::isnan(back[1].pl_dir_db));
    CHECK_THROWS_AS(pathloss_table_from_csv("rx,pl\n", "t"), ValidationError);
}
