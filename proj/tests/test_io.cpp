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

#include "thznirs/bundle_io.hpp"
#include "thznirs/error.hpp"
#include "thznirs/pathloss.hpp"
#include "thznirs/reflfit.hpp"
#include "thznirs/sweep.hpp"
#include "thznirs/textio.hpp"

#include "oracles.hpp"

#include <catch_amalgamated.hpp>

#include <json.hpp>

using namespace thznirs;
using Catch::Matchers::ContainsSubstring;

TEST_CASE("number formatting")
{
    CHECK(format_report(96.98970004336019) == "96.9897");
    CHECK(format_report(0.5) == "0.5");
    CHECK(format_report(std::nan("")) == "nan");
    CHECK(format_report(-10.0) == "-10");
    Rng rng(1);
    for (int k = 0; k < 1000; ++k)
    {
        const double v = (rng.uniform() - 0.5) * std::pow(10.0, rng.uniform(-30.0, 30.0));
        CHECK(parse_double(format_exact(v), "test") == v);
    }
    CHECK_THROWS_AS(parse_double("1.5x", "test"), ValidationError);
    CHECK_THROWS_AS(parse_double("", "test"), ValidationError);
    CHECK(std::isnan(parse_double("nan", "test")));
}

TEST_CASE("sweep CSV round trip is lossless")
{
    Rng rng(3);
    const auto plan = FrequencyPlan::band_306_321();
    const FrequencySweep s = oracle::random_smooth_sweep(plan, rng);
    const std::string text = sweep_to_csv(s);
    CHECK(text.rfind("freq_hz,s21_re,s21_im\n", 0) == 0);
    const FrequencySweep back = sweep_from_csv(text, "mem");
    CHECK(same_grid(back.plan, plan));
    REQUIRE(back.values.size() == s.values.size());
    CHECK(back.values == s.values);
}

TEST_CASE("sweep CSV rejects malformed input")
{
    CHECK_THROWS_AS(sweep_from_csv("f,re,im\n1,0,0\n2,0,0\n", "x"), ValidationError);
    try
    {
        sweep_from_csv("freq_hz,s21_re,s21_im\n1,0,0\n2,0,0\n4,0,0\n", "x");
        FAIL("non-uniform grid accepted");
    }
    catch (const ValidationError &e)
    {
        CHECK(e.invariant() == "uniform_grid");
    }
    CHECK_THROWS_AS(sweep_from_csv("freq_hz,s21_re,s21_im\n1,0\n2,0,0\n", "x"), ValidationError);
    CHECK_THROWS_AS(read_sweep_csv("/nonexistent/sweep.csv"), IoError);
}

TEST_CASE("bundles round trip through disk")
{
    oracle::TempDir tmp("bundle");
    const FrequencyPlan plan{306e9, 306.1e9, 2.5e6};
    const ScanGrid grid = oracle::small_grid(2, 3);
    SweepBundle b;
    b.manifest = {"corridor", plan.band_label(), plan, grid, 4, true};
    Rng rng(9);
    for (std::size_t k = 0; k < grid.size(); ++k)
        b.sweeps.push_back(oracle::random_smooth_sweep(plan, rng));
    write_bundle(b, tmp.path() / "rx5");

    CHECK(std::filesystem::exists(tmp.path() / "rx5" / "el1_az2.csv"));
    CHECK(direction_file_name(1, 2) == "el1_az2.csv");
    const auto manifest = nlohmann::json::parse(read_text_file(tmp.path() / "rx5" / "manifest.json"));
    CHECK(manifest.at("nirs") == true);
    CHECK(manifest.at("scenario") == "corridor");
    CHECK(manifest.at("rx_index") == 4);

    const SweepBundle back = read_bundle(tmp.path() / "rx5");
    CHECK(back.manifest.scenario == "corridor");
    CHECK(back.manifest.rx_index == 4);
    CHECK(back.manifest.nirs);
    CHECK(back.manifest.grid.azimuth_deg == grid.azimuth_deg);
    CHECK(back.manifest.grid.elevation_deg == grid.elevation_deg);
    REQUIRE(back.sweeps.size() == grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k)
        CHECK(back.sweeps[k].values == b.sweeps[k].values);

    std::filesystem::remove(tmp.path() / "rx5" / "el0_az1.csv");
    try
    {
        read_bundle(tmp.path() / "rx5");
        FAIL("missing file not reported");
    }
    catch (const IoError &e)
    {
        CHECK_THAT(std::string(e.what()), ContainsSubstring("el0_az1.csv"));
    }
}

TEST_CASE("atomic writes leave no temporary files")
{
    oracle::TempDir tmp("atomic");
    write_text_file_atomic(tmp.path() / "a.txt", "one\n");
    write_text_file_atomic(tmp.path() / "a.txt", "two\n");
    CHECK(read_text_file(tmp.path() / "a.txt") == "two\n");
    std::size_t n = 0;
    for ([[maybe_unused]] const auto &e : std::filesystem::directory_iterator(tmp.path()))
        ++n;
    CHECK(n == 1);
}

TEST_CASE("path-loss table CSV")
{
    const std::vector<PathLossRecord> rows{{1, 110.25, 100.5, 17.5, 10.0, 3.0},
                                           {2, std::nan(""), 120.0, 45.0, 11.0, 4.0}};
    const std::string csv = pathloss_table_csv(rows);
    CHECK(csv == "rx_id,pl_dir_db,pl_omni_db,reflection_angle_deg,d1_m,d2_m\n"
                 "1,110.25,100.5,17.5,10,3\n"
                 "2,nan,120,45,11,4\n");
    const auto back = pathloss_table_from_csv(csv, "mem");
    REQUIRE(back.size() == 2);
    CHECK(back[0].pl_omni_db == 100.5);
    CHECK(std::isnan(back[1].pl_dir_db));
    CHECK(back[1].rx_id == 2);
}

TEST_CASE("reflection-loss sample CSV")
{
    const std::vector<ReflSample> rows{{"hallway", "306-321GHz", 3, 20.5, 4.25, true},
                                       {"hallway", "306-321GHz", 4, 33.0, 14.0, false}};
    const std::string csv = refl_samples_csv(rows);
    CHECK(csv.rfind("scenario,band,rx_id,reflection_angle_deg,l_ref_db,with_nirs\n", 0) == 0);
    const auto back = refl_samples_from_csv(csv, "mem");
    REQUIRE(back.size() == 2);
    CHECK(back[0].with_nirs);
    CHECK_FALSE(back[1].with_nirs);
    CHECK(back[1].additional_loss_db == 14.0);
    CHECK(back[0].scenario == "hallway");
}
