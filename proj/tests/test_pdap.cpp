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
#include "thznirs/pdap.hpp"

#include "oracles.hpp"

#include <catch_amalgamated.hpp>
#include <json.hpp>

using namespace thznirs;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace
{
    const FrequencyPlan kPlan = FrequencyPlan::band_306_321();

    double cir_energy(const Cir &c)
    {
        double e = 0.0;
        for (const auto &v : c.samples)
            e += std::norm(v);
        return e;
    }

    Cir constant_cir(std::size_t n, double magnitude)
    {
        return {std::vector<cdouble>(n, magnitude), 1.0 / 15e9};
    }
} // namespace

TEST_CASE("delay step and length follow the band")
{
    const Cir c = to_cir(FrequencySweep::constant(kPlan, 1.0));
    CHECK(c.samples.size() == 6000);
    CHECK_THAT(c.delay_step_s, WithinRel(1.0 / 15e9, 1e-12));
    CHECK_THAT(c.delay_step_s * 1e12, WithinAbs(66.7, 0.05));
}

TEST_CASE("flat response is a delta at zero delay")
{
    const Cir c = to_cir(FrequencySweep::constant(kPlan, 1.0));
    CHECK(std::abs(c.samples[0] - cdouble(1.0)) < 1e-14);
    for (std::size_t k = 1; k < c.samples.size(); ++k)
        REQUIRE(std::abs(c.samples[k]) < 1e-14);
}

TEST_CASE("linear phase is a shifted delta")
{
    const std::size_t n = 6000;
    for (std::size_t k0 : {std::size_t(1), std::size_t(777), std::size_t(5999)})
    {
        FrequencySweep s{kPlan, std::vector<cdouble>(n + 1)};
        for (std::size_t m = 0; m <= n; ++m)
            s.values[m] = std::polar(1.0, -2.0 * kPi * double((m * k0) % n) / double(n));
        const Cir c = to_cir(s);
        CHECK_THAT(std::abs(c.samples[k0]), WithinAbs(1.0, 1e-12));
        double rest = 0.0;
        for (std::size_t k = 0; k < n; ++k)
            if (k != k0)
                rest = std::max(rest, std::abs(c.samples[k]));
        CHECK(rest < 1e-12);
    }
}

TEST_CASE("FFT agrees with a direct inverse DFT")
{
    Rng rng(7);
    const FrequencyPlan plan{306e9, 306.5e9, 2.5e6};
    const FrequencySweep s = oracle::random_smooth_sweep(plan, rng);
    const Cir c = to_cir(s);
    const auto ref = oracle::direct_idft(std::vector<cdouble>(s.values.begin(), s.values.end() - 1));
    REQUIRE(ref.size() == c.samples.size());
    for (std::size_t k = 0; k < ref.size(); ++k)
        CHECK(std::abs(c.samples[k] - ref[k]) < 1e-12);
}

TEST_CASE("Parseval under the 1/N inverse convention")
{
    Rng rng(8);
    for (int trial = 0; trial < 5; ++trial)
    {
        const FrequencySweep s = oracle::random_smooth_sweep(kPlan, rng);
        double freq_energy = 0.0;
        for (std::size_t m = 0; m + 1 < s.size(); ++m)
            freq_energy += std::norm(s.values[m]);
        freq_energy /= double(s.size() - 1);
        CHECK_THAT(cir_energy(to_cir(s)), WithinRel(freq_energy, 1e-10));
    }
}

TEST_CASE("single 100 ns path peaks at bin 1500")
{
    const double length = 100e-9 * kSpeedOfLight;
    const Scene s = oracle::open_scene({0, 0, 1.75}, {{length, 0, 1.75}});
    const auto paths = enumerate_paths(s, 0);
    REQUIRE(paths.size() == 1);
    const PathTerm term{paths[0].delay_s, 1.0, paths[0].total_length_m};
    const Cir c = to_cir(sweep_from_terms(std::span(&term, 1), kPlan));
    std::size_t peak = 0;
    for (std::size_t k = 0; k < c.samples.size(); ++k)
        if (std::abs(c.samples[k]) > std::abs(c.samples[peak]))
            peak = k;
    CHECK(peak == std::size_t(std::lround(paths[0].delay_s / c.delay_step_s)));
    CHECK(peak == 1500);
    const double expect_db = -oracle::fspl_db(kPlan.center_hz(), length);
    CHECK_THAT(20.0 * std::log10(std::abs(c.samples[peak])), WithinAbs(expect_db, 0.5));
}

TEST_CASE("assemble_pdap thresholds every entry")
{
    const ScanGrid g = oracle::small_grid(2, 3);
    std::vector<Cir> loud(g.size(), constant_cir(10, 1e-5));
    const Pdap a = assemble_pdap(loud, g, -160.0);
    for (double v : a.power_db)
        CHECK_THAT(v, WithinAbs(-100.0, 1e-9));
    std::vector<Cir> quiet(g.size(), constant_cir(10, 1e-9));
    const Pdap b = assemble_pdap(quiet, g, -160.0);
    for (double v : b.power_db)
        CHECK(v == kSentinelDb);
    CHECK(a.n_delay == 10);
    CHECK(a.power_db.size() == g.size() * 10);
}

TEST_CASE("assemble_pdap eliminates exactly the sub-threshold tail")
{
    const ScanGrid g = oracle::small_grid(1, 2);
    Rng rng(9);
    std::vector<Cir> cirs;
    for (std::size_t d = 0; d < g.size(); ++d)
    {
        Cir c{std::vector<cdouble>(400), 1.0 / 15e9};
        for (std::size_t k = 0; k < c.samples.size(); ++k)
            c.samples[k] = std::polar(std::pow(10.0, -(40.0 + 0.4 * double(k)) / 20.0), rng.uniform(0.0, 6.0));
        cirs.push_back(c);
    }
    const Pdap p = assemble_pdap(cirs, g, -160.0);
    for (std::size_t d = 0; d < g.size(); ++d)
        for (std::size_t k = 0; k < 400; ++k)
        {
            const double db = 20.0 * std::log10(std::abs(cirs[d].samples[k]));
            const double got = p.power_db[d * 400 + k];
            if (db < -160.0)
                CHECK(got == kSentinelDb);
            else
                CHECK(got == db);
        }
}

TEST_CASE("mismatched CIRs are rejected")
{
    const ScanGrid g = oracle::small_grid(1, 2);
    std::vector<Cir> cirs{constant_cir(10, 1.0), constant_cir(11, 1.0)};
    CHECK_THROWS_AS(assemble_pdap(cirs, g), GridMismatchError);
    cirs.pop_back();
    CHECK_THROWS_AS(assemble_pdap(cirs, g), GridMismatchError);
}

TEST_CASE("eliminate_noise against a brute-force filter")
{
    Rng rng(10);
    const ScanGrid g = oracle::small_grid(3, 8);
    for (int trial = 0; trial < 20; ++trial)
    {
        const Pdap p = oracle::random_pdap(rng, g, 50, -220.0, -80.0, -300.0 + 1e-9);
        const double t = rng.uniform(-200.0, -100.0);
        const Pdap q = eliminate_noise(p, t);
        for (std::size_t n = 0; n < p.power_db.size(); ++n)
        {
            const double v = p.power_db[n];
            REQUIRE(q.power_db[n] == (v >= t ? v : kSentinelDb));
        }
        CHECK(q.noise_threshold_db == t);
    }
}

TEST_CASE("eliminate_noise is idempotent and composes monotonically")
{
    Rng rng(11);
    const ScanGrid g = oracle::small_grid(2, 6);
    const Pdap p = oracle::random_pdap(rng, g, 40);
    const Pdap once = eliminate_noise(p, -160.0);
    CHECK(eliminate_noise(once, -160.0).power_db == once.power_db);
    const Pdap twice = eliminate_noise(once, -150.0);
    const Pdap direct = eliminate_noise(p, -150.0);
    CHECK(twice.power_db == direct.power_db);
    CHECK(twice.noise_threshold_db == -150.0);
    // a lower threshold keeps the stricter recorded one
    CHECK(eliminate_noise(twice, -170.0).noise_threshold_db == -150.0);
    for (double v : once.power_db)
        CHECK((v >= -160.0 || v == kSentinelDb));
}

TEST_CASE("thresholding never adds power and a floor just above the sentinel keeps it all")
{
    Rng rng(12);
    const ScanGrid g = oracle::small_grid(2, 4);
    std::vector<Cir> cirs;
    for (std::size_t d = 0; d < g.size(); ++d)
    {
        Cir c{std::vector<cdouble>(64), 1.0 / 15e9};
        for (auto &v : c.samples)
            v = std::polar(std::pow(10.0, rng.uniform(-250.0, -60.0) / 20.0), rng.uniform(0.0, 6.0));
        cirs.push_back(c);
    }
    auto total = [](const Pdap &p)
    {
        double s = 0.0;
        for (double v : p.power_db)
            if (!Pdap::is_sentinel(v))
                s += std::pow(10.0, v / 10.0);
        return s;
    };
    double raw = 0.0;
    for (const auto &c : cirs)
        raw += cir_energy(c);
    const Pdap all = assemble_pdap(cirs, g, -299.999);
    CHECK_THAT(total(all), WithinRel(raw, 1e-12));
    const Pdap cut = assemble_pdap(cirs, g, -160.0);
    CHECK(total(cut) <= total(all));
}

TEST_CASE("thresholds at or below the sentinel are invalid")
{
    const ScanGrid g = oracle::small_grid(1, 1);
    std::vector<Cir> cirs{constant_cir(4, 1.0)};
    CHECK_THROWS_AS(assemble_pdap(cirs, g, -300.0), DomainError);
    const Pdap p = assemble_pdap(cirs, g);
    CHECK_THROWS_AS(eliminate_noise(p, -300.0), DomainError);
    CHECK_THROWS_AS(eliminate_noise(p, -400.0), DomainError);
}

TEST_CASE("PDAP export omits sentinel rows")
{
    ScanGrid g;
    g.azimuth_deg = {0.0, 10.0};
    g.elevation_deg = {-10.0};
    std::vector<Cir> cirs{{{1e-5, 1e-9}, 1.0 / 15e9}, {{1e-9, 1e-6}, 1.0 / 15e9}};
    const Pdap p = assemble_pdap(cirs, g);
    CHECK(pdap_to_csv(p) == "el_deg,az_deg,delay_ns,power_db\n"
                            "-10,0,0,-100\n"
                            "-10,10,0.0666667,-120\n");
    const auto j = nlohmann::json::parse(pdap_sidecar_json(p));
    CHECK(j["noise_threshold_db"] == -160.0);
    CHECK(j["sentinel_db"] == -300.0);
    CHECK(j["n_delay"] == 2);
    CHECK(j["scan_grid"]["azimuth_deg"].size() == 2);
}
