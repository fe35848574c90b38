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

// Independent reference computations and fixtures shared by the tests.

#ifndef THZNIRS_TEST_ORACLES_HPP
#define THZNIRS_TEST_ORACLES_HPP

#include "thznirs/pdap.hpp"
#include "thznirs/random.hpp"
#include "thznirs/scene.hpp"
#include "thznirs/sweep.hpp"

#include <atomic>
#include <cmath>
#include <complex>
#include <filesystem>
#include <string>
#include <vector>

#include <unistd.h>

namespace oracle
{
    using thznirs::cdouble;

    // Textbook O(N^2) inverse DFT, h[k] = (1/N) sum_m H[m] exp(+j 2 pi m k / N),
    // with the twiddle angle reduced exactly via (m k) mod N.
    inline std::vector<cdouble> direct_idft(const std::vector<cdouble> &H)
    {
        const std::size_t n = H.size();
        std::vector<cdouble> h(n);
        for (std::size_t k = 0; k < n; ++k)
        {
            std::complex<long double> acc = 0.0L;
            for (std::size_t m = 0; m < n; ++m)
            {
                const long double ang = 2.0L * 3.14159265358979323846264338327950288L *
                                        static_cast<long double>((m * k) % n) / static_cast<long double>(n);
                acc += std::complex<long double>(H[m].real(), H[m].imag()) *
                       std::complex<long double>(std::cos(ang), std::sin(ang));
            }
            h[k] = cdouble(double(acc.real() / n), double(acc.imag() / n));
        }
        return h;
    }

    // Free-space loss of a path of length d at frequency f, in dB.
    inline double fspl_db(double f_hz, double d_m)
    {
        return 20.0 * std::log10(4.0 * thznirs::kPi * f_hz * d_m / thznirs::kSpeedOfLight);
    }

    // Slowly varying complex response: magnitude between roughly 0.1 and 10,
    // a few ripple terms and a random electrical length.
    inline thznirs::FrequencySweep random_smooth_sweep(const thznirs::FrequencyPlan &plan, thznirs::Rng &rng)
    {
        const auto f = thznirs::frequency_grid(plan);
        const double level = rng.uniform(-20.0, 20.0);
        const double delay = rng.uniform(0.0, 10e-9);
        double amp[4], cyc[4], off[4];
        for (int i = 0; i < 4; ++i)
            amp[i] = rng.uniform(0.0, 2.0), cyc[i] = rng.uniform(0.1, 5.0), off[i] = rng.uniform(0.0, 6.3);
        thznirs::FrequencySweep s{plan, std::vector<cdouble>(f.size())};
        for (std::size_t k = 0; k < f.size(); ++k)
        {
            const double x = (f[k] - plan.f_start_hz) / plan.bandwidth_hz();
            double db = level;
            for (int i = 0; i < 4; ++i)
                db += amp[i] * std::sin(2.0 * thznirs::kPi * cyc[i] * x + off[i]);
            const double cycles = f[k] * delay;
            s.values[k] = std::polar(std::pow(10.0, db / 20.0), -2.0 * thznirs::kPi * (cycles - std::floor(cycles)));
        }
        return s;
    }

    // Random profile in dB with entries in [lo, hi], thresholded by brute force.
    inline thznirs::Pdap random_pdap(thznirs::Rng &rng, const thznirs::ScanGrid &grid, std::size_t n_delay,
                                     double lo = -220.0, double hi = -80.0, double threshold = -160.0)
    {
        thznirs::Pdap p;
        p.grid = grid;
        p.n_delay = n_delay;
        p.delay_step_s = 1.0 / 15e9;
        p.noise_threshold_db = threshold;
        p.power_db.resize(grid.size() * n_delay);
        for (auto &v : p.power_db)
        {
            v = rng.uniform(lo, hi);
            if (v < threshold)
                v = thznirs::kSentinelDb;
        }
        return p;
    }

    inline thznirs::ScanGrid small_grid(std::size_t n_el, std::size_t n_az)
    {
        thznirs::ScanGrid g;
        for (std::size_t j = 0; j < n_az; ++j)
            g.azimuth_deg.push_back(double(j) * 360.0 / double(n_az));
        for (std::size_t i = 0; i < n_el; ++i)
            g.elevation_deg.push_back(-20.0 + 10.0 * double(i));
        return g;
    }

    // Wall or panel through two floor points (a, b), from z0 to z1.
    inline thznirs::Rectangle vertical_rect(double ax, double ay, double bx, double by, double z0, double z1)
    {
        return thznirs::Rectangle::from_corners({thznirs::Vec3{ax, ay, z0}, thznirs::Vec3{bx, by, z0},
                                                 thznirs::Vec3{bx, by, z1}, thznirs::Vec3{ax, ay, z1}});
    }

    // Free-space scene: no walls, Tx boresight pointing at the first Rx.
    inline thznirs::Scene open_scene(const thznirs::Vec3 &tx, const std::vector<thznirs::Vec3> &rx)
    {
        thznirs::Scene s;
        s.name = "open";
        s.tx.position = tx;
        s.tx.boresight = thznirs::normalized(rx.front() - tx);
        s.rx_positions = rx;
        return s;
    }

    class TempDir
    {
      public:
        explicit TempDir(const std::string &tag)
        {
            static std::atomic<int> counter{0};
            path_ = std::filesystem::temp_directory_path() /
                    ("thznirs_" + tag + "_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
            std::filesystem::remove_all(path_);
            std::filesystem::create_directories(path_);
        }
        ~TempDir()
        {
            std::error_code ec;
            std::filesystem::remove_all(path_, ec);
        }
        TempDir(const TempDir &) = delete;
        TempDir &operator=(const TempDir &) = delete;
        const std::filesystem::path &path() const noexcept { return path_; }

      private:
        std::filesystem::path path_;
    };
} // namespace oracle

#endif
