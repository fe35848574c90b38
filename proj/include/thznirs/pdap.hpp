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

#ifndef THZNIRS_PDAP_HPP
#define THZNIRS_PDAP_HPP

#include "thznirs/calibrate.hpp"
#include "thznirs/scene.hpp"
#include "thznirs/sweep.hpp"
#include "thznirs/synthchan.hpp"

#include <span>
#include <string>
#include <vector>

namespace thznirs
{
    inline constexpr double kSentinelDb = -300.0;
    inline constexpr double kDefaultNoiseThresholdDb = -160.0;

    // Channel impulse response on the delay grid k * delay_step, delay_step = 1 / (f_stop - f_start).
    struct Cir
    {
        std::vector<cdouble> samples;
        double delay_step_s = 0.0;
    };

    // Inverse DFT over one alias period of the sweep. A sweep of N + 1 points spans
    // exactly N steps of f_step, so the transform runs over the first N samples
    // (the last one is the periodic repeat of the first) and yields N delay bins of
    // width 1 / (f_stop - f_start) covering [0, 1 / f_step):
    //   h[k] = (1/N) sum_m H[m] exp(+j 2 pi m k / N), rectangular window.
    Cir to_cir(const FrequencySweep &sweep);

    // Power-delay-angular profile in dB. Every entry is >= noise_threshold_db or
    // exactly kSentinelDb.
    struct Pdap
    {
        ScanGrid grid;
        std::size_t n_delay = 0;
        double delay_step_s = 0.0;
        double noise_threshold_db = kDefaultNoiseThresholdDb;
        std::vector<double> power_db; // [elevation][azimuth][delay]

        std::size_t index(std::size_t i, std::size_t j, std::size_t k) const
        {
            return (i * grid.n_azimuth() + j) * n_delay + k;
        }
        double at(std::size_t i, std::size_t j, std::size_t k) const { return power_db[index(i, j, k)]; }
        static bool is_sentinel(double v) { return v == kSentinelDb; }
    };

    // P[i,j,k] = 20 log10 |h_ij[k]|, then entries below the threshold become the sentinel.
    // `cirs` is row-major over (elevation, azimuth) of `grid`.
    Pdap assemble_pdap(std::span<const Cir> cirs, const ScanGrid &grid,
                       double noise_threshold_db = kDefaultNoiseThresholdDb);

    // Idempotent re-thresholding; the recorded threshold becomes max(old, new).
    Pdap eliminate_noise(const Pdap &pdap, double threshold_db);

    // calibrate -> to_cir -> assemble_pdap for every direction of a bundle.
    Pdap process_bundle(const SweepBundle &bundle, const SystemResponse &sys,
                        double noise_threshold_db = kDefaultNoiseThresholdDb);

    // CSV `el_deg,az_deg,delay_ns,power_db` without sentinel rows.
    std::string pdap_to_csv(const Pdap &pdap);

    // JSON sidecar describing grid, threshold and delay step of an exported profile.
    std::string pdap_sidecar_json(const Pdap &pdap);
} // namespace thznirs

#endif
