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

#ifndef THZNIRS_SYNTHCHAN_HPP
#define THZNIRS_SYNTHCHAN_HPP

#include "thznirs/scene.hpp"
#include "thznirs/sweep.hpp"

#include <span>
#include <string>
#include <vector>

namespace thznirs
{
    inline constexpr int kDefaultMaxBounces = 2;
    inline constexpr int kMaxBounces = 3;

    // One specular ray between Tx and Rx found by the image method.
    struct PropagationPath
    {
        double delay_s = 0.0;
        double total_length_m = 0.0;
        Vec3 departure_direction; // unit, from Tx towards the first point of the path
        Vec3 arrival_direction;   // unit, from Rx towards the last point of the path
        int bounce_count = 0;
        double cumulative_reflection_loss_db = 0.0;
        std::vector<std::string> surfaces_hit;
        std::vector<Vec3> reflection_points;
        std::vector<double> incidence_deg;
    };

    // All unobstructed specular paths from `from` to `to` with at most max_bounces
    // reflections (0..3), direct path first, then by bounce count and surface order.
    // Walls are opaque; a NIRS panel mounted on a wall replaces the wall's loss
    // where the reflection point falls inside one of its active cells.
    std::vector<PropagationPath> enumerate_paths_between(const Scene &scene, const Vec3 &from, const Vec3 &to,
                                                         int max_bounces = kDefaultMaxBounces);

    std::vector<PropagationPath> enumerate_paths(const Scene &scene, std::size_t rx_index,
                                                 int max_bounces = kDefaultMaxBounces);

    // Frequency-independent part of a path contribution. With spreading_length_m > 0
    // the amplitude is further scaled by the free-space factor c / (4 pi f L).
    struct PathTerm
    {
        double delay_s = 0.0;
        double amplitude = 1.0;
        double spreading_length_m = 0.0;
    };

    // H(f) = sum over terms of A(f) exp(-j 2 pi f delay). Throws AliasingError when a
    // delay does not fit in 1/f_step.
    FrequencySweep sweep_from_terms(std::span<const PathTerm> terms, const FrequencyPlan &plan);

    // Tx gain at departure + Rx gain relative to the scan direction - reflection loss.
    double path_gain_db(const Scene &scene, const PropagationPath &path, const Vec3 &scan_direction);

    struct BundleManifest
    {
        std::string scenario;
        std::string band_label;
        FrequencyPlan plan;
        ScanGrid grid;
        std::size_t rx_index = 0;
        bool nirs = false;
    };

    // One sweep per scan direction, row-major over (elevation, azimuth).
    struct SweepBundle
    {
        BundleManifest manifest;
        std::vector<FrequencySweep> sweeps;

        const FrequencySweep &at(std::size_t elevation_index, std::size_t azimuth_index) const
        {
            return sweeps.at(manifest.grid.flat(elevation_index, azimuth_index));
        }
    };

    SweepBundle synthesize_sweep(const Scene &scene, std::size_t rx_index, const FrequencyPlan &plan,
                                 const ScanGrid &grid, int max_bounces = kDefaultMaxBounces);
} // namespace thznirs

#endif
