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

#ifndef THZNIRS_PATHLOSS_HPP
#define THZNIRS_PATHLOSS_HPP

#include "thznirs/pdap.hpp"
#include "thznirs/scene.hpp"

#include <span>
#include <string>
#include <vector>

namespace thznirs
{
    // Close-in free-space reference distance model:
    //   PL(f, d) = 20 log10(4 pi d0 f / c) + 10 n log10(d / d0),  d0 = 1 m.
    struct CiModel
    {
        double ple = 2.0;
        double reference_distance_m = 1.0;
        double speed_of_light = kSpeedOfLight;

        void validate() const;

        static CiModel corridor() { return {1.35}; }
        static CiModel hallway() { return {1.39}; }
    };

    // -10 log10 of the linear power summed over the selected directions and every
    // non-sentinel delay bin. Antenna gains embedded in the profile are not removed.
    // Throws ValidationError for an empty or out-of-range angle set, NoSignalError
    // when every selected entry is a sentinel. Duplicate directions count once.
    double directional_path_loss(const Pdap &pdap, std::span<const DirectionIndex> angle_set);

    // directional_path_loss over the full scan grid.
    double omni_path_loss(const Pdap &pdap);

    // Throws DomainError for d below the reference distance.
    double ci_path_loss(const CiModel &model, double f_hz, double d_m);

    // One row of the per-Rx batch table.
    struct PathLossRecord
    {
        std::size_t rx_id = 0; // 1-based
        double pl_dir_db = 0.0;
        double pl_omni_db = 0.0;
        double reflection_angle_deg = 0.0;
        double d1_m = 0.0;
        double d2_m = 0.0;
    };

    // CSV `rx_id,pl_dir_db,pl_omni_db,reflection_angle_deg,d1_m,d2_m`, 6 significant digits.
    std::string pathloss_table_csv(std::span<const PathLossRecord> rows);
    std::vector<PathLossRecord> pathloss_table_from_csv(std::string_view text, const std::string &source);
} // namespace thznirs

#endif
