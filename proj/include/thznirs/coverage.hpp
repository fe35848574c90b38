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

#ifndef THZNIRS_COVERAGE_HPP
#define THZNIRS_COVERAGE_HPP

#include "thznirs/geometry.hpp"

#include <span>
#include <string>
#include <vector>

namespace thznirs
{
    // Link budget in the dB domain:
    //   snr = p_t + g_t + g_r - PL - F - 10 log10(k T B / 1 mW)
    struct LinkBudget
    {
        double p_t_dbm = 13.0;
        double g_t_dbi = 25.0;
        double g_r_dbi = 25.0;
        double noise_figure_db = 10.0;
        double temperature_k = 300.0;
        double bandwidth_hz = 15e9;
        double boltzmann = 1.381e-23; // W s / K

        void validate() const;

        // Thermal noise k T B in dBm.
        double thermal_noise_dbm() const;

        // snr = offset - PL; 125.07 dB with the defaults above.
        double snr_offset_db() const;
    };

    double snr_db(const LinkBudget &budget, double pl_omni_db);

    // Path loss sampled at equal-length cells along the receiver layout.
    struct CoverageMap
    {
        double resolution_m = 0.0;          // cell length actually used
        std::vector<Vec3> sample_positions; // cell centers
        std::vector<double> pl_omni_db;     // interpolated path loss per cell
        std::vector<double> sample_arc_m;   // polyline mode: arc length of each cell center
        std::vector<double> anchor_arc_m;   // polyline mode: arc length of each anchor
        std::vector<double> anchor_pl_db;

        std::size_t size() const noexcept { return pl_omni_db.size(); }

        // Polyline mode: path loss at arc length s (linear in dB between anchors,
        // clamped outside).
        double pl_at(double arc_m) const;

        std::vector<double> snr_db(const LinkBudget &budget) const;
    };

    // Anchors are the measured Rx positions in measurement order; the map covers
    // the polyline through them with cells no longer than resolution_m.
    // Throws ValidationError for fewer than 2 anchors or repeated positions.
    CoverageMap interpolate_path_loss(std::span<const Vec3> positions, std::span<const double> pl_db,
                                      double resolution_m);

    // Areal alternative: path loss given on a rectangular lattice (xs ascending,
    // ys ascending, pl_db row-major with y as the row) interpolated bilinearly onto
    // square cells of side resolution_m.
    CoverageMap interpolate_grid_bilinear(std::span<const double> xs, std::span<const double> ys,
                                          std::span<const double> pl_db, double resolution_m, double height_m = 0.0);

    // Fraction of cells whose SNR is >= threshold.
    double coverage_ratio(const CoverageMap &map, const LinkBudget &budget, double threshold_db);

    struct CoveragePoint
    {
        double threshold_db = 0.0;
        double ratio = 0.0;
    };

    // coverage_ratio per threshold, sorted by threshold.
    std::vector<CoveragePoint> coverage_curve(const CoverageMap &map, const LinkBudget &budget,
                                              std::span<const double> thresholds_db);

    // start, start + step, ..., up to stop inclusive; parses "-10:1:30" style specs.
    std::vector<double> threshold_range(double start, double step, double stop);
    std::vector<double> parse_threshold_range(const std::string &text);
} // namespace thznirs

#endif
