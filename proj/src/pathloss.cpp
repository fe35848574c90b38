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

#include "thznirs/pathloss.hpp"
#include "thznirs/error.hpp"
#include "thznirs/textio.hpp"

#include <algorithm>
#include <cmath>

namespace thznirs
{
    namespace
    {
        double sum_linear(const Pdap &pdap, std::size_t i, std::size_t j, bool &any)
        {
            double s = 0.0;
            for (std::size_t k = 0; k < pdap.n_delay; ++k)
            {
                const double v = pdap.at(i, j, k);
                if (Pdap::is_sentinel(v))
                    continue;
                s += std::pow(10.0, v / 10.0);
                any = true;
            }
            return s;
        }
    } // namespace

    void CiModel::validate() const
    {
        if (!(ple > 0.0))
            throw ValidationError("ci_ple_positive", "path-loss exponent must be positive");
        if (!(reference_distance_m > 0.0) || !(speed_of_light > 0.0))
            throw ValidationError("ci_constants", "reference distance and speed of light must be positive");
    }

    double directional_path_loss(const Pdap &pdap, std::span<const DirectionIndex> angle_set)
    {
        if (angle_set.empty())
            throw ValidationError("angle_set_nonempty", "directional path loss needs at least one direction");
        std::vector<DirectionIndex> dirs(angle_set.begin(), angle_set.end());
        std::sort(dirs.begin(), dirs.end());
        dirs.erase(std::unique(dirs.begin(), dirs.end()), dirs.end());

        double total = 0.0;
        bool any = false;
        for (const auto &d : dirs)
        {
            if (d.elevation >= pdap.grid.n_elevation() || d.azimuth >= pdap.grid.n_azimuth())
                throw ValidationError("angle_set_in_grid", "direction (" + std::to_string(d.elevation) + ", " +
                                                               std::to_string(d.azimuth) + ") outside the scan grid");
            total += sum_linear(pdap, d.elevation, d.azimuth, any);
        }
        if (!any)
            throw NoSignalError("every selected profile entry is below the noise threshold");
        return -10.0 * std::log10(total);
    }

    double omni_path_loss(const Pdap &pdap)
    {
        std::vector<DirectionIndex> all;
        all.reserve(pdap.grid.size());
        for (std::size_t i = 0; i < pdap.grid.n_elevation(); ++i)
            for (std::size_t j = 0; j < pdap.grid.n_azimuth(); ++j)
                all.push_back({i, j});
        return directional_path_loss(pdap, all);
    }

    double ci_path_loss(const CiModel &model, double f_hz, double d_m)
    {
        model.validate();
        if (!(f_hz > 0.0))
            throw DomainError("frequency must be positive");
        if (!(d_m >= model.reference_distance_m))
            throw DomainError("CI model distance " + format_report(d_m) + " m is below the 1 m reference distance");
        const double d0 = model.reference_distance_m;
        return 20.0 * std::log10(4.0 * kPi * d0 * f_hz / model.speed_of_light) +
               10.0 * model.ple * std::log10(d_m / d0);
    }

    std::string pathloss_table_csv(std::span<const PathLossRecord> rows)
    {
        std::string out = "rx_id,pl_dir_db,pl_omni_db,reflection_angle_deg,d1_m,d2_m\n";
        for (const auto &r : rows)
            out += std::to_string(r.rx_id) + ',' + format_report(r.pl_dir_db) + ',' + format_report(r.pl_omni_db) +
                   ',' + format_report(r.reflection_angle_deg) + ',' + format_report(r.d1_m) + ',' +
                   format_report(r.d2_m) + '\n';
        return out;
    }

    std::vector<PathLossRecord> pathloss_table_from_csv(std::string_view text, const std::string &source)
    {
        const auto lines = split_lines(text);
        if (lines.empty() || lines.front() != "rx_id,pl_dir_db,pl_omni_db,reflection_angle_deg,d1_m,d2_m")
            throw ValidationError("pathloss_header", source + ": unexpected header");
        std::vector<PathLossRecord> rows;
        for (std::size_t k = 1; k < lines.size(); ++k)
        {
            if (lines[k].empty())
                continue;
            const auto f = split_fields(lines[k]);
            const std::string where = source + " line " + std::to_string(k + 1);
            if (f.size() != 6)
                throw ValidationError("pathloss_row", where + ": expected 6 fields");
            const double id = parse_double(f[0], where);
            if (!(id >= 1.0) || id != std::floor(id))
                throw ValidationError("pathloss_row", where + ": rx_id must be a positive integer");
            rows.push_back({std::size_t(id), parse_double(f[1], where), parse_double(f[2], where),
                            parse_double(f[3], where), parse_double(f[4], where), parse_double(f[5], where)});
        }
        return rows;
    }
} // namespace thznirs
