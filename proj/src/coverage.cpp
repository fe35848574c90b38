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

#include "thznirs/coverage.hpp"
#include "thznirs/error.hpp"
#include "thznirs/textio.hpp"

#include <algorithm>
#include <cmath>

namespace thznirs
{
    void LinkBudget::validate() const
    {
        if (!(temperature_k > 0.0))
            throw ValidationError("budget_temperature", "temperature must be positive");
        if (!(bandwidth_hz > 0.0))
            throw ValidationError("budget_bandwidth", "bandwidth must be positive");
        if (!(boltzmann > 0.0))
            throw ValidationError("budget_boltzmann", "Boltzmann constant must be positive");
        for (double v : {p_t_dbm, g_t_dbi, g_r_dbi, noise_figure_db})
            if (!std::isfinite(v))
                throw ValidationError("budget_finite", "link-budget terms must be finite");
    }

    double LinkBudget::thermal_noise_dbm() const
    {
        return 10.0 * std::log10(boltzmann * temperature_k * bandwidth_hz / 1e-3);
    }

    double LinkBudget::snr_offset_db() const
    {
        validate();
        return p_t_dbm + g_t_dbi + g_r_dbi - noise_figure_db - thermal_noise_dbm();
    }

    double snr_db(const LinkBudget &budget, double pl_omni_db)
    {
        return budget.snr_offset_db() - pl_omni_db;
    }

    double CoverageMap::pl_at(double s) const
    {
        if (anchor_arc_m.empty())
            throw DomainError("pl_at needs a polyline coverage map");
        if (s <= anchor_arc_m.front())
            return anchor_pl_db.front();
        if (s >= anchor_arc_m.back())
            return anchor_pl_db.back();
        const auto hi = std::upper_bound(anchor_arc_m.begin(), anchor_arc_m.end(), s);
        const std::size_t k = std::size_t(hi - anchor_arc_m.begin()) - 1;
        const double w = (s - anchor_arc_m[k]) / (anchor_arc_m[k + 1] - anchor_arc_m[k]);
        return anchor_pl_db[k] + w * (anchor_pl_db[k + 1] - anchor_pl_db[k]);
    }

    std::vector<double> CoverageMap::snr_db(const LinkBudget &budget) const
    {
        const double offset = budget.snr_offset_db();
        std::vector<double> out(pl_omni_db.size());
        for (std::size_t k = 0; k < out.size(); ++k)
            out[k] = offset - pl_omni_db[k];
        return out;
    }

    CoverageMap interpolate_path_loss(std::span<const Vec3> positions, std::span<const double> pl_db,
                                      double resolution_m)
    {
        if (positions.size() != pl_db.size())
            throw ValidationError("coverage_anchors", "positions and path-loss values differ in count");
        if (positions.size() < 2)
            throw ValidationError("coverage_anchors", "need at least two anchor positions");
        if (!(resolution_m > 0.0))
            throw ValidationError("coverage_resolution", "resolution must be positive");
        for (std::size_t a = 0; a < positions.size(); ++a)
        {
            if (!std::isfinite(pl_db[a]))
                throw ValidationError("coverage_anchors", "anchor path loss must be finite");
            for (std::size_t b = a + 1; b < positions.size(); ++b)
                if (distance(positions[a], positions[b]) < 1e-12)
                    throw ValidationError("duplicate_positions", "anchors " + std::to_string(a + 1) + " and " +
                                                                     std::to_string(b + 1) + " coincide");
        }

        CoverageMap map;
        map.anchor_pl_db.assign(pl_db.begin(), pl_db.end());
        map.anchor_arc_m.push_back(0.0);
        for (std::size_t a = 1; a < positions.size(); ++a)
            map.anchor_arc_m.push_back(map.anchor_arc_m.back() + distance(positions[a - 1], positions[a]));

        const double length = map.anchor_arc_m.back();
        const std::size_t cells = std::max<std::size_t>(1, std::size_t(std::ceil(length / resolution_m - 1e-9)));
        map.resolution_m = length / double(cells);
        std::size_t seg = 0;
        for (std::size_t k = 0; k < cells; ++k)
        {
            const double s = (double(k) + 0.5) * map.resolution_m;
            while (seg + 2 < map.anchor_arc_m.size() && s > map.anchor_arc_m[seg + 1])
                ++seg;
            const double w = (s - map.anchor_arc_m[seg]) / (map.anchor_arc_m[seg + 1] - map.anchor_arc_m[seg]);
            map.sample_arc_m.push_back(s);
            map.sample_positions.push_back(positions[seg] + w * (positions[seg + 1] - positions[seg]));
            map.pl_omni_db.push_back(map.pl_at(s));
        }
        return map;
    }

    CoverageMap interpolate_grid_bilinear(std::span<const double> xs, std::span<const double> ys,
                                          std::span<const double> pl_db, double resolution_m, double height_m)
    {
        if (xs.size() < 2 || ys.size() < 2)
            throw ValidationError("coverage_anchors", "bilinear mode needs at least a 2 x 2 lattice");
        if (pl_db.size() != xs.size() * ys.size())
            throw ValidationError("coverage_anchors", "lattice values must be ny x nx");
        if (!(resolution_m > 0.0))
            throw ValidationError("coverage_resolution", "resolution must be positive");
        for (auto axis : {xs, ys})
            for (std::size_t k = 1; k < axis.size(); ++k)
                if (!(axis[k] > axis[k - 1]))
                    throw ValidationError("duplicate_positions", "lattice coordinates must be strictly increasing");

        const auto cells_along = [&](std::span<const double> axis)
        {
            return std::max<std::size_t>(1, std::size_t(std::ceil((axis.back() - axis.front()) / resolution_m - 1e-9)));
        };
        const std::size_t nx = cells_along(xs), ny = cells_along(ys);
        const double dx = (xs.back() - xs.front()) / double(nx), dy = (ys.back() - ys.front()) / double(ny);
        const auto bracket = [](std::span<const double> axis, double v)
        {
            std::size_t k = std::size_t(std::upper_bound(axis.begin(), axis.end(), v) - axis.begin());
            k = std::clamp<std::size_t>(k, 1, axis.size() - 1) - 1;
            return std::pair{k, (v - axis[k]) / (axis[k + 1] - axis[k])};
        };

        CoverageMap map;
        map.resolution_m = std::max(dx, dy);
        for (std::size_t iy = 0; iy < ny; ++iy)
            for (std::size_t ix = 0; ix < nx; ++ix)
            {
                const double x = xs.front() + (double(ix) + 0.5) * dx;
                const double y = ys.front() + (double(iy) + 0.5) * dy;
                const auto [kx, wx] = bracket(xs, x);
                const auto [ky, wy] = bracket(ys, y);
                const auto v = [&](std::size_t r, std::size_t c) { return pl_db[r * xs.size() + c]; };
                const double pl = (1 - wy) * ((1 - wx) * v(ky, kx) + wx * v(ky, kx + 1)) +
                                  wy * ((1 - wx) * v(ky + 1, kx) + wx * v(ky + 1, kx + 1));
                map.sample_positions.push_back({x, y, height_m});
                map.pl_omni_db.push_back(pl);
            }
        return map;
    }

    double coverage_ratio(const CoverageMap &map, const LinkBudget &budget, double threshold_db)
    {
        if (map.size() == 0)
            throw ValidationError("coverage_map_nonempty", "coverage map has no cells");
        const double offset = budget.snr_offset_db();
        std::size_t covered = 0;
        for (double pl : map.pl_omni_db)
            covered += (offset - pl >= threshold_db) ? 1 : 0;
        return double(covered) / double(map.size());
    }

    std::vector<CoveragePoint> coverage_curve(const CoverageMap &map, const LinkBudget &budget,
                                              std::span<const double> thresholds_db)
    {
        std::vector<double> t(thresholds_db.begin(), thresholds_db.end());
        std::sort(t.begin(), t.end());
        std::vector<CoveragePoint> out;
        for (double th : t)
            out.push_back({th, coverage_ratio(map, budget, th)});
        return out;
    }

    std::vector<double> threshold_range(double start, double step, double stop)
    {
        if (!(step > 0.0) || !(stop >= start))
            throw ValidationError("threshold_range", "need step > 0 and stop >= start");
        std::vector<double> out;
        const long n = long(std::floor((stop - start) / step + 1e-9));
        for (long k = 0; k <= n; ++k)
            out.push_back(start + double(k) * step);
        return out;
    }

    std::vector<double> parse_threshold_range(const std::string &text)
    {
        const auto f = split_fields(text, ':');
        if (f.size() != 3)
            throw ValidationError("threshold_range", "expected start:step:stop, got '" + text + "'");
        return threshold_range(parse_double(f[0], "thresholds"), parse_double(f[1], "thresholds"),
                               parse_double(f[2], "thresholds"));
    }
} // namespace thznirs
