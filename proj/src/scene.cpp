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

#include "thznirs/scene.hpp"
#include "thznirs/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>

namespace thznirs
{
    namespace
    {
        std::string num(double v)
        {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.9g", v);
            return buf;
        }
    } // namespace

    // ---- FrequencyPlan ------------------------------------------------------

    void FrequencyPlan::validate() const
    {
        if (!std::isfinite(f_start_hz) || !std::isfinite(f_stop_hz) || !std::isfinite(f_step_hz))
            throw ValidationError("frequency_plan_finite", "frequencies must be finite");
        if (!(f_stop_hz > f_start_hz))
            throw ValidationError("frequency_plan_order", "f_stop (" + num(f_stop_hz) + " Hz) must exceed f_start (" +
                                                              num(f_start_hz) + " Hz)");
        if (!(f_step_hz > 0.0))
            throw ValidationError("frequency_plan_step", "f_step must be positive");
        const double steps = (f_stop_hz - f_start_hz) / f_step_hz;
        const double whole = std::round(steps);
        if (std::abs(steps - whole) > 1e-6 * steps)
            throw ValidationError("frequency_plan_integer_multiple",
                                  "f_stop - f_start is " + num(steps) + " steps, not an integer multiple of f_step");
        if (whole < 1.0)
            throw ValidationError("frequency_plan_point_count", "fewer than two frequency points");
    }

    std::size_t FrequencyPlan::point_count() const
    {
        return std::size_t(std::llround((f_stop_hz - f_start_hz) / f_step_hz)) + 1;
    }

    std::string FrequencyPlan::band_label() const
    {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%g-%gGHz", f_start_hz / 1e9, f_stop_hz / 1e9);
        return buf;
    }

    std::vector<double> frequency_grid(const FrequencyPlan &plan)
    {
        plan.validate();
        const std::size_t n = plan.point_count();
        const double span = plan.f_stop_hz - plan.f_start_hz;
        std::vector<double> f(n);
        for (std::size_t m = 0; m < n; ++m)
            f[m] = plan.f_start_hz + span * double(m) / double(n - 1);
        f.back() = plan.f_stop_hz;
        return f;
    }

    bool same_grid(const FrequencyPlan &a, const FrequencyPlan &b)
    {
        const auto close = [](double x, double y)
        { return std::abs(x - y) <= 1e-9 * std::max(std::abs(x), std::abs(y)); };
        return a.point_count() == b.point_count() && close(a.f_start_hz, b.f_start_hz) &&
               close(a.f_stop_hz, b.f_stop_hz);
    }

    // ---- ScanGrid / AntennaPattern / LossTable --------------------------------

    ScanGrid ScanGrid::measurement_default()
    {
        ScanGrid g;
        for (int a = 0; a < 360; a += 10)
            g.azimuth_deg.push_back(a);
        for (int e = -20; e <= 20; e += 10)
            g.elevation_deg.push_back(e);
        return g;
    }

    void ScanGrid::validate() const
    {
        if (azimuth_deg.empty() || elevation_deg.empty())
            throw ValidationError("scan_grid_nonempty", "azimuth and elevation lists must be non-empty");
        for (std::size_t k = 0; k < azimuth_deg.size(); ++k)
        {
            if (!(azimuth_deg[k] >= 0.0 && azimuth_deg[k] < 360.0))
                throw ValidationError("scan_grid_azimuth_range",
                                      "azimuth " + num(azimuth_deg[k]) + " outside [0, 360)");
            if (k > 0 && !(azimuth_deg[k] > azimuth_deg[k - 1]))
                throw ValidationError("scan_grid_increasing", "azimuth angles must be strictly increasing");
        }
        for (std::size_t k = 0; k < elevation_deg.size(); ++k)
        {
            if (!(elevation_deg[k] >= -90.0 && elevation_deg[k] <= 90.0))
                throw ValidationError("scan_grid_elevation_range",
                                      "elevation " + num(elevation_deg[k]) + " outside [-90, 90]");
            if (k > 0 && !(elevation_deg[k] > elevation_deg[k - 1]))
                throw ValidationError("scan_grid_increasing", "elevation angles must be strictly increasing");
        }
    }

    void AntennaPattern::validate() const
    {
        if (!std::isfinite(boresight_gain_dbi))
            throw ValidationError("antenna_gain_finite", "boresight gain must be finite");
        if (!(hpbw_deg > 0.0 && hpbw_deg < 180.0))
            throw ValidationError("antenna_hpbw_range", "HPBW " + num(hpbw_deg) + " outside (0, 180)");
    }

    double AntennaPattern::gain_dbi(double off_axis_deg) const
    {
        const double r = off_axis_deg / hpbw_deg;
        return boresight_gain_dbi - 12.0 * r * r;
    }

    LossTable::LossTable(std::vector<std::pair<double, double>> points) : points_(std::move(points))
    {
        if (points_.empty())
            throw ValidationError("material_loss", "loss table is empty");
        for (std::size_t k = 0; k < points_.size(); ++k)
        {
            const auto [angle, loss] = points_[k];
            if (!(angle >= 0.0 && angle <= 90.0))
                throw ValidationError("material_loss", "incidence angle " + num(angle) + " outside [0, 90]");
            if (!std::isfinite(loss) || loss < 0.0)
                throw ValidationError("material_loss", "loss must be finite and >= 0 dB, got " + num(loss));
            if (k > 0 && !(angle > points_[k - 1].first))
                throw ValidationError("material_loss", "incidence angles must be strictly increasing");
        }
    }

    double LossTable::at(double incidence_deg) const
    {
        if (incidence_deg <= points_.front().first)
            return points_.front().second;
        if (incidence_deg >= points_.back().first)
            return points_.back().second;
        const auto hi = std::upper_bound(points_.begin(), points_.end(), incidence_deg,
                                         [](double a, const auto &p) { return a < p.first; });
        const auto lo = hi - 1;
        const double w = (incidence_deg - lo->first) / (hi->first - lo->first);
        return lo->second + w * (hi->second - lo->second);
    }

    // ---- NirsPanel ------------------------------------------------------------

    std::size_t NirsPanel::active_count() const
    {
        return std::size_t(std::count(active.begin(), active.end(), true));
    }

    std::vector<Rectangle> NirsPanel::active_cells() const
    {
        std::vector<Rectangle> cells;
        for (int r = 0; r < rows; ++r)
            for (int c = 0; c < cols; ++c)
                if (is_active(r, c))
                    cells.push_back(rect.cell(r, c, rows, cols));
        return cells;
    }

    bool NirsPanel::point_in_active_cell(const Vec3 &p, double tol) const
    {
        if (!rect.contains(p, tol))
            return false;
        const auto [s, t] = rect.local(p);
        const int c = std::clamp(int(std::floor(s * cols)), 0, cols - 1);
        const int r = std::clamp(int(std::floor(t * rows)), 0, rows - 1);
        if (is_active(r, c))
            return true;
        // points on a cell border count for either neighbour
        for (const auto &cell : active_cells())
            if (cell.contains(p, tol))
                return true;
        return false;
    }

    NirsPanel NirsPanel::make(std::string id, const Rectangle &rect, LossTable loss, int rows, int cols)
    {
        NirsPanel p;
        p.id = std::move(id);
        p.rect = rect;
        p.loss = std::move(loss);
        p.rows = rows;
        p.cols = cols;
        p.active.assign(std::size_t(rows * cols), true);
        return p;
    }

    // ---- Scene ----------------------------------------------------------------

    int Scene::host_wall(std::size_t panel_index) const
    {
        const Rectangle &pr = nirs_panels.at(panel_index).rect;
        for (std::size_t w = 0; w < walls.size(); ++w)
            if (coplanar(walls[w].rect, pr) && walls[w].rect.contains(pr.center(), 1e-6))
                return int(w);
        return -1;
    }

    void Scene::validate() const
    {
        plan.validate();
        grid.validate();
        tx.antenna.validate();
        rx_antenna.validate();
        if (norm(tx.boresight) == 0.0)
            throw ValidationError("tx_boresight", "Tx boresight direction must be non-zero");
        if (rx_positions.empty())
            throw ValidationError("rx_positions_nonempty", "scene needs at least one Rx position");

        std::set<std::string> ids;
        for (const auto &w : walls)
            if (!ids.insert(w.id).second)
                throw ValidationError("surface_id_unique", "duplicate surface id '" + w.id + "'");
        for (std::size_t p = 0; p < nirs_panels.size(); ++p)
        {
            const auto &panel = nirs_panels[p];
            if (!ids.insert(panel.id).second)
                throw ValidationError("surface_id_unique", "duplicate surface id '" + panel.id + "'");
            if (panel.rows < 1 || panel.cols < 1)
                throw ValidationError("nirs_subdivision", "panel '" + panel.id + "' needs rows, cols >= 1");
            if (panel.active.size() != std::size_t(panel.rows * panel.cols))
                throw ValidationError("nirs_subdivision", "panel '" + panel.id + "' active mask has wrong size");

            const int host = host_wall(p);
            if (host < 0)
                continue;
            const LossTable &wall_loss = walls[std::size_t(host)].loss;
            std::vector<double> probe;
            for (const auto &pt : wall_loss.points())
                probe.push_back(pt.first);
            for (const auto &pt : panel.loss.points())
                probe.push_back(pt.first);
            for (double a : probe)
                if (!(panel.loss.at(a) < wall_loss.at(a)))
                    throw ValidationError("nirs_loss_below_wall",
                                          "panel '" + panel.id + "' loss must be below host wall '" +
                                              walls[std::size_t(host)].id + "' loss at " + num(a) + " deg");
        }
    }

    Scene Scene::without_nirs() const
    {
        Scene s = *this;
        s.nirs_panels.clear();
        return s;
    }

    // ---- angle set / reflection geometry ---------------------------------------

    AngleSet nirs_angle_set(const Scene &scene, std::size_t rx_index, const ScanGrid &grid)
    {
        const Vec3 rx = scene.rx_positions.at(rx_index);
        std::vector<Rectangle> cells;
        for (const auto &panel : scene.nirs_panels)
            for (const auto &c : panel.active_cells())
                cells.push_back(c);

        AngleSet out;
        if (cells.empty())
        {
            out.no_panels = true;
            return out;
        }
        for (std::size_t i = 0; i < grid.n_elevation(); ++i)
            for (std::size_t j = 0; j < grid.n_azimuth(); ++j)
            {
                const Vec3 d = grid.direction(i, j);
                for (const auto &c : cells)
                    if (c.ray_hit(rx, d))
                    {
                        out.directions.push_back({i, j});
                        break;
                    }
            }
        return out;
    }

    double azimuth_plane_angle_deg(const Vec3 &ray, const Vec3 &normal)
    {
        const double nx = normal.x, ny = normal.y;
        if (std::hypot(nx, ny) < 1e-12)
            throw DomainError("panel normal has no azimuth-plane component");
        const double rx = ray.x, ry = ray.y;
        if (std::hypot(rx, ry) < 1e-12)
            return 0.0;
        const double c = std::abs(rx * nx + ry * ny);
        const double s = std::abs(rx * ny - ry * nx);
        return rad2deg(std::atan2(s, c));
    }

    ReflectionGeometry reflection_geometry(const Scene &scene, std::size_t rx_index)
    {
        const Vec3 tx = scene.tx.position;
        const Vec3 rx = scene.rx_positions.at(rx_index);

        for (std::size_t p = 0; p < scene.nirs_panels.size(); ++p)
        {
            const auto &panel = scene.nirs_panels[p];
            if (panel.active_count() == 0)
                continue;
            const double dt = panel.rect.plane_distance(tx);
            const double dr = panel.rect.plane_distance(rx);
            if (dt * dr <= 0.0)
                continue; // Tx and Rx must face the same side
            const Vec3 image = panel.rect.mirror(tx);
            const double di = panel.rect.plane_distance(image);
            const Vec3 point = image + (di / (di - dr)) * (rx - image);
            if (!panel.point_in_active_cell(point))
                continue;
            ReflectionGeometry g;
            g.specular = true;
            g.point = point;
            g.panel_index = p;
            g.d1_m = distance(tx, point);
            g.d2_m = distance(point, rx);
            g.angle_deg = azimuth_plane_angle_deg(rx - point, panel.rect.normal());
            return g;
        }

        for (std::size_t p = 0; p < scene.nirs_panels.size(); ++p)
        {
            const auto cells = scene.nirs_panels[p].active_cells();
            if (cells.empty())
                continue;
            Vec3 centroid;
            for (const auto &c : cells)
                centroid += c.center();
            centroid *= 1.0 / double(cells.size());

            ReflectionGeometry g;
            g.specular = false;
            g.point = centroid;
            g.panel_index = p;
            g.d1_m = distance(tx, centroid);
            g.d2_m = distance(centroid, rx);
            g.angle_deg = azimuth_plane_angle_deg(rx - centroid, scene.nirs_panels[p].rect.normal());
            return g;
        }
        throw DomainError("scene has no active NIRS panel");
    }

    double reflection_angle(const Scene &scene, std::size_t rx_index)
    {
        const ReflectionGeometry g = reflection_geometry(scene, rx_index);
        if (!g.specular)
            throw NoSpecularGeometryError("Rx " + std::to_string(rx_index + 1) +
                                          ": specular point lies outside every active panel area");
        return g.angle_deg;
    }
} // namespace thznirs
