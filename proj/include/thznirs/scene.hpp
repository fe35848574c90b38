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

#ifndef THZNIRS_SCENE_HPP
#define THZNIRS_SCENE_HPP

#include "thznirs/geometry.hpp"

#include <compare>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace thznirs
{
    inline constexpr double kDefaultTxHeight = 2.0;  // m
    inline constexpr double kDefaultRxHeight = 1.75; // m

    // Uniform frequency sweep [f_start, f_stop] with spacing f_step.
    struct FrequencyPlan
    {
        double f_start_hz = 306e9;
        double f_stop_hz = 321e9;
        double f_step_hz = 2.5e6;

        // Throws ValidationError naming the violated invariant.
        void validate() const;

        std::size_t point_count() const;
        double bandwidth_hz() const { return f_stop_hz - f_start_hz; }
        double center_hz() const { return 0.5 * (f_start_hz + f_stop_hz); }

        // Alias-free delay window 1/f_step.
        double max_delay_s() const { return 1.0 / f_step_hz; }

        // "306-321GHz" style label used in manifests and tables.
        std::string band_label() const;

        static FrequencyPlan band_306_321() { return {306e9, 321e9, 2.5e6}; }
        static FrequencyPlan band_356_371() { return {356e9, 371e9, 2.5e6}; }
    };

    // point_count uniformly spaced frequencies, first = f_start and last = f_stop exactly.
    std::vector<double> frequency_grid(const FrequencyPlan &plan);

    // Two plans describe the same sample grid.
    bool same_grid(const FrequencyPlan &a, const FrequencyPlan &b);

    struct DirectionIndex
    {
        std::size_t elevation = 0;
        std::size_t azimuth = 0;
        friend auto operator<=>(const DirectionIndex &, const DirectionIndex &) = default;
    };

    // Receiver scan directions. Index i runs over elevations, j over azimuths.
    struct ScanGrid
    {
        std::vector<double> azimuth_deg;
        std::vector<double> elevation_deg;

        void validate() const;
        std::size_t n_azimuth() const { return azimuth_deg.size(); }
        std::size_t n_elevation() const { return elevation_deg.size(); }
        std::size_t size() const { return azimuth_deg.size() * elevation_deg.size(); }
        Vec3 direction(std::size_t elevation_index, std::size_t azimuth_index) const
        {
            return direction_from_angles(azimuth_deg[azimuth_index], elevation_deg[elevation_index]);
        }
        // Row-major (elevation, azimuth) flat index.
        std::size_t flat(std::size_t elevation_index, std::size_t azimuth_index) const
        {
            return elevation_index * azimuth_deg.size() + azimuth_index;
        }

        // Azimuth 0..350 deg and elevation -20..20 deg, both in 10 deg steps.
        static ScanGrid measurement_default();
    };

    // Gaussian main lobe in dB without side lobes:
    // gain(theta) = G0 - 12 (theta / hpbw)^2, so gain(hpbw / 2) = G0 - 3 dB.
    struct AntennaPattern
    {
        double boresight_gain_dbi = 0.0;
        double hpbw_deg = 30.0;

        void validate() const;
        double gain_dbi(double off_axis_deg) const;

        static AntennaPattern tx_default() { return {7.0, 30.0}; }
        static AntennaPattern rx_default() { return {25.0, 8.0}; }
    };

    // Reflection loss as a piecewise-linear function of incidence angle (deg from the
    // surface normal). Clamped outside the table; a single entry is a constant loss.
    class LossTable
    {
      public:
        LossTable() = default;
        explicit LossTable(std::vector<std::pair<double, double>> points);
        static LossTable constant(double loss_db) { return LossTable({{0.0, loss_db}}); }

        double at(double incidence_deg) const;
        const std::vector<std::pair<double, double>> &points() const noexcept { return points_; }
        bool is_constant() const noexcept { return points_.size() == 1; }

      private:
        std::vector<std::pair<double, double>> points_{{0.0, 0.0}};
    };

    struct Wall
    {
        std::string id;
        Rectangle rect;
        LossTable loss;
    };

    // Reflector glued onto a wall (or free standing), split into rows x cols
    // independently activatable cells.
    struct NirsPanel
    {
        std::string id;
        Rectangle rect;
        LossTable loss;
        int rows = 3;
        int cols = 3;
        std::vector<bool> active; // row-major, rows * cols entries

        bool is_active(int row, int col) const { return active[std::size_t(row * cols + col)]; }
        std::size_t active_count() const;
        std::vector<Rectangle> active_cells() const;
        bool point_in_active_cell(const Vec3 &p, double tol = 1e-9) const;

        // Panel with a fully active rows x cols subdivision.
        static NirsPanel make(std::string id, const Rectangle &rect, LossTable loss, int rows = 3, int cols = 3);
    };

    struct TxPose
    {
        Vec3 position{0.0, 0.0, kDefaultTxHeight};
        Vec3 boresight{1.0, 0.0, 0.0};
        AntennaPattern antenna = AntennaPattern::tx_default();
    };

    struct Scene
    {
        std::string name = "scene";
        std::vector<Wall> walls;
        std::vector<NirsPanel> nirs_panels;
        TxPose tx;
        std::vector<Vec3> rx_positions;
        AntennaPattern rx_antenna = AntennaPattern::rx_default();
        FrequencyPlan plan;
        ScanGrid grid = ScanGrid::measurement_default();

        // Throws ValidationError on the first violated invariant.
        void validate() const;

        // Index of the wall a panel is mounted on (coplanar, containing the panel
        // center), or -1 for a free-standing panel.
        int host_wall(std::size_t panel_index) const;

        Scene without_nirs() const;
    };

    // Scan directions whose ray from the receiver hits an active NIRS cell.
    struct AngleSet
    {
        std::vector<DirectionIndex> directions; // sorted, unique
        bool no_panels = false;                 // set when the scene has no active panel
    };

    AngleSet nirs_angle_set(const Scene &scene, std::size_t rx_index, const ScanGrid &grid);

    struct ReflectionGeometry
    {
        double angle_deg = 0.0; // azimuth-plane angle between reflected ray and panel normal
        bool specular = true;   // false: panel-center fallback
        Vec3 point;             // reflection point on the panel
        double d1_m = 0.0;      // Tx -> point
        double d2_m = 0.0;      // point -> Rx
        std::size_t panel_index = 0;
    };

    // Image-method reflection point on the first panel whose active area holds the
    // specular point; otherwise the centroid of the first panel's active cells,
    // flagged non-specular. Throws DomainError when the scene has no active panel.
    ReflectionGeometry reflection_geometry(const Scene &scene, std::size_t rx_index);

    // Specular reflection angle in degrees; throws NoSpecularGeometryError when the
    // specular point lies off every active panel area.
    double reflection_angle(const Scene &scene, std::size_t rx_index);

    // Azimuth-plane angle (deg, [0, 90]) between `ray` and the line of `normal`.
    double azimuth_plane_angle_deg(const Vec3 &ray, const Vec3 &normal);
} // namespace thznirs

#endif
