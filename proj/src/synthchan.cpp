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

#include "thznirs/synthchan.hpp"
#include "thznirs/error.hpp"
#include "thznirs/parallel.hpp"

#include <cmath>
#include <cstdio>

namespace thznirs
{
    namespace
    {
        struct Surface
        {
            const Rectangle *rect = nullptr;
            const LossTable *loss = nullptr;
            const std::string *id = nullptr;
            std::vector<const NirsPanel *> mounted; // panels glued onto this surface
        };

        std::vector<Surface> reflecting_surfaces(const Scene &scene)
        {
            std::vector<Surface> out;
            for (const auto &w : scene.walls)
                out.push_back({&w.rect, &w.loss, &w.id, {}});
            for (std::size_t p = 0; p < scene.nirs_panels.size(); ++p)
            {
                const NirsPanel &panel = scene.nirs_panels[p];
                const int host = scene.host_wall(p);
                if (host >= 0)
                    out[std::size_t(host)].mounted.push_back(&panel);
                else if (panel.active_count() > 0)
                    out.push_back({&panel.rect, &panel.loss, &panel.id, {}});
            }
            return out;
        }

        bool segment_clear(const std::vector<Surface> &surfaces, const Vec3 &a, const Vec3 &b, int skip_a, int skip_b)
        {
            for (std::size_t s = 0; s < surfaces.size(); ++s)
            {
                if (int(s) == skip_a || int(s) == skip_b)
                    continue;
                if (surfaces[s].rect->blocks_segment(a, b))
                    return false;
            }
            return true;
        }

        struct Enumerator
        {
            const std::vector<Surface> &surfaces;
            Vec3 from, to;
            int max_bounces;
            std::vector<int> sequence;
            std::vector<Vec3> images; // images[k]: source mirrored over the first k surfaces
            std::vector<PropagationPath> paths;

            void run()
            {
                images = {from};
                if (segment_clear(surfaces, from, to, -1, -1))
                    emit({});
                descend();
            }

            void descend()
            {
                if (int(sequence.size()) == max_bounces)
                    return;
                for (int s = 0; s < int(surfaces.size()); ++s)
                {
                    if (!sequence.empty() && sequence.back() == s)
                        continue;
                    sequence.push_back(s);
                    images.push_back(surfaces[std::size_t(s)].rect->mirror(images.back()));
                    try_sequence();
                    descend();
                    images.pop_back();
                    sequence.pop_back();
                }
            }

            void try_sequence()
            {
                const std::size_t n = sequence.size();
                std::vector<Vec3> points(n);
                Vec3 target = to;
                for (std::size_t k = n; k-- > 0;)
                {
                    const Rectangle &rect = *surfaces[std::size_t(sequence[k])].rect;
                    const double di = rect.plane_distance(images[k + 1]);
                    const double dt = rect.plane_distance(target);
                    if (!(di * dt < 0.0))
                        return;
                    const Vec3 p = images[k + 1] + (di / (di - dt)) * (target - images[k + 1]);
                    if (!rect.contains(p))
                        return;
                    points[k] = p;
                    target = p;
                }

                // obstruction check along the unfolded chain
                Vec3 prev = from;
                int prev_surface = -1;
                for (std::size_t k = 0; k <= n; ++k)
                {
                    const Vec3 next = k < n ? points[k] : to;
                    const int next_surface = k < n ? sequence[k] : -1;
                    if (distance(prev, next) < 1e-12 ||
                        !segment_clear(surfaces, prev, next, prev_surface, next_surface))
                        return;
                    prev = next;
                    prev_surface = next_surface;
                }
                emit(points);
            }

            void emit(const std::vector<Vec3> &points)
            {
                PropagationPath path;
                path.bounce_count = int(points.size());
                path.reflection_points = points;
                path.total_length_m = distance(images.back(), to);
                if (points.empty())
                    path.total_length_m = distance(from, to);
                path.delay_s = path.total_length_m / kSpeedOfLight;
                path.departure_direction = normalized((points.empty() ? to : points.front()) - from);
                path.arrival_direction = normalized((points.empty() ? from : points.back()) - to);

                Vec3 prev = from;
                for (std::size_t k = 0; k < points.size(); ++k)
                {
                    const Surface &surf = surfaces[std::size_t(sequence[k])];
                    const Vec3 incoming = points[k] - prev;
                    const double incidence = rad2deg(
                        std::acos(std::min(1.0, std::abs(dot(incoming, surf.rect->normal())) / norm(incoming))));
                    const LossTable *loss = surf.loss;
                    const std::string *id = surf.id;
                    for (const NirsPanel *panel : surf.mounted)
                        if (panel->point_in_active_cell(points[k]))
                        {
                            loss = &panel->loss;
                            id = &panel->id;
                            break;
                        }
                    const double l = loss->at(incidence);
                    path.incidence_deg.push_back(incidence);
                    path.surfaces_hit.push_back(*id);
                    path.cumulative_reflection_loss_db += l;
                    prev = points[k];
                }
                paths.push_back(std::move(path));
            }
        };

        void check_alias(double delay_s, const FrequencyPlan &plan, const std::string &what)
        {
            if (delay_s >= plan.max_delay_s())
            {
                char buf[160];
                std::snprintf(buf, sizeof buf, " has delay %.6g ns >= alias-free window %.6g ns", delay_s * 1e9,
                              plan.max_delay_s() * 1e9);
                throw AliasingError(what + buf);
            }
        }

        // amplitude(f) exp(-j 2 pi f delay) on the plan's grid
        std::vector<cdouble> term_response(const PathTerm &term, const std::vector<double> &freq)
        {
            std::vector<cdouble> out(freq.size());
            for (std::size_t m = 0; m < freq.size(); ++m)
            {
                const double f = freq[m];
                double a = term.amplitude;
                if (term.spreading_length_m > 0.0)
                    a *= kSpeedOfLight / (4.0 * kPi * f * term.spreading_length_m);
                const double cycles = f * term.delay_s;
                const double phase = -2.0 * kPi * (cycles - std::floor(cycles));
                out[m] = std::polar(a, phase);
            }
            return out;
        }

        std::string describe(const PropagationPath &p)
        {
            std::string s = "path via [";
            for (std::size_t k = 0; k < p.surfaces_hit.size(); ++k)
                s += (k ? "," : "") + p.surfaces_hit[k];
            char buf[64];
            std::snprintf(buf, sizeof buf, "] (%.6g m)", p.total_length_m);
            return s + buf;
        }
    } // namespace

    std::vector<PropagationPath> enumerate_paths_between(const Scene &scene, const Vec3 &from, const Vec3 &to,
                                                         int max_bounces)
    {
        if (max_bounces < 0 || max_bounces > kMaxBounces)
            throw DomainError("max_bounces must be in [0, 3], got " + std::to_string(max_bounces));
        const auto surfaces = reflecting_surfaces(scene);
        Enumerator e{surfaces, from, to, max_bounces, {}, {}, {}};
        e.run();
        return std::move(e.paths);
    }

    std::vector<PropagationPath> enumerate_paths(const Scene &scene, std::size_t rx_index, int max_bounces)
    {
        return enumerate_paths_between(scene, scene.tx.position, scene.rx_positions.at(rx_index), max_bounces);
    }

    FrequencySweep sweep_from_terms(std::span<const PathTerm> terms, const FrequencyPlan &plan)
    {
        const auto freq = frequency_grid(plan);
        FrequencySweep out = FrequencySweep::constant(plan, 0.0);
        for (std::size_t t = 0; t < terms.size(); ++t)
        {
            check_alias(terms[t].delay_s, plan, "term " + std::to_string(t));
            const auto r = term_response(terms[t], freq);
            for (std::size_t m = 0; m < freq.size(); ++m)
                out.values[m] += r[m];
        }
        return out;
    }

    double path_gain_db(const Scene &scene, const PropagationPath &path, const Vec3 &scan_direction)
    {
        const double tx_off = angle_between_deg(path.departure_direction, scene.tx.boresight);
        const double rx_off = angle_between_deg(path.arrival_direction, scan_direction);
        return scene.tx.antenna.gain_dbi(tx_off) + scene.rx_antenna.gain_dbi(rx_off) -
               path.cumulative_reflection_loss_db;
    }

    SweepBundle synthesize_sweep(const Scene &scene, std::size_t rx_index, const FrequencyPlan &plan,
                                 const ScanGrid &grid, int max_bounces)
    {
        plan.validate();
        grid.validate();
        const auto paths = enumerate_paths(scene, rx_index, max_bounces);
        for (const auto &p : paths)
            check_alias(p.delay_s, plan, describe(p));

        const auto freq = frequency_grid(plan);
        // direction-independent part: spreading, Tx gain and reflection loss
        std::vector<std::vector<cdouble>> basis(paths.size());
        parallel_for(paths.size(),
                     [&](std::size_t p)
                     {
                         const double tx_off = angle_between_deg(paths[p].departure_direction, scene.tx.boresight);
                         const double db = scene.tx.antenna.gain_dbi(tx_off) - paths[p].cumulative_reflection_loss_db;
                         basis[p] = term_response(
                             {paths[p].delay_s, std::pow(10.0, db / 20.0), paths[p].total_length_m}, freq);
                     });

        SweepBundle bundle;
        bundle.manifest = {scene.name, plan.band_label(), plan, grid, rx_index, false};
        for (const auto &panel : scene.nirs_panels)
            bundle.manifest.nirs = bundle.manifest.nirs || panel.active_count() > 0;
        bundle.sweeps.assign(grid.size(), FrequencySweep::constant(plan, 0.0));

        parallel_for(grid.size(),
                     [&](std::size_t flat)
                     {
                         const Vec3 scan = grid.direction(flat / grid.n_azimuth(), flat % grid.n_azimuth());
                         auto &h = bundle.sweeps[flat].values;
                         for (std::size_t p = 0; p < paths.size(); ++p)
                         {
                             const double rx_off = angle_between_deg(paths[p].arrival_direction, scan);
                             const double w = std::pow(10.0, scene.rx_antenna.gain_dbi(rx_off) / 20.0);
                             // contributions below -600 dB cannot survive any noise threshold
                             if (w < 1e-30)
                                 continue;
                             const auto &b = basis[p];
                             for (std::size_t m = 0; m < h.size(); ++m)
                                 h[m] += w * b[m];
                         }
                     });
        return bundle;
    }
} // namespace thznirs
