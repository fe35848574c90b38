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

#include "thznirs/scene_io.hpp"
#include "thznirs/error.hpp"

#include <json.hpp>

#include <fstream>
#include <initializer_list>
#include <sstream>

namespace thznirs
{
    namespace
    {
        using nlohmann::json;

        void reject_unknown(const json &obj, std::initializer_list<const char *> allowed, const std::string &where)
        {
            if (!obj.is_object())
                throw ValidationError("scene_schema", where + " must be an object");
            for (const auto &item : obj.items())
            {
                bool known = false;
                for (const char *a : allowed)
                    known = known || item.key() == a;
                if (!known)
                    throw ValidationError("unknown_key", "unknown key '" + item.key() + "' in " + where);
            }
        }

        double number(const json &j, const std::string &where)
        {
            if (!j.is_number())
                throw ValidationError("scene_schema", where + " must be a number");
            return j.get<double>();
        }

        const json &required(const json &obj, const char *key, const std::string &where)
        {
            if (!obj.contains(key))
                throw ValidationError("scene_schema", where + " is missing required key '" + key + "'");
            return obj.at(key);
        }

        Vec3 point(const json &j, const std::string &where, double default_z)
        {
            if (!j.is_array() || (j.size() != 2 && j.size() != 3))
                throw ValidationError("scene_schema", where + " must be [x, y] or [x, y, z]");
            return {number(j[0], where), number(j[1], where), j.size() == 3 ? number(j[2], where) : default_z};
        }

        Rectangle rectangle(const json &j, const std::string &where)
        {
            if (!j.is_array() || j.size() != 4)
                throw ValidationError("scene_schema", where + " must list four corners");
            std::array<Vec3, 4> c;
            for (std::size_t k = 0; k < 4; ++k)
            {
                if (!j[k].is_array() || j[k].size() != 3)
                    throw ValidationError("scene_schema", where + " corners must be [x, y, z]");
                c[k] = point(j[k], where, 0.0);
            }
            try
            {
                return Rectangle::from_corners(c);
            }
            catch (const ValidationError &e)
            {
                throw ValidationError(e.invariant(), where + ": " + e.what());
            }
        }

        LossTable loss(const json &obj, const std::string &where)
        {
            const bool has_const = obj.contains("loss_db"), has_table = obj.contains("loss_table");
            if (has_const == has_table)
                throw ValidationError("scene_schema", where + " needs exactly one of 'loss_db' or 'loss_table'");
            if (has_const)
                return LossTable::constant(number(obj.at("loss_db"), where + ".loss_db"));
            const json &t = obj.at("loss_table");
            if (!t.is_array())
                throw ValidationError("scene_schema", where + ".loss_table must be a list of [angle_deg, loss_db]");
            std::vector<std::pair<double, double>> pts;
            for (const auto &row : t)
            {
                if (!row.is_array() || row.size() != 2)
                    throw ValidationError("scene_schema", where + ".loss_table rows must be [angle_deg, loss_db]");
                pts.emplace_back(number(row[0], where), number(row[1], where));
            }
            return LossTable(std::move(pts));
        }

        AntennaPattern antenna(const json &j, const std::string &where)
        {
            reject_unknown(j, {"gain_dbi", "hpbw_deg"}, where);
            return {number(required(j, "gain_dbi", where), where + ".gain_dbi"),
                    number(required(j, "hpbw_deg", where), where + ".hpbw_deg")};
        }

        std::vector<double> angle_list(const json &j, const std::string &where)
        {
            std::vector<double> out;
            if (j.is_array())
            {
                for (const auto &v : j)
                    out.push_back(number(v, where));
                return out;
            }
            reject_unknown(j, {"start", "stop", "step"}, where);
            const double start = number(required(j, "start", where), where + ".start");
            const double stop = number(required(j, "stop", where), where + ".stop");
            const double step = number(required(j, "step", where), where + ".step");
            if (!(step > 0.0))
                throw ValidationError("scan_grid_increasing", where + ".step must be positive");
            const long n = std::lround(std::floor((stop - start) / step + 1e-9));
            for (long k = 0; k <= n; ++k)
                out.push_back(start + double(k) * step);
            return out;
        }
    } // namespace

    namespace
    {
        Scene scene_from_json(const json &root, std::string name)
        {
            reject_unknown(root, {"walls", "nirs_panels", "tx", "rx", "frequency_plan", "scan_grid"}, "scene");

            Scene s;
            s.name = std::move(name);

            const json &walls = required(root, "walls", "scene");
            if (!walls.is_array())
                throw ValidationError("scene_schema", "walls must be a list");
            for (std::size_t k = 0; k < walls.size(); ++k)
            {
                const std::string where = "walls[" + std::to_string(k) + "]";
                const json &w = walls[k];
                reject_unknown(w, {"id", "corners", "loss_db", "loss_table"}, where);
                Wall wall;
                wall.id = w.contains("id") ? w.at("id").get<std::string>() : "wall" + std::to_string(k);
                wall.rect = rectangle(required(w, "corners", where), where);
                wall.loss = loss(w, where);
                s.walls.push_back(std::move(wall));
            }

            if (root.contains("nirs_panels"))
            {
                const json &panels = root.at("nirs_panels");
                if (!panels.is_array())
                    throw ValidationError("scene_schema", "nirs_panels must be a list");
                for (std::size_t k = 0; k < panels.size(); ++k)
                {
                    const std::string where = "nirs_panels[" + std::to_string(k) + "]";
                    const json &p = panels[k];
                    reject_unknown(p, {"id", "corners", "loss_db", "loss_table", "subdivision", "active"}, where);
                    int rows = 3, cols = 3;
                    if (p.contains("subdivision"))
                    {
                        const json &sd = p.at("subdivision");
                        if (!sd.is_array() || sd.size() != 2 || !sd[0].is_number_integer() ||
                            !sd[1].is_number_integer())
                            throw ValidationError("scene_schema", where + ".subdivision must be [rows, cols]");
                        rows = sd[0].get<int>();
                        cols = sd[1].get<int>();
                        if (rows < 1 || cols < 1)
                            throw ValidationError("nirs_subdivision", where + " needs rows, cols >= 1");
                    }
                    NirsPanel panel =
                        NirsPanel::make(p.contains("id") ? p.at("id").get<std::string>() : "nirs" + std::to_string(k),
                                        rectangle(required(p, "corners", where), where), loss(p, where), rows, cols);
                    if (p.contains("active"))
                    {
                        panel.active.assign(panel.active.size(), false);
                        for (const auto &cell : p.at("active"))
                        {
                            if (!cell.is_array() || cell.size() != 2)
                                throw ValidationError("scene_schema", where + ".active entries must be [row, col]");
                            const int r = cell[0].get<int>(), c = cell[1].get<int>();
                            if (r < 0 || r >= rows || c < 0 || c >= cols)
                                throw ValidationError("nirs_subdivision", where + ".active cell out of range");
                            panel.active[std::size_t(r * cols + c)] = true;
                        }
                    }
                    s.nirs_panels.push_back(std::move(panel));
                }
            }

            const json &tx = required(root, "tx", "scene");
            reject_unknown(tx, {"position", "height", "boresight", "antenna"}, "tx");
            const double tx_height = tx.contains("height") ? number(tx.at("height"), "tx.height") : kDefaultTxHeight;
            s.tx.position = point(required(tx, "position", "tx"), "tx.position", tx_height);
            if (tx.contains("boresight"))
            {
                const json &b = tx.at("boresight");
                reject_unknown(b, {"azimuth_deg", "elevation_deg"}, "tx.boresight");
                s.tx.boresight = direction_from_angles(
                    number(required(b, "azimuth_deg", "tx.boresight"), "tx.boresight.azimuth_deg"),
                    b.contains("elevation_deg") ? number(b.at("elevation_deg"), "tx.boresight.elevation_deg") : 0.0);
            }
            if (tx.contains("antenna"))
                s.tx.antenna = antenna(tx.at("antenna"), "tx.antenna");

            const json &rx = required(root, "rx", "scene");
            reject_unknown(rx, {"positions", "height", "antenna"}, "rx");
            const double rx_height = rx.contains("height") ? number(rx.at("height"), "rx.height") : kDefaultRxHeight;
            const json &positions = required(rx, "positions", "rx");
            if (!positions.is_array())
                throw ValidationError("scene_schema", "rx.positions must be a list");
            for (const auto &p : positions)
                s.rx_positions.push_back(point(p, "rx.positions", rx_height));
            if (rx.contains("antenna"))
                s.rx_antenna = antenna(rx.at("antenna"), "rx.antenna");

            if (root.contains("frequency_plan"))
            {
                const json &fp = root.at("frequency_plan");
                reject_unknown(fp, {"f_start_hz", "f_stop_hz", "f_step_hz"}, "frequency_plan");
                s.plan = {number(required(fp, "f_start_hz", "frequency_plan"), "frequency_plan.f_start_hz"),
                          number(required(fp, "f_stop_hz", "frequency_plan"), "frequency_plan.f_stop_hz"),
                          number(required(fp, "f_step_hz", "frequency_plan"), "frequency_plan.f_step_hz")};
            }
            if (root.contains("scan_grid"))
            {
                const json &g = root.at("scan_grid");
                reject_unknown(g, {"azimuth_deg", "elevation_deg"}, "scan_grid");
                s.grid.azimuth_deg = angle_list(required(g, "azimuth_deg", "scan_grid"), "scan_grid.azimuth_deg");
                s.grid.elevation_deg = angle_list(required(g, "elevation_deg", "scan_grid"), "scan_grid.elevation_deg");
            }

            s.validate();
            return s;
        }
    } // namespace

    Scene parse_scene(std::string_view json_text, std::string name)
    {
        json root;
        try
        {
            root = json::parse(json_text);
        }
        catch (const json::parse_error &e)
        {
            throw ValidationError("scene_json", e.what());
        }
        try
        {
            return scene_from_json(root, std::move(name));
        }
        catch (const json::exception &e)
        {
            throw ValidationError("scene_schema", e.what());
        }
    }

    Scene load_scene(const std::filesystem::path &path)
    {
        std::ifstream in(path);
        if (!in)
            throw IoError("cannot open scene file " + path.string());
        std::stringstream buf;
        buf << in.rdbuf();
        return parse_scene(buf.str(), path.stem().string());
    }
} // namespace thznirs
