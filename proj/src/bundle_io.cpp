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

#include "thznirs/bundle_io.hpp"
#include "thznirs/error.hpp"
#include "thznirs/parallel.hpp"
#include "thznirs/textio.hpp"

#include <json.hpp>

namespace thznirs
{
    using nlohmann::json;

    std::string direction_file_name(std::size_t elevation_index, std::size_t azimuth_index)
    {
        return "el" + std::to_string(elevation_index) + "_az" + std::to_string(azimuth_index) + ".csv";
    }

    std::string manifest_to_json(const BundleManifest &m)
    {
        json j;
        j["scenario"] = m.scenario;
        j["band"] = m.band_label;
        j["rx_index"] = m.rx_index;
        j["rx_id"] = m.rx_index + 1;
        j["nirs"] = m.nirs;
        j["frequency_plan"] = {
            {"f_start_hz", m.plan.f_start_hz}, {"f_stop_hz", m.plan.f_stop_hz}, {"f_step_hz", m.plan.f_step_hz}};
        j["scan_grid"] = {{"azimuth_deg", m.grid.azimuth_deg}, {"elevation_deg", m.grid.elevation_deg}};
        return j.dump(2) + "\n";
    }

    BundleManifest manifest_from_json(const std::string &text, const std::string &source)
    {
        try
        {
            const json j = json::parse(text);
            BundleManifest m;
            m.scenario = j.at("scenario").get<std::string>();
            m.band_label = j.at("band").get<std::string>();
            m.rx_index = j.at("rx_index").get<std::size_t>();
            m.nirs = j.at("nirs").get<bool>();
            const json &fp = j.at("frequency_plan");
            m.plan = {fp.at("f_start_hz").get<double>(), fp.at("f_stop_hz").get<double>(),
                      fp.at("f_step_hz").get<double>()};
            m.grid.azimuth_deg = j.at("scan_grid").at("azimuth_deg").get<std::vector<double>>();
            m.grid.elevation_deg = j.at("scan_grid").at("elevation_deg").get<std::vector<double>>();
            m.plan.validate();
            m.grid.validate();
            return m;
        }
        catch (const json::exception &e)
        {
            throw ValidationError("manifest_schema", source + ": " + e.what());
        }
    }

    void write_bundle(const SweepBundle &bundle, const std::filesystem::path &dir)
    {
        std::filesystem::create_directories(dir);
        const ScanGrid &grid = bundle.manifest.grid;
        if (bundle.sweeps.size() != grid.size())
            throw ValidationError("bundle_size", "bundle holds " + std::to_string(bundle.sweeps.size()) +
                                                     " sweeps for a grid of " + std::to_string(grid.size()));
        parallel_for(grid.size(),
                     [&](std::size_t flat)
                     {
                         write_sweep_csv(bundle.sweeps[flat],
                                         dir / direction_file_name(flat / grid.n_azimuth(), flat % grid.n_azimuth()));
                     });
        // manifest last: its presence marks a complete bundle
        write_text_file_atomic(dir / "manifest.json", manifest_to_json(bundle.manifest));
    }

    BundleManifest read_manifest(const std::filesystem::path &dir)
    {
        const auto path = dir / "manifest.json";
        if (!std::filesystem::exists(path))
            throw IoError("missing bundle manifest " + path.string());
        return manifest_from_json(read_text_file(path), path.string());
    }

    SweepBundle read_bundle(const std::filesystem::path &dir)
    {
        SweepBundle bundle;
        bundle.manifest = read_manifest(dir);
        const ScanGrid &grid = bundle.manifest.grid;
        for (std::size_t i = 0; i < grid.n_elevation(); ++i)
            for (std::size_t j = 0; j < grid.n_azimuth(); ++j)
            {
                const auto path = dir / direction_file_name(i, j);
                if (!std::filesystem::exists(path))
                    throw IoError("missing direction file " + path.string());
            }
        bundle.sweeps.resize(grid.size());
        parallel_for(grid.size(),
                     [&](std::size_t flat)
                     {
                         const auto path = dir / direction_file_name(flat / grid.n_azimuth(), flat % grid.n_azimuth());
                         bundle.sweeps[flat] = read_sweep_csv(path);
                         if (!same_grid(bundle.sweeps[flat].plan, bundle.manifest.plan))
                             throw GridMismatchError(path.string() + ": frequency grid differs from the manifest");
                     });
        return bundle;
    }
} // namespace thznirs
