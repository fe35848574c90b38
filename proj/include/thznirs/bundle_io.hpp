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

#ifndef THZNIRS_BUNDLE_IO_HPP
#define THZNIRS_BUNDLE_IO_HPP

#include "thznirs/synthchan.hpp"

#include <filesystem>
#include <string>

namespace thznirs
{
    // File name of the sweep for one scan direction: "el<i>_az<j>.csv".
    std::string direction_file_name(std::size_t elevation_index, std::size_t azimuth_index);

    std::string manifest_to_json(const BundleManifest &manifest);
    BundleManifest manifest_from_json(const std::string &text, const std::string &source);

    // Bundle directory: manifest.json plus one CSV per scan direction.
    void write_bundle(const SweepBundle &bundle, const std::filesystem::path &dir);

    BundleManifest read_manifest(const std::filesystem::path &dir);

    // Throws IoError naming the first missing direction file.
    SweepBundle read_bundle(const std::filesystem::path &dir);
} // namespace thznirs

#endif
