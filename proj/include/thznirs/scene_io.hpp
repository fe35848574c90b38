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

#ifndef THZNIRS_SCENE_IO_HPP
#define THZNIRS_SCENE_IO_HPP

#include "thznirs/scene.hpp"

#include <filesystem>
#include <string>
#include <string_view>

namespace thznirs
{
    // Parses a scene description. Top-level keys: "walls", "nirs_panels", "tx",
    // "rx", "frequency_plan", "scan_grid"; unknown keys at any level are rejected.
    // The returned scene has been validated.
    Scene parse_scene(std::string_view json_text, std::string name = "scene");

    // Reads and parses a scene file; the scene name is the file stem.
    Scene load_scene(const std::filesystem::path &path);
} // namespace thznirs

#endif
