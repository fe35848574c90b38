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

#ifndef THZNIRS_TEXTIO_HPP
#define THZNIRS_TEXTIO_HPP

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace thznirs
{
    // Report formatting: 6 significant digits, printf "%.6g".
    std::string format_report(double v);

    // Shortest decimal text that parses back to the identical double.
    std::string format_exact(double v);

    double parse_double(std::string_view text, const std::string &context);

    std::vector<std::string_view> split_fields(std::string_view line, char sep = ',');

    // Splits text into lines, dropping a trailing '\r' on each and a final empty line.
    std::vector<std::string_view> split_lines(std::string_view text);

    std::string read_text_file(const std::filesystem::path &path);

    // Writes through a sibling temporary file and renames it into place.
    void write_text_file_atomic(const std::filesystem::path &path, std::string_view content);
} // namespace thznirs

#endif
