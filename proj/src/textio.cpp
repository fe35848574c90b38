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

#include "thznirs/textio.hpp"
#include "thznirs/error.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace thznirs
{
    std::string format_report(double v)
    {
        if (std::isnan(v))
            return "nan";
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.6g", v);
        return buf;
    }

    std::string format_exact(double v)
    {
        char buf[64];
        const auto res = std::to_chars(buf, buf + sizeof buf, v);
        return std::string(buf, res.ptr);
    }

    double parse_double(std::string_view text, const std::string &context)
    {
        while (!text.empty() && (text.front() == ' ' || text.front() == '\t'))
            text.remove_prefix(1);
        while (!text.empty() && (text.back() == ' ' || text.back() == '\t'))
            text.remove_suffix(1);
        if (!text.empty() && text.front() == '+')
            text.remove_prefix(1);
        if (text == "nan")
            return std::nan("");
        double v = 0.0;
        const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
        if (res.ec != std::errc() || res.ptr != text.data() + text.size())
            throw ValidationError("number_format", context + ": cannot parse '" + std::string(text) + "'");
        return v;
    }

    std::vector<std::string_view> split_fields(std::string_view line, char sep)
    {
        std::vector<std::string_view> out;
        std::size_t start = 0;
        while (true)
        {
            const std::size_t pos = line.find(sep, start);
            if (pos == std::string_view::npos)
            {
                out.push_back(line.substr(start));
                return out;
            }
            out.push_back(line.substr(start, pos - start));
            start = pos + 1;
        }
    }

    std::vector<std::string_view> split_lines(std::string_view text)
    {
        std::vector<std::string_view> out;
        std::size_t start = 0;
        while (start < text.size())
        {
            std::size_t pos = text.find('\n', start);
            if (pos == std::string_view::npos)
                pos = text.size();
            std::string_view line = text.substr(start, pos - start);
            if (!line.empty() && line.back() == '\r')
                line.remove_suffix(1);
            out.push_back(line);
            start = pos + 1;
        }
        return out;
    }

    std::string read_text_file(const std::filesystem::path &path)
    {
        std::ifstream in(path, std::ios::binary);
        if (!in)
            throw IoError("cannot open " + path.string());
        std::ostringstream buf;
        buf << in.rdbuf();
        return std::move(buf).str();
    }

    void write_text_file_atomic(const std::filesystem::path &path, std::string_view content)
    {
        std::filesystem::path tmp = path;
        tmp += ".tmp";
        {
            std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
            if (!out)
                throw IoError("cannot write " + tmp.string());
            out.write(content.data(), std::streamsize(content.size()));
            if (!out)
                throw IoError("write failed for " + tmp.string());
        }
        std::error_code ec;
        std::filesystem::rename(tmp, path, ec);
        if (ec)
            throw IoError("cannot rename " + tmp.string() + " to " + path.string() + ": " + ec.message());
    }
} // namespace thznirs
