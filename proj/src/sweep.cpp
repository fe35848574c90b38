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

#include "thznirs/sweep.hpp"
#include "thznirs/error.hpp"
#include "thznirs/textio.hpp"

#include <cmath>

namespace thznirs
{
    void FrequencySweep::check() const
    {
        plan.validate();
        if (values.size() != plan.point_count())
            throw ValidationError("sweep_length", "sweep has " + std::to_string(values.size()) +
                                                      " samples, plan expects " + std::to_string(plan.point_count()));
    }

    std::string sweep_to_csv(const FrequencySweep &sweep)
    {
        sweep.check();
        const auto f = frequency_grid(sweep.plan);
        std::string out = "freq_hz,s21_re,s21_im\n";
        out.reserve(out.size() + f.size() * 64);
        for (std::size_t m = 0; m < f.size(); ++m)
        {
            out += format_exact(f[m]);
            out += ',';
            out += format_exact(sweep.values[m].real());
            out += ',';
            out += format_exact(sweep.values[m].imag());
            out += '\n';
        }
        return out;
    }

    FrequencySweep sweep_from_csv(std::string_view text, const std::string &source)
    {
        const auto lines = split_lines(text);
        if (lines.empty() || lines.front() != "freq_hz,s21_re,s21_im")
            throw ValidationError("sweep_header", source + ": header must be 'freq_hz,s21_re,s21_im'");

        std::vector<double> freq;
        std::vector<cdouble> values;
        freq.reserve(lines.size());
        values.reserve(lines.size());
        for (std::size_t k = 1; k < lines.size(); ++k)
        {
            if (lines[k].empty())
                continue;
            const auto fields = split_fields(lines[k]);
            const std::string where = source + " line " + std::to_string(k + 1);
            if (fields.size() != 3)
                throw ValidationError("sweep_row", where + ": expected 3 fields");
            freq.push_back(parse_double(fields[0], where));
            values.emplace_back(parse_double(fields[1], where), parse_double(fields[2], where));
        }
        if (freq.size() < 2)
            throw ValidationError("frequency_plan_point_count", source + ": fewer than two frequency points");

        const std::size_t n = freq.size();
        const double step = (freq.back() - freq.front()) / double(n - 1);
        if (!(step > 0.0))
            throw ValidationError("uniform_grid", source + ": frequencies must be ascending");
        for (std::size_t m = 0; m < n; ++m)
        {
            const double expect = freq.front() + step * double(m);
            if (std::abs(freq[m] - expect) > 1e-6 * step)
                throw ValidationError("uniform_grid",
                                      source + ": frequency grid is not uniform at row " + std::to_string(m + 2));
        }
        FrequencySweep sweep{{freq.front(), freq.back(), step}, std::move(values)};
        sweep.check();
        return sweep;
    }

    void write_sweep_csv(const FrequencySweep &sweep, const std::filesystem::path &path)
    {
        write_text_file_atomic(path, sweep_to_csv(sweep));
    }

    FrequencySweep read_sweep_csv(const std::filesystem::path &path)
    {
        if (!std::filesystem::exists(path))
            throw IoError("missing sweep file " + path.string());
        return sweep_from_csv(read_text_file(path), path.string());
    }
} // namespace thznirs
