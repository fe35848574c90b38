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

#ifndef THZNIRS_SWEEP_HPP
#define THZNIRS_SWEEP_HPP

#include "thznirs/scene.hpp"

#include <complex>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace thznirs
{
    using cdouble = std::complex<double>;

    // Complex S21 / transfer-function samples on a uniform frequency grid.
    struct FrequencySweep
    {
        FrequencyPlan plan;
        std::vector<cdouble> values; // one per frequency_grid(plan) entry

        static FrequencySweep constant(const FrequencyPlan &plan, cdouble value)
        {
            return {plan, std::vector<cdouble>(plan.point_count(), value)};
        }
        std::size_t size() const noexcept { return values.size(); }

        // Plan valid and one value per grid point.
        void check() const;
    };

    // CSV with header exactly `freq_hz,s21_re,s21_im`, ascending frequency, values
    // written in shortest round-trip decimal form.
    std::string sweep_to_csv(const FrequencySweep &sweep);
    FrequencySweep sweep_from_csv(std::string_view text, const std::string &source);

    void write_sweep_csv(const FrequencySweep &sweep, const std::filesystem::path &path);
    FrequencySweep read_sweep_csv(const std::filesystem::path &path);
} // namespace thznirs

#endif
