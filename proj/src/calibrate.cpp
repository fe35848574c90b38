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

#include "thznirs/calibrate.hpp"
#include "thznirs/error.hpp"

#include <cstdio>

namespace thznirs
{
    namespace
    {
        constexpr double kMinMagnitude = 1e-12;

        void check_nonsingular(const std::vector<cdouble> &v, const FrequencyPlan &plan, const char *what)
        {
            const auto f = frequency_grid(plan);
            for (std::size_t k = 0; k < v.size(); ++k)
                if (!(std::abs(v[k]) >= kMinMagnitude))
                {
                    char buf[128];
                    std::snprintf(buf, sizeof buf, "%s has magnitude %.3g < 1e-12 at %.12g Hz", what, std::abs(v[k]),
                                  f[k]);
                    throw SingularCalibrationError(buf);
                }
        }

        void check_same_grid(const FrequencySweep &a, const FrequencySweep &b, const char *what)
        {
            a.check();
            b.check();
            if (!same_grid(a.plan, b.plan))
                throw GridMismatchError(std::string(what) + ": frequency grids differ (" + a.plan.band_label() + ", " +
                                        std::to_string(a.size()) + " pts vs " + b.plan.band_label() + ", " +
                                        std::to_string(b.size()) + " pts)");
        }
    } // namespace

    SystemResponse::SystemResponse(FrequencySweep connect, std::optional<FrequencySweep> extra)
        : connect_(std::move(connect)), extra_(extra ? std::move(*extra) : FrequencySweep::constant(connect_.plan, 1.0))
    {
        check_same_grid(connect_, extra_, "system response");
        check_nonsingular(connect_.values, connect_.plan, "S21 connect");
        check_nonsingular(extra_.values, extra_.plan, "S21 extra");
        product_.resize(connect_.size());
        for (std::size_t k = 0; k < product_.size(); ++k)
            product_[k] = extra_.values[k] * connect_.values[k];
        check_nonsingular(product_, connect_.plan, "S21 extra * S21 connect");
    }

    SystemResponse SystemResponse::identity(const FrequencyPlan &plan)
    {
        return SystemResponse(FrequencySweep::constant(plan, 1.0));
    }

    FrequencySweep calibrate(const FrequencySweep &measured, const SystemResponse &sys)
    {
        check_same_grid(measured, sys.connect(), "calibrate");
        FrequencySweep h{measured.plan, std::vector<cdouble>(measured.size())};
        const auto &p = sys.product();
        for (std::size_t k = 0; k < h.size(); ++k)
            h.values[k] = measured.values[k] / p[k];
        return h;
    }

    FrequencySweep apply_system(const FrequencySweep &channel, const SystemResponse &sys)
    {
        check_same_grid(channel, sys.connect(), "apply_system");
        FrequencySweep m{channel.plan, std::vector<cdouble>(channel.size())};
        const auto &p = sys.product();
        for (std::size_t k = 0; k < m.size(); ++k)
            m.values[k] = channel.values[k] * p[k];
        return m;
    }
} // namespace thznirs
