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

#ifndef THZNIRS_CALIBRATE_HPP
#define THZNIRS_CALIBRATE_HPP

#include "thznirs/sweep.hpp"

#include <optional>

namespace thznirs
{
    // System response removed from raw measurements:
    //   connect - through-connection reference (Tx and Rx joined by waveguide)
    //   extra   - parts present only in the channel measurement, e.g. the horns
    class SystemResponse
    {
      public:
        // `extra` defaults to all ones. Throws GridMismatchError when the two sweeps
        // use different grids, SingularCalibrationError when any sample of connect,
        // extra or their product has magnitude below 1e-12.
        SystemResponse(FrequencySweep connect, std::optional<FrequencySweep> extra = std::nullopt);

        static SystemResponse identity(const FrequencyPlan &plan);

        const FrequencySweep &connect() const noexcept { return connect_; }
        const FrequencySweep &extra() const noexcept { return extra_; }
        const FrequencyPlan &plan() const noexcept { return connect_.plan; }

        // extra[k] * connect[k]
        const std::vector<cdouble> &product() const noexcept { return product_; }

      private:
        FrequencySweep connect_;
        FrequencySweep extra_;
        std::vector<cdouble> product_;
    };

    // H[k] = measured[k] / (extra[k] * connect[k])
    FrequencySweep calibrate(const FrequencySweep &measured, const SystemResponse &sys);

    // measured[k] = channel[k] * extra[k] * connect[k]; inverse of calibrate.
    FrequencySweep apply_system(const FrequencySweep &channel, const SystemResponse &sys);
} // namespace thznirs

#endif
