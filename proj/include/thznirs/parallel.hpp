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

#ifndef THZNIRS_PARALLEL_HPP
#define THZNIRS_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace thznirs
{
    // Worker cap from THZ_NIRS_THREADS (0 or unset = hardware concurrency).
    std::size_t worker_count();

    // Runs body(k) for k in [0, n). Each index is handled exactly once; results must
    // be written to per-index storage so the outcome does not depend on scheduling.
    void parallel_for(std::size_t n, const std::function<void(std::size_t)> &body);
} // namespace thznirs

#endif
