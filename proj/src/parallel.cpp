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

#include "thznirs/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace thznirs
{
    std::size_t worker_count()
    {
        std::size_t hw = std::max<std::size_t>(1, std::thread::hardware_concurrency());
        if (const char *env = std::getenv("THZ_NIRS_THREADS"))
        {
            try
            {
                const long v = std::stol(env);
                if (v > 0)
                    return std::size_t(v);
            }
            catch (const std::exception &)
            {
            }
        }
        return hw;
    }

    void parallel_for(std::size_t n, const std::function<void(std::size_t)> &body)
    {
        const std::size_t workers = std::min(worker_count(), n);
        if (workers <= 1)
        {
            for (std::size_t k = 0; k < n; ++k)
                body(k);
            return;
        }

        std::atomic<std::size_t> next{0};
        // the error of the lowest failing index wins, independent of scheduling
        std::exception_ptr first_error;
        std::size_t error_index = n;
        std::mutex error_mutex;
        auto run = [&]
        {
            for (std::size_t k = next++; k < n; k = next++)
            {
                try
                {
                    body(k);
                }
                catch (...)
                {
                    std::lock_guard lock(error_mutex);
                    if (k < error_index)
                    {
                        error_index = k;
                        first_error = std::current_exception();
                    }
                }
            }
        };
        std::vector<std::thread> pool;
        for (std::size_t w = 1; w < workers; ++w)
            pool.emplace_back(run);
        run();
        for (auto &t : pool)
            t.join();
        if (first_error)
            std::rethrow_exception(first_error);
    }
} // namespace thznirs
