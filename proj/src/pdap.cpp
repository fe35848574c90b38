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

#include "thznirs/pdap.hpp"
#include "thznirs/error.hpp"
#include "thznirs/parallel.hpp"
#include "thznirs/textio.hpp"

#include <fftw3.h>
#include <json.hpp>

#include <cmath>
#include <map>
#include <memory>
#include <mutex>

namespace thznirs
{
    namespace
    {
        // FFTW planning is not thread safe; execution of an existing plan on new
        // (equally aligned) arrays is.
        class BackwardPlans
        {
          public:
            ~BackwardPlans()
            {
                for (auto &[n, plan] : plans_)
                    fftw_destroy_plan(plan);
            }

            fftw_plan get(std::size_t n)
            {
                std::lock_guard lock(mutex_);
                auto it = plans_.find(n);
                if (it != plans_.end())
                    return it->second;
                auto *in = fftw_alloc_complex(n);
                auto *out = fftw_alloc_complex(n);
                fftw_plan plan = fftw_plan_dft_1d(int(n), in, out, FFTW_BACKWARD, FFTW_ESTIMATE);
                fftw_free(in);
                fftw_free(out);
                plans_.emplace(n, plan);
                return plan;
            }

          private:
            std::mutex mutex_;
            std::map<std::size_t, fftw_plan> plans_;
        };

        BackwardPlans &plans()
        {
            static BackwardPlans p;
            return p;
        }

        struct FftwFree
        {
            void operator()(fftw_complex *p) const { fftw_free(p); }
        };
    } // namespace

    Cir to_cir(const FrequencySweep &sweep)
    {
        sweep.check();
        const std::size_t n = sweep.size() - 1;
        std::unique_ptr<fftw_complex[], FftwFree> in(fftw_alloc_complex(n)), out(fftw_alloc_complex(n));
        for (std::size_t m = 0; m < n; ++m)
        {
            in[m][0] = sweep.values[m].real();
            in[m][1] = sweep.values[m].imag();
        }
        fftw_execute_dft(plans().get(n), in.get(), out.get());

        Cir cir;
        cir.delay_step_s = 1.0 / sweep.plan.bandwidth_hz();
        cir.samples.resize(n);
        const double scale = 1.0 / double(n);
        for (std::size_t k = 0; k < n; ++k)
            cir.samples[k] = {out[k][0] * scale, out[k][1] * scale};
        return cir;
    }

    Pdap assemble_pdap(std::span<const Cir> cirs, const ScanGrid &grid, double noise_threshold_db)
    {
        grid.validate();
        if (!(noise_threshold_db > kSentinelDb))
            throw DomainError("noise threshold must exceed the -300 dB sentinel");
        if (cirs.size() != grid.size())
            throw GridMismatchError("expected " + std::to_string(grid.size()) + " CIRs for the scan grid, got " +
                                    std::to_string(cirs.size()));
        Pdap p;
        p.grid = grid;
        p.n_delay = cirs.empty() ? 0 : cirs[0].samples.size();
        p.delay_step_s = cirs.empty() ? 0.0 : cirs[0].delay_step_s;
        p.noise_threshold_db = noise_threshold_db;
        for (const auto &c : cirs)
            if (c.samples.size() != p.n_delay || std::abs(c.delay_step_s - p.delay_step_s) > 1e-12 * p.delay_step_s)
                throw GridMismatchError("CIRs differ in length or delay step");

        p.power_db.resize(grid.size() * p.n_delay);
        for (std::size_t d = 0; d < cirs.size(); ++d)
            for (std::size_t k = 0; k < p.n_delay; ++k)
            {
                const double db = 20.0 * std::log10(std::abs(cirs[d].samples[k]));
                p.power_db[d * p.n_delay + k] = db >= noise_threshold_db ? db : kSentinelDb;
            }
        return p;
    }

    Pdap eliminate_noise(const Pdap &pdap, double threshold_db)
    {
        if (!(threshold_db > kSentinelDb))
            throw DomainError("noise threshold must exceed the -300 dB sentinel");
        Pdap out = pdap;
        for (double &v : out.power_db)
            if (!(v >= threshold_db))
                v = kSentinelDb;
        out.noise_threshold_db = std::max(pdap.noise_threshold_db, threshold_db);
        return out;
    }

    Pdap process_bundle(const SweepBundle &bundle, const SystemResponse &sys, double noise_threshold_db)
    {
        std::vector<Cir> cirs(bundle.sweeps.size());
        parallel_for(cirs.size(), [&](std::size_t d) { cirs[d] = to_cir(calibrate(bundle.sweeps[d], sys)); });
        return assemble_pdap(cirs, bundle.manifest.grid, noise_threshold_db);
    }

    std::string pdap_to_csv(const Pdap &pdap)
    {
        std::string out = "el_deg,az_deg,delay_ns,power_db\n";
        for (std::size_t i = 0; i < pdap.grid.n_elevation(); ++i)
            for (std::size_t j = 0; j < pdap.grid.n_azimuth(); ++j)
                for (std::size_t k = 0; k < pdap.n_delay; ++k)
                {
                    const double v = pdap.at(i, j, k);
                    if (Pdap::is_sentinel(v))
                        continue;
                    out += format_report(pdap.grid.elevation_deg[i]) + ',' + format_report(pdap.grid.azimuth_deg[j]) +
                           ',' + format_report(double(k) * pdap.delay_step_s * 1e9) + ',' + format_report(v) + '\n';
                }
        return out;
    }

    std::string pdap_sidecar_json(const Pdap &pdap)
    {
        nlohmann::json j;
        j["scan_grid"] = {{"azimuth_deg", pdap.grid.azimuth_deg}, {"elevation_deg", pdap.grid.elevation_deg}};
        j["noise_threshold_db"] = pdap.noise_threshold_db;
        j["sentinel_db"] = kSentinelDb;
        j["delay_step_s"] = pdap.delay_step_s;
        j["n_delay"] = pdap.n_delay;
        return j.dump(2) + "\n";
    }
} // namespace thznirs
