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

#include "thznirs/reflfit.hpp"
#include "thznirs/error.hpp"
#include "thznirs/random.hpp"
#include "thznirs/textio.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace thznirs
{
    void ReflLossModel::validate() const
    {
        if (!(a >= 0.0) || !(b > 0.0) || !(c >= 0.0) || !std::isfinite(phi_bar_deg))
            throw ValidationError("refl_model_params", "need a >= 0, b > 0, c >= 0 and finite phi_bar");
    }

    std::optional<ReflLossModel> reference_refl_model(const std::string &scenario, const std::string &band)
    {
        if (band == "306-321GHz")
        {
            if (scenario == "corridor")
                return ReflLossModel{17.51, 2.80, 0.48, 7.4};
            if (scenario == "hallway")
                return ReflLossModel{15.79, 3.52, 0.59, 1.51};
        }
        if (band == "356-371GHz")
        {
            if (scenario == "corridor")
                return ReflLossModel{18.34, 1.34, 0.60, 13.78};
            if (scenario == "hallway")
                return ReflLossModel{15.58, 2.60, 0.67, 4.01};
        }
        return std::nullopt;
    }

    double additional_reflection_loss(double pl_dir_db, const CiModel &ci, double f_hz, double d1_m, double d2_m)
    {
        return pl_dir_db - ci_path_loss(ci, f_hz, d1_m + d2_m);
    }

    double eval_refl_model(const ReflLossModel &model, double phi_deg)
    {
        if (!(phi_deg >= 0.0 && phi_deg <= 90.0))
            throw DomainError("reflection angle " + format_report(phi_deg) + " deg outside [0, 90]");
        return model.a * std::pow(std::abs(phi_deg - model.phi_bar_deg), model.b) + model.c;
    }

    namespace
    {
        struct LinearFit
        {
            double a = 0, c = 0;
        };

        // min over a, c >= 0 of sum (a t_i + c - y_i)^2
        LinearFit solve(std::span<const double> t, std::span<const double> y, double ybar)
        {
            const double n = double(t.size());
            double st = 0, stt = 0, sty_c = 0, sty = 0;
            for (std::size_t i = 0; i < t.size(); ++i)
            {
                st += t[i];
                stt += t[i] * t[i];
                sty_c += t[i] * (y[i] - ybar);
                sty += t[i] * y[i];
            }
            const double var_t = stt - st * st / n;
            LinearFit f;
            f.a = var_t > 1e-300 ? sty_c / var_t : 0.0;
            f.c = ybar - f.a * st / n;
            if (f.a < 0.0)
            {
                f.a = 0.0;
                f.c = ybar;
            }
            if (f.c < 0.0)
            {
                f.c = 0.0;
                f.a = stt > 0.0 ? std::max(0.0, sty / stt) : 0.0;
            }
            return f;
        }

        double sse_of(const LinearFit &f, std::span<const double> t, std::span<const double> y)
        {
            double sse = 0.0;
            for (std::size_t i = 0; i < t.size(); ++i)
            {
                const double e = f.a * t[i] + f.c - y[i];
                sse += e * e;
            }
            return sse;
        }

        constexpr int kExponentSteps = 200; // b = k / 100
        constexpr double kTieTolerance = 1e-12;
    } // namespace

    ReflFitResult fit_loss_curve(std::span<const double> x, std::span<const double> y)
    {
        if (x.size() != y.size())
            throw FitError("angle and loss lists differ in length");
        const std::size_t n = x.size();
        if (n < 4)
            throw FitError("underdetermined: " + std::to_string(n) + " samples for 4 parameters");
        for (std::size_t i = 0; i < n; ++i)
        {
            if (!(x[i] >= 0.0 && x[i] <= 90.0))
                throw DomainError("reflection angle " + format_report(x[i]) + " deg outside [0, 90]");
            if (!std::isfinite(y[i]))
                throw ValidationError("refl_sample_finite", "additional loss must be finite");
        }
        std::vector<double> distinct(x.begin(), x.end());
        std::sort(distinct.begin(), distinct.end());
        distinct.erase(
            std::unique(distinct.begin(), distinct.end(), [](double p, double q) { return std::abs(p - q) <= 1e-12; }),
            distinct.end());
        if (distinct.size() == 1)
            throw FitError("degenerate fit: all reflection angles are identical");
        if (distinct.size() < 3)
            throw FitError("degenerate fit: need at least 3 distinct reflection angles");

        double ybar = 0.0;
        for (double v : y)
            ybar += v;
        ybar /= double(n);

        const long j_lo = long(std::ceil(distinct.front() * 100.0 - 1e-9));
        const long j_hi = long(std::floor(distinct.back() * 100.0 + 1e-9));

        double best_rmse = std::numeric_limits<double>::infinity();
        int best_k = 0;
        long best_j = 0;
        std::vector<double> ratio(n), t(n);
        for (long j = j_lo; j <= j_hi; ++j)
        {
            const double phi_bar = double(j) / 100.0;
            for (std::size_t i = 0; i < n; ++i)
            {
                // |x - phi_bar|^(k/100) by repeated multiplication over k
                ratio[i] = std::pow(std::abs(x[i] - phi_bar), 0.01);
                t[i] = ratio[i];
            }
            for (int k = 1; k <= kExponentSteps; ++k)
            {
                const double rmse = std::sqrt(sse_of(solve(t, y, ybar), t, y) / double(n));
                const bool better = rmse < best_rmse - kTieTolerance;
                const bool tie_wins =
                    std::abs(rmse - best_rmse) <= kTieTolerance && (k < best_k || (k == best_k && j < best_j));
                if (better || tie_wins)
                {
                    best_rmse = rmse;
                    best_k = k;
                    best_j = j;
                }
                for (std::size_t i = 0; i < n; ++i)
                    t[i] *= ratio[i];
            }
        }

        // final solve at the chosen cell with exact powers
        ReflFitResult r;
        r.n_samples = n;
        r.model.b = double(best_k) / 100.0;
        r.model.phi_bar_deg = double(best_j) / 100.0;
        for (std::size_t i = 0; i < n; ++i)
            t[i] = std::pow(std::abs(x[i] - r.model.phi_bar_deg), r.model.b);
        LinearFit lf = solve(t, y, ybar);
        if (lf.a <= 1e-10 * std::max(1.0, std::abs(lf.c)))
        {
            lf.a = 0.0;
            lf.c = std::max(0.0, ybar);
            r.exponent_unidentified = true;
        }
        r.model.a = lf.a;
        r.model.c = lf.c;
        r.rmse_db = std::sqrt(sse_of(lf, t, y) / double(n));
        return r;
    }

    ReflFitResult fit_refl_model(std::span<const ReflSample> samples)
    {
        std::vector<double> x, y;
        for (const auto &smp : samples)
            if (smp.with_nirs)
            {
                x.push_back(smp.reflection_angle_deg);
                y.push_back(smp.additional_loss_db);
            }
        return fit_loss_curve(x, y);
    }

    std::vector<ReflSample> generate_refl_samples(const ReflLossModel &model, std::span<const double> angles_deg,
                                                  double noise_sigma_db, std::uint64_t seed,
                                                  const std::string &scenario, const std::string &band)
    {
        model.validate();
        Rng rng(seed);
        std::vector<ReflSample> out;
        for (std::size_t k = 0; k < angles_deg.size(); ++k)
        {
            double v = eval_refl_model(model, angles_deg[k]);
            if (noise_sigma_db > 0.0)
                v += rng.normal(0.0, noise_sigma_db);
            out.push_back({scenario, band, k + 1, angles_deg[k], v, true});
        }
        return out;
    }

    std::string refl_samples_csv(std::span<const ReflSample> samples)
    {
        std::string out = "scenario,band,rx_id,reflection_angle_deg,l_ref_db,with_nirs\n";
        for (const auto &s : samples)
            out += s.scenario + ',' + s.band_label + ',' + std::to_string(s.rx_id) + ',' +
                   format_report(s.reflection_angle_deg) + ',' + format_report(s.additional_loss_db) + ',' +
                   (s.with_nirs ? "1" : "0") + '\n';
        return out;
    }

    std::vector<ReflSample> refl_samples_from_csv(std::string_view text, const std::string &source)
    {
        const auto lines = split_lines(text);
        if (lines.empty() || lines.front() != "scenario,band,rx_id,reflection_angle_deg,l_ref_db,with_nirs")
            throw ValidationError("refl_samples_header", source + ": unexpected header");
        std::vector<ReflSample> out;
        for (std::size_t k = 1; k < lines.size(); ++k)
        {
            if (lines[k].empty())
                continue;
            const auto f = split_fields(lines[k]);
            const std::string where = source + " line " + std::to_string(k + 1);
            if (f.size() != 6 || (f[5] != "0" && f[5] != "1"))
                throw ValidationError("refl_samples_row", where + ": malformed row");
            ReflSample s;
            s.scenario = std::string(f[0]);
            s.band_label = std::string(f[1]);
            s.rx_id = std::size_t(parse_double(f[2], where));
            s.reflection_angle_deg = parse_double(f[3], where);
            s.additional_loss_db = parse_double(f[4], where);
            s.with_nirs = f[5] == "1";
            out.push_back(std::move(s));
        }
        return out;
    }

    std::string refl_table_csv(std::span<const ReflTableRow> rows)
    {
        std::string out = "scenario,band,phi_bar_deg,a,b,c,rmse_db\n";
        for (const auto &r : rows)
            out += r.scenario + ',' + r.band_label + ',' + format_report(r.fit.model.phi_bar_deg) + ',' +
                   format_report(r.fit.model.a) + ',' + format_report(r.fit.model.b) + ',' +
                   format_report(r.fit.model.c) + ',' + format_report(r.fit.rmse_db) + '\n';
        return out;
    }
} // namespace thznirs
