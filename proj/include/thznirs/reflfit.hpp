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

#ifndef THZNIRS_REFLFIT_HPP
#define THZNIRS_REFLFIT_HPP

#include "thznirs/pathloss.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace thznirs
{
    // L(phi) = a |phi - phi_bar|^b + c, angles in degrees, losses in dB.
    struct ReflLossModel
    {
        double phi_bar_deg = 0.0;
        double a = 0.0;
        double b = 1.0;
        double c = 0.0;

        void validate() const;
    };

    // Fitted parameters reported for the four measured scenario/band combinations.
    // Scenario "corridor" or "hallway"; band "306-321GHz" or "356-371GHz".
    std::optional<ReflLossModel> reference_refl_model(const std::string &scenario, const std::string &band);

    struct ReflSample
    {
        std::string scenario;
        std::string band_label;
        std::size_t rx_id = 0;
        double reflection_angle_deg = 0.0;
        double additional_loss_db = 0.0;
        bool with_nirs = true;
    };

    // Excess of the directional path loss over the CI prediction at d1 + d2.
    double additional_reflection_loss(double pl_dir_db, const CiModel &ci, double f_hz, double d1_m, double d2_m);

    // Throws DomainError for phi outside [0, 90] degrees.
    double eval_refl_model(const ReflLossModel &model, double phi_deg);

    struct ReflFitResult
    {
        ReflLossModel model;
        double rmse_db = 0.0;
        bool exponent_unidentified = false; // a == 0: b and phi_bar carry no information
        std::size_t n_samples = 0;
    };

    // Least-squares fit of the angle model to (angle, loss) pairs.
    //
    // Exhaustive grid over b in {0.01, 0.02, ..., 2.00} and phi_bar over every
    // multiple of 0.01 deg between the smallest and largest sample angle. For each
    // cell (a, c) has a closed-form linear solution; a < 0 is clamped to 0 (c = mean)
    // and c < 0 to 0 (a re-solved through the origin). Cells whose RMSE agree within
    // 1e-12 are resolved towards the smaller b, then the smaller phi_bar.
    //
    // Throws FitError with fewer than 4 samples or fewer than 3 distinct angles.
    ReflFitResult fit_loss_curve(std::span<const double> angles_deg, std::span<const double> losses_db);

    // Fits the with-NIRS samples; samples without NIRS are ignored.
    ReflFitResult fit_refl_model(std::span<const ReflSample> samples);

    // Samples of `model` at the given angles plus N(0, sigma^2) dB noise.
    std::vector<ReflSample> generate_refl_samples(const ReflLossModel &model, std::span<const double> angles_deg,
                                                  double noise_sigma_db, std::uint64_t seed,
                                                  const std::string &scenario, const std::string &band);

    // CSV `scenario,band,rx_id,reflection_angle_deg,l_ref_db,with_nirs`.
    std::string refl_samples_csv(std::span<const ReflSample> samples);
    std::vector<ReflSample> refl_samples_from_csv(std::string_view text, const std::string &source);

    struct ReflTableRow
    {
        std::string scenario;
        std::string band_label;
        ReflFitResult fit;
    };

    // CSV `scenario,band,phi_bar_deg,a,b,c,rmse_db`.
    std::string refl_table_csv(std::span<const ReflTableRow> rows);
} // namespace thznirs

#endif
