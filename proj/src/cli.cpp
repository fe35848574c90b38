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

#include "thznirs/cli.hpp"
#include "thznirs/bundle_io.hpp"
#include "thznirs/calibrate.hpp"
#include "thznirs/coverage.hpp"
#include "thznirs/error.hpp"
#include "thznirs/pathloss.hpp"
#include "thznirs/pdap.hpp"
#include "thznirs/random.hpp"
#include "thznirs/reflfit.hpp"
#include "thznirs/scene_io.hpp"
#include "thznirs/synthchan.hpp"
#include "thznirs/textio.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <limits>
#include <map>
#include <optional>

namespace thznirs
{
    namespace
    {
        namespace fs = std::filesystem;

        struct RunConfig
        {
            std::string scene_path;
            std::vector<std::string> bundles;
            std::string connect_path;
            std::string extra_path;
            double threshold_db = kDefaultNoiseThresholdDb;
            std::string out_dir;
            std::uint64_t seed = 0;

            // synth
            std::string band;
            bool without_nirs = false;
            bool ideal_cable = false;
            int max_bounces = kDefaultMaxBounces;

            // pipeline
            double ple = 2.0;
            bool export_pdap = false;
            bool no_calibration = false;

            // fit
            std::vector<std::string> inputs;
            std::string generate;
            double noise_db = 0.0;
            std::string angles = "5:10:75";

            // coverage
            std::string with_path;
            std::string without_path;
            std::string thresholds = "-10:1:30";
            double resolution_m = 0.1;
            LinkBudget budget;
            bool gnuplot = false;
        };

        const std::string &require(const std::string &value, const char *flag)
        {
            if (value.empty())
                throw ValidationError("missing_argument", std::string(flag) + " is required");
            return value;
        }

        fs::path output_dir(const RunConfig &cfg)
        {
            fs::path dir(require(cfg.out_dir, "--out"));
            fs::create_directories(dir);
            return dir;
        }

        // "356-371" or "356-371GHz": band edges in GHz, step taken from the scene.
        FrequencyPlan parse_band(std::string text, double step_hz)
        {
            if (text.size() > 3 && text.ends_with("GHz"))
                text.resize(text.size() - 3);
            const auto dash = text.find('-', 1);
            if (dash == std::string::npos)
                throw ValidationError("band", "expected <start>-<stop> in GHz, got '" + text + "'");
            FrequencyPlan plan{parse_double(std::string_view(text).substr(0, dash), "band") * 1e9,
                               parse_double(std::string_view(text).substr(dash + 1), "band") * 1e9, step_hz};
            plan.validate();
            return plan;
        }

        std::vector<double> parse_list_or_range(const std::string &text, const char *what)
        {
            if (text.find(':') != std::string::npos)
                return parse_threshold_range(text);
            std::vector<double> out;
            for (auto f : split_fields(text))
                out.push_back(parse_double(f, what));
            return out;
        }

        // Smooth, seeded stand-in for a measured cable/connector response: a few
        // dB of insertion loss with slow ripple and a fixed electrical length.
        FrequencySweep random_cable_response(const FrequencyPlan &plan, std::uint64_t seed)
        {
            Rng rng(seed);
            const double base_db = rng.uniform(-6.0, -2.0);
            const double delay_s = rng.uniform(2e-9, 6e-9);
            double ripple_db[3], cycles[3], offset[3];
            for (int i = 0; i < 3; ++i)
            {
                ripple_db[i] = rng.uniform(0.1, 0.6);
                cycles[i] = rng.uniform(0.5, 4.0);
                offset[i] = rng.uniform(0.0, 2.0 * kPi);
            }
            const auto freqs = frequency_grid(plan);
            FrequencySweep out{plan, std::vector<cdouble>(freqs.size())};
            for (std::size_t k = 0; k < freqs.size(); ++k)
            {
                const double x = (freqs[k] - plan.f_start_hz) / plan.bandwidth_hz();
                double db = base_db;
                for (int i = 0; i < 3; ++i)
                    db += ripple_db[i] * std::sin(2.0 * kPi * cycles[i] * x + offset[i]);
                const double cyc = freqs[k] * delay_s;
                out.values[k] = std::polar(std::pow(10.0, db / 20.0), -2.0 * kPi * (cyc - std::floor(cyc)));
            }
            return out;
        }

        int cmd_synth(const RunConfig &cfg, std::ostream &out)
        {
            Scene scene = load_scene(require(cfg.scene_path, "--scene"));
            if (cfg.without_nirs)
                scene = scene.without_nirs();
            if (cfg.max_bounces < 0 || cfg.max_bounces > kMaxBounces)
                throw ValidationError("max_bounces", "must be in [0, " + std::to_string(kMaxBounces) + "]");
            const FrequencyPlan plan = cfg.band.empty() ? scene.plan : parse_band(cfg.band, scene.plan.f_step_hz);
            const fs::path dir = output_dir(cfg);

            const FrequencySweep connect =
                cfg.ideal_cable ? FrequencySweep::constant(plan, 1.0) : random_cable_response(plan, cfg.seed);
            const double boresight_db = scene.tx.antenna.boresight_gain_dbi + scene.rx_antenna.boresight_gain_dbi;
            const FrequencySweep extra = FrequencySweep::constant(plan, std::pow(10.0, boresight_db / 20.0));
            const SystemResponse cable(connect);

            for (std::size_t r = 0; r < scene.rx_positions.size(); ++r)
            {
                SweepBundle bundle = synthesize_sweep(scene, r, plan, scene.grid, cfg.max_bounces);
                for (auto &s : bundle.sweeps)
                    s = apply_system(s, cable);
                write_bundle(bundle, dir / ("rx" + std::to_string(r + 1)));
            }
            write_sweep_csv(connect, dir / "connect.csv");
            write_sweep_csv(extra, dir / "extra.csv");
            out << "synth: " << scene.rx_positions.size() << " bundles (" << plan.band_label() << ", "
                << scene.grid.size() << " directions each) -> " << dir.string() << '\n';
            return 0;
        }

        // A bundle argument is either one bundle directory or a directory of rx<k>/ bundles.
        std::vector<fs::path> expand_bundles(const fs::path &root)
        {
            if (fs::exists(root / "manifest.json"))
                return {root};
            if (!fs::is_directory(root))
                throw IoError("bundle directory not found: " + root.string());
            std::vector<std::pair<std::size_t, fs::path>> found;
            for (const auto &entry : fs::directory_iterator(root))
            {
                const std::string name = entry.path().filename().string();
                if (!entry.is_directory() || name.size() < 3 || !name.starts_with("rx") ||
                    !std::all_of(name.begin() + 2, name.end(), [](char c) { return c >= '0' && c <= '9'; }))
                    continue;
                found.emplace_back(std::stoul(name.substr(2)), entry.path());
            }
            if (found.empty())
                throw IoError("no manifest.json or rx<k>/ bundles under " + root.string());
            std::sort(found.begin(), found.end());
            std::vector<fs::path> out;
            for (auto &f : found)
                out.push_back(f.second);
            return out;
        }

        std::optional<fs::path> find_beside(const fs::path &bundle_dir, const fs::path &root, const char *name)
        {
            for (const fs::path &p : {root / name, bundle_dir / name, bundle_dir.parent_path() / name})
                if (fs::exists(p))
                    return p;
            return std::nullopt;
        }

        SystemResponse load_system(const RunConfig &cfg, const fs::path &bundle_dir, const fs::path &root,
                                   const FrequencyPlan &plan)
        {
            if (cfg.no_calibration)
                return SystemResponse::identity(plan);
            std::optional<fs::path> connect = cfg.connect_path.empty() ? find_beside(bundle_dir, root, "connect.csv")
                                                                       : std::optional<fs::path>(cfg.connect_path);
            if (!connect)
                throw IoError("missing calibration file connect.csv for " + bundle_dir.string() +
                              " (pass --connect or --no-calibration)");
            std::optional<fs::path> extra = cfg.extra_path.empty() ? find_beside(bundle_dir, root, "extra.csv")
                                                                   : std::optional<fs::path>(cfg.extra_path);
            std::optional<FrequencySweep> extra_sweep;
            if (extra)
                extra_sweep = read_sweep_csv(*extra);
            return SystemResponse(read_sweep_csv(*connect), std::move(extra_sweep));
        }

        int cmd_pipeline(const RunConfig &cfg, std::ostream &out, std::ostream &err)
        {
            const Scene scene = load_scene(require(cfg.scene_path, "--scene"));
            if (cfg.bundles.empty())
                throw ValidationError("missing_argument", "--bundle is required");
            CiModel ci;
            ci.ple = cfg.ple;
            ci.validate();
            const fs::path dir = output_dir(cfg);
            const double nan = std::numeric_limits<double>::quiet_NaN();

            std::vector<PathLossRecord> rows;
            std::vector<ReflSample> samples;
            for (const auto &root_arg : cfg.bundles)
            {
                const fs::path root(root_arg);
                for (const auto &bdir : expand_bundles(root))
                {
                    const SweepBundle bundle = read_bundle(bdir);
                    const BundleManifest &m = bundle.manifest;
                    if (m.rx_index >= scene.rx_positions.size())
                        throw ValidationError("rx_index", bdir.string() + ": receiver " +
                                                              std::to_string(m.rx_index + 1) + " is not in the scene");
                    const SystemResponse sys = load_system(cfg, bdir, root, m.plan);
                    const Pdap pdap = process_bundle(bundle, sys, cfg.threshold_db);
                    const std::size_t rx_id = m.rx_index + 1;

                    PathLossRecord rec;
                    rec.rx_id = rx_id;
                    rec.pl_omni_db = omni_path_loss(pdap);
                    rec.pl_dir_db = rec.reflection_angle_deg = rec.d1_m = rec.d2_m = nan;
                    const AngleSet set = nirs_angle_set(scene, m.rx_index, m.grid);
                    if (!set.directions.empty())
                    {
                        try
                        {
                            rec.pl_dir_db = directional_path_loss(pdap, set.directions);
                        }
                        catch (const NoSignalError &e)
                        {
                            err << "warning: rx " << rx_id << ": " << e.what() << '\n';
                        }
                    }
                    if (!set.no_panels)
                    {
                        const ReflectionGeometry g = reflection_geometry(scene, m.rx_index);
                        rec.reflection_angle_deg = g.angle_deg;
                        rec.d1_m = g.d1_m;
                        rec.d2_m = g.d2_m;
                        if (std::isfinite(rec.pl_dir_db))
                            samples.push_back(
                                {m.scenario, m.band_label, rx_id, g.angle_deg,
                                 additional_reflection_loss(rec.pl_dir_db, ci, m.plan.center_hz(), g.d1_m, g.d2_m),
                                 m.nirs});
                    }
                    rows.push_back(rec);

                    if (cfg.export_pdap)
                    {
                        const std::string stem = "pdap_rx" + std::to_string(rx_id);
                        write_text_file_atomic(dir / (stem + ".csv"), pdap_to_csv(pdap));
                        write_text_file_atomic(dir / (stem + ".json"), pdap_sidecar_json(pdap));
                    }
                }
            }
            write_text_file_atomic(dir / "pathloss.csv", pathloss_table_csv(rows));
            write_text_file_atomic(dir / "refl_samples.csv", refl_samples_csv(samples));
            out << "pipeline: " << rows.size() << " receivers -> " << (dir / "pathloss.csv").string() << '\n';
            return 0;
        }

        ReflLossModel parse_generator(const std::string &text, std::string &scenario, std::string &band)
        {
            const auto colon = text.find(':');
            if (colon != std::string::npos)
            {
                scenario = text.substr(0, colon);
                band = text.substr(colon + 1);
                if (!band.ends_with("GHz"))
                    band += "GHz";
                if (auto m = reference_refl_model(scenario, band))
                    return *m;
                throw ValidationError("generator", "unknown preset '" + text + "'");
            }
            const auto f = split_fields(text);
            if (f.size() != 4)
                throw ValidationError("generator", "expected <scenario>:<band> or phi_bar,a,b,c; got '" + text + "'");
            scenario = "custom";
            band = "custom";
            ReflLossModel m{parse_double(f[0], "generator"), parse_double(f[1], "generator"),
                            parse_double(f[2], "generator"), parse_double(f[3], "generator")};
            m.validate();
            return m;
        }

        int cmd_fit(const RunConfig &cfg, std::ostream &out)
        {
            std::vector<ReflSample> samples;
            if (!cfg.generate.empty())
            {
                std::string scenario, band;
                const ReflLossModel model = parse_generator(cfg.generate, scenario, band);
                if (!(cfg.noise_db >= 0.0))
                    throw ValidationError("noise_db", "noise level must be >= 0");
                const auto angles = parse_list_or_range(cfg.angles, "angles");
                samples = generate_refl_samples(model, angles, cfg.noise_db, cfg.seed, scenario, band);
            }
            for (const auto &in : cfg.inputs)
            {
                const auto more = refl_samples_from_csv(read_text_file(in), in);
                samples.insert(samples.end(), more.begin(), more.end());
            }
            if (cfg.generate.empty() && cfg.inputs.empty())
                throw ValidationError("missing_argument", "--in or --generate is required");

            std::map<std::pair<std::string, std::string>, std::vector<ReflSample>> groups;
            for (const auto &s : samples)
                if (s.with_nirs)
                    groups[{s.scenario, s.band_label}].push_back(s);
            if (groups.empty())
                throw FitError("no samples with a reflector present");

            std::vector<ReflTableRow> rows;
            for (const auto &[key, group] : groups)
                rows.push_back({key.first, key.second, fit_refl_model(group)});
            const fs::path dir = output_dir(cfg);
            if (!cfg.generate.empty())
                write_text_file_atomic(dir / "refl_samples_generated.csv", refl_samples_csv(samples));
            write_text_file_atomic(dir / "fit.csv", refl_table_csv(rows));
            out << "fit: " << rows.size() << " rows -> " << (dir / "fit.csv").string() << '\n';
            return 0;
        }

        CoverageMap coverage_map(const Scene &scene, const std::string &path, double resolution_m)
        {
            const auto rows = pathloss_table_from_csv(read_text_file(path), path);
            std::vector<double> pl(scene.rx_positions.size(), std::numeric_limits<double>::quiet_NaN());
            for (const auto &r : rows)
            {
                if (r.rx_id < 1 || r.rx_id > pl.size())
                    throw ValidationError("rx_index",
                                          path + ": receiver " + std::to_string(r.rx_id) + " is not in the scene");
                pl[r.rx_id - 1] = r.pl_omni_db;
            }
            for (std::size_t k = 0; k < pl.size(); ++k)
                if (!std::isfinite(pl[k]))
                    throw ValidationError("coverage_anchors",
                                          path + ": no finite omnidirectional path loss for receiver " +
                                              std::to_string(k + 1));
            return interpolate_path_loss(scene.rx_positions, pl, resolution_m);
        }

        int cmd_coverage(const RunConfig &cfg, std::ostream &out)
        {
            const Scene scene = load_scene(require(cfg.scene_path, "--scene"));
            cfg.budget.validate();
            const auto thresholds = parse_threshold_range(cfg.thresholds);
            const CoverageMap with = coverage_map(scene, require(cfg.with_path, "--with"), cfg.resolution_m);
            const auto curve_with = coverage_curve(with, cfg.budget, thresholds);
            std::vector<CoveragePoint> curve_without;
            if (!cfg.without_path.empty())
                curve_without =
                    coverage_curve(coverage_map(scene, cfg.without_path, cfg.resolution_m), cfg.budget, thresholds);

            std::string csv = "threshold_db,ratio_with_nirs,ratio_without_nirs\n";
            std::string dat = "# threshold_db ratio_with_nirs ratio_without_nirs\n";
            for (std::size_t k = 0; k < curve_with.size(); ++k)
            {
                const std::string th = format_report(curve_with[k].threshold_db);
                const std::string w = format_report(curve_with[k].ratio);
                const std::string wo = curve_without.empty() ? "nan" : format_report(curve_without[k].ratio);
                csv += th + ',' + w + ',' + wo + '\n';
                dat += th + ' ' + w + ' ' + wo + '\n';
            }
            const fs::path dir = output_dir(cfg);
            write_text_file_atomic(dir / "coverage.csv", csv);
            if (cfg.gnuplot)
                write_text_file_atomic(dir / "coverage.dat", dat);
            out << "coverage: " << curve_with.size() << " thresholds -> " << (dir / "coverage.csv").string() << '\n';
            return 0;
        }
    } // namespace

    int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
    {
        RunConfig cfg;
        CLI::App app{"Channel processing and coverage analysis for reflector-aided THz links", "thz_nirs"};
        app.require_subcommand(1);
        app.add_option("--scene", cfg.scene_path, "Scene description (JSON)");
        app.add_option("--bundle", cfg.bundles, "Sweep bundle directory (repeatable)");
        app.add_option("--connect", cfg.connect_path, "Connector/cable reference sweep (CSV)");
        app.add_option("--extra", cfg.extra_path, "Additional reference sweep (CSV)");
        app.add_option("--threshold-db", cfg.threshold_db, "Noise threshold of the profile in dB")
            ->capture_default_str();
        app.add_option("--out", cfg.out_dir, "Output directory");
        app.add_option("--seed", cfg.seed, "Random seed")->capture_default_str();

        auto *synth = app.add_subcommand("synth", "Synthesize per-receiver sweep bundles from a scene");
        synth->fallthrough();
        synth->add_option("--band", cfg.band, "Band in GHz, e.g. 356-371 (default: scene plan)");
        synth->add_flag("--without-nirs", cfg.without_nirs, "Remove all reflector panels");
        synth->add_flag("--ideal-cable", cfg.ideal_cable, "Use a unit connector response");
        synth->add_option("--max-bounces", cfg.max_bounces, "Reflection order")->capture_default_str();

        auto *pipeline = app.add_subcommand("pipeline", "Calibrate bundles and compute path loss per receiver");
        pipeline->fallthrough();
        pipeline->add_option("--ple", cfg.ple, "Path-loss exponent of the reference model")->capture_default_str();
        pipeline->add_flag("--export-pdap", cfg.export_pdap, "Also write each power-delay-angular profile");
        pipeline->add_flag("--no-calibration", cfg.no_calibration, "Treat sweeps as already calibrated");

        auto *fit = app.add_subcommand("fit", "Fit the reflection-loss model");
        fit->fallthrough();
        fit->add_option("--in", cfg.inputs, "Reflection-loss sample file (repeatable)");
        fit->add_option("--generate", cfg.generate, "Generate samples: <scenario>:<band> preset or phi_bar,a,b,c");
        fit->add_option("--noise-db", cfg.noise_db, "Gaussian noise std for generated samples")->capture_default_str();
        fit->add_option("--angles", cfg.angles, "Generator angles: start:step:stop or a list")->capture_default_str();

        auto *coverage = app.add_subcommand("coverage", "Coverage ratio against SNR threshold");
        coverage->fallthrough();
        coverage->add_option("--with", cfg.with_path, "Path-loss table with reflectors");
        coverage->add_option("--without", cfg.without_path, "Path-loss table without reflectors");
        coverage->add_option("--thresholds", cfg.thresholds, "start:step:stop in dB")->capture_default_str();
        coverage->add_option("--resolution", cfg.resolution_m, "Cell length in m")->capture_default_str();
        coverage->add_option("--pt-dbm", cfg.budget.p_t_dbm)->capture_default_str();
        coverage->add_option("--gt-dbi", cfg.budget.g_t_dbi)->capture_default_str();
        coverage->add_option("--gr-dbi", cfg.budget.g_r_dbi)->capture_default_str();
        coverage->add_option("--nf-db", cfg.budget.noise_figure_db)->capture_default_str();
        coverage->add_option("--temperature-k", cfg.budget.temperature_k)->capture_default_str();
        coverage->add_option("--bandwidth-hz", cfg.budget.bandwidth_hz)->capture_default_str();
        coverage->add_flag("--gnuplot", cfg.gnuplot, "Also write a whitespace-separated data file");

        try
        {
            std::vector<std::string> reversed(args.rbegin(), args.rend());
            app.parse(reversed);
        }
        catch (const CLI::CallForHelp &e)
        {
            return app.exit(e, out, err);
        }
        catch (const CLI::CallForAllHelp &e)
        {
            return app.exit(e, out, err);
        }
        catch (const CLI::ParseError &e)
        {
            err << "error: " << e.what() << '\n';
            return 2;
        }

        try
        {
            if (*synth)
                return cmd_synth(cfg, out);
            if (*pipeline)
                return cmd_pipeline(cfg, out, err);
            if (*fit)
                return cmd_fit(cfg, out);
            return cmd_coverage(cfg, out);
        }
        catch (const Error &e)
        {
            err << "error: " << e.what() << '\n';
            return 2;
        }
        catch (const std::exception &e)
        {
            err << "error: internal: " << e.what() << '\n';
            return 1;
        }
    }
} // namespace thznirs
