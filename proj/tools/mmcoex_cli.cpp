// SPDX-License-Identifier: Apache-2.0
//
// mmcoex - simulation library for in-band coexistence of a mmWave radar
// and a mmWave MIMO communication system
// Copyright (C) 2026 mmcoex contributors
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
//
// Command-line driver: `mmcoex sweep` runs the Monte Carlo experiment and
// writes figure-ready CSV tables, `mmcoex dump-channels` emits one seed's
// channel realizations for conformance testing, and `mmcoex validate`
// checks a config without running anything.

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mmcoex/mmcoex.hpp"

namespace
{

constexpr int kExitOk = 0;
constexpr int kExitConfigError = 2;
constexpr int kExitRuntimeError = 3;

struct CommonOptions
{
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<int> trials;
};

// Loads the config (reference defaults when --config is absent) and applies
// the command-line overrides.
mmcoex::ScenarioConfig load_config(const CommonOptions& opts)
{
    mmcoex::ScenarioConfig cfg;
    if (!opts.config_path.empty())
        cfg = mmcoex::parse_config(opts.config_path);
    if (opts.seed)
        cfg.base_seed = *opts.seed;
    if (opts.trials)
        cfg.trials_per_point = *opts.trials;
    mmcoex::validate(cfg);
    return cfg;
}

void print_dof_warnings(const mmcoex::ScenarioConfig& cfg)
{
    for (const mmcoex::DofWarning& w : mmcoex::validate_dof(cfg))
        std::cerr << "warning: " << w.message << "\n";
}

void write_file(const std::filesystem::path& path, const std::string& contents)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    out << contents;
    out.flush();
    if (!out)
        throw std::runtime_error("failed writing '" + path.string() + "'");
}

int cmd_sweep(const CommonOptions& opts, const std::string& out_dir, unsigned threads)
{
    mmcoex::ScenarioConfig cfg = load_config(opts);
    print_dof_warnings(cfg);

    const auto start = std::chrono::steady_clock::now();
    const mmcoex::SweepResult sweep = mmcoex::run_sweep(cfg, threads);
    const double duration =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    const std::filesystem::path dir(out_dir);
    std::filesystem::create_directories(dir);

    std::ostringstream rates, cdf, trials;
    mmcoex::write_rates_csv(rates, sweep.rates);
    mmcoex::write_sir_cdf_csv(cdf, sweep.sir_with_design_db, sweep.sir_without_design_db);
    mmcoex::write_trials_csv(trials, sweep.trials);

    write_file(dir / "rates.csv", rates.str());
    write_file(dir / "sir_cdf.csv", cdf.str());
    write_file(dir / "trials.csv", trials.str());

    const std::vector<std::string> outputs = {(dir / "rates.csv").string(),
                                              (dir / "sir_cdf.csv").string(),
                                              (dir / "trials.csv").string()};
    write_file(dir / "manifest.json", mmcoex::make_manifest(cfg, outputs, duration).dump(2) + "\n");

    std::cerr << "sweep: " << sweep.trials.size() << " trials in " << duration << " s -> " << out_dir
              << "\n";
    return kExitOk;
}

int cmd_dump_channels(const CommonOptions& opts, const std::string& out_path)
{
    const mmcoex::ScenarioConfig cfg = load_config(opts);
    const std::uint64_t seed = opts.seed.value_or(cfg.base_seed);

    const std::filesystem::path path(out_path);
    if (path.has_parent_path())
        std::filesystem::create_directories(path.parent_path());
    write_file(path, mmcoex::dump_channels_json(cfg, seed).dump(2) + "\n");
    return kExitOk;
}

int cmd_validate(const CommonOptions& opts)
{
    const mmcoex::ScenarioConfig cfg = load_config(opts);
    print_dof_warnings(cfg);
    std::cout << "config ok\n" << mmcoex::to_config_text(cfg);
    return kExitOk;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"mmWave radar / MIMO radio in-band coexistence simulator"};
    app.set_version_flag("--version", std::string("mmcoex ") + mmcoex::kVersion);
    app.require_subcommand(1);

    CommonOptions opts;
    std::string out_dir = ".";
    std::string out_path = "channels.json";
    unsigned threads = 0;

    auto add_common = [&opts](CLI::App* cmd) {
        cmd->add_option("--config", opts.config_path, "Config file (key = value; defaults when omitted)")
            ->check(CLI::ExistingFile);
        cmd->add_option("--seed", opts.seed, "Base seed override");
        cmd->add_option("--trials", opts.trials, "Trials-per-point override");
    };

    CLI::App* sweep = app.add_subcommand("sweep", "Run the Monte Carlo sweep and write CSV tables");
    add_common(sweep);
    sweep->add_option("--out", out_dir, "Output directory");
    sweep->add_option("--threads", threads, "Worker threads (0 = hardware concurrency)");

    CLI::App* dump = app.add_subcommand("dump-channels", "Dump one seed's channels as JSON");
    add_common(dump);
    dump->add_option("--out", out_path, "Output JSON path");

    CLI::App* validate = app.add_subcommand("validate", "Check a config and print its canonical form");
    add_common(validate);

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e)
    {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfigError;
    }

    try
    {
        if (sweep->parsed())
            return cmd_sweep(opts, out_dir, threads);
        if (dump->parsed())
            return cmd_dump_channels(opts, out_path);
        return cmd_validate(opts);
    }
    catch (const mmcoex::ConfigError& e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfigError;
    }
    catch (const std::exception& e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntimeError;
    }
}
