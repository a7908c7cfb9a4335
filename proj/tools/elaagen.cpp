// SPDX-License-Identifier: Apache-2.0
//
// elaagen - near-field fading channel generator for extremely large aperture arrays
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

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "elaa/config.hpp"
#include "elaa/engine.hpp"
#include "elaa/errors.hpp"
#include "elaa/io.hpp"
#include "elaa/scenario.hpp"
#include "elaa/stats.hpp"

namespace
{

constexpr int exit_ok = 0;
constexpr int exit_config_error = 2;
constexpr int exit_io_error = 3;

nlohmann::json read_config_json(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw elaa::io_error("cannot open config file '" + path + "'");
    nlohmann::json j;
    try
    {
        in >> j;
    }
    catch (const nlohmann::json::exception &e)
    {
        throw elaa::config_error("config '" + path + "': " + e.what());
    }
    return j;
}

int run_generate(const std::string &config_path, const std::string &out_dir, const std::int64_t *seed)
{
    nlohmann::json j = read_config_json(config_path);
    if (seed)
        j["seed"] = static_cast<std::uint64_t>(*seed);

    const elaa::SimulationConfig cfg = elaa::config_from_json(j);
    const elaa::ChannelRealization realization = elaa::generate(cfg);
    const auto files = elaa::write_outputs(realization, cfg, j, out_dir);

    std::cout << "wrote " << files.size() << " files to " << out_dir << " (seed " << cfg.seed << ")\n";
    return exit_ok;
}

int run_rss(const std::string &config_path, const std::string &out_dir)
{
    nlohmann::json j = read_config_json(config_path);
    elaa::SimulationConfig cfg = elaa::config_from_json(j);
    cfg.outputs = {elaa::OutputKind::rss};

    const elaa::ChannelRealization realization = elaa::generate(cfg);
    const auto files = elaa::write_outputs(realization, cfg, j, out_dir);
    std::cout << "wrote " << files.size() << " files to " << out_dir << '\n';
    return exit_ok;
}

int run_stats_cmd(const std::string &config_path, std::size_t trials, const std::string &out_dir)
{
    nlohmann::json j = read_config_json(config_path);
    const elaa::SimulationConfig cfg = elaa::config_from_json(j);
    std::cout << elaa::run_stats(cfg, trials, out_dir);
    return exit_ok;
}

int run_profile_dump(const std::string &name)
{
    const elaa::ScenarioProfile profile = elaa::builtin_profile(name);
    std::cout << elaa::profile_to_json(profile).dump(2) << '\n';
    return exit_ok;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"near-field fading channel generator for extremely large aperture arrays"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = "out";
    std::int64_t seed_override = 0;
    bool have_seed = false;
    std::size_t trials = 10000;
    std::string profile_name = "umi_street_canyon";

    auto *gen = app.add_subcommand("generate", "run the full pipeline and write the selected outputs");
    gen->add_option("--config", config_path, "simulation config (JSON)")->required();
    gen->add_option("--out", out_dir, "output directory");
    gen->add_option("--seed", seed_override, "override the config seed")
        ->check(CLI::NonNegativeNumber)
        ->each([&](const std::string &) { have_seed = true; });

    auto *rss = app.add_subcommand("rss", "generate and write only the normalized RSS maps");
    rss->add_option("--config", config_path, "simulation config (JSON)")->required();
    rss->add_option("--out", out_dir, "output directory");

    auto *stats = app.add_subcommand("stats", "Monte Carlo self-checks against analytic references");
    stats->add_option("--config", config_path, "simulation config (JSON)")->required();
    stats->add_option("--trials", trials, "samples per probe")->required();
    stats->add_option("--out", out_dir, "output directory");

    auto *profile = app.add_subcommand("profile", "scenario profile utilities");
    auto *dump = profile->add_subcommand("dump", "print a builtin profile as JSON");
    dump->add_option("--name", profile_name, "profile name");
    profile->require_subcommand(1);

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int rc = app.exit(e);
        return rc == 0 ? exit_ok : exit_config_error;
    }

    try
    {
        if (gen->parsed())
            return run_generate(config_path, out_dir, have_seed ? &seed_override : nullptr);
        if (rss->parsed())
            return run_rss(config_path, out_dir);
        if (stats->parsed())
            return run_stats_cmd(config_path, trials, out_dir);
        if (profile->parsed() && dump->parsed())
            return run_profile_dump(profile_name);
    }
    catch (const elaa::io_error &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return exit_io_error;
    }
    catch (const elaa::config_error &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return exit_config_error;
    }
    catch (const std::invalid_argument &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return exit_config_error;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return exit_io_error;
    }
    return exit_config_error;
}
