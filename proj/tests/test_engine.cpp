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

#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "elaa/engine.hpp"
#include "elaa/errors.hpp"
#include "elaa/fading.hpp"
#include "elaa/io.hpp"

using namespace elaa;

namespace
{
const Point3 ex{1.0, 0.0, 0.0};
const Point3 ez{0.0, 0.0, 1.0};

// Small wall-mounted scene with a mix of LoS and NLoS windows.
SimulationConfig small_scene(std::uint64_t seed)
{
    const double lambda = 299792458.0 / 3.5e9;
    SimulationConfig cfg;
    cfg.profile = builtin_profile("umi_street_canyon");
    cfg.array = ArrayGeometry(12, 20, lambda / 2.0, {0, 0, 1.0}, ex, ez);
    cfg.mts = {MtGeometry({Point3{0.3, -36.0, 1.5}, Point3{0.3 + lambda, -36.0, 1.5}}),
               MtGeometry({Point3{-4.0, -30.0, 1.5}, Point3{-4.0 + lambda, -30.0, 1.5}})};
    cfg.windows = {0.1, 0.1};
    cfg.seed = seed;
    return cfg;
}

SimulationConfig scene_with_sphere(std::uint64_t seed)
{
    SimulationConfig cfg = small_scene(seed);
    ObjectSpec sphere;
    sphere.type = ObjectSpec::Type::sphere;
    sphere.center = {0.3, -10.0, 1.3};
    sphere.radius_m = 0.12;
    sphere.n_points = 1500;
    cfg.objects = {sphere};
    return cfg;
}

nlohmann::json minimal_config_json()
{
    return nlohmann::json::parse(R"({
      "scenario": "umi_street_canyon",
      "array": {"rows": 4, "cols": 8, "spacing_m": 0.05, "origin": [0, 0, 1.0]},
      "mts": [{"antennas": [[0.1, -25.0, 1.5], [0.15, -25.0, 1.5]]}],
      "windows": {"d_corr_h_m": 0.2, "d_corr_v_m": 0.3},
      "seed": 7
    })");
}
} // namespace

TEST_SUITE("engine")
{
    TEST_CASE("generation is deterministic in (config, seed)")
    {
        const SimulationConfig cfg = scene_with_sphere(31);
        const ChannelRealization a = generate(cfg);
        const ChannelRealization b = generate(cfg);
        REQUIRE(a.per_mt.size() == b.per_mt.size());
        for (std::size_t i = 0; i < a.per_mt.size(); ++i)
        {
            CHECK(a.per_mt[i].h == b.per_mt[i].h);
            CHECK(a.per_mt[i].pl_db == b.per_mt[i].pl_db);
            CHECK(a.per_mt[i].sf_db == b.per_mt[i].sf_db);
            CHECK(a.per_mt[i].state == b.per_mt[i].state);
            CHECK(a.per_mt[i].mask.blocked == b.per_mt[i].mask.blocked);
        }

        SimulationConfig other = cfg;
        other.seed = 32;
        const ChannelRealization c = generate(other);
        CHECK(a.per_mt[0].h != c.per_mt[0].h);
    }

    TEST_CASE("no objects means no snapshot and no mask")
    {
        const ChannelRealization r = generate(small_scene(5));
        for (const MtRealization &mt : r.per_mt)
        {
            CHECK_FALSE(mt.pre_sensing.has_value());
            CHECK(mt.mask.empty());
        }
    }

    TEST_CASE("pipeline locality: sensing only touches masked links")
    {
        const std::uint64_t seed = 77;
        const ChannelRealization plain = generate(small_scene(seed));
        const ChannelRealization sensed = generate(scene_with_sphere(seed));

        for (std::size_t i = 0; i < plain.per_mt.size(); ++i)
        {
            const MtRealization &p = plain.per_mt[i];
            const MtRealization &s = sensed.per_mt[i];
            REQUIRE(s.pre_sensing.has_value());

            // The pre-sensing snapshot equals the object-free run bit for bit.
            CHECK(s.pre_sensing->h == p.h);
            CHECK(s.pre_sensing->pl_db == p.pl_db);
            CHECK(s.pre_sensing->sf_db == p.sf_db);
            CHECK(s.pre_sensing->state == p.state);

            // Post-sensing differs from pre-sensing exactly on the mask.
            for (std::size_t m = 0; m < s.n_elements(); ++m)
            {
                if (s.mask.at(m))
                {
                    CHECK(s.pre_sensing->state[m] == LinkState::los);
                    CHECK(s.state[m] == LinkState::nlos);
                }
                else
                {
                    CHECK(s.state[m] == p.state[m]);
                    CHECK(s.sf_db[m] == p.sf_db[m]);
                    for (std::size_t k = 0; k < s.n_antennas(); ++k)
                        CHECK(s.h(m, k) == p.h(m, k));
                }
            }
        }
    }

    TEST_CASE("per-window sharing of shadow fading and K")
    {
        const ChannelRealization r = generate(small_scene(13));
        for (const MtRealization &mt : r.per_mt)
        {
            for (std::size_t w = 0; w < mt.partition.n_windows(); ++w)
            {
                const WindowRect &rect = mt.partition.windows[w];
                const double sf0 = mt.sf_db[rect.row_start * mt.partition.n_cols + rect.col_start];
                for (std::size_t row = rect.row_start; row < rect.row_end; ++row)
                    for (std::size_t col = rect.col_start; col < rect.col_end; ++col)
                        CHECK(mt.sf_db[row * mt.partition.n_cols + col] == sf0);
                if (rect.state == LinkState::los)
                    CHECK(std::isfinite(mt.window_k_db[w]));
                else
                    CHECK(std::isnan(mt.window_k_db[w]));
            }
        }
    }

    TEST_CASE("mean received power follows the large-scale law")
    {
        // Freeze shadowing and pin a huge K so |g| == 1: |h|^2 must equal the
        // pathloss exactly; then check the Rayleigh branch statistically.
        SimulationConfig cfg = small_scene(3);
        cfg.profile.los_prob.model = LosProbabilityParams::Model::constant;
        cfg.profile.los_prob.constant_p = 1.0;
        cfg.profile.sf_sigma_los_db = 0.0;
        cfg.profile.k_factor_mu_db = 200.0; // K ~ 1e20: diffuse part negligible
        cfg.profile.k_factor_sigma_db = 0.0;

        const ChannelRealization pinned = generate(cfg);
        const MtRealization &mt = pinned.per_mt[0];
        for (std::size_t m = 0; m < mt.n_elements(); m += 17)
        {
            const double expected = db_to_power(-mt.pl_db(m, 0));
            CHECK(std::norm(mt.h(m, 0)) == doctest::Approx(expected).epsilon(1e-9));
        }

        // NLoS branch: mean |h|^2 over seeds approaches 10^(-pl/10) when
        // sigma = 0 (unit-power Rayleigh).
        SimulationConfig nlos_cfg = small_scene(4);
        nlos_cfg.profile.los_prob.model = LosProbabilityParams::Model::constant;
        nlos_cfg.profile.los_prob.constant_p = 0.0;
        nlos_cfg.profile.sf_sigma_nlos_db = 0.0;
        nlos_cfg.array = ArrayGeometry(1, 1, 0.05, {0, 0, 1.0}, ex, ez);
        nlos_cfg.mts = {MtGeometry({Point3{0.0, -25.0, 1.5}})};

        double acc = 0.0;
        double pl_ref = 0.0;
        const int n_seeds = 4000;
        for (int seed = 0; seed < n_seeds; ++seed)
        {
            nlos_cfg.seed = static_cast<std::uint64_t>(seed);
            const ChannelRealization r = generate(nlos_cfg);
            acc += std::norm(r.per_mt[0].h(0, 0));
            pl_ref = r.per_mt[0].pl_db(0, 0);
        }
        const double expected = db_to_power(-pl_ref);
        // Var(|g|^2) = 1 for Rayleigh: 3 SE tolerance.
        CHECK(acc / n_seeds == doctest::Approx(expected).epsilon(3.0 / std::sqrt(n_seeds)));
    }

    TEST_CASE("rss map normalization and modes")
    {
        const ChannelRealization r = generate(small_scene(21));
        const MtRealization &mt = r.per_mt[0];

        for (const RssMode mode : {RssMode::first_antenna, RssMode::mean})
        {
            const RssMap map = rss_map(mt, mode);
            REQUIRE(map.rss_db.size() == mt.n_elements());
            double peak = -1e300;
            for (const double v : map.rss_db)
            {
                CHECK(v <= 0.0);
                peak = std::max(peak, v);
            }
            CHECK(peak == 0.0);
        }

        // Antenna selection changes the map.
        const RssMap a0 = rss_map(mt, RssMode::first_antenna, 0);
        const RssMap a1 = rss_map(mt, RssMode::first_antenna, 1);
        CHECK(a0.rss_db != a1.rss_db);
        CHECK_THROWS_AS(rss_map(mt, RssMode::first_antenna, 99), std::invalid_argument);

        // Single-element channel normalizes to exactly 0 dB.
        SimulationConfig single = small_scene(2);
        single.array = ArrayGeometry(1, 1, 0.05, {0, 0, 1.0}, ex, ez);
        single.mts = {MtGeometry({Point3{0.0, -10.0, 1.0}})};
        const ChannelRealization rs = generate(single);
        const RssMap map = rss_map(rs.per_mt[0]);
        REQUIRE(map.rss_db.size() == 1);
        CHECK(map.rss_db[0] == 0.0);

        // All-zero channels are rejected.
        MtRealization zero = rs.per_mt[0];
        zero.h(0, 0) = {0.0, 0.0};
        CHECK_THROWS_AS(rss_map(zero), std::invalid_argument);
    }

    TEST_CASE("same-state neighbors can differ by more than one shadow sigma")
    {
        // Scan a handful of seeds for two adjacent same-state windows whose
        // mean RSS differs by > sigma_SF; shadowing makes this likely.
        const double sigma = builtin_profile("umi_street_canyon").sf_sigma_los_db;
        bool found = false;
        for (std::uint64_t seed = 0; seed < 50 && !found; ++seed)
        {
            const ChannelRealization r = generate(small_scene(seed));
            const MtRealization &mt = r.per_mt[0];
            const RssMap map = rss_map(mt);

            std::vector<double> mean_rss(mt.partition.n_windows(), 0.0);
            for (std::size_t m = 0; m < mt.n_elements(); ++m)
                mean_rss[mt.partition.window_of[m]] += map.rss_db[m];
            for (std::size_t w = 0; w < mt.partition.n_windows(); ++w)
                mean_rss[w] /= static_cast<double>(mt.partition.windows[w].area());

            for (std::size_t a = 0; a < mt.partition.n_windows() && !found; ++a)
                for (std::size_t b = a + 1; b < mt.partition.n_windows() && !found; ++b)
                {
                    const WindowRect &wa = mt.partition.windows[a];
                    const WindowRect &wb = mt.partition.windows[b];
                    const bool adjacent_cols = wa.col_end == wb.col_start || wb.col_end == wa.col_start;
                    const bool adjacent_rows = (wa.col_start == wb.col_start) &&
                                               (wa.row_end == wb.row_start || wb.row_end == wa.row_start);
                    if (!(adjacent_cols || adjacent_rows) || wa.state != wb.state)
                        continue;
                    if (std::abs(mean_rss[a] - mean_rss[b]) > sigma)
                        found = true;
                }
        }
        CHECK(found);
    }

    TEST_CASE("config parsing")
    {
        SUBCASE("minimal document with defaults")
        {
            const SimulationConfig cfg = config_from_json(minimal_config_json());
            CHECK(cfg.array.n_rows() == 4);
            CHECK(cfg.array.n_cols() == 8);
            CHECK(cfg.mts.size() == 1);
            CHECK(cfg.seed == 7);
            CHECK(cfg.windows.d_corr_h_m == 0.2);
            CHECK(cfg.rss_mode == RssMode::first_antenna);
            CHECK(cfg.outputs.size() == 5);
            CHECK(cfg.profile.name == "umi_street_canyon");
        }

        SUBCASE("carrier frequency override applies to the profile")
        {
            nlohmann::json j = minimal_config_json();
            j["carrier_frequency_hz"] = 2.6e9;
            CHECK(config_from_json(j).profile.carrier_frequency_hz == 2.6e9);
        }

        SUBCASE("inline scenario object")
        {
            nlohmann::json j = minimal_config_json();
            j["scenario"] = profile_to_json(builtin_profile("indoor_office"));
            CHECK(config_from_json(j).profile.name == "indoor_office");
        }

        SUBCASE("rejections")
        {
            nlohmann::json j = minimal_config_json();
            j.erase("mts");
            CHECK_THROWS_AS(config_from_json(j), config_error);

            j = minimal_config_json();
            j["seed"] = -3;
            CHECK_THROWS_AS(config_from_json(j), config_error);

            j = minimal_config_json();
            j["outputs"] = {"channel", "bogus"};
            CHECK_THROWS_AS(config_from_json(j), config_error);

            j = minimal_config_json();
            j["mts"][0]["antennas"][0][1] = 25.0; // behind the wall
            CHECK_THROWS_AS(config_from_json(j), config_error);

            j = minimal_config_json();
            j["mts"].push_back({{"antennas", {{0.1, -25.0, 1.5}}}}); // 1 antenna vs 2
            CHECK_THROWS_AS(config_from_json(j), config_error);

            j = minimal_config_json();
            j["objects"] = {{{"type", "pyramid"}}};
            CHECK_THROWS_AS(config_from_json(j), config_error);

            j = minimal_config_json();
            j["scenario"] = "not_a_profile_or_file";
            CHECK_THROWS_AS(config_from_json(j), config_error);
        }
    }

    TEST_CASE("per-antenna blockage flag unions the per-antenna shadows")
    {
        SimulationConfig cfg = scene_with_sphere(61);
        // Spread the antennas of MT 0 so the two viewpoints disagree.
        cfg.mts[0] = MtGeometry({Point3{-1.5, -12.0, 1.5}, Point3{2.0, -12.0, 1.5}});
        cfg.objects[0].center = {0.3, -6.0, 1.3};
        cfg.objects[0].radius_m = 0.2;
        cfg.per_antenna_blockage = true;

        const ChannelRealization r = generate(cfg);
        const MtRealization &mt = r.per_mt[0];
        REQUIRE(mt.pre_sensing.has_value());

        // Contract: the mask is the union of single-antenna masks.
        const std::vector<SensingObject> objects = materialize_objects(cfg);
        BlockageMask expected;
        expected.blocked.assign(cfg.array.n_elements(), 0);
        for (std::size_t k = 0; k < cfg.mts[0].n_antennas(); ++k)
        {
            const MtGeometry single({cfg.mts[0].antennas()[k]});
            const BlockageMask part =
                blockage_mask(objects, single, cfg.array, mt.pre_sensing->state);
            for (std::size_t m = 0; m < cfg.array.n_elements(); ++m)
                expected.blocked[m] |= part.blocked[m];
        }
        CHECK(mt.mask.blocked == expected.blocked);

        // Masked elements may only come from pre-sensing LoS links.
        for (std::size_t m = 0; m < cfg.array.n_elements(); ++m)
            if (mt.mask.at(m))
                CHECK(mt.pre_sensing->state[m] == LinkState::los);
    }

    TEST_CASE("per-antenna RSS mode writes one map per antenna")
    {
        namespace fs = std::filesystem;
        const std::string dir = "test_rss_tmp";
        fs::remove_all(dir);

        nlohmann::json j = minimal_config_json();
        j["rss_mode"] = "per_antenna";
        j["outputs"] = {"rss"};
        const SimulationConfig cfg = config_from_json(j);
        const ChannelRealization r = generate(cfg);
        write_outputs(r, cfg, j, dir);

        CHECK(fs::exists(fs::path(dir) / "rss_0_a0.csv"));
        CHECK(fs::exists(fs::path(dir) / "rss_0_a1.csv"));
        CHECK_FALSE(fs::exists(fs::path(dir) / "rss_0.csv"));
        fs::remove_all(dir);
    }

    TEST_CASE("channel binary round trip is bit exact")
    {
        namespace fs = std::filesystem;
        const ChannelRealization r = generate(scene_with_sphere(55));
        const std::string path = "test_channel_tmp.bin";

        write_channel_binary(path, r);
        const ChannelFile file = read_channel_binary(path);
        CHECK(file.version == 1);
        CHECK(file.n_mts == r.per_mt.size());
        CHECK(file.n_rows == r.array.n_rows());
        CHECK(file.n_cols == r.array.n_cols());
        CHECK(file.n_mt_antennas == r.per_mt[0].n_antennas());
        for (std::size_t i = 0; i < r.per_mt.size(); ++i)
            CHECK(file.h[i] == r.per_mt[i].h.data());

        // Header bytes are pinned: magic + five little-endian u32 fields.
        std::ifstream in(path, std::ios::binary);
        char head[28];
        in.read(head, 28);
        CHECK(std::string(head, 8) == "ELAACH01");
        const auto u32at = [&](int off) {
            return static_cast<unsigned>(static_cast<unsigned char>(head[off])) |
                   static_cast<unsigned>(static_cast<unsigned char>(head[off + 1])) << 8 |
                   static_cast<unsigned>(static_cast<unsigned char>(head[off + 2])) << 16 |
                   static_cast<unsigned>(static_cast<unsigned char>(head[off + 3])) << 24;
        };
        CHECK(u32at(8) == 1u);
        CHECK(u32at(12) == r.per_mt.size());
        CHECK(u32at(16) == r.array.n_rows());
        CHECK(u32at(20) == r.array.n_cols());
        CHECK(u32at(24) == r.per_mt[0].n_antennas());
        in.close();
        fs::remove(path);

        CHECK_THROWS_AS(read_channel_binary("missing_channel.bin"), io_error);
    }

    TEST_CASE("write_outputs emits the selected files plus a manifest")
    {
        namespace fs = std::filesystem;
        const std::string dir = "test_outputs_tmp";
        fs::remove_all(dir);

        nlohmann::json j = minimal_config_json();
        j["objects"] = {{{"type", "sphere"}, {"center", {0.1, -8.0, 1.1}}, {"radius_m", 0.15}}};
        const SimulationConfig cfg = config_from_json(j);
        const ChannelRealization r = generate(cfg);
        const auto files = write_outputs(r, cfg, j, dir);

        for (const std::string name : {"channel.bin", "channel_pre.bin", "states_0.csv",
                                       "states_pre_0.csv", "windows_0.csv", "mask_0.csv", "rss_0.csv",
                                       "manifest.json"})
            CHECK(fs::exists(fs::path(dir) / name));

        // states CSV: header + one line per element.
        std::ifstream states(fs::path(dir) / "states_0.csv");
        std::string line;
        std::size_t lines = 0;
        while (std::getline(states, line))
            ++lines;
        CHECK(lines == 1 + cfg.array.n_elements());

        // Manifest carries the seed and lists every emitted file.
        std::ifstream mf(fs::path(dir) / "manifest.json");
        nlohmann::json manifest;
        mf >> manifest;
        CHECK(manifest.at("seed").get<std::uint64_t>() == cfg.seed);
        // The manifest lists the data files; the returned list appends
        // manifest.json itself as the final entry.
        CHECK(manifest.at("files").size() + 1 == files.size());
        CHECK(files.back() == "manifest.json");
        CHECK(manifest.contains("config_hash"));

        fs::remove_all(dir);
    }
}
