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
#include <fstream>

#include "elaa/errors.hpp"
#include "elaa/scenario.hpp"

using namespace elaa;

namespace
{
// Expected values computed from the curve definitions, written out
// independently of the implementation.
const double umi_p_at_36 = 0.5 + std::exp(-1.0) * 0.5; // 0.6839397205857212

ScenarioProfile umi() { return builtin_profile("umi_street_canyon"); }
} // namespace

TEST_SUITE("scenario")
{
    TEST_CASE("street-canyon LoS probability")
    {
        const ScenarioProfile p = umi();
        CHECK(los_probability(p, 18.0) == 1.0);
        CHECK(los_probability(p, 0.0) == 1.0);
        CHECK(los_probability(p, 36.0) == doctest::Approx(umi_p_at_36).epsilon(1e-14));
        CHECK(los_probability(p, 36.0) == doctest::Approx(0.68394).epsilon(1e-4));
        CHECK_THROWS_AS(los_probability(p, -1.0), std::invalid_argument);
    }

    TEST_CASE("office LoS probability piecewise curve")
    {
        const ScenarioProfile p = builtin_profile("indoor_office");
        CHECK(los_probability(p, 5.0) == 1.0);
        CHECK(los_probability(p, 1.0) == 1.0);
        CHECK(los_probability(p, 20.0) == doctest::Approx(std::exp(-15.0 / 70.8)).epsilon(1e-14));
        CHECK(los_probability(p, 60.0) ==
              doctest::Approx(0.54 * std::exp(-11.0 / 211.7)).epsilon(1e-14));
    }

    TEST_CASE("LoS probability is monotone non-increasing and within [0,1]")
    {
        // The office curve carries the standard's small upward step at the
        // knee (exp(-44/70.8) = 0.5372 vs 0.54), so the check allows that
        // 3e-3 seam; the street-canyon curve must be strictly monotone.
        for (const std::string name : {"umi_street_canyon", "indoor_office"})
        {
            const ScenarioProfile p = builtin_profile(name);
            const double seam = name == "indoor_office" ? 3e-3 : 1e-12;
            double prev = 1.0;
            for (double d = 0.0; d <= 500.0; d += 0.25)
            {
                const double v = los_probability(p, d);
                CHECK(v >= 0.0);
                CHECK(v <= 1.0);
                CHECK(v <= prev + seam);
                prev = v;
            }
        }
    }

    TEST_CASE("LoS pathloss intercept at 1 m / 1 GHz")
    {
        ScenarioProfile p = umi();
        p.carrier_frequency_hz = 1e9;
        CHECK(pathloss_db(p, LinkState::los, 1.0, 1.0) == doctest::Approx(32.4).epsilon(1e-14));
    }

    TEST_CASE("street-canyon pathloss values at 100 m, 3.5 GHz")
    {
        const ScenarioProfile p = umi();
        const double expected_los = 32.4 + 21.0 * 2.0 + 20.0 * std::log10(3.5);
        const double expected_nlos =
            std::max(expected_los, 22.4 + 35.3 * 2.0 + 21.3 * std::log10(3.5) - 0.3 * (1.5 - 1.5));
        CHECK(pathloss_db(p, LinkState::los, 100.0, 100.0) ==
              doctest::Approx(expected_los).epsilon(1e-12));
        CHECK(pathloss_db(p, LinkState::nlos, 100.0, 100.0) ==
              doctest::Approx(expected_nlos).epsilon(1e-12));
        CHECK(expected_los == doctest::Approx(85.28).epsilon(1e-4));
        CHECK(expected_nlos == doctest::Approx(104.59).epsilon(1e-4));
    }

    TEST_CASE("dual-slope curve beyond the breakpoint")
    {
        const ScenarioProfile p = umi();
        const double dbp = breakpoint_distance(p, p.bs_height_m, p.ut_height_m);
        const double dbp_expect = 4.0 * (10.0 - 1.0) * (1.5 - 1.0) * 3.5e9 / 299792458.0;
        CHECK(dbp == doctest::Approx(dbp_expect).epsilon(1e-12));

        const double d = 300.0;
        REQUIRE(d > dbp);
        const double expected = 32.4 + 40.0 * std::log10(d) + 20.0 * std::log10(3.5) -
                                9.5 * std::log10(dbp * dbp + (10.0 - 1.5) * (10.0 - 1.5));
        CHECK(pathloss_db(p, LinkState::los, d, d) == doctest::Approx(expected).epsilon(1e-12));
    }

    TEST_CASE("NLoS dominates LoS at every distance")
    {
        const ScenarioProfile p = umi();
        for (double d = 1.0; d <= 500.0; d += 0.5)
            CHECK(pathloss_db(p, LinkState::nlos, d, d) >= pathloss_db(p, LinkState::los, d, d) - 1e-12);
    }

    TEST_CASE("pathloss is non-decreasing in distance")
    {
        // Single-slope curves monotone to machine precision; the dual-slope
        // street-canyon curve has the standard's ~0.007 dB step at the
        // breakpoint, hence the small allowance.
        const ScenarioProfile office = builtin_profile("indoor_office");
        const ScenarioProfile p = umi();
        double prev_office = 0.0, prev_umi = 0.0;
        for (double d = 1.0; d <= 500.0; d += 0.1)
        {
            const double lo = pathloss_db(office, LinkState::los, d, d);
            const double lu = pathloss_db(p, LinkState::los, d, d);
            if (d > 1.0)
            {
                CHECK(lo >= prev_office - 1e-12);
                CHECK(lu >= prev_umi - 0.01);
            }
            prev_office = lo;
            prev_umi = lu;
        }
    }

    TEST_CASE("distances below 1 m clamp to the 1 m floor")
    {
        const ScenarioProfile p = umi();
        CHECK(pathloss_db(p, LinkState::los, 0.2, 0.2) == pathloss_db(p, LinkState::los, 1.0, 1.0));
        CHECK(los_probability(p, 0.5) == los_probability(p, 1.0));
    }

    TEST_CASE("shadow sigma per state")
    {
        const ScenarioProfile p = umi();
        CHECK(shadow_sigma_db(p, LinkState::los) == 4.0);
        CHECK(shadow_sigma_db(p, LinkState::nlos) == 7.82);

        ScenarioProfile even = p;
        even.sf_sigma_los_db = even.sf_sigma_nlos_db = 5.5;
        CHECK(shadow_sigma_db(even, LinkState::los) == shadow_sigma_db(even, LinkState::nlos));
    }

    TEST_CASE("K-factor parameters")
    {
        CHECK(k_factor_params(umi()) == std::pair{9.0, 5.0});
        ScenarioProfile degenerate = umi();
        degenerate.k_factor_mu_db = 0.0;
        degenerate.k_factor_sigma_db = 0.0;
        CHECK(k_factor_params(degenerate) == std::pair{0.0, 0.0});
    }

    TEST_CASE("per-link height overload changes the NLoS height correction")
    {
        const ScenarioProfile p = umi();
        const double lo = pathloss_db(p, LinkState::nlos, 200.0, 200.0, 10.0, 1.5);
        const double hi = pathloss_db(p, LinkState::nlos, 200.0, 200.0, 10.0, 2.5);
        CHECK(lo - hi == doctest::Approx(0.3).epsilon(1e-9)); // -0.3 dB per meter of UT height
    }

    TEST_CASE("profile JSON round trip reproduces all fields")
    {
        for (const std::string name : {"umi_street_canyon", "indoor_office"})
        {
            const ScenarioProfile p = builtin_profile(name);
            const ScenarioProfile q = profile_from_json(profile_to_json(p));
            CHECK(p.name == q.name);
            CHECK(p.carrier_frequency_hz == q.carrier_frequency_hz);
            CHECK(p.bs_height_m == q.bs_height_m);
            CHECK(p.ut_height_m == q.ut_height_m);
            CHECK(p.sf_sigma_los_db == q.sf_sigma_los_db);
            CHECK(p.sf_sigma_nlos_db == q.sf_sigma_nlos_db);
            CHECK(p.k_factor_mu_db == q.k_factor_mu_db);
            CHECK(p.k_factor_sigma_db == q.k_factor_sigma_db);
            CHECK(p.los_prob.model == q.los_prob.model);
            CHECK(p.los_prob.cutoff_m == q.los_prob.cutoff_m);
            CHECK(p.los_prob.decay_m == q.los_prob.decay_m);
            CHECK(p.pl_los.intercept_db == q.pl_los.intercept_db);
            CHECK(p.pl_los.distance_slope == q.pl_los.distance_slope);
            CHECK(p.pl_los.single_slope == q.pl_los.single_slope);
            CHECK(p.pl_nlos.intercept_db == q.pl_nlos.intercept_db);
            CHECK(p.pl_nlos.distance_slope == q.pl_nlos.distance_slope);
            CHECK(p.pl_nlos.frequency_slope == q.pl_nlos.frequency_slope);
        }
    }

    TEST_CASE("builtin name with overrides")
    {
        nlohmann::json j;
        j["name"] = "umi_street_canyon";
        j["sf_sigma_nlos_db"] = 8.2;
        const ScenarioProfile p = profile_from_json(j);
        CHECK(p.sf_sigma_nlos_db == 8.2);
        CHECK(p.sf_sigma_los_db == 4.0); // untouched default
        CHECK(p.los_prob.cutoff_m == 18.0);
    }

    TEST_CASE("load_profile reads files and rejects bad ones")
    {
        const std::string path = "test_profile_tmp.json";
        {
            std::ofstream out(path);
            out << R"({"name": "umi_street_canyon", "carrier_frequency_hz": 2.6e9})";
        }
        const ScenarioProfile p = load_profile(path);
        CHECK(p.carrier_frequency_hz == 2.6e9);
        std::remove(path.c_str());

        CHECK_THROWS_AS(load_profile("does_not_exist.json"), io_error);

        nlohmann::json bad = profile_to_json(builtin_profile("umi_street_canyon"));
        bad["carrier_frequency_hz"] = -1.0;
        CHECK_THROWS_AS(profile_from_json(bad), config_error);

        nlohmann::json incomplete;
        incomplete["name"] = "custom"; // custom with everything missing
        CHECK_THROWS_AS(profile_from_json(incomplete), config_error);

        CHECK_THROWS_AS(builtin_profile("uma"), config_error);
    }

    TEST_CASE("shipped profile files match the embedded defaults")
    {
        for (const std::string name : {"umi_street_canyon", "indoor_office"})
        {
            const std::string path = std::string(ELAA_SOURCE_DIR) + "/data/profiles/" + name + ".json";
            const ScenarioProfile from_file = load_profile(path);
            const ScenarioProfile embedded = builtin_profile(name);
            CHECK(profile_to_json(from_file) == profile_to_json(embedded));
        }
    }

    TEST_CASE("constant LoS-probability model")
    {
        ScenarioProfile p = umi();
        p.los_prob.model = LosProbabilityParams::Model::constant;
        p.los_prob.constant_p = 0.25;
        CHECK(los_probability(p, 5.0) == 0.25);
        CHECK(los_probability(p, 5000.0) == 0.25);

        p.los_prob.constant_p = 1.5;
        CHECK_THROWS_AS(p.validate(), config_error);
    }
}
