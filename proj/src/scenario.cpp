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

#include "elaa/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "elaa/errors.hpp"
#include "elaa/geometry.hpp"

namespace elaa
{

namespace
{

constexpr double speed_of_light = 299792458.0;

// Shipped scenario coefficients. These are data, mirrored verbatim in
// data/profiles/, and must be transcribed-and-verified against TR 38.901
// (Tables 7.4.1-1, 7.4.2-1, 7.5-6) before any release that touches them.
constexpr const char *umi_street_canyon_json = R"({
  "name": "umi_street_canyon",
  "carrier_frequency_hz": 3.5e9,
  "bs_height_m": 10.0,
  "ut_height_m": 1.5,
  "los_probability": { "model": "street_canyon", "cutoff_m": 18.0, "decay_m": 36.0 },
  "pathloss_los": {
    "intercept_db": 32.4,
    "distance_slope": 21.0,
    "distance_slope_2": 40.0,
    "frequency_slope": 20.0,
    "breakpoint_correction": 9.5,
    "effective_env_height_m": 1.0,
    "single_slope": false
  },
  "pathloss_nlos": {
    "intercept_db": 22.4,
    "distance_slope": 35.3,
    "frequency_slope": 21.3,
    "ut_height_slope": -0.3,
    "ut_height_ref_m": 1.5
  },
  "sf_sigma_los_db": 4.0,
  "sf_sigma_nlos_db": 7.82,
  "k_factor_mu_db": 9.0,
  "k_factor_sigma_db": 5.0
})";

constexpr const char *indoor_office_json = R"({
  "name": "indoor_office",
  "carrier_frequency_hz": 3.5e9,
  "bs_height_m": 3.0,
  "ut_height_m": 1.0,
  "los_probability": {
    "model": "office",
    "cutoff_m": 5.0,
    "decay_m": 70.8,
    "knee_m": 49.0,
    "knee_scale": 0.54,
    "knee_decay_m": 211.7
  },
  "pathloss_los": {
    "intercept_db": 32.4,
    "distance_slope": 17.3,
    "frequency_slope": 20.0,
    "single_slope": true
  },
  "pathloss_nlos": {
    "intercept_db": 17.3,
    "distance_slope": 38.3,
    "frequency_slope": 24.9,
    "ut_height_slope": 0.0,
    "ut_height_ref_m": 1.5
  },
  "sf_sigma_los_db": 3.0,
  "sf_sigma_nlos_db": 8.03,
  "k_factor_mu_db": 7.0,
  "k_factor_sigma_db": 4.0
})";

double require_number(const nlohmann::json &j, const char *key)
{
    if (!j.contains(key) || !j.at(key).is_number())
        throw config_error(std::string("profile: missing or non-numeric field '") + key + "'");
    return j.at(key).get<double>();
}

double number_or(const nlohmann::json &j, const char *key, double fallback)
{
    if (!j.contains(key))
        return fallback;
    if (!j.at(key).is_number())
        throw config_error(std::string("profile: field '") + key + "' must be numeric");
    return j.at(key).get<double>();
}

bool bool_or(const nlohmann::json &j, const char *key, bool fallback)
{
    if (!j.contains(key))
        return fallback;
    if (!j.at(key).is_boolean())
        throw config_error(std::string("profile: field '") + key + "' must be boolean");
    return j.at(key).get<bool>();
}

LosProbabilityParams los_params_from_json(const nlohmann::json &j, const LosProbabilityParams &base,
                                          bool require_all)
{
    LosProbabilityParams p = base;

    if (j.contains("model"))
    {
        const std::string model = j.at("model").get<std::string>();
        if (model == "street_canyon")
            p.model = LosProbabilityParams::Model::street_canyon;
        else if (model == "office")
            p.model = LosProbabilityParams::Model::office;
        else if (model == "constant")
            p.model = LosProbabilityParams::Model::constant;
        else
            throw config_error("profile: unknown LoS-probability model '" + model + "'");
    }
    else if (require_all)
    {
        throw config_error("profile: los_probability.model is required");
    }

    switch (p.model)
    {
    case LosProbabilityParams::Model::street_canyon:
        p.cutoff_m = require_all ? require_number(j, "cutoff_m") : number_or(j, "cutoff_m", p.cutoff_m);
        p.decay_m = require_all ? require_number(j, "decay_m") : number_or(j, "decay_m", p.decay_m);
        break;
    case LosProbabilityParams::Model::office:
        p.cutoff_m = require_all ? require_number(j, "cutoff_m") : number_or(j, "cutoff_m", p.cutoff_m);
        p.decay_m = require_all ? require_number(j, "decay_m") : number_or(j, "decay_m", p.decay_m);
        p.knee_m = require_all ? require_number(j, "knee_m") : number_or(j, "knee_m", p.knee_m);
        p.knee_scale =
            require_all ? require_number(j, "knee_scale") : number_or(j, "knee_scale", p.knee_scale);
        p.knee_decay_m =
            require_all ? require_number(j, "knee_decay_m") : number_or(j, "knee_decay_m", p.knee_decay_m);
        break;
    case LosProbabilityParams::Model::constant:
        p.constant_p = require_all ? require_number(j, "value") : number_or(j, "value", p.constant_p);
        break;
    }
    return p;
}

nlohmann::json los_params_to_json(const LosProbabilityParams &p)
{
    nlohmann::json j;
    switch (p.model)
    {
    case LosProbabilityParams::Model::street_canyon:
        j["model"] = "street_canyon";
        j["cutoff_m"] = p.cutoff_m;
        j["decay_m"] = p.decay_m;
        break;
    case LosProbabilityParams::Model::office:
        j["model"] = "office";
        j["cutoff_m"] = p.cutoff_m;
        j["decay_m"] = p.decay_m;
        j["knee_m"] = p.knee_m;
        j["knee_scale"] = p.knee_scale;
        j["knee_decay_m"] = p.knee_decay_m;
        break;
    case LosProbabilityParams::Model::constant:
        j["model"] = "constant";
        j["value"] = p.constant_p;
        break;
    }
    return j;
}

PathlossLosParams pl_los_from_json(const nlohmann::json &j, const PathlossLosParams &base, bool require_all)
{
    PathlossLosParams p = base;
    p.intercept_db =
        require_all ? require_number(j, "intercept_db") : number_or(j, "intercept_db", p.intercept_db);
    p.distance_slope =
        require_all ? require_number(j, "distance_slope") : number_or(j, "distance_slope", p.distance_slope);
    p.frequency_slope = require_all ? require_number(j, "frequency_slope")
                                    : number_or(j, "frequency_slope", p.frequency_slope);
    p.single_slope = bool_or(j, "single_slope", p.single_slope);
    p.distance_slope_2 = number_or(j, "distance_slope_2", p.distance_slope_2);
    p.breakpoint_correction = number_or(j, "breakpoint_correction", p.breakpoint_correction);
    p.effective_env_height_m = number_or(j, "effective_env_height_m", p.effective_env_height_m);
    return p;
}

nlohmann::json pl_los_to_json(const PathlossLosParams &p)
{
    nlohmann::json j;
    j["intercept_db"] = p.intercept_db;
    j["distance_slope"] = p.distance_slope;
    j["frequency_slope"] = p.frequency_slope;
    j["single_slope"] = p.single_slope;
    if (!p.single_slope)
    {
        j["distance_slope_2"] = p.distance_slope_2;
        j["breakpoint_correction"] = p.breakpoint_correction;
        j["effective_env_height_m"] = p.effective_env_height_m;
    }
    return j;
}

PathlossNlosParams pl_nlos_from_json(const nlohmann::json &j, const PathlossNlosParams &base,
                                     bool require_all)
{
    PathlossNlosParams p = base;
    p.intercept_db =
        require_all ? require_number(j, "intercept_db") : number_or(j, "intercept_db", p.intercept_db);
    p.distance_slope =
        require_all ? require_number(j, "distance_slope") : number_or(j, "distance_slope", p.distance_slope);
    p.frequency_slope = require_all ? require_number(j, "frequency_slope")
                                    : number_or(j, "frequency_slope", p.frequency_slope);
    p.ut_height_slope = number_or(j, "ut_height_slope", p.ut_height_slope);
    p.ut_height_ref_m = number_or(j, "ut_height_ref_m", p.ut_height_ref_m);
    return p;
}

nlohmann::json pl_nlos_to_json(const PathlossNlosParams &p)
{
    nlohmann::json j;
    j["intercept_db"] = p.intercept_db;
    j["distance_slope"] = p.distance_slope;
    j["frequency_slope"] = p.frequency_slope;
    j["ut_height_slope"] = p.ut_height_slope;
    j["ut_height_ref_m"] = p.ut_height_ref_m;
    return j;
}

} // namespace

const char *to_string(LinkState s) { return s == LinkState::los ? "LoS" : "NLoS"; }

double ScenarioProfile::wavelength() const { return speed_of_light / carrier_frequency_hz; }

void ScenarioProfile::validate() const
{
    if (!(carrier_frequency_hz > 0.0) || !std::isfinite(carrier_frequency_hz))
        throw config_error("profile: carrier frequency must be positive");
    if (!(sf_sigma_los_db >= 0.0) || !(sf_sigma_nlos_db >= 0.0))
        throw config_error("profile: shadow-fading sigmas must be non-negative");
    if (!(k_factor_sigma_db >= 0.0))
        throw config_error("profile: K-factor sigma must be non-negative");
    if (!std::isfinite(bs_height_m) || !std::isfinite(ut_height_m))
        throw config_error("profile: heights must be finite");
    if (los_prob.model == LosProbabilityParams::Model::constant &&
        (los_prob.constant_p < 0.0 || los_prob.constant_p > 1.0))
        throw config_error("profile: constant LoS probability must lie in [0, 1]");
    if (los_prob.model != LosProbabilityParams::Model::constant)
    {
        if (!(los_prob.cutoff_m >= 0.0) || !(los_prob.decay_m > 0.0))
            throw config_error("profile: LoS-probability cutoff/decay out of range");
    }
    if (los_prob.model == LosProbabilityParams::Model::office)
    {
        if (!(los_prob.knee_m >= los_prob.cutoff_m) || !(los_prob.knee_decay_m > 0.0) ||
            los_prob.knee_scale < 0.0 || los_prob.knee_scale > 1.0)
            throw config_error("profile: office LoS-probability knee parameters out of range");
    }
}

bool is_builtin_profile(const std::string &name)
{
    return name == "umi_street_canyon" || name == "indoor_office";
}

std::vector<std::string> builtin_profile_names() { return {"umi_street_canyon", "indoor_office"}; }

namespace
{

ScenarioProfile profile_from_json_impl(const nlohmann::json &j, ScenarioProfile base, bool require_all)
{
    ScenarioProfile p = std::move(base);

    p.carrier_frequency_hz = require_all ? require_number(j, "carrier_frequency_hz")
                                         : number_or(j, "carrier_frequency_hz", p.carrier_frequency_hz);
    p.bs_height_m =
        require_all ? require_number(j, "bs_height_m") : number_or(j, "bs_height_m", p.bs_height_m);
    p.ut_height_m =
        require_all ? require_number(j, "ut_height_m") : number_or(j, "ut_height_m", p.ut_height_m);
    p.sf_sigma_los_db = require_all ? require_number(j, "sf_sigma_los_db")
                                    : number_or(j, "sf_sigma_los_db", p.sf_sigma_los_db);
    p.sf_sigma_nlos_db = require_all ? require_number(j, "sf_sigma_nlos_db")
                                     : number_or(j, "sf_sigma_nlos_db", p.sf_sigma_nlos_db);
    p.k_factor_mu_db =
        require_all ? require_number(j, "k_factor_mu_db") : number_or(j, "k_factor_mu_db", p.k_factor_mu_db);
    p.k_factor_sigma_db = require_all ? require_number(j, "k_factor_sigma_db")
                                      : number_or(j, "k_factor_sigma_db", p.k_factor_sigma_db);

    if (require_all && (!j.contains("los_probability") || !j.contains("pathloss_los") ||
                        !j.contains("pathloss_nlos")))
        throw config_error("profile: custom profiles must specify los_probability, pathloss_los and "
                           "pathloss_nlos");

    if (j.contains("los_probability"))
        p.los_prob = los_params_from_json(j.at("los_probability"), p.los_prob, require_all);
    if (j.contains("pathloss_los"))
        p.pl_los = pl_los_from_json(j.at("pathloss_los"), p.pl_los, require_all);
    if (j.contains("pathloss_nlos"))
        p.pl_nlos = pl_nlos_from_json(j.at("pathloss_nlos"), p.pl_nlos, require_all);

    p.validate();
    return p;
}

} // namespace

ScenarioProfile builtin_profile(const std::string &name)
{
    const char *text = nullptr;
    if (name == "umi_street_canyon")
        text = umi_street_canyon_json;
    else if (name == "indoor_office")
        text = indoor_office_json;
    else
        throw config_error("unknown scenario profile '" + name + "'");

    ScenarioProfile p = profile_from_json_impl(nlohmann::json::parse(text), ScenarioProfile{}, true);
    p.name = name;
    return p;
}

ScenarioProfile profile_from_json(const nlohmann::json &j)
{
    if (!j.is_object())
        throw config_error("profile: expected a JSON object");

    const std::string name = j.value("name", std::string("custom"));

    ScenarioProfile p;
    if (is_builtin_profile(name))
        p = profile_from_json_impl(j, builtin_profile(name), false);
    else
        p = profile_from_json_impl(j, ScenarioProfile{}, true);
    p.name = name;
    return p;
}

ScenarioProfile load_profile(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw io_error("cannot open profile file '" + path + "'");
    nlohmann::json j;
    try
    {
        in >> j;
    }
    catch (const nlohmann::json::exception &e)
    {
        throw config_error("profile '" + path + "': " + e.what());
    }
    return profile_from_json(j);
}

nlohmann::json profile_to_json(const ScenarioProfile &p)
{
    nlohmann::json j;
    j["name"] = p.name;
    j["carrier_frequency_hz"] = p.carrier_frequency_hz;
    j["bs_height_m"] = p.bs_height_m;
    j["ut_height_m"] = p.ut_height_m;
    j["los_probability"] = los_params_to_json(p.los_prob);
    j["pathloss_los"] = pl_los_to_json(p.pl_los);
    j["pathloss_nlos"] = pl_nlos_to_json(p.pl_nlos);
    j["sf_sigma_los_db"] = p.sf_sigma_los_db;
    j["sf_sigma_nlos_db"] = p.sf_sigma_nlos_db;
    j["k_factor_mu_db"] = p.k_factor_mu_db;
    j["k_factor_sigma_db"] = p.k_factor_sigma_db;
    return j;
}

double los_probability(const ScenarioProfile &profile, double d2)
{
    if (d2 < 0.0 || !std::isfinite(d2))
        throw std::invalid_argument("los_probability: distance must be non-negative");

    const LosProbabilityParams &p = profile.los_prob;
    if (p.model == LosProbabilityParams::Model::constant)
        return p.constant_p;

    const double d = clamp_formula_distance(d2);
    if (d <= p.cutoff_m)
        return 1.0;

    if (p.model == LosProbabilityParams::Model::street_canyon)
    {
        const double ratio = p.cutoff_m / d;
        return ratio + std::exp(-d / p.decay_m) * (1.0 - ratio);
    }

    // office
    if (d <= p.knee_m)
        return std::exp(-(d - p.cutoff_m) / p.decay_m);
    return p.knee_scale * std::exp(-(d - p.knee_m) / p.knee_decay_m);
}

double breakpoint_distance(const ScenarioProfile &profile, double h_bs, double h_ut)
{
    const double env = profile.pl_los.effective_env_height_m;
    const double hb = std::max(h_bs - env, 0.0);
    const double hu = std::max(h_ut - env, 0.0);
    return 4.0 * hb * hu * profile.carrier_frequency_hz / speed_of_light;
}

double pathloss_db(const ScenarioProfile &profile, LinkState state, double d3, double d2, double h_bs,
                   double h_ut)
{
    const double d3c = clamp_formula_distance(d3);
    const double d2c = clamp_formula_distance(d2);
    const double log_f = std::log10(profile.carrier_frequency_hz / 1e9);

    const PathlossLosParams &L = profile.pl_los;
    bool first_slope = L.single_slope;
    double dbp = 0.0;
    if (!first_slope)
    {
        dbp = breakpoint_distance(profile, h_bs, h_ut);
        // A degenerate breakpoint (heights at or below the effective
        // environment height) keeps the curve on the first slope.
        first_slope = !(dbp > 0.0) || d2c <= dbp;
    }

    double pl_los;
    if (first_slope)
    {
        pl_los = L.intercept_db + L.distance_slope * std::log10(d3c) + L.frequency_slope * log_f;
    }
    else
    {
        const double dh = h_bs - h_ut;
        pl_los = L.intercept_db + L.distance_slope_2 * std::log10(d3c) + L.frequency_slope * log_f -
                 L.breakpoint_correction * std::log10(dbp * dbp + dh * dh);
    }

    if (state == LinkState::los)
        return pl_los;

    const PathlossNlosParams &N = profile.pl_nlos;
    const double pl_nlos = N.intercept_db + N.distance_slope * std::log10(d3c) + N.frequency_slope * log_f +
                           N.ut_height_slope * (h_ut - N.ut_height_ref_m);
    return std::max(pl_los, pl_nlos);
}

double pathloss_db(const ScenarioProfile &profile, LinkState state, double d3, double d2)
{
    return pathloss_db(profile, state, d3, d2, profile.bs_height_m, profile.ut_height_m);
}

double shadow_sigma_db(const ScenarioProfile &profile, LinkState state)
{
    return state == LinkState::los ? profile.sf_sigma_los_db : profile.sf_sigma_nlos_db;
}

std::pair<double, double> k_factor_params(const ScenarioProfile &profile)
{
    return {profile.k_factor_mu_db, profile.k_factor_sigma_db};
}

} // namespace elaa
