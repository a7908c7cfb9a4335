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

#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace elaa
{

enum class LinkState : std::uint8_t
{
    los = 0,
    nlos = 1,
};

const char *to_string(LinkState s);

// Distance-dependent LoS-probability curve. Coefficients are data, not code:
// the shipped profiles transcribe TR 38.901 Table 7.4.2-1.
struct LosProbabilityParams
{
    enum class Model
    {
        // 1 below cutoff, then cutoff/d + exp(-d/decay) * (1 - cutoff/d).
        street_canyon,
        // 1 below cutoff; exp(-(d-cutoff)/decay) up to the knee;
        // knee_scale * exp(-(d-knee)/knee_decay) beyond.
        office,
        // p == constant_p everywhere (test and degenerate profiles).
        constant,
    };

    Model model = Model::street_canyon;
    double cutoff_m = 18.0;
    double decay_m = 36.0;
    double knee_m = 0.0;
    double knee_scale = 0.0;
    double knee_decay_m = 1.0;
    double constant_p = 1.0;
};

// LoS pathloss: intercept + slope1 * log10(d3) + freq_slope * log10(f_GHz)
// below the breakpoint; the second slope with the breakpoint correction term
// above it. single_slope pins the curve to slope 1 (adequate when the
// deployment never reaches the breakpoint).
struct PathlossLosParams
{
    double intercept_db = 32.4;
    double distance_slope = 21.0;
    double distance_slope_2 = 40.0;
    double frequency_slope = 20.0;
    double breakpoint_correction = 9.5;
    double effective_env_height_m = 1.0;
    bool single_slope = false;
};

// NLoS pathloss before the max() with LoS:
// intercept + slope * log10(d3) + freq_slope * log10(f_GHz)
//           + ut_height_slope * (h_UT - ut_height_ref).
struct PathlossNlosParams
{
    double intercept_db = 22.4;
    double distance_slope = 35.3;
    double frequency_slope = 21.3;
    double ut_height_slope = -0.3;
    double ut_height_ref_m = 1.5;
};

// A propagation scenario: LoS probability, pathloss, shadow-fading sigma and
// Rician-K parameterizations plus default link heights. Immutable after
// load; all query functions are pure.
struct ScenarioProfile
{
    std::string name = "custom";
    double carrier_frequency_hz = 3.5e9;
    double bs_height_m = 10.0;
    double ut_height_m = 1.5;
    LosProbabilityParams los_prob;
    PathlossLosParams pl_los;
    PathlossNlosParams pl_nlos;
    double sf_sigma_los_db = 4.0;
    double sf_sigma_nlos_db = 7.82;
    double k_factor_mu_db = 9.0;
    double k_factor_sigma_db = 5.0;

    double wavelength() const;

    // Throws config_error on out-of-range values.
    void validate() const;
};

// Names accepted by builtin_profile(): "umi_street_canyon", "indoor_office".
bool is_builtin_profile(const std::string &name);
ScenarioProfile builtin_profile(const std::string &name);
std::vector<std::string> builtin_profile_names();

// JSON (de)serialization. An object naming a builtin starts from that
// builtin's defaults and applies any remaining fields as overrides; a
// "custom" object must be fully specified.
ScenarioProfile profile_from_json(const nlohmann::json &j);
nlohmann::json profile_to_json(const ScenarioProfile &profile);
ScenarioProfile load_profile(const std::string &path);

// LoS probability at horizontal distance d2 (meters, clamped at 1 m).
// Result lies in [0, 1]. Throws std::invalid_argument for negative d2.
double los_probability(const ScenarioProfile &profile, double d2);

// Pathloss in dB (positive attenuation) at 3D distance d3 / horizontal
// distance d2, both clamped at 1 m. The NLoS curve is lower-bounded by the
// LoS curve, so NLoS >= LoS at every distance. The two-argument height
// overload serves per-link heights; the short form uses profile defaults.
double pathloss_db(const ScenarioProfile &profile, LinkState state, double d3, double d2, double h_bs,
                   double h_ut);
double pathloss_db(const ScenarioProfile &profile, LinkState state, double d3, double d2);

// LoS/NLoS breakpoint distance for the dual-slope LoS curve.
double breakpoint_distance(const ScenarioProfile &profile, double h_bs, double h_ut);

double shadow_sigma_db(const ScenarioProfile &profile, LinkState state);

// (mu, sigma) of the log-normal Rician K-factor, in dB.
std::pair<double, double> k_factor_params(const ScenarioProfile &profile);

} // namespace elaa
