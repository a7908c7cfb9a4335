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

#include <complex>
#include <vector>

#include "elaa/rng.hpp"
#include "elaa/scenario.hpp"
#include "elaa/windows.hpp"

namespace elaa
{

// One shadow-fading draw per window, shared by all of the window's links.
struct ShadowMap
{
    std::vector<double> window_sf_db;
};

// Per-window zero-mean normal draws in dB with the state-dependent sigma.
// `stream` must be keyed by (seed, MT); window index keys the substream.
ShadowMap draw_shadow(const WindowPartition &partition, const ScenarioProfile &profile,
                      const RngStream &stream);

// Log-normal Rician K for one LoS window, in dB.
// Throws std::logic_error when called on an NLoS window.
double draw_k_factor(const WindowRect &window, const ScenarioProfile &profile, RngStream stream);

// Unit-power small-scale coefficient for one link. LoS combines the
// deterministic spherical-wave term exp(-i 2 pi d3 / lambda) at relative
// power K/(K+1) with a CN(0, 1/(K+1)) diffuse term; NLoS is pure Rayleigh.
// k_linear may be +infinity (pure LoS limit, no random draw).
std::complex<double> draw_small_scale(LinkState state, double k_linear, double d3, double wavelength,
                                      RngStream &stream);

// Compose large-scale attenuation with the small-scale coefficient:
// h = 10^(-(pl_db - sf_db)/20) * g. Shadow fading enters as a zero-mean dB
// gain perturbation.
std::complex<double> link_coefficient(double pl_db, double sf_db, std::complex<double> g);

inline double db_to_amplitude(double gain_db) { return std::pow(10.0, gain_db / 20.0); }
inline double db_to_power(double gain_db) { return std::pow(10.0, gain_db / 10.0); }

} // namespace elaa
