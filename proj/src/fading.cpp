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

#include "elaa/fading.hpp"

#include <cmath>
#include <stdexcept>

namespace elaa
{

namespace
{
constexpr double two_pi = 6.283185307179586476925286766559;
}

ShadowMap draw_shadow(const WindowPartition &partition, const ScenarioProfile &profile,
                      const RngStream &stream)
{
    const RngStream base = stream.child(StreamTag::shadow);
    ShadowMap map;
    map.window_sf_db.resize(partition.n_windows());
    for (std::size_t w = 0; w < partition.n_windows(); ++w)
    {
        const double sigma = shadow_sigma_db(profile, partition.windows[w].state);
        RngStream s = base.child(static_cast<std::uint64_t>(w));
        map.window_sf_db[w] = s.normal(0.0, sigma);
    }
    return map;
}

double draw_k_factor(const WindowRect &window, const ScenarioProfile &profile, RngStream stream)
{
    if (window.state != LinkState::los)
        throw std::logic_error("draw_k_factor: window is not in the LoS state");
    const auto [mu, sigma] = k_factor_params(profile);
    return stream.normal(mu, sigma);
}

std::complex<double> draw_small_scale(LinkState state, double k_linear, double d3, double wavelength,
                                      RngStream &stream)
{
    if (!(d3 > 0.0) || !(wavelength > 0.0))
        throw std::invalid_argument("draw_small_scale: distance and wavelength must be positive");

    if (state == LinkState::nlos)
        return stream.complex_normal();

    if (k_linear < 0.0 || std::isnan(k_linear))
        throw std::invalid_argument("draw_small_scale: K must be non-negative");

    const double phase = -two_pi * d3 / wavelength;
    if (std::isinf(k_linear))
        return std::polar(1.0, phase); // pure spherical-wave LoS limit

    const double los_amp = std::sqrt(k_linear / (k_linear + 1.0));
    const double diffuse_amp = std::sqrt(1.0 / (k_linear + 1.0));
    return los_amp * std::polar(1.0, phase) + diffuse_amp * stream.complex_normal();
}

std::complex<double> link_coefficient(double pl_db, double sf_db, std::complex<double> g)
{
    return db_to_amplitude(-(pl_db - sf_db)) * g;
}

} // namespace elaa
