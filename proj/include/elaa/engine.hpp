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

#include <vector>

#include "elaa/channel.hpp"
#include "elaa/config.hpp"
#include "elaa/sensing.hpp"

namespace elaa
{

// Run the full pipeline (scenario -> distances -> windows -> states ->
// pathloss -> fading -> blockage -> regeneration) for every MT. Fully
// deterministic in (config, seed); per-MT channels use disjoint substreams
// and are statistically independent.
ChannelRealization generate(const SimulationConfig &config);

// Point clouds for the configured sensing objects, deterministic in the
// master seed and object index.
std::vector<SensingObject> materialize_objects(const SimulationConfig &config);

// |h|^2 per element in dB, normalized so the maximum element is exactly
// 0 dB. `antenna` selects the column for non-mean modes.
struct RssMap
{
    std::size_t n_rows = 0;
    std::size_t n_cols = 0;
    std::vector<double> rss_db;
};

// Throws std::invalid_argument on an all-zero (degenerate) channel.
RssMap rss_map(const MtRealization &mt, RssMode mode = RssMode::first_antenna, std::size_t antenna = 0);

} // namespace elaa
