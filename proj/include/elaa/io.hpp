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
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "elaa/channel.hpp"
#include "elaa/config.hpp"
#include "elaa/engine.hpp"

namespace elaa
{

// Channel binary layout (little-endian, bit-exact):
//   magic "ELAACH01" (8 ASCII bytes)
//   u32: version (= 1), n_mts, n_rows, n_cols, n_mt_antennas
//   per MT, row-major over the flat element index, per antenna:
//     f64 real, f64 imag
struct ChannelFile
{
    std::uint32_t version = 1;
    std::uint32_t n_mts = 0;
    std::uint32_t n_rows = 0;
    std::uint32_t n_cols = 0;
    std::uint32_t n_mt_antennas = 0;
    // [mt][element * n_mt_antennas + antenna]
    std::vector<std::vector<std::complex<double>>> h;
};

// `pre_sensing` selects the snapshot coefficients instead of the final ones.
void write_channel_binary(const std::string &path, const ChannelRealization &realization,
                          bool pre_sensing = false);
ChannelFile read_channel_binary(const std::string &path);

void write_states_csv(const std::string &path, const MtRealization &mt);
void write_states_csv_pre(const std::string &path, const MtRealization &mt);
void write_windows_csv(const std::string &path, const MtRealization &mt);
void write_mask_csv(const std::string &path, const MtRealization &mt);
void write_rss_csv(const std::string &path, const RssMap &map);

// Emit the selected artifacts into out_dir and finish with manifest.json
// (config hash, seed, file list). The manifest is written only after every
// other file has been flushed, so a partial run never looks complete.
// Returns the list of files written (manifest last).
std::vector<std::string> write_outputs(const ChannelRealization &realization, const SimulationConfig &config,
                                       const nlohmann::json &config_json, const std::string &out_dir);

} // namespace elaa
