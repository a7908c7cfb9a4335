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
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "elaa/geometry.hpp"
#include "elaa/scenario.hpp"
#include "elaa/windows.hpp"

namespace elaa
{

enum class OutputKind
{
    channel,
    states,
    rss,
    windows,
    mask,
};

// How the per-element RSS map aggregates over the MT's antennas.
enum class RssMode
{
    first_antenna,
    mean,
    per_antenna,
};

struct ObjectSpec
{
    enum class Type
    {
        sphere,
        box,
        points,
    };

    Type type = Type::sphere;
    std::string label;
    Point3 center{};
    double radius_m = 0.0;        // sphere
    Point3 extents_m{};           // box
    std::size_t n_points = 2000;  // sphere / box sampling density
    std::vector<Point3> points;   // explicit point list
};

// A fully validated simulation description. The generator is a pure
// function of this struct; `seed` is always explicit.
struct SimulationConfig
{
    ScenarioProfile profile;
    ArrayGeometry array{1, 1, 0.5, {}, {1.0, 0.0, 0.0}, {0.0, 0.0, 1.0}};
    std::vector<MtGeometry> mts;
    WindowConfig windows;
    std::vector<ObjectSpec> objects;
    std::uint64_t seed = 0;
    std::vector<OutputKind> outputs{OutputKind::channel, OutputKind::states, OutputKind::rss,
                                    OutputKind::windows, OutputKind::mask};
    RssMode rss_mode = RssMode::first_antenna;
    bool per_antenna_blockage = false;
};

// Parse and validate; throws config_error with a field-level message.
SimulationConfig config_from_json(const nlohmann::json &j);
SimulationConfig load_config(const std::string &path);

// 64-bit FNV-1a over the canonical (sorted-key) serialization; recorded in
// output manifests so artifacts can be traced to their configuration.
std::uint64_t config_hash(const nlohmann::json &j);

const char *to_string(OutputKind k);

} // namespace elaa
