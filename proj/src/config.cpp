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

#include "elaa/config.hpp"

#include <filesystem>
#include <fstream>

#include "elaa/errors.hpp"

namespace elaa
{

namespace
{

Point3 point_from_json(const nlohmann::json &j, const char *what)
{
    if (!j.is_array() || j.size() != 3 || !j[0].is_number() || !j[1].is_number() || !j[2].is_number())
        throw config_error(std::string("config: ") + what + " must be a [x, y, z] number triple");
    Point3 p{j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
    if (!is_finite(p))
        throw config_error(std::string("config: ") + what + " must be finite");
    return p;
}

ScenarioProfile scenario_from_json(const nlohmann::json &j)
{
    if (j.is_string())
    {
        const std::string s = j.get<std::string>();
        if (is_builtin_profile(s))
            return builtin_profile(s);
        if (std::filesystem::exists(s))
            return load_profile(s);
        throw config_error("config: scenario '" + s + "' is neither a builtin profile nor a readable file");
    }
    if (j.is_object())
        return profile_from_json(j);
    throw config_error("config: scenario must be a name, a file path, or a profile object");
}

ArrayGeometry array_from_json(const nlohmann::json &j)
{
    if (!j.is_object())
        throw config_error("config: array must be an object");
    for (const char *key : {"rows", "cols", "spacing_m"})
        if (!j.contains(key))
            throw config_error(std::string("config: array.") + key + " is required");

    const auto rows = j.at("rows").get<std::int64_t>();
    const auto cols = j.at("cols").get<std::int64_t>();
    if (rows < 1 || cols < 1)
        throw config_error("config: array dimensions must be at least 1 x 1");
    const double spacing = j.at("spacing_m").get<double>();

    const Point3 origin = j.contains("origin") ? point_from_json(j.at("origin"), "array.origin") : Point3{};
    const Point3 h_axis =
        j.contains("h_axis") ? point_from_json(j.at("h_axis"), "array.h_axis") : Point3{1.0, 0.0, 0.0};
    const Point3 v_axis =
        j.contains("v_axis") ? point_from_json(j.at("v_axis"), "array.v_axis") : Point3{0.0, 0.0, 1.0};

    try
    {
        return ArrayGeometry(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols), spacing, origin,
                             h_axis, v_axis);
    }
    catch (const std::invalid_argument &e)
    {
        throw config_error(std::string("config: array: ") + e.what());
    }
}

std::vector<MtGeometry> mts_from_json(const nlohmann::json &j)
{
    if (!j.is_array() || j.empty())
        throw config_error("config: mts must be a non-empty array");

    std::vector<MtGeometry> mts;
    std::size_t n_ant = 0;
    for (const auto &mj : j)
    {
        if (!mj.is_object() || !mj.contains("antennas") || !mj.at("antennas").is_array() ||
            mj.at("antennas").empty())
            throw config_error("config: each MT needs a non-empty 'antennas' position list");
        std::vector<Point3> ants;
        for (const auto &aj : mj.at("antennas"))
            ants.push_back(point_from_json(aj, "MT antenna"));
        if (n_ant == 0)
            n_ant = ants.size();
        else if (ants.size() != n_ant)
            throw config_error("config: all MTs must have the same antenna count (channel file format)");
        try
        {
            mts.emplace_back(std::move(ants));
        }
        catch (const std::invalid_argument &e)
        {
            throw config_error(std::string("config: MT: ") + e.what());
        }
    }
    return mts;
}

ObjectSpec object_from_json(const nlohmann::json &j)
{
    if (!j.is_object() || !j.contains("type"))
        throw config_error("config: each object needs a 'type'");

    ObjectSpec spec;
    spec.label = j.value("label", std::string{});
    const std::string type = j.at("type").get<std::string>();
    if (type == "sphere")
    {
        spec.type = ObjectSpec::Type::sphere;
        spec.center = point_from_json(j.at("center"), "object.center");
        spec.radius_m = j.at("radius_m").get<double>();
        if (!(spec.radius_m > 0.0))
            throw config_error("config: sphere radius must be positive");
        spec.n_points = j.value("points", std::size_t{2000});
    }
    else if (type == "box")
    {
        spec.type = ObjectSpec::Type::box;
        spec.center = point_from_json(j.at("center"), "object.center");
        spec.extents_m = point_from_json(j.at("extents_m"), "object.extents_m");
        if (!(spec.extents_m.x > 0.0) || !(spec.extents_m.y > 0.0) || !(spec.extents_m.z > 0.0))
            throw config_error("config: box extents must be positive");
        spec.n_points = j.value("points", std::size_t{2000});
    }
    else if (type == "points")
    {
        spec.type = ObjectSpec::Type::points;
        if (!j.contains("points") || !j.at("points").is_array() || j.at("points").empty())
            throw config_error("config: points object needs a non-empty 'points' list");
        for (const auto &pj : j.at("points"))
            spec.points.push_back(point_from_json(pj, "object point"));
    }
    else
    {
        throw config_error("config: unknown object type '" + type + "'");
    }
    if (spec.type != ObjectSpec::Type::points && spec.n_points < 4)
        throw config_error("config: object point count must be at least 4");
    return spec;
}

OutputKind output_from_string(const std::string &s)
{
    if (s == "channel")
        return OutputKind::channel;
    if (s == "states")
        return OutputKind::states;
    if (s == "rss")
        return OutputKind::rss;
    if (s == "windows")
        return OutputKind::windows;
    if (s == "mask")
        return OutputKind::mask;
    throw config_error("config: unknown output '" + s + "'");
}

} // namespace

const char *to_string(OutputKind k)
{
    switch (k)
    {
    case OutputKind::channel:
        return "channel";
    case OutputKind::states:
        return "states";
    case OutputKind::rss:
        return "rss";
    case OutputKind::windows:
        return "windows";
    case OutputKind::mask:
        return "mask";
    }
    return "?";
}

SimulationConfig config_from_json(const nlohmann::json &j)
{
    if (!j.is_object())
        throw config_error("config: expected a JSON object");
    for (const char *key : {"scenario", "array", "mts", "seed"})
        if (!j.contains(key))
            throw config_error(std::string("config: '") + key + "' is required");

    SimulationConfig cfg;
    cfg.profile = scenario_from_json(j.at("scenario"));
    if (j.contains("carrier_frequency_hz"))
    {
        cfg.profile.carrier_frequency_hz = j.at("carrier_frequency_hz").get<double>();
        cfg.profile.validate();
    }

    cfg.array = array_from_json(j.at("array"));
    cfg.mts = mts_from_json(j.at("mts"));
    for (const MtGeometry &mt : cfg.mts)
    {
        try
        {
            require_front_side(cfg.array, mt);
        }
        catch (const std::invalid_argument &e)
        {
            throw config_error(std::string("config: ") + e.what());
        }
    }

    if (j.contains("windows"))
    {
        const auto &wj = j.at("windows");
        cfg.windows.d_corr_h_m = wj.value("d_corr_h_m", cfg.windows.d_corr_h_m);
        cfg.windows.d_corr_v_m = wj.value("d_corr_v_m", cfg.windows.d_corr_v_m);
    }
    cfg.windows.validate();

    if (j.contains("objects"))
    {
        if (!j.at("objects").is_array())
            throw config_error("config: objects must be an array");
        for (const auto &oj : j.at("objects"))
            cfg.objects.push_back(object_from_json(oj));
    }

    if (!j.at("seed").is_number_unsigned() && !j.at("seed").is_number_integer())
        throw config_error("config: seed must be an unsigned integer");
    if (j.at("seed").is_number_integer() && j.at("seed").get<std::int64_t>() < 0)
        throw config_error("config: seed must be non-negative");
    cfg.seed = j.at("seed").get<std::uint64_t>();

    if (j.contains("outputs"))
    {
        if (!j.at("outputs").is_array())
            throw config_error("config: outputs must be an array of names");
        cfg.outputs.clear();
        for (const auto &oj : j.at("outputs"))
            cfg.outputs.push_back(output_from_string(oj.get<std::string>()));
    }

    if (j.contains("rss_mode"))
    {
        const std::string mode = j.at("rss_mode").get<std::string>();
        if (mode == "first_antenna")
            cfg.rss_mode = RssMode::first_antenna;
        else if (mode == "mean")
            cfg.rss_mode = RssMode::mean;
        else if (mode == "per_antenna")
            cfg.rss_mode = RssMode::per_antenna;
        else
            throw config_error("config: unknown rss_mode '" + mode + "'");
    }

    cfg.per_antenna_blockage = j.value("per_antenna_blockage", false);
    return cfg;
}

SimulationConfig load_config(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw io_error("cannot open config file '" + path + "'");
    nlohmann::json j;
    try
    {
        in >> j;
    }
    catch (const nlohmann::json::exception &e)
    {
        throw config_error("config '" + path + "': " + e.what());
    }
    return config_from_json(j);
}

std::uint64_t config_hash(const nlohmann::json &j)
{
    const std::string text = j.dump();
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (const char ch : text)
    {
        h ^= static_cast<unsigned char>(ch);
        h *= 0x100000001b3ull;
    }
    return h;
}

} // namespace elaa
