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

#include "elaa/engine.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "elaa/errors.hpp"
#include "elaa/fading.hpp"

namespace elaa
{

std::vector<SensingObject> materialize_objects(const SimulationConfig &config)
{
    const RngStream base = RngStream(config.seed).child(StreamTag::object_cloud);
    std::vector<SensingObject> objects;
    objects.reserve(config.objects.size());
    for (std::size_t i = 0; i < config.objects.size(); ++i)
    {
        const ObjectSpec &spec = config.objects[i];
        switch (spec.type)
        {
        case ObjectSpec::Type::sphere:
            objects.push_back(make_sphere_cloud(spec.center, spec.radius_m, spec.n_points, base.child(i)));
            break;
        case ObjectSpec::Type::box:
            objects.push_back(make_box_cloud(spec.center, spec.extents_m, spec.n_points, base.child(i)));
            break;
        case ObjectSpec::Type::points:
            objects.push_back(SensingObject{spec.points, spec.label});
            break;
        }
        if (!spec.label.empty())
            objects.back().label = spec.label;
    }
    return objects;
}

namespace
{

MtRealization generate_mt(const SimulationConfig &config, const std::vector<SensingObject> &objects,
                          std::size_t mt_index, const RngStream &root)
{
    const ArrayGeometry &array = config.array;
    const MtGeometry &mt = config.mts[mt_index];
    const ScenarioProfile &profile = config.profile;
    const double lambda = profile.wavelength();

    const RngStream mt_stream = root.child(StreamTag::mt).child(mt_index);
    const DistanceMatrix dist = distance_matrix(array, mt);

    MtRealization r;
    r.partition = generate_partition(array, config.windows, mt_index, mt_stream);
    assign_states(r.partition, profile, array, mt, mt_stream);

    const ShadowMap shadow = draw_shadow(r.partition, profile, mt_stream);

    const RngStream k_base = mt_stream.child(StreamTag::k_factor);
    r.window_k_db.assign(r.partition.n_windows(), std::numeric_limits<double>::quiet_NaN());
    for (std::size_t w = 0; w < r.partition.n_windows(); ++w)
        if (r.partition.windows[w].state == LinkState::los)
            r.window_k_db[w] = draw_k_factor(r.partition.windows[w], profile, k_base.child(w));

    const std::size_t n_el = array.n_elements();
    const std::size_t n_ant = mt.n_antennas();
    r.state.resize(n_el);
    r.sf_db.resize(n_el);
    r.h = LinkGrid<std::complex<double>>(n_el, n_ant);
    r.pl_db = LinkGrid<double>(n_el, n_ant);

    const RngStream small_base = mt_stream.child(StreamTag::small_scale);
    for (std::size_t m = 0; m < n_el; ++m)
    {
        const std::uint32_t w = r.partition.window_of[m];
        const LinkState state = r.partition.windows[w].state;
        r.state[m] = state;
        r.sf_db[m] = shadow.window_sf_db[w];

        const double k_linear = state == LinkState::los ? db_to_power(r.window_k_db[w]) : 0.0;
        const double h_bs = array.element_position(m).z;
        const RngStream element_base = small_base.child(m);

        for (std::size_t k = 0; k < n_ant; ++k)
        {
            const double d3 = dist.d3_at(m, k);
            const double d2 = dist.d2_at(m, k);
            const double h_ut = mt.antennas()[k].z;

            const double pl = pathloss_db(profile, state, d3, d2, h_bs, h_ut);
            RngStream link_stream = element_base.child(k);
            const std::complex<double> g = draw_small_scale(state, k_linear, d3, lambda, link_stream);

            r.pl_db(m, k) = pl;
            r.h(m, k) = link_coefficient(pl, r.sf_db[m], g);
        }
    }

    if (!objects.empty())
    {
        r.pre_sensing = MtRealization::Snapshot{r.state, r.h, r.pl_db, r.sf_db};

        if (config.per_antenna_blockage)
        {
            // Union of the per-antenna shadows: losing sight of any antenna
            // blocks the element.
            BlockageMask combined;
            combined.blocked.assign(n_el, 0);
            for (std::size_t k = 0; k < n_ant; ++k)
            {
                const MtGeometry single({mt.antennas()[k]});
                const BlockageMask part = blockage_mask(objects, single, array, r.state);
                for (std::size_t m = 0; m < n_el; ++m)
                    combined.blocked[m] |= part.blocked[m];
            }
            r.mask = std::move(combined);
        }
        else
        {
            r.mask = blockage_mask(objects, mt, array, r.state);
        }

        regenerate_blocked(r, r.mask, r.partition, profile, array, mt, dist, mt_stream);
    }

    return r;
}

} // namespace

ChannelRealization generate(const SimulationConfig &config)
{
    config.profile.validate();
    config.windows.validate();
    if (config.mts.empty())
        throw config_error("generate: at least one MT is required");
    for (const MtGeometry &mt : config.mts)
        require_front_side(config.array, mt);

    const RngStream root(config.seed);
    const std::vector<SensingObject> objects = materialize_objects(config);

    ChannelRealization out{config.array, config.mts, {}, config.seed};
    out.per_mt.reserve(config.mts.size());
    for (std::size_t i = 0; i < config.mts.size(); ++i)
        out.per_mt.push_back(generate_mt(config, objects, i, root));
    return out;
}

RssMap rss_map(const MtRealization &mt, RssMode mode, std::size_t antenna)
{
    const std::size_t n_el = mt.n_elements();
    const std::size_t n_ant = mt.n_antennas();
    if (n_el == 0 || n_ant == 0)
        throw std::invalid_argument("rss_map: empty realization");
    if (mode != RssMode::mean && antenna >= n_ant)
        throw std::invalid_argument("rss_map: antenna index out of range");

    RssMap map;
    map.n_rows = mt.partition.n_rows;
    map.n_cols = mt.partition.n_cols;
    map.rss_db.resize(n_el);

    double peak = -std::numeric_limits<double>::infinity();
    for (std::size_t m = 0; m < n_el; ++m)
    {
        double power = 0.0;
        if (mode == RssMode::mean)
        {
            for (std::size_t k = 0; k < n_ant; ++k)
                power += std::norm(mt.h(m, k));
            power /= static_cast<double>(n_ant);
        }
        else
        {
            power = std::norm(mt.h(m, antenna));
        }
        map.rss_db[m] = 10.0 * std::log10(power);
        peak = std::max(peak, map.rss_db[m]);
    }

    if (!std::isfinite(peak))
        throw std::invalid_argument("rss_map: channel is all-zero");

    for (double &v : map.rss_db)
        v -= peak;
    return map;
}

} // namespace elaa
