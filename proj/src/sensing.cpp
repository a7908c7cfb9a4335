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

#include "elaa/sensing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "elaa/fading.hpp"

namespace elaa
{

namespace
{
constexpr double two_pi = 6.283185307179586476925286766559;

double cross2(const PlanePoint &o, const PlanePoint &a, const PlanePoint &b)
{
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}
} // namespace

bool BlockageMask::any() const
{
    return std::any_of(blocked.begin(), blocked.end(), [](std::uint8_t b) { return b != 0; });
}

std::size_t BlockageMask::count() const
{
    return static_cast<std::size_t>(std::count_if(blocked.begin(), blocked.end(),
                                                  [](std::uint8_t b) { return b != 0; }));
}

SensingObject make_sphere_cloud(const Point3 &center, double radius, std::size_t n_points, RngStream stream)
{
    if (!(radius > 0.0))
        throw std::invalid_argument("make_sphere_cloud: radius must be positive");
    if (n_points < 4)
        throw std::invalid_argument("make_sphere_cloud: need at least 4 points");

    SensingObject obj;
    obj.label = "sphere";
    obj.points.reserve(n_points);
    for (std::size_t i = 0; i < n_points; ++i)
    {
        const double z = 2.0 * stream.uniform01() - 1.0;
        const double phi = two_pi * stream.uniform01();
        const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
        obj.points.push_back(center + radius * Point3{rho * std::cos(phi), rho * std::sin(phi), z});
    }
    return obj;
}

SensingObject make_box_cloud(const Point3 &center, const Point3 &extents, std::size_t n_points,
                             RngStream stream)
{
    if (!(extents.x > 0.0) || !(extents.y > 0.0) || !(extents.z > 0.0))
        throw std::invalid_argument("make_box_cloud: extents must be positive");
    if (n_points < 4)
        throw std::invalid_argument("make_box_cloud: need at least 4 points");

    // Face areas: +-x, +-y, +-z.
    const double ax = extents.y * extents.z;
    const double ay = extents.x * extents.z;
    const double az = extents.x * extents.y;
    const double total = 2.0 * (ax + ay + az);

    SensingObject obj;
    obj.label = "box";
    obj.points.reserve(n_points);
    const Point3 half = 0.5 * extents;
    for (std::size_t i = 0; i < n_points; ++i)
    {
        const double pick = stream.uniform01() * total;
        const double u = stream.uniform01();
        const double v = stream.uniform01();
        Point3 p;
        if (pick < 2.0 * ax)
        {
            p = {pick < ax ? half.x : -half.x, (u - 0.5) * extents.y, (v - 0.5) * extents.z};
        }
        else if (pick < 2.0 * (ax + ay))
        {
            p = {(u - 0.5) * extents.x, pick < 2.0 * ax + ay ? half.y : -half.y, (v - 0.5) * extents.z};
        }
        else
        {
            p = {(u - 0.5) * extents.x, (v - 0.5) * extents.y,
                 pick < 2.0 * (ax + ay) + az ? half.z : -half.z};
        }
        obj.points.push_back(center + p);
    }
    return obj;
}

Polygon convex_hull(std::vector<PlanePoint> points)
{
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    const std::size_t n = points.size();
    if (n < 3)
        return {};

    Polygon hull(2 * n);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) // lower chain
    {
        while (k >= 2 && cross2(hull[k - 2], hull[k - 1], points[i]) <= 0.0)
            --k;
        hull[k++] = points[i];
    }
    for (std::size_t i = n - 1, lower = k + 1; i-- > 0;) // upper chain
    {
        while (k >= lower && cross2(hull[k - 2], hull[k - 1], points[i]) <= 0.0)
            --k;
        hull[k++] = points[i];
    }
    hull.resize(k - 1);
    if (hull.size() < 3)
        return {};
    return hull;
}

Polygon shadow_polygon(const SensingObject &object, const MtGeometry &mt, const ArrayGeometry &array)
{
    if (object.points.empty())
        throw std::invalid_argument("shadow_polygon: object has no points");

    const Point3 &src = mt.reference_point();
    std::vector<PlanePoint> hits;
    hits.reserve(object.points.size());
    for (const Point3 &p : object.points)
    {
        // A cloud point behind the array plane cannot shadow it.
        if (array.signed_plane_distance(p) < 0.0)
            continue;
        if (p == src)
            throw std::invalid_argument("shadow_polygon: MT reference point lies on the object");
        if (auto uv = intersect_ray_plane(src, p, array))
            hits.push_back(*uv);
    }
    return convex_hull(std::move(hits));
}

bool point_in_polygon(const PlanePoint &p, const Polygon &polygon)
{
    constexpr double tol = 1e-9; // meters of slack outside an edge
    const std::size_t n = polygon.size();
    if (n < 3)
        return false;
    for (std::size_t i = 0; i < n; ++i)
    {
        const PlanePoint &a = polygon[i];
        const PlanePoint &b = polygon[(i + 1) % n];
        const double ex = b[0] - a[0];
        const double ey = b[1] - a[1];
        const double len = std::hypot(ex, ey);
        if (len == 0.0)
            continue;
        const double cross = ex * (p[1] - a[1]) - ey * (p[0] - a[0]);
        if (cross < -tol * len)
            return false;
    }
    return true;
}

BlockageMask blockage_mask(std::span<const SensingObject> objects, const MtGeometry &mt,
                           const ArrayGeometry &array, std::span<const LinkState> pre_states)
{
    if (pre_states.size() != array.n_elements())
        throw std::invalid_argument("blockage_mask: state vector does not match the array");

    BlockageMask mask;
    mask.blocked.assign(array.n_elements(), 0);
    if (objects.empty())
        return mask;

    std::vector<Polygon> polygons;
    polygons.reserve(objects.size());
    for (const SensingObject &obj : objects)
        polygons.push_back(shadow_polygon(obj, mt, array));

    for (std::size_t m = 0; m < array.n_elements(); ++m)
    {
        if (pre_states[m] != LinkState::los)
            continue; // NLoS links are unaffected by the object
        const auto [r, c] = array.row_col(m);
        const PlanePoint uv{static_cast<double>(c) * array.spacing(),
                            static_cast<double>(r) * array.spacing()};
        for (const Polygon &poly : polygons)
        {
            if (point_in_polygon(uv, poly))
            {
                mask.blocked[m] = 1;
                break;
            }
        }
    }
    return mask;
}

bool oracle_ray_sphere(const Point3 &element_pos, const Point3 &mt_ref, const Point3 &center, double radius)
{
    if (!(radius > 0.0))
        throw std::invalid_argument("oracle_ray_sphere: radius must be positive");

    const Point3 d = mt_ref - element_pos;
    const Point3 f = element_pos - center;
    if (norm(f) <= radius || norm(mt_ref - center) <= radius)
        return true; // an endpoint inside the sphere blocks trivially

    const double a = dot(d, d);
    const double b = 2.0 * dot(f, d);
    const double c = dot(f, f) - radius * radius;
    const double disc = b * b - 4.0 * a * c;
    if (disc < 0.0)
        return false;

    const double sq = std::sqrt(disc);
    const double t_lo = (-b - sq) / (2.0 * a);
    const double t_hi = (-b + sq) / (2.0 * a);
    return t_lo <= 1.0 && t_hi >= 0.0; // root interval overlaps the segment
}

void regenerate_blocked(MtRealization &channel, const BlockageMask &mask, const WindowPartition &partition,
                        const ScenarioProfile &profile, const ArrayGeometry &array, const MtGeometry &mt,
                        const DistanceMatrix &distances, const RngStream &stream)
{
    if (mask.empty() || !mask.any())
        return; // no blocked links: output stays bit-identical

    const double lambda = profile.wavelength();
    const RngStream shadow_base = stream.child(StreamTag::regen_shadow);
    const RngStream small_base = stream.child(StreamTag::regen_small_scale);

    // One fresh NLoS shadow draw per affected window; the blocked sub-region
    // behaves as a new independent window while the remainder keeps its
    // original draw.
    std::vector<double> regen_sf(partition.n_windows(), std::numeric_limits<double>::quiet_NaN());
    for (std::size_t m = 0; m < channel.n_elements(); ++m)
    {
        if (!mask.at(m))
            continue;
        const std::uint32_t w = partition.window_of[m];
        if (std::isnan(regen_sf[w]))
        {
            RngStream s = shadow_base.child(w);
            regen_sf[w] = s.normal(0.0, profile.sf_sigma_nlos_db);
        }
    }

    for (std::size_t m = 0; m < channel.n_elements(); ++m)
    {
        if (!mask.at(m))
            continue;

        channel.state[m] = LinkState::nlos;
        channel.sf_db[m] = regen_sf[partition.window_of[m]];

        const double h_bs = array.element_position(m).z;
        for (std::size_t k = 0; k < channel.n_antennas(); ++k)
        {
            const double d3 = distances.d3_at(m, k);
            const double d2 = distances.d2_at(m, k);
            const double h_ut = mt.antennas()[k].z;
            const double pl = pathloss_db(profile, LinkState::nlos, d3, d2, h_bs, h_ut);

            RngStream link_stream = small_base.child(m).child(k);
            const std::complex<double> g =
                draw_small_scale(LinkState::nlos, 0.0, d3, lambda, link_stream);

            channel.pl_db(m, k) = pl;
            channel.h(m, k) = link_coefficient(pl, channel.sf_db[m], g);
        }
    }
}

} // namespace elaa
