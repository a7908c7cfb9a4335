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

#include <span>
#include <string>
#include <vector>

#include "elaa/channel.hpp"
#include "elaa/geometry.hpp"
#include "elaa/rng.hpp"
#include "elaa/scenario.hpp"
#include "elaa/windows.hpp"

namespace elaa
{

// A sensing object as a surface point cloud; the simulation never needs the
// underlying shape, only the points.
struct SensingObject
{
    std::vector<Point3> points;
    std::string label;
};

// n_points sampled uniformly on the sphere surface, deterministic in the
// stream.
SensingObject make_sphere_cloud(const Point3 &center, double radius, std::size_t n_points, RngStream stream);

// n_points sampled uniformly on the surface of an axis-aligned box with the
// given full extents.
SensingObject make_box_cloud(const Point3 &center, const Point3 &extents, std::size_t n_points,
                             RngStream stream);

// Convex polygon in array-plane (u, v) coordinates, counter-clockwise.
using Polygon = std::vector<PlanePoint>;

// Andrew monotone-chain hull; fewer than 3 non-collinear points yield an
// empty polygon.
Polygon convex_hull(std::vector<PlanePoint> points);

// Shadow cast by the object on the array plane for one MT: rays from the MT
// reference point through every cloud point, intersected with the plane, and
// the convex hull of the hits. Points that are not strictly between the MT
// and the plane cast no shadow. Empty when fewer than 3 rays land.
Polygon shadow_polygon(const SensingObject &object, const MtGeometry &mt, const ArrayGeometry &array);

// Boundary-inclusive point-in-convex-polygon test, 1e-9 m edge tolerance.
bool point_in_polygon(const PlanePoint &p, const Polygon &polygon);

// Element blocked iff its pre-sensing state is LoS and its in-plane position
// falls in any object's shadow polygon (union over objects).
BlockageMask blockage_mask(std::span<const SensingObject> objects, const MtGeometry &mt,
                           const ArrayGeometry &array, std::span<const LinkState> pre_states);

// Independent verification oracle: does the segment element <-> MT intersect
// the sphere? Solved via the quadratic discriminant; tangency counts as an
// intersection.
bool oracle_ray_sphere(const Point3 &element_pos, const Point3 &mt_ref, const Point3 &center, double radius);

// Regenerate fading where the mask blocks previously-LoS links: blocked
// elements flip to NLoS, the blocked part of each affected window receives a
// fresh shadow draw and fresh Rayleigh small-scale draws, and NLoS pathloss
// replaces LoS pathloss on the flipped links. Everything outside the mask is
// left bit-identical. `stream` must be keyed by (seed, MT); `distances` must
// be the matrix used to generate the channel.
void regenerate_blocked(MtRealization &channel, const BlockageMask &mask, const WindowPartition &partition,
                        const ScenarioProfile &profile, const ArrayGeometry &array, const MtGeometry &mt,
                        const DistanceMatrix &distances, const RngStream &stream);

} // namespace elaa
