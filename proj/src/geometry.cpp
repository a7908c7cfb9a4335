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

#include "elaa/geometry.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace elaa
{

double dot(const Point3 &a, const Point3 &b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

Point3 cross(const Point3 &a, const Point3 &b)
{
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

double norm(const Point3 &a) { return std::sqrt(dot(a, a)); }

Point3 normalized(const Point3 &a)
{
    const double n = norm(a);
    if (n == 0.0)
        throw std::invalid_argument("cannot normalize a zero vector");
    return (1.0 / n) * a;
}

bool is_finite(const Point3 &a) { return std::isfinite(a.x) && std::isfinite(a.y) && std::isfinite(a.z); }

ArrayGeometry::ArrayGeometry(std::size_t n_rows, std::size_t n_cols, double spacing, const Point3 &origin,
                             const Point3 &h_axis, const Point3 &v_axis)
    : n_rows_(n_rows), n_cols_(n_cols), spacing_(spacing), origin_(origin), h_axis_(h_axis), v_axis_(v_axis)
{
    if (n_rows_ < 1 || n_cols_ < 1)
        throw std::invalid_argument("array must have at least one row and one column");
    if (!(spacing_ > 0.0) || !std::isfinite(spacing_))
        throw std::invalid_argument("element spacing must be positive and finite");
    if (!is_finite(origin_) || !is_finite(h_axis_) || !is_finite(v_axis_))
        throw std::invalid_argument("array origin and axes must be finite");

    constexpr double tol = 1e-12;
    if (std::abs(norm(h_axis_) - 1.0) > tol || std::abs(norm(v_axis_) - 1.0) > tol ||
        std::abs(dot(h_axis_, v_axis_)) > tol)
        throw std::invalid_argument("array axes must be orthonormal within 1e-12");

    normal_ = cross(h_axis_, v_axis_);
}

double ArrayGeometry::aperture_diagonal() const
{
    const double dr = static_cast<double>(n_rows_ - 1);
    const double dc = static_cast<double>(n_cols_ - 1);
    return spacing_ * std::sqrt(dr * dr + dc * dc);
}

MtGeometry::MtGeometry(std::vector<Point3> antenna_positions) : antennas_(std::move(antenna_positions))
{
    if (antennas_.empty())
        throw std::invalid_argument("MT must have at least one antenna");
    Point3 sum{};
    for (const Point3 &p : antennas_)
    {
        if (!is_finite(p))
            throw std::invalid_argument("MT antenna positions must be finite");
        sum = sum + p;
    }
    reference_ = (1.0 / static_cast<double>(antennas_.size())) * sum;
}

void require_front_side(const ArrayGeometry &array, const MtGeometry &mt)
{
    for (std::size_t k = 0; k < mt.n_antennas(); ++k)
    {
        if (!(array.signed_plane_distance(mt.antennas()[k]) > 0.0))
            throw std::invalid_argument("MT antenna " + std::to_string(k) +
                                        " is not on the array's front side");
    }
}

DistanceMatrix distance_matrix(const ArrayGeometry &array, const MtGeometry &mt)
{
    DistanceMatrix out;
    out.n_elements = array.n_elements();
    out.n_antennas = mt.n_antennas();
    out.d3.resize(out.n_elements * out.n_antennas);
    out.d2.resize(out.n_elements * out.n_antennas);

    for (std::size_t m = 0; m < out.n_elements; ++m)
    {
        const Point3 e = array.element_position(m);
        for (std::size_t k = 0; k < out.n_antennas; ++k)
        {
            const Point3 d = mt.antennas()[k] - e;
            const double d3 = norm(d);
            if (d3 == 0.0)
                throw std::invalid_argument("MT antenna coincides with an array element");
            out.d3[m * out.n_antennas + k] = d3;
            out.d2[m * out.n_antennas + k] = std::hypot(d.x, d.y);
        }
    }
    return out;
}

double rayleigh_distance(const ArrayGeometry &array, double wavelength)
{
    if (!(wavelength > 0.0))
        throw std::invalid_argument("wavelength must be positive");
    const double d = array.aperture_diagonal();
    return 2.0 * d * d / wavelength;
}

std::optional<PlanePoint> intersect_ray_plane(const Point3 &src, const Point3 &dst, const ArrayGeometry &array)
{
    const Point3 dir = dst - src;
    const double dir_n = norm(dir);
    if (dir_n == 0.0)
        throw std::invalid_argument("ray source and target coincide");

    const double denom = dot(dir, array.normal());
    // Parallel rays (including in-plane ones) never produce a hit.
    if (std::abs(denom) < 1e-15 * dir_n)
        return std::nullopt;

    const double t = -array.signed_plane_distance(src) / denom;
    if (t < 0.0)
        return std::nullopt; // plane lies behind the ray origin

    return array.to_plane(src + t * dir);
}

} // namespace elaa
