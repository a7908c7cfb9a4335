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

#include <array>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace elaa
{

struct Point3
{
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    friend Point3 operator+(const Point3 &a, const Point3 &b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
    friend Point3 operator-(const Point3 &a, const Point3 &b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
    friend Point3 operator*(double s, const Point3 &a) { return {s * a.x, s * a.y, s * a.z}; }
    friend Point3 operator*(const Point3 &a, double s) { return s * a; }
    friend bool operator==(const Point3 &a, const Point3 &b) = default;
};

double dot(const Point3 &a, const Point3 &b);
Point3 cross(const Point3 &a, const Point3 &b);
double norm(const Point3 &a);
Point3 normalized(const Point3 &a);
bool is_finite(const Point3 &a);

// In-plane (u, v) coordinates on the array plane, in meters.
using PlanePoint = std::array<double, 2>;

// Uniform rectangular array in an arbitrary plane. The plane is given by the
// bottom-left element (origin) plus orthonormal in-plane axes; the outward
// normal is h_axis x v_axis. A ULA is the n_rows = 1 special case.
// Immutable after construction; safe for shared read-only access.
class ArrayGeometry
{
  public:
    // Throws std::invalid_argument on non-positive spacing or axes that are
    // not orthonormal within 1e-12.
    ArrayGeometry(std::size_t n_rows, std::size_t n_cols, double spacing, const Point3 &origin,
                  const Point3 &h_axis, const Point3 &v_axis);

    std::size_t n_rows() const { return n_rows_; }
    std::size_t n_cols() const { return n_cols_; }
    std::size_t n_elements() const { return n_rows_ * n_cols_; }
    double spacing() const { return spacing_; }
    const Point3 &origin() const { return origin_; }
    const Point3 &h_axis() const { return h_axis_; }
    const Point3 &v_axis() const { return v_axis_; }
    const Point3 &normal() const { return normal_; }

    // Element index (r, c) <-> flat index r * n_cols + c is bijective.
    std::size_t flat_index(std::size_t row, std::size_t col) const { return row * n_cols_ + col; }
    std::pair<std::size_t, std::size_t> row_col(std::size_t flat) const
    {
        return {flat / n_cols_, flat % n_cols_};
    }

    Point3 element_position(std::size_t row, std::size_t col) const
    {
        return origin_ + (static_cast<double>(col) * spacing_) * h_axis_ +
               (static_cast<double>(row) * spacing_) * v_axis_;
    }
    Point3 element_position(std::size_t flat) const
    {
        const auto [r, c] = row_col(flat);
        return element_position(r, c);
    }

    // Signed distance from a point to the array plane (positive on the
    // front / outward-normal side).
    double signed_plane_distance(const Point3 &p) const { return dot(p - origin_, normal_); }

    // Orthogonal projection of a point onto in-plane (u, v) coordinates.
    PlanePoint to_plane(const Point3 &p) const
    {
        const Point3 d = p - origin_;
        return {dot(d, h_axis_), dot(d, v_axis_)};
    }
    Point3 from_plane(const PlanePoint &uv) const { return origin_ + uv[0] * h_axis_ + uv[1] * v_axis_; }

    // Diagonal aperture D = spacing * sqrt((rows-1)^2 + (cols-1)^2).
    double aperture_diagonal() const;

  private:
    std::size_t n_rows_;
    std::size_t n_cols_;
    double spacing_;
    Point3 origin_;
    Point3 h_axis_;
    Point3 v_axis_;
    Point3 normal_;
};

// One terminal: antenna positions plus their centroid as reference point.
class MtGeometry
{
  public:
    // Throws std::invalid_argument if empty or non-finite.
    explicit MtGeometry(std::vector<Point3> antenna_positions);

    const std::vector<Point3> &antennas() const { return antennas_; }
    std::size_t n_antennas() const { return antennas_.size(); }
    const Point3 &reference_point() const { return reference_; }

  private:
    std::vector<Point3> antennas_;
    Point3 reference_;
};

// Throws std::invalid_argument unless every MT antenna lies strictly on the
// array's front side (positive-normal half-space).
void require_front_side(const ArrayGeometry &array, const MtGeometry &mt);

// Per-link distances, row-major over [element][antenna]. d3 is the Euclidean
// distance, d2 the horizontal-plane distance (global z dropped). Values are
// exact; 3GPP formula consumers clamp via clamp_formula_distance().
struct DistanceMatrix
{
    std::size_t n_elements = 0;
    std::size_t n_antennas = 0;
    std::vector<double> d3;
    std::vector<double> d2;

    double d3_at(std::size_t element, std::size_t antenna) const { return d3[element * n_antennas + antenna]; }
    double d2_at(std::size_t element, std::size_t antenna) const { return d2[element * n_antennas + antenna]; }
};

// LoS-probability and pathloss curves are undefined at zero range; distances
// feeding them are floored at 1 m.
inline constexpr double min_formula_distance_m = 1.0;
inline double clamp_formula_distance(double d) { return d < min_formula_distance_m ? min_formula_distance_m : d; }

// Throws std::invalid_argument if any element coincides with an MT antenna.
DistanceMatrix distance_matrix(const ArrayGeometry &array, const MtGeometry &mt);

// 2 D^2 / lambda with D the diagonal aperture; 0 for a single element.
double rayleigh_distance(const ArrayGeometry &array, double wavelength);

// Intersection of the ray src -> dst (extended beyond dst) with the array
// plane, as in-plane (u, v) coordinates. Empty if the ray is parallel to the
// plane or points away from it.
std::optional<PlanePoint> intersect_ray_plane(const Point3 &src, const Point3 &dst, const ArrayGeometry &array);

} // namespace elaa
