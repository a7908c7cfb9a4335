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

#include <cstddef>
#include <vector>

#include "elaa/geometry.hpp"
#include "elaa/rng.hpp"
#include "elaa/scenario.hpp"

namespace elaa
{

// Correlation distances of the window boundary process; they may differ
// between the horizontal and vertical directions.
struct WindowConfig
{
    double d_corr_h_m = 2.0;
    double d_corr_v_m = 2.0;

    void validate() const; // throws config_error unless both positive & finite
};

// Half-open index rectangle [row_start, row_end) x [col_start, col_end)
// sharing one propagation condition.
struct WindowRect
{
    std::size_t row_start = 0;
    std::size_t row_end = 0;
    std::size_t col_start = 0;
    std::size_t col_end = 0;
    LinkState state = LinkState::nlos;

    std::size_t n_rows() const { return row_end - row_start; }
    std::size_t n_cols() const { return col_end - col_start; }
    std::size_t area() const { return n_rows() * n_cols(); }
};

// Rectangular tiling of one MT's view of the array. Horizontal strips come
// from the bottom-row boundary process; each strip carries its own
// independent vertical subdivision, so every rectangle's column span equals
// exactly one strip's span. Immutable once built.
struct WindowPartition
{
    std::size_t mt_index = 0;
    std::size_t n_rows = 0;
    std::size_t n_cols = 0;
    std::vector<std::size_t> strip_starts; // first column of each strip
    std::vector<WindowRect> windows;       // strip-major, bottom-up in rows
    std::vector<std::uint32_t> window_of;  // flat element index -> window index

    std::size_t n_windows() const { return windows.size(); }
    std::uint32_t window_at(std::size_t row, std::size_t col) const
    {
        return window_of[row * n_cols + col];
    }
    // Element whose link represents the window in state decisions: the
    // index-middle element of the rectangle.
    std::pair<std::size_t, std::size_t> centroid_element(std::size_t window) const;
};

// Probability of a window boundary between two adjacent elements at the
// given pitch: p = 1 - exp(-spacing / d_corr). Run lengths are then
// geometric with mean 1/p.
double break_probability(double spacing, double d_corr);

// Boundary positions b in {1, .., n-1}: element b starts a new window.
// Each boundary is drawn independently with break_probability().
std::vector<std::size_t> generate_horizontal_breaks(std::size_t n_cols, double spacing, double d_corr_h,
                                                    RngStream stream);

// Same boundary process along the rows of one strip. The draw is keyed by
// strip_id so distinct strips subdivide independently.
std::vector<std::size_t> generate_vertical_breaks(std::size_t n_rows, double spacing, double d_corr_v,
                                                  RngStream stream, std::size_t strip_id);

// Build the full tiling for one MT (no states yet). `stream` must already be
// keyed by (seed, MT).
WindowPartition generate_partition(const ArrayGeometry &array, const WindowConfig &config,
                                   std::size_t mt_index, const RngStream &stream);

// Draw each window's LoS/NLoS state: LoS with probability
// los_probability(profile, d2) evaluated at the window-centroid element
// against the MT reference point. Adjacent windows draw independently.
void assign_states(WindowPartition &partition, const ScenarioProfile &profile, const ArrayGeometry &array,
                   const MtGeometry &mt, const RngStream &stream);

// Analytic run-length PMF of the boundary process: geometric with parameter
// break_probability(spacing, d_corr), with the tail mass beyond max_len
// folded into the last bucket (the window truncated by the array edge).
// Index i holds P(L = i + 1); the vector sums to 1.
std::vector<double> window_length_pmf(double d_corr, double spacing, std::size_t max_len);

} // namespace elaa
