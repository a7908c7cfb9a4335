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

#include "elaa/windows.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "elaa/errors.hpp"

namespace elaa
{

void WindowConfig::validate() const
{
    if (!(d_corr_h_m > 0.0) || !std::isfinite(d_corr_h_m) || !(d_corr_v_m > 0.0) ||
        !std::isfinite(d_corr_v_m))
        throw config_error("windows: correlation distances must be positive and finite");
}

std::pair<std::size_t, std::size_t> WindowPartition::centroid_element(std::size_t window) const
{
    const WindowRect &w = windows[window];
    return {w.row_start + (w.n_rows() - 1) / 2, w.col_start + (w.n_cols() - 1) / 2};
}

double break_probability(double spacing, double d_corr)
{
    if (!(spacing > 0.0) || !(d_corr > 0.0))
        throw std::invalid_argument("break_probability: spacing and d_corr must be positive");
    return -std::expm1(-spacing / d_corr);
}

namespace
{

std::vector<std::size_t> draw_breaks(std::size_t n, double p, RngStream &stream)
{
    std::vector<std::size_t> breaks;
    for (std::size_t b = 1; b < n; ++b)
        if (stream.bernoulli(p))
            breaks.push_back(b);
    return breaks;
}

} // namespace

std::vector<std::size_t> generate_horizontal_breaks(std::size_t n_cols, double spacing, double d_corr_h,
                                                    RngStream stream)
{
    const double p = break_probability(spacing, d_corr_h);
    return draw_breaks(n_cols, p, stream);
}

std::vector<std::size_t> generate_vertical_breaks(std::size_t n_rows, double spacing, double d_corr_v,
                                                  RngStream stream, std::size_t strip_id)
{
    const double p = break_probability(spacing, d_corr_v);
    RngStream strip_stream = stream.child(static_cast<std::uint64_t>(strip_id));
    return draw_breaks(n_rows, p, strip_stream);
}

WindowPartition generate_partition(const ArrayGeometry &array, const WindowConfig &config,
                                   std::size_t mt_index, const RngStream &stream)
{
    config.validate();

    WindowPartition part;
    part.mt_index = mt_index;
    part.n_rows = array.n_rows();
    part.n_cols = array.n_cols();

    const auto col_breaks = generate_horizontal_breaks(part.n_cols, array.spacing(), config.d_corr_h_m,
                                                       stream.child(StreamTag::horizontal_breaks));
    part.strip_starts.reserve(col_breaks.size() + 1);
    part.strip_starts.push_back(0);
    part.strip_starts.insert(part.strip_starts.end(), col_breaks.begin(), col_breaks.end());

    const RngStream vertical_base = stream.child(StreamTag::vertical_breaks);
    for (std::size_t s = 0; s < part.strip_starts.size(); ++s)
    {
        const std::size_t col_start = part.strip_starts[s];
        const std::size_t col_end =
            (s + 1 < part.strip_starts.size()) ? part.strip_starts[s + 1] : part.n_cols;

        const auto row_breaks =
            generate_vertical_breaks(part.n_rows, array.spacing(), config.d_corr_v_m, vertical_base, s);

        std::size_t row_start = 0;
        for (std::size_t b = 0; b <= row_breaks.size(); ++b)
        {
            const std::size_t row_end = (b < row_breaks.size()) ? row_breaks[b] : part.n_rows;
            part.windows.push_back(WindowRect{row_start, row_end, col_start, col_end, LinkState::nlos});
            row_start = row_end;
        }
    }

    if (part.windows.size() > std::numeric_limits<std::uint32_t>::max())
        throw std::invalid_argument("partition exceeds the supported window count");

    part.window_of.assign(part.n_rows * part.n_cols, 0);
    for (std::size_t w = 0; w < part.windows.size(); ++w)
    {
        const WindowRect &rect = part.windows[w];
        for (std::size_t r = rect.row_start; r < rect.row_end; ++r)
            for (std::size_t c = rect.col_start; c < rect.col_end; ++c)
                part.window_of[r * part.n_cols + c] = static_cast<std::uint32_t>(w);
    }
    return part;
}

void assign_states(WindowPartition &partition, const ScenarioProfile &profile, const ArrayGeometry &array,
                   const MtGeometry &mt, const RngStream &stream)
{
    const RngStream state_base = stream.child(StreamTag::window_state);
    for (std::size_t w = 0; w < partition.windows.size(); ++w)
    {
        const auto [row, col] = partition.centroid_element(w);
        const Point3 d = mt.reference_point() - array.element_position(row, col);
        const double d2 = clamp_formula_distance(std::hypot(d.x, d.y));
        const double p = los_probability(profile, d2);

        RngStream window_stream = state_base.child(static_cast<std::uint64_t>(w));
        partition.windows[w].state = window_stream.bernoulli(p) ? LinkState::los : LinkState::nlos;
    }
}

std::vector<double> window_length_pmf(double d_corr, double spacing, std::size_t max_len)
{
    if (max_len < 1)
        throw std::invalid_argument("window_length_pmf: max_len must be at least 1");

    const double p = break_probability(spacing, d_corr);
    std::vector<double> pmf(max_len);
    if (p <= 0.0)
    {
        // Degenerate boundary process: a single window spanning everything.
        pmf.back() = 1.0;
        return pmf;
    }

    double survival = 1.0; // (1-p)^(l-1)
    for (std::size_t l = 1; l + 1 <= max_len; ++l)
    {
        pmf[l - 1] = survival * p;
        survival *= 1.0 - p;
    }
    pmf[max_len - 1] = survival; // tail mass: window truncated by the edge
    return pmf;
}

} // namespace elaa
