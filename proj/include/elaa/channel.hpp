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
#include <optional>
#include <vector>

#include "elaa/geometry.hpp"
#include "elaa/scenario.hpp"
#include "elaa/windows.hpp"

namespace elaa
{

// Dense per-link storage, row-major over [element][antenna].
template <typename T> class LinkGrid
{
  public:
    LinkGrid() = default;
    LinkGrid(std::size_t n_elements, std::size_t n_antennas, T init = T{})
        : n_elements_(n_elements), n_antennas_(n_antennas), data_(n_elements * n_antennas, init)
    {
    }

    std::size_t n_elements() const { return n_elements_; }
    std::size_t n_antennas() const { return n_antennas_; }
    std::size_t size() const { return data_.size(); }

    T &operator()(std::size_t element, std::size_t antenna) { return data_[element * n_antennas_ + antenna]; }
    const T &operator()(std::size_t element, std::size_t antenna) const
    {
        return data_[element * n_antennas_ + antenna];
    }

    std::vector<T> &data() { return data_; }
    const std::vector<T> &data() const { return data_; }

    friend bool operator==(const LinkGrid &, const LinkGrid &) = default;

  private:
    std::size_t n_elements_ = 0;
    std::size_t n_antennas_ = 0;
    std::vector<T> data_;
};

// Boolean blockage flag per array element for one MT. An element may only be
// blocked if its pre-sensing state was LoS.
struct BlockageMask
{
    std::vector<std::uint8_t> blocked; // per flat element index; empty = no mask

    bool empty() const { return blocked.empty(); }
    bool any() const;
    std::size_t count() const;
    bool at(std::size_t element) const { return !blocked.empty() && blocked[element] != 0; }
};

// Everything generated for one MT. `partition` carries the pre-sensing
// window states; `state` is the per-element post-sensing condition (they
// differ only where the mask is set).
struct MtRealization
{
    WindowPartition partition;
    std::vector<LinkState> state;        // per element, after blockage
    LinkGrid<std::complex<double>> h;    // channel coefficients
    LinkGrid<double> pl_db;              // pathloss per link
    std::vector<double> sf_db;           // shadow fading per element
    std::vector<double> window_k_db;     // Rician K per window (NaN for NLoS)
    BlockageMask mask;                   // empty when no sensing objects

    struct Snapshot
    {
        std::vector<LinkState> state;
        LinkGrid<std::complex<double>> h;
        LinkGrid<double> pl_db;
        std::vector<double> sf_db;
    };
    std::optional<Snapshot> pre_sensing; // present whenever objects exist

    std::size_t n_elements() const { return state.size(); }
    std::size_t n_antennas() const { return h.n_antennas(); }
};

struct ChannelRealization
{
    ArrayGeometry array;
    std::vector<MtGeometry> mts;
    std::vector<MtRealization> per_mt;
    std::uint64_t seed = 0;
};

} // namespace elaa
