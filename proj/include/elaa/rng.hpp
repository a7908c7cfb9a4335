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
#include <cmath>
#include <cstdint>

namespace elaa
{

// Purpose tags used to derive independent substreams. Every random quantity
// in the generator is drawn from a stream keyed by
// (master seed, MT index, tag, window/strip/object id, element, antenna),
// so any single draw is reproducible in isolation and results do not depend
// on evaluation order or thread count.
enum class StreamTag : std::uint64_t
{
    horizontal_breaks = 0x01,
    vertical_breaks = 0x02,
    window_state = 0x03,
    shadow = 0x04,
    k_factor = 0x05,
    small_scale = 0x06,
    regen_shadow = 0x07,
    regen_small_scale = 0x08,
    object_cloud = 0x09,
    mt = 0x0A,
};

// Splittable counter-style random stream built on the SplitMix64 mixer.
// Child streams are derived by hashing key words into the state; the states
// of distinct key tuples are statistically independent 64-bit points, so
// their output windows do not overlap in practice.
class RngStream
{
  public:
    explicit RngStream(std::uint64_t seed) : state_(mix(seed ^ 0x6a09e667f3bcc908ull)) {}

    // Derive an independent substream for the given key word.
    [[nodiscard]] RngStream child(std::uint64_t key) const
    {
        return RngStream(from_state{}, mix(state_ ^ mix(key + 0x9e3779b97f4a7c15ull)));
    }

    [[nodiscard]] RngStream child(StreamTag tag) const { return child(static_cast<std::uint64_t>(tag)); }

    std::uint64_t next_u64()
    {
        state_ += 0x9e3779b97f4a7c15ull;
        return mix(state_);
    }

    // Uniform in [0, 1), 53-bit resolution.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return uniform01() < p; }

    // Standard normal via Box-Muller; consumes two uniforms per draw.
    double normal()
    {
        const double u1 = uniform01();
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log1p(-u1));
        return r * std::cos(2.0 * pi() * u2);
    }

    double normal(double mu, double sigma) { return mu + sigma * normal(); }

    // Circularly-symmetric complex normal with E[|z|^2] = 1
    // (real and imaginary parts are N(0, 1/2) each).
    std::complex<double> complex_normal()
    {
        const double u1 = uniform01();
        const double u2 = uniform01();
        const double r = std::sqrt(-std::log1p(-u1));
        return std::polar(r, 2.0 * pi() * u2);
    }

  private:
    struct from_state
    {
    };
    RngStream(from_state, std::uint64_t s) : state_(s) {}

    static constexpr double pi() { return 3.141592653589793238462643383279502884; }

    // SplitMix64 finalizer (Steele/Lea/Flood; Vigna's fixed-increment variant).
    static std::uint64_t mix(std::uint64_t z)
    {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    std::uint64_t state_;
};

} // namespace elaa
