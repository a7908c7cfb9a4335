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
#include <string>

#include "elaa/config.hpp"

namespace elaa
{

// Monte Carlo self-checks of the generator against analytic references:
// window-length PMF and mean, LoS fractions vs distance, fading
// distribution KS statistics, and polygon-vs-oracle blockage agreement.
// Writes CSV reports plus summary.txt into out_dir and returns the summary
// text. n_trials scales every probe's sample count.
std::string run_stats(const SimulationConfig &config, std::size_t n_trials, const std::string &out_dir);

} // namespace elaa
