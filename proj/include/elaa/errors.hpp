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

#include <stdexcept>
#include <string>

namespace elaa
{

// Invalid or inconsistent user-facing configuration (bad JSON, out-of-range
// values, unresolvable references). Mapped to exit code 2 by the CLI.
class config_error : public std::runtime_error
{
  public:
    explicit config_error(const std::string &msg) : std::runtime_error(msg) {}
};

// Filesystem / serialization failures. Mapped to exit code 3 by the CLI.
class io_error : public std::runtime_error
{
  public:
    explicit io_error(const std::string &msg) : std::runtime_error(msg) {}
};

} // namespace elaa
