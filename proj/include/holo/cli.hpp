// Copyright 2026 The Holonomic Gates Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace holo {

namespace exit_code {
inline constexpr int kSuccess = 0;
inline constexpr int kComputationError = 1;
inline constexpr int kUsageError = 2;
}  // namespace exit_code

/**
 * Entry point of the `holo` tool. `args` excludes the program name.
 *
 * Subcommands: gate, sequence, commutator, game, layout, fit, hom,
 * robustness. Reports go to `out` (or --out PATH), diagnostics to `err`.
 */
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace holo
