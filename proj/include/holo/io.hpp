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

// Small text helpers shared by the file formats.
namespace holo::io {

/// printf("%.12g"); the one float format used in every exported file.
std::string format_number(double value);

/// Value rounded to 12 significant digits (parse of format_number).
double round_sig12(double value);

/// Strict parse: the whole field must be a number. Throws std::invalid_argument.
double parse_double(const std::string& field);

std::vector<std::string> split_csv_line(const std::string& line);

/// Reads a CSV whose first line must equal `header` (fields compared after
/// trimming). Blank lines are skipped. Every row must have header.size()
/// fields. Throws std::invalid_argument on malformed input.
std::vector<std::vector<std::string>> read_csv(std::istream& in,
                                               const std::vector<std::string>& header);

/// read_csv with every field parsed as a number.
std::vector<std::vector<double>> read_numeric_csv(std::istream& in,
                                                  const std::vector<std::string>& header);

}  // namespace holo::io
