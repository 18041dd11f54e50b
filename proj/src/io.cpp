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

#include "holo/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <istream>
#include <stdexcept>

namespace holo::io {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

}  // namespace

std::string format_number(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", value);
  return buf;
}

double round_sig12(double value) { return std::strtod(format_number(value).c_str(), nullptr); }

double parse_double(const std::string& field) {
  const std::string s = trim(field);
  if (s.empty()) throw std::invalid_argument("empty numeric field");
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size()) {
    throw std::invalid_argument("not a number: '" + s + "'");
  }
  return v;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string current;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(trim(current));
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  fields.push_back(trim(current));
  return fields;
}

std::vector<std::vector<std::string>> read_csv(std::istream& in,
                                               const std::vector<std::string>& header) {
  std::string line;
  bool have_header = false;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    have_header = true;
    break;
  }
  if (!have_header) throw std::invalid_argument("CSV input is empty");
  if (split_csv_line(line) != header) {
    std::string expected;
    for (std::size_t i = 0; i < header.size(); ++i) {
      expected += (i ? "," : "") + header[i];
    }
    throw std::invalid_argument("CSV header must be '" + expected + "', got '" + trim(line) +
                                "'");
  }
  std::vector<std::vector<std::string>> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    auto fields = split_csv_line(line);
    if (fields.size() != header.size()) {
      throw std::invalid_argument("CSV line " + std::to_string(line_no) + ": expected " +
                                  std::to_string(header.size()) + " fields");
    }
    rows.push_back(std::move(fields));
  }
  return rows;
}

std::vector<std::vector<double>> read_numeric_csv(std::istream& in,
                                                  const std::vector<std::string>& header) {
  std::vector<std::vector<double>> out;
  for (const auto& row : read_csv(in, header)) {
    std::vector<double> values;
    values.reserve(row.size());
    for (const auto& f : row) values.push_back(parse_double(f));
    out.push_back(std::move(values));
  }
  return out;
}

}  // namespace holo::io
