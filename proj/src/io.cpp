/*
 * Copyright 2026 The tdesign Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "tdesign/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

#include "tdesign/errors.hpp"

namespace tdesign::io {
namespace {

double parse_number(const std::string& token, const std::string& where) {
  double v = 0.0;
  const char* begin = token.data();
  const char* end = token.data() + token.size();
  while (begin < end && *begin == ' ') ++begin;
  while (end > begin && (end[-1] == ' ' || end[-1] == '\r')) --end;
  const auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc() || ptr != end) throw ConfigError(where + ": cannot parse number \"" + token + "\"");
  return v;
}

}  // namespace

std::string format_double(double v) {
  if (v == 0.0) return "0";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) return "nan";
  return std::string(buf, ptr);
}

std::string format_optional(const std::optional<double>& v) { return v ? format_double(*v) : "NA"; }

std::string field_csv(const Field& field, const Grid& grid) {
  std::string out = "index,x1,x2,value\n";
  for (std::size_t x = 0; x < grid.size(); ++x) {
    const Point p = grid.point(x);
    out += std::to_string(x) + ',' + format_double(p.x1) + ',' + format_double(p.x2) + ',' +
           format_double(field[x]) + '\n';
  }
  return out;
}

std::string design_csv(const Design& d, const Grid& grid) {
  std::string out = "rank,grid_index,x1,x2\n";
  for (std::size_t i = 0; i < d.size(); ++i) {
    const Point p = grid.point(d.points[i]);
    out += std::to_string(i + 1) + ',' + std::to_string(d.points[i]) + ',' + format_double(p.x1) + ',' +
           format_double(p.x2) + '\n';
  }
  return out;
}

std::string level_set_csv(const LevelSet& set, const Grid& grid) {
  std::string out = "grid_index,x1,x2\n";
  for (std::size_t x : set.points) {
    const Point p = grid.point(x);
    out += std::to_string(x) + ',' + format_double(p.x1) + ',' + format_double(p.x2) + '\n';
  }
  return out;
}

Field read_field_csv(const std::filesystem::path& path, const Grid& grid) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open field file " + path.string());
  Field field(grid.size(), 0.0);
  std::vector<char> seen(grid.size(), 0);
  std::string line;
  std::size_t line_no = 0;
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    if (line_no == 1 && line.rfind("index", 0) == 0) continue;
    const std::string where = path.string() + ":" + std::to_string(line_no);
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() != 4) throw ConfigError(where + ": expected 4 columns index,x1,x2,value");
    const double idx_d = parse_number(cells[0], where);
    if (idx_d < 0 || std::floor(idx_d) != idx_d || idx_d >= static_cast<double>(grid.size())) {
      throw ConfigError(where + ": grid index out of range");
    }
    const auto idx = static_cast<std::size_t>(idx_d);
    if (seen[idx]) throw ConfigError(where + ": duplicate grid index " + std::to_string(idx));
    const Point p = grid.point(idx);
    const double x1 = parse_number(cells[1], where);
    const double x2 = parse_number(cells[2], where);
    if (std::abs(x1 - p.x1) > 1e-6 || std::abs(x2 - p.x2) > 1e-6) {
      throw ConfigError(where + ": coordinates do not match grid index " + std::to_string(idx));
    }
    field[idx] = parse_number(cells[3], where);
    seen[idx] = 1;
    ++rows;
  }
  if (rows != grid.size()) {
    throw ConfigError(path.string() + ": expected " + std::to_string(grid.size()) + " rows, found " +
                      std::to_string(rows));
  }
  return field;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace tdesign::io
