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

#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "tdesign/design.hpp"
#include "tdesign/grid.hpp"
#include "tdesign/level_set.hpp"

namespace tdesign::io {

/// Shortest decimal that round-trips to the same double.
std::string format_double(double v);
std::string format_optional(const std::optional<double>& v);  // "NA" when empty

/// "index,x1,x2,value" header, then one row per grid index.
std::string field_csv(const Field& field, const Grid& grid);
/// "rank,grid_index,x1,x2" header, rank starting at 1.
std::string design_csv(const Design& d, const Grid& grid);
/// "grid_index,x1,x2" point list.
std::string level_set_csv(const LevelSet& set, const Grid& grid);

/// Reads a field CSV (index,x1,x2,value with header). Rows may come in any
/// order but every grid index must appear exactly once. Coordinates are
/// checked against the grid.
Field read_field_csv(const std::filesystem::path& path, const Grid& grid);

void write_file(const std::filesystem::path& path, const std::string& content);
std::string read_file(const std::filesystem::path& path);

}  // namespace tdesign::io
