// Copyright 2026 The qws Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qws/linalg.hpp"

namespace qws {

/// %.17g — shortest representation that round-trips a double.
std::string format_g17(double v);

/// Column-oriented CSV: header row, %.17g numerics, LF line endings.
/// All columns must have equal length.
struct CsvTable {
    std::vector<std::string> headers;
    std::vector<std::vector<double>> columns;

    void add_column(const std::string& header, const Vec& values);
    void add_column(const std::string& header, const std::vector<double>& values);
    std::string to_string() const;
};

/// Writes via a temp file and rename, so failures never leave partial files.
void atomic_write(const std::string& path, const std::string& content);

void write_csv(const CsvTable& table, const std::string& path);

/// FNV-1a 64-bit, used to stamp configs into reports.
uint64_t fnv1a64(std::string_view data);
std::string hex64(uint64_t v);

}  // namespace qws
