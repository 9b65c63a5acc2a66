// Copyright 2026 The superdiv Authors
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

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace superdiv {

// ASCII lowercase; bytes >= 0x80 (UTF-8 continuation etc.) pass through.
std::string to_lower(std::string_view s);

std::string_view trim(std::string_view s);

// Splits on every occurrence of `sep`; fields are trimmed.
std::vector<std::string_view> split_fields(std::string_view line, char sep);

bool has_whitespace(std::string_view s);

std::optional<double> parse_double(std::string_view s);
std::optional<std::int64_t> parse_int(std::string_view s);

// Shortest decimal form that round-trips to the same double.
std::string format_double(double v);

// One row of a delimited text file, with its 1-based line number.
struct CsvRow {
  std::size_t line = 0;
  std::vector<std::string> fields;
};

// Minimal comma-separated reader: no quoting, blank lines and lines starting
// with '#' are skipped, CRLF endings tolerated. The first non-skipped line is
// the header. Throws DataError if the file cannot be opened.
struct CsvTable {
  std::string source;
  std::vector<std::string> header;
  std::vector<CsvRow> rows;

  // Index of `name` in the header, if present.
  std::optional<std::size_t> column(std::string_view name) const;
};

CsvTable read_csv(const std::filesystem::path& path);

// Reads all lines of a file (CR stripped). Throws DataError if unreadable.
std::vector<std::string> read_lines(const std::filesystem::path& path);

// 64-bit FNV-1a, used for manifest digests.
std::uint64_t fnv1a64(std::string_view bytes,
                      std::uint64_t seed = 0xcbf29ce484222325ULL);
std::string hex64(std::uint64_t v);

}  // namespace superdiv
