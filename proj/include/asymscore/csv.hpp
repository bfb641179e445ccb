// Copyright 2026 The asymscore Authors
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

// Minimal RFC 4180 style CSV reading and writing.

#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace asymscore::csv {

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  /// 1-based source line of each row, for error messages.
  std::vector<std::size_t> lines;

  /// Column index by name; throws DataError when absent.
  std::size_t column(const std::string& name) const;
  /// Throws DataError unless every name is a column.
  void require_columns(const std::vector<std::string>& names) const;
};

/// Splits one record; quoted fields may contain commas and doubled quotes.
std::vector<std::string> split_record(const std::string& line);

Table read(std::istream& in);
Table read_file(const std::string& path);

/// Shortest round-trip friendly representation ("%.17g", with inf / nan
/// spelled out).
std::string format_number(double v);

/// Parses a finite or infinite double; throws DataError on trailing junk.
double parse_number(const std::string& text, const std::string& what);
long parse_integer(const std::string& text, const std::string& what);

class Writer {
 public:
  explicit Writer(std::ostream& out) : out_(out) {}
  void row(const std::vector<std::string>& fields);

 private:
  std::ostream& out_;
};

std::string quote(const std::string& field);

}  // namespace asymscore::csv
