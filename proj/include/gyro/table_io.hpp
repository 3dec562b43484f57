/*
   Copyright 2026 The gyrokit Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef GYRO_TABLE_IO_HPP
#define GYRO_TABLE_IO_HPP

#include <map>
#include <string>
#include <string_view>

#include "gyro/finite.hpp"

namespace gyro {

/**
 * Plain-text table format:
 *
 *     gyrotable v1 n=4
 *     # name: Z4
 *     0 1 2 3
 *     1 2 3 0
 *     ...
 *
 * Lines starting with '#' hold optional "key: value" metadata; blank
 * lines are ignored. Row a lists a (+) 0, ..., a (+) (n-1).
 */
struct TableFile {
    CayleyTable table;
    std::map<std::string, std::string> metadata;
};

/// Throws ParseError with the 1-based line and column of the offending token.
TableFile parse_table_text(std::string_view text);
std::string write_table_text(const CayleyTable& t, const std::map<std::string, std::string>& metadata = {});

/// JSON mirror: {"format": "gyrotable", "version": 1, "order": n, "rows": [[...]], "metadata": {...}}.
TableFile parse_table_json(std::string_view text);
std::string write_table_json(const CayleyTable& t, const std::map<std::string, std::string>& metadata = {});

/// Reads either format; a first non-blank character '{' selects JSON.
TableFile load_table(const std::string& path);
void save_table(const std::string& path, const CayleyTable& t,
                const std::map<std::string, std::string>& metadata = {});

}  // namespace gyro

#endif  // GYRO_TABLE_IO_HPP
