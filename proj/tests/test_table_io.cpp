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

#include <doctest.h>

#include "gyro/error.hpp"
#include "gyro/search.hpp"
#include "gyro/table_io.hpp"

using namespace gyro;

namespace {

std::size_t line_of(const std::string& text) {
    try {
        parse_table_text(text);
    } catch (const ParseError& e) {
        return e.line();
    }
    return 0;
}

}  // namespace

TEST_CASE("text tables round-trip") {
    for (std::size_t n : {1u, 2u, 5u, 8u})
        for (const auto& t : search_small(n).tables) {
            const std::string text = write_table_text(t, {{"name", t.name()}, {"source", "search"}});
            const auto back = parse_table_text(text);
            CHECK(back.table == t);
            CHECK(back.table.name() == t.name());
            CHECK(back.metadata.at("source") == "search");
            CHECK(write_table_text(back.table, back.metadata) == text);
        }
}

TEST_CASE("JSON tables round-trip") {
    const auto t = CayleyTable::klein_four();
    const std::string text = write_table_json(t, {{"name", "V4"}});
    const auto back = parse_table_json(text);
    CHECK(back.table == t);
    CHECK(back.metadata.at("name") == "V4");
}

TEST_CASE("text format") {
    const auto f = parse_table_text("gyrotable v1 n=2\n# name: Z2\n0 1\n1 0\n");
    CHECK(f.table == CayleyTable::cyclic(2));
    CHECK(f.table.name() == "Z2");
    CHECK(write_table_text(CayleyTable::from_rows({{0, 1}, {1, 0}})) == "gyrotable v1 n=2\n0 1\n1 0\n");
}

TEST_CASE("parse errors carry positions") {
    CHECK(line_of("gyrotab v1 n=2\n0 1\n1 0\n") == 1u);
    CHECK(line_of("gyrotable v2 n=2\n0 1\n1 0\n") == 1u);
    CHECK(line_of("gyrotable v1 n=x\n0 1\n1 0\n") == 1u);
    CHECK(line_of("gyrotable v1 n=2\n0 1\n1 2\n") == 3u);
    CHECK(line_of("gyrotable v1 n=2\n0 1\n1 0 1\n") == 3u);
    CHECK(line_of("gyrotable v1 n=2\n0 1\n1\n") == 3u);
    CHECK(line_of("gyrotable v1 n=2\n0 -1\n1 0\n") == 2u);
    CHECK(line_of("gyrotable v1 n=2\n0 1\n") != 0u);
    try {
        parse_table_text("gyrotable v1 n=3\n0 1 2\n1 2 q\n2 0 1\n");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3u);
        CHECK(e.column() == 5u);
    }
    CHECK_THROWS_AS(parse_table_json("{\"format\": \"gyrotable\", "), ParseError);
    CHECK_THROWS_AS(parse_table_json("{\"format\": \"gyrotable\", \"version\": 1, \"order\": 2, \"rows\": [[0, 1]]}"),
                    MalformedTable);
}
