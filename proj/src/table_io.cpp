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

#include "gyro/table_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "gyro/error.hpp"

namespace gyro {

namespace {

constexpr std::size_t max_order = 1u << 12;

struct Token {
    std::string_view text;
    std::size_t column;
};

std::vector<Token> tokenize(std::string_view line) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        const std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
        if (i > start) out.push_back({line.substr(start, i - start), start + 1});
    }
    return out;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

bool parse_size(std::string_view s, std::size_t& out) {
    if (s.empty()) return false;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && p == s.data() + s.size();
}

void parse_metadata(std::string_view body, std::map<std::string, std::string>& meta) {
    body = trim(body);
    const auto colon = body.find(':');
    if (colon == std::string_view::npos) return;
    const auto key = trim(body.substr(0, colon));
    if (key.empty()) return;
    meta[std::string(key)] = std::string(trim(body.substr(colon + 1)));
}

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t offset) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

}  // namespace

TableFile parse_table_text(std::string_view text) {
    TableFile out;
    std::size_t n = 0;
    bool have_header = false;
    std::vector<std::vector<Index>> rows;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t end = std::min(text.find('\n', pos), text.size());
        const std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        const std::string_view body = trim(line);
        if (body.empty()) {
            if (end == text.size()) break;
            continue;
        }
        if (body.front() == '#') {
            parse_metadata(body.substr(1), out.metadata);
            continue;
        }
        const auto tokens = tokenize(line);
        if (!have_header) {
            if (tokens.size() != 3 || tokens[0].text != "gyrotable")
                throw ParseError("expected header 'gyrotable v1 n=<order>'", line_no, tokens[0].column);
            if (tokens[1].text != "v1")
                throw ParseError("unsupported format version '" + std::string(tokens[1].text) + "'", line_no,
                                 tokens[1].column);
            const auto nt = tokens[2].text;
            if (nt.substr(0, 2) != "n=" || !parse_size(nt.substr(2), n) || n == 0 || n > max_order)
                throw ParseError("expected n=<order> with 1 <= order <= " + std::to_string(max_order), line_no,
                                 tokens[2].column);
            have_header = true;
            continue;
        }
        if (rows.size() == n)
            throw ParseError("unexpected content after " + std::to_string(n) + " rows", line_no, tokens[0].column);
        std::vector<Index> row;
        for (const auto& tok : tokens) {
            if (row.size() == n)
                throw ParseError("row " + std::to_string(rows.size()) + " has more than " + std::to_string(n) +
                                     " entries",
                                 line_no, tok.column);
            std::size_t v = 0;
            if (!parse_size(tok.text, v))
                throw ParseError("expected a non-negative integer, got '" + std::string(tok.text) + "'", line_no,
                                 tok.column);
            if (v >= n)
                throw ParseError("entry " + std::to_string(v) + " is out of range for order " + std::to_string(n),
                                 line_no, tok.column);
            row.push_back(static_cast<Index>(v));
        }
        if (row.size() < n)
            throw ParseError("row " + std::to_string(rows.size()) + " has " + std::to_string(row.size()) +
                                 " entries, expected " + std::to_string(n),
                             line_no, line.size() + 1);
        rows.push_back(std::move(row));
        if (end == text.size()) break;
    }
    if (!have_header) throw ParseError("missing header 'gyrotable v1 n=<order>'", 1, 1);
    if (rows.size() < n)
        throw ParseError("expected " + std::to_string(n) + " rows, found " + std::to_string(rows.size()), line_no, 1);
    out.table = CayleyTable::from_rows(rows);
    if (auto it = out.metadata.find("name"); it != out.metadata.end()) out.table.set_name(it->second);
    return out;
}

std::string write_table_text(const CayleyTable& t, const std::map<std::string, std::string>& metadata) {
    std::ostringstream os;
    os << "gyrotable v1 n=" << t.order() << '\n';
    auto meta = metadata;
    if (!t.name().empty()) meta.emplace("name", t.name());
    for (const auto& [k, v] : meta) os << "# " << k << ": " << v << '\n';
    for (Index a = 0; a < t.order(); ++a) {
        for (Index b = 0; b < t.order(); ++b) os << (b ? " " : "") << t.at(a, b);
        os << '\n';
    }
    return os.str();
}

TableFile parse_table_json(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text.begin(), text.end());
    } catch (const nlohmann::json::parse_error& e) {
        const auto [line, col] = line_column(text, e.byte == 0 ? 0 : e.byte - 1);
        throw ParseError("invalid JSON", line, col);
    }
    if (!j.is_object() || j.value("format", "") != "gyrotable" || j.value("version", 0) != 1)
        throw MalformedTable("JSON table must have format \"gyrotable\" and version 1");
    if (!j.contains("order") || !j["order"].is_number_unsigned() || !j.contains("rows") || !j["rows"].is_array())
        throw MalformedTable("JSON table needs an unsigned \"order\" and a \"rows\" array");
    const auto n = j["order"].get<std::size_t>();
    if (n == 0 || n > max_order) throw MalformedTable("order out of range");
    if (j["rows"].size() != n) throw MalformedTable("expected " + std::to_string(n) + " rows");
    std::vector<std::vector<Index>> rows;
    for (const auto& r : j["rows"]) {
        if (!r.is_array() || r.size() != n)
            throw MalformedTable("row " + std::to_string(rows.size()) + " must have " + std::to_string(n) + " entries");
        std::vector<Index> row;
        for (const auto& v : r) {
            if (!v.is_number_unsigned() || v.get<std::size_t>() >= n)
                throw MalformedTable("row " + std::to_string(rows.size()) + " has an entry out of range");
            row.push_back(v.get<Index>());
        }
        rows.push_back(std::move(row));
    }
    TableFile out;
    out.table = CayleyTable::from_rows(rows);
    if (j.contains("metadata") && j["metadata"].is_object())
        for (const auto& [k, v] : j["metadata"].items())
            if (v.is_string()) out.metadata[k] = v.get<std::string>();
    if (auto it = out.metadata.find("name"); it != out.metadata.end()) out.table.set_name(it->second);
    return out;
}

std::string write_table_json(const CayleyTable& t, const std::map<std::string, std::string>& metadata) {
    nlohmann::ordered_json j;
    j["format"] = "gyrotable";
    j["version"] = 1;
    j["order"] = t.order();
    auto meta = metadata;
    if (!t.name().empty()) meta.emplace("name", t.name());
    j["metadata"] = meta;
    j["rows"] = t.rows();
    return j.dump(2) + "\n";
}

TableFile load_table(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    const std::string text = ss.str();
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') return parse_table_json(text);
    return parse_table_text(text);
}

void save_table(const std::string& path, const CayleyTable& t, const std::map<std::string, std::string>& metadata) {
    const bool json = path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path);
    out << (json ? write_table_json(t, metadata) : write_table_text(t, metadata));
}

}  // namespace gyro
