// Copyright 2026 The qetsim Authors
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

#include "qetsim_cli/toml.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

namespace qet::cli {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(std::size_t line, const std::string& msg) {
    throw ConfigError("config line " + std::to_string(line) + ": " + msg);
}

// Removes a trailing comment, leaving '#' inside strings alone.
std::string strip_comment(const std::string& s) {
    bool in_string = false;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '\\' && in_string) {
            ++i;
        } else if (s[i] == '"') {
            in_string = !in_string;
        } else if (s[i] == '#' && !in_string) {
            return s.substr(0, i);
        }
    }
    return s;
}

bool valid_key_part(const std::string& k) {
    if (k.empty()) return false;
    for (char c : k) {
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-') return false;
    }
    return true;
}

std::string parse_key(const std::string& raw, std::size_t line) {
    std::string out;
    std::stringstream ss(raw);
    std::string part;
    while (std::getline(ss, part, '.')) {
        part = trim(part);
        if (!valid_key_part(part)) fail(line, "invalid key '" + trim(raw) + "'");
        if (!out.empty()) out += '.';
        out += part;
    }
    if (out.empty() || raw.back() == '.') fail(line, "invalid key '" + trim(raw) + "'");
    return out;
}

std::optional<double> parse_number(std::string s) {
    std::string digits;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '_') {
            const bool between = i > 0 && i + 1 < s.size() && std::isdigit(static_cast<unsigned char>(s[i - 1])) &&
                                 std::isdigit(static_cast<unsigned char>(s[i + 1]));
            if (!between) return std::nullopt;
            continue;
        }
        digits += s[i];
    }
    if (!digits.empty() && digits.front() == '+') digits.erase(0, 1);
    if (digits.empty() || !(std::isdigit(static_cast<unsigned char>(digits.front())) || digits.front() == '-' ||
                            digits.front() == '.')) {
        return std::nullopt;
    }
    double v = 0.0;
    const auto* end = digits.data() + digits.size();
    const auto [ptr, ec] = std::from_chars(digits.data(), end, v);
    if (ec != std::errc() || ptr != end) return std::nullopt;
    return v;
}

TomlValue parse_value(const std::string& raw, std::size_t line) {
    const std::string s = trim(raw);
    if (s.empty()) fail(line, "missing value");
    if (s == "true") return true;
    if (s == "false") return false;
    if (s.front() == '"') {
        std::string out;
        std::size_t i = 1;
        for (; i < s.size() && s[i] != '"'; ++i) {
            if (s[i] == '\\') {
                if (i + 1 >= s.size() || (s[i + 1] != '"' && s[i + 1] != '\\')) fail(line, "unsupported escape");
                ++i;
            }
            out += s[i];
        }
        if (i != s.size() - 1) fail(line, "malformed string");
        return out;
    }
    if (s.front() == '[') {
        if (s.back() != ']') fail(line, "arrays must close on the same line");
        std::vector<double> out;
        std::stringstream ss(s.substr(1, s.size() - 2));
        std::string item;
        while (std::getline(ss, item, ',')) {
            item = trim(item);
            if (item.empty()) continue;
            const auto v = parse_number(item);
            if (!v) fail(line, "arrays may only hold numbers");
            out.push_back(*v);
        }
        return out;
    }
    if (const auto v = parse_number(s)) return *v;
    fail(line, "unsupported value '" + s + "'");
}

}  // namespace

TomlDocument TomlDocument::parse(const std::string& text) {
    TomlDocument doc;
    std::string table;
    std::stringstream in(text);
    std::string raw;
    std::size_t line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const std::string s = trim(strip_comment(raw));
        if (s.empty()) continue;
        if (s.front() == '[') {
            if (s.size() < 3 || s.back() != ']' || s[1] == '[') fail(line, "malformed table header");
            table = parse_key(s.substr(1, s.size() - 2), line);
            continue;
        }
        const auto eq = s.find('=');
        if (eq == std::string::npos) fail(line, "expected key = value");
        const std::string key = (table.empty() ? "" : table + ".") + parse_key(s.substr(0, eq), line);
        if (doc.values_.count(key)) fail(line, "duplicate key '" + key + "'");
        doc.values_.emplace(key, parse_value(s.substr(eq + 1), line));
    }
    return doc;
}

TomlDocument TomlDocument::load(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot read config file '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    return parse(ss.str());
}

const TomlValue* TomlDocument::find(const std::string& key) const {
    const auto it = values_.find(key);
    if (it == values_.end()) return nullptr;
    used_[key] = true;
    return &it->second;
}

std::optional<double> TomlDocument::number(const std::string& key) const {
    const auto* v = find(key);
    if (!v) return std::nullopt;
    if (const auto* d = std::get_if<double>(v)) return *d;
    throw ConfigError("config key '" + key + "' must be a number");
}

std::optional<bool> TomlDocument::boolean(const std::string& key) const {
    const auto* v = find(key);
    if (!v) return std::nullopt;
    if (const auto* b = std::get_if<bool>(v)) return *b;
    throw ConfigError("config key '" + key + "' must be true or false");
}

std::optional<std::string> TomlDocument::string(const std::string& key) const {
    const auto* v = find(key);
    if (!v) return std::nullopt;
    if (const auto* s = std::get_if<std::string>(v)) return *s;
    throw ConfigError("config key '" + key + "' must be a string");
}

std::optional<std::vector<double>> TomlDocument::number_array(const std::string& key) const {
    const auto* v = find(key);
    if (!v) return std::nullopt;
    if (const auto* a = std::get_if<std::vector<double>>(v)) return *a;
    throw ConfigError("config key '" + key + "' must be an array of numbers");
}

std::vector<std::string> TomlDocument::unused_keys() const {
    std::vector<std::string> out;
    for (const auto& [key, value] : values_) {
        if (!used_.count(key)) out.push_back(key);
    }
    return out;
}

}  // namespace qet::cli
