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

#ifndef QETSIM_CLI_TOML_HPP
#define QETSIM_CLI_TOML_HPP

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace qet::cli {

/// Parse or schema error in a config file; `what()` is a single line.
class ConfigError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

using TomlValue = std::variant<double, bool, std::string, std::vector<double>>;

/// Flat view of a TOML document: keys are fully dotted ("noise.a.t1").
///
/// Supports the subset the config needs: [table] and [dotted.table] headers,
/// bare or dotted keys, decimal numbers, basic strings without escapes beyond
/// \" and \\, true/false, single-line numeric arrays and # comments.
class TomlDocument {
   public:
    static TomlDocument parse(const std::string& text);
    static TomlDocument load(const std::string& path);

    bool contains(const std::string& key) const { return values_.count(key) != 0; }
    std::optional<double> number(const std::string& key) const;
    std::optional<bool> boolean(const std::string& key) const;
    std::optional<std::string> string(const std::string& key) const;
    std::optional<std::vector<double>> number_array(const std::string& key) const;

    /// Keys never read through the accessors above.
    std::vector<std::string> unused_keys() const;

   private:
    const TomlValue* find(const std::string& key) const;

    std::map<std::string, TomlValue> values_;
    mutable std::map<std::string, bool> used_;
};

}  // namespace qet::cli

#endif  // QETSIM_CLI_TOML_HPP
