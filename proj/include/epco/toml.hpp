#pragma once

#include "epco/common.hpp"

#include <map>
#include <string>
#include <variant>
#include <vector>

namespace epco {

/// Minimal TOML subset: comments, [tables], [[arrays of tables]], and
/// key = value with strings, integers, booleans, and (nested, possibly
/// multi-line) arrays. Enough for the system schema; parse errors carry line
/// numbers.
class TomlValue {
public:
    using Array = std::vector<TomlValue>;

    TomlValue() : v_(false) {}
    explicit TomlValue(std::string s) : v_(std::move(s)) {}
    explicit TomlValue(long n) : v_(n) {}
    explicit TomlValue(bool b) : v_(b) {}
    explicit TomlValue(Array a) : v_(std::move(a)) {}

    bool is_string() const { return std::holds_alternative<std::string>(v_); }
    bool is_int() const { return std::holds_alternative<long>(v_); }
    bool is_bool() const { return std::holds_alternative<bool>(v_); }
    bool is_array() const { return std::holds_alternative<Array>(v_); }

    const std::string& as_string() const;
    long as_int() const;
    bool as_bool() const;
    const Array& as_array() const;

    /// Array of plain integers / strings, with type checks.
    std::vector<long> as_int_array() const;
    std::vector<std::string> as_string_array() const;

private:
    std::variant<std::string, long, bool, Array> v_;
};

struct TomlTable {
    std::map<std::string, TomlValue> values;
    std::map<std::string, TomlTable> tables;
    std::map<std::string, std::vector<TomlTable>> table_arrays;

    bool has(const std::string& key) const { return values.count(key) > 0; }
    const TomlValue& at(const std::string& key) const;
    const TomlTable& table(const std::string& key) const;
};

TomlTable toml_parse(const std::string& text);

} // namespace epco
