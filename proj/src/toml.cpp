#include "epco/toml.hpp"

#include <sstream>

namespace epco {

const std::string& TomlValue::as_string() const {
    require(is_string(), "TOML value is not a string");
    return std::get<std::string>(v_);
}

long TomlValue::as_int() const {
    require(is_int(), "TOML value is not an integer");
    return std::get<long>(v_);
}

bool TomlValue::as_bool() const {
    require(is_bool(), "TOML value is not a boolean");
    return std::get<bool>(v_);
}

const TomlValue::Array& TomlValue::as_array() const {
    require(is_array(), "TOML value is not an array");
    return std::get<Array>(v_);
}

std::vector<long> TomlValue::as_int_array() const {
    std::vector<long> out;
    for (const auto& v : as_array()) out.push_back(v.as_int());
    return out;
}

std::vector<std::string> TomlValue::as_string_array() const {
    std::vector<std::string> out;
    for (const auto& v : as_array()) out.push_back(v.as_string());
    return out;
}

const TomlValue& TomlTable::at(const std::string& key) const {
    auto it = values.find(key);
    require(it != values.end(), "missing TOML key '" + key + "'");
    return it->second;
}

const TomlTable& TomlTable::table(const std::string& key) const {
    auto it = tables.find(key);
    require(it != tables.end(), "missing TOML table [" + key + "]");
    return it->second;
}

namespace {

struct Cursor {
    const std::string& text;
    size_t pos = 0;
    int line = 1;

    [[noreturn]] void fail_here(const std::string& msg) const {
        fail("TOML line " + std::to_string(line) + ": " + msg);
    }
    bool done() const { return pos >= text.size(); }
    char peek() const { return text[pos]; }
    char take() {
        char c = text[pos++];
        if (c == '\n') ++line;
        return c;
    }
    /// Skips spaces, tabs, and comments; newlines only if asked.
    void skip_blank(bool cross_lines) {
        while (!done()) {
            char c = peek();
            if (c == ' ' || c == '\t' || c == '\r') {
                take();
            } else if (c == '#') {
                while (!done() && peek() != '\n') take();
            } else if (c == '\n' && cross_lines) {
                take();
            } else {
                break;
            }
        }
    }
};

std::string parse_basic_string(Cursor& c) {
    require(c.take() == '"', "internal: expected opening quote");
    std::string out;
    while (!c.done()) {
        char ch = c.take();
        if (ch == '"') return out;
        if (ch == '\n') c.fail_here("unterminated string");
        if (ch == '\\') {
            if (c.done()) c.fail_here("dangling escape");
            char e = c.take();
            switch (e) {
                case 'n': out += '\n'; break;
                case 't': out += '\t'; break;
                case '"': out += '"'; break;
                case '\\': out += '\\'; break;
                default: c.fail_here(std::string("unsupported escape \\") + e);
            }
        } else {
            out += ch;
        }
    }
    c.fail_here("unterminated string");
}

TomlValue parse_value(Cursor& c);

TomlValue parse_array(Cursor& c) {
    require(c.take() == '[', "internal: expected '['");
    TomlValue::Array items;
    c.skip_blank(true);
    while (!c.done() && c.peek() != ']') {
        items.push_back(parse_value(c));
        c.skip_blank(true);
        if (!c.done() && c.peek() == ',') {
            c.take();
            c.skip_blank(true);
        }
    }
    if (c.done()) c.fail_here("unterminated array");
    c.take();  // ']'
    return TomlValue(std::move(items));
}

TomlValue parse_value(Cursor& c) {
    c.skip_blank(false);
    if (c.done()) c.fail_here("expected a value");
    char ch = c.peek();
    if (ch == '"') return TomlValue(parse_basic_string(c));
    if (ch == '[') return parse_array(c);
    std::string word;
    while (!c.done()) {
        char w = c.peek();
        if (w == ',' || w == ']' || w == '\n' || w == '#' || w == ' ' || w == '\t' ||
            w == '\r')
            break;
        word += c.take();
    }
    if (word == "true") return TomlValue(true);
    if (word == "false") return TomlValue(false);
    try {
        size_t used = 0;
        long n = std::stol(word, &used);
        if (used == word.size()) return TomlValue(n);
    } catch (const std::exception&) {
    }
    c.fail_here("cannot parse value '" + word + "'");
}

std::vector<std::string> split_key(Cursor& c, const std::string& dotted) {
    std::vector<std::string> parts;
    std::string cur;
    for (char ch : dotted) {
        if (ch == '.') {
            if (cur.empty()) c.fail_here("empty key segment in '" + dotted + "'");
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    if (cur.empty()) c.fail_here("empty key segment in '" + dotted + "'");
    parts.push_back(cur);
    return parts;
}

TomlTable* descend(TomlTable* root, const std::vector<std::string>& parts, size_t upto) {
    TomlTable* t = root;
    for (size_t i = 0; i < upto; ++i) {
        auto& arr = t->table_arrays;
        auto ai = arr.find(parts[i]);
        if (ai != arr.end()) {
            t = &ai->second.back();
        } else {
            t = &t->tables[parts[i]];
        }
    }
    return t;
}

} // namespace

TomlTable toml_parse(const std::string& text) {
    TomlTable root;
    TomlTable* current = &root;
    Cursor c{text};

    while (true) {
        c.skip_blank(true);
        if (c.done()) break;
        if (c.peek() == '[') {
            c.take();
            bool is_array = !c.done() && c.peek() == '[';
            if (is_array) c.take();
            std::string name;
            while (!c.done() && c.peek() != ']') name += c.take();
            if (c.done()) c.fail_here("unterminated table header");
            c.take();
            if (is_array) {
                if (c.done() || c.take() != ']') c.fail_here("expected ']]'");
            }
            while (!name.empty() && (name.back() == ' ' || name.back() == '\t'))
                name.pop_back();
            auto parts = split_key(c, name);
            TomlTable* parent = descend(&root, parts, parts.size() - 1);
            if (is_array) {
                parent->table_arrays[parts.back()].emplace_back();
                current = &parent->table_arrays[parts.back()].back();
            } else {
                current = &parent->tables[parts.back()];
            }
            continue;
        }
        // key = value
        std::string key;
        while (!c.done() && c.peek() != '=' && c.peek() != '\n') key += c.take();
        while (!key.empty() && (key.back() == ' ' || key.back() == '\t')) key.pop_back();
        if (c.done() || c.peek() != '=') c.fail_here("expected '=' after key '" + key + "'");
        if (key.empty()) c.fail_here("empty key");
        c.take();
        TomlValue v = parse_value(c);
        if (current->values.count(key)) c.fail_here("duplicate key '" + key + "'");
        current->values.emplace(key, std::move(v));
        c.skip_blank(false);
        if (!c.done() && c.peek() != '\n') c.fail_here("trailing characters after value");
    }
    return root;
}

} // namespace epco
