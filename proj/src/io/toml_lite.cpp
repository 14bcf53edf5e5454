#include "hdw/io/toml_lite.hpp"

#include <cctype>
#include <istream>
#include <sstream>
#include <string_view>

#include "hdw/core.hpp"
#include "hdw/io/format.hpp"

namespace hdw::io::toml {

namespace {

class LineParser {
 public:
  LineParser(std::string_view text, long line_no) : s_(text), line_(line_no) {}

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParameterError("TOML line " + std::to_string(line_) + ": " + msg);
  }

  void skip_ws() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t')) ++pos_;
  }

  bool at_end_or_comment() {
    skip_ws();
    return pos_ >= s_.size() || s_[pos_] == '#';
  }

  std::string key() {
    skip_ws();
    const std::size_t start = pos_;
    auto bare = [](char ch) { return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '-'; };
    while (pos_ < s_.size() && bare(s_[pos_])) {
      ++pos_;
    }
    if (start == pos_) fail("expected a bare key");
    return std::string(s_.substr(start, pos_ - start));
  }

  void expect(char ch) {
    skip_ws();
    if (pos_ >= s_.size() || s_[pos_] != ch) fail(std::string("expected '") + ch + "'");
    ++pos_;
  }

  Value value() {
    skip_ws();
    if (pos_ >= s_.size()) fail("missing value");
    const char ch = s_[pos_];
    if (ch == '"') return string_value();
    if (ch == '[') return array_value();
    return scalar_value();
  }

 private:
  Value string_value() {
    ++pos_;
    Value v;
    v.type = Value::Type::string;
    while (pos_ < s_.size() && s_[pos_] != '"') {
      char ch = s_[pos_++];
      if (ch == '\\') {
        if (pos_ >= s_.size()) fail("unterminated escape");
        const char e = s_[pos_++];
        switch (e) {
          case 'n': ch = '\n'; break;
          case 't': ch = '\t'; break;
          case '"': ch = '"'; break;
          case '\\': ch = '\\'; break;
          default: fail(std::string("unsupported escape \\") + e);
        }
      }
      v.string += ch;
    }
    if (pos_ >= s_.size()) fail("unterminated string");
    ++pos_;
    return v;
  }

  Value array_value() {
    ++pos_;
    Value v;
    v.type = Value::Type::array;
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == ']') {
      ++pos_;
      return v;
    }
    while (true) {
      v.array.push_back(value());
      if (v.array.back().type == Value::Type::array) fail("nested arrays are not supported");
      skip_ws();
      if (pos_ >= s_.size()) fail("unterminated array (arrays must fit on one line)");
      if (s_[pos_] == ',') {
        ++pos_;
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == ']') {
          ++pos_;
          return v;
        }
        continue;
      }
      if (s_[pos_] == ']') {
        ++pos_;
        return v;
      }
      fail("expected ',' or ']' in array");
    }
  }

  Value scalar_value() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && s_[pos_] != ',' && s_[pos_] != ']' && s_[pos_] != '#' && s_[pos_] != ' ' &&
           s_[pos_] != '\t') {
      ++pos_;
    }
    std::string tok(s_.substr(start, pos_ - start));
    Value v;
    if (tok == "true" || tok == "false") {
      v.type = Value::Type::boolean;
      v.boolean = tok == "true";
      return v;
    }
    std::string digits;
    for (char ch : tok) {
      if (ch != '_') digits += ch;
    }
    const bool is_float = digits.find_first_of(".eE") != std::string::npos || digits == "inf" ||
                          digits == "+inf" || digits == "-inf" || digits == "nan";
    try {
      if (is_float) {
        v.type = Value::Type::floating;
        v.floating = parse_double(digits);
      } else {
        v.type = Value::Type::integer;
        v.integer = parse_int(digits);
      }
    } catch (const ParameterError&) {
      fail("cannot parse value '" + tok + "'");
    }
    return v;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  long line_;
};

}  // namespace

double Value::as_double() const {
  if (type == Type::floating) return floating;
  if (type == Type::integer) return static_cast<double>(integer);
  throw ParameterError(std::string("expected a number, found ") + type_name());
}

long long Value::as_int() const {
  if (type == Type::integer) return integer;
  throw ParameterError(std::string("expected an integer, found ") + type_name());
}

const std::string& Value::as_string() const {
  if (type == Type::string) return string;
  throw ParameterError(std::string("expected a string, found ") + type_name());
}

bool Value::as_bool() const {
  if (type == Type::boolean) return boolean;
  throw ParameterError(std::string("expected a boolean, found ") + type_name());
}

const char* Value::type_name() const {
  switch (type) {
    case Type::boolean: return "boolean";
    case Type::integer: return "integer";
    case Type::floating: return "float";
    case Type::string: return "string";
    case Type::array: return "array";
  }
  return "value";
}

const Value& Table::at(const std::string& key) const {
  const auto it = values.find(key);
  if (it == values.end()) throw ParameterError("missing key '" + key + "'");
  return it->second;
}

Table parse(std::istream& in) {
  Table root;
  Table* current = &root;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    LineParser lp(line, line_no);
    if (lp.at_end_or_comment()) continue;
    const auto first = line.find_first_not_of(" \t");
    if (line.compare(first, 2, "[[") == 0) {
      const auto close = line.find("]]", first);
      if (close == std::string::npos) lp.fail("unterminated [[table]] header");
      LineParser name(std::string_view(line).substr(first + 2, close - first - 2), line_no);
      const std::string key = name.key();
      if (!name.at_end_or_comment()) name.fail("dotted or quoted table names are not supported");
      if (root.values.count(key) || root.tables.count(key)) lp.fail("'" + key + "' is already defined");
      auto& arr = root.arrays[key];
      arr.emplace_back();
      current = &arr.back();
      LineParser tail(std::string_view(line).substr(close + 2), line_no);
      if (!tail.at_end_or_comment()) tail.fail("unexpected text after header");
      continue;
    }
    if (line[first] == '[') {
      const auto close = line.find(']', first);
      if (close == std::string::npos) lp.fail("unterminated [table] header");
      LineParser name(std::string_view(line).substr(first + 1, close - first - 1), line_no);
      const std::string key = name.key();
      if (!name.at_end_or_comment()) name.fail("dotted or quoted table names are not supported");
      if (root.values.count(key) || root.tables.count(key) || root.arrays.count(key)) {
        lp.fail("'" + key + "' is already defined");
      }
      current = &root.tables[key];
      LineParser tail(std::string_view(line).substr(close + 1), line_no);
      if (!tail.at_end_or_comment()) tail.fail("unexpected text after header");
      continue;
    }
    const std::string key = lp.key();
    lp.expect('=');
    Value v = lp.value();
    if (!lp.at_end_or_comment()) lp.fail("unexpected text after value");
    if (current->values.count(key)) lp.fail("duplicate key '" + key + "'");
    current->values.emplace(key, std::move(v));
  }
  return root;
}

Table parse_string(const std::string& text) {
  std::istringstream is(text);
  return parse(is);
}

}  // namespace hdw::io::toml
