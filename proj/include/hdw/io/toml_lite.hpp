#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace hdw::io::toml {

/// The subset of TOML used by experiment files: bare keys, basic strings,
/// integers, floats, booleans, single-line arrays of those, [table] and
/// [[array-of-tables]] headers one level deep, and # comments.
struct Value {
  enum class Type { boolean, integer, floating, string, array };
  Type type = Type::integer;
  bool boolean = false;
  long long integer = 0;
  double floating = 0.0;
  std::string string;
  std::vector<Value> array;

  double as_double() const;
  long long as_int() const;
  const std::string& as_string() const;
  bool as_bool() const;
  const char* type_name() const;
};

struct Table {
  std::map<std::string, Value> values;
  std::map<std::string, Table> tables;
  std::map<std::string, std::vector<Table>> arrays;

  bool has(const std::string& key) const { return values.count(key) != 0; }
  const Value& at(const std::string& key) const;
};

/// Throws ParameterError with the offending line number on malformed input.
Table parse(std::istream& in);
Table parse_string(const std::string& text);

}  // namespace hdw::io::toml
