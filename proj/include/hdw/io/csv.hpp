#pragma once

#include <iosfwd>
#include <string>

#include "hdw/core.hpp"
#include "hdw/stats/autocov.hpp"

namespace hdw::io {

enum class Layout { rows_are_time, rows_are_coords };

Layout parse_layout(const std::string& name);

struct DataFileSpec {
  std::string path;
  Layout layout = Layout::rows_are_time;
  char delimiter = ',';
  bool has_header = false;
};

/// Rectangular numeric table, one record per line. Blank lines are skipped.
Eigen::MatrixXd read_table(std::istream& in, char delimiter, bool has_header);

/// Reads the file into a p x n sample (transposing rows_are_time input).
stats::TimeSeriesSample read_sample(const DataFileSpec& spec);

/// Writes X in the given layout with round-trip number formatting.
void write_sample(std::ostream& out, const Eigen::MatrixXd& X, Layout layout, char delimiter = ',');

}  // namespace hdw::io
