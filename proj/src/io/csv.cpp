#include "hdw/io/csv.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <string_view>
#include <vector>

#include "hdw/io/format.hpp"

namespace hdw::io {

Layout parse_layout(const std::string& name) {
  if (name == "rows_are_time") return Layout::rows_are_time;
  if (name == "rows_are_coords") return Layout::rows_are_coords;
  throw ParameterError("unknown layout '" + name + "' (expected rows_are_time or rows_are_coords)");
}

Eigen::MatrixXd read_table(std::istream& in, char delimiter, bool has_header) {
  std::vector<double> values;
  Index cols = -1;
  Index rows = 0;
  std::string line;
  long line_no = 0;
  bool header_pending = has_header;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    if (header_pending) {
      header_pending = false;
      continue;
    }
    Index count = 0;
    std::string_view rest(line);
    while (true) {
      const auto pos = rest.find(delimiter);
      const std::string_view field = rest.substr(0, pos);
      try {
        values.push_back(parse_double(field));
      } catch (const ParameterError& e) {
        throw ParameterError("line " + std::to_string(line_no) + ": " + e.what());
      }
      ++count;
      if (pos == std::string_view::npos) break;
      rest.remove_prefix(pos + 1);
    }
    if (cols < 0) cols = count;
    if (count != cols) {
      throw ParameterError("line " + std::to_string(line_no) + ": expected " + std::to_string(cols) +
                           " fields, found " + std::to_string(count));
    }
    ++rows;
  }
  if (rows == 0) throw ParameterError("no data rows found");
  Eigen::MatrixXd m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) m(i, j) = values[static_cast<std::size_t>(i * cols + j)];
  }
  return m;
}

stats::TimeSeriesSample read_sample(const DataFileSpec& spec) {
  std::ifstream in(spec.path);
  if (!in) throw ParameterError("cannot open data file '" + spec.path + "'");
  Eigen::MatrixXd table = read_table(in, spec.delimiter, spec.has_header);
  if (spec.layout == Layout::rows_are_time) table.transposeInPlace();
  return stats::TimeSeriesSample(std::move(table));
}

void write_sample(std::ostream& out, const Eigen::MatrixXd& X, Layout layout, char delimiter) {
  const Eigen::MatrixXd m = layout == Layout::rows_are_time ? Eigen::MatrixXd(X.transpose()) : X;
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      if (j > 0) out << delimiter;
      out << format_double(m(i, j));
    }
    out << '\n';
  }
}

}  // namespace hdw::io
