#include "hdw/io/reports.hpp"

#include <sstream>
#include <vector>

#include "hdw/io/format.hpp"

namespace hdw::io {

namespace {

std::string join(const std::vector<double>& v, char sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i > 0) out += sep;
    out += format_double(v[i]);
  }
  return out;
}

void params_kv(std::ostringstream& os, const wn::TestParams& p) {
  os << "method=" << p.method << '\n'
     << "p=" << p.p << '\n'
     << "n=" << p.n << '\n'
     << "q=" << p.q << '\n'
     << "c_n=" << format_double(p.c_n) << '\n'
     << "nu4=" << format_double(p.nu4) << '\n'
     << "alpha=" << format_double(p.alpha) << '\n';
}

void params_csv(std::ostringstream& os, const wn::TestParams& p) {
  os << p.method << ',' << p.p << ',' << p.n << ',' << p.q << ',' << format_double(p.c_n) << ','
     << format_double(p.nu4) << ',' << format_double(p.alpha);
}

}  // namespace

std::string to_key_value(const wn::TestReport& r) {
  std::ostringstream os;
  params_kv(os, r.params);
  os << "statistic=" << format_double(r.statistic) << '\n'
     << "z_score=" << format_double(r.z_score) << '\n'
     << "p_value=" << format_double(r.p_value) << '\n'
     << "critical_value=" << format_double(r.critical_value) << '\n'
     << "reject=" << (r.reject ? "true" : "false") << '\n';
  return os.str();
}

std::string to_key_value(const wn::SimesReport& r) {
  std::ostringstream os;
  params_kv(os, r.params);
  os << "statistics=" << join(r.statistics, ';') << '\n'
     << "p_values=" << join(r.p_values, ';') << '\n'
     << "sorted=" << join(r.sorted, ';') << '\n'
     << "reject=" << (r.reject ? "true" : "false") << '\n';
  return os.str();
}

std::string to_csv_row(const wn::TestReport& r) {
  std::ostringstream os;
  params_csv(os, r.params);
  os << ',' << format_double(r.statistic) << ',' << format_double(r.z_score) << ',' << format_double(r.p_value)
     << ',' << format_double(r.critical_value) << ',' << (r.reject ? 1 : 0);
  return os.str();
}

std::string to_csv_row(const wn::SimesReport& r) {
  std::ostringstream os;
  params_csv(os, r.params);
  os << ',' << join(r.statistics, ';') << ',' << join(r.p_values, ';') << ',' << (r.reject ? 1 : 0);
  return os.str();
}

}  // namespace hdw::io
