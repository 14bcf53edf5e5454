#pragma once

#include <string>

#include "hdw/wn/white_noise_tests.hpp"

namespace hdw::io {

/// key=value lines, one per field.
std::string to_key_value(const wn::TestReport& r);
std::string to_key_value(const wn::SimesReport& r);

/// Header and one data row; list fields are ';'-separated inside a cell.
inline constexpr const char* kTestReportHeader =
    "method,p,n,q,c_n,nu4,alpha,statistic,z_score,p_value,critical_value,reject";
inline constexpr const char* kSimesReportHeader = "method,p,n,q,c_n,nu4,alpha,statistics,p_values,reject";

std::string to_csv_row(const wn::TestReport& r);
std::string to_csv_row(const wn::SimesReport& r);

}  // namespace hdw::io
