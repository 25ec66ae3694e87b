#pragma once

#include <span>
#include <string>
#include <string_view>

#include "harmconv/verify.hpp"

namespace harmconv {

// 17 significant digits, '.' decimal separator.
std::string format_real(double v);

inline constexpr std::string_view kReportHeader =
    "check_name,verdict,margin,witness_re,witness_im,value,grid";
inline constexpr std::string_view kCoefficientHeader = "index,h_re,h_im,g_re,g_im";

std::string report_csv_row(const VerificationReport& r);
// Header plus one LF-terminated row per report.
std::string reports_to_csv(std::span<const VerificationReport> reports);

std::string coefficient_table_csv(const HarmonicMap& f);
// Inverse of coefficient_table_csv. Throws ParseError naming the line.
HarmonicMap parse_coefficient_table(std::string_view text);

}  // namespace harmconv
