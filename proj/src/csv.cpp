#include "harmconv/csv.hpp"

#include <charconv>
#include <cstdio>
#include <vector>

#include "harmconv/errors.hpp"

namespace harmconv {

namespace {

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    out.push_back(line.substr(start, pos - start));
    if (pos == std::string_view::npos)
      break;
    start = pos + 1;
  }
  return out;
}

double parse_field(std::string_view s, std::size_t line) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw ParseError("coefficient table line " + std::to_string(line) + ": bad number '" +
                     std::string(s) + "'");
  return v;
}

}  // namespace

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string report_csv_row(const VerificationReport& r) {
  std::string s = r.check_name;
  s += ',';
  s += verdict_name(r.verdict);
  for (double v : {r.margin, r.worst_witness.z.real(), r.worst_witness.z.imag(),
                   r.worst_witness.value}) {
    s += ',';
    s += format_real(v);
  }
  s += ',';
  s += r.grid.describe();
  return s;
}

std::string reports_to_csv(std::span<const VerificationReport> reports) {
  std::string s(kReportHeader);
  s += '\n';
  for (const auto& r : reports) {
    s += report_csv_row(r);
    s += '\n';
  }
  return s;
}

std::string coefficient_table_csv(const HarmonicMap& f) {
  std::string s(kCoefficientHeader);
  s += '\n';
  const std::size_t n = std::min(f.h.size(), f.g.size());
  for (std::size_t k = 0; k < n; ++k) {
    s += std::to_string(k);
    for (double v : {f.h[k].real(), f.h[k].imag(), f.g[k].real(), f.g[k].imag()}) {
      s += ',';
      s += format_real(v);
    }
    s += '\n';
  }
  return s;
}

HarmonicMap parse_coefficient_table(std::string_view text) {
  std::vector<Complex> h, g;
  std::size_t line_no = 0;
  bool header = false;
  for (auto line : split(text, '\n')) {
    ++line_no;
    if (!line.empty() && line.back() == '\r')
      line.remove_suffix(1);
    if (line.empty())
      continue;
    if (!header) {
      if (line != kCoefficientHeader)
        throw ParseError("coefficient table line " + std::to_string(line_no) +
                         ": expected header '" + std::string(kCoefficientHeader) + "'");
      header = true;
      continue;
    }
    const auto fields = split(line, ',');
    if (fields.size() != 5)
      throw ParseError("coefficient table line " + std::to_string(line_no) +
                       ": expected 5 fields, got " + std::to_string(fields.size()));
    const double index = parse_field(fields[0], line_no);
    if (index != double(h.size()))
      throw ParseError("coefficient table line " + std::to_string(line_no) + ": expected index " +
                       std::to_string(h.size()));
    h.emplace_back(parse_field(fields[1], line_no), parse_field(fields[2], line_no));
    g.emplace_back(parse_field(fields[3], line_no), parse_field(fields[4], line_no));
  }
  if (!header)
    throw ParseError("coefficient table is empty");
  if (h.size() < 2)
    throw InvalidOrderError("coefficient table needs at least indices 0 and 1");
  return {TruncatedSeries(std::move(h)), TruncatedSeries(std::move(g))};
}

}  // namespace harmconv
