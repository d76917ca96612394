#include "deauto/io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>

namespace deauto::io {

namespace {

std::string trim(const std::string& s) {
  std::size_t lo = 0, hi = s.size();
  while (lo < hi && std::isspace(static_cast<unsigned char>(s[lo]))) ++lo;
  while (hi > lo && std::isspace(static_cast<unsigned char>(s[hi - 1]))) --hi;
  return s.substr(lo, hi - lo);
}

}  // namespace

Signal read_signal_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  Signal values;
  std::string line;
  std::size_t line_no = 0;
  bool first_content = true;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string token = trim(line);
    if (token.empty()) continue;
    if (first_content) {
      first_content = false;
      if (token == "y" || token == "Y" || token == "x" || token == "X") continue;  // CSV header
    }
    std::size_t consumed = 0;
    double value = 0.0;
    try {
      value = std::stod(token, &consumed);
    } catch (const std::exception&) {
      throw ParseError(path + ":" + std::to_string(line_no) + ": not a number: '" + token + "'");
    }
    if (consumed != token.size())
      throw ParseError(path + ":" + std::to_string(line_no) + ": trailing characters in '" +
                       token + "'");
    if (!std::isfinite(value) || value < 0.0)
      throw ParseError(path + ":" + std::to_string(line_no) +
                       ": values must be finite and nonnegative, got " + token);
    values.push_back(value);
  }
  if (values.empty()) throw ParseError(path + ": no values found");
  return values;
}

std::string format_double(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

void write_column_csv(const std::string& path, const std::string& header,
                      std::span<const double> values) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path);
  if (!header.empty()) out << header << '\n';
  for (double value : values) out << format_double(value) << '\n';
}

void write_trace_csv(const std::string& path, const IterationTrace& trace) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path);
  out << "t,divergence,gain,w_gain,kkt_residual,mass\n";
  for (const TraceRecord& record : trace.records) {
    out << record.t << ',' << format_double(record.divergence) << ','
        << format_double(record.gain) << ',' << format_double(record.w_gain) << ','
        << format_double(record.kkt_residual) << ',' << format_double(record.mass) << '\n';
  }
}

}  // namespace deauto::io
