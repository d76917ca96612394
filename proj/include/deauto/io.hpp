#pragma once

#include <span>
#include <stdexcept>
#include <string>

#include "deauto/algorithm.hpp"
#include "deauto/signal.hpp"

namespace deauto::io {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Reads one nonnegative real per line. A first line of "y" or "x" (a CSV
/// header) is skipped; blank lines are ignored. Throws ParseError with the
/// offending line number on bad input.
Signal read_signal_file(const std::string& path);

/// %.17g: enough digits for exact double round trips.
std::string format_double(double value);

/// Single-column CSV with a header line.
void write_column_csv(const std::string& path, const std::string& header,
                      std::span<const double> values);

/// Columns: t,divergence,gain,w_gain,kkt_residual,mass. One row per record,
/// including t = 0.
void write_trace_csv(const std::string& path, const IterationTrace& trace);

}  // namespace deauto::io
