#include "deauto/reference.hpp"

#include <cmath>
#include <stdexcept>

namespace deauto::reference {

namespace {

void require_nonnegative(double value, const char* name) {
  if (!(value >= 0.0)) throw std::invalid_argument(std::string(name) + " must be >= 0");
}

}  // namespace

SmallCaseSolution solve_n1(double y0, double y1) {
  require_nonnegative(y0, "y0");
  require_nonnegative(y1, "y1");
  SmallCaseSolution out;
  if (y0 == 0.0 && y1 == 0.0) {
    out.x = {0.0, 0.0};
    out.unique = false;
    out.boundary = true;
    out.note = "minimum value 0 attained at x0 = 0 with arbitrary x1";
  } else if (y0 == 0.0) {
    out.attained = false;
    out.unique = false;
    out.note = "infimum not attained: x0 -> 0 with x1 = y1/(2 x0) -> inf drives the "
               "objective to 0 without reaching it";
    return out;
  } else if (y1 == 0.0) {
    out.x = {std::sqrt(y0), 0.0};
    out.boundary = true;
  } else {
    out.x = {std::sqrt(y0), y1 / (2.0 * std::sqrt(y0))};
  }
  out.gradient_at_min = gradient(out.x, std::vector<double>{y0, y1});
  return out;
}

SmallCaseSolution solve_n2(double y0, double y1, double y2) {
  if (!(y0 > 0.0)) throw std::invalid_argument("y0 must be > 0");
  require_nonnegative(y1, "y1");
  require_nonnegative(y2, "y2");
  SmallCaseSolution out;
  if (y1 * y1 < 4.0 * y0 * y2) {
    const double root = std::sqrt(y0);
    out.x = {root, y1 / (2.0 * root), (y2 - y1 * y1 / (4.0 * y0)) / (2.0 * root)};
    out.boundary = (y1 == 0.0);
  } else {
    const double root = std::sqrt(y0 + y1 + y2);
    out.x = {(y0 + y1 / 2.0) / root, (y2 + y1 / 2.0) / root, 0.0};
    out.boundary = true;
  }
  out.gradient_at_min = gradient(out.x, std::vector<double>{y0, y1, y2});
  return out;
}

}  // namespace deauto::reference
