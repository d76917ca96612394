#pragma once

#include <string>

#include "deauto/signal.hpp"

namespace deauto::reference {

// Closed-form minimizer for the short data lengths where one exists. Used as a
// golden oracle in tests and exposed as a convenience.
struct SmallCaseSolution {
  Signal x;             // empty when the infimum is not attained
  bool attained = true;
  bool unique = true;
  bool boundary = false;  // some x_j == 0 at the minimizer
  std::vector<double> gradient_at_min;
  std::string note;
};

/// n = 1 data (y0, y1), by case:
///   y0 == y1 == 0   -> x = (0, 0), minimum not unique (any x1 works)
///   y0 == 0 < y1    -> infimum not attained (x0 -> 0, x1 = y1/(2 x0) -> inf)
///   y1 == 0 < y0    -> x = (sqrt(y0), 0), boundary, gradient (0, 2 sqrt(y0))
///   y0, y1 > 0      -> x = (sqrt(y0), y1/(2 sqrt(y0))), gradient (0, 0)
SmallCaseSolution solve_n1(double y0, double y1);

/// n = 2 data (y0, y1, y2) with y0 > 0:
///   y1^2 <  4 y0 y2 -> exact fit (sqrt(y0), y1/(2 sqrt(y0)), (y2 - y1^2/(4 y0))/(2 sqrt(y0)))
///   y1^2 >= 4 y0 y2 -> boundary ((y0+y1/2)/sqrt(S), (y2+y1/2)/sqrt(S), 0), S = y0+y1+y2,
///                      with grad_2 = 2 (y0+y1/2)(y1^2/4 - y0 y2) / ((y2+y1/2)^2 sqrt(S)) >= 0.
SmallCaseSolution solve_n2(double y0, double y1, double y2);

}  // namespace deauto::reference
