#pragma once

#include "mirror/special.hpp"

#include <functional>

namespace mirror {

struct QuadResult {
  cd value;
  double abs_error = 0;
  long evaluations = 0;
  int subdivisions = 0;
  bool converged = false;
};

struct QuadOptions {
  double abs_tol = 1e-10;
  double rel_tol = 0;
  int max_subdivisions = 2000;
};

// Adaptive Gauss-Kronrod (7/15) on [a, b] with global interval bisection.
QuadResult integrate_gk(const std::function<cd(double)>& f, double a, double b, const QuadOptions& opts);

// Nested adaptive rule on [ax,bx] x [ay,by]; inner integrals at the 15 outer nodes run in parallel.
QuadResult integrate_gk_2d(const std::function<cd(double, double)>& f, double ax, double bx, double ay, double by,
                           const QuadOptions& opts);

}  // namespace mirror
