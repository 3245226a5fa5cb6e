#pragma once

#include <cmath>

namespace symrd {

struct GoldenSectionResult {
  double x = 0.0;
  double fx = 0.0;
  /// Final bracket.
  double lo = 0.0;
  double hi = 0.0;
  int iterations = 0;
};

/// Minimises a unimodal f on [lo, hi]. Stops after max_iter steps or once the
/// bracket is narrower than x_tol.
template <class F>
GoldenSectionResult golden_section_minimize(F&& f, double lo, double hi, int max_iter, double x_tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  int it = 0;
  while (it < max_iter && (b - a) > x_tol) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
    ++it;
  }
  GoldenSectionResult r;
  r.lo = a;
  r.hi = b;
  r.iterations = it;
  if (fc <= fd) {
    r.x = c;
    r.fx = fc;
  } else {
    r.x = d;
    r.fx = fd;
  }
  return r;
}

}  // namespace symrd
