#pragma once

#include <cmath>
#include <utility>

#include "leapfrog/types.hpp"

namespace leapfrog {

struct RootResult {
  double x = 0.0;
  double fx = 0.0;
  int iterations = 0;
};

/// Bracketed hybrid root finder: bisection with secant acceleration.
///
/// Requires a < b with f(a) and f(b) of opposite (or zero) sign.  Secant
/// steps are attempted on alternating iterations and taken only when they
/// land safely inside the current bracket; the other iterations bisect, so
/// the bracket provably halves at least every second step.  Terminates when
/// the bracket width drops below x_tol (absolute) or f hits exactly zero.
template <typename F>
RootResult find_root(F&& f, double a, double b, double x_tol = 1e-14) {
  if (!(a < b)) throw Error(Errc::ValidationFailure, "find_root: requires a < b");
  double fa = f(a);
  double fb = f(b);
  if (fa == 0.0) return {a, 0.0, 0};
  if (fb == 0.0) return {b, 0.0, 0};
  if (std::signbit(fa) == std::signbit(fb))
    throw Error(Errc::ValidationFailure, "find_root: bracket endpoints have the same sign");

  int it = 0;
  while (b - a > x_tol && it < 200) {
    ++it;
    double x = 0.5 * (a + b);
    if (it % 2 == 1) {
      double denom = fb - fa;
      if (denom != 0.0) {
        double s = a - fa * (b - a) / denom;
        double margin = 0.01 * (b - a);
        if (s > a + margin && s < b - margin) x = s;
      }
    }
    double fx = f(x);
    if (fx == 0.0) return {x, 0.0, it};
    if (std::signbit(fx) == std::signbit(fa)) {
      a = x;
      fa = fx;
    } else {
      b = x;
      fb = fx;
    }
  }
  double x = 0.5 * (a + b);
  return {x, f(x), it};
}

}  // namespace leapfrog
