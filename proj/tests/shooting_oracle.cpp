#include "shooting_oracle.hpp"

#include <cmath>

namespace tcbec_test {

namespace {

struct State {
  double v, w;
};

State rhs(double s, State y) { return {y.w, y.v * (y.v * y.v + s)}; }

// RK4 from s0 with given slope; returns +1 if the trajectory blows up,
// -1 if it crosses zero, and records v(0) on the way.
int integrate(double s0, double v0, double w0, double* v_at_0) {
  const double hstep = 1e-4;
  State y{v0, w0};
  double s = s0;
  bool recorded = false;
  while (s < 5.0) {
    if (!recorded && s >= 0.0) {
      // Taylor step back to s = 0 (s is within one step of the origin)
      *v_at_0 = y.v - s * y.w + 0.5 * s * s * y.v * (y.v * y.v + s);
      recorded = true;
    }
    State k1 = rhs(s, y);
    State k2 = rhs(s + hstep / 2, {y.v + hstep / 2 * k1.v, y.w + hstep / 2 * k1.w});
    State k3 = rhs(s + hstep / 2, {y.v + hstep / 2 * k2.v, y.w + hstep / 2 * k2.w});
    State k4 = rhs(s + hstep, {y.v + hstep * k3.v, y.w + hstep * k3.w});
    y.v += hstep / 6 * (k1.v + 2 * k2.v + 2 * k3.v + k4.v);
    y.w += hstep / 6 * (k1.w + 2 * k2.w + 2 * k3.w + k4.w);
    s += hstep;
    if (y.v < 0.0) return -1;
    if (y.v > 3.0 + std::sqrt(std::abs(s)) * 2.0) return +1;
  }
  return +1;  // survived to +5 without crossing: still slightly above the branch
}

}  // namespace

double shooting_hastings_mcleod_v0() {
  const double s0 = -8.0;
  // asymptote with first correction: v = sqrt(-s) (1 + (1/8) s^{-3})
  const double v0 = std::sqrt(-s0) * (1.0 + 1.0 / (8.0 * s0 * s0 * s0));
  // derivative of the asymptote
  const double w0_guess = -1.0 / (2.0 * std::sqrt(-s0)) - 5.0 / 16.0 * std::pow(-s0, -3.5);
  double lo = w0_guess - 0.05, hi = w0_guess + 0.05;
  double v_at_0 = 0;
  // establish the bracket
  double tmp;
  if (integrate(s0, v0, lo, &tmp) != -1 || integrate(s0, v0, hi, &tmp) != +1) {
    lo = w0_guess - 0.5;
    hi = w0_guess + 0.5;
  }
  for (int it = 0; it < 100; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    const int side = integrate(s0, v0, mid, &v_at_0);
    if (side > 0)
      hi = mid;
    else
      lo = mid;
  }
  integrate(s0, v0, 0.5 * (lo + hi), &v_at_0);
  return v_at_0;
}

}  // namespace tcbec_test
