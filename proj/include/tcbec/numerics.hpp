#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tcbec {

struct Error : std::runtime_error {
  Error(std::string code_, const std::string& what_)
      : std::runtime_error(code_ + ": " + what_), code(std::move(code_)) {}
  std::string code;
};

// Solves a*x[i-1] + b*x[i] + c*x[i+1] = d[i] in place (Thomas algorithm).
// a[0] and c[n-1] are ignored.
template <typename T>
void solve_tridiagonal(const std::vector<double>& a, const std::vector<double>& b,
                       const std::vector<double>& c, std::vector<T>& d) {
  const std::size_t n = b.size();
  static thread_local std::vector<double> cp;
  cp.resize(n);
  cp[0] = c[0] / b[0];
  d[0] = d[0] / b[0];
  for (std::size_t i = 1; i < n; ++i) {
    const double m = 1.0 / (b[i] - a[i] * cp[i - 1]);
    cp[i] = c[i] * m;
    d[i] = (d[i] - a[i] * d[i - 1]) * m;
  }
  for (std::size_t i = n - 1; i-- > 0;) d[i] -= cp[i] * d[i + 1];
}

// Adaptive Gauss-Kronrod (G7/K15) quadrature on [a, b].
// Integrands here are piecewise smooth; callers split at known breakpoints.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol = 1e-12, int max_depth = 40);

// Integrate with interior breakpoints (integrand smooth per panel).
double integrate_split(const std::function<double(double)>& f, double a, double b,
                       const std::vector<double>& breaks, double abs_tol = 1e-12);

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;  // standard error of the slope
  double rms_residual = 0.0;
  std::vector<double> x, y;  // raw points the fit was made from
};

// Ordinary least squares y = slope*x + intercept.
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

// log-log fit of y against x (both must be positive).
LineFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y);

// Local cubic (4-point Lagrange) interpolation on a uniform grid.
// Values y[i] at x0 + i*h; evaluates at x inside [x0, x0+(n-1)h].
double interp_cubic_uniform(const std::vector<double>& y, double x0, double h, double x);

// Quintic smoothstep: 0 for t<=0, 1 for t>=1, C^2 at both ends.
inline double smoothstep5(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  return t * t * t * (t * (t * 6.0 - 15.0) + 10.0);
}

inline double sq(double x) { return x * x; }

}  // namespace tcbec
