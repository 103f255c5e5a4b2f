#include <doctest.h>

#include <cmath>
#include <random>

#include "tcbec/numerics.hpp"

using namespace tcbec;

TEST_CASE("tridiagonal solve reproduces a manufactured solution") {
  const std::size_t n = 50;
  std::vector<double> a(n, -1.0), b(n, 3.0), c(n, -1.0);
  std::vector<double> x(n), d(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = std::sin(0.3 * double(i));
  for (std::size_t i = 0; i < n; ++i) {
    d[i] = b[i] * x[i];
    if (i > 0) d[i] += a[i] * x[i - 1];
    if (i + 1 < n) d[i] += c[i] * x[i + 1];
  }
  solve_tridiagonal(a, b, c, d);
  for (std::size_t i = 0; i < n; ++i) CHECK(d[i] == doctest::Approx(x[i]).epsilon(1e-12));
}

TEST_CASE("adaptive quadrature hits polynomial and oscillatory integrals") {
  // int_0^1 x^7 = 1/8
  CHECK(integrate([](double x) { return std::pow(x, 7); }, 0, 1) ==
        doctest::Approx(0.125).epsilon(1e-12));
  // int_0^pi sin = 2
  CHECK(integrate([](double x) { return std::sin(x); }, 0, M_PI) ==
        doctest::Approx(2.0).epsilon(1e-12));
  // split integration across a kink
  const double v = integrate_split([](double x) { return std::abs(x - 0.3); }, 0.0, 1.0,
                                   {0.3});
  CHECK(v == doctest::Approx(0.5 * 0.09 + 0.5 * 0.49).epsilon(1e-12));
}

TEST_CASE("log-log fit recovers a power law") {
  std::vector<double> x{0.1, 0.05, 0.025, 0.0125};
  std::vector<double> y;
  for (double xi : x) y.push_back(3.7 * std::pow(xi, 1.6));
  LineFit f = fit_loglog(x, y);
  CHECK(f.slope == doctest::Approx(1.6).epsilon(1e-10));
  CHECK(std::exp(f.intercept) == doctest::Approx(3.7).epsilon(1e-10));
  CHECK(f.x.size() == 4);  // raw points kept for auditability
}

TEST_CASE("cubic interpolation is fourth order on smooth data") {
  auto fill = [](std::size_t n, double h) {
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) y[i] = std::sin(double(i) * h);
    return y;
  };
  double prev = 0;
  for (int lev = 0; lev < 2; ++lev) {
    const double h = 0.1 / (1 << lev);
    auto y = fill(101 << lev, h);
    double err = 0;
    for (double t = 0.05; t < 9.0; t += 0.173)
      err = std::max(err, std::abs(interp_cubic_uniform(y, 0.0, h, t) - std::sin(t)));
    if (lev) CHECK(prev / err > 12.0);  // ~16x per halving
    prev = err;
  }
}

TEST_CASE("smoothstep5 is monotone with flat ends") {
  CHECK(smoothstep5(-1.0) == 0.0);
  CHECK(smoothstep5(2.0) == 1.0);
  CHECK(smoothstep5(0.5) == doctest::Approx(0.5));
  double prev = 0;
  for (double t = 0; t <= 1.0; t += 0.01) {
    CHECK(smoothstep5(t) >= prev - 1e-15);
    prev = smoothstep5(t);
  }
}
