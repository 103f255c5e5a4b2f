#pragma once

#include <vector>

#include "tcbec/numerics.hpp"

namespace tcbec {

// Tabulated Hastings-McLeod solution of v'' = v (v^2 + s) on [-L, L],
// v ~ sqrt(-s) at the left end, v -> 0 at the right end.
struct PainleveTable {
  double L = 0;
  std::size_t n = 0;  // number of grid points
  double h = 0;
  std::vector<double> s;        // nodes
  std::vector<double> v;        // V(s)
  std::vector<double> v_prime;  // V'(s)
  int newton_iters = 0;
  double newton_update = 0;  // last max |update|

  double value(double x) const;  // cubic interpolation; throws OutOfTableRange
  double deriv(double x) const;
};

// Newton collocation with boundary data v(-L) ~ sqrt(L) (with the first
// asymptotic correction), v(L) = 0, starting from v0 = sqrt(max(-s,0)).
// Converged when the max Newton update < 1e-12. The default grid balances
// the second-difference residual floor ulp(V)/h^2 (wants coarse) against the
// V(0) refinement stability (wants fine); both hold with ~30% margin.
PainleveTable solve_hastings_mcleod(double L = 16.0, std::size_t n = 90001);

// Scaled boundary-layer frame around a support radius. For the reduced
// problem -eps^2 lap(u) + c u (u^2 - a(r)) = 0 with slope beta^3 = -a'(R),
// the layer profile is  u(r) ~ eps^{1/3} c^{-1/6} beta V(s),
// s = c^{1/3} beta (r - R) / eps^{2/3}.
struct BoundaryLayer {
  double beta = 0;
  double r_center = 0;
  double eps = 0;
  double scale_const = 0;  // c: g1*Gamma for layer 1, g2 for layer 2

  double inner_s(double r) const;
  double amplitude() const;  // eps^{1/3} c^{-1/6} beta
};

// Leading-order layer value at radius r.
double inner_expansion(const BoundaryLayer& layer, const PainleveTable& table, double r);

struct CancellationFit {
  double exponent;       // log-log slope of |V V'' + (V')^2| against |s|, left tail
  double at_plus_half_L; // the same quantity at s = +L/2
  LineFit fit;
};

// Tail-exponent fit of the identity quantity V V'' + (V')^2 = O(|s|^{-4}).
CancellationFit check_cancellation(const PainleveTable& table);

}  // namespace tcbec
