#pragma once

#include "tcbec/radial_gp.hpp"

namespace tcbec {

// Gluing half-width, fixed per parameter set (independent of eps).
double gluing_delta(const TFProfile& tf);

struct ScalarSet {
  const ScalarGroundState* reduced1 = nullptr;       // eta_hat_1
  const ScalarGroundState* reduced2 = nullptr;       // eta_hat_2 (outer, annulus: ^+)
  const ScalarGroundState* annulus_minus = nullptr;  // eta_hat_2^- (annulus only)
};

// Piecewise composite approximate solution (eta1_check, eta2_check):
// scalar ground states outside, algebraic slaving inside, smooth-stepped
// across [R_eps - delta, R_eps] and [R_eps, R_eps + delta] (plus the inner
// seam at r_eps in the annulus regime).
struct ApproxSolution {
  RadialGrid grid;
  EpsProfile ep;
  bool annulus = false;
  double delta = 0;
  double R_eps = 0;  // (R1 + R2)/2, gluing midpoint
  double r_eps = 0;  // (R2m + R1)/2 (annulus only)
  std::vector<double> eta1_check, eta2_check;
  std::vector<double> eta2_tilde;  // slaved branch, where defined (else 0)
  std::vector<double> zeta;        // cutoff samples (two-disk regime)
  double gluing_mismatch = 0;      // max |eta2_hat - eta2_tilde| on the outer seam
};

ApproxSolution build_approx(const PhysParams& p, const EpsProfile& ep,
                            const ScalarSet& scalars, const RadialGrid& grid,
                            double delta);

struct Residual {
  std::vector<double> E1, E2;
  // L2 norms split at the gluing region: "inner" is B_{R_eps} for two disks
  // and the annulus A_eps = {r_eps < r < R_eps} for the annulus regime.
  double e1_inner = 0, e1_outer = 0, e1_total = 0;
  double e2_inner = 0, e2_outer = 0;
};

Residual residual(const PhysParams& p, const EpsProfile& ep, const ApproxSolution& ap);

struct SpectrumReport {
  std::vector<double> plain;     // smallest eigenvalues of L (quadrature-weighted)
  std::vector<double> weighted;  // smallest eigenvalues of the (eps^{2/3} phi, psi) problem
};

// Smallest k eigenvalues of the linearization about the approximate solution,
// assembled symmetrically from the quadratic form; banded solver.
SpectrumReport linearized_spectrum(const PhysParams& p, const EpsProfile& ep,
                                   const ApproxSolution& ap, int k);

// Quadratic form of L on a sample pair (same discretization as the matrix).
double linearized_quadratic_form(const PhysParams& p, const EpsProfile& ep,
                                 const ApproxSolution& ap, const std::vector<double>& phi,
                                 const std::vector<double>& psi);

// Triple norm of eqNormtriple-type: eps^2 |grad|^2 + region-weighted masses;
// the inner region is B_{R_eps} (two disks) or A_eps (annulus).
double triple_norm(const RadialGrid& g, double eps, bool annulus, double r_eps,
                   double R_eps, const std::vector<double>& phi,
                   const std::vector<double>& psi);

struct ApproxDistance {
  double triple = 0;
  double sup_away1 = 0, sup_away2 = 0;  // L_inf(|x| >= delta) per component
};

ApproxDistance compare_to_true(const ApproxSolution& ap, const RadialState& st);

}  // namespace tcbec
