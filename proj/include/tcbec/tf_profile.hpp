#pragma once

#include "tcbec/params.hpp"

namespace tcbec {

// Limiting (eps = 0) profiles, radii and multipliers.
//
// Two-disks regime:
//   a1 supported on |x| <= r1, a2 on |x| <= r2, with
//   a1 = a10, a2 = a20 inside r1 and a2 = a20 + (g/g2) a10 = (r2^2-|x|^2)/g2
//   between r1 and r2.
// Disk-annulus regime:
//   a1 supported on |x| <= r1 (with the slaved extra piece below r2_minus),
//   a2 on r2_minus <= |x| <= r2_plus.
struct TFProfile {
  Regime regime;
  PhysParams params;
  GammaConstants gam;

  double r1 = 0;        // R_{1,0}
  double r2 = 0;        // R_{2,0} (two-disks / symmetric)
  double r2_minus = 0;  // R_{2,0}^- (annulus)
  double r2_plus = 0;   // R_{2,0}^+ (annulus)
  double lambda1 = 0;   // lambda_{1,0}
  double lambda2 = 0;   // lambda_{2,0}

  bool annulus() const { return regime.kind == RegimeKind::DiskAnnulus; }

  // Coexistence-region quadratics (defined for all r, may be negative).
  double a10(double r) const;
  double a20(double r) const;

  // Limiting densities, exactly zero outside their supports.
  double a1(double r) const;
  double a2(double r) const;
  double a(int i, double r) const { return i == 1 ? a1(r) : a2(r); }

  // Tail mass xi_{i,0}(r) = int_r^inf s a_i(s) ds, closed form per piece.
  double xi0(int i, double r) const;

  // Limiting auxiliary function F_{i,0} = xi_{i,0}/a_i inside the support,
  // 0 at and beyond the outer support radius. Evaluated through the factored
  // closed form so the support edge is not a 0/0.
  double limiting_F(int i, double r) const;

  // sup over r >= 0 of F_{i,0}. Disk regime only for i = 2 in the hole-free
  // sense; well defined in both regimes where a_i > 0.
  double sup_F0(int i) const;

  double outer_radius(int i) const { return i == 1 ? r1 : (annulus() ? r2_plus : r2); }
};

TFProfile build_tf(const PhysParams& p, const Regime& regime);

// eps-level profiles a_{i,eps} for given Lagrange multipliers.
struct EpsProfile {
  PhysParams params;
  GammaConstants gam;
  bool annulus = false;
  double lambda1_eps = 0, lambda2_eps = 0;
  double R1 = 0;        // R_{1,eps}
  double R2 = 0;        // R_{2,eps}
  double R2m = 0;       // R_{2,eps}^- (annulus only)
  double beta1 = 0;     // (-a1eps'(R1))^{1/3}
  double beta2 = 0;     // (-(a2eps+(g/g2)a1eps)'(R2))^{1/3}

  double a1eps(double r) const;
  double a2eps(double r) const;
  // a_{2,eps} + (g/g2) a_{1,eps} = (lambda2_eps - r^2)/g2
  double combo2(double r) const;
  // a_{1,eps} + (g/g1) a_{2,eps} = (lambda1_eps - r^2)/g1
  double combo1(double r) const;
};

EpsProfile build_eps_profile(const PhysParams& p, double lambda1_eps, double lambda2_eps,
                             bool annulus_regime = false);

}  // namespace tcbec
