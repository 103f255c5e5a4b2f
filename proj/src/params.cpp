#include "tcbec/params.hpp"

#include <cmath>

namespace tcbec {

PhysParams validate(double g1, double g2, double g, double eps, double omega) {
  for (double v : {g1, g2, g, eps, omega})
    if (!std::isfinite(v)) throw Error("NonFiniteInput", "parameters must be finite");
  if (!(g1 > 0) || !(g2 > 0) || !(g > 0))
    throw Error("NonPositiveCoupling", "require g1 > 0, g2 > 0, g > 0");
  if (!(eps > 0)) throw Error("NonPositiveCoupling", "require eps > 0");
  if (omega < 0) throw Error("NonPositiveCoupling", "require omega >= 0");
  if (!(g * g < g1 * g2))
    throw Error("CoexistenceViolated",
                "require g^2 < g1*g2 (got g^2 = " + std::to_string(g * g) +
                    ", g1*g2 = " + std::to_string(g1 * g2) + ")");
  if (g1 > g2)
    throw Error("OrderingViolated", "require g1 <= g2; swap the component labels");
  return PhysParams{g1, g2, g, eps, omega};
}

GammaConstants gammas(const PhysParams& p) {
  return {1.0 - p.g / p.g1, 1.0 - p.g / p.g2, 1.0 - p.g * p.g / (p.g1 * p.g2)};
}

double regime_threshold(double g1, double g2) {
  return 0.25 * (g1 + std::sqrt(g1 * g1 + 8.0 * g1 * g2));
}

Regime classify(const PhysParams& p) {
  const double thr = regime_threshold(p.g1, p.g2);
  if (p.g1 == p.g2) return {RegimeKind::Symmetric, thr};
  if (std::abs(p.g - thr) <= 1e-12 * thr)
    throw Error("BoundaryCase", "g equals the disk/annulus threshold within tolerance; "
                                "the limiting geometry is undefined there");
  return {p.g < thr ? RegimeKind::TwoDisks : RegimeKind::DiskAnnulus, thr};
}

const char* regime_name(RegimeKind k) {
  switch (k) {
    case RegimeKind::TwoDisks: return "two-disks";
    case RegimeKind::DiskAnnulus: return "disk-annulus";
    case RegimeKind::Symmetric: return "symmetric";
  }
  return "?";
}

}  // namespace tcbec
