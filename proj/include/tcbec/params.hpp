#pragma once

#include <string>

#include "tcbec/numerics.hpp"

namespace tcbec {

// Physical couplings of the two-component condensate, dimensionless.
// Conventions enforced: g1,g2,g > 0, eps > 0, omega >= 0,
// coexistence g^2 < g1*g2, ordering g1 <= g2.
struct PhysParams {
  double g1 = 0, g2 = 0, g = 0;
  double eps = 0;
  double omega = 0;
};

struct GammaConstants {
  double gamma1;  // 1 - g/g1, either sign
  double gamma2;  // 1 - g/g2, positive for valid params
  double gamma;   // 1 - g^2/(g1*g2), positive for valid params
};

enum class RegimeKind { TwoDisks, DiskAnnulus, Symmetric };

struct Regime {
  RegimeKind kind;
  double threshold;  // (g1 + sqrt(g1^2 + 8 g1 g2)) / 4
};

// Returns a validated PhysParams or throws one of:
//   NonPositiveCoupling, CoexistenceViolated, OrderingViolated, NonFiniteInput
PhysParams validate(double g1, double g2, double g, double eps, double omega);

GammaConstants gammas(const PhysParams& p);

// Disk/annulus threshold in g for given intra-component couplings.
double regime_threshold(double g1, double g2);

// Classifies the limiting geometry. Throws BoundaryCase when g sits on the
// threshold within 1e-12 relative; the strict-inequality analysis does not
// cover that point.
Regime classify(const PhysParams& p);

const char* regime_name(RegimeKind k);

}  // namespace tcbec
