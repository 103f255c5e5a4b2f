#include "tcbec/tf_profile.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace tcbec {

namespace {

constexpr double kPi = 3.14159265358979323846;

// int_p^q s (alpha + beta s^2) ds
double moment(double alpha, double beta, double p, double q) {
  return 0.5 * alpha * (q * q - p * p) + 0.25 * beta * (q * q * q * q - p * p * p * p);
}

// Unit-mass residuals for the annulus multipliers; masses are exact piecewise
// polynomial integrals, used as the independent route against (closed-form)
// lambda values.
void annulus_masses(const PhysParams& p, const GammaConstants& G, double l1, double l2,
                    double* m1, double* m2) {
  const double r1sq = (l1 - (p.g / p.g2) * l2) / G.gamma2;
  const double r2msq = (l2 - (p.g / p.g1) * l1) / G.gamma1;
  const double r2psq = l2;
  const double r1 = std::sqrt(r1sq), r2m = std::sqrt(r2msq), r2p = std::sqrt(r2psq);
  // a1: (l1-r^2)/g1 on [0,r2m], a10 on [r2m,r1]
  double I1 = moment(l1 / p.g1, -1.0 / p.g1, 0.0, r2m) +
              moment(G.gamma2 * r1sq / (p.g1 * G.gamma), -G.gamma2 / (p.g1 * G.gamma), r2m, r1);
  // a2: a20 on [r2m,r1], (l2-r^2)/g2 on [r1,r2p]
  double I2 = moment(G.gamma1 * r2msq / (p.g2 * G.gamma), -G.gamma1 / (p.g2 * G.gamma), r2m, r1) +
              moment(l2 / p.g2, -1.0 / p.g2, r1, r2p);
  *m1 = 2.0 * kPi * I1;
  *m2 = 2.0 * kPi * I2;
}

}  // namespace

double TFProfile::a10(double r) const {
  return gam.gamma2 / (params.g1 * gam.gamma) * (r1 * r1 - r * r);
}

double TFProfile::a20(double r) const {
  if (annulus())
    return gam.gamma1 / (params.g2 * gam.gamma) * (r2_minus * r2_minus - r * r);
  return (r2 * r2 - r1 * r1) / params.g2 +
         gam.gamma1 / (params.g2 * gam.gamma) * (r1 * r1 - r * r);
}

double TFProfile::a1(double r) const {
  if (r >= r1) return 0.0;
  if (annulus() && r <= r2_minus) return (lambda1 - r * r) / params.g1;
  return a10(r);
}

double TFProfile::a2(double r) const {
  if (annulus()) {
    if (r <= r2_minus || r >= r2_plus) return 0.0;
    if (r <= r1) return a20(r);
    return (lambda2 - r * r) / params.g2;
  }
  if (r >= r2) return 0.0;
  if (r <= r1) return a20(r);
  return (r2 * r2 - r * r) / params.g2;
}

double TFProfile::xi0(int i, double r) const {
  const double R1s = r1 * r1;
  if (i == 1) {
    if (r >= r1) return 0.0;
    const double c = gam.gamma2 / (params.g1 * gam.gamma);
    if (!annulus() || r >= r2_minus) return 0.25 * c * sq(R1s - r * r);
    const double at_r2m = 0.25 * c * sq(R1s - r2_minus * r2_minus);
    return at_r2m + moment(lambda1 / params.g1, -1.0 / params.g1, r, r2_minus);
  }
  if (annulus()) {
    if (r >= r2_plus) return 0.0;
    const double R2ps = r2_plus * r2_plus;
    if (r >= r1) return 0.25 / params.g2 * sq(R2ps - r * r);
    const double at_r1 = 0.25 / params.g2 * sq(R2ps - R1s);
    const double lo = std::max(r, r2_minus);
    const double c2 = gam.gamma1 / (params.g2 * gam.gamma);
    return at_r1 + moment(c2 * r2_minus * r2_minus, -c2, lo, r1);
  }
  if (r >= r2) return 0.0;
  const double R2s = r2 * r2;
  if (r >= r1) return 0.25 / params.g2 * sq(R2s - r * r);
  const double at_r1 = 0.25 / params.g2 * sq(R2s - R1s);
  const double c2 = gam.gamma1 / (params.g2 * gam.gamma);
  return at_r1 + moment((R2s - R1s) / params.g2 + c2 * R1s, -c2, r, r1);
}

double TFProfile::limiting_F(int i, double r) const {
  const double Rout = outer_radius(i);
  if (r >= Rout) return 0.0;
  if (i == 1) {
    if (!annulus() || r >= r2_minus) {
      // xi and a1 share the factor (r1^2 - r^2); the edge is regular.
      return 0.25 * (r1 * r1 - r * r);
    }
    return xi0(1, r) / a1(r);
  }
  if (annulus()) {
    if (r <= r2_minus) return std::numeric_limits<double>::infinity();  // hole: a2 = 0
    if (r >= r1) return 0.25 * (r2_plus * r2_plus - r * r);
    return xi0(2, r) / a2(r);
  }
  if (r >= r1) return 0.25 * (r2 * r2 - r * r);
  return xi0(2, r) / a2(r);
}

double TFProfile::sup_F0(int i) const {
  const double Rout = outer_radius(i);
  const double lo = (annulus() && i == 2) ? r2_minus * (1.0 + 1e-12) : 0.0;
  double best = 0.0;
  const int n = 20000;
  for (int k = 0; k <= n; ++k) {
    const double r = lo + (Rout - lo) * double(k) / double(n);
    const double v = limiting_F(i, r);
    if (std::isfinite(v)) best = std::max(best, v);
  }
  return best;
}

TFProfile build_tf(const PhysParams& p, const Regime& regime) {
  TFProfile tf;
  tf.regime = regime;
  tf.params = p;
  tf.gam = gammas(p);
  const GammaConstants& G = tf.gam;

  if (regime.kind == RegimeKind::DiskAnnulus) {
    if (!(p.g > p.g1))
      throw Error("RegimeMismatch", "disk-annulus regime requires g > g1");
    // Closed forms for the multipliers; the mass integrals below provide the
    // independent consistency route.
    const double l1 = 2.0 * std::sqrt(p.g1 / kPi);
    const double l2 =
        l1 + std::sqrt(-G.gamma1 * G.gamma2 * 2.0 * p.g1 * p.g2 / (kPi * p.g));
    tf.lambda1 = l1;
    tf.lambda2 = l2;
    const double r1sq = (l1 - (p.g / p.g2) * l2) / G.gamma2;
    const double r2msq = (l2 - (p.g / p.g1) * l1) / G.gamma1;
    if (!(r1sq > 0) || !(r2msq > 0))
      throw Error("RegimeMismatch", "annulus radii are degenerate for these parameters");
    tf.r1 = std::sqrt(r1sq);
    tf.r2_minus = std::sqrt(r2msq);
    tf.r2_plus = std::sqrt(l2);
    if (!(tf.r2_minus < tf.r1 && tf.r1 < tf.r2_plus))
      throw Error("RegimeMismatch",
                  "annulus ordering R2- < R1 < R2+ violated; parameters outside the "
                  "covered configuration");
    double m1 = 0, m2 = 0;
    annulus_masses(p, G, l1, l2, &m1, &m2);
    if (std::abs(m1 - 1.0) > 1e-10 || std::abs(m2 - 1.0) > 1e-10)
      throw Error("RegimeMismatch", "annulus multipliers fail the normalization route");
    return tf;
  }

  // Two disks (the symmetric case satisfies the same formulas with r1 = r2).
  tf.r1 = std::pow(2.0 * p.g1 * G.gamma / (kPi * G.gamma2), 0.25);
  tf.r2 = std::pow(2.0 * (p.g2 + p.g) / kPi, 0.25);
  tf.lambda2 = tf.r2 * tf.r2;
  tf.lambda1 = (p.g / p.g2) * tf.lambda2 + G.gamma2 * tf.r1 * tf.r1;
  if (tf.r1 > tf.r2 * (1.0 + 1e-14))
    throw Error("RegimeMismatch", "two-disk regime requires R1 <= R2");
  return tf;
}

double EpsProfile::a1eps(double r) const {
  return (lambda1_eps - (params.g / params.g2) * lambda2_eps - gam.gamma2 * r * r) /
         (params.g1 * gam.gamma);
}

double EpsProfile::a2eps(double r) const {
  return (lambda2_eps - (params.g / params.g1) * lambda1_eps - gam.gamma1 * r * r) /
         (params.g2 * gam.gamma);
}

double EpsProfile::combo2(double r) const {
  return (lambda2_eps - r * r) / params.g2;
}

double EpsProfile::combo1(double r) const {
  return (lambda1_eps - r * r) / params.g1;
}

EpsProfile build_eps_profile(const PhysParams& p, double lambda1_eps, double lambda2_eps,
                             bool annulus_regime) {
  EpsProfile ep;
  ep.params = p;
  ep.gam = gammas(p);
  ep.annulus = annulus_regime;
  ep.lambda1_eps = lambda1_eps;
  ep.lambda2_eps = lambda2_eps;
  const double r1sq = (lambda1_eps - (p.g / p.g2) * lambda2_eps) / ep.gam.gamma2;
  if (!(r1sq > 0) || !(lambda2_eps > 0))
    throw Error("DegenerateRadius", "nonpositive R_{i,eps}^2");
  ep.R1 = std::sqrt(r1sq);
  ep.R2 = std::sqrt(lambda2_eps);
  if (annulus_regime) {
    const double r2msq = (lambda2_eps - (p.g / p.g1) * lambda1_eps) / ep.gam.gamma1;
    if (!(r2msq > 0)) throw Error("DegenerateRadius", "nonpositive (R_{2,eps}^-)^2");
    ep.R2m = std::sqrt(r2msq);
  }
  // Exact derivatives of the quadratics at the sign changes.
  ep.beta1 = std::cbrt(2.0 * ep.gam.gamma2 * ep.R1 / (p.g1 * ep.gam.gamma));
  ep.beta2 = std::cbrt(2.0 * ep.R2 / p.g2);
  return ep;
}

}  // namespace tcbec
