#include <doctest.h>

#include <cmath>
#include <random>

#include "tcbec/tf_profile.hpp"

using namespace tcbec;

namespace {
constexpr double kPi = 3.14159265358979323846;

TFProfile reference_disk() {
  PhysParams p = validate(1, 2, 1, 0.05, 0);
  return build_tf(p, classify(p));
}

TFProfile reference_annulus() {
  PhysParams p = validate(1, 2, 1.35, 0.05, 0);
  return build_tf(p, classify(p));
}

}  // namespace

TEST_CASE("two-disk radii for (1,2,1): R2^4 = 6/pi, R1^4 = 2/pi") {
  TFProfile tf = reference_disk();
  CHECK(std::pow(tf.r1, 4) == doctest::Approx(2.0 / kPi).epsilon(1e-14));
  CHECK(std::pow(tf.r2, 4) == doctest::Approx(6.0 / kPi).epsilon(1e-14));
  CHECK(tf.lambda2 == doctest::Approx(tf.r2 * tf.r2).epsilon(1e-14));
}

TEST_CASE("normalization of both densities by quadrature, both regimes") {
  for (const TFProfile& tf : {reference_disk(), reference_annulus()}) {
    std::vector<double> breaks = tf.annulus()
                                     ? std::vector<double>{tf.r2_minus, tf.r1, tf.r2_plus}
                                     : std::vector<double>{tf.r1, tf.r2};
    for (int i = 1; i <= 2; ++i) {
      const double m = 2 * kPi *
                       integrate_split([&](double r) { return tf.a(i, r) * r; }, 0.0,
                                       tf.outer_radius(2), breaks, 1e-13);
      CHECK(std::abs(m - 1.0) < 1e-10);
    }
  }
}

TEST_CASE("symmetric couplings give identical profiles and equal radii") {
  PhysParams p = validate(1.3, 1.3, 0.7, 0.05, 0);
  TFProfile tf = build_tf(p, classify(p));
  CHECK(tf.r1 == doctest::Approx(tf.r2).epsilon(1e-14));
  for (double r = 0; r < tf.r1; r += 0.05)
    CHECK(tf.a1(r) == doctest::Approx(tf.a2(r)).epsilon(1e-12));
}

TEST_CASE("profile support, continuity and monotonicity properties") {
  TFProfile tf = reference_disk();
  CHECK(tf.a1(tf.r1) == 0.0);
  CHECK(tf.a1(tf.r1 + 0.1) == 0.0);
  CHECK(tf.a2(tf.r2) == 0.0);
  // continuity of a2 across R1
  CHECK(tf.a2(tf.r1 - 1e-12) == doctest::Approx(tf.a2(tf.r1 + 1e-12)).epsilon(1e-9));
  // a1 strictly decreasing on (0, R1)
  for (double r = 0.0; r < tf.r1 - 0.02; r += 0.02) CHECK(tf.a1(r) > tf.a1(r + 0.02));
  // (1,2,1) has Gamma1 = 0: a20 constant inside the inner disk
  CHECK(tf.a20(0.0) == doctest::Approx(tf.a20(tf.r1 / 2)).epsilon(1e-14));
  // g1 < g2 iff R1 < R2
  CHECK(tf.r1 < tf.r2);
}

TEST_CASE("a2 monotonicity matches the sign of Gamma1") {
  // Gamma1 > 0 (g < g1): a20 decreasing
  PhysParams pd = validate(1.0, 2.0, 0.5, 0.05, 0);
  TFProfile tfd = build_tf(pd, classify(pd));
  CHECK(tfd.a20(0.1) > tfd.a20(0.5));
  // Gamma1 < 0 (g > g1): a20 increasing near 0, and a2(0) is the documented
  // positive constant (lambda2 - (g/g1) lambda1)/(g2 Gamma)
  PhysParams pi = validate(1.0, 2.0, 1.2, 0.05, 0);
  TFProfile tfi = build_tf(pi, classify(pi));
  CHECK(classify(pi).kind == RegimeKind::TwoDisks);  // 1.2 < 1.2808
  CHECK(tfi.a20(0.1) < tfi.a20(0.5));
  const GammaConstants G = tfi.gam;
  const double expected =
      (tfi.lambda2 - (pi.g / pi.g1) * tfi.lambda1) / (pi.g2 * G.gamma);
  CHECK(tfi.a2(0.0) == doctest::Approx(expected).epsilon(1e-13));
  CHECK(expected > 0);
  // a2 bounded below on the inner disk by min(a20(R1), a20(0))
  const double bound = std::min(tfi.a20(tfi.r1), tfi.a20(0.0));
  for (double r = 0; r <= tfi.r1; r += 0.01) CHECK(tfi.a2(r) >= bound - 1e-13);
}

TEST_CASE("annulus multipliers: identities and ordering") {
  TFProfile tf = reference_annulus();
  const PhysParams& p = tf.params;
  const GammaConstants& G = tf.gam;
  CHECK(tf.r2_minus < tf.r1);
  CHECK(tf.r1 < tf.r2_plus);
  CHECK(tf.lambda2 == doctest::Approx(sq(tf.r2_plus)).epsilon(1e-14));
  CHECK(tf.lambda1 - (p.g / p.g2) * tf.lambda2 ==
        doctest::Approx(G.gamma2 * sq(tf.r1)).epsilon(1e-12));
  // identity residual below 1e-10 in absolute terms
  CHECK(std::abs(tf.lambda2 - (p.g / p.g1) * tf.lambda1 - G.gamma1 * sq(tf.r2_minus)) <
        1e-10);
  // frozen reference from the independent normalization solve (fsolve on the
  // two mass equations, xtol 1e-14): lambda1, lambda2 for (1, 2, 1.35)
  CHECK(tf.lambda1 == doctest::Approx(1.128379167095513).epsilon(1e-12));
  CHECK(tf.lambda2 == doctest::Approx(1.455918814923041).epsilon(1e-12));
}

TEST_CASE("eps-profile: radii, slopes and the finite-difference oracle") {
  TFProfile tf = reference_disk();
  const PhysParams& p = tf.params;
  // at the limiting multipliers, R_{i,eps} = R_{i,0}
  EpsProfile ep = build_eps_profile(p, tf.lambda1, tf.lambda2);
  CHECK(ep.R1 == doctest::Approx(tf.r1).epsilon(1e-13));
  CHECK(ep.R2 == doctest::Approx(tf.r2).epsilon(1e-13));

  // perturbed multipliers: beta from the exact derivative matches central FD
  EpsProfile e2 = build_eps_profile(p, tf.lambda1 * 1.01, tf.lambda2 * 0.995);
  const double h = 1e-6;
  const double fd1 = -(e2.a1eps(e2.R1 + h) - e2.a1eps(e2.R1 - h)) / (2 * h);
  CHECK(std::abs(std::pow(e2.beta1, 3) - fd1) < 1e-8);
  const double fd2 = -(e2.combo2(e2.R2 + h) - e2.combo2(e2.R2 - h)) / (2 * h);
  CHECK(std::abs(std::pow(e2.beta2, 3) - fd2) < 1e-8);
  // the combination vanishes at R2 by construction
  CHECK(std::abs(e2.combo2(e2.R2)) < 1e-12);
  // a1eps changes sign exactly once, positive to negative, at R1
  CHECK(e2.a1eps(e2.R1 * 0.9) > 0);
  CHECK(e2.a1eps(e2.R1 * 1.1) < 0);

  CHECK_THROWS_WITH_AS(build_eps_profile(p, 0.1, 2.0),
                       doctest::Contains("DegenerateRadius"), Error);
}

TEST_CASE("limiting F: boundary value, boundedness, dual-quadrature oracle") {
  TFProfile tf = reference_disk();
  CHECK(tf.limiting_F(1, tf.r1) == 0.0);
  CHECK(tf.limiting_F(2, tf.outer_radius(2)) == 0.0);
  // bounded sup over a dense grid
  for (int i = 1; i <= 2; ++i) {
    const double s = tf.sup_F0(i);
    CHECK(s > 0);
    CHECK(s < 10);
  }
  // F_{1,0}(0) = int_0^R1 s a1 ds / a1(0), two independent quadrature routes
  const double q1 = integrate([&](double s) { return s * tf.a1(s); }, 0.0, tf.r1, 1e-13);
  const double q2 = integrate_split([&](double s) { return s * tf.a1(s); }, 0.0,
                                    tf.r1, {tf.r1 / 3, 2 * tf.r1 / 3}, 1e-13);
  CHECK(std::abs(q1 - q2) < 1e-9);
  CHECK(tf.limiting_F(1, 0.0) == doctest::Approx(q1 / tf.a1(0.0)).epsilon(1e-11));
  // continuity at the support edge
  CHECK(tf.limiting_F(2, tf.r2 - 1e-9) == doctest::Approx(0.0).epsilon(1e-7));
  // xi0 closed forms against quadrature at a few radii, both components
  for (double r : {0.0, 0.3, 0.7, 1.0}) {
    const double xi2q =
        integrate_split([&](double s) { return s * tf.a2(s); }, r, tf.r2, {tf.r1}, 1e-13);
    CHECK(tf.xi0(2, r) == doctest::Approx(xi2q).epsilon(1e-10));
  }
}

TEST_CASE("normalization holds over randomized valid samples (both regimes)") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  int done = 0;
  while (done < 30) {
    const double g1 = 0.4 + 2.0 * U(rng);
    const double g2 = g1 * (1.02 + 2.0 * U(rng));
    const double thr = regime_threshold(g1, g2);
    const bool ann = done % 2;
    double g;
    if (ann) {
      const double hi = 0.995 * std::sqrt(g1 * g2);
      if (hi <= 1.01 * thr) continue;
      g = 1.01 * thr + (hi - 1.01 * thr) * U(rng);
    } else {
      g = thr * (0.05 + 0.9 * U(rng));
    }
    PhysParams p;
    try {
      p = validate(g1, g2, g, 0.05, 0);
    } catch (const Error&) {
      continue;
    }
    TFProfile tf = build_tf(p, classify(p));
    std::vector<double> breaks = tf.annulus()
                                     ? std::vector<double>{tf.r2_minus, tf.r1, tf.r2_plus}
                                     : std::vector<double>{tf.r1, tf.r2};
    for (int i = 1; i <= 2; ++i) {
      const double m = 2 * kPi *
                       integrate_split([&](double r) { return tf.a(i, r) * r; }, 0.0,
                                       tf.outer_radius(2), breaks, 1e-13);
      CHECK(std::abs(m - 1.0) < 1e-10);
      // nonnegative everywhere
      for (double r = 0; r < 1.3 * tf.outer_radius(2); r += 0.03)
        CHECK(tf.a(i, r) >= 0.0);
    }
    // g1 < g2 iff R1 < R2 in the disk regime
    if (!tf.annulus()) CHECK((g1 < g2) == (tf.r1 < tf.r2));
    ++done;
  }
}
