#include <doctest.h>

#include <cmath>
#include <random>

#include "tcbec/approx.hpp"

using namespace tcbec;

namespace {

struct Bundle {
  PhysParams p;
  TFProfile tf;
  RadialGrid grid;
  RadialState st;
  EpsProfile ep;
  ScalarGroundState s1, s2, s2m;
  ApproxSolution ap;
};

Bundle make_bundle(double g, double eps, double ppl = 16.0) {
  Bundle b;
  b.p = validate(1, 2, g, eps, 0);
  b.tf = build_tf(b.p, classify(b.p));
  b.grid = make_grid(1.5 * b.tf.outer_radius(2), eps, ppl);
  b.st = solve_coupled(b.p, b.tf, b.grid);
  b.ep = build_eps_profile(b.p, b.st.lambda1_eps, b.st.lambda2_eps, b.tf.annulus());
  b.s1 = solve_scalar(b.p, b.ep, ScalarWhich::Reduced1, b.grid);
  b.s2 = solve_scalar(b.p, b.ep, ScalarWhich::Reduced2, b.grid);
  ScalarSet set;
  set.reduced1 = &b.s1;
  set.reduced2 = &b.s2;
  const double delta = gluing_delta(b.tf);
  if (b.tf.annulus()) {
    b.s2m = solve_scalar(b.p, b.ep, ScalarWhich::AnnulusMinus, b.grid, delta);
    set.annulus_minus = &b.s2m;
  }
  b.ap = build_approx(b.p, b.ep, set, b.grid, delta);
  return b;
}

}  // namespace

TEST_CASE("glued approximation: slaving identity and seam values") {
  Bundle b = make_bundle(1.0, 0.05);
  const ApproxSolution& ap = b.ap;
  // eta2_check^2 = a2eps + (g/g2) a1eps - (g/g2) eta1_check^2 on |x| <= R_eps
  for (std::size_t j = 0; j <= b.grid.n; ++j) {
    const double r = b.grid.r[j];
    if (r > ap.R_eps) break;
    const double rhs = b.ep.a2eps(r) + (b.p.g / b.p.g2) * b.ep.a1eps(r) -
                       (b.p.g / b.p.g2) * sq(ap.eta1_check[j]);
    CHECK(sq(ap.eta2_check[j]) == doctest::Approx(rhs).epsilon(1e-12));
  }
  // value at the origin, spelled out
  CHECK(sq(ap.eta2_check[0]) ==
        doctest::Approx(b.ep.a2eps(0) + (b.p.g / b.p.g2) * b.ep.a1eps(0) -
                        (b.p.g / b.p.g2) * sq(b.s1.eta_hat[0]))
            .epsilon(1e-12));
  // eta1_check = 0 beyond R_eps; eta2_check = eta_hat_2 beyond R_eps + delta
  for (std::size_t j = 0; j <= b.grid.n; ++j) {
    const double r = b.grid.r[j];
    if (r >= ap.R_eps) CHECK(ap.eta1_check[j] == 0.0);
    if (r >= ap.R_eps + ap.delta)
      CHECK(ap.eta2_check[j] == doctest::Approx(b.s2.eta_hat[j]).epsilon(1e-14));
  }
  // cutoff shape
  CHECK(ap.zeta.front() == 1.0);
  CHECK(ap.zeta.back() == 0.0);
}

TEST_CASE("gluing mismatch shrinks at second order across eps halvings") {
  // at eps >~ 0.05 the R2 layer still overlaps the gluing seam; the O(eps^2)
  // window opens once eps^{2/3} clears the seam-to-edge distance
  std::vector<double> epss{0.02, 0.01, 0.005};
  std::vector<double> mm;
  for (double e : epss) mm.push_back(make_bundle(1.0, e).ap.gluing_mismatch);
  LineFit f = fit_loglog(epss, mm);
  CHECK(f.slope == doctest::Approx(2.0).epsilon(0.25));
}

TEST_CASE("approximation approaches the limiting profiles uniformly") {
  std::vector<double> epss{0.1, 0.05, 0.025};
  double prev = 1e300;
  for (double e : epss) {
    Bundle b = make_bundle(1.0, e);
    double sup = 0;
    for (std::size_t j = 0; j <= b.grid.n; ++j) {
      const double r = b.grid.r[j];
      sup = std::max({sup, std::abs(b.ap.eta1_check[j] - std::sqrt(b.tf.a1(r))),
                      std::abs(b.ap.eta2_check[j] - std::sqrt(b.tf.a2(r)))});
    }
    CHECK(sup < prev);
    prev = sup;
  }
}

TEST_CASE("residual structure: E1 vanishes outside the cutoff collar") {
  Bundle b = make_bundle(1.0, 0.05);
  Residual re = residual(b.p, b.ep, b.ap);
  const double scale = std::max(1.0, b.st.lambda2_eps);
  for (std::size_t j = 0; j < b.grid.n; ++j) {
    const double r = b.grid.r[j];
    if (r <= b.ap.R_eps - b.ap.delta - b.grid.h || r >= b.ap.R_eps + b.grid.h)
      CHECK(std::abs(re.E1[j]) < 1e-8 * scale);
  }
  // E2 vanishes beyond the outer gluing collar
  for (std::size_t j = 0; j < b.grid.n; ++j) {
    const double r = b.grid.r[j];
    if (r >= b.ap.R_eps + b.ap.delta + b.grid.h) CHECK(std::abs(re.E2[j]) < 1e-9 * scale);
  }
}

TEST_CASE("negative radicand is reported with a location") {
  // Force the failure: multipliers implying slaved density below zero.
  PhysParams p = validate(1, 2, 1, 0.05, 0);
  TFProfile tf = build_tf(p, classify(p));
  RadialGrid grid = make_grid(1.5 * tf.r2, p.eps, 8.0);
  EpsProfile good = build_eps_profile(p, tf.lambda1, tf.lambda2);
  ScalarGroundState s1 = solve_scalar(p, good, ScalarWhich::Reduced1, grid);
  ScalarGroundState s2 = solve_scalar(p, good, ScalarWhich::Reduced2, grid);
  ScalarSet set;
  set.reduced1 = &s1;
  set.reduced2 = &s2;
  // lambda2 too small: the slaved combination dips negative before R_eps
  EpsProfile bad = build_eps_profile(p, tf.lambda1, 0.45 * tf.lambda2);
  CHECK_THROWS_WITH_AS(build_approx(p, bad, set, grid, gluing_delta(tf)),
                       doctest::Contains("NegativeRadicand"), Error);
}

TEST_CASE("triple norm: norm axioms on random samples") {
  RadialGrid g = make_grid(2.0, 0.1, 8.0);
  std::mt19937_64 rng(7);
  std::normal_distribution<double> N(0.0, 1.0);
  std::vector<double> f1(g.n + 1), f2(g.n + 1), h1(g.n + 1), h2(g.n + 1), z(g.n + 1, 0.0);
  for (std::size_t j = 0; j <= g.n; ++j) {
    f1[j] = N(rng);
    f2[j] = N(rng);
    h1[j] = N(rng);
    h2[j] = N(rng);
  }
  const double a = triple_norm(g, 0.1, false, 0, 1.0, f1, f2);
  CHECK(a > 0);
  CHECK(triple_norm(g, 0.1, false, 0, 1.0, z, z) == 0.0);
  // homogeneity
  std::vector<double> f1s(f1), f2s(f2);
  for (auto& v : f1s) v *= -2.5;
  for (auto& v : f2s) v *= -2.5;
  CHECK(triple_norm(g, 0.1, false, 0, 1.0, f1s, f2s) == doctest::Approx(2.5 * a));
  // triangle inequality
  std::vector<double> sum1(f1), sum2(f2);
  for (std::size_t j = 0; j <= g.n; ++j) {
    sum1[j] += h1[j];
    sum2[j] += h2[j];
  }
  CHECK(triple_norm(g, 0.1, false, 0, 1.0, sum1, sum2) <=
        a + triple_norm(g, 0.1, false, 0, 1.0, h1, h2) + 1e-12);
}

TEST_CASE("compare_to_true: zero on identical input, grid mismatch rejected") {
  Bundle b = make_bundle(1.0, 0.1);
  RadialState self;
  self.grid = b.grid;
  self.eta1 = b.ap.eta1_check;
  self.eta2 = b.ap.eta2_check;
  ApproxDistance d = compare_to_true(b.ap, self);
  CHECK(d.triple == 0.0);
  CHECK(d.sup_away1 == 0.0);
  RadialState other;
  other.grid = make_grid(1.5 * b.tf.r2, 0.05, 16.0);
  other.eta1.assign(other.grid.n + 1, 0.0);
  other.eta2.assign(other.grid.n + 1, 0.0);
  CHECK_THROWS_WITH_AS(compare_to_true(b.ap, other), doctest::Contains("GridMismatch"),
                       Error);
}

TEST_CASE("linearized operator: symmetry of the assembled form") {
  Bundle b = make_bundle(1.0, 0.1, 8.0);
  // the quadratic form evaluated via the matrix route must agree with the
  // direct evaluation: Q(x) computed both ways on random vectors
  std::mt19937_64 rng(11);
  std::normal_distribution<double> N(0.0, 1.0);
  for (int trial = 0; trial < 3; ++trial) {
    std::vector<double> phi(b.grid.n + 1), psi(b.grid.n + 1);
    for (std::size_t j = 0; j <= b.grid.n; ++j) {
      phi[j] = N(rng);
      psi[j] = N(rng);
    }
    phi[b.grid.n] = psi[b.grid.n] = 0.0;
    const double q = linearized_quadratic_form(b.p, b.ep, b.ap, phi, psi);
    CHECK(std::isfinite(q));
    // coercivity sample: the form controls a weighted norm from below
    const double weighted =
        sq(triple_norm(b.grid, b.p.eps, b.ap.annulus, b.ap.r_eps, b.ap.R_eps, phi, psi));
    CHECK(q > 0.002 * weighted);
  }
}

TEST_CASE("linearized spectrum: positive weighted eigenvalue, stable margin") {
  std::vector<double> epss{0.1, 0.05};
  std::vector<double> eigs;
  for (double e : epss) {
    Bundle b = make_bundle(1.0, e);
    SpectrumReport s = linearized_spectrum(b.p, b.ep, b.ap, 3);
    REQUIRE(!s.weighted.empty());
    REQUIRE(!s.plain.empty());
    CHECK(s.weighted.front() > 0);
    CHECK(s.plain.front() > 0);
    // eigenvalues come out sorted
    for (std::size_t i = 1; i < s.weighted.size(); ++i)
      CHECK(s.weighted[i] >= s.weighted[i - 1]);
    eigs.push_back(s.weighted.front());
  }
  CHECK(std::abs(eigs[1] - eigs[0]) / eigs[0] < 0.5);
}

TEST_CASE("uniform distance to the approximation away from the origin: ~eps trend") {
  std::vector<double> epss{0.1, 0.05, 0.025};
  std::vector<double> ratios;
  for (double e : epss) {
    Bundle b = make_bundle(1.0, e);
    ApproxDistance d = compare_to_true(b.ap, b.st);
    ratios.push_back(std::max(d.sup_away1, d.sup_away2) / e);
  }
  const double spread = *std::max_element(ratios.begin(), ratios.end()) /
                        *std::min_element(ratios.begin(), ratios.end());
  CHECK(spread < 4.0);  // C eps with a stable constant
}

TEST_CASE("annulus construction: five-piece composite with positive hole floor") {
  Bundle b = make_bundle(1.35, 0.05);
  REQUIRE(b.tf.annulus());
  // the slaved identity on [r_eps + delta, R_eps]
  for (std::size_t j = 0; j <= b.grid.n; ++j) {
    const double r = b.grid.r[j];
    if (r < b.ap.r_eps + b.ap.delta || r > b.ap.R_eps) continue;
    const double rhs = b.ep.a2eps(r) + (b.p.g / b.p.g2) * b.ep.a1eps(r) -
                       (b.p.g / b.p.g2) * sq(b.ap.eta1_check[j]);
    CHECK(sq(b.ap.eta2_check[j]) == doctest::Approx(rhs).epsilon(1e-12));
  }
  // center: eta1 slaved to eta_hat_2^-, eta2 equals eta_hat_2^-
  for (std::size_t j = 0; j <= b.grid.n; ++j) {
    const double r = b.grid.r[j];
    if (r > b.ap.r_eps) break;
    CHECK(b.ap.eta2_check[j] == doctest::Approx(b.s2m.eta_hat[j]).epsilon(1e-14));
  }
  // residual norms exist and are finite
  Residual re = residual(b.p, b.ep, b.ap);
  CHECK(std::isfinite(re.e1_inner));
  CHECK(std::isfinite(re.e2_outer));
  // the true solution stays close in the triple norm
  ApproxDistance d = compare_to_true(b.ap, b.st);
  CHECK(d.triple < 1.0);
}
