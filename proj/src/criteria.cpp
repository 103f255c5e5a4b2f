#include <chrono>
#include <cmath>
#include <random>
#include <sstream>

#include "tcbec/report.hpp"

namespace tcbec {

namespace {

constexpr double kPi = 3.14159265358979323846;

using Clock = std::chrono::steady_clock;
double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

bool in_band(double x, double center, double half) {
  return x >= center - half && x <= center + half;
}

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(6) << v;
  return os.str();
}

// --- criterion 1: TF normalization over randomized parameter sets ----------

CriterionResult crit_tf_normalization(const RunConfig& cfg) {
  CriterionResult res;
  res.id = "tf-normalization";
  auto t0 = Clock::now();
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  double worst = 0;
  int count = 0;
  Json samples = Json::array();
  for (int trial = 0; count < 24 && trial < 400; ++trial) {
    const double g1 = 0.5 + 1.5 * U(rng);
    const double g2 = g1 * (1.05 + 1.5 * U(rng));
    const double thr = regime_threshold(g1, g2);
    const bool want_annulus = (count % 2 == 1);
    double g;
    if (want_annulus) {
      const double hi = 0.999 * std::sqrt(g1 * g2);
      if (hi <= 1.002 * thr) continue;
      g = thr * 1.02 + (hi - thr * 1.02) * U(rng);
    } else {
      g = (0.05 + 0.90 * U(rng)) * thr;
    }
    PhysParams p;
    try {
      p = validate(g1, g2, g, 0.05, 0.0);
    } catch (const Error&) {
      continue;
    }
    Regime reg;
    try {
      reg = classify(p);
    } catch (const Error&) {
      continue;
    }
    TFProfile tf = build_tf(p, reg);
    std::vector<double> breaks = tf.annulus()
                                     ? std::vector<double>{tf.r2_minus, tf.r1, tf.r2_plus}
                                     : std::vector<double>{tf.r1, tf.r2};
    const double top = tf.outer_radius(2);
    for (int i = 1; i <= 2; ++i) {
      const double m = 2.0 * kPi *
                       integrate_split([&](double r) { return tf.a(i, r) * r; }, 0.0,
                                       top, breaks, 1e-13);
      worst = std::max(worst, std::abs(m - 1.0));
    }
    if (tf.annulus()) {
      const GammaConstants& G = tf.gam;
      const double id1 = std::abs(tf.lambda1 - (p.g / p.g2) * tf.lambda2 -
                                  G.gamma2 * tf.r1 * tf.r1);
      const double id2 = std::abs(tf.lambda2 - (p.g / p.g1) * tf.lambda1 -
                                  G.gamma1 * tf.r2_minus * tf.r2_minus);
      worst = std::max({worst, id1, id2});
    }
    samples.push_back({{"g1", g1}, {"g2", g2}, {"g", g},
                       {"regime", regime_name(reg.kind)}});
    ++count;
  }
  res.runtime_sec = seconds_since(t0);
  res.pass = (count >= 20) && (worst < 1e-10) && (res.runtime_sec < 1.0);
  res.summary = "max |int a_i - 1| = " + fmt(worst) + " over " + std::to_string(count) +
                " parameter sets (tol 1e-10), runtime " + fmt(res.runtime_sec) + " s (< 1 s)";
  res.evidence = {{"worst_deviation", worst}, {"sets", count}, {"samples", samples}};
  return res;
}

// --- criterion 2: Painleve-II solver ----------------------------------------

CriterionResult crit_painleve(const RunConfig&, std::optional<double> shooting_v0) {
  CriterionResult res;
  res.id = "painleve";
  auto t0 = Clock::now();
  PainleveTable t = solve_hastings_mcleod();

  double resid = 0;
  const double h2 = t.h * t.h;
  for (std::size_t k = 1; k + 1 < t.n; ++k) {
    const double d1 = t.v[k + 1] - t.v[k], d2 = t.v[k] - t.v[k - 1];
    resid = std::max(resid,
                     std::abs((d1 - d2) / h2 - t.v[k] * (t.v[k] * t.v[k] + t.s[k])));
  }

  // left-tail deviation from sqrt(-s)
  std::vector<double> xs, ys;
  for (std::size_t k = 0; k < t.n; ++k) {
    const double s = t.s[k];
    if (s >= -0.75 * t.L && s <= -0.5 * t.L) {
      const double d = std::abs(t.v[k] - std::sqrt(-s));
      if (d > 0) {
        xs.push_back(-s);
        ys.push_back(d);
      }
    }
  }
  LineFit tail = fit_loglog(xs, ys);
  CancellationFit canc = check_cancellation(t);
  const double v0 = t.value(0.0);

  res.runtime_sec = seconds_since(t0);
  bool ok = resid < 1e-8 && tail.slope <= -2.0 && in_band(canc.exponent, -4.0, 0.5) &&
            canc.at_plus_half_L < 1e-10 && res.runtime_sec < 10.0;
  double oracle_diff = 0;
  if (shooting_v0) {
    oracle_diff = std::abs(v0 - *shooting_v0);
    ok = ok && oracle_diff < 1e-6;
  }
  res.pass = ok;
  res.summary = "V(0) = " + fmt(v0) +
                (shooting_v0 ? " (|collocation - shooting| = " + fmt(oracle_diff) + ", tol 1e-6)"
                             : " (shooting oracle not supplied)") +
                ", residual " + fmt(resid) + " (< 1e-8), left-tail slope " +
                fmt(tail.slope) + " (<= -2), cancellation exponent " + fmt(canc.exponent) +
                " (-4 +/- 0.5), runtime " + fmt(res.runtime_sec) + " s (< 10 s)";
  res.evidence = {{"V0", v0},
                  {"residual", resid},
                  {"left_tail_slope", tail.slope},
                  {"cancellation_exponent", canc.exponent},
                  {"cancellation_at_plus_half_L", canc.at_plus_half_L},
                  {"newton_iters", t.newton_iters}};
  if (shooting_v0) res.evidence["shooting_V0"] = *shooting_v0;
  return res;
}

// --- criterion 3: uniqueness proxy ------------------------------------------

CriterionResult crit_uniqueness(const RunConfig& cfg) {
  CriterionResult res;
  res.id = "uniqueness";
  auto t0 = Clock::now();
  PhysParams p = validate(1.0, 2.0, 1.0, 0.05, 0.0);
  TFProfile tf = build_tf(p, classify(p));
  RadialGrid grid = make_grid(cfg.grid.r_max_factor * tf.r2, p.eps,
                              cfg.grid.points_per_layer);
  SolveOptions o1;
  o1.init = InitKind::TFSmoothed;
  SolveOptions o2;
  o2.init = InitKind::Gaussian;
  RadialState a = solve_coupled(p, tf, grid, o1);
  RadialState b = solve_coupled(p, tf, grid, o2);
  double d = 0;
  for (std::size_t j = 0; j <= grid.n; ++j)
    d = std::max({d, std::abs(a.eta1[j] - b.eta1[j]), std::abs(a.eta2[j] - b.eta2[j])});

  PhysParams ps = validate(1.0, 1.0, 0.5, 0.05, 0.0);
  TFProfile tfs = build_tf(ps, classify(ps));
  RadialGrid grids = make_grid(cfg.grid.r_max_factor * tfs.r2, ps.eps,
                               cfg.grid.points_per_layer);
  SolveOptions os;
  os.init = InitKind::Gaussian;  // seeds the two components differently
  RadialState s = solve_coupled(ps, tfs, grids, os);
  double sym = 0;
  for (std::size_t j = 0; j <= grids.n; ++j)
    sym = std::max(sym, std::abs(s.eta1[j] - s.eta2[j]));

  res.runtime_sec = seconds_since(t0);
  res.pass = d < 1e-7 && sym < 1e-8 && res.runtime_sec < 120.0;
  res.summary = "two-init sup difference " + fmt(d) + " (< 1e-7), symmetric max|eta1-eta2| " +
                fmt(sym) + " (< 1e-8), runtime " + fmt(res.runtime_sec) + " s (< 120 s)";
  res.evidence = {{"two_init_diff", d},
                  {"symmetric_diff", sym},
                  {"iters_tf_init", a.iterations},
                  {"iters_gauss_init", b.iterations}};
  return res;
}

// --- sweep-based criteria ----------------------------------------------------

const LineFit* find_fit(const SweepReport& sw, const std::string& name) {
  auto it = sw.slopes.find(name);
  return it == sw.slopes.end() ? nullptr : &it->second;
}

CriterionResult crit_lagrange_rate(const SweepReport& sw) {
  CriterionResult res;
  res.id = "lagrange-rate";
  const double sweep_runtime = sw.runtime_sec;
  const LineFit* f1 = find_fit(sw, "lambda1");
  const LineFit* f2 = find_fit(sw, "lambda2");
  if (!f1 || !f2) {
    res.summary = "sweep produced no multiplier fits";
    return res;
  }
  res.pass = in_band(f1->slope, 2.0, 0.3) && in_band(f2->slope, 2.0, 0.3) &&
             sweep_runtime < 600.0;
  res.runtime_sec = sweep_runtime;
  // The normalized constants expose the log factor: err/(eps^2 |log eps|)
  // constant means the quadratic-with-log rate is exact and a three-point
  // log-log fit sits near 1.66, not 2.
  std::string consts;
  for (const auto& r : sw.records)
    if (!r.failed)
      consts += fmt(r.lambda1_err / (r.eps * r.eps * std::abs(std::log(r.eps)))) + " ";
  res.summary = "|lambda_i - lambda_i0| slopes " + fmt(f1->slope) + ", " + fmt(f2->slope) +
                " (2 +/- 0.3), sweep runtime " + fmt(sweep_runtime) +
                " s (< 600 s); err1/(eps^2|log eps|) = [ " + consts +
                "] - the |log eps| factor pins the component-1 fit below the band";
  res.evidence = {{"slope1", f1->slope}, {"slope2", f2->slope},
                  {"points1", f1->y}, {"points2", f2->y}};
  return res;
}

CriterionResult crit_supnorm_rates(const SweepReport& sw, const RunConfig& cfg) {
  CriterionResult res;
  res.id = "supnorm-rates";
  auto t0 = Clock::now();
  const LineFit* g1 = find_fit(sw, "sup_global1");
  const LineFit* g2 = find_fit(sw, "sup_global2");
  if (!g1 || !g2) {
    res.summary = "sweep produced no sup-norm fits";
    return res;
  }
  std::vector<double> cs, Cs;
  for (const auto& r : sw.records)
    if (!r.failed && r.tail_c > 0) {
      cs.push_back(r.tail_c);
      Cs.push_back(r.tail_C);
    }
  bool tail_ok = cs.size() == sw.records.size();
  double c_spread = 0, C_spread = 0;
  if (tail_ok) {
    c_spread = *std::max_element(cs.begin(), cs.end()) /
               *std::min_element(cs.begin(), cs.end());
    C_spread = *std::max_element(Cs.begin(), Cs.end()) /
               *std::min_element(Cs.begin(), Cs.end());
    tail_ok = c_spread <= 1.5 && C_spread <= 3.0;
  }

  // Interior rate: at the sweep's desk-scale eps the eps^{2/3} layers are
  // wider than any admissible collar (delta < quarter-gaps), so the interior
  // band is measured on its own smaller-eps scan where the layers clear the
  // widest admissible collar.
  PhysParams p = cfg.params;
  TFProfile tf = build_tf(p, classify(p));
  const double dm = 0.999 * std::min(tf.r1 / 4.0, (tf.r2 - tf.r1) / 4.0);
  const std::vector<double> eps_in{0.003, 0.0015, 0.00075};
  std::vector<double> ierr;
  for (double e : eps_in) {
    PhysParams pe = p;
    pe.eps = e;
    RadialGrid grid = make_grid(cfg.grid.r_max_factor * tf.r2, e, 16.0);
    RadialState st = solve_coupled(pe, tf, grid);
    double sup = 0;
    for (std::size_t j = 0; j <= grid.n; ++j) {
      const double r = grid.r[j];
      const double d1 = std::abs(st.eta1[j] - std::sqrt(tf.a1(r)));
      const double d2 = std::abs(st.eta2[j] - std::sqrt(tf.a2(r)));
      if (r <= tf.r1 - dm) sup = std::max({sup, d1, d2});
      if (r >= tf.r1 + dm && r <= tf.r2 - dm) sup = std::max(sup, d2);
    }
    ierr.push_back(sup);
  }
  LineFit in = fit_loglog(eps_in, ierr);

  res.runtime_sec = seconds_since(t0);
  res.pass = in_band(g1->slope, 1.0 / 3.0, 0.15) && in_band(g2->slope, 1.0 / 3.0, 0.15) &&
             in_band(in.slope, 2.0, 0.4) && tail_ok;
  res.summary = "global slopes " + fmt(g1->slope) + ", " + fmt(g2->slope) +
                " (1/3 +/- 0.15), interior slope " + fmt(in.slope) +
                " (2 +/- 0.4, eps in {3e-3,1.5e-3,7.5e-4}), tail envelope c spread x" +
                fmt(c_spread) + " (<= 1.5), C spread x" + fmt(C_spread) + " (<= 3)";
  res.evidence = {{"global1", g1->slope},   {"global2", g2->slope},
                  {"interior", in.slope},   {"interior_errs", ierr},
                  {"interior_eps", eps_in}, {"delta_meas", dm},
                  {"tail_c", cs},           {"tail_C", Cs}};
  return res;
}

CriterionResult crit_approx_distance(const SweepReport& sw) {
  CriterionResult res;
  res.id = "approx-distance";
  const LineFit* tr = find_fit(sw, "triple");
  if (!tr) {
    res.summary = "sweep produced no triple-norm fit";
    return res;
  }
  res.pass = in_band(tr->slope, 5.0 / 3.0, 0.25);
  res.summary = "triple-norm slope " + fmt(tr->slope) + " (5/3 +/- 0.25)";
  res.evidence = {{"slope", tr->slope}, {"values", tr->y}};
  return res;
}

CriterionResult crit_linearized_positivity(const SweepReport& sw) {
  CriterionResult res;
  res.id = "linearized-positivity";
  std::vector<double> eigs;
  for (const auto& r : sw.records)
    if (!r.failed) eigs.push_back(r.weighted_eig_min);
  bool pos = !eigs.empty();
  for (double e : eigs) pos = pos && e > 0;
  bool stable = true;
  double worst_change = 0;
  for (std::size_t i = 0; i + 1 < eigs.size(); ++i) {
    const double change = std::abs(eigs[i + 1] - eigs[i]) / std::abs(eigs[i]);
    worst_change = std::max(worst_change, change);
    stable = stable && change < 0.5;
  }
  res.pass = pos && stable;
  std::string list;
  for (double e : eigs) list += fmt(e) + " ";
  res.summary = "weighted smallest eigenvalues [ " + list +
                "] all positive, max halving change " + fmt(100 * worst_change) +
                "% (< 50%)";
  res.evidence = {{"weighted_eigs", eigs}, {"worst_change", worst_change}};
  return res;
}

CriterionResult crit_inner_layer(const SweepReport& sw) {
  CriterionResult res;
  res.id = "inner-layer";
  const LineFit* f = find_fit(sw, "layer");
  if (!f) {
    res.summary = "sweep produced no layer fit";
    return res;
  }
  res.pass = f->slope >= 2.0 / 3.0;
  res.summary = "inner-layer mismatch slope " + fmt(f->slope) + " (>= 2/3)";
  res.evidence = {{"slope", f->slope}, {"values", f->y}};
  return res;
}

CriterionResult crit_aux_functions(const SweepReport& sw) {
  CriterionResult res;
  res.id = "aux-functions";
  const LineFit* f1 = find_fit(sw, "F1_err");
  const LineFit* f2 = find_fit(sw, "F2_err");
  if (!f1 || !f2) {
    res.summary = "sweep produced no F fits";
    return res;
  }
  std::vector<double> C1, C2;
  double xi_dev = 0;
  for (const auto& r : sw.records)
    if (!r.failed) {
      C1.push_back(r.F1_outer_C);
      C2.push_back(r.F2_outer_C);
      xi_dev = std::max({xi_dev, std::abs(r.xi1_at0 - 1.0 / (2.0 * kPi)),
                         std::abs(r.xi2_at0 - 1.0 / (2.0 * kPi))});
    }
  auto spread = [](const std::vector<double>& v) {
    return *std::max_element(v.begin(), v.end()) / *std::min_element(v.begin(), v.end());
  };
  const bool outer_ok = !C1.empty() && spread(C1) <= 2.0 && spread(C2) <= 2.0;
  res.pass = in_band(f1->slope, 1.0 / 3.0, 0.15) && in_band(f2->slope, 1.0 / 3.0, 0.15) &&
             outer_ok && xi_dev < 1e-9;
  std::string consts;
  for (const auto& r : sw.records)
    if (!r.failed) consts += fmt(r.F1_err / std::pow(r.eps, 2.0 / 3.0)) + " ";
  res.summary = "||F_i - F_i0|| slopes " + fmt(f1->slope) + ", " + fmt(f2->slope) +
                " (1/3 +/- 0.15), outer-bound constant spreads x" + fmt(spread(C1)) +
                ", x" + fmt(spread(C2)) + " (<= 2), |xi(0) - 1/(2pi)| = " + fmt(xi_dev) +
                " (< 1e-9); err1/eps^{2/3} = [ " + consts +
                "] - the observed sharp rate is 2/3, faster than the 1/3 the band encodes";
  res.evidence = {{"F1_slope", f1->slope}, {"F2_slope", f2->slope},
                  {"F1_outer_C", C1}, {"F2_outer_C", C2}, {"xi_dev", xi_dev}};
  return res;
}

// --- criterion 6: residual rates ---------------------------------------------

struct ApproxBundle {
  RadialGrid grid;
  RadialState st;
  EpsProfile ep;
  ScalarGroundState s1, s2, s2m;
  ApproxSolution ap;
  Residual re;
};

ApproxBundle build_bundle(const PhysParams& base, double eps, const TFProfile& tf,
                          double ppl, double r_max_factor) {
  PhysParams p = base;
  p.eps = eps;
  ApproxBundle b;
  const double delta = gluing_delta(tf);
  b.grid = make_grid(r_max_factor * tf.outer_radius(2), eps, ppl);
  b.st = solve_coupled(p, tf, b.grid);
  b.ep = build_eps_profile(p, b.st.lambda1_eps, b.st.lambda2_eps, tf.annulus());
  b.s1 = solve_scalar(p, b.ep, ScalarWhich::Reduced1, b.grid);
  b.s2 = solve_scalar(p, b.ep, ScalarWhich::Reduced2, b.grid);
  ScalarSet set;
  set.reduced1 = &b.s1;
  set.reduced2 = &b.s2;
  if (tf.annulus()) {
    b.s2m = solve_scalar(p, b.ep, ScalarWhich::AnnulusMinus, b.grid, delta);
    set.annulus_minus = &b.s2m;
  }
  b.ap = build_approx(p, b.ep, set, b.grid, delta);
  b.re = residual(p, b.ep, b.ap);
  return b;
}

CriterionResult crit_residual_rates(const RunConfig& cfg) {
  CriterionResult res;
  res.id = "residual-rates";
  auto t0 = Clock::now();
  PhysParams p = cfg.params;
  TFProfile tf = build_tf(p, classify(p));

  // The outer E2 norm lives on the gluing collar; the R2 layer tail stops
  // polluting it (and the O(eps^2) mismatch regime opens) only once
  // exp(-c d/eps^{2/3}) at the seam falls below eps^2, i.e. eps <~ 2e-3.
  const std::vector<double> eps_rate{0.002, 0.001, 0.0005};
  std::vector<double> inner, outer, e1norms;
  for (double e : eps_rate) {
    ApproxBundle b = build_bundle(p, e, tf, 16.0, cfg.grid.r_max_factor);
    inner.push_back(b.re.e2_inner);
    outer.push_back(b.re.e2_outer);
    e1norms.push_back(b.re.e1_total);
  }
  LineFit fi = fit_loglog(eps_rate, inner);
  LineFit fo = fit_loglog(eps_rate, outer);
  double e1max = *std::max_element(e1norms.begin(), e1norms.end());

  res.runtime_sec = seconds_since(t0);
  res.pass = in_band(fi.slope, 5.0 / 3.0, 0.2) && in_band(fo.slope, 2.0, 0.2) &&
             e1max < 1e-8;
  res.summary = "||E2|| slopes inner " + fmt(fi.slope) + " (5/3 +/- 0.2), outer " +
                fmt(fo.slope) + " (2 +/- 0.2); ||E1|| max " + fmt(e1max) +
                " over eps in {2e-3, 1e-3, 5e-4} (< 1e-8)";
  res.evidence = {{"e2_inner_slope", fi.slope}, {"e2_outer_slope", fo.slope},
                  {"e2_inner", inner},          {"e2_outer", outer},
                  {"eps_rate", eps_rate},       {"e1_norms", e1norms}};
  return res;
}

// --- criterion 11: energy identities -----------------------------------------

CriterionResult crit_energy_identities(const RunConfig& cfg) {
  CriterionResult res;
  res.id = "energy-identities";
  auto t0 = Clock::now();
  PhysParams p = validate(1.0, 2.0, 1.0, 0.05, 0.0);
  TFProfile tf = build_tf(p, classify(p));
  RadialGrid grid = make_grid(cfg.grid.r_max_factor * tf.r2, p.eps,
                              cfg.grid.points_per_layer);
  RadialState st = solve_coupled(p, tf, grid);
  EnergyBreakdown0 eb = energy(p, tf, st);
  const double rewrite_rel = std::abs(eb.E - eb.Etilde - eb.K) / std::abs(eb.E);

  // 2D splitting and positivity on a coarse desk-scale grid
  PhysParams p2 = validate(1.0, 2.0, 1.0, 0.1, 0.0);
  TFProfile tf2 = build_tf(p2, classify(p2));
  RadialGrid rg2 = make_grid(cfg.grid.r_max_factor * tf2.r2, p2.eps, 24.0);
  RadialState rst2 = solve_coupled(p2, tf2, rg2);
  Grid2D g2 = make_grid2d(1.5 * tf2.r2, 128);  // 2D box fixed at 1.5 x R2
  Rotation2DOptions ropt;
  ropt.tol = 1e-10;
  RotationField base = solve_rotating_2d(p2, g2, 0.0, rst2, ropt);
  std::vector<double> e1(base.u1.size()), e2(base.u2.size());
  for (std::size_t k = 0; k < base.u1.size(); ++k) {
    e1[k] = std::abs(base.u1[k]);
    e2[k] = std::abs(base.u2[k]);
  }

  std::mt19937_64 rng(cfg.seed + 7);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  double worst_split = 0, worst_F0 = 1e300;
  const double W = g2.half_width;
  for (int trial = 0; trial < 3; ++trial) {
    RotationField f;
    f.grid = g2;
    f.omega = 0.35;
    f.u1.resize(e1.size());
    f.u2.resize(e2.size());
    const double a1 = U(rng), b1 = U(rng), a2 = U(rng), b2 = U(rng);
    for (std::size_t i = 0; i < g2.n; ++i)
      for (std::size_t j = 0; j < g2.n; ++j) {
        const double x = g2.coord(i), y = g2.coord(j);
        const std::size_t k = g2.idx(i, j);
        const Complex v1 = std::polar(1.0 + 0.2 * std::cos(kPi * x / W) *
                                                std::cos(kPi * y / W),
                                      a1 * x + b1 * y);
        const Complex v2 = std::polar(1.0 + 0.15 * std::sin(kPi * x / W) *
                                                std::sin(kPi * y / W),
                                      a2 * x - b2 * y);
        f.u1[k] = e1[k] * v1;
        f.u2[k] = e2[k] * v2;
      }
    // project to unit mass so the multiplier terms drop from the identity
    double m1 = 0, m2 = 0;
    for (std::size_t k = 0; k < f.u1.size(); ++k) {
      m1 += std::norm(f.u1[k]);
      m2 += std::norm(f.u2[k]);
    }
    m1 *= g2.h * g2.h;
    m2 *= g2.h * g2.h;
    for (auto& z : f.u1) z /= std::sqrt(m1);
    for (auto& z : f.u2) z /= std::sqrt(m2);

    EnergyBreakdown eb2 = energy_split(p2, f, e1, e2);
    worst_split = std::max(worst_split, eb2.split_residual / std::abs(eb2.E_omega));
    RotationField f0 = f;
    f0.omega = 0.0;
    EnergyBreakdown eb0 = energy_split(p2, f0, e1, e2);
    worst_F0 = std::min(worst_F0, eb0.F_omega);  // F^0 must stay >= -1e-9
  }

  // phase-invariance check: u = e^{i alpha} eta gives F = 0
  RotationField fp;
  fp.grid = g2;
  fp.omega = 0.35;
  fp.u1.resize(e1.size());
  fp.u2.resize(e2.size());
  for (std::size_t k = 0; k < e1.size(); ++k) {
    fp.u1[k] = std::polar(e1[k], 0.7);
    fp.u2[k] = std::polar(e2[k], -1.2);
  }
  EnergyBreakdown ebp = energy_split(p2, fp, e1, e2);
  const double phase_F = std::abs(ebp.F_omega);

  res.runtime_sec = seconds_since(t0);
  res.pass = rewrite_rel < 1e-9 && worst_split < 1e-6 && worst_F0 >= -1e-9 &&
             phase_F < 1e-9 * std::abs(ebp.E_omega);
  res.summary = "|E - Etilde - K|/|E| = " + fmt(rewrite_rel) +
                " (< 1e-9); 2D splitting residual " + fmt(worst_split) +
                " relative (< 1e-6); min F^0 over random pairs " + fmt(worst_F0) +
                " (>= -1e-9); |F| at pure phase " + fmt(phase_F);
  res.evidence = {{"rewrite_rel", rewrite_rel},
                  {"split_rel", worst_split},
                  {"min_F0", worst_F0},
                  {"phase_F", phase_F},
                  {"E", eb.E},
                  {"Etilde", eb.Etilde},
                  {"K", eb.K}};
  return res;
}

// --- criterion 12: vortex-free rotation --------------------------------------

CriterionResult crit_vortex_free(const RunConfig& cfg) {
  CriterionResult res;
  res.id = "vortex-free";
  auto t0 = Clock::now();
  PhysParams p = validate(1.0, 2.0, 1.0, 0.075, 0.0);
  TFProfile tf = build_tf(p, classify(p));
  RadialGrid rg = make_grid(cfg.grid.r_max_factor * tf.r2, p.eps,
                            cfg.grid.points_per_layer);
  RadialState rst = solve_coupled(p, tf, rg);
  OmegaThreshold th = omega_threshold(p, tf);
  const double omega = cfg.rotation.omega_frac * th.usable();

  Grid2D g2 = make_grid2d(1.5 * tf.r2, cfg.rotation.grid_n);  // 2D box: 1.5 x R2
  Rotation2DOptions ropt;
  ropt.noise_amplitude = cfg.rotation.noise_amplitude;
  ropt.seed = cfg.seed;

  RotationField f0 = solve_rotating_2d(p, g2, 0.0, rst, ropt);
  double d0 = 0;
  for (std::size_t i = 0; i < g2.n; ++i)
    for (std::size_t j = 0; j < g2.n; ++j) {
      const double r = std::hypot(g2.coord(i), g2.coord(j));
      if (r > rg.r_max) continue;
      const double v1 = interp_cubic_uniform(rst.eta1, 0.0, rg.h, r);
      const double v2 = interp_cubic_uniform(rst.eta2, 0.0, rg.h, r);
      d0 = std::max({d0, std::abs(std::abs(f0.u1[g2.idx(i, j)]) - v1),
                     std::abs(std::abs(f0.u2[g2.idx(i, j)]) - v2)});
    }

  RotationField f = solve_rotating_2d(p, g2, omega, rst, ropt);
  std::vector<VortexMark> marks = detect_vortices(f, 1e-4);

  // Lemma 7.3-type bound |u_i|^2 <= mu_i/g_i (+ tiny slack)
  double q1max = 0, q2max = 0;
  for (std::size_t k = 0; k < f.u1.size(); ++k) {
    q1max = std::max(q1max, std::norm(f.u1[k]));
    q2max = std::max(q2max, std::norm(f.u2[k]));
  }
  const bool density_ok = q1max <= f.mu1 / p.g1 + 1e-6 && q2max <= f.mu2 / p.g2 + 1e-6;

  res.runtime_sec = seconds_since(t0);
  res.pass = marks.empty() && d0 < 5.0 * g2.h && density_ok &&
             res.runtime_sec < 1800.0;
  res.summary = "Omega = " + fmt(omega) + " (0.5 x ceiling " + fmt(th.usable()) +
                (th.literal_positive ? "" : ", literal alpha=1300 threshold negative at this eps") +
                "): " + std::to_string(marks.size()) +
                " windings above floor (expect 0); Omega=0 field matches radial to " +
                fmt(d0) + " (< 5h = " + fmt(5 * g2.h) + "), runtime " +
                fmt(res.runtime_sec) + " s (< 1800 s)";
  res.evidence = {{"omega", omega},
                  {"omega_star_literal", th.omega_star},
                  {"omega0", th.omega0},
                  {"windings", marks.size()},
                  {"omega0_field_diff", d0},
                  {"mu1", f.mu1},
                  {"mu2", f.mu2},
                  {"density_bound_ok", density_ok},
                  {"iters_omega", f.iterations},
                  {"iters_zero", f0.iterations}};
  return res;
}

// --- criterion 13: annulus regime ---------------------------------------------

CriterionResult crit_annulus(const RunConfig& cfg) {
  CriterionResult res;
  res.id = "annulus";
  auto t0 = Clock::now();
  PhysParams p = validate(1.0, 2.0, 1.35, 0.05, 0.0);
  TFProfile tf = build_tf(p, classify(p));
  const GammaConstants& G = tf.gam;

  double norm_dev = 0;
  const std::vector<double> breaks{tf.r2_minus, tf.r1, tf.r2_plus};
  for (int i = 1; i <= 2; ++i) {
    const double m = 2.0 * kPi *
                     integrate_split([&](double r) { return tf.a(i, r) * r; }, 0.0,
                                     tf.r2_plus, breaks, 1e-13);
    norm_dev = std::max(norm_dev, std::abs(m - 1.0));
  }
  const double id1 =
      std::abs(tf.lambda1 - (p.g / p.g2) * tf.lambda2 - G.gamma2 * tf.r1 * tf.r1);
  const double id2 = std::abs(tf.lambda2 - (p.g / p.g1) * tf.lambda1 -
                              G.gamma1 * tf.r2_minus * tf.r2_minus);
  const double id3 = std::abs(tf.lambda2 - tf.r2_plus * tf.r2_plus);
  const double ids = std::max({id1, id2, id3});

  const std::vector<double> eps_list{0.1, 0.05, 0.025};
  std::vector<double> band_err;
  double hole_min = -1;
  const double delta = gluing_delta(tf);
  for (double e : eps_list) {
    PhysParams pe = p;
    pe.eps = e;
    RadialGrid grid = make_grid(cfg.grid.r_max_factor * tf.r2_plus, e,
                                cfg.grid.points_per_layer);
    RadialState st = solve_coupled(pe, tf, grid);
    double be = 0;
    double hm = 1e300;
    for (std::size_t j = 0; j <= grid.n; ++j) {
      const double r = grid.r[j];
      if (r >= tf.r2_minus && r <= tf.r2_plus)
        be = std::max(be, std::abs(st.eta2[j] - std::sqrt(tf.a2(r))));
      if (r <= tf.r2_minus - delta) hm = std::min(hm, st.eta2[j]);
    }
    band_err.push_back(be);
    if (e == 0.05) hole_min = hm;
  }
  LineFit band = fit_loglog(eps_list, band_err);

  res.runtime_sec = seconds_since(t0);
  res.pass = norm_dev < 1e-10 && ids < 1e-10 && in_band(band.slope, 1.0 / 3.0, 0.15) &&
             hole_min > 0;
  res.summary = "normalization dev " + fmt(norm_dev) + ", radii-identity residuals " +
                fmt(ids) + " (< 1e-10), annular-band sup slope " + fmt(band.slope) +
                " (1/3 +/- 0.15), min eta2 in the hole " + fmt(hole_min) + " (> 0)";
  res.evidence = {{"norm_dev", norm_dev}, {"identity_residuals", ids},
                  {"band_slope", band.slope}, {"band_err", band_err},
                  {"hole_min", hole_min}};
  return res;
}

}  // namespace

std::vector<std::string> criterion_ids() {
  return {"tf-normalization", "painleve",        "uniqueness",
          "lagrange-rate",    "supnorm-rates",   "residual-rates",
          "approx-distance",  "linearized-positivity", "inner-layer",
          "aux-functions",    "energy-identities", "vortex-free",
          "annulus"};
}

CriterionResult reproduce(const std::string& id, const RunConfig& config,
                          const SweepReport* shared_sweep,
                          std::optional<double> painleve_shooting_v0) {
  const bool sweep_based = (id == "lagrange-rate" || id == "supnorm-rates" ||
                            id == "approx-distance" || id == "linearized-positivity" ||
                            id == "inner-layer" || id == "aux-functions");
  SweepReport local;
  const SweepReport* sw = shared_sweep;
  if (sweep_based && !sw) {
    local = run_sweep(config);
    sw = &local;
  }
  if (id == "tf-normalization") return crit_tf_normalization(config);
  if (id == "painleve") return crit_painleve(config, painleve_shooting_v0);
  if (id == "uniqueness") return crit_uniqueness(config);
  if (id == "lagrange-rate") return crit_lagrange_rate(*sw);
  if (id == "supnorm-rates") return crit_supnorm_rates(*sw, config);
  if (id == "residual-rates") return crit_residual_rates(config);
  if (id == "approx-distance") return crit_approx_distance(*sw);
  if (id == "linearized-positivity") return crit_linearized_positivity(*sw);
  if (id == "inner-layer") return crit_inner_layer(*sw);
  if (id == "aux-functions") return crit_aux_functions(*sw);
  if (id == "energy-identities") return crit_energy_identities(config);
  if (id == "vortex-free") return crit_vortex_free(config);
  if (id == "annulus") return crit_annulus(config);
  throw Error("UnknownCriterion", "no criterion named '" + id + "'");
}

}  // namespace tcbec
