#include "tcbec/report.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <future>
#include <iomanip>

namespace tcbec {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

RunConfig config_from_json(const Json& j) {
  RunConfig c;
  const Json& pj = j.contains("params") ? j.at("params") : j;
  c.params = validate(pj.value("g1", 1.0), pj.value("g2", 2.0), pj.value("g", 1.0),
                      pj.value("eps", 0.05), pj.value("omega", 0.0));
  if (j.contains("grid")) {
    c.grid.r_max_factor = j["grid"].value("r_max_factor", 1.5);
    c.grid.points_per_layer = j["grid"].value("points_per_layer", 32.0);
  }
  if (j.contains("sweep") && j["sweep"].contains("eps_list")) {
    c.eps_list = j["sweep"]["eps_list"].get<std::vector<double>>();
    if (c.eps_list.empty()) throw Error("ConfigRejected", "empty eps list");
    for (std::size_t i = 0; i + 1 < c.eps_list.size(); ++i) {
      const double ratio = c.eps_list[i + 1] / c.eps_list[i];
      if (!(ratio >= 0.4 && ratio <= 0.6))
        throw Error("ConfigRejected",
                    "eps sweep must be strictly decreasing with ratio in [0.4, 0.6]");
    }
  }
  if (j.contains("rotation")) {
    c.rotation.grid_n = j["rotation"].value("grid_n", std::size_t(256));
    c.rotation.omega_frac = j["rotation"].value("omega_frac", 0.5);
    c.rotation.noise_amplitude = j["rotation"].value("noise_amplitude", 0.01);
  }
  if (j.contains("output")) c.out_dir = j["output"].value("dir", "out");
  c.seed = j.value("seed", std::uint64_t(1234));
  c.threads = j.value("threads", 1);
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("ConfigRejected", "cannot open config file " + path);
  Json j = Json::parse(in);
  return config_from_json(j);
}

Json config_to_json(const RunConfig& c) {
  Json j;
  j["schema_version"] = 1;
  j["params"] = {{"g1", c.params.g1}, {"g2", c.params.g2}, {"g", c.params.g},
                 {"eps", c.params.eps}, {"omega", c.params.omega}};
  j["grid"] = {{"r_max_factor", c.grid.r_max_factor},
               {"points_per_layer", c.grid.points_per_layer}};
  j["sweep"] = {{"eps_list", c.eps_list}};
  j["rotation"] = {{"grid_n", c.rotation.grid_n},
                   {"omega_frac", c.rotation.omega_frac},
                   {"noise_amplitude", c.rotation.noise_amplitude}};
  j["output"] = {{"dir", c.out_dir}};
  j["seed"] = c.seed;
  j["threads"] = c.threads;
  return j;
}

namespace {

Json fit_to_json(const LineFit& f) {
  return Json{{"slope", f.slope},
              {"intercept", f.intercept},
              {"slope_stderr", f.slope_stderr},
              {"rms_residual", f.rms_residual},
              {"x", f.x},
              {"y", f.y}};
}

EpsRecord compute_record(const PhysParams& base, double eps, const RunConfig& cfg,
                         const TFProfile& tf, const PainleveTable& table) {
  PhysParams p = base;
  p.eps = eps;
  EpsRecord rec;
  rec.eps = eps;
  const double delta = gluing_delta(tf);
  const double r_outer = tf.outer_radius(2);
  RadialGrid grid = make_grid(cfg.grid.r_max_factor * r_outer, eps,
                              cfg.grid.points_per_layer);
  SolveOptions sopt;
  RadialState st = solve_coupled(p, tf, grid, sopt);
  rec.lambda1 = st.lambda1_eps;
  rec.lambda2 = st.lambda2_eps;
  rec.lambda1_err = std::abs(st.lambda1_eps - tf.lambda1);
  rec.lambda2_err = std::abs(st.lambda2_eps - tf.lambda2);
  rec.iterations = st.iterations;
  rec.residual = st.residual;

  const bool ann = tf.annulus();
  EpsProfile ep = build_eps_profile(p, st.lambda1_eps, st.lambda2_eps, ann);

  // sup-norm errors against the limiting profiles
  for (std::size_t j = 0; j <= grid.n; ++j) {
    const double r = grid.r[j];
    const double d1 = std::abs(st.eta1[j] - std::sqrt(tf.a1(r)));
    const double d2 = std::abs(st.eta2[j] - std::sqrt(tf.a2(r)));
    rec.sup_global1 = std::max(rec.sup_global1, d1);
    rec.sup_global2 = std::max(rec.sup_global2, d2);
    if (!ann) {
      if (r <= tf.r1 - delta) rec.sup_interior = std::max(rec.sup_interior, std::max(d1, d2));
      if (r >= tf.r1 + delta && r <= tf.r2 - delta)
        rec.sup_midband = std::max(rec.sup_midband, d2);
    } else {
      if (r <= tf.r1 - delta) rec.sup_interior = std::max(rec.sup_interior, d1);
      if (r >= tf.r2_minus + delta && r <= tf.r1 - delta)
        rec.sup_interior = std::max(rec.sup_interior, d2);
      if (r >= tf.r2_minus && r <= tf.r2_plus)
        rec.sup_midband = std::max(rec.sup_midband, d2);
    }
  }
  const bool symmetric = (base.g1 == base.g2);
  if (symmetric) {
    for (std::size_t j = 0; j <= grid.n; ++j)
      rec.sym_diff = std::max(rec.sym_diff, std::abs(st.eta1[j] - st.eta2[j]));
  }

  // scalar reduced states and the glued approximation; the gluing needs a
  // genuine gap R1 < R2 and is skipped for symmetric couplings (there the
  // problem collapses to a single scalar equation)
  ScalarGroundState s1 = solve_scalar(p, ep, ScalarWhich::Reduced1, grid);
  ScalarGroundState s2 = solve_scalar(p, ep, ScalarWhich::Reduced2, grid);
  ScalarGroundState s2m;
  ScalarSet scalars;
  scalars.reduced1 = &s1;
  scalars.reduced2 = &s2;
  if (ann) {
    s2m = solve_scalar(p, ep, ScalarWhich::AnnulusMinus, grid, delta);
    scalars.annulus_minus = &s2m;
  }
  if (!symmetric) {
    ApproxSolution ap = build_approx(p, ep, scalars, grid, delta);
    rec.gluing_mismatch = ap.gluing_mismatch;
    Residual res = residual(p, ep, ap);
    rec.e1_total = res.e1_total;
    rec.e2_inner = res.e2_inner;
    rec.e2_outer = res.e2_outer;
    ApproxDistance dist = compare_to_true(ap, st);
    rec.triple_dist = dist.triple;
    rec.sup_away1 = dist.sup_away1;
    rec.sup_away2 = dist.sup_away2;

    // linearized spectrum
    SpectrumReport spec = linearized_spectrum(p, ep, ap, 4);
    rec.plain_eig_min = spec.plain.empty() ? 0 : spec.plain.front();
    rec.weighted_eig_min = spec.weighted.empty() ? 0 : spec.weighted.front();
  }

  // auxiliary functions
  AuxFunctions aux = aux_functions(st, tf, &scalars);
  rec.xi1_at0 = aux.xi1[0];
  rec.xi2_at0 = aux.xi2[0];
  for (std::size_t j = 0; j <= grid.n; ++j) {
    const double r = grid.r[j];
    if (j < aux.capped_from1) {
      const double f0 = tf.limiting_F(1, r);
      if (std::isfinite(f0)) rec.F1_err = std::max(rec.F1_err, std::abs(aux.F1[j] - f0));
      if (r >= tf.r1)
        rec.F1_outer_C = std::max(rec.F1_outer_C, aux.F1[j] / std::pow(eps, 2.0 / 3.0));
    }
    if (j < aux.capped_from2) {
      const double f0 = tf.limiting_F(2, r);
      if (std::isfinite(f0)) rec.F2_err = std::max(rec.F2_err, std::abs(aux.F2[j] - f0));
      if (r >= tf.outer_radius(2))
        rec.F2_outer_C = std::max(rec.F2_outer_C, aux.F2[j] / std::pow(eps, 2.0 / 3.0));
    }
  }

  // inner-layer match against the Hastings-McLeod profile
  BoundaryLayer layer{ep.beta1, ep.R1, eps, p.g1 * tf.gam.gamma};
  const double halfwin = 3.0 * std::pow(eps, 2.0 / 3.0);
  for (std::size_t j = 0; j <= grid.n; ++j) {
    const double r = grid.r[j];
    if (std::abs(r - ep.R1) <= halfwin) {
      const double v = inner_expansion(layer, table, r);
      rec.layer_err = std::max(rec.layer_err, std::abs(st.eta1[j] - v));
    }
  }

  // Tail envelope fit: log eta2 = log(C eps^{1/3}) - c (r - R2)/eps^{2/3}.
  // Component 2's outer tail is the clean self-similar window: component 1's
  // would cross R2 (where the decay rate changes) already at s ~ 1.3 for the
  // largest sweep eps. The window must also stay inside the domain.
  {
    std::vector<double> xs, ys;
    const double e23 = std::pow(eps, 2.0 / 3.0);
    for (std::size_t j = 0; j <= grid.n; ++j) {
      const double s = (grid.r[j] - ep.R2) / e23;
      if (s >= 1.6 && s <= 2.6 && st.eta2[j] > 1e-250) {
        xs.push_back(s);
        ys.push_back(std::log(st.eta2[j] / std::pow(eps, 1.0 / 3.0)));
      }
    }
    if (xs.size() >= 3) {
      LineFit lf = fit_line(xs, ys);
      rec.tail_c = -lf.slope;
      rec.tail_C = std::exp(lf.intercept);
    }
  }

  // energy identity
  EnergyBreakdown0 eb = energy(p, tf, st);
  rec.energy_E = eb.E;
  rec.energy_identity_rel = std::abs(eb.E - eb.Etilde - eb.K) / std::abs(eb.E);
  rec.grad1 = eb.grad1;
  rec.grad2 = eb.grad2;
  return rec;
}

}  // namespace

SweepReport run_sweep(const RunConfig& config) {
  const auto t0 = std::chrono::steady_clock::now();
  SweepReport rep;
  rep.config = config;
  const PhysParams& p0 = config.params;
  const Regime regime = classify(p0);
  const TFProfile tf = build_tf(p0, regime);
  const PainleveTable table = solve_hastings_mcleod();

  rep.records.resize(config.eps_list.size());
  auto run_one = [&](std::size_t i) {
    const double eps = config.eps_list[i];
    try {
      rep.records[i] = compute_record(p0, eps, config, tf, table);
    } catch (const std::exception& e) {
      rep.records[i] = EpsRecord{};
      rep.records[i].eps = eps;
      rep.records[i].failed = true;
      rep.records[i].error = e.what();
    }
  };
  if (config.threads > 1) {
    std::vector<std::future<void>> futs;
    for (std::size_t i = 0; i < rep.records.size(); ++i)
      futs.push_back(std::async(std::launch::async, run_one, i));
    for (auto& f : futs) f.get();
  } else {
    for (std::size_t i = 0; i < rep.records.size(); ++i) run_one(i);
  }

  // slope fits over the non-failed records
  std::vector<double> eps_ok;
  auto collect = [&](auto getter) {
    std::vector<double> v;
    for (const auto& r : rep.records)
      if (!r.failed) v.push_back(getter(r));
    return v;
  };
  for (const auto& r : rep.records)
    if (!r.failed) eps_ok.push_back(r.eps);
  if (eps_ok.size() >= 3) {
    auto addfit = [&](const std::string& name, std::vector<double> vals) {
      bool pos = true;
      for (double v : vals) pos = pos && v > 0;
      if (pos) rep.slopes[name] = fit_loglog(eps_ok, vals);
    };
    addfit("lambda1", collect([](const EpsRecord& r) { return r.lambda1_err; }));
    addfit("lambda2", collect([](const EpsRecord& r) { return r.lambda2_err; }));
    addfit("sup_global1", collect([](const EpsRecord& r) { return r.sup_global1; }));
    addfit("sup_global2", collect([](const EpsRecord& r) { return r.sup_global2; }));
    addfit("interior", collect([](const EpsRecord& r) {
             return std::max(r.sup_interior, r.sup_midband);
           }));
    addfit("sup_band2", collect([](const EpsRecord& r) { return r.sup_midband; }));
    addfit("e2_inner", collect([](const EpsRecord& r) { return r.e2_inner; }));
    addfit("e2_outer", collect([](const EpsRecord& r) { return r.e2_outer; }));
    addfit("triple", collect([](const EpsRecord& r) { return r.triple_dist; }));
    addfit("layer", collect([](const EpsRecord& r) { return r.layer_err; }));
    addfit("F1_err", collect([](const EpsRecord& r) { return r.F1_err; }));
    addfit("F2_err", collect([](const EpsRecord& r) { return r.F2_err; }));
    addfit("gluing", collect([](const EpsRecord& r) { return r.gluing_mismatch; }));
    addfit("sup_away1", collect([](const EpsRecord& r) { return r.sup_away1; }));
    addfit("sup_away2", collect([](const EpsRecord& r) { return r.sup_away2; }));
  }
  rep.runtime_sec =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

Json SweepReport::to_json() const {
  Json j;
  j["schema_version"] = 1;
  j["config"] = config_to_json(config);
  Json recs = Json::array();
  for (const auto& r : records) {
    Json rj;
    rj["eps"] = r.eps;
    rj["failed"] = r.failed;
    if (r.failed) {
      rj["error"] = r.error;
    } else {
      rj["lambda1"] = r.lambda1;
      rj["lambda2"] = r.lambda2;
      rj["lambda1_err"] = r.lambda1_err;
      rj["lambda2_err"] = r.lambda2_err;
      rj["sup_global1"] = r.sup_global1;
      rj["sup_global2"] = r.sup_global2;
      rj["sup_interior"] = r.sup_interior;
      rj["sup_midband"] = r.sup_midband;
      rj["e1_total"] = r.e1_total;
      rj["e2_inner"] = r.e2_inner;
      rj["e2_outer"] = r.e2_outer;
      rj["triple_dist"] = r.triple_dist;
      rj["sup_away1"] = r.sup_away1;
      rj["sup_away2"] = r.sup_away2;
      rj["F1_err"] = r.F1_err;
      rj["F2_err"] = r.F2_err;
      rj["F1_outer_C"] = r.F1_outer_C;
      rj["F2_outer_C"] = r.F2_outer_C;
      rj["layer_err"] = r.layer_err;
      rj["weighted_eig_min"] = r.weighted_eig_min;
      rj["plain_eig_min"] = r.plain_eig_min;
      rj["xi1_at0"] = r.xi1_at0;
      rj["xi2_at0"] = r.xi2_at0;
      rj["gluing_mismatch"] = r.gluing_mismatch;
      rj["tail_c"] = r.tail_c;
      rj["tail_C"] = r.tail_C;
      rj["energy_E"] = r.energy_E;
      rj["energy_identity_rel"] = r.energy_identity_rel;
      rj["grad1"] = r.grad1;
      rj["grad2"] = r.grad2;
      rj["sym_diff"] = r.sym_diff;
      rj["iterations"] = r.iterations;
      rj["residual"] = r.residual;
    }
    recs.push_back(rj);
  }
  j["records"] = recs;
  Json sl = Json::object();
  for (const auto& [name, fit] : slopes) sl[name] = fit_to_json(fit);
  j["slopes"] = sl;
  return j;
}

void write_sweep_csv(const std::string& path, const SweepReport& rep) {
  std::ofstream out(path);
  out << std::setprecision(17);
  out << "eps,failed,lambda1,lambda2,lambda1_err,lambda2_err,sup_global1,sup_global2,"
         "sup_interior,sup_midband,e1_total,e2_inner,e2_outer,triple_dist,sup_away1,"
         "sup_away2,F1_err,F2_err,F1_outer_C,F2_outer_C,layer_err,weighted_eig_min,"
         "plain_eig_min,xi1_at0,xi2_at0,gluing_mismatch,tail_c,tail_C,energy_E,"
         "energy_identity_rel,grad1,grad2,sym_diff,iterations,residual\n";
  for (const auto& r : rep.records) {
    out << r.eps << ',' << (r.failed ? 1 : 0) << ',' << r.lambda1 << ',' << r.lambda2
        << ',' << r.lambda1_err << ',' << r.lambda2_err << ',' << r.sup_global1 << ','
        << r.sup_global2 << ',' << r.sup_interior << ',' << r.sup_midband << ','
        << r.e1_total << ',' << r.e2_inner << ',' << r.e2_outer << ',' << r.triple_dist
        << ',' << r.sup_away1 << ',' << r.sup_away2 << ',' << r.F1_err << ',' << r.F2_err
        << ',' << r.F1_outer_C << ',' << r.F2_outer_C << ',' << r.layer_err << ','
        << r.weighted_eig_min << ',' << r.plain_eig_min << ',' << r.xi1_at0 << ','
        << r.xi2_at0 << ',' << r.gluing_mismatch << ',' << r.tail_c << ',' << r.tail_C
        << ',' << r.energy_E << ',' << r.energy_identity_rel << ',' << r.grad1 << ','
        << r.grad2 << ',' << r.sym_diff << ',' << r.iterations << ',' << r.residual
        << '\n';
  }
}

void write_tf_csv(const std::string& path, const TFProfile& tf) {
  std::ofstream out(path);
  out << std::setprecision(17);
  out << "r,a1,a2,F10,F20\n";
  const double rmax = 1.2 * tf.outer_radius(2);
  const int n = 2000;
  for (int k = 0; k <= n; ++k) {
    const double r = rmax * double(k) / n;
    const double F1 = tf.limiting_F(1, r), F2 = tf.limiting_F(2, r);
    out << r << ',' << tf.a1(r) << ',' << tf.a2(r) << ','
        << (std::isfinite(F1) ? F1 : -1.0) << ',' << (std::isfinite(F2) ? F2 : -1.0)
        << '\n';
  }
}

Json tf_header_json(const TFProfile& tf) {
  Json j;
  j["regime"] = regime_name(tf.regime.kind);
  j["threshold"] = tf.regime.threshold;
  j["lambda1"] = tf.lambda1;
  j["lambda2"] = tf.lambda2;
  j["R1"] = tf.r1;
  if (tf.annulus()) {
    j["R2_minus"] = tf.r2_minus;
    j["R2_plus"] = tf.r2_plus;
  } else {
    j["R2"] = tf.r2;
  }
  j["gamma1"] = tf.gam.gamma1;
  j["gamma2"] = tf.gam.gamma2;
  j["gamma"] = tf.gam.gamma;
  j["sup_F0_1"] = tf.sup_F0(1);
  j["sup_F0_2"] = tf.sup_F0(2);
  return j;
}

void write_painleve_csv(const std::string& path, const PainleveTable& t) {
  std::ofstream out(path);
  out << std::setprecision(17);
  out << "s,V,Vprime\n";
  // thinned to a plot-friendly density
  const std::size_t stride = std::max<std::size_t>(1, t.n / 4000);
  for (std::size_t k = 0; k < t.n; k += stride)
    out << t.s[k] << ',' << t.v[k] << ',' << t.v_prime[k] << '\n';
}

void write_state_csv(const std::string& path, const RadialState& st, const TFProfile& tf) {
  std::ofstream out(path);
  out << std::setprecision(17);
  out << "r,eta1,eta2,sqrt_a1,sqrt_a2\n";
  for (std::size_t j = 0; j <= st.grid.n; ++j) {
    const double r = st.grid.r[j];
    out << r << ',' << st.eta1[j] << ',' << st.eta2[j] << ','
        << std::sqrt(tf.a1(r)) << ',' << std::sqrt(tf.a2(r)) << '\n';
  }
}

void write_approx_csv(const std::string& path, const ApproxSolution& ap, const Residual& re) {
  std::ofstream out(path);
  out << std::setprecision(17);
  out << "r,eta1_check,eta2_check,E1,E2\n";
  for (std::size_t j = 0; j <= ap.grid.n; ++j)
    out << ap.grid.r[j] << ',' << ap.eta1_check[j] << ',' << ap.eta2_check[j] << ','
        << re.E1[j] << ',' << re.E2[j] << '\n';
}

void write_aux_csv(const std::string& path, const AuxFunctions& aux, const TFProfile& tf) {
  std::ofstream out(path);
  out << std::setprecision(17);
  out << "r,xi1,xi2,F1,F2,F10,F20\n";
  for (std::size_t j = 0; j <= aux.grid.n; ++j) {
    const double r = aux.grid.r[j];
    const double F10 = tf.limiting_F(1, r), F20 = tf.limiting_F(2, r);
    out << r << ',' << aux.xi1[j] << ',' << aux.xi2[j] << ',' << aux.F1[j] << ','
        << aux.F2[j] << ',' << (std::isfinite(F10) ? F10 : -1.0) << ','
        << (std::isfinite(F20) ? F20 : -1.0) << '\n';
  }
}

void write_field_csv(const std::string& path, const RotationField& f) {
  std::ofstream out(path);
  out << std::setprecision(17);
  out << "x,y,abs_u1,phase_u1,abs_u2,phase_u2\n";
  const Grid2D& g = f.grid;
  for (std::size_t i = 0; i < g.n; ++i)
    for (std::size_t j = 0; j < g.n; ++j) {
      const Complex z1 = f.u1[g.idx(i, j)], z2 = f.u2[g.idx(i, j)];
      out << g.coord(i) << ',' << g.coord(j) << ',' << std::abs(z1) << ',' << std::arg(z1)
          << ',' << std::abs(z2) << ',' << std::arg(z2) << '\n';
    }
}

}  // namespace tcbec
