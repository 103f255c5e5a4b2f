#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "tcbec/report.hpp"

namespace fs = std::filesystem;
using namespace tcbec;

namespace {

RunConfig make_config(const std::string& config_path, const std::string& out_dir,
                      int threads) {
  RunConfig cfg;
  if (!config_path.empty()) cfg = load_config(config_path);
  if (!out_dir.empty()) cfg.out_dir = out_dir;
  if (threads > 0) cfg.threads = threads;
  fs::create_directories(cfg.out_dir);
  return cfg;
}

void write_json(const fs::path& path, const Json& j) {
  std::ofstream out(path);
  out << j.dump(2) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-component condensate toolkit: Thomas-Fermi profiles, "
               "Painleve-II layers, coupled ground states, rotation experiments"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand

  std::string config_path, out_dir;
  int threads = 0;
  app.add_option("--config", config_path, "JSON configuration file");
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--threads", threads, "worker threads for sweeps");

  // tf
  auto* tf_cmd = app.add_subcommand("tf", "limiting profiles, radii and multipliers");
  // painleve
  auto* pl_cmd = app.add_subcommand("painleve", "Hastings-McLeod table and diagnostics");
  double pl_L = 16.0;
  std::size_t pl_n = 320001;
  pl_cmd->add_option("--L", pl_L, "truncation half-width (>= 8)");
  pl_cmd->add_option("--n", pl_n, "grid size (>= 2000)");
  // solve
  auto* solve_cmd = app.add_subcommand("solve", "coupled radial ground state");
  double solve_eps = 0;
  double solve_ppl = 0;
  std::string solve_init = "tf";
  solve_cmd->add_option("--eps", solve_eps, "override eps");
  solve_cmd->add_option("--points-per-layer", solve_ppl, "grid resolution override");
  solve_cmd->add_option("--init", solve_init, "initialization: tf | gaussian");
  // approx
  auto* approx_cmd = app.add_subcommand("approx", "glued approximation and residuals");
  double approx_eps = 0;
  approx_cmd->add_option("--eps", approx_eps, "override eps");
  // aux
  auto* aux_cmd = app.add_subcommand("aux", "auxiliary functions xi_i, F_i");
  double aux_eps = 0;
  aux_cmd->add_option("--eps", aux_eps, "override eps");
  // rotate
  auto* rot_cmd = app.add_subcommand("rotate", "2D rotating minimization");
  double rot_omega = -1.0, rot_frac = -1.0;
  std::size_t rot_n = 0;
  long rot_iters = 0;
  rot_cmd->add_option("--omega", rot_omega, "absolute rotation speed");
  rot_cmd->add_option("--omega-frac", rot_frac, "fraction of the rotation ceiling");
  rot_cmd->add_option("--grid", rot_n, "2D nodes per side");
  rot_cmd->add_option("--max-iters", rot_iters, "iteration cap");
  // sweep
  auto* sweep_cmd = app.add_subcommand("sweep", "eps sweep with rate fits");
  // reproduce
  auto* rep_cmd = app.add_subcommand("reproduce", "run a named acceptance criterion");
  std::vector<std::string> rep_ids;
  rep_cmd->add_option("criteria", rep_ids, "criterion ids (or 'all')");

  CLI11_PARSE(app, argc, argv);

  try {
    RunConfig cfg = make_config(config_path, out_dir, threads);
    const fs::path out(cfg.out_dir);

    if (tf_cmd->parsed()) {
      TFProfile tf = build_tf(cfg.params, classify(cfg.params));
      write_tf_csv((out / "tf.csv").string(), tf);
      write_json(out / "tf.json", tf_header_json(tf));
      std::cout << tf_header_json(tf).dump(2) << '\n';
      return 0;
    }
    if (pl_cmd->parsed()) {
      PainleveTable t = solve_hastings_mcleod(pl_L, pl_n);
      write_painleve_csv((out / "painleve.csv").string(), t);
      CancellationFit canc = check_cancellation(t);
      Json j{{"L", t.L},
             {"n", t.n},
             {"V0", t.value(0.0)},
             {"newton_iters", t.newton_iters},
             {"cancellation_exponent", canc.exponent},
             {"cancellation_at_plus_half_L", canc.at_plus_half_L}};
      write_json(out / "painleve.json", j);
      std::cout << j.dump(2) << '\n';
      return 0;
    }

    PhysParams p = cfg.params;
    if (solve_cmd->parsed() && solve_eps > 0) p.eps = solve_eps;
    if (approx_cmd->parsed() && approx_eps > 0) p.eps = approx_eps;
    if (aux_cmd->parsed() && aux_eps > 0) p.eps = aux_eps;
    const double ppl = (solve_cmd->parsed() && solve_ppl > 0) ? solve_ppl
                                                              : cfg.grid.points_per_layer;

    if (solve_cmd->parsed() || approx_cmd->parsed() || aux_cmd->parsed()) {
      TFProfile tf = build_tf(p, classify(p));
      RadialGrid grid = make_grid(cfg.grid.r_max_factor * tf.outer_radius(2), p.eps, ppl);
      SolveOptions sopt;
      if (solve_init == "gaussian") sopt.init = InitKind::Gaussian;
      RadialState st = solve_coupled(p, tf, grid, sopt);
      EnergyBreakdown0 eb = energy(p, tf, st);
      Json j{{"eps", p.eps},
             {"lambda1_eps", st.lambda1_eps},
             {"lambda2_eps", st.lambda2_eps},
             {"lambda1_0", tf.lambda1},
             {"lambda2_0", tf.lambda2},
             {"energy", eb.E},
             {"energy_tilde", eb.Etilde},
             {"energy_constant_K", eb.K},
             {"grad1", eb.grad1},
             {"grad2", eb.grad2},
             {"iterations", st.iterations},
             {"residual", st.residual}};
      if (solve_cmd->parsed()) {
        write_state_csv((out / "state.csv").string(), st, tf);
        write_json(out / "state.json", j);
        std::cout << j.dump(2) << '\n';
        return 0;
      }
      EpsProfile ep = build_eps_profile(p, st.lambda1_eps, st.lambda2_eps, tf.annulus());
      if (aux_cmd->parsed()) {
        AuxFunctions aux = aux_functions(st, tf);
        write_aux_csv((out / "aux.csv").string(), aux, tf);
        OmegaThreshold th = omega_threshold(p, tf);
        Json ja{{"xi1_at0", aux.xi1[0]},
                {"xi2_at0", aux.xi2[0]},
                {"sup_F1", aux.sup_F1},
                {"sup_F2", aux.sup_F2},
                {"sup_F0_1", aux.sup_F0_1},
                {"sup_F0_2", aux.sup_F0_2},
                {"omega0", th.omega0},
                {"omega_star_literal", th.omega_star},
                {"omega_ceiling", th.omega_ceiling}};
        write_json(out / "aux.json", ja);
        std::cout << ja.dump(2) << '\n';
        return 0;
      }
      const double delta = gluing_delta(tf);
      ScalarGroundState s1 = solve_scalar(p, ep, ScalarWhich::Reduced1, grid);
      ScalarGroundState s2 = solve_scalar(p, ep, ScalarWhich::Reduced2, grid);
      ScalarGroundState s2m;
      ScalarSet set;
      set.reduced1 = &s1;
      set.reduced2 = &s2;
      if (tf.annulus()) {
        s2m = solve_scalar(p, ep, ScalarWhich::AnnulusMinus, grid, delta);
        set.annulus_minus = &s2m;
      }
      ApproxSolution ap = build_approx(p, ep, set, grid, delta);
      Residual re = residual(p, ep, ap);
      ApproxDistance dist = compare_to_true(ap, st);
      SpectrumReport spec = linearized_spectrum(p, ep, ap, 4);
      write_approx_csv((out / "approx.csv").string(), ap, re);
      Json ja{{"delta", ap.delta},
              {"R_eps", ap.R_eps},
              {"gluing_mismatch", ap.gluing_mismatch},
              {"E1_total", re.e1_total},
              {"E2_inner", re.e2_inner},
              {"E2_outer", re.e2_outer},
              {"triple_distance", dist.triple},
              {"eigs_plain", spec.plain},
              {"eigs_weighted", spec.weighted}};
      write_json(out / "approx.json", ja);
      std::cout << ja.dump(2) << '\n';
      return 0;
    }

    if (rot_cmd->parsed()) {
      TFProfile tf = build_tf(p, classify(p));
      RadialGrid rg = make_grid(cfg.grid.r_max_factor * tf.outer_radius(2), p.eps,
                                cfg.grid.points_per_layer);
      RadialState rst = solve_coupled(p, tf, rg);
      OmegaThreshold th = omega_threshold(p, tf);
      double omega = p.omega;
      if (rot_frac >= 0) omega = rot_frac * th.usable();
      if (rot_omega >= 0) omega = rot_omega;
      Grid2D g2 =
          make_grid2d(1.5 * tf.outer_radius(2), rot_n > 0 ? rot_n : cfg.rotation.grid_n);
      Rotation2DOptions ropt;
      ropt.noise_amplitude = cfg.rotation.noise_amplitude;
      ropt.seed = cfg.seed;
      if (rot_iters > 0) ropt.max_iters = rot_iters;
      RotationField f = solve_rotating_2d(p, g2, omega, rst, ropt);
      write_field_csv((out / "field.csv").string(), f);
      std::vector<VortexMark> marks = detect_vortices(f);
      Json vj = Json::array();
      for (const auto& m : marks)
        vj.push_back({{"component", m.component}, {"i", m.i}, {"j", m.j},
                      {"winding", m.winding}});
      Json j{{"omega", omega},
             {"omega0", th.omega0},
             {"omega_star_literal", th.omega_star},
             {"omega_ceiling", th.omega_ceiling},
             {"mu1", f.mu1},
             {"mu2", f.mu2},
             {"energy", f.energy_omega},
             {"iterations", f.iterations},
             {"residual", f.residual},
             {"vortices", vj}};
      write_json(out / "rotate.json", j);
      std::cout << j.dump(2) << '\n';
      return 0;  // the winding list is data; pass/fail lives in `reproduce`
    }

    if (sweep_cmd->parsed()) {
      SweepReport rep = run_sweep(cfg);
      write_json(out / "sweep.json", rep.to_json());
      write_sweep_csv((out / "sweep.csv").string(), rep);
      std::cout << "sweep finished in " << rep.runtime_sec << " s; slopes:\n";
      for (const auto& [name, fit] : rep.slopes)
        std::cout << "  " << name << ": " << fit.slope << " (+/- " << fit.slope_stderr
                  << ")\n";
      for (const auto& r : rep.records)
        if (r.failed) std::cout << "  eps=" << r.eps << " FAILED: " << r.error << "\n";
      return 0;
    }

    if (rep_cmd->parsed()) {
      std::vector<std::string> ids = rep_ids;
      if (ids.empty() || (ids.size() == 1 && ids[0] == "all")) ids = criterion_ids();
      bool sweep_needed = false;
      for (const auto& id : ids)
        sweep_needed = sweep_needed ||
                       (id == "lagrange-rate" || id == "supnorm-rates" ||
                        id == "approx-distance" || id == "linearized-positivity" ||
                        id == "inner-layer" || id == "aux-functions");
      SweepReport sw;
      if (sweep_needed) sw = run_sweep(cfg);
      bool all_pass = true;
      Json results = Json::array();
      for (const auto& id : ids) {
        CriterionResult r = reproduce(id, cfg, sweep_needed ? &sw : nullptr);
        all_pass = all_pass && r.pass;
        std::cout << (r.pass ? "PASS " : "FAIL ") << r.id << ": " << r.summary << '\n';
        results.push_back({{"id", r.id}, {"pass", r.pass}, {"summary", r.summary},
                           {"evidence", r.evidence}});
      }
      write_json(out / "reproduce.json", results);
      return all_pass ? 0 : 1;
    }
  } catch (const Error& e) {
    std::cerr << "error [" << e.code << "]: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
