#pragma once

#include <map>
#include <optional>
#include <string>

#include "tcbec/aux_rotation.hpp"
#include "tcbec/painleve.hpp"

#include <json.hpp>

namespace tcbec {

using Json = nlohmann::ordered_json;

struct GridConfig {
  // radial truncation: r_max_factor x outer support radius (>= 1.5 required);
  // 1.8 keeps tail-envelope windows clear of the Dirichlet wall
  double r_max_factor = 1.8;
  double points_per_layer = 48.0;
};

struct RotationConfig {
  std::size_t grid_n = 256;
  double omega_frac = 0.5;      // fraction of the rotation ceiling
  double noise_amplitude = 0.01;
};

struct RunConfig {
  PhysParams params{1.0, 2.0, 1.0, 0.05, 0.0};
  GridConfig grid;
  std::vector<double> eps_list{0.1, 0.05, 0.025};
  RotationConfig rotation;
  std::string out_dir = "out";
  std::uint64_t seed = 1234;
  int threads = 1;
};

// Accepts either the flat parameter file {g1,g2,g,eps,omega} or the full
// nested run configuration; validates the eps sweep (strictly decreasing,
// ratio within [0.4, 0.6]).
RunConfig load_config(const std::string& path);
RunConfig config_from_json(const Json& j);
Json config_to_json(const RunConfig& c);

struct EpsRecord {
  double eps = 0;
  bool failed = false;
  std::string error;

  double lambda1 = 0, lambda2 = 0;
  double lambda1_err = 0, lambda2_err = 0;
  double sup_global1 = 0, sup_global2 = 0;
  double sup_interior = 0, sup_midband = 0;
  double e1_total = 0, e2_inner = 0, e2_outer = 0;
  double triple_dist = 0, sup_away1 = 0, sup_away2 = 0;
  double F1_err = 0, F2_err = 0;
  double F1_outer_C = 0, F2_outer_C = 0;
  double layer_err = 0;
  double weighted_eig_min = 0, plain_eig_min = 0;
  double xi1_at0 = 0, xi2_at0 = 0;
  double gluing_mismatch = 0;
  double tail_c = 0, tail_C = 0;
  double energy_E = 0, energy_identity_rel = 0, grad1 = 0, grad2 = 0;
  double sym_diff = 0;  // max |eta1 - eta2| when g1 == g2
  long iterations = 0;
  double residual = 0;
};

struct SweepReport {
  RunConfig config;
  std::vector<EpsRecord> records;
  std::map<std::string, LineFit> slopes;
  double runtime_sec = 0;  // wall time; kept out of the JSON for determinism
  Json to_json() const;
};

// Executes tf -> scalars -> coupled -> approx -> aux per eps; one failed eps
// is marked and does not abort the sweep.
SweepReport run_sweep(const RunConfig& config);

struct CriterionResult {
  std::string id;
  bool pass = false;
  std::string summary;   // observed value(s), tolerance, verdict
  double runtime_sec = 0;
  Json evidence;
};

// Registered acceptance criteria. `shared_sweep` lets callers reuse one sweep
// across the sweep-based criteria; pass nullptr to have each criterion run
// its own. `painleve_shooting_v0`: independently computed V(0) (test-side
// oracle); without it the collocation-vs-oracle subcheck is skipped.
std::vector<std::string> criterion_ids();
CriterionResult reproduce(const std::string& id, const RunConfig& config,
                          const SweepReport* shared_sweep = nullptr,
                          std::optional<double> painleve_shooting_v0 = std::nullopt);

// CSV emitters for the CLI subcommands (column orders documented in README).
void write_sweep_csv(const std::string& path, const SweepReport& rep);
void write_tf_csv(const std::string& path, const TFProfile& tf);
Json tf_header_json(const TFProfile& tf);
void write_painleve_csv(const std::string& path, const PainleveTable& t);
void write_state_csv(const std::string& path, const RadialState& st, const TFProfile& tf);
void write_approx_csv(const std::string& path, const ApproxSolution& ap, const Residual& re);
void write_aux_csv(const std::string& path, const AuxFunctions& aux, const TFProfile& tf);
void write_field_csv(const std::string& path, const RotationField& f);

}  // namespace tcbec
