#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "tcbec/tf_profile.hpp"

namespace tcbec {

// Uniform radial grid, nodes r_j = j h for j = 0..n with a Dirichlet node at
// r_n = r_max. Quadrature weights w_j reproduce int_0^rmax f r dr on the
// finite-volume cells; masses are 2*pi*sum(w u^2).
struct RadialGrid {
  double r_max = 0;
  std::size_t n = 0;  // number of intervals; n+1 nodes
  double h = 0;
  std::vector<double> r;      // size n+1
  std::vector<double> w;      // size n+1, w[n] = 0 (Dirichlet)
  std::vector<double> redge;  // size n, r_{j+1/2}

  double mass(const std::vector<double>& u) const;  // 2*pi*sum w u^2
  // Radial finite-volume Laplacian; Dirichlet at r_max, Neumann-by-symmetry at 0.
  void laplacian(const std::vector<double>& u, std::vector<double>& out) const;
};

// h <= eps^{2/3} / points_per_layer; enforces the layer-resolution bound
// (points_per_layer >= 8) from the discretization contract.
RadialGrid make_grid(double r_max, double eps, double points_per_layer = 48.0);

enum class InitKind { TFSmoothed, Gaussian };

struct SolveOptions {
  double tol = 1e-10;          // relative change over `window` steps
  int window = 100;
  long max_iters = 4000000;
  InitKind init = InitKind::TFSmoothed;
  bool track_energy = false;   // record the discrete energy at every step
};

struct RadialState {
  RadialGrid grid;
  std::vector<double> eta1, eta2;
  double lambda1_eps = 0, lambda2_eps = 0;
  double energy = 0;           // E_eps^0
  long iterations = 0;
  double residual = 0;         // sup-norm residual of the discrete EL system
  std::vector<double> energy_trace;  // filled when track_energy
};

// Discrete minimizer of E_eps^0 under per-component unit mass, by
// semi-implicit normalized gradient flow. Lagrange multipliers are the
// Rayleigh quotients obtained by testing each equation with its own component.
RadialState solve_coupled(const PhysParams& p, const TFProfile& tf, const RadialGrid& grid,
                          const SolveOptions& opt = {},
                          const RadialState* warm_start = nullptr);

enum class ScalarWhich { Reduced1, Reduced2, AnnulusMinus };

struct ScalarGroundState {
  RadialGrid grid;
  std::vector<double> eta_hat;
  ScalarWhich which;
  double effective_coupling = 0;
  std::function<double(double)> a_eff;
  long iterations = 0;
  double residual = 0;
};

// Positive solution of -eps^2 lap(eta) + c_eff eta (eta^2 - a_eff) = 0 with
// decay at infinity, same projected flow without the mass constraint.
// `hole_delta` sets the potential modification point R_{1,0}+delta for the
// annulus-regime eta_hat_2^- problem.
ScalarGroundState solve_scalar(const PhysParams& p, const EpsProfile& ep, ScalarWhich which,
                               const RadialGrid& grid, double hole_delta = 0.0,
                               const SolveOptions& opt = {});

struct EnergyBreakdown0 {
  double E = 0;       // E_eps^0
  double Etilde = 0;  // rewritten energy
  double K = 0;       // constant of the rewriting
  double grad1 = 0, grad2 = 0;  // int |grad eta_i|^2
};

EnergyBreakdown0 energy(const PhysParams& p, const TFProfile& tf, const RadialState& st);

struct RateFit {
  LineFit comp1, comp2;
};

// log-log slope of |lambda_{i,eps} - lambda_{i,0}| against eps.
RateFit lagrange_rates(const std::vector<double>& eps_list,
                       const std::vector<RadialState>& states, const TFProfile& tf);

}  // namespace tcbec
