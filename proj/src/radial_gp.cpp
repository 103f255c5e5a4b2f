#include "tcbec/radial_gp.hpp"

#include <algorithm>
#include <cmath>

namespace tcbec {

namespace {
constexpr double kPi = 3.14159265358979323846;

double dot_w(const RadialGrid& g, const std::vector<double>& u, const std::vector<double>& v) {
  double s = 0;
  for (std::size_t j = 0; j <= g.n; ++j) s += g.w[j] * u[j] * v[j];
  return s;
}

double kinetic_form(const RadialGrid& g, const std::vector<double>& u) {
  // int |grad u|^2 r dr  (without the 2*pi)
  double s = 0;
  for (std::size_t j = 0; j < g.n; ++j)
    s += g.redge[j] * sq(u[j + 1] - u[j]) / g.h;
  return s;
}

void renormalize(const RadialGrid& g, std::vector<double>& u) {
  const double m = 2.0 * kPi * dot_w(g, u, u);
  const double c = 1.0 / std::sqrt(m);
  for (double& x : u) x *= c;
}

struct Stepper {
  const RadialGrid& g;
  double tau = 0;
  std::vector<double> lo, di, up;

  Stepper(const RadialGrid& grid, double tau_) : g(grid) { set_tau(tau_); }

  void set_tau(double tau_) {
    tau = tau_;
    const std::size_t m = g.n;  // unknowns j=0..n-1
    lo.assign(m, 0.0);
    di.assign(m, 0.0);
    up.assign(m, 0.0);
    for (std::size_t j = 0; j < m; ++j) {
      const double wl = (j > 0) ? g.redge[j - 1] / (g.w[j] * g.h) : 0.0;
      const double wr = g.redge[j] / (g.w[j] * g.h);
      lo[j] = -tau * wl;
      di[j] = 1.0 + tau * (wl + wr);
      up[j] = -tau * wr;
    }
  }

  // u <- (I - tau lap)^{-1} rhs ; rhs holds interior values, Dirichlet at n.
  void solve(std::vector<double>& rhs) const {
    solve_tridiagonal(lo, di, up, rhs);
  }
};

double max_abs(const std::vector<double>& u) {
  double m = 0;
  for (double x : u) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

double RadialGrid::mass(const std::vector<double>& u) const {
  return 2.0 * kPi * dot_w(*this, u, u);
}

void RadialGrid::laplacian(const std::vector<double>& u, std::vector<double>& out) const {
  out.resize(n + 1);
  out[0] = redge[0] * (u[1] - u[0]) / (w[0] * h);
  for (std::size_t j = 1; j < n; ++j)
    out[j] = (redge[j] * (u[j + 1] - u[j]) - redge[j - 1] * (u[j] - u[j - 1])) / (w[j] * h);
  out[n] = 0.0;
}

RadialGrid make_grid(double r_max, double eps, double points_per_layer) {
  if (points_per_layer < 8.0)
    throw Error("GridTooCoarse", "need at least 8 points per eps^{2/3} layer");
  const double layer = std::pow(eps, 2.0 / 3.0);
  const double h_target = layer / points_per_layer;
  RadialGrid g;
  g.n = std::size_t(std::ceil(r_max / h_target));
  g.h = r_max / double(g.n);
  g.r_max = r_max;
  g.r.resize(g.n + 1);
  g.w.resize(g.n + 1);
  g.redge.resize(g.n);
  for (std::size_t j = 0; j <= g.n; ++j) g.r[j] = double(j) * g.h;
  for (std::size_t j = 0; j < g.n; ++j) g.redge[j] = (g.r[j] + g.r[j + 1]) * 0.5;
  g.w[0] = g.h * g.h / 8.0;
  for (std::size_t j = 1; j < g.n; ++j) g.w[j] = g.r[j] * g.h;
  g.w[g.n] = 0.0;
  return g;
}

namespace {

// One semi-implicit flow step u <- (I - tau lap)^{-1}(u - (tau/eps^2) f u),
// where f is the reaction evaluated at the current iterate, shifted by mu.
// Returns false if the step produced a sign change.
bool flow_step(const Stepper& st, const RadialGrid& g, double tau_over_eps2,
               const std::vector<double>& f, std::vector<double>& u,
               std::vector<double>& scratch) {
  scratch.assign(g.n, 0.0);
  for (std::size_t j = 0; j < g.n; ++j) scratch[j] = u[j] - tau_over_eps2 * f[j] * u[j];
  st.solve(scratch);
  bool ok = true;
  for (std::size_t j = 0; j < g.n; ++j) {
    if (scratch[j] < 0.0) ok = false;
  }
  if (!ok) return false;
  for (std::size_t j = 0; j < g.n; ++j) u[j] = scratch[j];
  u[g.n] = 0.0;
  return true;
}

double coupled_lambda(const PhysParams& p, const RadialGrid& g, int i,
                      const std::vector<double>& ui, const std::vector<double>& uj) {
  const double gi = (i == 1) ? p.g1 : p.g2;
  double pot = 0;
  for (std::size_t j = 0; j <= g.n; ++j) {
    const double V = g.r[j] * g.r[j] + gi * ui[j] * ui[j] + p.g * uj[j] * uj[j];
    pot += g.w[j] * V * ui[j] * ui[j];
  }
  return 2.0 * kPi * (p.eps * p.eps * kinetic_form(g, ui) + pot);
}

double coupled_energy(const PhysParams& p, const RadialGrid& g,
                      const std::vector<double>& u1, const std::vector<double>& u2) {
  const double e2 = p.eps * p.eps;
  double E = 0.5 * (kinetic_form(g, u1) + kinetic_form(g, u2));
  for (std::size_t j = 0; j <= g.n; ++j) {
    const double q1 = u1[j] * u1[j], q2 = u2[j] * u2[j];
    E += g.w[j] * (g.r[j] * g.r[j] * (q1 + q2) / (2 * e2) +
                   (p.g1 * q1 * q1 + p.g2 * q2 * q2) / (4 * e2) + p.g * q1 * q2 / (2 * e2));
  }
  return 2.0 * kPi * E;
}

std::vector<double> smoothed_sqrt_profile(const RadialGrid& g,
                                          const std::function<double(double)>& a,
                                          double eps) {
  // sqrt(a^+) mollified over one layer width: positive everywhere, matches
  // sqrt(a) away from the support edge.
  const double s = std::pow(eps, 2.0 / 3.0);
  std::vector<double> u(g.n + 1);
  for (std::size_t j = 0; j <= g.n; ++j) {
    const double av = a(g.r[j]);
    u[j] = std::sqrt(0.5 * (av + std::sqrt(av * av + s * s)));
  }
  u[g.n] = 0.0;
  return u;
}

}  // namespace

RadialState solve_coupled(const PhysParams& p, const TFProfile& tf, const RadialGrid& grid,
                          const SolveOptions& opt, const RadialState* warm_start) {
  RadialState st;
  st.grid = grid;
  const double e2 = p.eps * p.eps;

  if (warm_start) {
    st.eta1 = warm_start->eta1;
    st.eta2 = warm_start->eta2;
  } else if (opt.init == InitKind::TFSmoothed) {
    st.eta1 = smoothed_sqrt_profile(grid, [&](double r) { return tf.a1(r); }, p.eps);
    st.eta2 = smoothed_sqrt_profile(grid, [&](double r) { return tf.a2(r); }, p.eps);
  } else {
    const double sig = 0.5 * tf.r1;
    st.eta1.resize(grid.n + 1);
    st.eta2.resize(grid.n + 1);
    for (std::size_t j = 0; j <= grid.n; ++j) {
      st.eta1[j] = std::exp(-sq(grid.r[j]) / (2 * sig * sig));
      st.eta2[j] = std::exp(-sq(grid.r[j]) / (1.5 * sig * sig));
    }
    st.eta1[grid.n] = st.eta2[grid.n] = 0.0;
  }
  renormalize(grid, st.eta1);
  renormalize(grid, st.eta2);

  double tau = std::min(0.5 * grid.h * grid.h / e2, 1e-3);
  Stepper stepper(grid, tau);
  std::vector<double> f1(grid.n + 1), f2(grid.n + 1), scratch;
  std::vector<double> snap1 = st.eta1, snap2 = st.eta2;
  double snap_l1 = 0, snap_l2 = 0;
  double mu1 = coupled_lambda(p, grid, 1, st.eta1, st.eta2);
  double mu2 = coupled_lambda(p, grid, 2, st.eta2, st.eta1);

  long it = 0;
  for (it = 1; it <= opt.max_iters; ++it) {
    // reaction with chemical-potential shift; the shift is a gauge for the
    // normalized flow and keeps the explicit part sign-preserving
    double fmax = 0;
    for (std::size_t j = 0; j <= grid.n; ++j) {
      const double q1 = st.eta1[j] * st.eta1[j], q2 = st.eta2[j] * st.eta2[j];
      const double rr = grid.r[j] * grid.r[j];
      f1[j] = rr + p.g1 * q1 + p.g * q2 - mu1;
      f2[j] = rr + p.g2 * q2 + p.g * q1 - mu2;
      fmax = std::max({fmax, std::abs(f1[j]), std::abs(f2[j])});
    }
    double tau_want = std::min({0.5 * grid.h * grid.h / e2, 1e-3, 0.9 * e2 / fmax});
    if (std::abs(tau_want - tau) > 0.05 * tau) {
      tau = tau_want;
      stepper.set_tau(tau);
    }
    int halvings = 0;
    while (true) {
      std::vector<double> save1 = st.eta1, save2 = st.eta2;
      const bool ok1 = flow_step(stepper, grid, tau / e2, f1, st.eta1, scratch);
      const bool ok2 = ok1 && flow_step(stepper, grid, tau / e2, f2, st.eta2, scratch);
      if (ok1 && ok2) break;
      st.eta1 = save1;
      st.eta2 = save2;
      if (++halvings > 40)
        throw Error("NegativeDensity", "flow produced a sign change at minimal step size");
      tau *= 0.5;
      stepper.set_tau(tau);
    }
    renormalize(grid, st.eta1);
    renormalize(grid, st.eta2);
    mu1 = coupled_lambda(p, grid, 1, st.eta1, st.eta2);
    mu2 = coupled_lambda(p, grid, 2, st.eta2, st.eta1);
    if (opt.track_energy)
      st.energy_trace.push_back(coupled_energy(p, grid, st.eta1, st.eta2));

    if (it % opt.window == 0) {
      double du = 0;
      for (std::size_t j = 0; j <= grid.n; ++j)
        du = std::max({du, std::abs(st.eta1[j] - snap1[j]), std::abs(st.eta2[j] - snap2[j])});
      const double scale = std::max(max_abs(st.eta1), max_abs(st.eta2));
      const double dl = std::max(std::abs(mu1 - snap_l1) / std::abs(mu1),
                                 std::abs(mu2 - snap_l2) / std::abs(mu2));
      if (du / scale < opt.tol && dl < opt.tol && it > opt.window) break;
      snap1 = st.eta1;
      snap2 = st.eta2;
      snap_l1 = mu1;
      snap_l2 = mu2;
    }
  }
  if (it > opt.max_iters)
    throw Error("NonConvergence", "coupled flow did not converge in " +
                                      std::to_string(opt.max_iters) + " iterations");

  st.lambda1_eps = mu1;
  st.lambda2_eps = mu2;
  st.iterations = it;
  st.energy = coupled_energy(p, grid, st.eta1, st.eta2);

  // sup-norm residual of the discrete Euler-Lagrange system
  std::vector<double> lap;
  double res = 0;
  grid.laplacian(st.eta1, lap);
  for (std::size_t j = 0; j < grid.n; ++j) {
    const double V = grid.r[j] * grid.r[j] + p.g1 * sq(st.eta1[j]) + p.g * sq(st.eta2[j]);
    res = std::max(res, std::abs(-e2 * lap[j] + (V - mu1) * st.eta1[j]));
  }
  grid.laplacian(st.eta2, lap);
  for (std::size_t j = 0; j < grid.n; ++j) {
    const double V = grid.r[j] * grid.r[j] + p.g2 * sq(st.eta2[j]) + p.g * sq(st.eta1[j]);
    res = std::max(res, std::abs(-e2 * lap[j] + (V - mu2) * st.eta2[j]));
  }
  st.residual = res;
  return st;
}

ScalarGroundState solve_scalar(const PhysParams& p, const EpsProfile& ep, ScalarWhich which,
                               const RadialGrid& grid, double hole_delta,
                               const SolveOptions& opt) {
  ScalarGroundState s;
  s.grid = grid;
  s.which = which;
  const GammaConstants G = gammas(p);
  switch (which) {
    case ScalarWhich::Reduced1:
      s.effective_coupling = p.g1 - p.g * p.g / p.g2;  // = g1*Gamma
      s.a_eff = [ep](double r) { return ep.a1eps(r); };
      break;
    case ScalarWhich::Reduced2:
      s.effective_coupling = p.g2;
      s.a_eff = [ep](double r) { return ep.combo2(r); };
      break;
    case ScalarWhich::AnnulusMinus: {
      if (!ep.annulus) throw Error("RegimeMismatch", "AnnulusMinus needs an annulus profile");
      s.effective_coupling = p.g2 - p.g * p.g / p.g1;  // = g2*Gamma
      // A_{2,eps}: coincides with a_{2,eps} up to r_c = R1 + delta, then bends
      // down so it changes sign once more and diverges to -infinity.
      const double rc = ep.R1 + hole_delta;
      const double a_rc = ep.a2eps(rc);
      const double ap_rc = -2.0 * G.gamma1 * rc / (p.g2 * G.gamma);  // a2eps'
      const double width = std::max(0.5 * (grid.r_max - rc), 0.25);
      const double kappa = (a_rc + std::abs(ap_rc) * width) / (width * width) * 2.0;
      s.a_eff = [ep, rc, a_rc, ap_rc, kappa](double r) {
        if (r <= rc) return ep.a2eps(r);
        const double d = r - rc;
        return a_rc + ap_rc * d - kappa * d * d;
      };
      break;
    }
  }
  if (!(s.effective_coupling > 0))
    throw Error("RegimeMismatch", "effective coupling must be positive");

  const double e2 = p.eps * p.eps;
  s.eta_hat = smoothed_sqrt_profile(grid, s.a_eff, p.eps);

  double tau = std::min(0.5 * grid.h * grid.h / e2, 1e-3);
  Stepper stepper(grid, tau);
  std::vector<double> f(grid.n + 1), scratch;
  std::vector<double> snap = s.eta_hat;

  long it = 0;
  for (it = 1; it <= opt.max_iters; ++it) {
    double fmax = 0;
    for (std::size_t j = 0; j <= grid.n; ++j) {
      f[j] = s.effective_coupling * (sq(s.eta_hat[j]) - s.a_eff(grid.r[j]));
      fmax = std::max(fmax, std::abs(f[j]) * 3.0);
    }
    double tau_want = std::min({0.5 * grid.h * grid.h / e2, 1e-3, 0.9 * e2 / fmax});
    if (std::abs(tau_want - tau) > 0.05 * tau) {
      tau = tau_want;
      stepper.set_tau(tau);
    }
    int halvings = 0;
    while (!flow_step(stepper, grid, tau / e2, f, s.eta_hat, scratch)) {
      if (++halvings > 40)
        throw Error("NegativeDensity", "scalar flow produced a sign change");
      tau *= 0.5;
      stepper.set_tau(tau);
    }
    if (it % opt.window == 0) {
      double du = 0;
      for (std::size_t j = 0; j <= grid.n; ++j)
        du = std::max(du, std::abs(s.eta_hat[j] - snap[j]));
      if (du / max_abs(s.eta_hat) < opt.tol && it > opt.window) break;
      snap = s.eta_hat;
    }
  }
  if (it > opt.max_iters)
    throw Error("NonConvergence", "scalar flow did not converge");
  s.iterations = it;

  std::vector<double> lap;
  grid.laplacian(s.eta_hat, lap);
  double res = 0;
  for (std::size_t j = 0; j < grid.n; ++j)
    res = std::max(res, std::abs(-e2 * lap[j] + s.effective_coupling *
                                                    (sq(s.eta_hat[j]) - s.a_eff(grid.r[j])) *
                                                    s.eta_hat[j]));
  s.residual = res;
  return s;
}

EnergyBreakdown0 energy(const PhysParams& p, const TFProfile& tf, const RadialState& st) {
  const RadialGrid& g = st.grid;
  const double e2 = p.eps * p.eps;
  const GammaConstants& G = tf.gam;
  EnergyBreakdown0 out;
  out.grad1 = 2.0 * kPi * kinetic_form(g, st.eta1);
  out.grad2 = 2.0 * kPi * kinetic_form(g, st.eta2);
  out.E = coupled_energy(p, g, st.eta1, st.eta2);

  double pot = 0, kconst = 0;
  const bool ann = tf.annulus();
  for (std::size_t j = 0; j <= g.n; ++j) {
    const double r = g.r[j];
    const double a1 = tf.a1(r), a2 = tf.a2(r);
    const double q1 = sq(st.eta1[j]), q2 = sq(st.eta2[j]);
    const double d1 = q1 - a1, d2 = q2 - a2;
    double v = (p.g1 * d1 * d1 + p.g2 * d2 * d2) / (4 * e2) + p.g * d1 * d2 / (2 * e2);
    if (!ann) {
      if (r > tf.r1) v += p.g1 * G.gamma / (2 * e2) * q1 * std::max(-tf.a10(r), 0.0);
      if (r > tf.r2) {
        const double neg = std::max(-(tf.lambda2 - r * r) / p.g2, 0.0);
        v += (p.g * q1 + p.g2 * q2) * neg / (2 * e2);
      }
    } else {
      if (r > tf.r1) v += p.g1 * G.gamma / (2 * e2) * q1 * std::max(-tf.a10(r), 0.0);
      if (r < tf.r2_minus) v += p.g2 * G.gamma / (2 * e2) * q2 * std::max(-tf.a20(r), 0.0);
      if (r > tf.r2_plus) {
        const double neg = std::max(-(tf.lambda2 - r * r) / p.g2, 0.0);
        v += (p.g * q1 + p.g2 * q2) * neg / (2 * e2);
      }
    }
    pot += g.w[j] * v;
    kconst += g.w[j] * (p.g1 * a1 * a1 + p.g2 * a2 * a2 + 2 * p.g * a1 * a2);
  }
  out.Etilde = 0.5 * (out.grad1 + out.grad2) + 2.0 * kPi * pot;
  out.K = (tf.lambda1 + tf.lambda2) / (2 * e2) - 2.0 * kPi * kconst / (4 * e2);
  return out;
}

RateFit lagrange_rates(const std::vector<double>& eps_list,
                       const std::vector<RadialState>& states, const TFProfile& tf) {
  if (eps_list.size() < 3 || states.size() != eps_list.size())
    throw Error("InsufficientData", "need at least three eps values");
  std::vector<double> d1, d2;
  for (const auto& st : states) {
    d1.push_back(std::abs(st.lambda1_eps - tf.lambda1));
    d2.push_back(std::abs(st.lambda2_eps - tf.lambda2));
  }
  return {fit_loglog(eps_list, d1), fit_loglog(eps_list, d2)};
}

}  // namespace tcbec
