#include "tcbec/aux_rotation.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace tcbec {

namespace {
constexpr double kPi = 3.14159265358979323846;

// Cumulative tail integral with the same cell weights as the mass quadrature,
// so that xi(0) = mass/(2*pi) exactly.
std::vector<double> tail_integral(const RadialGrid& g, const std::vector<double>& u) {
  std::vector<double> xi(g.n + 1, 0.0);
  double acc = 0.0;
  for (std::size_t j = g.n + 1; j-- > 0;) {
    // right half-cell of node j plus all whole cells beyond; at j = 0 this
    // reproduces the full mass quadrature exactly, so xi(0) = mass/(2*pi).
    const double right_half =
        (j == 0) ? g.h * g.h / 8.0 : (g.r[j] * g.h / 2.0 + g.h * g.h / 8.0);
    xi[j] = acc + u[j] * u[j] * right_half;
    acc += g.w[j] * u[j] * u[j];
  }
  xi[0] = acc;
  return xi;
}

void ratio_with_cap(const RadialGrid& g, const std::vector<double>& xi,
                    const std::vector<double>& u, std::vector<double>* F,
                    std::size_t* capped_from) {
  F->assign(g.n + 1, 0.0);
  *capped_from = g.n + 1;
  double umax2 = 0;
  for (double x : u) umax2 = std::max(umax2, x * x);
  const double floor = 1e-120 * umax2;
  double last = 0;
  for (std::size_t j = 0; j <= g.n; ++j) {
    const double q = u[j] * u[j];
    if (q > floor) {
      (*F)[j] = xi[j] / q;
      last = (*F)[j];
    } else {
      if (*capped_from == g.n + 1) *capped_from = j;
      (*F)[j] = last;  // capped: both xi and eta^2 are below represented scale
    }
  }
}

}  // namespace

AuxFunctions aux_functions(const RadialState& st, const TFProfile& tf,
                           const ScalarSet* scalars) {
  AuxFunctions a;
  a.grid = st.grid;
  a.xi1 = tail_integral(st.grid, st.eta1);
  a.xi2 = tail_integral(st.grid, st.eta2);
  ratio_with_cap(st.grid, a.xi1, st.eta1, &a.F1, &a.capped_from1);
  ratio_with_cap(st.grid, a.xi2, st.eta2, &a.F2, &a.capped_from2);
  for (std::size_t j = 0; j < a.capped_from1; ++j) a.sup_F1 = std::max(a.sup_F1, a.F1[j]);
  for (std::size_t j = 0; j < a.capped_from2; ++j) a.sup_F2 = std::max(a.sup_F2, a.F2[j]);
  a.sup_F0_1 = tf.sup_F0(1);
  a.sup_F0_2 = tf.sup_F0(2);
  if (scalars && scalars->reduced1 && scalars->reduced2) {
    std::size_t dummy;
    auto xi = tail_integral(st.grid, scalars->reduced1->eta_hat);
    ratio_with_cap(st.grid, xi, scalars->reduced1->eta_hat, &a.f1, &dummy);
    xi = tail_integral(st.grid, scalars->reduced2->eta_hat);
    ratio_with_cap(st.grid, xi, scalars->reduced2->eta_hat, &a.f2, &dummy);
  }
  return a;
}

OmegaThreshold omega_threshold(const PhysParams& p, const TFProfile& tf) {
  OmegaThreshold t;
  t.sup_F0_max = std::max(tf.sup_F0(1), tf.sup_F0(2));
  if (!(t.sup_F0_max > 0))
    throw Error("NonPositiveThreshold", "sup F_{i,0} must be positive");
  t.omega0 = 1.0 / (2.0 * t.sup_F0_max);
  const double L = std::abs(std::log(p.eps));
  t.omega_star = (L - (t.alpha + 1.0) * std::log(L)) * t.omega0;
  t.omega_ceiling = t.omega0 * L;
  t.literal_positive = t.omega_star > 0;
  return t;
}

Grid2D make_grid2d(double half_width, std::size_t n) {
  if (n < 16) throw Error("GridTooCoarse", "2D grid needs at least 16 nodes per side");
  Grid2D g;
  g.half_width = half_width;
  g.n = n;
  g.h = 2.0 * half_width / double(n - 1);
  return g;
}

namespace {

double mass2d(const Grid2D& g, const std::vector<Complex>& u) {
  double s = 0;
  for (const Complex& z : u) s += std::norm(z);
  return s * g.h * g.h;
}

void project_mass(const Grid2D& g, std::vector<Complex>& u) {
  const double c = 1.0 / std::sqrt(mass2d(g, u));
  for (Complex& z : u) z *= c;
}

// kinetic sum over edges: sum |u_b - u_a|^2 (the 1/h^2 and h^2 cancel)
double kinetic2d(const Grid2D& g, const std::vector<Complex>& u) {
  double s = 0;
  const std::size_t n = g.n;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Complex c = u[g.idx(i, j)];
      if (i + 1 < n) s += std::norm(u[g.idx(i + 1, j)] - c);
      if (j + 1 < n) s += std::norm(u[g.idx(i, j + 1)] - c);
    }
  return s;
}

// rotation integrand sum: sum_P x_perp . Im(conj(u) grad_c u) h^2
double rotation_sum(const Grid2D& g, const std::vector<Complex>& u) {
  const std::size_t n = g.n;
  double s = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = g.coord(i);
    for (std::size_t j = 0; j < n; ++j) {
      const double y = g.coord(j);
      const Complex c = std::conj(u[g.idx(i, j)]);
      const Complex ux = ((i + 1 < n ? u[g.idx(i + 1, j)] : Complex(0)) -
                          (i > 0 ? u[g.idx(i - 1, j)] : Complex(0))) /
                         (2.0 * g.h);
      const Complex uy = ((j + 1 < n ? u[g.idx(i, j + 1)] : Complex(0)) -
                          (j > 0 ? u[g.idx(i, j - 1)] : Complex(0))) /
                         (2.0 * g.h);
      // x_perp = (-y, x)
      s += (-y * std::imag(c * ux) + x * std::imag(c * uy)) * g.h * g.h;
    }
  }
  return s;
}

}  // namespace

double energy_omega_2d(const PhysParams& p, const Grid2D& g2, double omega,
                       const std::vector<Complex>& u1, const std::vector<Complex>& u2) {
  const double e2 = p.eps * p.eps;
  double E = 0.5 * (kinetic2d(g2, u1) + kinetic2d(g2, u2));
  const std::size_t n = g2.n;
  double pot = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = g2.coord(i);
    for (std::size_t j = 0; j < n; ++j) {
      const double y = g2.coord(j);
      const double rr = x * x + y * y;
      const double q1 = std::norm(u1[g2.idx(i, j)]);
      const double q2 = std::norm(u2[g2.idx(i, j)]);
      pot += rr * (q1 + q2) / (2 * e2) + (p.g1 * q1 * q1 + p.g2 * q2 * q2) / (4 * e2) +
             p.g * q1 * q2 / (2 * e2);
    }
  }
  E += pot * g2.h * g2.h;
  E -= omega * (rotation_sum(g2, u1) + rotation_sum(g2, u2));
  return E;
}

namespace {

struct Flow2D {
  const PhysParams& p;
  const Grid2D& g;
  double omega;
  double tau = 0;
  std::vector<double> lo, di, up;  // 1D (I - tau Dxx) coefficients, Dirichlet

  Flow2D(const PhysParams& p_, const Grid2D& g_, double omega_) : p(p_), g(g_), omega(omega_) {}

  void set_tau(double t) {
    tau = t;
    const std::size_t m = g.n - 2;  // interior unknowns per line (Dirichlet ring)
    lo.assign(m, -tau / (g.h * g.h));
    up.assign(m, -tau / (g.h * g.h));
    di.assign(m, 1.0 + 2.0 * tau / (g.h * g.h));
  }

  // f = (1/eps^2)(V - mu) u + 2 i Omega x_perp . grad_c u
  void reaction(const std::vector<Complex>& u, const std::vector<Complex>& other,
                double gi, double mu, std::vector<Complex>& f) const {
    const std::size_t n = g.n;
    const double e2 = p.eps * p.eps;
    f.resize(n * n);
    for (std::size_t i = 0; i < n; ++i) {
      const double x = g.coord(i);
      for (std::size_t j = 0; j < n; ++j) {
        const double y = g.coord(j);
        const std::size_t k = g.idx(i, j);
        const double V = x * x + y * y + gi * std::norm(u[k]) + p.g * std::norm(other[k]);
        Complex adv(0);
        if (omega != 0.0) {
          const Complex ux = ((i + 1 < n ? u[g.idx(i + 1, j)] : Complex(0)) -
                              (i > 0 ? u[g.idx(i - 1, j)] : Complex(0))) /
                             (2.0 * g.h);
          const Complex uy = ((j + 1 < n ? u[g.idx(i, j + 1)] : Complex(0)) -
                              (j > 0 ? u[g.idx(i, j - 1)] : Complex(0))) /
                             (2.0 * g.h);
          adv = 2.0 * Complex(0, 1) * omega * (-y * ux + x * uy);
        }
        f[k] = (V - mu) * u[k] / e2 + adv;
      }
    }
  }

  // Douglas ADI step for u_t = (Dxx + Dyy) u - f over the interior nodes;
  // the Dirichlet ring stays exactly zero and the steady state satisfies
  // the interior 5-point equation exactly.
  void step(std::vector<Complex>& u, const std::vector<Complex>& f,
            std::vector<Complex>& work, std::vector<Complex>& line) const {
    const std::size_t n = g.n;
    const std::size_t m = n - 2;
    const double ih2 = 1.0 / (g.h * g.h);
    work.resize(n * n);
    // Dyy u on the interior
    for (std::size_t i = 1; i + 1 < n; ++i)
      for (std::size_t j = 1; j + 1 < n; ++j) {
        const Complex c = u[g.idx(i, j)];
        work[g.idx(i, j)] =
            (u[g.idx(i, j + 1)] - 2.0 * c + u[g.idx(i, j - 1)]) * ih2;
      }
    // sweep 1: (I - tau Dxx) u* = u + tau Dyy u - tau f, rows along x
    line.resize(m);
    std::vector<Complex> ustar(n * n, Complex(0));
    for (std::size_t j = 1; j + 1 < n; ++j) {
      for (std::size_t i = 1; i + 1 < n; ++i)
        line[i - 1] = u[g.idx(i, j)] + tau * work[g.idx(i, j)] - tau * f[g.idx(i, j)];
      solve_tridiagonal(lo, di, up, line);
      for (std::size_t i = 1; i + 1 < n; ++i) ustar[g.idx(i, j)] = line[i - 1];
    }
    // sweep 2: (I - tau Dyy) u** = u* - tau Dyy u
    for (std::size_t i = 1; i + 1 < n; ++i) {
      for (std::size_t j = 1; j + 1 < n; ++j)
        line[j - 1] = ustar[g.idx(i, j)] - tau * work[g.idx(i, j)];
      solve_tridiagonal(lo, di, up, line);
      for (std::size_t j = 1; j + 1 < n; ++j) u[g.idx(i, j)] = line[j - 1];
    }
    for (std::size_t k = 0; k < n; ++k) {
      u[g.idx(0, k)] = u[g.idx(n - 1, k)] = Complex(0);
      u[g.idx(k, 0)] = u[g.idx(k, n - 1)] = Complex(0);
    }
  }

  double mu_of(const std::vector<Complex>& u, const std::vector<Complex>& other,
               double gi) const {
    const std::size_t n = g.n;
    const double e2 = p.eps * p.eps;
    double s = e2 * kinetic2d(g, u);  // eps^2 int |grad u|^2
    double pot = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const double x = g.coord(i);
      for (std::size_t j = 0; j < n; ++j) {
        const double y = g.coord(j);
        const std::size_t k = g.idx(i, j);
        pot += (x * x + y * y + gi * std::norm(u[k]) + p.g * std::norm(other[k])) *
               std::norm(u[k]);
      }
    }
    s += pot * g.h * g.h;
    s -= 2.0 * e2 * omega * rotation_sum(g, u);
    return s;  // mass is 1 after projection
  }
};

}  // namespace

RotationField solve_rotating_2d(const PhysParams& p, const Grid2D& g2, double omega,
                                const RadialState& radial_init,
                                const Rotation2DOptions& opt) {
  const std::size_t n = g2.n;
  RotationField fld;
  fld.grid = g2;
  fld.omega = omega;
  fld.u1.assign(n * n, Complex(0));
  fld.u2.assign(n * n, Complex(0));

  // interpolate the radial state onto the grid
  const RadialGrid& rg = radial_init.grid;
  std::mt19937_64 rng(opt.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = g2.coord(i);
    for (std::size_t j = 0; j < n; ++j) {
      const double y = g2.coord(j);
      const double r = std::hypot(x, y);
      double v1 = 0, v2 = 0;
      if (r <= rg.r_max) {
        v1 = interp_cubic_uniform(radial_init.eta1, 0.0, rg.h, r);
        v2 = interp_cubic_uniform(radial_init.eta2, 0.0, rg.h, r);
      }
      Complex n1(0), n2(0);
      if (opt.noise_amplitude > 0) {
        n1 = opt.noise_amplitude * Complex(gauss(rng), gauss(rng));
        n2 = opt.noise_amplitude * Complex(gauss(rng), gauss(rng));
      }
      const bool edge = (i == 0 || j == 0 || i + 1 == n || j + 1 == n);
      fld.u1[g2.idx(i, j)] = edge ? Complex(0) : v1 * (1.0 + n1);
      fld.u2[g2.idx(i, j)] = edge ? Complex(0) : v2 * (1.0 + n2);
    }
  }
  project_mass(g2, fld.u1);
  project_mass(g2, fld.u2);

  Flow2D flow(p, g2, omega);
  const double e2 = p.eps * p.eps;
  fld.mu1 = flow.mu_of(fld.u1, fld.u2, p.g1);
  fld.mu2 = flow.mu_of(fld.u2, fld.u1, p.g2);
  std::vector<Complex> f1, f2, work, line;
  std::vector<Complex> snap1 = fld.u1, snap2 = fld.u2;

  long it = 0;
  double tau = 0;
  for (it = 1; it <= opt.max_iters; ++it) {
    // explicit reaction bound: keep tau (V - mu)/eps^2 below 0.9
    const double hw2 = 2.0 * g2.half_width * g2.half_width;
    const double vmax = hw2 + p.g2 * 4.0 + std::max(std::abs(fld.mu1), std::abs(fld.mu2));
    const double tau_want = std::min(0.9 * e2 / vmax, 5e-3);
    if (tau == 0 || std::abs(tau_want - tau) > 0.05 * tau) {
      tau = tau_want;
      flow.set_tau(tau);
    }
    flow.reaction(fld.u1, fld.u2, p.g1, fld.mu1, f1);
    flow.reaction(fld.u2, fld.u1, p.g2, fld.mu2, f2);
    flow.step(fld.u1, f1, work, line);
    flow.step(fld.u2, f2, work, line);
    project_mass(g2, fld.u1);
    project_mass(g2, fld.u2);
    fld.mu1 = flow.mu_of(fld.u1, fld.u2, p.g1);
    fld.mu2 = flow.mu_of(fld.u2, fld.u1, p.g2);

    if (it % opt.window == 0) {
      double du = 0;
      for (std::size_t k = 0; k < n * n; ++k)
        du = std::max({du, std::abs(fld.u1[k] - snap1[k]), std::abs(fld.u2[k] - snap2[k])});
      if (du < opt.tol && it > opt.window) break;
      snap1 = fld.u1;
      snap2 = fld.u2;
    }
  }
  if (it > opt.max_iters)
    throw Error("NonConvergence", "2D flow did not converge");
  fld.iterations = it;

  // residual of the discrete Euler-Lagrange equations
  double res = 0;
  const double ih2 = 1.0 / (g2.h * g2.h);
  flow.reaction(fld.u1, fld.u2, p.g1, fld.mu1, f1);
  flow.reaction(fld.u2, fld.u1, p.g2, fld.mu2, f2);
  for (std::size_t i = 1; i + 1 < n; ++i)
    for (std::size_t j = 1; j + 1 < n; ++j) {
      const std::size_t k = g2.idx(i, j);
      const Complex lap1 = (fld.u1[g2.idx(i + 1, j)] + fld.u1[g2.idx(i - 1, j)] +
                            fld.u1[g2.idx(i, j + 1)] + fld.u1[g2.idx(i, j - 1)] -
                            4.0 * fld.u1[k]) *
                           ih2;
      const Complex lap2 = (fld.u2[g2.idx(i + 1, j)] + fld.u2[g2.idx(i - 1, j)] +
                            fld.u2[g2.idx(i, j + 1)] + fld.u2[g2.idx(i, j - 1)] -
                            4.0 * fld.u2[k]) *
                           ih2;
      res = std::max(res, std::abs(-lap1 + f1[k]) * e2);
      res = std::max(res, std::abs(-lap2 + f2[k]) * e2);
    }
  fld.residual = res;
  fld.energy_omega = energy_omega_2d(p, g2, omega, fld.u1, fld.u2);

  // mass drift guard
  if (std::abs(mass2d(g2, fld.u1) - 1.0) > 1e-12 || std::abs(mass2d(g2, fld.u2) - 1.0) > 1e-12)
    throw Error("MassDrift", "projection failed to hold unit mass");
  return fld;
}

std::vector<VortexMark> detect_vortices(const RotationField& f, double density_floor) {
  std::vector<VortexMark> marks;
  const Grid2D& g = f.grid;
  for (int comp = 1; comp <= 2; ++comp) {
    const std::vector<Complex>& u = (comp == 1) ? f.u1 : f.u2;
    double qmax = 0;
    for (const Complex& z : u) qmax = std::max(qmax, std::norm(z));
    const double floor = density_floor * qmax;
    for (std::size_t i = 0; i + 1 < g.n; ++i)
      for (std::size_t j = 0; j + 1 < g.n; ++j) {
        const Complex a = u[g.idx(i, j)], b = u[g.idx(i + 1, j)];
        const Complex c = u[g.idx(i + 1, j + 1)], d = u[g.idx(i, j + 1)];
        if (std::min({std::norm(a), std::norm(b), std::norm(c), std::norm(d)}) < floor)
          continue;
        const double total = std::arg(b * std::conj(a)) + std::arg(c * std::conj(b)) +
                             std::arg(d * std::conj(c)) + std::arg(a * std::conj(d));
        const int w = int(std::lround(total / (2.0 * kPi)));
        if (w != 0) marks.push_back({comp, i, j, w});
      }
  }
  return marks;
}

namespace {

// F^Omega of the division pair, edge weights eta_a*eta_b so that the discrete
// splitting identity closes exactly against the edge-based kinetic energy.
double F_omega_2d(const PhysParams& p, const Grid2D& g, double omega,
                  const std::vector<Complex>& u1, const std::vector<Complex>& u2,
                  const std::vector<double>& e1, const std::vector<double>& e2v,
                  double floor1, double floor2, double* excluded1, double* excluded2,
                  double eps) {
  const std::size_t n = g.n;
  const double eps2 = eps * eps;
  double kin = 0, pot = 0, exc1 = 0, exc2 = 0;
  for (int comp = 0; comp < 2; ++comp) {
    const std::vector<Complex>& u = comp ? u2 : u1;
    const std::vector<double>& e = comp ? e2v : e1;
    const double floor = comp ? floor2 : floor1;
    double* exc = comp ? &exc2 : &exc1;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const std::size_t k = g.idx(i, j);
        const bool ok = e[k] > floor;
        if (!ok) {
          *exc += std::norm(u[k]) * g.h * g.h;
          continue;
        }
        const Complex v = u[k] / e[k];
        // kinetic edges to the east and north neighbors
        if (i + 1 < n && e[g.idx(i + 1, j)] > floor) {
          const Complex vn = u[g.idx(i + 1, j)] / e[g.idx(i + 1, j)];
          kin += 0.5 * e[k] * e[g.idx(i + 1, j)] * std::norm(vn - v);
        }
        if (j + 1 < n && e[g.idx(i, j + 1)] > floor) {
          const Complex vn = u[g.idx(i, j + 1)] / e[g.idx(i, j + 1)];
          kin += 0.5 * e[k] * e[g.idx(i, j + 1)] * std::norm(vn - v);
        }
        const double gi = comp ? p.g2 : p.g1;
        pot += gi / (4 * eps2) * std::pow(e[k], 4) * sq(std::norm(v) - 1.0) * g.h * g.h;
      }
  }
  // cross term
  for (std::size_t k = 0; k < n * n; ++k) {
    if (e1[k] > floor1 && e2v[k] > floor2) {
      const double q1 = std::norm(u1[k] / e1[k]), q2 = std::norm(u2[k] / e2v[k]);
      pot += p.g / (2 * eps2) * sq(e1[k]) * sq(e2v[k]) * (1 - q1) * (1 - q2) * g.h * g.h;
    }
  }
  // Rotation with eta_P*eta_Q edge weights collapses identically to the
  // u-expression: Im(conj(v_P) eta_P eta_Q v_Q) = Im(conj(u_P) u_Q).
  const double rot = omega * (rotation_sum(g, u1) + rotation_sum(g, u2));
  *excluded1 = exc1;
  *excluded2 = exc2;
  return kin + pot - rot;
}

}  // namespace

EnergyBreakdown energy_split(const PhysParams& p, const RotationField& field,
                             const std::vector<double>& eta1_base,
                             const std::vector<double>& eta2_base,
                             const AuxFunctions* aux, double v_floor) {
  const Grid2D& g = field.grid;
  const std::size_t n = g.n;
  EnergyBreakdown out;
  out.E_omega = energy_omega_2d(p, g, field.omega, field.u1, field.u2);
  std::vector<Complex> b1(n * n), b2(n * n);
  for (std::size_t k = 0; k < n * n; ++k) {
    b1[k] = eta1_base[k];
    b2[k] = eta2_base[k];
  }
  out.E_zero = energy_omega_2d(p, g, 0.0, b1, b2);

  double q1max = 0, q2max = 0;
  for (std::size_t k = 0; k < n * n; ++k) {
    q1max = std::max(q1max, sq(eta1_base[k]));
    q2max = std::max(q2max, sq(eta2_base[k]));
  }
  const double floor1 = std::sqrt(v_floor * q1max), floor2 = std::sqrt(v_floor * q2max);
  out.F_omega = F_omega_2d(p, g, field.omega, field.u1, field.u2, eta1_base, eta2_base,
                           floor1, floor2, &out.excluded_mass1, &out.excluded_mass2, p.eps);
  out.rotation_term = field.omega * (rotation_sum(g, field.u1) + rotation_sum(g, field.u2));
  out.split_residual = std::abs(out.E_omega - out.E_zero - out.F_omega);

  // F_tilde: rotation replaced by the Jacobian form with gamma-coercivity
  const double gamma =
      0.5 * ((p.g1 + p.g2) - std::sqrt(sq(p.g1 - p.g2) + 4.0 * p.g * p.g));
  double kin = 0, pot = 0, jac = 0;
  for (int comp = 0; comp < 2; ++comp) {
    const std::vector<Complex>& u = comp ? field.u2 : field.u1;
    const std::vector<double>& e = comp ? eta2_base : eta1_base;
    const double floor = comp ? floor2 : floor1;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const std::size_t k = g.idx(i, j);
        if (e[k] <= floor) continue;
        const Complex v = u[k] / e[k];
        if (i + 1 < n && e[g.idx(i + 1, j)] > floor) {
          const Complex vn = u[g.idx(i + 1, j)] / e[g.idx(i + 1, j)];
          kin += 0.5 * e[k] * e[g.idx(i + 1, j)] * std::norm(vn - v);
        }
        if (j + 1 < n && e[g.idx(i, j + 1)] > floor) {
          const Complex vn = u[g.idx(i, j + 1)] / e[g.idx(i, j + 1)];
          kin += 0.5 * e[k] * e[g.idx(i, j + 1)] * std::norm(vn - v);
        }
        pot += gamma / (4 * p.eps * p.eps) * std::pow(e[k], 4) * sq(std::norm(v) - 1.0) *
               g.h * g.h;
        if (aux && field.omega != 0.0 && i > 0 && j > 0 && i + 1 < n && j + 1 < n &&
            e[g.idx(i + 1, j)] > floor && e[g.idx(i - 1, j)] > floor &&
            e[g.idx(i, j + 1)] > floor && e[g.idx(i, j - 1)] > floor) {
          const Complex vx = (u[g.idx(i + 1, j)] / e[g.idx(i + 1, j)] -
                              u[g.idx(i - 1, j)] / e[g.idx(i - 1, j)]) /
                             (2 * g.h);
          const Complex vy = (u[g.idx(i, j + 1)] / e[g.idx(i, j + 1)] -
                              u[g.idx(i, j - 1)] / e[g.idx(i, j - 1)]) /
                             (2 * g.h);
          const double Jv = std::imag(std::conj(vx) * vy);
          const double r = std::hypot(g.coord(i), g.coord(j));
          double Fi = 0;
          const RadialGrid& rg = aux->grid;
          if (r <= rg.r_max) {
            const std::vector<double>& F = comp ? aux->F2 : aux->F1;
            Fi = interp_cubic_uniform(F, 0.0, rg.h, r);
          }
          jac += -2.0 * field.omega * Fi * sq(e[k]) * Jv * g.h * g.h;
        }
      }
  }
  out.F_tilde = kin + pot + jac;
  return out;
}

std::pair<double, double> rotation_term_bound(const PhysParams& p, const TFProfile& tf,
                                              const Grid2D& g2, double omega,
                                              const std::vector<Complex>& u1,
                                              const std::vector<Complex>& u2) {
  const double lhs = std::abs(omega * rotation_sum(g2, u1)) +
                     std::abs(omega * rotation_sum(g2, u2));
  double rhs = 0.25 * (kinetic2d(g2, u1) + kinetic2d(g2, u2));
  rhs += 2.0 * omega * omega * (sq(tf.r1) + sq(tf.r2));
  const GammaConstants& G = tf.gam;
  double tail = 0;
  for (std::size_t i = 0; i < g2.n; ++i) {
    const double x = g2.coord(i);
    for (std::size_t j = 0; j < g2.n; ++j) {
      const double y = g2.coord(j);
      const double r = std::hypot(x, y);
      if (r > tf.r1)
        tail += 2.0 * omega * omega * p.g1 * G.gamma / G.gamma2 *
                std::max(-tf.a10(r), 0.0) * std::norm(u1[g2.idx(i, j)]) * g2.h * g2.h;
      if (r > tf.r2)
        tail += 2.0 * omega * omega * p.g2 * std::max(-(tf.lambda2 - r * r) / p.g2, 0.0) *
                std::norm(u2[g2.idx(i, j)]) * g2.h * g2.h;
    }
  }
  return {lhs, rhs + tail};
}

}  // namespace tcbec
