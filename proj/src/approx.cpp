#include "tcbec/approx.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>

namespace tcbec {

namespace {
constexpr double kPi = 3.14159265358979323846;

double l2_norm_region(const RadialGrid& g, const std::vector<double>& f,
                      const std::function<bool(double)>& in_region) {
  double s = 0;
  for (std::size_t j = 0; j <= g.n; ++j)
    if (in_region(g.r[j])) s += g.w[j] * f[j] * f[j];
  return std::sqrt(2.0 * kPi * s);
}

}  // namespace

double gluing_delta(const TFProfile& tf) {
  if (tf.annulus())
    return std::min({tf.r2_minus, tf.r1 - tf.r2_minus, tf.r2_plus - tf.r1}) / 8.0;
  return std::min(tf.r1, tf.r2 - tf.r1) / 8.0;
}

ApproxSolution build_approx(const PhysParams& p, const EpsProfile& ep,
                            const ScalarSet& scalars, const RadialGrid& grid,
                            double delta) {
  if (!scalars.reduced1 || !scalars.reduced2)
    throw Error("GridMismatch", "scalar ground states required");
  if (scalars.reduced1->grid.n != grid.n || scalars.reduced2->grid.n != grid.n)
    throw Error("GridMismatch", "scalar states must live on the target grid");

  ApproxSolution ap;
  ap.grid = grid;
  ap.ep = ep;
  ap.annulus = ep.annulus;
  ap.delta = delta;
  ap.R_eps = 0.5 * (ep.R1 + ep.R2);  // in the annulus regime R2 is R_{2,eps}^+
  ap.r_eps = ep.annulus ? 0.5 * (ep.R2m + ep.R1) : 0.0;
  const std::size_t N = grid.n;
  ap.eta1_check.assign(N + 1, 0.0);
  ap.eta2_check.assign(N + 1, 0.0);
  ap.eta2_tilde.assign(N + 1, 0.0);
  ap.zeta.assign(N + 1, 0.0);

  const auto& h1 = scalars.reduced1->eta_hat;
  const auto& h2 = scalars.reduced2->eta_hat;

  auto radicand_sqrt = [&](double val, double r) {
    if (val <= 0.0)
      throw Error("NegativeRadicand",
                  "slaved density nonpositive at r = " + std::to_string(r) +
                      "; parameters too close to the regime boundary");
    return std::sqrt(val);
  };

  if (!ap.annulus) {
    for (std::size_t j = 0; j <= N; ++j) {
      const double r = grid.r[j];
      ap.zeta[j] = 1.0 - smoothstep5((r - (ap.R_eps - delta)) / delta);
      ap.eta1_check[j] = ap.zeta[j] * h1[j];
    }
    for (std::size_t j = 0; j <= N; ++j) {
      const double r = grid.r[j];
      if (r <= ap.R_eps + delta) {
        const double rad =
            ep.a2eps(r) + (p.g / p.g2) * ep.a1eps(r) - (p.g / p.g2) * sq(ap.eta1_check[j]);
        ap.eta2_tilde[j] = radicand_sqrt(rad, r);
      }
      if (r <= ap.R_eps) {
        ap.eta2_check[j] = ap.eta2_tilde[j];
      } else if (r < ap.R_eps + delta) {
        const double wgt = smoothstep5((r - ap.R_eps) / delta);
        ap.eta2_check[j] = (1.0 - wgt) * ap.eta2_tilde[j] + wgt * h2[j];
      } else {
        ap.eta2_check[j] = h2[j];
      }
    }
    double mm = 0;
    for (std::size_t j = 0; j <= N; ++j) {
      const double r = grid.r[j];
      if (r >= ap.R_eps && r <= ap.R_eps + delta)
        mm = std::max(mm, std::abs(h2[j] - ap.eta2_tilde[j]));
    }
    ap.gluing_mismatch = mm;
    return ap;
  }

  // Annulus: five-piece eta2_check, three-piece eta1_check.
  if (!scalars.annulus_minus || scalars.annulus_minus->grid.n != grid.n)
    throw Error("GridMismatch", "annulus regime needs eta_hat_2^- on the target grid");
  const auto& h2m = scalars.annulus_minus->eta_hat;

  for (std::size_t j = 0; j <= N; ++j) {
    const double r = grid.r[j];
    if (r <= ap.r_eps) {
      const double rad =
          ep.a1eps(r) + (p.g / p.g1) * ep.a2eps(r) - (p.g / p.g1) * sq(h2m[j]);
      ap.eta1_check[j] = radicand_sqrt(rad, r);
    } else if (r < ap.r_eps + delta) {
      const double rad =
          ep.a1eps(r) + (p.g / p.g1) * ep.a2eps(r) - (p.g / p.g1) * sq(h2m[j]);
      const double left = radicand_sqrt(rad, r);
      const double wgt = smoothstep5((r - ap.r_eps) / delta);
      ap.eta1_check[j] = (1.0 - wgt) * left + wgt * h1[j];
    } else {
      ap.eta1_check[j] = h1[j];
    }
  }
  for (std::size_t j = 0; j <= N; ++j) {
    const double r = grid.r[j];
    if (r <= ap.r_eps) {
      ap.eta2_check[j] = h2m[j];
    } else if (r < ap.r_eps + delta) {
      const double rad =
          ep.a2eps(r) + (p.g / p.g2) * ep.a1eps(r) - (p.g / p.g2) * sq(ap.eta1_check[j]);
      ap.eta2_tilde[j] = radicand_sqrt(rad, r);
      const double wgt = smoothstep5((r - ap.r_eps) / delta);
      ap.eta2_check[j] = (1.0 - wgt) * h2m[j] + wgt * ap.eta2_tilde[j];
    } else if (r <= ap.R_eps) {
      const double rad =
          ep.a2eps(r) + (p.g / p.g2) * ep.a1eps(r) - (p.g / p.g2) * sq(ap.eta1_check[j]);
      ap.eta2_tilde[j] = radicand_sqrt(rad, r);
      ap.eta2_check[j] = ap.eta2_tilde[j];
    } else if (r < ap.R_eps + delta) {
      const double rad =
          ep.a2eps(r) + (p.g / p.g2) * ep.a1eps(r) - (p.g / p.g2) * sq(ap.eta1_check[j]);
      ap.eta2_tilde[j] = radicand_sqrt(rad, r);
      const double wgt = smoothstep5((r - ap.R_eps) / delta);
      ap.eta2_check[j] = (1.0 - wgt) * ap.eta2_tilde[j] + wgt * h2[j];
    } else {
      ap.eta2_check[j] = h2[j];
    }
  }
  double mm = 0;
  for (std::size_t j = 0; j <= N; ++j) {
    const double r = grid.r[j];
    if (r >= ap.R_eps && r <= ap.R_eps + delta)
      mm = std::max(mm, std::abs(h2[j] - ap.eta2_tilde[j]));
  }
  ap.gluing_mismatch = mm;
  return ap;
}

Residual residual(const PhysParams& p, const EpsProfile& ep, const ApproxSolution& ap) {
  const RadialGrid& g = ap.grid;
  const double e2 = p.eps * p.eps;
  Residual out;
  out.E1.assign(g.n + 1, 0.0);
  out.E2.assign(g.n + 1, 0.0);
  std::vector<double> lap1, lap2;
  g.laplacian(ap.eta1_check, lap1);
  g.laplacian(ap.eta2_check, lap2);
  for (std::size_t j = 0; j < g.n; ++j) {
    const double r = g.r[j];
    const double a1 = ep.a1eps(r), a2 = ep.a2eps(r);
    const double u1 = ap.eta1_check[j], u2 = ap.eta2_check[j];
    out.E1[j] = -e2 * lap1[j] + p.g1 * u1 * (u1 * u1 - a1) + p.g * u1 * (u2 * u2 - a2);
    out.E2[j] = -e2 * lap2[j] + p.g2 * u2 * (u2 * u2 - a2) + p.g * u2 * (u1 * u1 - a1);
  }
  auto inner = [&](double r) {
    return ap.annulus ? (r > ap.r_eps && r < ap.R_eps) : (r < ap.R_eps);
  };
  auto outer = [&](double r) { return !inner(r); };
  out.e1_inner = l2_norm_region(g, out.E1, inner);
  out.e1_outer = l2_norm_region(g, out.E1, outer);
  out.e2_inner = l2_norm_region(g, out.E2, inner);
  out.e2_outer = l2_norm_region(g, out.E2, outer);
  out.e1_total = std::sqrt(sq(out.e1_inner) + sq(out.e1_outer));
  return out;
}

namespace {

struct BandedProblem {
  // Interleaved (phi_0, psi_0, phi_1, psi_1, ...), bandwidth 2, lower storage.
  lapack_int n = 0;
  std::vector<double> ab;   // (kd+1) x n, col-major
  std::vector<double> bw;   // diagonal of B (positive weights)
  static constexpr lapack_int kd = 2;

  void symmetrize_scale() {
    // C = B^{-1/2} A B^{-1/2}
    for (lapack_int j = 0; j < n; ++j)
      for (lapack_int d = 0; d <= kd; ++d) {
        if (j + d >= n) continue;
        ab[std::size_t(j) * (kd + 1) + d] /=
            std::sqrt(bw[std::size_t(j)]) * std::sqrt(bw[std::size_t(j + d)]);
      }
  }

  std::vector<double> smallest(int k) {
    symmetrize_scale();
    std::vector<double> w(n), z(1);
    std::vector<lapack_int> ifail(n);
    lapack_int m = 0;
    std::vector<double> q(std::size_t(n) * 1);
    lapack_int info = LAPACKE_dsbevx(
        LAPACK_COL_MAJOR, 'N', 'I', 'L', n, kd, ab.data(), kd + 1, q.data(), 1, 0.0, 0.0,
        1, std::min<lapack_int>(k, n), 2e-15, &m, w.data(), z.data(), 1, ifail.data());
    if (info != 0) throw Error("EigensolverFailure", "dsbevx info = " + std::to_string(info));
    w.resize(m);
    return w;
  }
};

// Assemble the form  sum_e eps^2 r_e h (D phi)^2 + (D psi)^2
//                  + sum_j w_j [P11 phi^2 + P22 psi^2 + 2 C phi psi]
// over nodes j = 0..m (inclusive), with the given node weights.
BandedProblem assemble(const PhysParams& p, const EpsProfile& ep, const ApproxSolution& ap,
                       std::size_t m, const std::vector<double>& wnode, bool weighted_B) {
  const RadialGrid& g = ap.grid;
  const double e2 = p.eps * p.eps;
  BandedProblem bp;
  bp.n = lapack_int(2 * (m + 1));
  bp.ab.assign(std::size_t(bp.n) * (BandedProblem::kd + 1), 0.0);
  bp.bw.assign(std::size_t(bp.n), 1.0);
  auto A = [&](std::size_t row, std::size_t col) -> double& {
    // lower band storage, row >= col, d = row - col <= 2
    return bp.ab[col * (BandedProblem::kd + 1) + (row - col)];
  };
  const double e23 = std::pow(p.eps, 2.0 / 3.0);
  for (std::size_t j = 0; j <= m; ++j) {
    const double r = g.r[j];
    const double u1 = ap.eta1_check[j], u2 = ap.eta2_check[j];
    const double a1 = ep.a1eps(r), a2 = ep.a2eps(r);
    const double P11 = p.g1 * (3 * u1 * u1 - a1) + p.g * (u2 * u2 - a2);
    const double P22 = p.g2 * (3 * u2 * u2 - a2) + p.g * (u1 * u1 - a1);
    const double C = 2.0 * p.g * u1 * u2;
    A(2 * j, 2 * j) += wnode[j] * P11;
    A(2 * j + 1, 2 * j + 1) += wnode[j] * P22;
    A(2 * j + 1, 2 * j) += wnode[j] * C;
    bp.bw[2 * j] = wnode[j] * (weighted_B ? e23 : 1.0);
    bp.bw[2 * j + 1] = wnode[j];
  }
  for (std::size_t j = 0; j < m; ++j) {
    const double ke = e2 * g.redge[j] / g.h;
    A(2 * j, 2 * j) += ke;                      // phi diagonal, node j
    A(2 * (j + 1), 2 * (j + 1)) += ke;          // phi diagonal, node j+1
    A(2 * (j + 1), 2 * j) -= ke;                // phi off-diagonal
    A(2 * j + 1, 2 * j + 1) += ke;              // psi diagonal, node j
    A(2 * (j + 1) + 1, 2 * (j + 1) + 1) += ke;  // psi diagonal, node j+1
    A(2 * (j + 1) + 1, 2 * j + 1) -= ke;        // psi off-diagonal
  }
  return bp;
}

}  // namespace

SpectrumReport linearized_spectrum(const PhysParams& p, const EpsProfile& ep,
                                   const ApproxSolution& ap, int k) {
  const RadialGrid& g = ap.grid;
  if (g.n > 100000)
    throw Error("EigensolverFailure", "grid too large for the banded eigensolver");
  SpectrumReport rep;
  {
    // Plain problem on the full domain (Dirichlet at r_max: drop node n).
    std::vector<double> wn(g.w.begin(), g.w.end() - 1);
    BandedProblem bp = assemble(p, ep, ap, g.n - 1, wn, false);
    rep.plain = bp.smallest(k);
  }
  {
    // Weighted problem on the inner ball with the natural (Neumann) boundary.
    std::size_t m = 0;
    while (m + 1 <= g.n && g.r[m + 1] <= ap.R_eps) ++m;
    std::vector<double> wn(g.w.begin(), g.w.begin() + m + 1);
    wn[m] = 0.5 * g.r[m] * g.h;  // half cell at the Neumann edge
    BandedProblem bp = assemble(p, ep, ap, m, wn, true);
    rep.weighted = bp.smallest(k);
  }
  return rep;
}

double linearized_quadratic_form(const PhysParams& p, const EpsProfile& ep,
                                 const ApproxSolution& ap, const std::vector<double>& phi,
                                 const std::vector<double>& psi) {
  const RadialGrid& g = ap.grid;
  const double e2 = p.eps * p.eps;
  double s = 0;
  for (std::size_t j = 0; j < g.n; ++j) {
    s += e2 * g.redge[j] / g.h * (sq(phi[j + 1] - phi[j]) + sq(psi[j + 1] - psi[j]));
  }
  for (std::size_t j = 0; j <= g.n; ++j) {
    const double r = g.r[j];
    const double u1 = ap.eta1_check[j], u2 = ap.eta2_check[j];
    const double a1 = ep.a1eps(r), a2 = ep.a2eps(r);
    const double P11 = p.g1 * (3 * u1 * u1 - a1) + p.g * (u2 * u2 - a2);
    const double P22 = p.g2 * (3 * u2 * u2 - a2) + p.g * (u1 * u1 - a1);
    const double C = 2.0 * p.g * u1 * u2;
    s += g.w[j] * (P11 * phi[j] * phi[j] + P22 * psi[j] * psi[j] + 2 * C * phi[j] * psi[j]);
  }
  return 2.0 * kPi * s;
}

double triple_norm(const RadialGrid& g, double eps, bool annulus, double r_eps,
                   double R_eps, const std::vector<double>& phi,
                   const std::vector<double>& psi) {
  const double e23 = std::pow(eps, 2.0 / 3.0);
  double grad = 0, inner_phi = 0, inner_psi = 0, outer_phi = 0, outer_psi = 0;
  for (std::size_t j = 0; j < g.n; ++j)
    grad += g.redge[j] / g.h * (sq(phi[j + 1] - phi[j]) + sq(psi[j + 1] - psi[j]));
  for (std::size_t j = 0; j <= g.n; ++j) {
    const double r = g.r[j];
    const bool in = annulus ? (r > r_eps && r < R_eps) : (r < R_eps);
    if (in) {
      inner_phi += g.w[j] * sq(phi[j]);
      inner_psi += g.w[j] * sq(psi[j]);
    } else {
      outer_phi += g.w[j] * sq(phi[j]);
      outer_psi += g.w[j] * sq(psi[j]);
    }
  }
  const double total = eps * eps * grad + e23 * inner_phi + inner_psi + outer_phi +
                       e23 * outer_psi;
  return std::sqrt(2.0 * kPi * total);
}

ApproxDistance compare_to_true(const ApproxSolution& ap, const RadialState& st) {
  if (st.grid.n != ap.grid.n || st.grid.h != ap.grid.h)
    throw Error("GridMismatch", "state and approximation live on different grids");
  const RadialGrid& g = ap.grid;
  std::vector<double> d1(g.n + 1), d2(g.n + 1);
  for (std::size_t j = 0; j <= g.n; ++j) {
    d1[j] = st.eta1[j] - ap.eta1_check[j];
    d2[j] = st.eta2[j] - ap.eta2_check[j];
  }
  ApproxDistance out;
  out.triple = triple_norm(g, ap.ep.params.eps, ap.annulus, ap.r_eps, ap.R_eps, d1, d2);
  for (std::size_t j = 0; j <= g.n; ++j) {
    if (g.r[j] < ap.delta) continue;
    out.sup_away1 = std::max(out.sup_away1, std::abs(d1[j]));
    out.sup_away2 = std::max(out.sup_away2, std::abs(d2[j]));
  }
  return out;
}

}  // namespace tcbec
