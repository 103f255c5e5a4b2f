#include "tcbec/numerics.hpp"

#include <algorithm>
#include <cmath>

namespace tcbec {

namespace {

// Kronrod 15-point nodes/weights on [-1,1] with embedded Gauss 7.
const double kron_x[15] = {
    -0.991455371120813, -0.949107912342759, -0.864864423359769, -0.741531185599394,
    -0.586087235467691, -0.405845151377397, -0.207784955007898, 0.0,
    0.207784955007898,  0.405845151377397,  0.586087235467691,  0.741531185599394,
    0.864864423359769,  0.949107912342759,  0.991455371120813};
const double kron_w[15] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728,
    0.204432940075298, 0.190350578064785, 0.169004726639267, 0.140653259715525,
    0.104790010322250, 0.063092092629979, 0.022935322010529};
const double gauss_w[7] = {0.129484966168870, 0.279705391489277, 0.381830050505119,
                           0.417959183673469, 0.381830050505119, 0.279705391489277,
                           0.129484966168870};

struct GKResult {
  double integral;
  double err;
};

GKResult gk15(const std::function<double(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b), hw = 0.5 * (b - a);
  double ik = 0.0, ig = 0.0;
  for (int i = 0; i < 15; ++i) {
    const double v = f(c + hw * kron_x[i]);
    ik += kron_w[i] * v;
    if (i % 2 == 1) ig += gauss_w[i / 2] * v;
  }
  ik *= hw;
  ig *= hw;
  return {ik, std::abs(ik - ig)};
}

double adapt(const std::function<double(double)>& f, double a, double b, double tol,
             int depth, int max_depth) {
  GKResult r = gk15(f, a, b);
  if (r.err <= tol || depth >= max_depth) return r.integral;
  const double m = 0.5 * (a + b);
  return adapt(f, a, m, 0.5 * tol, depth + 1, max_depth) +
         adapt(f, m, b, 0.5 * tol, depth + 1, max_depth);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol, int max_depth) {
  if (a == b) return 0.0;
  return adapt(f, a, b, abs_tol, 0, max_depth);
}

double integrate_split(const std::function<double(double)>& f, double a, double b,
                       const std::vector<double>& breaks, double abs_tol) {
  std::vector<double> pts;
  pts.push_back(a);
  for (double p : breaks)
    if (p > a && p < b) pts.push_back(p);
  pts.push_back(b);
  std::sort(pts.begin(), pts.end());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i)
    total += integrate(f, pts[i], pts[i + 1], abs_tol / double(pts.size()));
  return total;
}

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw Error("InsufficientData", "need at least two points for a line fit");
  const double n = double(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double denom = n * sxx - sx * sx;
  LineFit fit;
  fit.slope = (n * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.slope * sx) / n;
  double ss = 0;
  for (std::size_t i = 0; i < x.size(); ++i)
    ss += sq(y[i] - fit.slope * x[i] - fit.intercept);
  fit.rms_residual = std::sqrt(ss / n);
  if (x.size() > 2)
    fit.slope_stderr = std::sqrt(ss / (n - 2.0) / (sxx - sx * sx / n));
  fit.x = x;
  fit.y = y;
  return fit;
}

LineFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y) {
  std::vector<double> lx(x.size()), ly(y.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0))
      throw Error("FitRejected", "log-log fit requires positive data");
    lx[i] = std::log(x[i]);
    ly[i] = std::log(y[i]);
  }
  return fit_line(lx, ly);
}

double interp_cubic_uniform(const std::vector<double>& y, double x0, double h, double x) {
  const std::ptrdiff_t n = std::ptrdiff_t(y.size());
  if (n < 4) throw Error("GridTooCoarse", "cubic interpolation needs >= 4 samples");
  const double t = (x - x0) / h;
  if (t < -1e-9 || t > double(n - 1) + 1e-9)
    throw Error("OutOfTableRange", "interpolation point outside table");
  std::ptrdiff_t i = std::ptrdiff_t(std::floor(t));
  i = std::clamp<std::ptrdiff_t>(i - 1, 0, n - 4);
  const double s = t - double(i);  // in [0,3] within the 4-point stencil
  const double y0 = y[i], y1 = y[i + 1], y2 = y[i + 2], y3 = y[i + 3];
  // Lagrange basis on nodes 0,1,2,3
  const double l0 = -(s - 1) * (s - 2) * (s - 3) / 6.0;
  const double l1 = s * (s - 2) * (s - 3) / 2.0;
  const double l2 = -s * (s - 1) * (s - 3) / 2.0;
  const double l3 = s * (s - 1) * (s - 2) / 6.0;
  return y0 * l0 + y1 * l1 + y2 * l2 + y3 * l3;
}

}  // namespace tcbec
