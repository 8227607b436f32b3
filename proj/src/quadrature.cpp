#include "ostrinv/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>

namespace ostrinv {

namespace {

// 15-point Kronrod extension of the 7-point Gauss rule; abscissae and
// weights for [-1, 1]. Gauss points sit at the odd Kronrod indices.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
};

constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
};

constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
};

struct Panel {
  double lo = 0.0;
  double hi = 0.0;
  double value = 0.0;
  double err = 0.0;
};

struct PanelWorse {
  bool operator()(const Panel& a, const Panel& b) const {
    if (a.err != b.err) return a.err < b.err;
    return a.lo > b.lo;
  }
};

Panel kronrod15(const std::function<double(double)>& f, double lo, double hi) {
  double c = 0.5 * (lo + hi);
  double h = 0.5 * (hi - lo);

  auto eval = [&](double x) {
    double v = f(x);
    if (!std::isfinite(v)) {
      throw std::domain_error("integrand returned a non-finite value");
    }
    return v;
  };

  double fc = eval(c);
  double resk = kWgk[7] * fc;
  double resg = kWg[3] * fc;
  double resabs = kWgk[7] * std::abs(fc);
  double fv1[7];
  double fv2[7];
  for (int j = 0; j < 7; ++j) {
    double dx = h * kXgk[j];
    fv1[j] = eval(c - dx);
    fv2[j] = eval(c + dx);
    double fsum = fv1[j] + fv2[j];
    resk += kWgk[j] * fsum;
    if (j % 2 == 1) resg += kWg[j / 2] * fsum;
    resabs += kWgk[j] * (std::abs(fv1[j]) + std::abs(fv2[j]));
  }
  double reskh = resk * 0.5;
  double resasc = kWgk[7] * std::abs(fc - reskh);
  for (int j = 0; j < 7; ++j) {
    resasc += kWgk[j] * (std::abs(fv1[j] - reskh) + std::abs(fv2[j] - reskh));
  }
  resabs *= std::abs(h);
  resasc *= std::abs(h);

  double err = std::abs((resk - resg) * h);
  if (resasc != 0.0 && err != 0.0) {
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  }
  constexpr double eps = std::numeric_limits<double>::epsilon();
  err = std::max(err, 50.0 * eps * resabs);

  return Panel{lo, hi, resk * h, err};
}

}  // namespace

QuadResult integrate(const std::function<double(double)>& f, double lo,
                     double hi, double tol, long max_evals) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || lo > hi) {
    throw std::invalid_argument("integrate requires finite lo <= hi");
  }
  if (lo == hi) return QuadResult{0.0, 0.0, 0, true};

  QuadResult result;
  std::priority_queue<Panel, std::vector<Panel>, PanelWorse> panels;
  panels.push(kronrod15(f, lo, hi));
  result.evals = 15;
  double total_err = panels.top().err;

  while (total_err > tol && result.evals + 30 <= max_evals) {
    Panel worst = panels.top();
    panels.pop();
    double mid = 0.5 * (worst.lo + worst.hi);
    if (mid <= worst.lo || mid >= worst.hi) {
      // Interval too small to split; keep its estimate as-is.
      panels.push(worst);
      break;
    }
    Panel left = kronrod15(f, worst.lo, mid);
    Panel right = kronrod15(f, mid, worst.hi);
    result.evals += 30;
    total_err += left.err + right.err - worst.err;
    panels.push(left);
    panels.push(right);
  }

  // Deterministic final sum: accumulate panels in position order.
  std::vector<Panel> ordered;
  ordered.reserve(panels.size());
  while (!panels.empty()) {
    ordered.push_back(panels.top());
    panels.pop();
  }
  std::sort(ordered.begin(), ordered.end(),
            [](const Panel& a, const Panel& b) { return a.lo < b.lo; });
  result.value = 0.0;
  result.err_estimate = 0.0;
  for (const Panel& p : ordered) {
    result.value += p.value;
    result.err_estimate += p.err;
  }
  result.converged = result.err_estimate <= tol;
  return result;
}

double mean_value(const ScalarFn& fn, const InvexSegment& seg, double tol) {
  auto r = integrate([&](double x) { return fn.value(x); }, seg.lo(), seg.hi(),
                     tol * seg.eta());
  return r.value / seg.eta();
}

IdentityResidual lemma21_residual(const ScalarFn& fn, const EtaMap& map,
                                  const InvexSegment& seg, double x,
                                  double tol) {
  (void)map;  // the segment already carries eta(b, a)
  if (!seg.contains(x)) {
    throw std::domain_error("evaluation point outside the segment");
  }
  double a = seg.a();
  double eta = seg.eta();
  double u = (x - a) / eta;

  auto mean = integrate([&](double s) { return fn.value(s); }, seg.lo(),
                        seg.hi(), tol * eta);
  double lhs = fn.value(x) - mean.value / eta;

  auto lo_part = integrate(
      [&](double t) { return t * fn.deriv(a + t * eta); }, 0.0, u, tol);
  auto hi_part = integrate(
      [&](double t) { return (t - 1.0) * fn.deriv(a + t * eta); }, u, 1.0, tol);
  double rhs = eta * (lo_part.value + hi_part.value);

  IdentityResidual out;
  out.lhs = lhs;
  out.rhs = rhs;
  out.residual = std::abs(lhs - rhs);
  out.err_bound = mean.err_estimate / eta +
                  eta * (lo_part.err_estimate + hi_part.err_estimate);
  return out;
}

}  // namespace ostrinv
