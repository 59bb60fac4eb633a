#include "wavekin/contour.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <queue>

namespace wavekin {
namespace {

constexpr double kXgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                            0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                            0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                            0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                            0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                            0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                            0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                           0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a, b;
  cplx val;
  double err;
  bool operator<(const Panel& o) const { return err < o.err; }
};

Panel gk15(const RFunC& f, double a, double b) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  const cplx fc = f(c);
  cplx k = fc * kWgk[7], g = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXgk[j];
    const cplx f1 = f(c - dx), f2 = f(c + dx);
    k += kWgk[j] * (f1 + f2);
    if (j % 2 == 1) g += kWg[j / 2] * (f1 + f2);
  }
  k *= h;
  g *= h;
  double err = std::abs(k - g);
  // Standard QUADPACK-style sharpening keeps estimates honest on smooth panels.
  err = std::min(err, 200.0 * err * std::sqrt(200.0 * err / std::max(std::abs(k), 1e-300)));
  if (!std::isfinite(err)) err = std::abs(k - g);
  return {a, b, k, err};
}

}  // namespace

QuadResult integrate_gk(const RFunC& f, double a, double b, double rel_tol, double abs_tol,
                        int max_panels, double max_width, const std::vector<double>& breaks) {
  QuadResult r;
  if (a == b) return r;
  std::vector<double> pts{a};
  for (double x : breaks)
    if (x > a && x < b) pts.push_back(x);
  pts.push_back(b);
  std::sort(pts.begin(), pts.end());
  std::vector<double> cuts;
  for (size_t i = 0; i + 1 < pts.size(); ++i) {
    const double lo = pts[i], hi = pts[i + 1];
    int m = 1;
    if (max_width > 0) m = std::max(1, static_cast<int>(std::ceil((hi - lo) / max_width)));
    for (int j = 0; j < m; ++j) cuts.push_back(lo + (hi - lo) * j / m);
  }
  cuts.push_back(b);
  std::priority_queue<Panel> q;
  cplx total = 0.0;
  double err = 0.0;
  for (size_t i = 0; i + 1 < cuts.size(); ++i) {
    Panel p = gk15(f, cuts[i], cuts[i + 1]);
    total += p.val;
    err += p.err;
    q.push(p);
  }
  long evals = 15 * static_cast<long>(cuts.size() - 1);
  int panels = static_cast<int>(q.size());
  while (err > std::max(rel_tol * std::abs(total), abs_tol)) {
    if (panels >= max_panels) {
      char buf[160];
      std::snprintf(buf, sizeof buf, "integrate_gk: no convergence on [%g, %g], err=%.3e, value=%.3e", a, b, err,
                    std::abs(total));
      throw ContourError(buf);
    }
    Panel p = q.top();
    q.pop();
    const double m = 0.5 * (p.a + p.b);
    if (m <= p.a || m >= p.b) throw ContourError("integrate_gk: panel underflow");
    Panel l = gk15(f, p.a, m), rr = gk15(f, m, p.b);
    evals += 30;
    ++panels;
    total += l.val + rr.val - p.val;
    err += l.err + rr.err - p.err;
    q.push(l);
    q.push(rr);
  }
  // Re-sum for a deterministic, drift-free total.
  cplx sum = 0.0;
  double es = 0.0;
  std::vector<Panel> all;
  while (!q.empty()) {
    all.push_back(q.top());
    q.pop();
  }
  std::sort(all.begin(), all.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
  for (const auto& p : all) {
    sum += p.val;
    es += p.err;
  }
  r.value = sum;
  r.error_estimate = es;
  r.evaluations = evals;
  return r;
}

QuadResult integrate_vertical(const CFun& f, const ContourSpec& spec, const TailModel& tail) {
  if (!(spec.half_height > 0) || !(spec.rel_tol > 0) || !(spec.abs_tol > 0) ||
      !std::isfinite(spec.abscissa))
    throw DomainError("integrate_vertical: invalid ContourSpec");
  const double c = spec.abscissa, V = spec.half_height;
  auto g = [&](double v) { return f(cplx(c, v)); };
  const double mw = tail.omega > 0 ? kPi / (4.0 * tail.omega) : 0.0;
  QuadResult r = integrate_gk(g, -V, V, spec.rel_tol, spec.abs_tol, spec.max_refinements, mw);
  r.value *= cplx(0, 1);
  const double fe = std::max(std::abs(g(V)), std::abs(g(-V)));
  const double fh = std::max(std::abs(g(0.5 * V)), std::abs(g(-0.5 * V)));
  double tailv = 0.0;
  switch (tail.kind) {
    case TailModel::Kind::exponential: {
      tailv = 2.0 * fe / tail.rate;
      const double env = fh * std::exp(-tail.rate * 0.5 * V);
      if (fe > 100.0 * env + 1e-300 && fe > spec.abs_tol)
        throw TailModelError("integrate_vertical: exponential tail model violated");
      break;
    }
    case TailModel::Kind::power: {
      if (tail.rate <= 1.0) throw TailModelError("integrate_vertical: power tail needs p > 1");
      tailv = 2.0 * fe * V / (tail.rate - 1.0);
      const double env = fh * std::pow(2.0, -tail.rate);
      if (fe > 100.0 * env + 1e-300 && fe > spec.abs_tol)
        throw TailModelError("integrate_vertical: power tail model violated");
      break;
    }
    default:
      break;
  }
  r.truncation_tail = tailv;
  return r;
}

QuadResult integrate_circle(const CFun& f, cplx center, double radius, int n_min, int n_max) {
  if (!(radius > 0)) throw DomainError("integrate_circle: radius must be positive");
  int n = std::max(8, n_min);
  // Sum of f(z) (z - center) over the first n nodes; doubling adds odd nodes.
  auto node = [&](int k, int m) {
    const double th = 2.0 * kPi * k / m;
    const cplx d = std::polar(radius, th);
    return f(center + d) * d;
  };
  cplx sum = 0.0;
  double scale = 0.0;
  for (int k = 0; k < n; ++k) {
    const cplx v = node(k, n);
    sum += v;
    scale = std::max(scale, std::abs(v));
  }
  cplx prev = sum / static_cast<double>(n);
  QuadResult r;
  r.evaluations = n;
  while (true) {
    if (2 * n > n_max) throw ContourError("integrate_circle: no convergence");
    for (int k = 1; k < 2 * n; k += 2) {
      const cplx v = node(k, 2 * n);
      sum += v;
      scale = std::max(scale, std::abs(v));
    }
    n *= 2;
    r.evaluations = n;
    const cplx cur = sum / static_cast<double>(n);
    const double diff = std::abs(cur - prev);
    if (diff <= 1e-12 * std::max(std::abs(cur), 1e-3 * scale) || diff <= 1e-15 * scale) {
      r.value = cur;
      r.error_estimate = diff;
      return r;
    }
    prev = cur;
  }
}

cplx circle_coefficient(const CFun& f, cplx center, double radius, int m, int n) {
  cplx sum = 0.0;
  for (int k = 0; k < n; ++k) {
    const double th = 2.0 * kPi * k / n;
    sum += f(center + std::polar(radius, th)) * std::polar(1.0, -m * th);
  }
  return sum / static_cast<double>(n) * std::pow(radius, -m);
}

double find_root_real(const std::function<double(double)>& f, double lo, double hi, double tol) {
  double flo = f(lo), fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0) == (fhi > 0)) throw BracketError("find_root_real: no sign change in bracket");
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0) == (flo > 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (n + 0.5)), dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = z;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0, p1 = z;
      dp = n * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    x[i] = -z;
    x[n - 1 - i] = z;
    w[i] = w[n - 1 - i] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
}

}  // namespace wavekin
