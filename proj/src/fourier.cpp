// Numeric Fourier theory on the Planck scale Hopf algebra.
#include "hopftwist/fourier.hpp"

#include <gsl/gsl_integration.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>

#include "hopftwist/errors.hpp"

namespace hopftwist::fourier {

namespace {

constexpr cplx I{0, 1};

cplx gauss(const Gaussian& g, cplx x, cplx p) {
  const cplx dx = x - g.x0, dp = p - g.p0;
  return std::exp(-dx * dx / (2 * g.sx * g.sx) - dp * dp / (2 * g.sp * g.sp));
}

cplx ipow(cplx z, int k) {
  cplx r = 1;
  for (int i = 0; i < k; ++i) r *= z;
  return r;
}

}  // namespace

// ---- test functions ----

TestFunction::TestFunction(Gaussian g, Poly poly) : g_(g), poly_(std::move(poly)) {
  if (!(g_.sx > 0) || !(g_.sp > 0)) throw Error(Errc::InvalidArgument, "Gaussian widths must be positive");
  for (const auto& [k, c] : poly_)
    if (k.first < 0 || k.second < 0) throw Error(Errc::InvalidArgument, "negative power in test polynomial");
}

cplx TestFunction::operator()(cplx x, cplx p) const {
  cplx s = 0;
  for (const auto& [k, c] : poly_) s += c * ipow(x, k.first) * ipow(p, k.second);
  return s * gauss(g_, x, p);
}

// d/dx (P e) = (P_x - P (x - x0)/sx^2) e, and likewise in p
TestFunction TestFunction::dx() const {
  Poly out;
  const double s2 = g_.sx * g_.sx;
  for (const auto& [k, c] : poly_) {
    if (k.first > 0) out[{k.first - 1, k.second}] += c * double(k.first);
    out[{k.first + 1, k.second}] -= c / s2;
    out[{k.first, k.second}] += c * g_.x0 / s2;
  }
  return TestFunction(g_, out);
}

TestFunction TestFunction::dp() const {
  Poly out;
  const double s2 = g_.sp * g_.sp;
  for (const auto& [k, c] : poly_) {
    if (k.second > 0) out[{k.first, k.second - 1}] += c * double(k.second);
    out[{k.first, k.second + 1}] -= c / s2;
    out[{k.first, k.second}] += c * g_.p0 / s2;
  }
  return TestFunction(g_, out);
}

int TestFunction::degree() const {
  int d = 0;
  for (const auto& [k, c] : poly_) d = std::max(d, k.first + k.second);
  return d;
}

Integrand integrand_of(const TestFunction& f) {
  TestFunction fx = f.dx();
  return {[f](double x, double p) { return f(x, p); }, [fx](double x, double p) { return fx(x, p); },
          f.gaussian(), f.degree()};
}

// ---- quadrature ----

std::vector<std::pair<double, double>> nodes(Rule rule, int n, double a, double b) {
  if (n < 2) throw Error(Errc::QuadratureDiverged, "need at least 2 quadrature nodes, got " + std::to_string(n));
  if (!(b > a)) throw Error(Errc::InvalidArgument, "empty quadrature range");
  std::vector<std::pair<double, double>> out;
  out.reserve(static_cast<size_t>(n));
  if (rule == Rule::trapezoid) {
    const double h = (b - a) / (n - 1);
    for (int i = 0; i < n; ++i) out.emplace_back(a + i * h, (i == 0 || i == n - 1) ? h / 2 : h);
    return out;
  }
  static std::mutex mu;
  static std::map<int, std::unique_ptr<gsl_integration_glfixed_table, void (*)(gsl_integration_glfixed_table*)>>
      tables;
  gsl_integration_glfixed_table* t;
  {
    std::lock_guard lock(mu);
    auto it = tables.find(n);
    if (it == tables.end())
      it = tables
               .emplace(n, std::unique_ptr<gsl_integration_glfixed_table, void (*)(gsl_integration_glfixed_table*)>(
                               gsl_integration_glfixed_table_alloc(static_cast<size_t>(n)),
                               gsl_integration_glfixed_table_free))
               .first;
    t = it->second.get();
  }
  for (int i = 0; i < n; ++i) {
    double xi, wi;
    gsl_integration_glfixed_point(a, b, static_cast<size_t>(i), &xi, &wi, t);
    out.emplace_back(xi, wi);
  }
  std::sort(out.begin(), out.end());
  return out;
}

void Grid::validate() const {
  auto increasing = [](const std::vector<double>& v) {
    if (v.empty()) return false;
    for (size_t i = 1; i < v.size(); ++i)
      if (!(v[i] > v[i - 1])) return false;
    return true;
  };
  if (!increasing(a) || !increasing(b)) throw Error(Errc::InvalidArgument, "grid axes must be strictly increasing");
}

// ---- flow ----

double flow(double x, double xbar, double hbar, double G) {
  const double arg = 1 + std::expm1(x / G) * std::exp(-hbar * xbar / G);
  if (!(arg > 0)) throw Error(Errc::OutOfDomain, "flow leaves the domain at x=" + std::to_string(x) +
                                                      " xbar=" + std::to_string(xbar));
  return G * std::log(arg);
}

double flow_dxbar(double x, double xbar, double hbar, double G) {
  const double a = std::exp(-hbar * xbar / G), em = std::expm1(x / G);
  const double arg = 1 + em * a;
  if (!(arg > 0)) throw Error(Errc::OutOfDomain, "flow leaves the domain");
  return -hbar * em * a / arg;
}

// ---- T ----

namespace {

double window_half(double sigma, int degree) { return sigma * (10 + 0.5 * degree); }

struct PointValue {
  cplx v, d;
  bool clipped = false;
};

std::vector<std::pair<double, double>> p_nodes(const Integrand& f, const QuadratureSpec& q, int np) {
  auto [lo, hi] = q.p_range.value_or(std::pair{f.window.p0 - window_half(f.window.sp, f.degree),
                                               f.window.p0 + window_half(f.window.sp, f.degree)});
  return nodes(q.rule, np, lo, hi);
}

PointValue T_point(const Integrand& f, double pb, double xb, const QuadratureSpec& q, int nx, int np, double hbar,
                   double G) {
  const bool want_d = static_cast<bool>(f.fx);
  const auto pn = p_nodes(f, q, np);
  std::vector<cplx> ep(pn.size());
  for (size_t k = 0; k < pn.size(); ++k) ep[k] = std::exp(-I * xb * pn[k].first) * pn[k].second;
  PointValue out;
  const double y_lo = f.window.x0 - window_half(f.window.sx, f.degree);
  const double y_hi = f.window.x0 + window_half(f.window.sx, f.degree);
  const double a = std::exp(-hbar * xb / G), lam = 1 / a;

  if (!q.x_range && xb <= 0) {
    // substitute y = phi(x): the inverse flow is defined on all of R here and
    // e^{x/G} dx = lam e^{y/G} dy
    for (const auto& [y, wy] : nodes(q.rule, nx, y_lo, y_hi)) {
      const double em = std::expm1(y / G), arg = 1 + em * lam;
      const double psi = G * std::log(arg), dpsi = hbar * em * lam / arg;
      const cplx ky = lam * std::exp(y / G) * std::exp(-I * pb * psi) * wy;
      for (size_t k = 0; k < pn.size(); ++k) {
        const double p = pn[k].first;
        const cplx t = ky * ep[k] * f.f(y, p);
        out.v += t;
        if (want_d) out.d += t * (hbar / G - I * pb * dpsi - I * p);
      }
    }
    return out;
  }

  double x_lo, x_hi;
  if (q.x_range) {
    std::tie(x_lo, x_hi) = *q.x_range;
    if (a > 1) {
      const double edge = G * std::log1p(-lam);
      if (x_lo <= edge) {
        x_lo = edge;
        out.clipped = true;
      }
    }
  } else {
    // xbar > 0: phi is defined everywhere; below the window's preimage only the
    // weight e^{x/G} decays
    x_hi = G * std::log1p(std::expm1(y_hi / G) * lam);
    const double arg_lo = 1 + std::expm1(y_lo / G) * lam;
    const double floor = std::min(x_hi, 0.0) - 36 * G;
    x_lo = arg_lo > 0 ? std::max(G * std::log(arg_lo), floor) : floor;
  }
  for (const auto& [x, wx] : nodes(q.rule, nx, x_lo, x_hi)) {
    const double em = std::expm1(x / G), arg = 1 + em * a;
    if (!(arg > 0)) continue;  // the pulled-back symbol vanishes at the domain edge
    const double phi = G * std::log(arg), dphi = -hbar * em * a / arg;
    const cplx kx = std::exp((-I * pb + 1.0 / G) * x) * wx;
    for (size_t k = 0; k < pn.size(); ++k) {
      const double p = pn[k].first;
      const cplx base = kx * ep[k];
      const cplx t = base * f.f(phi, p);
      out.v += t;
      if (want_d) out.d += -I * p * t + base * f.fx(phi, p) * dphi;
    }
  }
  return out;
}

PointValue T_classical_point(const Integrand& f, double pb, double xb, const QuadratureSpec& q, int nx, int np,
                             cplx inv_kappa) {
  const auto pn = p_nodes(f, q, np);
  auto [lo, hi] = q.x_range.value_or(std::pair{f.window.x0 - window_half(f.window.sx, f.degree),
                                               f.window.x0 + window_half(f.window.sx, f.degree)});
  PointValue out;
  for (const auto& [x, wx] : nodes(q.rule, nx, lo, hi)) {
    const cplx kx = std::exp(-I * (pb + inv_kappa) * x) * wx;
    for (const auto& [p, wp] : pn) {
      const cplx t = kx * std::exp(-I * xb * p) * wp * f.f(x, p);
      out.v += t;
      out.d += -I * p * t;
    }
  }
  return out;
}

template <class Point>
DualSymbol run_T(const Integrand& f, const Grid& grid, const QuadratureSpec& quad, Point point) {
  grid.validate();
  DualSymbol out{grid, {}, {}, quad, 0};
  const bool want_d = static_cast<bool>(f.fx);
  for (double pb : grid.a)
    for (double xb : grid.b) {
      PointValue v = point(pb, xb, quad.nx, quad.np);
      if (quad.refine_tol > 0) {
        PointValue h = point(pb, xb, quad.nx / 2, quad.np / 2);
        const double rel = std::abs(v.v - h.v) / std::max(std::abs(v.v), 1e-300);
        if (rel > quad.refine_tol)
          throw Error(Errc::QuadratureDiverged, "node halving changes T by " + std::to_string(rel) +
                                                    " at pbar=" + std::to_string(pb) + " xbar=" + std::to_string(xb));
      }
      out.values.push_back(v.v);
      if (want_d) out.dxbar.push_back(v.d);
      out.clipped += v.clipped ? 1 : 0;
    }
  return out;
}

}  // namespace

DualSymbol transform_T(const Integrand& f, const Grid& grid, const QuadratureSpec& quad, double hbar, double G) {
  if (!(G > 0) || !(hbar >= 0)) throw Error(Errc::InvalidArgument, "need G > 0 and hbar >= 0");
  return run_T(f, grid, quad,
               [&](double pb, double xb, int nx, int np) { return T_point(f, pb, xb, quad, nx, np, hbar, G); });
}

DualSymbol transform_T(const TestFunction& f, const Grid& grid, const QuadratureSpec& quad, double hbar, double G) {
  return transform_T(integrand_of(f), grid, quad, hbar, G);
}

DualSymbol transform_T_classical(const Integrand& f, const Grid& grid, const QuadratureSpec& quad, cplx inv_kappa) {
  return run_T(f, grid, quad, [&](double pb, double xb, int nx, int np) {
    return T_classical_point(f, pb, xb, quad, nx, np, inv_kappa);
  });
}

// ---- left-invariant derivatives ----

Integrand dbar_x(const TestFunction& f, double hbar, double G) {
  const cplx c = I * hbar / G;
  TestFunction fx = f.dx();
  return {[=](double x, double p) { return fx(x, p) + p / (I * hbar) * (f(x, p - c) - f(x, p)); }, {},
          f.gaussian(), f.degree() + 1};
}

Integrand dbar_eta(const TestFunction& f, double hbar, double G, EtaReading r) {
  if (r == EtaReading::printed) {
    const double c = hbar / G;
    return {[=](double x, double p) { return -(G / hbar) * (f(x, p - c) - f(x, p)); }, {}, f.gaussian(),
            f.degree()};
  }
  const cplx c = I * hbar / G;
  return {[=](double x, double p) { return -(G / (I * hbar)) * (f(x, p - c) - f(x, p)); }, {}, f.gaussian(),
          f.degree()};
}

// ---- T* ----

namespace {

// sum over (pbar power m, kernel derivative order j, basis power e) of
// c * pbar^m b_e(xbar) d^j/dxbar^j, applied to e^{-i xbar p}. The basis is
// E^e with E = e^{-hbar xbar/G} (quantum) or xbar^e (classical).
struct OpPoly {
  bool quantum;
  double hbar = 0, G = 1;
  cplx inv_kappa = 0;
  std::map<std::tuple<int, int, int>, cplx> t;

  // D (b_e d^j) = c (b_e' d^j + b_e d^{j+1})
  void apply_pbar_plus_D() {
    std::map<std::tuple<int, int, int>, cplx> out;
    auto times_c = [&](int m, int j, int e, cplx v) {
      if (quantum) {  // c = (i/hbar)(E - 1)
        out[{m, j, e + 1}] += I / hbar * v;
        out[{m, j, e}] -= I / hbar * v;
      } else {  // c = -xbar/kappa
        out[{m, j, e + 1}] -= inv_kappa * v;
      }
    };
    for (const auto& [k, v] : t) {
      const auto [m, j, e] = k;
      out[{m + 1, j, e}] += v;
      if (e > 0) {
        if (quantum)
          times_c(m, j, e, -hbar / G * e * v);
        else
          times_c(m, j, e - 1, double(e) * v);
      }
      times_c(m, j + 1, e, v);
    }
    t.clear();
    for (const auto& [k, v] : out)
      if (v != cplx(0)) t.emplace(k, v);
  }
};

PhaseSamples run_Tstar(const DualClassSymbol& phi, const Grid& xp, const TstarOptions& opt, OpPoly op,
                       double weight_rate) {
  if (phi.n < 0 || phi.n > 6) throw Error(Errc::UnsupportedSymbol, "T* supports pbar^n u(xbar) with 0 <= n <= 6");
  if (!(phi.sigma > 0)) throw Error(Errc::UnsupportedSymbol, "u must be a Gaussian with positive width");
  if (!(opt.eps > 0)) throw Error(Errc::InvalidArgument, "T* needs a positive pbar window");
  xp.validate();
  op.t = {{{0, 0, 0}, 1.0}};
  for (int k = 0; k < phi.n; ++k) op.apply_pbar_plus_D();
  int mmax = 0, emax = 0;
  for (const auto& [k, v] : op.t) {
    mmax = std::max(mmax, std::get<0>(k));
    emax = std::max(emax, std::get<2>(k));
  }
  const QuadratureSpec& q = opt.quad;
  const double P = std::sqrt(60 / opt.eps);
  auto [pb_lo, pb_hi] = q.p_range.value_or(std::pair{-P, P});
  auto [xb_lo, xb_hi] = q.x_range.value_or(std::pair{phi.center - 10 * phi.sigma, phi.center + 10 * phi.sigma});
  const auto pbn = nodes(q.rule, q.np, pb_lo, pb_hi);
  const auto xbn = nodes(q.rule, q.nx, xb_lo, xb_hi);

  // the integrand factorizes term by term on the tensor grid
  const size_t nx = xp.a.size(), np = xp.b.size();
  std::vector<std::vector<cplx>> Pm(static_cast<size_t>(mmax + 1), std::vector<cplx>(nx));
  for (size_t i = 0; i < nx; ++i)
    for (const auto& [pb, w] : pbn) {
      const cplx base = std::exp(-I * pb * xp.a[i] - opt.eps * pb * pb) * w;
      cplx pw = 1;
      for (int m = 0; m <= mmax; ++m, pw *= pb) Pm[static_cast<size_t>(m)][i] += base * pw;
    }
  std::vector<std::vector<cplx>> Xe(static_cast<size_t>(emax + 1), std::vector<cplx>(np));
  for (size_t j = 0; j < np; ++j)
    for (const auto& [xb, w] : xbn) {
      const double d = (xb - phi.center) / phi.sigma;
      const cplx base = std::exp(-I * xb * xp.b[j]) * std::exp(-d * d / 2 + weight_rate * xb) * w;
      const double step = op.quantum ? std::exp(-op.hbar * xb / op.G) : xb;
      double bw = 1;
      for (int e = 0; e <= emax; ++e, bw *= step) Xe[static_cast<size_t>(e)][j] += base * bw;
    }
  PhaseSamples out{xp, std::vector<cplx>(nx * np)};
  for (size_t i = 0; i < nx; ++i)
    for (size_t j = 0; j < np; ++j) {
      cplx s = 0;
      for (const auto& [k, v] : op.t) {
        const auto [m, jj, e] = k;
        s += v * ipow(-I * xp.b[j], jj) * Pm[static_cast<size_t>(m)][i] * Xe[static_cast<size_t>(e)][j];
      }
      out.values[i * np + j] = s;
    }
  return out;
}

}  // namespace

PhaseSamples transform_Tstar(const DualClassSymbol& phi, const Grid& xp, const TstarOptions& opt, double hbar,
                             double G) {
  if (!(G > 0) || !(hbar > 0)) throw Error(Errc::InvalidArgument, "need G > 0 and hbar > 0");
  OpPoly op{true, hbar, G, 0, {}};
  return run_Tstar(phi, xp, opt, op, hbar / G);
}

PhaseSamples transform_Tstar_classical(const DualClassSymbol& phi, const Grid& xp, const TstarOptions& opt,
                                       cplx inv_kappa) {
  OpPoly op{false, 0, 1, inv_kappa, {}};
  return run_Tstar(phi, xp, opt, op, 0);
}

// ---- intertwiners ----

IntertwinerSamples intertwiner_samples(const TestFunction& f, Intertwiner which, const QuadratureSpec& quad,
                                       const Grid& grid, double hbar, double G, ResidualOptions opt) {
  IntertwinerSamples out{transform_T(f, grid, quad, hbar, G), {}, {}};
  const DualSymbol& F = out.F;
  out.lhs = transform_T(which == Intertwiner::eta_bar ? dbar_eta(f, hbar, G, opt.eta) : dbar_x(f, hbar, G), grid,
                        quad, hbar, G)
                .values;
  out.rhs.resize(out.lhs.size());
  for (size_t i = 0; i < grid.a.size(); ++i)
    for (size_t j = 0; j < grid.b.size(); ++j) {
      const size_t k = i * grid.b.size() + j;
      const double pb = grid.a[i], xb = grid.b[j];
      const double up = std::exp(hbar * xb / G);
      if (which == Intertwiner::eta_bar) {
        out.rhs[k] = F.values[k] * (I * G / hbar) * (up - 1);
      } else {
        cplx inner = pb * F.values[k];
        if (!opt.drop_reorder) inner += (I / hbar) * std::expm1(-hbar * xb / G) * F.dxbar[k];
        out.rhs[k] = I * inner * up;
      }
    }
  return out;
}

std::vector<double> IntertwinerSamples::pointwise() const {
  double den = 0;
  for (const cplx& r : rhs) den = std::max(den, std::abs(r));
  std::vector<double> out(lhs.size());
  for (size_t k = 0; k < lhs.size(); ++k) out[k] = std::abs(lhs[k] - rhs[k]) / den;
  return out;
}

double IntertwinerSamples::residual() const {
  const auto r = pointwise();
  return r.empty() ? 0 : *std::max_element(r.begin(), r.end());
}

double intertwiner_residual(const TestFunction& f, Intertwiner which, const QuadratureSpec& quad, const Grid& grid,
                            double hbar, double G, ResidualOptions opt) {
  return intertwiner_samples(f, which, quad, grid, hbar, G, opt).residual();
}

// ---- classical round trip ----

cplx antipode_inv_symbol(const DualClassSymbol& phi, double pbar, double xbar, cplx inv_kappa) {
  // (w |<^k) = q_k w with w(xbar) = exp(-(xbar + c)^2 / 2 s^2), q_k a polynomial
  const double c = phi.center, s2 = phi.sigma * phi.sigma;
  std::vector<cplx> q{1};
  std::vector<cplx> vals;
  auto eval = [&](const std::vector<cplx>& poly) {
    cplx v = 0, pw = 1;
    for (const cplx& a : poly) {
      v += a * pw;
      pw *= xbar;
    }
    return v;
  };
  vals.push_back(eval(q));
  for (int k = 1; k <= phi.n; ++k) {
    // d/dxbar (q w) = (q' - q (xbar + c)/s2) w, then times -xbar/kappa
    std::vector<cplx> dq(q.size() + 1);
    for (size_t i = 1; i < q.size(); ++i) dq[i - 1] += double(i) * q[i];
    for (size_t i = 0; i < q.size(); ++i) {
      dq[i + 1] -= q[i] / s2;
      dq[i] -= q[i] * c / s2;
    }
    std::vector<cplx> nq(dq.size() + 1);
    for (size_t i = 0; i < dq.size(); ++i) nq[i + 1] = -inv_kappa * dq[i];
    q = nq;
    vals.push_back(eval(q));
  }
  const double d = (xbar + c) / phi.sigma;
  const double w = std::exp(-d * d / 2);
  cplx s = 0;
  double binom = 1;
  for (int k = 0; k <= phi.n; ++k) {
    s += binom * std::pow(pbar, phi.n - k) * vals[static_cast<size_t>(k)];
    binom = binom * (phi.n - k) / (k + 1);
  }
  return (phi.n % 2 ? -1.0 : 1.0) * s * w;
}

std::vector<RoundTripPoint> roundtrip_classical(const DualClassSymbol& phi,
                                                const std::vector<std::pair<double, double>>& points,
                                                cplx inv_kappa, const RoundTripOptions& opt) {
  // T* of the windowed symbol is a Gaussian of variance 2 eps in x (times
  // Hermite-type factors) and Fourier-Gaussian in p
  const double xw = std::sqrt(4 * opt.inner.eps * (50 + 2 * phi.n));
  const double pw = (12 + phi.n) / phi.sigma;
  const auto xn = nodes(Rule::gauss_legendre, opt.outer_nx, -xw, xw);
  const auto pn = nodes(Rule::gauss_legendre, opt.outer_np, -pw, pw);
  Grid outer;
  for (const auto& [x, w] : xn) outer.a.push_back(x);
  for (const auto& [p, w] : pn) outer.b.push_back(p);
  PhaseSamples inner = transform_Tstar_classical(phi, outer, opt.inner, inv_kappa);
  std::vector<RoundTripPoint> out;
  const double four_pi2 = 4 * std::numbers::pi * std::numbers::pi;
  for (const auto& [pb, xb] : points) {
    cplx v = 0;
    for (size_t i = 0; i < xn.size(); ++i) {
      const cplx kx = std::exp(-I * (pb + inv_kappa) * xn[i].first) * xn[i].second;
      for (size_t j = 0; j < pn.size(); ++j)
        v += kx * std::exp(-I * xb * pn[j].first) * pn[j].second * inner.at(i, j);
    }
    out.push_back({pb, xb, v, four_pi2 * antipode_inv_symbol(phi, pb, xb, inv_kappa), 0});
  }
  double scale = 0;
  for (const auto& r : out) scale = std::max(scale, std::abs(r.expected));
  for (auto& r : out) r.rel_error = std::abs(r.value - r.expected) / scale;
  return out;
}

}  // namespace hopftwist::fourier
