#ifndef HOPFTWIST_FOURIER_HPP
#define HOPFTWIST_FOURIER_HPP

#include <complex>
#include <functional>
#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace hopftwist::fourier {

using cplx = std::complex<double>;

struct Gaussian {
  double x0 = 0, p0 = 0;
  double sx = 1, sp = 1;
};

// poly(x, p) * exp(-(x-x0)^2/2sx^2 - (p-p0)^2/2sp^2). Evaluation accepts
// complex arguments, so shifts such as p - i hbar/G are exact.
class TestFunction {
 public:
  using Poly = std::map<std::pair<int, int>, cplx>;  // (x power, p power)

  explicit TestFunction(Gaussian g = {}, Poly poly = {{{0, 0}, 1.0}});

  cplx operator()(cplx x, cplx p) const;
  TestFunction dx() const;
  TestFunction dp() const;
  const Gaussian& gaussian() const { return g_; }
  const Poly& poly() const { return poly_; }
  int degree() const;

 private:
  Gaussian g_;
  Poly poly_;
};

// Symbol sampled pointwise; fx is the x-derivative, needed only for d/dxbar.
struct Integrand {
  std::function<cplx(double x, double p)> f;
  std::function<cplx(double x, double p)> fx;
  Gaussian window;  // where f lives; sizes the automatic ranges
  int degree = 0;
};
Integrand integrand_of(const TestFunction& f);

enum class Rule { gauss_legendre, trapezoid };

struct QuadratureSpec {
  int nx = 200, np = 200;
  Rule rule = Rule::gauss_legendre;
  // Unset ranges are sized per output point from the window (10 sigma,
  // pulled back along the flow).
  std::optional<std::pair<double, double>> x_range, p_range;
  // > 0: also integrate with half the nodes and throw QuadratureDiverged when
  // the relative change exceeds this.
  double refine_tol = 0;
};

// Nodes and weights on [a, b]; QuadratureDiverged for fewer than 2 nodes.
std::vector<std::pair<double, double>> nodes(Rule rule, int n, double a, double b);

// Tensor grid, each axis strictly increasing.
struct Grid {
  std::vector<double> a, b;
  void validate() const;
  std::size_t size() const { return a.size() * b.size(); }
};

// T(f) on a (pbar, xbar) grid, index i * xbar.size() + j.
struct DualSymbol {
  Grid grid;  // a = pbar, b = xbar
  std::vector<cplx> values;
  std::vector<cplx> dxbar;  // d/dxbar T, empty when the integrand has no fx
  QuadratureSpec quad;
  int clipped = 0;  // points whose explicit x-range met the flow domain edge
  cplx at(std::size_t i, std::size_t j) const { return values[i * grid.b.size() + j]; }
};

// phi(x; xbar) = G log(1 + (e^{x/G} - 1) e^{-hbar xbar/G}), the time-1 flow of
// xbar hbar (e^{-x/G} - 1) d/dx. OutOfDomain when the log argument is <= 0.
double flow(double x, double xbar, double hbar, double G);
double flow_dxbar(double x, double xbar, double hbar, double G);

// T(f)(pbar, xbar) = int dx dp e^{-i(pbar + i/G)x} e^{-i xbar p} f(phi(x; xbar), p).
DualSymbol transform_T(const Integrand& f, const Grid& grid, const QuadratureSpec& quad, double hbar,
                       double G);
DualSymbol transform_T(const TestFunction& f, const Grid& grid, const QuadratureSpec& quad, double hbar,
                       double G);
// hbar -> 0 kernel e^{-i(pbar + 1/kappa)x} e^{-i xbar p}, no flow.
DualSymbol transform_T_classical(const Integrand& f, const Grid& grid, const QuadratureSpec& quad,
                                 cplx inv_kappa);

// Left-invariant derivatives of :f(x,p): evaluated pointwise.
// dbar_x f = f_x + p/(i hbar) (f(x, p - i hbar/G) - f)
// dbar_eta f = -(G/(i hbar)) (f(x, p - i hbar/G) - f); the printed reading
// uses the real shift -(G/hbar)(f(x, p - hbar/G) - f).
enum class EtaReading { imaginary_shift, printed };
Integrand dbar_x(const TestFunction& f, double hbar, double G);
Integrand dbar_eta(const TestFunction& f, double hbar, double G, EtaReading r = EtaReading::imaginary_shift);

// pbar^n u(xbar) with u a Gaussian in xbar.
struct DualClassSymbol {
  int n = 0;
  double center = 0, sigma = 1;
};

// Samples on an (x, p) grid, index i * p.size() + j.
struct PhaseSamples {
  Grid grid;  // a = x, b = p
  std::vector<cplx> values;
  cplx at(std::size_t i, std::size_t j) const { return values[i * grid.b.size() + j]; }
};

// T*(pbar^n u) = int dpbar dxbar e^{-i pbar x} [(D + pbar)^n e^{-i xbar p}] u(xbar) e^{hbar xbar/G}
// with D = (i/hbar)(e^{-hbar xbar/G} - 1) d/dxbar acting on the kernel. The
// pbar integral only converges as a distribution (it produces delta(x) and
// derivatives), so it carries the window e^{-eps pbar^2}. UnsupportedSymbol
// for n > 6 or sigma <= 0. quad.nx/np count xbar/pbar nodes.
struct TstarOptions {
  QuadratureSpec quad;
  double eps = 1e-5;
};
PhaseSamples transform_Tstar(const DualClassSymbol& phi, const Grid& xp, const TstarOptions& opt, double hbar,
                             double G);
// hbar -> 0: D = -(xbar/kappa) d/dxbar and no weight.
PhaseSamples transform_Tstar_classical(const DualClassSymbol& phi, const Grid& xp, const TstarOptions& opt,
                                       cplx inv_kappa);

// Residual relative to the target's sup norm over the grid, for
//   eta_bar: T(dbar_eta f) against T(f) (iG/hbar)(e^{hbar xbar/G} - 1)
//   x_bar:   T(dbar_x f) against i [pbar F + (i/hbar)(e^{-hbar xbar/G} - 1) dF/dxbar] e^{hbar xbar/G}
// drop_reorder leaves out the dF/dxbar term (regression guard).
enum class Intertwiner { eta_bar, x_bar };
struct ResidualOptions {
  EtaReading eta = EtaReading::imaginary_shift;
  bool drop_reorder = false;
};
double intertwiner_residual(const TestFunction& f, Intertwiner which, const QuadratureSpec& quad,
                            const Grid& grid, double hbar, double G, ResidualOptions opt = {});
// Both sides on the grid; pointwise() is |lhs - rhs| / max |rhs|.
struct IntertwinerSamples {
  DualSymbol F;
  std::vector<cplx> lhs, rhs;
  std::vector<double> pointwise() const;
  double residual() const;
};
IntertwinerSamples intertwiner_samples(const TestFunction& f, Intertwiner which, const QuadratureSpec& quad,
                                       const Grid& grid, double hbar, double G, ResidualOptions opt = {});

// S^-1 phi in the classical dual, normal ordered with xbar right:
// (-1)^n sum_k C(n,k) pbar^(n-k) (w |< ^k)(xbar), w(xbar) = u(-xbar),
// w |< = -(xbar/kappa) w'.
cplx antipode_inv_symbol(const DualClassSymbol& phi, double pbar, double xbar, cplx inv_kappa);

struct RoundTripOptions {
  int outer_nx = 64, outer_np = 64;
  TstarOptions inner{QuadratureSpec{256, 400, Rule::gauss_legendre, {}, {}, 0}, 1e-5};
};
struct RoundTripPoint {
  double pbar, xbar;
  cplx value, expected;
  double rel_error;  // |value - expected| / max over the points of |expected|
};
// Nested quadrature of T T* at the given (pbar, xbar) points in the classical
// limit, against (2 pi)^2 S^-1 phi. The pbar window biases the result by a
// factor e^{-eps (pbar + 1/kappa)^2}.
std::vector<RoundTripPoint> roundtrip_classical(const DualClassSymbol& phi,
                                                const std::vector<std::pair<double, double>>& points,
                                                cplx inv_kappa, const RoundTripOptions& opt = {});

}  // namespace hopftwist::fourier

#endif
