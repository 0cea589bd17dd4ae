// Acceptance runner: one PASS/FAIL line per criterion.
//   acceptance            all criteria
//   acceptance 3 8        selected criteria
// Exit status 0 iff every selected criterion passed.
#include <CLI11.hpp>
#include <gsl/gsl_errno.h>
#include <gsl/gsl_odeiv2.h>

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>

#include "hopftwist/calculus.hpp"
#include "hopftwist/dynamics.hpp"
#include "hopftwist/errors.hpp"
#include "hopftwist/findim.hpp"
#include "hopftwist/fourier.hpp"
#include "hopftwist/planck.hpp"
#include "random_symbols.hpp"

using namespace hopftwist;
using hopftwist::testing::random_symbol;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  double limit_s = 0;  // 0: no runtime bound
};

std::string frac(int k, int n) { return std::to_string(k) + "/" + std::to_string(n); }

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", v);
  return buf;
}

const ParamScalar iA = ParamScalar::iA();
const PlanckElem P = PlanckElem::p(), Gg = PlanckElem::g(), ONE(1L);

Form fn(const PlanckElem& f) { return Form::function(f); }

// ---- 1 ----
Outcome cocycle_theorem(unsigned) {
  Outcome o{true, {}, 10};
  CocycleCheck c = check_planck_cocycle(4, 3);
  int pairs = 0, equal = 0;
  for (int n = 0; n <= 3; ++n)
    for (int m = 0; m <= 3; ++m)
      for (int r = -2; r <= 2; ++r)
        for (int s = -2; s <= 2; ++s) {
          const PlanckElem a = PlanckElem::monomial({0, r, n}), b = PlanckElem::monomial({0, s, m});
          ++pairs;
          equal += bullet_product(a, b) == normal_mul(a, b);
        }
  o.pass = c.ok() && equal == pairs;
  o.detail = "cocycle on " + std::to_string(c.triples) + " triples " + (c.ok() ? "ok" : c.first_failure) +
             "; bullet = normal on " + frac(equal, pairs);
  return o;
}

// ---- 2 ----
Outcome calculus_relations(unsigned) {
  Outcome o;
  int checked = 0, twist_ok = 0, limit_ok = 0;
  for (int n = 2; n <= 4; ++n)
    for (bool e0 : {true, false}) {
      const CalcSpec s{n, e0};
      for (int k = s.first(); k < n; ++k)
        for (Gen a : {Gen::g, Gen::p}) {
          ++checked;
          twist_ok += relations_match_twist(s, a, k);
          limit_ok += relations(s, a, k).at_A_zero() == classical_relations(s, a, k);
        }
    }
  // the displayed {2,1} and {3,1} cases
  GeneralOneForm g1, p1, p31;
  g1.add(0, iA * Gg);
  p1.add(1, iA * Gg);
  p31.add(1, iA * Gg);
  p31.add(2, Gg);
  const CalcSpec s21{2, true}, s31{3, true};
  const bool displayed = relations(s21, Gen::g, 1) == g1 && relations(s21, Gen::p, 1) == p1 &&
                         relations(s31, Gen::p, 1) == p31 && relations(s21, Gen::g, 0).is_zero() &&
                         relations(s21, Gen::p, 0).is_zero();
  o.pass = twist_ok == checked && limit_ok == checked && displayed;
  o.detail = "twisted-bimodule oracle " + frac(twist_ok, checked) + ", A=0 limit " + frac(limit_ok, checked) +
             ", displayed cases " + (displayed ? "ok" : "differ");
  return o;
}

// ---- 3 ----
Outcome exterior_algebra(unsigned seed) {
  Outcome o{true, {}, 5};
  const Form XI = Form::one(ONE, {}), ETA = Form::one({}, ONE);
  const bool rel = wedge(ETA, ETA) == iA * wedge(XI, ETA) && d(XI).is_zero() && d(ETA) == wedge(ETA, XI);
  std::mt19937 rng(seed);
  int d2 = 0, leib = 0;
  for (int it = 0; it < 100; ++it) {
    const PlanckElem a = random_symbol(rng, true), b = random_symbol(rng, true);
    d2 += d(d(fn(a))).is_zero() && d(d(b)).is_zero();
    leib += d(a * b) == wedge(d(a), fn(b)) + wedge(fn(a), d(b));
  }
  o.pass = rel && d2 == 100 && leib == 100;
  o.detail = std::string("eta^eta, d xi, d eta ") + (rel ? "ok" : "differ") + "; d^2 = 0 " + frac(d2, 100) +
             ", Leibniz " + frac(leib, 100);
  return o;
}

// ---- 4 ----
Outcome theta_generator(unsigned seed) {
  Outcome o;
  std::mt19937 rng(seed + 1);
  int ok = 0;
  for (int it = 0; it < 100; ++it) {
    const PlanckElem a = random_symbol(rng, true);
    ok += theta_bracket(fn(a)) == iA * d(a);
  }
  o.pass = ok == 100;
  o.detail = "[theta, a] = iA da on " + frac(ok, 100);
  return o;
}

// ---- 5 ----
// df = xi d_xi f + eta d_eta f with the printed right derivatives (coefficients
// to the right of the basis forms). The printed d_xi is not Leibniz-consistent,
// so this fails; the detail reports the consistent reading and both readings
// of the left eta derivative.
Outcome derivative_duality(unsigned seed) {
  Outcome o;
  std::mt19937 rng(seed + 2);
  int printed = 0, consistent = 0, left_i = 0, left_printed = 0;
  auto left_df = [](const PlanckElem& f, Partial eta_kind) {
    return from_left_basis({-ParamScalar::G() * partial(f, Partial::x_bar_left), partial(f, eta_kind)});
  };
  for (int it = 0; it < 100; ++it) {
    const PlanckElem f = random_symbol(rng, true);
    const Form df = d(f);
    const PlanckElem B = partial(f, Partial::eta);
    printed += from_right_coefficients(partial(f, Partial::xi), B) == df;
    consistent += from_right_coefficients(partial(f, Partial::xi_leibniz), B) == df;
    left_i += left_df(f, Partial::eta_bar_left_i) == df;
    left_printed += left_df(f, Partial::eta_bar_left) == df;
  }
  o.pass = printed == 100;
  o.detail = "printed d_xi " + frac(printed, 100) + ", Leibniz-consistent d_xi " + frac(consistent, 100) +
             "; left eta derivative with iA shift " + frac(left_i, 100) + ", with A shift " + frac(left_printed, 100);
  return o;
}

// ---- 6 ----
Outcome brackets(unsigned seed) {
  Outcome o;
  std::mt19937 rng(seed + 3);
  int pair_ok = 0, printed_xi = 0, limit_ok = 0;
  for (int it = 0; it < 50; ++it) {
    const PlanckElem a = random_symbol(rng, true), b = random_symbol(rng, true);
    const PlanckElem pb = pairing_bracket(a, b);
    const PlanckElem q = quantum_bracket(a, b);
    pair_ok += q == pb;
    printed_xi += quantum_bracket(a, b, {}, XiReading::printed) == pb;
    limit_ok += q.at_A_zero() == classical_bracket(a.at_A_zero(), b.at_A_zero());
  }
  const ParamScalar half(GaussQ(mpq_class(1, 2)));
  const PlanckElem h = half * PlanckElem::p(2);
  const bool commutator =
      hamilton(h, HamiltonMode::commutator).xdot == half * normal_mul(Gg - ONE, ParamScalar(2L) * P - iA * Gg);
  const MotionComparison mc = compare_printed_motion(1L);
  o.pass = pair_ok == 50 && limit_ok == 50 && commutator;
  o.detail = "bracket = pairing " + frac(pair_ok, 50) + " (printed d_xi " + frac(printed_xi, 50) + "), A=0 " +
             frac(limit_ok, 50) + ", commutator motion " + (commutator ? "matches" : "differs") +
             ", poisson motion: " + mc.flag;
  return o;
}

// ---- 7 ----
Outcome findim_suite(unsigned) {
  Outcome o{true, {}, 60};
  std::ostringstream os;
  int checks = 0, passed = 0;
  for (const auto& e : findim_corpus()) {
    for (const auto& r : twist_suite(e.hopf, e.cocycle)) {
      ++checks;
      passed += r.ok;
      if (!r.ok) os << " " << e.name << ":" << r.name;
    }
  }
  o.pass = passed == checks;
  o.detail = "corpus checks " + frac(passed, checks) + os.str();
  return o;
}

// ---- 8 ----
struct FlowParams {
  double xbar, hbar, G;
};

int flow_rhs(double, const double y[], double dydt[], void* params) {
  const auto* q = static_cast<const FlowParams*>(params);
  dydt[0] = q->xbar * q->hbar * std::expm1(-y[0] / q->G);
  return GSL_SUCCESS;
}

double flow_ode(double x, double xbar, double hbar, double G) {
  FlowParams q{xbar, hbar, G};
  gsl_odeiv2_system sys{flow_rhs, nullptr, 1, &q};
  gsl_odeiv2_driver* drv = gsl_odeiv2_driver_alloc_y_new(&sys, gsl_odeiv2_step_rk8pd, 1e-4, 1e-14, 1e-14);
  double t = 0, y[1] = {x};
  gsl_odeiv2_driver_apply(drv, &t, 1.0, y);
  gsl_odeiv2_driver_free(drv);
  return y[0];
}

Outcome fourier_numerics(unsigned) {
  Outcome o{true, {}, 120};
  double flow_err = 0;
  for (double x : {-0.5, 0.3, 1.0, 2.0, 3.5})
    for (double xb : {-0.4, 0.2, 0.7, 1.5})
      flow_err = std::max(flow_err, std::abs(fourier::flow(x, xb, 1, 1) - flow_ode(x, xb, 1, 1)));
  fourier::Grid g;
  for (int i = 0; i < 5; ++i) {
    g.a.push_back(-2 + i);
    g.b.push_back(-2 + i);
  }
  fourier::QuadratureSpec q;
  q.nx = q.np = 200;
  const fourier::TestFunction f;
  const double eta = fourier::intertwiner_residual(f, fourier::Intertwiner::eta_bar, q, g, 1, 1);
  const double xr = fourier::intertwiner_residual(f, fourier::Intertwiner::x_bar, q, g, 1, 1);
  const std::vector<std::pair<double, double>> pts{{-1, 0.5}, {0, 0}, {0.5, -0.7}, {1, 1}, {2, -0.2}};
  double rt = 0;
  for (const auto& p : fourier::roundtrip_classical({0, 0, 1}, pts, 1.0)) rt = std::max(rt, p.rel_error);
  o.pass = flow_err < 1e-10 && eta < 1e-6 && xr < 1e-5 && rt < 1e-3;
  o.detail = "flow vs ODE " + sci(flow_err) + ", eta_bar " + sci(eta) + ", x_bar " + sci(xr) + ", round trip " +
             sci(rt);
  return o;
}

struct Criterion {
  int id;
  const char* title;
  std::function<Outcome(unsigned)> run;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  std::vector<int> only;
  unsigned seed = 101;
  app.add_option("criteria", only, "criterion numbers (default: all)")->check(CLI::Range(1, 8));
  app.add_option("--seed", seed, "seed for the random symbols")->capture_default_str();
  CLI11_PARSE(app, argc, argv);

  const std::vector<Criterion> all{
      {1, "cocycle theorem", cocycle_theorem},
      {2, "calculus relations", calculus_relations},
      {3, "exterior algebra", exterior_algebra},
      {4, "theta generator", theta_generator},
      {5, "derivative duality", derivative_duality},
      {6, "brackets", brackets},
      {7, "finite-dimensional suite", findim_suite},
      {8, "Fourier numerics", fourier_numerics},
  };
  bool ok = true;
  for (const auto& c : all) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run(seed);
    } catch (const Error& e) {
      out = {false, std::string("threw ") + e.what(), 0};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (out.limit_s > 0 && secs >= out.limit_s) {
      out.pass = false;
      out.detail += "; over the " + std::to_string(int(out.limit_s)) + " s limit";
    }
    std::printf("criterion %d: %s  %s (%.2f s)  %s\n", c.id, out.pass ? "PASS" : "FAIL", c.title, secs,
                out.detail.c_str());
    std::fflush(stdout);
    ok = ok && out.pass;
  }
  return ok ? 0 : 1;
}
