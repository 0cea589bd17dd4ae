#include "hopftwist/dynamics.hpp"

#include <cmath>
#include <functional>

#include "hopftwist/errors.hpp"

namespace hopftwist {

namespace {

ParamScalar iA() { return ParamScalar::iA(); }

PlanckElem div_scalar(const PlanckElem& f, const ParamScalar& den) {
  PlanckElem out;
  for (const auto& [m, v] : f.terms()) out.add_term(m, exact_div(v, den));
  return out;
}

PlanckElem real_const(double v) {
  mpq_class q(v);
  return PlanckElem(GaussQ(q));
}

}  // namespace

PlanckElem PoissonData::default_pi() {
  return ParamScalar::G(-1) * (PlanckElem::g(-1) - PlanckElem(1L));
}

void PoissonData::validate() const {
  for (const auto& [m, v] : pi_of_g.terms())
    if (m.k != 0 || m.n != 0)
      throw Error(Errc::InvalidArgument, "pi(g) must not involve x or p");
}

PlanckElem classical_bracket(const PlanckElem& a, const PlanckElem& b) {
  PlanckElem gm1 = PlanckElem::g() - PlanckElem(1L);
  PlanckElem t = commutative_mul(dx_symbol(a), dp_symbol(b)) -
                 commutative_mul(dx_symbol(b), dp_symbol(a));
  return commutative_mul(gm1, t);
}

PlanckElem quantum_bracket(const PlanckElem& a, const PlanckElem& b, const PoissonData& P,
                           XiReading xi) {
  P.validate();
  const Partial X = xi == XiReading::printed ? Partial::xi : Partial::xi_leibniz;
  auto dxi = [&](const PlanckElem& f) { return partial(f, X); };
  auto deta = [](const PlanckElem& f) { return partial(f, Partial::eta); };

  PlanckElem a_xi = dxi(a), a_eta = deta(a), b_xi = dxi(b), b_eta = deta(b);
  PlanckElem s = normal_mul(a_xi, b_eta) - normal_mul(a_eta, b_xi);
  PlanckElem first = a_eta + deta(a_xi) - dxi(a_eta);
  s += iA() * normal_mul(first, b_eta);
  s += (iA() * iA()) * normal_mul(deta(a_eta), b_eta);
  return normal_mul(P.pi_of_g, s);
}

PlanckElem right_coefficient_two_form(const PlanckElem& c) {
  // L(f) = left coefficient of xi^eta f. L = id - iA N with N lowering the
  // p-degree, so f <- c + f - L(f) reaches the fixed point in finitely many steps.
  auto L = [](const PlanckElem& f) { return wedge(Form::two(1L), Form::function(f)).xieta; };
  PlanckElem f = c;
  for (int it = 0; it < 64; ++it) {
    PlanckElem r = c - L(f);
    if (r.is_zero()) return f;
    f += r;
  }
  throw Error(Errc::NotDivisible, "right coefficient iteration did not terminate");
}

PlanckElem pairing_bracket(const PlanckElem& a, const PlanckElem& b, const PoissonData& P) {
  P.validate();
  Form w = wedge(d(a), d(b));
  return normal_mul(P.pi_of_g, right_coefficient_two_form(w.xieta));
}

HamiltonEq hamilton(const PlanckElem& h, HamiltonMode mode, const PoissonData& P, XiReading xi) {
  const PlanckElem X = PlanckElem::x(), Pp = PlanckElem::p();
  switch (mode) {
    case HamiltonMode::poisson:
      return {quantum_bracket(X, h, P, xi), quantum_bracket(Pp, h, P, xi)};
    case HamiltonMode::classical:
      return {classical_bracket(X, h), classical_bracket(Pp, h)};
    case HamiltonMode::commutator: {
      // (i/hbar) c = -c / (iA G)
      const ParamScalar den = iA() * ParamScalar::G();
      auto flow = [&](const PlanckElem& v) {
        PlanckElem c = normal_mul(v, h) - normal_mul(h, v);
        return -div_scalar(c, den);
      };
      return {flow(X), flow(Pp)};
    }
  }
  return {};
}

MotionComparison compare_printed_motion(const ParamScalar& m, const PoissonData& P,
                                        XiReading xi) {
  auto inv2m = (ParamScalar(2L) * m).inverse();
  if (!inv2m) throw Error(Errc::InvalidArgument, "mass must be a nonzero constant");
  PlanckElem h = *inv2m * PlanckElem::p(2);
  PlanckElem gm1 = PlanckElem::g() - PlanckElem(1L);
  auto target = [&](const ParamScalar& s) {
    return *inv2m * normal_mul(gm1, ParamScalar(2L) * PlanckElem::p() + PlanckElem(s));
  };
  MotionComparison out;
  out.ours = hamilton(h, HamiltonMode::poisson, P, xi).xdot;
  out.printed = target(-iA());
  if (out.ours == out.printed)
    out.flag = "match";
  else if (out.ours == target(iA()))
    out.flag = "iA sign flipped";
  else
    out.flag = "differs";
  return out;
}

PlanckElem hamiltonian_symbol(const HamiltonSpec& h) {
  if (!(h.m != 0.0) || !std::isfinite(h.m)) throw Error(Errc::InvalidArgument, "mass must be finite and nonzero");
  mpq_class inv = 1 / (2 * mpq_class(h.m));
  PlanckElem out = PlanckElem(GaussQ(inv)) * PlanckElem::p(2);
  for (size_t k = 0; k < h.V.size(); ++k)
    if (h.V[k] != 0.0) out += real_const(h.V[k]) * PlanckElem::x(static_cast<int>(k));
  return out;
}

std::complex<double> eval_symbol(const PlanckElem& f, std::complex<double> x, std::complex<double> p,
                                 std::complex<double> A_val, double G_val) {
  if (G_val == 0.0) throw Error(Errc::ZeroG, "G = 0");
  const std::complex<double> g = std::exp(-x / G_val);
  std::complex<double> out = 0;
  for (const auto& [m, v] : f.terms())
    out += substitute(v, A_val, G_val) * std::pow(x, m.k) * std::pow(g, m.r) * std::pow(p, m.n);
  return out;
}

std::vector<TrajectoryPoint> integrate(const HamiltonSpec& h, HamiltonMode mode,
                                       std::complex<double> x0, std::complex<double> p0, double dt,
                                       long steps, std::complex<double> A_val, double G_val,
                                       XiReading xi) {
  if (!(dt > 0)) throw Error(Errc::InvalidArgument, "dt must be positive");
  if (steps < 1) throw Error(Errc::InvalidArgument, "steps must be at least 1");
  HamiltonEq eq = hamilton(hamiltonian_symbol(h), mode, {}, xi);
  using C = std::complex<double>;
  auto rhs = [&](C x, C p) {
    return std::pair<C, C>{eval_symbol(eq.xdot, x, p, A_val, G_val),
                           eval_symbol(eq.pdot, x, p, A_val, G_val)};
  };
  std::vector<TrajectoryPoint> out;
  out.reserve(static_cast<size_t>(steps) + 1);
  C x = x0, p = p0;
  out.push_back({0, 0.0, x, p});
  for (long s = 1; s <= steps; ++s) {
    auto [k1x, k1p] = rhs(x, p);
    auto [k2x, k2p] = rhs(x + 0.5 * dt * k1x, p + 0.5 * dt * k1p);
    auto [k3x, k3p] = rhs(x + 0.5 * dt * k2x, p + 0.5 * dt * k2p);
    auto [k4x, k4p] = rhs(x + dt * k3x, p + dt * k3p);
    x += dt / 6 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
    p += dt / 6 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
    if (!std::isfinite(x.real()) || !std::isfinite(x.imag()) || !std::isfinite(p.real()) ||
        !std::isfinite(p.imag()))
      throw Error(Errc::NonFinite, "trajectory left the floating range at step " + std::to_string(s));
    out.push_back({s, s * dt, x, p});
  }
  return out;
}

void write_csv(std::ostream& os, const std::vector<TrajectoryPoint>& traj) {
  os << "step,t,re_x,im_x,re_p,im_p\n";
  os.precision(17);
  for (const auto& pt : traj)
    os << pt.step << ',' << pt.t << ',' << pt.x.real() << ',' << pt.x.imag() << ','
       << pt.p.real() << ',' << pt.p.imag() << '\n';
}

}  // namespace hopftwist
