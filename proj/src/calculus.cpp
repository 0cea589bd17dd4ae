#include "hopftwist/calculus.hpp"

#include <vector>

#include "hopftwist/errors.hpp"

namespace hopftwist {

namespace {

const ParamScalar& iA() {
  static const ParamScalar v = ParamScalar::iA();
  return v;
}

long binom(int n, int k) {
  long r = 1;
  for (int j = 1; j <= k; ++j) r = r * (n - k + j) / j;
  return r;
}

PlanckElem mono(int k, int r, int n, const ParamScalar& c = ParamScalar(1L)) {
  return PlanckElem::monomial({k, r, n}, c);
}

PlanckElem half() { return PlanckElem(GaussQ(mpq_class(1, 2))); }

}  // namespace

// ---- symbol helpers ----

PlanckElem shift_p(const PlanckElem& f, const ParamScalar& c) {
  PlanckElem out;
  for (const auto& [m, v] : f.terms())
    for (int j = 0; j <= m.n; ++j)
      out.add_term({m.k, m.r, j}, ParamScalar(binom(m.n, j)) * c.pow(m.n - j) * v);
  return out;
}

PlanckElem dx_symbol(const PlanckElem& f) {
  const ParamScalar Ginv = ParamScalar::G(-1);
  PlanckElem out;
  for (const auto& [m, v] : f.terms()) {
    if (m.k > 0) out.add_term({m.k - 1, m.r, m.n}, ParamScalar(static_cast<long>(m.k)) * v);
    if (m.r != 0) out.add_term(m, -ParamScalar(static_cast<long>(m.r)) * Ginv * v);
  }
  return out;
}

PlanckElem gdg_symbol(const PlanckElem& f) {
  // g d/dg = -G d/dx
  return -ParamScalar::G() * dx_symbol(f);
}

PlanckElem dp_symbol(const PlanckElem& f) {
  PlanckElem out;
  for (const auto& [m, v] : f.terms())
    if (m.n > 0) out.add_term({m.k, m.r, m.n - 1}, ParamScalar(static_cast<long>(m.n)) * v);
  return out;
}

namespace {

PlanckElem div_scalar(const PlanckElem& f, const ParamScalar& den) {
  PlanckElem out;
  for (const auto& [m, v] : f.terms()) out.add_term(m, exact_div(v, den));
  return out;
}

}  // namespace

// ---- general {n,1} family ----

void GeneralOneForm::add(int k, const PlanckElem& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = coeff.try_emplace(k, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) coeff.erase(it);
  }
}

GeneralOneForm GeneralOneForm::at_A_zero() const {
  GeneralOneForm r;
  for (const auto& [k, c] : coeff) r.add(k, c.at_A_zero());
  return r;
}

std::string GeneralOneForm::str() const {
  if (coeff.empty()) return "0";
  std::string s;
  for (const auto& [k, c] : coeff) {
    if (!s.empty()) s += " + ";
    s += "(" + c.pretty() + ") η" + std::to_string(k);
  }
  return s;
}

namespace {

void check_index(const CalcSpec& spec, int k) {
  if (spec.n < 1 || (spec.include_eta0 && spec.n < 2))
    throw Error(Errc::InvalidArgument, "calculus {n,1} needs n >= 2, {n} needs n >= 1");
  if (!spec.has(k))
    throw Error(Errc::IndexOutOfRange, "eta_" + std::to_string(k) + " not in the basis");
}

}  // namespace

GeneralOneForm relations(const CalcSpec& spec, Gen a, int k) {
  check_index(spec, k);
  GeneralOneForm w;
  const PlanckElem g = PlanckElem::g();
  if (a == Gen::g) {
    if (k == 1 && spec.include_eta0) w.add(0, iA() * g);
    return w;
  }
  w.add(k, ParamScalar(static_cast<long>(k)) * iA() * g);
  if (k > 0 && k < spec.n - 1) w.add(k + 1, g);
  return w;
}

GeneralOneForm classical_relations(const CalcSpec& spec, Gen a, int k) {
  check_index(spec, k);
  GeneralOneForm w;
  if (a == Gen::p && k > 0 && k < spec.n - 1) w.add(k + 1, PlanckElem::g());
  return w;
}

GeneralOneForm right_mul(const CalcSpec& spec, const GeneralOneForm& w, const PlanckElem& a) {
  GeneralOneForm out;
  if (a.terms().size() != 1) throw Error(Errc::InvalidArgument, "right_mul by g, p or g^-1 only");
  const auto& [m, c] = *a.terms().begin();
  auto sub = [&](const GeneralOneForm& lhs, const PlanckElem& left, Gen gen) {
    // left * [gen, eta_k]
    for (const auto& [k, v] : lhs.coeff)
      for (const auto& [j, r] : relations(spec, gen, k).coeff) out.add(j, -normal_mul(v * left, r));
  };
  if (m == Mono{0, 1, 0}) {
    for (const auto& [k, v] : w.coeff) out.add(k, v * PlanckElem::g());
    sub(w, PlanckElem(1L), Gen::g);
  } else if (m == Mono{0, 0, 1}) {
    for (const auto& [k, v] : w.coeff) out.add(k, v * PlanckElem::p());
    sub(w, PlanckElem(1L), Gen::p);
  } else if (m == Mono{0, -1, 0}) {
    // eta_k g^-1 = g^-1 eta_k + g^-1 [g, eta_k] g^-1
    const PlanckElem gi = PlanckElem::g(-1);
    for (const auto& [k, v] : w.coeff) {
      out.add(k, v * gi);
      GeneralOneForm rel = relations(spec, Gen::g, k);
      if (rel.is_zero()) continue;
      GeneralOneForm tail = right_mul(spec, rel, gi);
      for (const auto& [j, t] : tail.coeff) out.add(j, v * gi * t);
    }
  } else {
    throw Error(Errc::InvalidArgument, "right_mul by g, p or g^-1 only");
  }
  GeneralOneForm scaled;
  for (const auto& [k, v] : out.coeff) scaled.add(k, c * v);
  return scaled;
}

GeneralOneForm d_general(const CalcSpec& spec, const PlanckElem& f) {
  if (f.has_x()) throw Error(Errc::UnsupportedGenerator, "d_general is defined on x-free symbols");
  check_index(spec, 1);
  const PlanckElem P = PlanckElem::p();
  std::vector<GeneralOneForm> dp{GeneralOneForm{}};  // d(p^n)
  GeneralOneForm out;
  for (const auto& [m, c] : f.terms()) {
    while (static_cast<int>(dp.size()) <= m.n) {
      GeneralOneForm next = right_mul(spec, dp.back(), P);
      next.add(1, PlanckElem::p(static_cast<int>(dp.size()) - 1) * PlanckElem::g());
      dp.push_back(next);
    }
    PlanckElem gr = mono(0, m.r, 0, c);
    if (m.r != 0 && spec.include_eta0) {
      GeneralOneForm t;
      t.add(0, ParamScalar(static_cast<long>(m.r)) * gr);
      for (int j = 0; j < m.n; ++j) t = right_mul(spec, t, P);
      for (const auto& [k, v] : t.coeff) out.add(k, v);
    }
    for (const auto& [k, v] : dp[m.n].coeff) out.add(k, gr * v);
  }
  return out;
}

namespace {

// Classical bimodule V (x) C(B+), stored as eta_j (x) f_j with f_j a C(B+) vector.
using Classical = std::map<int, PlanckElem>;

void cl_add(Classical& w, int j, const PlanckElem& f) {
  if (f.is_zero()) return;
  auto [it, fresh] = w.try_emplace(j, f);
  if (!fresh) {
    it->second += f;
    if (it->second.is_zero()) w.erase(it);
  }
}

// p^n g^r |> eta_j in the classical crossed module; -1 for zero.
int cl_act(const CalcSpec& spec, const Mono& m, int j) {
  for (int s = 0; s < m.n; ++s) {
    if (j <= 0 || j >= spec.n - 1) return -1;
    ++j;
  }
  return j;
}

std::vector<std::pair<Mono, int>> cl_coaction(const CalcSpec& spec, int k) {
  std::vector<std::pair<Mono, int>> out{{Mono{0, -k, 0}, k}};
  if (k == 1 && spec.include_eta0) out.push_back({Mono{0, -1, 1}, 0});
  return out;
}

// h . (eta_j (x) 1) = h1 |> eta_j (x) h2
Classical cl_left(const CalcSpec& spec, const Mono& h, int j) {
  Classical out;
  TensorElem dh = coproduct(PlanckElem::monomial(h));
  for (const auto& [ab, w] : dh.terms()) {
    int t = cl_act(spec, ab.first, j);
    if (t >= 0) cl_add(out, t, PlanckElem::monomial(ab.second, w));
  }
  return out;
}

Classical tw_left(const CalcSpec& spec, const PlanckElem& h, int k) {
  Classical out;
  TensorElem dh = coproduct(h);
  for (const auto& [ab, w] : dh.terms())
    for (const auto& [c, j] : cl_coaction(spec, k)) {
      ParamScalar x = chi_mono(ab.first, c, false);
      if (x.is_zero()) continue;
      for (const auto& [i, f] : cl_left(spec, ab.second, j)) cl_add(out, i, (w * x) * f);
    }
  return out;
}

Classical tw_right(const CalcSpec& spec, int k, const PlanckElem& h) {
  Classical out;
  TensorElem dh = coproduct(h);
  for (const auto& [ab, w] : dh.terms())
    for (const auto& [c, j] : cl_coaction(spec, k)) {
      ParamScalar x = chi_mono(c, ab.first, false);
      if (!x.is_zero()) cl_add(out, j, PlanckElem::monomial(ab.second, w * x));
    }
  return out;
}

}  // namespace

bool relations_match_twist(const CalcSpec& spec, Gen a, int k) {
  check_index(spec, k);
  PlanckElem h = a == Gen::g ? PlanckElem::g() : PlanckElem::p();
  Classical lhs = tw_left(spec, h, k);
  for (const auto& [j, f] : tw_right(spec, k, h)) cl_add(lhs, j, -f);
  Classical rhs;
  for (const auto& [j, c] : relations(spec, a, k).coeff)
    for (const auto& [i, f] : tw_left(spec, cbp_from_planck(c), j)) cl_add(rhs, i, f);
  return lhs == rhs;
}

// ---- 2D exterior algebra ----

int Form::degree() const {
  if (!xieta.is_zero()) return 2;
  if (!xi.is_zero() || !eta.is_zero()) return 1;
  return f0.is_zero() ? -1 : 0;
}

Form Form::part(int deg) const {
  switch (deg) {
    case 0: return function(f0);
    case 1: return one(xi, eta);
    case 2: return two(xieta);
    default: return {};
  }
}

Form Form::at_A_zero() const { return {f0.at_A_zero(), xi.at_A_zero(), eta.at_A_zero(), xieta.at_A_zero()}; }

Form& Form::operator+=(const Form& o) {
  f0 += o.f0;
  xi += o.xi;
  eta += o.eta;
  xieta += o.xieta;
  return *this;
}

Form& Form::operator-=(const Form& o) {
  f0 -= o.f0;
  xi -= o.xi;
  eta -= o.eta;
  xieta -= o.xieta;
  return *this;
}

Form operator*(const ParamScalar& s, const Form& w) {
  return {s * w.f0, s * w.xi, s * w.eta, s * w.xieta};
}

std::string Form::str() const {
  std::string s;
  auto put = [&](const PlanckElem& c, const char* basis) {
    if (c.is_zero()) return;
    if (!s.empty()) s += " + ";
    s += *basis ? "(" + c.pretty() + ") " + basis : c.pretty();
  };
  put(f0, "");
  put(xi, "ξ");
  put(eta, "η");
  put(xieta, "ξ∧η");
  return s.empty() ? "0" : s;
}

Form d(const PlanckElem& f) {
  // d(p^n) = c_n eta with c_1 = g, c_n = c_{n-1} p - iA c_{n-1} g + p^{n-1} g.
  static thread_local std::vector<PlanckElem> c{PlanckElem(), PlanckElem::g()};
  const PlanckElem P = PlanckElem::p(), Gg = PlanckElem::g();
  const ParamScalar G = ParamScalar::G();
  Form out;
  for (const auto& [m, v] : f.terms()) {
    while (static_cast<int>(c.size()) <= m.n) {
      const PlanckElem& b = c.back();
      c.push_back(b * P - iA() * (b * Gg) + PlanckElem::p(static_cast<int>(c.size()) - 1) * Gg);
    }
    // d(x^k g^r) = (r x^k g^r - G k x^(k-1) g^r) xi, and xi commutes with everything.
    out.xi.add_term(m, ParamScalar(static_cast<long>(m.r)) * v);
    if (m.k > 0) out.xi.add_term({m.k - 1, m.r, m.n}, -G * ParamScalar(static_cast<long>(m.k)) * v);
    out.eta += mono(m.k, m.r, 0, v) * c[m.n];
  }
  return out;
}

namespace {

// omega * b for omega of degree 1 or 2 (left coefficients).
Form right_mul_form(const Form& w, const PlanckElem& b) {
  Form out;
  out.f0 = w.f0 * b;
  if (!w.xi.is_zero() || !w.eta.is_zero() || !w.xieta.is_zero()) {
    Form db = d(b);
    // (c eta) b = c b eta - iA c db
    out.xi = w.xi * b - iA() * (w.eta * db.xi);
    out.eta = w.eta * b - iA() * (w.eta * db.eta);
    // (f xi^eta) b = f (b - iA (db)_eta) xi^eta
    out.xieta = w.xieta * (b - iA() * db.eta);
  }
  return out;
}

Form left_mul_form(const PlanckElem& a, const Form& w) {
  return {a * w.f0, a * w.xi, a * w.eta, a * w.xieta};
}

// (a xi + b eta) ^ (c xi + e eta)
PlanckElem wedge11(const Form& u, const Form& v) {
  PlanckElem out = u.xi * v.eta;
  if (!u.eta.is_zero()) {
    Form dc = d(v.xi), de = d(v.eta);
    out -= u.eta * (v.xi - iA() * dc.eta);
    out += u.eta * (iA() * v.eta - iA() * de.xi - iA() * iA() * de.eta);
  }
  return out;
}

}  // namespace

Form wedge(const Form& a, const Form& b) {
  Form a1 = a.part(1), b1 = b.part(1);
  bool a1z = a1.is_zero(), b1z = b1.is_zero();
  if ((!a1z && !b.xieta.is_zero()) || (!a.xieta.is_zero() && !b1z) ||
      (!a.xieta.is_zero() && !b.xieta.is_zero()))
    throw Error(Errc::DegreeOverflow, "product of degree 3 in a 2-dimensional calculus");
  Form out;
  out.f0 = a.f0 * b.f0;
  out += left_mul_form(a.f0, b.part(1) + b.part(2));
  if (!b.f0.is_zero()) out += right_mul_form(a.part(1) + a.part(2), b.f0);
  if (!a1z && !b1z) out.xieta += wedge11(a1, b1);
  return out;
}

Form d(const Form& w) {
  Form out = d(w.f0);
  Form da = d(w.xi), db = d(w.eta);
  // d(a xi + b eta) = da^xi + db^eta + b deta, deta = -xi^eta
  out.xieta = -da.eta + db.xi + iA() * db.eta - w.eta;
  return out;
}

Form from_right_coefficients(const PlanckElem& A, const PlanckElem& B) {
  // eta B = B eta - iA dB
  Form dB = d(B);
  return Form::one(A - iA() * dB.xi, B - iA() * dB.eta);
}

PlanckElem partial(const PlanckElem& f, Partial which, const std::optional<ParamScalar>& inv_kappa) {
  const PlanckElem g = PlanckElem::g();
  const ParamScalar G = ParamScalar::G();
  switch (which) {
    case Partial::xi: {
      PlanckElem s = shift_p(f, iA());
      return gdg_symbol(s) + commutative_mul(g, s - f);
    }
    case Partial::xi_leibniz:
      return gdg_symbol(f) + gdg_symbol(commutative_mul(g, shift_p(f, iA()) - f));
    case Partial::eta:
      return commutative_mul(g, div_scalar(shift_p(f, iA()) - f, iA()));
    case Partial::x_right: {
      PlanckElem s = shift_p(f, iA());
      return dx_symbol(s) - ParamScalar::G(-1) * commutative_mul(g, s - f);
    }
    case Partial::x_bar_left:
      return dx_symbol(f) +
             div_scalar(commutative_mul(PlanckElem::p(), shift_p(f, -iA()) - f), iA() * G);
    case Partial::eta_bar_left:
      return -div_scalar(shift_p(f, -ParamScalar::A()) - f, ParamScalar::A());
    case Partial::eta_bar_left_i:
      return -div_scalar(shift_p(f, -iA()) - f, iA());
    case Partial::kappa_right_x:
    case Partial::kappa_right_eta:
    case Partial::kappa_left_x:
    case Partial::kappa_left_eta: {
      bool right = which == Partial::kappa_right_x || which == Partial::kappa_right_eta;
      if (right)
        for (const auto& [m, v] : f.terms())
          if (m.r != 0) throw Error(Errc::UnsupportedGenerator, "dual-coordinate symbols carry no g");
      if (which == Partial::kappa_right_x || which == Partial::kappa_left_x) return dx_symbol(f);
      ParamScalar ik = inv_kappa ? *inv_kappa
                       : right   ? ParamScalar::monomial(GaussQ::i(), 0, -1)
                                 : iA();
      // -kappa (f(p - 1/kappa) - f)
      return -div_scalar(shift_p(f, -ik) - f, ik);
    }
  }
  return {};
}

// ---- theta ----

Form theta() {
  // eta_bar = g eta - p xi, so theta = (p/2) xi - ((1+g)/2) eta
  return Form::one(half() * PlanckElem::p(), -(half() * (PlanckElem(1L) + PlanckElem::g())));
}

Form theta_bracket(const Form& w) {
  const Form t = theta();
  Form out;
  Form w0 = w.part(0), w1 = w.part(1);
  out += wedge(t, w0) - wedge(w0, t);
  out += wedge(t, w1) + wedge(w1, t);
  // degree-2 input: the bracket lands in degree 3, which vanishes.
  return out;
}

// ---- left basis ----

LeftOneForm to_left_basis(const Form& w) {
  const PlanckElem gi = PlanckElem::g(-1);
  return {w.xi + w.eta * gi * PlanckElem::p(), w.eta * gi};
}

Form from_left_basis(const LeftOneForm& w) {
  return Form::one(w.xi - w.eta_bar * PlanckElem::p(), w.eta_bar * PlanckElem::g());
}

// ---- graded Hopf structure ----

void FormTensor::add(int i, int j, const TensorElem& t) {
  TensorElem& slot = parts[{i, j}];
  slot += t;
  if (slot.is_zero()) parts.erase({i, j});
}

FormTensor form_coproduct(const Form& w, EtaSign sign) {
  if (!w.xieta.is_zero()) throw Error(Errc::DegreeOverflow, "form coproduct implemented for degree <= 1");
  auto mul = [](const PlanckElem& a, const PlanckElem& b) { return normal_mul(a, b); };
  FormTensor out;
  if (!w.f0.is_zero()) out.add(0, 0, planck_coproduct(w.f0));
  if (!w.xi.is_zero()) {
    TensorElem da = planck_coproduct(w.xi);
    out.add(1, 0, da);
    out.add(0, 1, da);
  }
  if (!w.eta.is_zero()) {
    TensorElem db = planck_coproduct(w.eta);
    const PlanckElem gi = PlanckElem::g(-1);
    out.add(0, 2, tensor_mul(db, tensor(gi, PlanckElem(1L)), mul));
    out.add(0, 1, tensor_mul(db, tensor(gi * PlanckElem::p(), PlanckElem(1L)), mul));
    TensorElem e = sign == EtaSign::derived ? db : TensorElem() - db;
    out.add(2, 0, e);
  }
  return out;
}

ParamScalar form_counit(const Form& w) { return planck_counit(w.f0); }

Form form_antipode(const Form& w) {
  if (!w.xieta.is_zero()) throw Error(Errc::DegreeOverflow, "form antipode implemented for degree <= 1");
  Form out = Form::function(planck_antipode(w.f0));
  if (!w.xi.is_zero()) out.xi -= planck_antipode(w.xi);
  if (!w.eta.is_zero()) out += right_mul_form(Form::one(PlanckElem::p(), -PlanckElem::g()), planck_antipode(w.eta));
  return out;
}

Form form_antipode_contract(const FormTensor& t, bool left) {
  auto basis = [](int i, const PlanckElem& c) {
    return i == 0 ? Form::function(c) : i == 1 ? Form::one(c, {}) : Form::one({}, c);
  };
  Form out;
  for (const auto& [ij, te] : t.parts)
    for (const auto& [mm, c] : te.terms()) {
      Form u = basis(ij.first, PlanckElem::monomial(mm.first, c));
      Form v = basis(ij.second, PlanckElem::monomial(mm.second));
      out += left ? wedge(form_antipode(u), v) : wedge(u, form_antipode(v));
    }
  return out;
}

}  // namespace hopftwist
