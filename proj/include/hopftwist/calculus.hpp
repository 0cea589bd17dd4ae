#ifndef HOPFTWIST_CALCULUS_HPP
#define HOPFTWIST_CALCULUS_HPP

#include <map>
#include <optional>
#include <string>

#include "hopftwist/planck.hpp"

namespace hopftwist {

// The calculus {n,1} (include_eta0) or {n} on the Planck algebra, with right
// invariant basis eta_0..eta_{n-1}; eta_0 is absent for {n}.
struct CalcSpec {
  int n = 2;
  bool include_eta0 = true;
  int dim() const { return include_eta0 ? n : n - 1; }
  int first() const { return include_eta0 ? 0 : 1; }
  bool has(int k) const { return k >= first() && k < n; }
};

enum class Gen { g, p };

// sum_k a_k eta_k, coefficients to the left.
struct GeneralOneForm {
  std::map<int, PlanckElem> coeff;
  void add(int k, const PlanckElem& c);
  bool is_zero() const { return coeff.empty(); }
  GeneralOneForm at_A_zero() const;
  std::string str() const;
  friend bool operator==(const GeneralOneForm&, const GeneralOneForm&) = default;
};

// [a, eta_k] in the Planck calculus.
GeneralOneForm relations(const CalcSpec& spec, Gen a, int k);
// [a, eta_k] in the classical calculus on C(B+).
GeneralOneForm classical_relations(const CalcSpec& spec, Gen a, int k);
// Compares relations(spec, a, k) with the commutator a.eta_k - eta_k.a computed
// by twisting the classical bimodule V (x) C(B+) with chi (h.w = chi(h1 (x) w(-1))
// h2 w(0) and mirror); both sides are evaluated in the classical bimodule.
bool relations_match_twist(const CalcSpec& spec, Gen a, int k);
// omega * a for a generator or g^-1, using relations().
GeneralOneForm right_mul(const CalcSpec& spec, const GeneralOneForm& w, const PlanckElem& a);
// df for x-free f, by the Leibniz rule from dg = g eta_0, dp = g eta_1.
GeneralOneForm d_general(const CalcSpec& spec, const PlanckElem& f);

// Element of the 2D exterior algebra of {2,1}: f0 + a xi + b eta + c xi^eta,
// coefficients to the left of the basis forms.
struct Form {
  PlanckElem f0, xi, eta, xieta;

  static Form function(const PlanckElem& f) { return {f, {}, {}, {}}; }
  static Form one(const PlanckElem& a, const PlanckElem& b) { return {{}, a, b, {}}; }
  static Form two(const PlanckElem& c) { return {{}, {}, {}, c}; }

  bool is_zero() const { return f0.is_zero() && xi.is_zero() && eta.is_zero() && xieta.is_zero(); }
  // Highest degree with a nonzero component, -1 for zero.
  int degree() const;
  Form part(int deg) const;
  Form at_A_zero() const;

  Form& operator+=(const Form& o);
  Form& operator-=(const Form& o);
  friend Form operator+(Form a, const Form& b) { return a += b; }
  friend Form operator-(Form a, const Form& b) { return a -= b; }
  friend Form operator*(const ParamScalar& s, const Form& w);
  friend bool operator==(const Form&, const Form&) = default;

  // "(g^2 p) ξ + (iA g) η"
  std::string str() const;
};

// Graded product. DegreeOverflow when a nonzero product would have degree 3.
Form wedge(const Form& a, const Form& b);
Form d(const Form& w);
// d on functions; same as d(Form::function(f)).
Form d(const PlanckElem& f);

// Right-coefficient form xi*A + eta*B rewritten with left coefficients.
Form from_right_coefficients(const PlanckElem& A, const PlanckElem& B);

enum class Partial {
  xi,          // as printed
  xi_leibniz,  // g d_g f + g d_g(g (f(p+iA) - f)); closes with d
  eta,
  x_right,
  x_bar_left,
  eta_bar_left,    // as printed: shift p by -A, divide by A
  eta_bar_left_i,  // shift p by -iA, divide by iA
  kappa_right_x,
  kappa_right_eta,
  kappa_left_x,
  kappa_left_eta,
};

// Closed-form derivative of a normal-ordered symbol. For the kappa forms the
// optional inv_kappa is 1/kappa (defaults: i/G for the right pair, iA for the
// left pair); kappa_right_* read x, p as the dual coordinates and reject g.
PlanckElem partial(const PlanckElem& f, Partial which,
                   const std::optional<ParamScalar>& inv_kappa = std::nullopt);

// Symbol helpers used by the closed forms: f(x, g, p + c), formal derivative in
// x (g = e^{-x/G} included), g d/dg with x = -G log g, formal d/dp.
PlanckElem shift_p(const PlanckElem& f, const ParamScalar& c);
PlanckElem dx_symbol(const PlanckElem& f);
PlanckElem gdg_symbol(const PlanckElem& f);
PlanckElem dp_symbol(const PlanckElem& f);

// theta = -(eta + eta_bar)/2 and the graded commutator [theta, w], degree <= 1.
Form theta();
Form theta_bracket(const Form& w);

// One-forms in the left-invariant basis {xi, eta_bar = dp - p g^-1 dg}.
struct LeftOneForm {
  PlanckElem xi, eta_bar;
  friend bool operator==(const LeftOneForm&, const LeftOneForm&) = default;
};
LeftOneForm to_left_basis(const Form& w);
Form from_left_basis(const LeftOneForm& w);

// Graded tensor of forms of degree <= 1 in each leg: keys (i, j) with
// 0 = 1, 1 = xi, 2 = eta; values carry the coefficient tensor (left coefficients
// in each leg).
struct FormTensor {
  std::map<std::pair<int, int>, TensorElem> parts;
  void add(int i, int j, const TensorElem& t);
  friend bool operator==(const FormTensor&, const FormTensor&) = default;
};

// The printed sign of the eta (x) 1 term in Delta eta.
enum class EtaSign { derived, printed };
FormTensor form_coproduct(const Form& w, EtaSign sign = EtaSign::derived);
ParamScalar form_counit(const Form& w);
Form form_antipode(const Form& w);
// m(S (x) id) on a FormTensor; with form_coproduct this is the antipode axiom.
Form form_antipode_contract(const FormTensor& t, bool left);

}  // namespace hopftwist

#endif
