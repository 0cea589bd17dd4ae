#include "doctest.h"
#include "hopftwist/calculus.hpp"
#include "hopftwist/errors.hpp"
#include "random_symbols.hpp"

using namespace hopftwist;
using hopftwist::testing::random_symbol;

namespace {

const PlanckElem P = PlanckElem::p();
const PlanckElem Gg = PlanckElem::g();
const ParamScalar iA = ParamScalar::iA();
const Form XI = Form::one(PlanckElem(1L), {});
const Form ETA = Form::one({}, PlanckElem(1L));

Form fn(const PlanckElem& f) { return Form::function(f); }

GeneralOneForm one_term(int k, const PlanckElem& c) {
  GeneralOneForm w;
  w.add(k, c);
  return w;
}

Form random_one_form(std::mt19937& rng) {
  return Form::one(random_symbol(rng, true, 2, 2), random_symbol(rng, true, 2, 2));
}

}  // namespace

TEST_CASE("calculus relations, displayed cases") {
  CalcSpec s21{2, true}, s31{3, true};
  CHECK(relations(s21, Gen::g, 1) == one_term(0, iA * Gg));
  CHECK(relations(s21, Gen::p, 1) == one_term(1, iA * Gg));
  GeneralOneForm want = one_term(1, iA * Gg);
  want.add(2, Gg);
  CHECK(relations(s31, Gen::p, 1) == want);
  CHECK(relations(s21, Gen::g, 0).is_zero());
  CHECK(relations(s21, Gen::p, 0).is_zero());
  CHECK_THROWS_AS(relations(s21, Gen::p, 2), Error);
  CHECK_THROWS_AS(relations(CalcSpec{3, false}, Gen::p, 0), Error);
  try {
    relations(s21, Gen::g, 5);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::IndexOutOfRange);
  }
}

TEST_CASE("calculus relations agree with the twisted classical bimodule") {
  for (int n = 1; n <= 5; ++n)
    for (bool e0 : {true, false}) {
      if (e0 && n < 2) continue;
      CalcSpec s{n, e0};
      for (int k = s.first(); k < n; ++k)
        for (Gen a : {Gen::g, Gen::p}) {
          CAPTURE(n);
          CAPTURE(e0);
          CAPTURE(k);
          CHECK(relations_match_twist(s, a, k));
          CHECK(relations(s, a, k).at_A_zero() == classical_relations(s, a, k));
        }
    }
}

TEST_CASE("general family d agrees with the 2D exterior algebra") {
  std::mt19937 rng(31);
  CalcSpec s{2, true};
  for (int it = 0; it < 30; ++it) {
    PlanckElem f = random_symbol(rng, false);
    GeneralOneForm w = d_general(s, f);
    Form df = d(f);
    GeneralOneForm want;
    want.add(0, df.xi);
    want.add(1, df.eta);
    CHECK(w == want);
  }
  // {3,1}: d p^2 by Leibniz matches dp.p + p.dp built from right_mul
  CalcSpec s3{3, true};
  GeneralOneForm dp = d_general(s3, P);
  GeneralOneForm lhs = d_general(s3, PlanckElem::p(2));
  GeneralOneForm rhs = right_mul(s3, dp, P);
  for (const auto& [k, c] : dp.coeff) rhs.add(k, P * c);
  CHECK(lhs == rhs);
}

TEST_CASE("d on functions, displayed values") {
  CHECK(d(Gg) == Form::one(Gg, {}));
  CHECK(d(P) == Form::one({}, Gg));
  // d(p^2) = (dp)(2p + iA)
  CHECK(d(PlanckElem::p(2)) == wedge(d(P), fn(ParamScalar(2L) * P + PlanckElem(iA))));
  // x = -G log g
  CHECK(d(PlanckElem::x()) == Form::one(PlanckElem(-ParamScalar::G()), {}));
  PlanckElem xgp = PlanckElem::monomial({1, 1, 1});
  CHECK(d(d(fn(xgp))).is_zero());
  CHECK(d(PlanckElem(7L)).is_zero());
}

TEST_CASE("two-form relations") {
  CHECK(wedge(ETA, ETA) == Form::two(PlanckElem(iA)));
  CHECK(wedge(XI, XI).is_zero());
  CHECK(wedge(ETA, XI) == Form::two(PlanckElem(-1L)));
  CHECK(wedge(XI, ETA) == Form::two(PlanckElem(1L)));
  // [a, xi] = 0 and [a, eta] = iA da
  std::mt19937 rng(2);
  for (int it = 0; it < 20; ++it) {
    PlanckElem a = random_symbol(rng, true);
    CHECK(wedge(fn(a), XI) == wedge(XI, fn(a)));
    CHECK(wedge(fn(a), ETA) - wedge(ETA, fn(a)) == iA * d(a));
  }
  // (p eta)^xi against eta p ^ xi: the product is associative
  Form pe = wedge(fn(P), ETA), ep = wedge(ETA, fn(P));
  CHECK(wedge(pe, XI) - wedge(ep, XI) == iA * wedge(d(P), XI));
  CHECK_THROWS_AS(wedge(ETA, Form::two(PlanckElem(1L))), Error);
}

TEST_CASE("d xi = 0 and d eta = eta ^ xi, directly and via g^-1 dg, g^-1 dp") {
  CHECK(d(XI).is_zero());
  CHECK(d(ETA) == wedge(ETA, XI));
  const PlanckElem gi = PlanckElem::g(-1);
  CHECK(wedge(fn(gi), d(Gg)) == XI);
  CHECK(wedge(fn(gi), d(P)) == ETA);
  CHECK(wedge(d(gi), d(Gg)).is_zero());
  CHECK(wedge(d(gi), d(P)) == wedge(ETA, XI));
}

TEST_CASE("exterior algebra is associative on degree <= 1 triples") {
  std::mt19937 rng(17);
  for (int it = 0; it < 20; ++it) {
    Form a = fn(random_symbol(rng, true)) + random_one_form(rng);
    Form b = fn(random_symbol(rng, true));
    Form c = random_one_form(rng);
    CHECK(wedge(wedge(a.part(1), b), c) == wedge(a.part(1), wedge(b, c)));
    CHECK(wedge(wedge(b, a), b) == wedge(b, wedge(a, b)));
  }
}

TEST_CASE("d squared vanishes and Leibniz holds on random pairs") {
  std::mt19937 rng(101);
  for (int it = 0; it < 100; ++it) {
    PlanckElem a = random_symbol(rng, true), b = random_symbol(rng, true);
    CHECK(d(d(fn(a))).is_zero());
    CHECK(d(a * b) == wedge(d(a), fn(b)) + wedge(fn(a), d(b)));
  }
  for (int it = 0; it < 30; ++it) {
    PlanckElem f = random_symbol(rng, true);
    Form w = random_one_form(rng);
    CHECK(d(wedge(fn(f), w)) == wedge(d(f), w) + wedge(fn(f), d(w)));
    CHECK(d(wedge(w, fn(f))) == wedge(d(w), fn(f)) - wedge(w, d(f)));
  }
}

TEST_CASE("theta generates d") {
  CHECK(theta_bracket(fn(Gg)) == iA * Form::one(Gg, {}));
  PlanckElem f = PlanckElem::monomial({0, -1, 2});
  CHECK(theta_bracket(fn(f)) == iA * d(f));
  CHECK(theta_bracket(fn(PlanckElem(1L))).is_zero());
  std::mt19937 rng(44);
  for (int it = 0; it < 100; ++it) {
    PlanckElem a = random_symbol(rng, true);
    CHECK(theta_bracket(fn(a)) == iA * d(a));
  }
  for (int it = 0; it < 30; ++it) {
    Form w = random_one_form(rng);
    CHECK(theta_bracket(w) == iA * d(w));
  }
}

TEST_CASE("partial derivatives, displayed values") {
  for (int r = -2; r <= 3; ++r) {
    CHECK(partial(PlanckElem::monomial({0, r, 1}), Partial::eta) == PlanckElem::g(r + 1));
    CHECK(partial(PlanckElem::g(r), Partial::eta).is_zero());
  }
  CHECK(partial(Gg, Partial::xi) == Gg);
  // the right x derivative is -d_xi / G
  std::mt19937 rng(8);
  for (int it = 0; it < 20; ++it) {
    PlanckElem f = random_symbol(rng, true);
    CHECK(partial(f, Partial::x_right) == -ParamScalar::G(-1) * partial(f, Partial::xi));
  }
}

TEST_CASE("right derivatives: d eta closes, d xi as printed does not") {
  // df = xi d_xi f + eta d_eta f with right coefficients. The eta component
  // agrees with d; the printed xi component misses (g-1) g d/dg (f(p+iA)-f).
  std::mt19937 rng(55);
  int printed_ok = 0;
  for (int it = 0; it < 100; ++it) {
    PlanckElem f = random_symbol(rng, true);
    Form df = d(f);
    PlanckElem B = partial(f, Partial::eta);
    // eta coefficients agree once the xi coefficient is solved from d itself
    Form right = from_right_coefficients({}, B);
    CHECK(right.eta == df.eta);
    PlanckElem A_true = df.xi - right.xi;
    PlanckElem delta = shift_p(f, iA) - f;
    PlanckElem corrected = gdg_symbol(f) + gdg_symbol(commutative_mul(Gg, delta));
    CHECK(A_true == corrected);
    if (from_right_coefficients(partial(f, Partial::xi), B) == df) ++printed_ok;
  }
  // d(g p): the printed d_xi gives g p + iA g + iA g^2, Leibniz gives g p + 2 iA g^2.
  PlanckElem gp = normal_mul(Gg, P);
  CHECK(partial(gp, Partial::xi) == gp + iA * Gg + iA * PlanckElem::g(2));
  CHECK(from_right_coefficients(gp + ParamScalar(2L) * iA * PlanckElem::g(2), PlanckElem::g(2)) == d(gp));
  CHECK(printed_ok < 100);
}

TEST_CASE("left derivatives: iA reading closes, printed reading does not") {
  auto left_df = [](const PlanckElem& f, Partial eta_kind) {
    return from_left_basis({-ParamScalar::G() * partial(f, Partial::x_bar_left), partial(f, eta_kind)});
  };
  std::mt19937 rng(66);
  int printed_ok = 0;
  for (int it = 0; it < 100; ++it) {
    PlanckElem f = random_symbol(rng, true);
    CHECK(left_df(f, Partial::eta_bar_left_i) == d(f));
    if (left_df(f, Partial::eta_bar_left) == d(f)) ++printed_ok;
  }
  CHECK(printed_ok < 100);
  PlanckElem p2 = PlanckElem::p(2);
  CHECK(partial(p2, Partial::eta_bar_left) == ParamScalar(2L) * P - PlanckElem(ParamScalar::A()));
  CHECK(partial(p2, Partial::eta_bar_left_i) == ParamScalar(2L) * P - PlanckElem(iA));
  CHECK(left_df(p2, Partial::eta_bar_left) != d(p2));
}

TEST_CASE("limit forms of the derivatives") {
  std::mt19937 rng(77);
  const ParamScalar Ginv = ParamScalar::G(-1);
  for (int it = 0; it < 20; ++it) {
    PlanckElem f = random_symbol(rng, true);
    // kappa_left_eta with 1/kappa = iA is the iA reading of the left eta derivative
    CHECK(partial(f, Partial::kappa_left_eta) == partial(f, Partial::eta_bar_left_i));
    CHECK(partial(f, Partial::kappa_left_x) == dx_symbol(f));
    // classical limit: dbar_x = d_x - (p/G) d_p, dbar_eta = d_p
    PlanckElem f0 = f.at_A_zero();
    CHECK(partial(f0, Partial::x_bar_left).at_A_zero() ==
          dx_symbol(f0) - Ginv * commutative_mul(P, dp_symbol(f0)));
    CHECK(partial(f0, Partial::eta_bar_left_i).at_A_zero() == dp_symbol(f0));
  }
  // dual coordinates: -kappa (f(pbar - 1/kappa) - f) with 1/kappa = i/G
  PlanckElem pb2 = PlanckElem::p(2);
  ParamScalar ik = ParamScalar::monomial(GaussQ::i(), 0, -1);
  CHECK(partial(pb2, Partial::kappa_right_eta) == ParamScalar(2L) * P - PlanckElem(ik));
  CHECK(partial(PlanckElem::monomial({2, 0, 1}), Partial::kappa_right_x) == ParamScalar(2L) * PlanckElem::monomial({1, 0, 1}));
  CHECK_THROWS_AS(partial(Gg, Partial::kappa_right_x), Error);
}

TEST_CASE("left-invariant basis conversion") {
  LeftOneForm e = to_left_basis(ETA);
  CHECK(e.eta_bar == PlanckElem::g(-1));
  CHECK(e.xi == PlanckElem::g(-1) * P);
  CHECK(to_left_basis(XI) == LeftOneForm{PlanckElem(1L), {}});
  // eta_bar = dp - p g^-1 dg
  CHECK(from_left_basis({{}, PlanckElem(1L)}) == d(P) - wedge(fn(P * PlanckElem::g(-1)), d(Gg)));
  std::mt19937 rng(3);
  for (int it = 0; it < 30; ++it) {
    Form w = random_one_form(rng);
    CHECK(from_left_basis(to_left_basis(w)) == w);
  }
  // [a, eta_bar] = iA da
  Form eb = from_left_basis({{}, PlanckElem(1L)});
  for (int it = 0; it < 10; ++it) {
    PlanckElem a = random_symbol(rng, true);
    CHECK(wedge(fn(a), eb) - wedge(eb, fn(a)) == iA * d(a));
  }
}

TEST_CASE("generator form of the relations") {
  Form dx = d(PlanckElem::x()), dp = d(P);
  std::mt19937 rng(12);
  for (int it = 0; it < 20; ++it) {
    PlanckElem a = random_symbol(rng, true);
    CHECK(wedge(fn(a), dx) == wedge(dx, fn(a)));
  }
  // a dp = dp a + iA da holds for polynomials in p ...
  for (const PlanckElem& a : {P, PlanckElem::p(3), P + PlanckElem::p(2)})
    CHECK(wedge(fn(a), dp) - wedge(dp, fn(a)) == iA * d(a));
  // ... but for g the commutator is iA g dg.
  CHECK(wedge(fn(Gg), dp) - wedge(dp, fn(Gg)) == iA * wedge(fn(Gg), d(Gg)));
  CHECK(wedge(dx, dx).is_zero());
  CHECK(wedge(dx, dp) == -1L * ParamScalar(1L) * wedge(dp, dx));
}

TEST_CASE("classical limit of the exterior algebra") {
  CHECK(wedge(ETA, ETA).at_A_zero().is_zero());
  std::mt19937 rng(90);
  for (int it = 0; it < 20; ++it) {
    PlanckElem a = random_symbol(rng, true);
    Form w = random_one_form(rng);
    CHECK((wedge(fn(a), w) - wedge(w, fn(a))).at_A_zero().is_zero());
  }
}

TEST_CASE("graded Hopf structure on forms") {
  FormTensor dxi = form_coproduct(XI);
  FormTensor want;
  want.add(1, 0, tensor(PlanckElem(1L), PlanckElem(1L)));
  want.add(0, 1, tensor(PlanckElem(1L), PlanckElem(1L)));
  CHECK(dxi == want);
  CHECK(form_antipode(XI) == Form::one(PlanckElem(-1L), {}));
  CHECK(form_antipode(ETA) == Form::one(P, -Gg));
  CHECK(form_counit(XI).is_zero());
  CHECK(form_counit(ETA).is_zero());
  CHECK(form_counit(fn(Gg)) == ParamScalar(1L));

  // Antipode axiom m(S (x) id) Delta = eps on 1-forms. It holds with eta (x) 1
  // entering with a plus sign; the printed minus sign breaks it for eta.
  std::mt19937 rng(5);
  for (int it = 0; it < 10; ++it) {
    Form w = Form::one(random_symbol(rng, false, 1, 2), random_symbol(rng, false, 1, 2));
    FormTensor t = form_coproduct(w);
    CHECK(form_antipode_contract(t, true).is_zero());
    CHECK(form_antipode_contract(t, false).is_zero());
    PlanckElem f = random_symbol(rng, false, 1, 2);
    FormTensor tf = form_coproduct(fn(f));
    CHECK(form_antipode_contract(tf, true) == fn(PlanckElem(planck_counit(f))));
  }
  CHECK_FALSE(form_antipode_contract(form_coproduct(ETA, EtaSign::printed), true).is_zero());
  CHECK_THROWS_AS(form_coproduct(Form::two(PlanckElem(1L))), Error);
}

TEST_CASE("form rendering") {
  CHECK(d(PlanckElem::p(2)).str() == "(g*(2p - 2iA g + iA)) η");
  CHECK(Form::one(PlanckElem::monomial({0, 2, 1}), iA * Gg).str() == "(g^2 p) ξ + (iA g) η");
  CHECK(Form().str() == "0");
}
