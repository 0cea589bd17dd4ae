#ifndef HOPFTWIST_DYNAMICS_HPP
#define HOPFTWIST_DYNAMICS_HPP

#include <complex>
#include <ostream>
#include <string>
#include <vector>

#include "hopftwist/calculus.hpp"

namespace hopftwist {

// Pi = (eta* (x) xi* - Psi(eta* (x) xi*)) (x) pi(g). Only pi(g) is stored.
struct PoissonData {
  PlanckElem pi_of_g = default_pi();
  // (1/G)(g^-1 - 1)
  static PlanckElem default_pi();
  // InvalidArgument unless pi_of_g is a Laurent polynomial in g alone.
  void validate() const;
};

// (g - 1)(d_x a d_p b - d_x b d_p a), commutative product.
PlanckElem classical_bracket(const PlanckElem& a, const PlanckElem& b);

// Which xi-derivative feeds the bracket formula. printed is the closed form as
// displayed; leibniz is the one that reproduces d (see calculus). Only leibniz
// makes the formula agree with the pairing.
enum class XiReading { printed, leibniz };

// pi(g)(a_xi b_eta - a_eta b_xi + iA(a_eta b_eta + (a_xi)_eta b_eta - (a_eta)_xi b_eta)
//       + (iA)^2 (a_eta)_eta b_eta), products normal-ordered left to right.
PlanckElem quantum_bracket(const PlanckElem& a, const PlanckElem& b,
                           const PoissonData& P = {}, XiReading xi = XiReading::leibniz);

// <Pi, da ^ db>: da ^ db = xi^eta f with f on the right, bracket = pi(g) f.
PlanckElem pairing_bracket(const PlanckElem& a, const PlanckElem& b, const PoissonData& P = {});
// Right coefficient f of a two-form c xi^eta (c on the left).
PlanckElem right_coefficient_two_form(const PlanckElem& c);

enum class HamiltonMode { poisson, commutator, classical };

struct HamiltonEq {
  PlanckElem xdot, pdot;
};

// poisson: {x,h}, {p,h} via quantum_bracket. commutator: (i/hbar)[., h], i.e.
// the commutator divided exactly by -iAG. classical: classical_bracket.
HamiltonEq hamilton(const PlanckElem& h, HamiltonMode mode, const PoissonData& P = {},
                    XiReading xi = XiReading::leibniz);

// Free particle of mass m: the printed poisson-mode velocity
// (1/2m)(g - 1)(2p - iA) and how our own output relates to it.
struct MotionComparison {
  PlanckElem ours;
  PlanckElem printed;
  // "match", "iA sign flipped" or "differs"
  std::string flag;
};
MotionComparison compare_printed_motion(const ParamScalar& m, const PoissonData& P = {},
                                        XiReading xi = XiReading::leibniz);

// p^2/(2m) + sum_k V[k] x^k
struct HamiltonSpec {
  double m = 1.0;
  std::vector<double> V;
};
PlanckElem hamiltonian_symbol(const HamiltonSpec& h);

// Value of a normal-ordered symbol at numeric (x, p) with g = exp(-x/G).
std::complex<double> eval_symbol(const PlanckElem& f, std::complex<double> x, std::complex<double> p,
                                 std::complex<double> A_val, double G_val);

struct TrajectoryPoint {
  long step;
  double t;
  std::complex<double> x, p;
};

// RK4 on the symbol-level flow from hamilton(). NonFinite when the state
// overflows; InvalidArgument for dt <= 0 or steps < 1.
std::vector<TrajectoryPoint> integrate(const HamiltonSpec& h, HamiltonMode mode,
                                       std::complex<double> x0, std::complex<double> p0, double dt,
                                       long steps, std::complex<double> A_val, double G_val,
                                       XiReading xi = XiReading::leibniz);

// step,t,re_x,im_x,re_p,im_p
void write_csv(std::ostream& os, const std::vector<TrajectoryPoint>& traj);

}  // namespace hopftwist

#endif
