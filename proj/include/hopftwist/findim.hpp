#ifndef HOPFTWIST_FINDIM_HPP
#define HOPFTWIST_FINDIM_HPP

#include <memory>
#include <random>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "hopftwist/linalg.hpp"

namespace hopftwist {

struct DeltaCache;

// Finite-dimensional Hopf algebra by structure tensors in a basis e_0..e_{n-1}.
// The rank-3 tensors are stored sparsely: mul[i*dim+j] lists (k, c) with
// e_i e_j = sum c e_k, and comul[i] lists (j, k, c) with Delta e_i = sum c e_j (x) e_k.
// Antipode columns are S(e_j).
struct FinHopf {
  int dim = 0;
  std::vector<std::vector<std::pair<int, GaussQ>>> mul;
  Vec unit;
  std::vector<std::vector<std::tuple<int, int, GaussQ>>> comul;
  Vec counit;
  Mat antipode;
  Mat antipode_inv;
  std::string name;

  // Sorts and merges terms, fills antipode_inv if empty (when S is invertible)
  // and resets the iterated-coproduct cache. Call after editing the tensors.
  void finalize();
  // Structural equality of the tensors; the name is ignored.
  friend bool operator==(const FinHopf& a, const FinHopf& b);

  std::shared_ptr<DeltaCache> cache;
};

// Element-level operations; vectors are coordinates, H (x) H is indexed i*dim + j.
Vec product(const FinHopf& H, const Vec& a, const Vec& b);
Vec coproduct(const FinHopf& H, const Vec& a);
GaussQ counit(const FinHopf& H, const Vec& a);
// Product in H (x) H.
Vec product2(const FinHopf& H, const Vec& a, const Vec& b);

// Delta^(legs-1) e_i as (indices, coefficient) pairs; legs <= 8. Built lazily
// and cached per algebra.
using LegTerms = std::vector<std::pair<std::vector<int>, GaussQ>>;
const LegTerms& iterated_coproduct(const FinHopf& H, int i, int legs);

struct AxiomResult {
  std::string name;
  bool ok = true;
  std::string first_failure;
};
struct AxiomReport {
  std::vector<AxiomResult> axioms;
  bool ok() const;
  bool passed(const std::string& name) const;
  std::string str() const;
};
// associativity, unit, coassociativity, counit, bialgebra, antipode,
// antipode_inverse. DimensionMismatch when the tensor shapes disagree.
AxiomReport check_hopf(const FinHopf& H);

// H* in the dual basis f^i.
FinHopf dual(const FinHopf& H);
// Same coalgebra, opposite product, antipode S^-1.
FinHopf opposite(const FinHopf& H);
// H (x) K with basis index i*K.dim + j.
FinHopf tensor_product(const FinHopf& H, const FinHopf& K);

enum class CocycleSide {
  dual,     // chi: H (x) H -> k, data(i,j) = chi(e_i (x) e_j)
  algebra,  // chi in H (x) H, data(i,j) = coefficient of e_i (x) e_j
};
struct Cocycle {
  CocycleSide side = CocycleSide::dual;
  Mat data;
  Mat inverse;
};
// Computes the convolution (dual) or algebra (algebra side) inverse;
// InvalidCocycle when it does not exist.
Cocycle make_cocycle(const FinHopf& H, CocycleSide side, const Mat& data);
Cocycle trivial_cocycle(const FinHopf& H, CocycleSide side);
Cocycle inverse_of(const Cocycle& c);
// Cocycle identity on all basis triples, unitality (dual) or counitality
// (algebra), and the inverse relation.
bool check_cocycle(const FinHopf& H, const Cocycle& chi);
// Convolution inverse of a functional on H; nullopt if not invertible.
std::optional<Vec> convolution_inverse(const FinHopf& H, const Vec& u);

// dual side: H^chi (product and antipode twisted); algebra side: H_chi.
// InvalidCocycle unless check_cocycle passes.
FinHopf twist(const FinHopf& H, const Cocycle& chi);

// D(H) on H* (x) H, basis index a*dim + i for f^a (x) e_i, with H*op and H as
// sub-Hopf algebras and h phi = phi2 h2 <S h1, phi1> <h3, phi3>.
FinHopf quantum_double(const FinHopf& H);

// Left module and left comodule. action column i*vdim + v is e_i |> v_v;
// coaction column v is beta(v_v) in H (x) V, index a*vdim + w.
struct CrossedModule {
  FinHopf hopf;
  int vdim = 0;
  Mat action;
  Mat coaction;

  Vec act(int i, const Vec& v) const;
  Vec act(const Vec& h, const Vec& v) const;
  Vec coact(const Vec& v) const { return coaction * v; }
};

CrossedModule self_crossed_module(const FinHopf& H);  // left multiplication, adjoint coaction
CrossedModule coregular_crossed_module(const FinHopf& H);  // adjoint action, coproduct as coaction
CrossedModule trivial_crossed_module(const FinHopf& H);
// Restriction to an invariant subspace (coordinates against its basis) and the
// quotient by one (coordinates against a complement). InvalidArgument if the
// subspace is not a sub-crossed module.
CrossedModule sub_crossed_module(const CrossedModule& V, const Subspace& W);
struct Quotient {
  CrossedModule module;
  Mat projection;  // quotient coordinates of each vector of V
};
Quotient quotient_crossed_module(const CrossedModule& V, const Subspace& W);
// Smallest sub-crossed module containing gens.
Subspace crossed_closure(const CrossedModule& V, const std::vector<Vec>& gens);
// H itself as a D(H)-module by left multiplication, seen as a crossed module
// over H (phi acts by evaluation against the coaction).
CrossedModule double_regular_module(const FinHopf& H, const FinHopf& D);

// Empty when valid, otherwise the first failing axiom and basis indices.
std::string crossed_failure(const CrossedModule& V);
// Psi(v (x) w) = v1 |> w (x) v_inf, W (x) V indexed w*vdim + v.
Mat braiding(const CrossedModule& V, const CrossedModule& W);
struct CrossedCheck {
  bool ok = false;
  Mat braiding;
};
// NotCrossed (with the failing pair) when either module is invalid.
CrossedCheck crossed_check(const CrossedModule& V, const CrossedModule& W);

// Twisted crossed module over twist(H, chi) and the monoidal map c for V (x) V.
struct FunctorResult {
  CrossedModule module;
  Mat c;
};
FunctorResult functor_F(const CrossedModule& V, const Cocycle& chi);
// c: F(V) (x) F(W) -> F(V (x) W) for a pair.
Mat functor_c(const CrossedModule& V, const CrossedModule& W, const Cocycle& chi);

// theta: D(H^chi) -> D(H)_chi~ (dual-side chi). Built from the twisted action
// on the regular D(H)-module and verified: bijective algebra map and
// (theta (x) theta) Delta = chi~ Delta(theta) chi~^-1 with chi~ = chi^-1 in
// H* (x) H* inside D (x) D. NotIso if a check fails.
Mat theta_iso(const FinHopf& H, const Cocycle& chi);
struct ThetaReport {
  bool bijective = false;
  bool algebra_map = false;
  bool coproduct = false;
  bool ok() const { return bijective && algebra_map && coproduct; }
};
ThetaReport theta_report(const FinHopf& H, const Cocycle& chi, const Mat& theta);
// The closed form: theta(phi (x) h) = chi-(2)_1 chi'-(1) phi (x) h2
// <h1, U S chi-(1)> <h3, chi-(2)_2 chi'-(2)>, products in H* and H.
Mat theta_closed_form(const FinHopf& H, const Cocycle& chi);

// alpha: F(H) -> H twisted, and its inverse. dual side:
// alpha(h) = chi^-1(h1 (x) S h5) chi(h3 (x) S h4) h2, alpha^-1(h) = chi^-1(h1 S h3 (x) h4) h2;
// algebra side: alpha(h) = (chi-(1) |> h) chi-(2) with the adjoint action, between
// the coregular crossed modules of H and H_chi.
std::pair<Mat, Mat> alpha_map(const FinHopf& H, const Cocycle& chi);
struct AlphaReport {
  bool inverse = false;
  bool action = false;
  bool coaction = false;
  bool unit = false;
  bool kernel = false;
  bool ok() const { return inverse && action && coaction && unit && kernel; }
};
AlphaReport alpha_report(const FinHopf& H, const Cocycle& chi, const std::pair<Mat, Mat>& alpha);

// Omega = V (x) H, basis index v*dim + h. left_action column i*odim + w;
// right_action column w*dim + i; coactions into H (x) Omega and Omega (x) H.
struct BicovBimodule {
  FinHopf hopf;
  int odim = 0;
  Mat left_action;
  Mat right_action;
  Mat left_coaction;
  Mat right_coaction;
};
BicovBimodule bicov(const CrossedModule& V);
std::string bicov_failure(const BicovBimodule& W);
// dual side: actions twisted, coactions kept; algebra side: coactions
// conjugated by chi, actions kept. InvalidCocycle, NotCrossed.
BicovBimodule twist_bicov(const BicovBimodule& W, const Cocycle& chi);
// Right-invariant part v (x) 1 with h |> v = h1 . v . S h2; vdim = odim / dim.
CrossedModule right_invariant_part(const BicovBimodule& W, int vdim);

struct CalculusData {
  FinHopf hopf;
  Subspace ideal;      // sub-crossed module of ker eps, in H coordinates
  int vdim = 0;
  Mat projection;      // vdim x dim: pi(h - eps(h) 1)
  Mat d;               // (vdim*dim) x dim, d e_j in V (x) H
  CrossedModule V;     // quotient crossed module
};
// NotInKernel if some generator has eps != 0.
CalculusData calculus_from_ideal(const FinHopf& H, const std::vector<Vec>& gens);
// Bimodule structure (bimod) on V (x) H.
Vec form_left_mul(const CalculusData& c, const Vec& h, const Vec& w);
Vec form_right_mul(const CalculusData& c, const Vec& w, const Vec& h);
bool leibniz_holds(const CalculusData& c);
bool surjective(const CalculusData& c);

// Degree-2 relations in Omega (x)_H Omega = V (x) V (x) H (index (v*vdim + w)*dim + h).
enum class ProlongKind { maximal, woronowicz };
Subspace prolong_deg2(const CalculusData& c, ProlongKind kind);
// Stable under both actions and both coactions of Omega (x)_H Omega.
bool is_sub_bicovariant(const CalculusData& c, const Subspace& S);

// T(h) = (int e_a h) f^a, T*(phi) = e_a int*(f^a phi), scale = int e_a int* f^a.
struct FourierData {
  Mat T;      // H -> H*
  Mat Tstar;  // H* -> H
  GaussQ scale;
};
bool is_right_integral(const FinHopf& H, const Vec& integral);
bool is_left_integral_dual(const FinHopf& H, const Vec& integral);
// Spanning solutions (first nonzero entry normalised to 1); empty Vec if none.
Vec right_integral(const FinHopf& H);
Vec left_integral_dual(const FinHopf& H);
// NotIntegral when either functional fails its invariance.
FourierData findim_fourier(const FinHopf& H, const Vec& int_right, const Vec& int_left_dual);
// T T* = scale S^-1 on H*, T(h1 <phi, h2>) = T(h) S^-1 phi and
// T*(<phi1, h> phi2) = S h T*(phi) on all basis pairs.
bool fourier_composition_holds(const FinHopf& H, const FourierData& F);
bool fourier_intertwiners_hold(const FinHopf& H, const FourierData& F);

// The standard check list on (H, chi): Hopf axioms, cocycle, twisted axioms,
// twist involutivity, braiding through functor_F, theta_iso (dual side only),
// alpha_map, Leibniz and degree-2 prolongation of the universal calculus on H
// and on the twist, and T T* = scale S^-1. Library errors become failed entries.
std::vector<AxiomResult> twist_suite(const FinHopf& H, const Cocycle& chi);

// ---- corpus ----

struct Group {
  int n = 0;
  std::vector<int> table;  // table[a*n + b] = ab
  std::vector<std::string> names;
  int identity = 0;
  int mul(int a, int b) const { return table[static_cast<size_t>(a * n + b)]; }
  int inv(int a) const;
  static Group cyclic(int n);
  static Group klein();  // Z2 x Z2, element 2a + b for (a, b)
  static Group s3();     // e, (01), (02), (12), (012), (021)
};

FinHopf function_algebra(const Group& G);  // k(G), delta basis
FinHopf group_algebra(const Group& G);     // kG
// Sweedler's 4-dimensional algebra on 1, g, x, gx: g^2 = 1, x^2 = 0, xg = -gx,
// Delta x = x (x) 1 + g (x) x. Neither commutative nor cocommutative, S^2 != id.
FinHopf sweedler();

// beta((a,b),(c,d)) = (-1)^(bc) on Z2 x Z2.
GaussQ klein_bicharacter(int u, int v);
// The bicharacter as an algebra-side cocycle sum beta(u,v) delta_u (x) delta_v
// on k(Z2 x Z2), and its dual-side counterpart on k(Z2 x Z2) obtained through
// the character basis, chi(delta_x (x) delta_y) = 1/16 sum beta(u,v) <u,x> <v,y>.
Cocycle klein_bicharacter_algebra(const FinHopf& kfun);
Cocycle klein_bicharacter_dual(const FinHopf& kfun);
// chi(delta_u (x) delta_v) = beta(u, v) read as a functional on the delta basis.
Mat klein_bicharacter_literal();

// A random functional u with u(1) = 1 that is convolution invertible.
Vec random_unital_functional(const FinHopf& H, std::mt19937& rng);
// chi(h (x) g) = u(h1) u(g1) u^-1(h2 g2).
Cocycle coboundary_cocycle(const FinHopf& H, const Vec& u);

struct CorpusEntry {
  std::string name;
  FinHopf hopf;
  Cocycle cocycle;  // dual side
};
// k(Z2), kZ3, kZ4 with trivial cocycles, k(Z2xZ2) with the bicharacter and
// k(S3) with a seeded coboundary.
std::vector<CorpusEntry> findim_corpus(unsigned seed = 7);

}  // namespace hopftwist

#endif
