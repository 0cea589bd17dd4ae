#ifndef HOPFTWIST_PLANCK_HPP
#define HOPFTWIST_PLANCK_HPP

#include <compare>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>

#include "hopftwist/scalars.hpp"

namespace hopftwist {

// x^k g^r p^n, in that order: x and g to the left, p to the right.
struct Mono {
  int k = 0;
  int r = 0;
  int n = 0;
  auto operator<=>(const Mono&) const = default;
};

// Normal-ordered symbol sum_c c * x^k g^r p^n. The same container doubles as
// a vector of the commutative algebra C(B+) (basis p^n g^r) when used with
// commutative_mul or twisted_product_cbp; see planck_from_cbp for the map
// between the two readings.
class PlanckElem {
 public:
  using Terms = std::map<Mono, ParamScalar>;

  PlanckElem() = default;
  PlanckElem(long v);                // NOLINT(google-explicit-constructor)
  PlanckElem(const GaussQ& c);       // NOLINT(google-explicit-constructor)
  PlanckElem(const ParamScalar& c);  // NOLINT(google-explicit-constructor)

  static PlanckElem monomial(const Mono& m, const ParamScalar& c = ParamScalar(1L));
  static PlanckElem x(int k = 1) { return monomial({k, 0, 0}); }
  static PlanckElem g(int r = 1) { return monomial({0, r, 0}); }
  static PlanckElem p(int n = 1) { return monomial({0, 0, n}); }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool has_x() const;
  int max_p_degree() const;  // -1 for zero
  int max_x_degree() const;

  void add_term(const Mono& m, const ParamScalar& c);
  PlanckElem operator-() const;
  PlanckElem& operator+=(const PlanckElem& o);
  PlanckElem& operator-=(const PlanckElem& o);
  friend PlanckElem operator+(PlanckElem a, const PlanckElem& b) { return a += b; }
  friend PlanckElem operator-(PlanckElem a, const PlanckElem& b) { return a -= b; }
  // Noncommutative product; same as normal_mul.
  friend PlanckElem operator*(const PlanckElem& a, const PlanckElem& b);
  friend PlanckElem operator*(const ParamScalar& s, const PlanckElem& a);
  friend bool operator==(const PlanckElem& a, const PlanckElem& b) {
    return a.terms_ == b.terms_;
  }

  PlanckElem pow(int n) const;
  std::optional<PlanckElem> inverse() const;  // single x-free p-free monomial only
  PlanckElem at_A_zero() const;
  // Left multiplication by x^k g^r (exact in normal order).
  PlanckElem shifted(int k, int r) const;

  // "c * x^k g^r p^n + ..." in the published grammar.
  std::string str() const;
  // Display form that pulls out a common x^k g^r factor, e.g. "g*(2p + iA)".
  std::string pretty() const;
  static PlanckElem parse(std::string_view text);

 private:
  Terms terms_;
};

PlanckElem normal_mul(const PlanckElem& a, const PlanckElem& b);
// Product in the commutative algebra C(B+) (exponents simply add).
PlanckElem commutative_mul(const PlanckElem& a, const PlanckElem& b);
// p * e, using [p, x^k g^r] = iAG k x^(k-1) (g^(r+1) - g^r) + iA r x^k (g^r - g^(r+1)).
PlanckElem left_mul_p(const PlanckElem& e);

// Order conversion between normal order (g left, p right) and the p-left
// products p^n * g^r. Keys of the map are (n, r).
using PLeftTerms = std::map<std::pair<int, int>, ParamScalar>;
PlanckElem from_p_left(const PLeftTerms& t);
PLeftTerms to_p_left(const PlanckElem& e);

class TensorElem {
 public:
  using Terms = std::map<std::pair<Mono, Mono>, ParamScalar>;
  void add_term(const Mono& a, const Mono& b, const ParamScalar& c);
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  TensorElem& operator+=(const TensorElem& o);
  friend TensorElem operator+(TensorElem a, const TensorElem& b) { return a += b; }
  friend TensorElem operator-(const TensorElem& a, const TensorElem& b);
  friend bool operator==(const TensorElem& a, const TensorElem& b) {
    return a.terms_ == b.terms_;
  }
  std::string str() const;

 private:
  Terms terms_;
};

TensorElem tensor(const PlanckElem& a, const PlanckElem& b);
// Leg-wise product (a1 (x) a2)(b1 (x) b2) = mul(a1,b1) (x) mul(a2,b2).
TensorElem tensor_mul(const TensorElem& a, const TensorElem& b,
                      const std::function<PlanckElem(const PlanckElem&, const PlanckElem&)>& mul);

// The Hopf operations below act on C(B+) vectors; the coalgebra is shared by
// C(B+) and its twist. antipode_twisted is S^chi of the twisted algebra.
TensorElem coproduct(const PlanckElem& a);
ParamScalar counit(const PlanckElem& a);
PlanckElem antipode_classical(const PlanckElem& a);
// U(h1) S h2 U^-1(h3) with U(h) = chi(h1 (x) S h2); UnsupportedGenerator on x.
PlanckElem antipode_twisted(const PlanckElem& a);

enum class HopfOp { coproduct, counit, antipode_classical, antipode_twisted };
using HopfResult = std::variant<TensorElem, ParamScalar, PlanckElem>;
HopfResult hopf_ops(const PlanckElem& a, HopfOp which);

// chi(p^n g^r (x) p^m g^s) = delta_{m,0} (iA)^n prod_{k<n} (-s-k); inverse uses (s-k).
ParamScalar chi_mono(const Mono& a, const Mono& b, bool inverse);
ParamScalar chi_eval(const PlanckElem& a, const PlanckElem& b, bool inverse);

// chi(h1 (x) g1) h2 g2 chi^-1(h3 (x) g3) on C(B+) vectors (commutative product,
// binomial coproduct).
PlanckElem twisted_product_cbp(const PlanckElem& a, const PlanckElem& b);

// The algebra isomorphism C(B+)^chi -> Planck algebra fixed by p -> p, g -> g.
// It is not monomial-wise: the vector p^2 is p*p - iA p. Both directions are
// triangular in the p-degree.
PlanckElem planck_from_cbp(const PlanckElem& v);
PlanckElem cbp_from_planck(const PlanckElem& a);

// Twisted product of Planck elements: transported to C(B+), multiplied with
// twisted_product_cbp and transported back. Equals normal_mul (the theorem).
PlanckElem bullet_product(const PlanckElem& a, const PlanckElem& b);

// Hopf maps of the Planck algebra on normal-ordered symbols: the C(B+) maps
// (antipode_twisted for S) conjugated by planck_from_cbp. x-free input only.
TensorElem planck_coproduct(const PlanckElem& a);
ParamScalar planck_counit(const PlanckElem& a);
PlanckElem planck_antipode(const PlanckElem& a);

using ChiFn = std::function<ParamScalar(const Mono&, const Mono&)>;

struct CocycleCheck {
  bool identity = true;
  bool unital = true;
  bool invertible = true;
  long triples = 0;
  std::string first_failure;
  bool ok() const { return identity && unital && invertible; }
};

// Exhaustive check on p^n g^r with n <= maxdeg and |r| <= grange. The default
// chi / chi^-1 are the closed forms above; callers may pass perturbed ones.
CocycleCheck check_planck_cocycle(int maxdeg, int grange, const ChiFn& chi = {},
                                  const ChiFn& chi_inv = {});
bool cocycle_condition_check(int maxdeg, int grange);

}  // namespace hopftwist

#endif
