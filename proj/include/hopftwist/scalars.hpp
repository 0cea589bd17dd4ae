#ifndef HOPFTWIST_SCALARS_HPP
#define HOPFTWIST_SCALARS_HPP

#include <gmpxx.h>

#include <complex>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

namespace hopftwist {

// Exact Gaussian rational re + i im. Zero holds no GMP storage, which keeps
// the mostly-zero dense tensors cheap to build and copy.
class GaussQ {
 public:
  GaussQ() = default;
  GaussQ(long v);  // NOLINT(google-explicit-constructor)
  GaussQ(mpq_class re, mpq_class im = 0);
  GaussQ(const GaussQ& o) : p_(o.p_ ? std::make_unique<Parts>(*o.p_) : nullptr) {}
  GaussQ(GaussQ&&) noexcept = default;
  GaussQ& operator=(const GaussQ& o) {
    if (this != &o) p_ = o.p_ ? std::make_unique<Parts>(*o.p_) : nullptr;
    return *this;
  }
  GaussQ& operator=(GaussQ&&) noexcept = default;

  static GaussQ i() { return GaussQ(0, 1); }
  // "p/q", "p", or a decimal such as "-0.25".
  static GaussQ from_strings(std::string_view re, std::string_view im = "0");

  const mpq_class& re() const { return p_ ? p_->re : zero_q(); }
  const mpq_class& im() const { return p_ ? p_->im : zero_q(); }
  bool is_zero() const { return !p_; }
  bool is_one() const { return p_ && p_->re == 1 && sgn(p_->im) == 0; }

  GaussQ operator-() const;
  GaussQ& operator+=(const GaussQ& o);
  GaussQ& operator-=(const GaussQ& o);
  GaussQ& operator*=(const GaussQ& o);
  GaussQ& operator/=(const GaussQ& o);
  friend GaussQ operator+(GaussQ a, const GaussQ& b) { return a += b; }
  friend GaussQ operator-(GaussQ a, const GaussQ& b) { return a -= b; }
  friend GaussQ operator*(const GaussQ& a, const GaussQ& b);
  friend GaussQ operator/(GaussQ a, const GaussQ& b) { return a /= b; }
  friend bool operator==(const GaussQ& a, const GaussQ& b) {
    if (!a.p_ || !b.p_) return !a.p_ && !b.p_;
    return a.p_->re == b.p_->re && a.p_->im == b.p_->im;
  }

  GaussQ inverse() const;
  std::complex<double> to_complex() const { return {re().get_d(), im().get_d()}; }
  // "3/2", "1/2 i", "(3/2 + 1/2 i)"; parenthesized only when both parts are present.
  std::string str() const;

 private:
  struct Parts {
    mpq_class re, im;
  };
  static const mpq_class& zero_q();
  // drop the storage once both parts cancel
  void tidy() {
    if (p_ && sgn(p_->re) == 0 && sgn(p_->im) == 0) p_.reset();
  }
  std::unique_ptr<Parts> p_;
};

mpq_class parse_rational(std::string_view s);
std::string rational_str(const mpq_class& q);

// Polynomial in A times Laurent polynomial in G over GaussQ. hbar is always A*G.
class ParamScalar {
 public:
  using Key = std::pair<int, int>;  // (A power >= 0, G power)
  using Terms = std::map<Key, GaussQ>;

  ParamScalar() = default;
  ParamScalar(long v);         // NOLINT(google-explicit-constructor)
  ParamScalar(const GaussQ& c);  // NOLINT(google-explicit-constructor)

  static ParamScalar monomial(const GaussQ& c, int a_pow, int g_pow);
  static ParamScalar A(int pow = 1) { return monomial(1, pow, 0); }
  static ParamScalar G(int pow = 1) { return monomial(1, 0, pow); }
  static ParamScalar I() { return GaussQ::i(); }
  static ParamScalar iA() { return monomial(GaussQ::i(), 1, 0); }
  static ParamScalar hbar() { return monomial(1, 1, 1); }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  GaussQ constant_term() const;
  int max_a_pow() const;

  ParamScalar operator-() const;
  ParamScalar& operator+=(const ParamScalar& o);
  ParamScalar& operator-=(const ParamScalar& o);
  ParamScalar& operator*=(const ParamScalar& o);
  friend ParamScalar operator+(ParamScalar a, const ParamScalar& b) { return a += b; }
  friend ParamScalar operator-(ParamScalar a, const ParamScalar& b) { return a -= b; }
  friend ParamScalar operator*(const ParamScalar& a, const ParamScalar& b);
  friend bool operator==(const ParamScalar& a, const ParamScalar& b) {
    return a.terms_ == b.terms_;
  }

  ParamScalar pow(int n) const;
  // Defined only for a single term without A; used by the parser for '/'.
  std::optional<ParamScalar> inverse() const;
  ParamScalar at_A_zero() const;

  std::string str() const;
  // Compact form used inside symbol printing: "2iA", "-A^2 G^-1", "(1 + i)".
  std::string compact() const;
  static ParamScalar parse(std::string_view text);

 private:
  void add_term(const Key& k, const GaussQ& c);
  Terms terms_;
};

enum class ArithOp { add, sub, mul };
ParamScalar scalar_arith(const ParamScalar& lhs, const ParamScalar& rhs, ArithOp op);

// s / (iA); throws NotDivisible when a term carries no A.
ParamScalar exact_div_by_iA(const ParamScalar& s);
// s / den for a single-term den = c A^a G^b; NotDivisible if some term of s has
// fewer than a powers of A.
ParamScalar exact_div(const ParamScalar& s, const ParamScalar& den);

// Numeric value with A, G replaced; throws ZeroG for G = 0.
std::complex<double> substitute(const ParamScalar& s, std::complex<double> A_val,
                                std::complex<double> G_val);

}  // namespace hopftwist

#endif
