#include "hopftwist/scalars.hpp"

#include <cctype>
#include <sstream>
#include <vector>

#include "expr_parser.hpp"
#include "hopftwist/errors.hpp"

namespace hopftwist {

// ---- rationals ----

mpq_class parse_rational(std::string_view s) {
  std::string t;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) t.push_back(c);
  if (t.empty()) throw Error(Errc::Parse, "empty rational");
  bool neg = false;
  std::size_t at = 0;
  if (t[0] == '+' || t[0] == '-') {
    neg = t[0] == '-';
    at = 1;
  }
  std::string body = t.substr(at);
  auto bad = [&] { throw Error(Errc::Parse, "bad rational \"" + std::string(s) + "\""); };
  mpq_class q;
  auto slash = body.find('/');
  auto dot = body.find('.');
  auto digits = [](const std::string& d) {
    if (d.empty()) return false;
    for (char c : d)
      if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
  };
  if (slash != std::string::npos) {
    std::string n = body.substr(0, slash), d = body.substr(slash + 1);
    if (!digits(n) || !digits(d)) bad();
    mpz_class den(d, 10);
    if (den == 0) bad();
    q = mpq_class(mpz_class(n, 10), den);
    q.canonicalize();
  } else if (dot != std::string::npos) {
    std::string ip = body.substr(0, dot), fp = body.substr(dot + 1);
    if (ip.empty()) ip = "0";
    if (!digits(ip) || (!fp.empty() && !digits(fp))) bad();
    mpz_class scale = 1;
    for (std::size_t k = 0; k < fp.size(); ++k) scale *= 10;
    q = mpq_class(mpz_class(ip + fp, 10), scale);
    q.canonicalize();
  } else {
    if (!digits(body)) bad();
    q = mpq_class(mpz_class(body, 10));
  }
  return neg ? mpq_class(-q) : q;
}

std::string rational_str(const mpq_class& q) { return q.get_str(); }

// ---- GaussQ ----

GaussQ::GaussQ(long v) {
  if (v != 0) p_ = std::make_unique<Parts>(Parts{mpq_class(v), mpq_class(0)});
}

GaussQ::GaussQ(mpq_class re, mpq_class im) {
  re.canonicalize();
  im.canonicalize();
  if (sgn(re) != 0 || sgn(im) != 0) p_ = std::make_unique<Parts>(Parts{std::move(re), std::move(im)});
}

const mpq_class& GaussQ::zero_q() {
  static const mpq_class z(0);
  return z;
}

GaussQ GaussQ::from_strings(std::string_view re, std::string_view im) {
  return GaussQ(parse_rational(re), parse_rational(im));
}

GaussQ GaussQ::operator-() const {
  GaussQ r(*this);
  if (r.p_) {
    mpq_neg(r.p_->re.get_mpq_t(), r.p_->re.get_mpq_t());
    mpq_neg(r.p_->im.get_mpq_t(), r.p_->im.get_mpq_t());
  }
  return r;
}

GaussQ& GaussQ::operator+=(const GaussQ& o) {
  if (!o.p_) return *this;
  if (!p_) return *this = o;
  p_->re += o.p_->re;
  p_->im += o.p_->im;
  tidy();
  return *this;
}

GaussQ& GaussQ::operator-=(const GaussQ& o) {
  if (!o.p_) return *this;
  if (!p_) return *this = -o;
  p_->re -= o.p_->re;
  p_->im -= o.p_->im;
  tidy();
  return *this;
}

GaussQ& GaussQ::operator*=(const GaussQ& o) {
  if (!p_) return *this;
  if (!o.p_) {
    p_.reset();
    return *this;
  }
  if (sgn(p_->im) == 0 && sgn(o.p_->im) == 0) {
    p_->re *= o.p_->re;
    return *this;
  }
  mpq_class r = p_->re * o.p_->re - p_->im * o.p_->im;
  mpq_class i = p_->re * o.p_->im + p_->im * o.p_->re;
  p_->re = std::move(r);
  p_->im = std::move(i);
  tidy();
  return *this;
}

GaussQ operator*(const GaussQ& a, const GaussQ& b) {
  GaussQ r;
  if (!a.p_ || !b.p_) return r;
  if (sgn(a.p_->im) == 0 && sgn(b.p_->im) == 0) {
    r.p_ = std::make_unique<GaussQ::Parts>();
    mpq_mul(r.p_->re.get_mpq_t(), a.p_->re.get_mpq_t(), b.p_->re.get_mpq_t());
    return r;
  }
  r = a;
  return r *= b;
}

GaussQ GaussQ::inverse() const {
  if (is_zero()) throw Error(Errc::InvalidArgument, "division by zero");
  mpq_class n = p_->re * p_->re + p_->im * p_->im;
  return GaussQ(p_->re / n, -p_->im / n);
}

GaussQ& GaussQ::operator/=(const GaussQ& o) { return *this *= o.inverse(); }

std::string GaussQ::str() const {
  bool r = sgn(re()) != 0, i = sgn(im()) != 0;
  auto imag = [&](const mpq_class& v) {
    if (v == 1) return std::string("i");
    if (v == -1) return std::string("-i");
    return rational_str(v) + " i";
  };
  if (!r && !i) return "0";
  if (!i) return rational_str(re());
  if (!r) return imag(im());
  std::string s = "(" + rational_str(re());
  if (sgn(im()) < 0)
    s += " - " + imag(mpq_class(-im()));
  else
    s += " + " + imag(im());
  return s + ")";
}

// ---- ParamScalar ----

ParamScalar::ParamScalar(long v) {
  if (v != 0) terms_.emplace(Key{0, 0}, GaussQ(v));
}

ParamScalar::ParamScalar(const GaussQ& c) {
  if (!c.is_zero()) terms_.emplace(Key{0, 0}, c);
}

ParamScalar ParamScalar::monomial(const GaussQ& c, int a_pow, int g_pow) {
  if (a_pow < 0) throw Error(Errc::InvalidArgument, "negative power of A");
  ParamScalar s;
  if (!c.is_zero()) s.terms_.emplace(Key{a_pow, g_pow}, c);
  return s;
}

void ParamScalar::add_term(const Key& k, const GaussQ& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(k, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

bool ParamScalar::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Key{0, 0});
}

GaussQ ParamScalar::constant_term() const {
  auto it = terms_.find(Key{0, 0});
  return it == terms_.end() ? GaussQ() : it->second;
}

int ParamScalar::max_a_pow() const {
  int m = -1;
  for (const auto& [k, c] : terms_) m = std::max(m, k.first);
  return m;
}

ParamScalar ParamScalar::operator-() const {
  ParamScalar r;
  for (const auto& [k, c] : terms_) r.terms_.emplace(k, -c);
  return r;
}

ParamScalar& ParamScalar::operator+=(const ParamScalar& o) {
  for (const auto& [k, c] : o.terms_) add_term(k, c);
  return *this;
}

ParamScalar& ParamScalar::operator-=(const ParamScalar& o) {
  for (const auto& [k, c] : o.terms_) add_term(k, -c);
  return *this;
}

ParamScalar operator*(const ParamScalar& a, const ParamScalar& b) {
  ParamScalar r;
  for (const auto& [ka, ca] : a.terms_)
    for (const auto& [kb, cb] : b.terms_)
      r.add_term({ka.first + kb.first, ka.second + kb.second}, ca * cb);
  return r;
}

ParamScalar& ParamScalar::operator*=(const ParamScalar& o) { return *this = *this * o; }

ParamScalar ParamScalar::pow(int n) const {
  if (n < 0) {
    auto inv = inverse();
    if (!inv) throw Error(Errc::InvalidArgument, "negative power of a non-invertible scalar");
    return inv->pow(-n);
  }
  ParamScalar r(1L), b = *this;
  while (n > 0) {
    if (n & 1) r *= b;
    b *= b;
    n >>= 1;
  }
  return r;
}

std::optional<ParamScalar> ParamScalar::inverse() const {
  if (terms_.size() != 1) return std::nullopt;
  const auto& [k, c] = *terms_.begin();
  if (k.first != 0) return std::nullopt;
  return monomial(c.inverse(), 0, -k.second);
}

ParamScalar ParamScalar::at_A_zero() const {
  ParamScalar r;
  for (const auto& [k, c] : terms_)
    if (k.first == 0) r.terms_.emplace(k, c);
  return r;
}

namespace {

std::string param_part(int a, int g, const char* sep) {
  std::string s;
  auto add = [&](const std::string& t) {
    if (!s.empty()) s += sep;
    s += t;
  };
  if (a == 1) add("A");
  if (a > 1) add("A^" + std::to_string(a));
  if (g == 1) add("G");
  if (g != 0 && g != 1) add("G^" + std::to_string(g));
  return s;
}

// Joins signed pieces as "a + b - c".
std::string join_signed(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& p : parts) {
    if (out.empty()) {
      out = p;
    } else if (!p.empty() && p[0] == '-') {
      out += " - " + p.substr(1);
    } else {
      out += " + " + p;
    }
  }
  return out.empty() ? "0" : out;
}

}  // namespace

std::string ParamScalar::str() const {
  std::vector<std::string> parts;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [k, c] = *it;
    std::string params = param_part(k.first, k.second, " ");
    std::string coef = c.str();
    if (params.empty()) {
      parts.push_back(coef);
    } else if (c.is_one()) {
      parts.push_back(params);
    } else if (c == GaussQ(-1)) {
      parts.push_back("-" + params);
    } else {
      parts.push_back(coef + " " + params);
    }
  }
  return join_signed(parts);
}

std::string ParamScalar::compact() const {
  std::vector<std::string> parts;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [k, c] = *it;
    std::string params = param_part(k.first, k.second, " ");
    std::string coef;
    bool r = sgn(c.re()) != 0, i = sgn(c.im()) != 0;
    if (r && i) {
      coef = c.str();
    } else if (r) {
      coef = rational_str(c.re());
      if (!params.empty() && c.re() == 1) coef = "";
      if (!params.empty() && c.re() == -1) coef = "-";
    } else {
      const mpq_class& v = c.im();
      coef = v == 1 ? "i" : v == -1 ? "-i" : rational_str(v) + "i";
    }
    parts.push_back(coef + params);
  }
  return join_signed(parts);
}

ParamScalar ParamScalar::parse(std::string_view text) {
  detail::ExprParser<ParamScalar> p(text, [](char c) -> std::optional<ParamScalar> {
    switch (c) {
      case 'i': return ParamScalar::I();
      case 'A': return ParamScalar::A();
      case 'G': return ParamScalar::G();
      default: return std::nullopt;
    }
  });
  return p.parse();
}

ParamScalar scalar_arith(const ParamScalar& lhs, const ParamScalar& rhs, ArithOp op) {
  switch (op) {
    case ArithOp::add: return lhs + rhs;
    case ArithOp::sub: return lhs - rhs;
    case ArithOp::mul: return lhs * rhs;
  }
  return {};
}

ParamScalar exact_div_by_iA(const ParamScalar& s) {
  ParamScalar r;
  for (const auto& [k, c] : s.terms()) {
    if (k.first == 0)
      throw Error(Errc::NotDivisible, "term without A factor in " + s.str());
    // c / i = -i c
    r += ParamScalar::monomial(c * GaussQ(0, -1), k.first - 1, k.second);
  }
  return r;
}

ParamScalar exact_div(const ParamScalar& s, const ParamScalar& den) {
  if (den.terms().size() != 1) throw Error(Errc::InvalidArgument, "divisor must be a single term: " + den.str());
  const auto& [dk, dc] = *den.terms().begin();
  GaussQ inv = dc.inverse();
  ParamScalar r;
  for (const auto& [k, c] : s.terms()) {
    if (k.first < dk.first) throw Error(Errc::NotDivisible, s.str() + " by " + den.str());
    r += ParamScalar::monomial(c * inv, k.first - dk.first, k.second - dk.second);
  }
  return r;
}

std::complex<double> substitute(const ParamScalar& s, std::complex<double> A_val,
                                std::complex<double> G_val) {
  if (G_val == std::complex<double>(0.0, 0.0)) throw Error(Errc::ZeroG, "G = 0");
  auto ipow = [](std::complex<double> b, int n) {
    std::complex<double> r = 1.0;
    if (n < 0) {
      b = 1.0 / b;
      n = -n;
    }
    for (int k = 0; k < n; ++k) r *= b;
    return r;
  };
  std::complex<double> acc = 0.0;
  for (const auto& [k, c] : s.terms())
    acc += c.to_complex() * ipow(A_val, k.first) * ipow(G_val, k.second);
  return acc;
}

}  // namespace hopftwist
