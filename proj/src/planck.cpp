#include "hopftwist/planck.hpp"

#include <algorithm>
#include <vector>

#include "expr_parser.hpp"
#include "hopftwist/errors.hpp"

namespace hopftwist {

namespace {

long binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  long r = 1;
  for (int j = 1; j <= k; ++j) r = r * (n - k + j) / j;
  return r;
}

void require_x_free(const PlanckElem& a, const char* what) {
  if (a.has_x())
    throw Error(Errc::UnsupportedGenerator,
                std::string(what) + " is defined on the g,p subalgebra only; got " + a.str());
}

}  // namespace

// ---- PlanckElem basics ----

PlanckElem::PlanckElem(long v) : PlanckElem(ParamScalar(v)) {}
PlanckElem::PlanckElem(const GaussQ& c) : PlanckElem(ParamScalar(c)) {}
PlanckElem::PlanckElem(const ParamScalar& c) {
  if (!c.is_zero()) terms_.emplace(Mono{}, c);
}

PlanckElem PlanckElem::monomial(const Mono& m, const ParamScalar& c) {
  if (m.k < 0 || m.n < 0)
    throw Error(Errc::InvalidArgument, "negative power of x or p");
  PlanckElem e;
  e.add_term(m, c);
  return e;
}

void PlanckElem::add_term(const Mono& m, const ParamScalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

bool PlanckElem::has_x() const {
  return std::any_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.first.k > 0; });
}

int PlanckElem::max_p_degree() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, m.n);
  return d;
}

int PlanckElem::max_x_degree() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, m.k);
  return d;
}

PlanckElem PlanckElem::operator-() const {
  PlanckElem r;
  for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
  return r;
}

PlanckElem& PlanckElem::operator+=(const PlanckElem& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

PlanckElem& PlanckElem::operator-=(const PlanckElem& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

PlanckElem operator*(const PlanckElem& a, const PlanckElem& b) { return normal_mul(a, b); }

PlanckElem operator*(const ParamScalar& s, const PlanckElem& a) {
  PlanckElem r;
  if (s.is_zero()) return r;
  for (const auto& [m, c] : a.terms_) r.add_term(m, s * c);
  return r;
}

PlanckElem PlanckElem::pow(int n) const {
  if (n < 0) {
    auto inv = inverse();
    if (!inv) throw Error(Errc::InvalidArgument, "negative power of a non-invertible symbol");
    return inv->pow(-n);
  }
  PlanckElem r(1L);
  for (int j = 0; j < n; ++j) r = normal_mul(r, *this);
  return r;
}

std::optional<PlanckElem> PlanckElem::inverse() const {
  if (terms_.size() != 1) return std::nullopt;
  const auto& [m, c] = *terms_.begin();
  if (m.k != 0 || m.n != 0) return std::nullopt;
  auto ci = c.inverse();
  if (!ci) return std::nullopt;
  return monomial({0, -m.r, 0}, *ci);
}

PlanckElem PlanckElem::at_A_zero() const {
  PlanckElem r;
  for (const auto& [m, c] : terms_) r.add_term(m, c.at_A_zero());
  return r;
}

PlanckElem PlanckElem::shifted(int k, int r) const {
  PlanckElem out;
  for (const auto& [m, c] : terms_) out.add_term({m.k + k, m.r + r, m.n}, c);
  return out;
}

// ---- printing / parsing ----

namespace {

std::string mono_str(const Mono& m, const char* sep) {
  std::string s;
  auto add = [&](const std::string& t) {
    if (!s.empty()) s += sep;
    s += t;
  };
  if (m.k == 1) add("x");
  if (m.k > 1) add("x^" + std::to_string(m.k));
  if (m.r == 1) add("g");
  if (m.r != 0 && m.r != 1) add("g^" + std::to_string(m.r));
  if (m.n == 1) add("p");
  if (m.n > 1) add("p^" + std::to_string(m.n));
  return s;
}

// Display order: p-degree first, then x, then g, all descending.
std::vector<std::pair<Mono, ParamScalar>> display_order(const PlanckElem::Terms& t) {
  std::vector<std::pair<Mono, ParamScalar>> v(t.begin(), t.end());
  std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) {
    const Mono &x = a.first, &y = b.first;
    if (x.n != y.n) return x.n > y.n;
    if (x.k != y.k) return x.k > y.k;
    return x.r > y.r;
  });
  return v;
}

std::string join_terms(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& p : parts) {
    if (out.empty())
      out = p;
    else if (p[0] == '-')
      out += " - " + p.substr(1);
    else
      out += " + " + p;
  }
  return out.empty() ? "0" : out;
}

std::string compact_term(const ParamScalar& c, const Mono& m) {
  std::string mono = mono_str(m, " ");
  std::string coef = c.compact();
  bool multi = c.terms().size() > 1;
  if (mono.empty()) return multi ? coef : coef;
  if (multi) return "(" + coef + ")" + mono;
  if (coef == "1") return mono;
  if (coef == "-1") return "-" + mono;
  char last = coef.back();
  bool letter_end = std::isalpha(static_cast<unsigned char>(last)) || last == ')';
  return coef + (letter_end ? " " : "") + mono;
}

}  // namespace

std::string PlanckElem::str() const {
  std::vector<std::string> parts;
  for (const auto& [m, c] : display_order(terms_)) {
    std::string mono = mono_str(m, " ");
    std::string coef = c.terms().size() > 1 ? "(" + c.str() + ")" : c.str();
    if (mono.empty())
      parts.push_back(coef);
    else if (coef == "1")
      parts.push_back(mono);
    else if (coef == "-1")
      parts.push_back("-" + mono);
    else
      parts.push_back(coef + " * " + mono);
  }
  return join_terms(parts);
}

std::string PlanckElem::pretty() const {
  if (terms_.empty()) return "0";
  int kmin = terms_.begin()->first.k, rmin = terms_.begin()->first.r;
  for (const auto& [m, c] : terms_) {
    kmin = std::min(kmin, m.k);
    rmin = std::min(rmin, m.r);
  }
  Mono common{kmin, rmin, 0};
  bool factor = terms_.size() > 1 && (kmin != 0 || rmin != 0);
  std::vector<std::string> parts;
  for (const auto& [m, c] : display_order(terms_)) {
    Mono rest = factor ? Mono{m.k - kmin, m.r - rmin, m.n} : m;
    parts.push_back(compact_term(c, rest));
  }
  std::string body = join_terms(parts);
  if (!factor) return body;
  return mono_str(common, " ") + "*(" + body + ")";
}

PlanckElem PlanckElem::parse(std::string_view text) {
  detail::ExprParser<PlanckElem> p(text, [](char c) -> std::optional<PlanckElem> {
    switch (c) {
      case 'i': return PlanckElem(ParamScalar::I());
      case 'A': return PlanckElem(ParamScalar::A());
      case 'G': return PlanckElem(ParamScalar::G());
      case 'x': return PlanckElem::x();
      case 'g': return PlanckElem::g();
      case 'p': return PlanckElem::p();
      default: return std::nullopt;
    }
  });
  return p.parse();
}

// ---- products ----

PlanckElem left_mul_p(const PlanckElem& e) {
  const ParamScalar iA = ParamScalar::iA();
  const ParamScalar iAG = ParamScalar::monomial(GaussQ::i(), 1, 1);
  PlanckElem out;
  for (const auto& [m, c] : e.terms()) {
    out.add_term({m.k, m.r, m.n + 1}, c);
    if (m.k > 0) {
      ParamScalar f = iAG * ParamScalar(static_cast<long>(m.k)) * c;
      out.add_term({m.k - 1, m.r + 1, m.n}, f);
      out.add_term({m.k - 1, m.r, m.n}, -f);
    }
    if (m.r != 0) {
      ParamScalar f = iA * ParamScalar(static_cast<long>(m.r)) * c;
      out.add_term({m.k, m.r, m.n}, f);
      out.add_term({m.k, m.r + 1, m.n}, -f);
    }
  }
  return out;
}

PlanckElem normal_mul(const PlanckElem& a, const PlanckElem& b) {
  PlanckElem out;
  if (a.is_zero() || b.is_zero()) return out;
  std::vector<PlanckElem> pb{b};  // pb[n] = p^n * b
  for (const auto& [m, c] : a.terms()) {
    while (static_cast<int>(pb.size()) <= m.n) pb.push_back(left_mul_p(pb.back()));
    for (const auto& [mb, cb] : pb[m.n].terms())
      out.add_term({mb.k + m.k, mb.r + m.r, mb.n}, c * cb);
  }
  return out;
}

PlanckElem commutative_mul(const PlanckElem& a, const PlanckElem& b) {
  PlanckElem out;
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms())
      out.add_term({ma.k + mb.k, ma.r + mb.r, ma.n + mb.n}, ca * cb);
  return out;
}

PlanckElem from_p_left(const PLeftTerms& t) {
  PlanckElem out;
  for (const auto& [nr, c] : t)
    out += c * normal_mul(PlanckElem::p(nr.first), PlanckElem::g(nr.second));
  return out;
}

PLeftTerms to_p_left(const PlanckElem& e) {
  require_x_free(e, "order conversion");
  PLeftTerms out;
  PlanckElem rest = e;
  while (!rest.is_zero()) {
    // Leading p-degree term: p^n g^r = g^r p^n + (lower p-degree terms).
    auto lead = std::max_element(rest.terms().begin(), rest.terms().end(),
                                 [](const auto& a, const auto& b) { return a.first.n < b.first.n; });
    Mono m = lead->first;
    ParamScalar c = lead->second;
    out[{m.n, m.r}] += c;
    rest -= c * normal_mul(PlanckElem::p(m.n), PlanckElem::g(m.r));
  }
  for (auto it = out.begin(); it != out.end();) it = it->second.is_zero() ? out.erase(it) : ++it;
  return out;
}

// ---- tensors ----

void TensorElem::add_term(const Mono& a, const Mono& b, const ParamScalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace({a, b}, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

TensorElem& TensorElem::operator+=(const TensorElem& o) {
  for (const auto& [ab, c] : o.terms_) add_term(ab.first, ab.second, c);
  return *this;
}

TensorElem operator-(const TensorElem& a, const TensorElem& b) {
  TensorElem r = a;
  for (const auto& [ab, c] : b.terms_) r.add_term(ab.first, ab.second, -c);
  return r;
}

std::string TensorElem::str() const {
  std::vector<std::string> parts;
  for (const auto& [ab, c] : terms_) {
    PlanckElem l = PlanckElem::monomial(ab.first, c);
    PlanckElem r = PlanckElem::monomial(ab.second);
    parts.push_back("(" + l.str() + ")(x)(" + r.str() + ")");
  }
  return join_terms(parts);
}

TensorElem tensor(const PlanckElem& a, const PlanckElem& b) {
  TensorElem t;
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms()) t.add_term(ma, mb, ca * cb);
  return t;
}

TensorElem tensor_mul(const TensorElem& a, const TensorElem& b,
                      const std::function<PlanckElem(const PlanckElem&, const PlanckElem&)>& mul) {
  TensorElem out;
  for (const auto& [ab, ca] : a.terms())
    for (const auto& [cd, cb] : b.terms()) {
      PlanckElem l = mul(PlanckElem::monomial(ab.first), PlanckElem::monomial(cd.first));
      PlanckElem r = mul(PlanckElem::monomial(ab.second), PlanckElem::monomial(cd.second));
      ParamScalar c = ca * cb;
      for (const auto& [ml, cl] : l.terms())
        for (const auto& [mr, cr] : r.terms()) out.add_term(ml, mr, c * cl * cr);
    }
  return out;
}

// ---- Hopf structure ----

namespace {

void coproduct_mono(const Mono& m, const ParamScalar& c, TensorElem& out) {
  for (int i = 0; i <= m.k; ++i)
    for (int j = 0; j <= m.n; ++j) {
      ParamScalar w = ParamScalar(binom(m.k, i) * binom(m.n, j)) * c;
      out.add_term({i, m.r, j}, {m.k - i, m.r + j, m.n - j}, w);
    }
}

struct Leg3 {
  Mono a, b, c;
  long w;
};

// (Delta (x) id) Delta on a monomial.
std::vector<Leg3> coproduct3(const Mono& m) {
  std::vector<Leg3> out;
  TensorElem t;
  coproduct_mono(m, ParamScalar(1L), t);
  for (const auto& [ab, c] : t.terms()) {
    TensorElem t2;
    coproduct_mono(ab.first, c, t2);
    for (const auto& [ab2, c2] : t2.terms()) {
      long w = 0;
      mpq_class q = c2.constant_term().re();
      w = q.get_num().get_si();
      out.push_back({ab2.first, ab2.second, ab.second, w});
    }
  }
  return out;
}

Mono antipode_mono(const Mono& m, int& sign) {
  sign = ((m.k + m.n) % 2 == 0) ? 1 : -1;
  return {m.k, -m.r - m.n, m.n};
}

ParamScalar U_mono(const Mono& m, bool inverse) {
  // U(h) = chi(h1 (x) S h2); U^-1(h) = chi^-1(S h1 (x) h2)
  TensorElem t;
  coproduct_mono(m, ParamScalar(1L), t);
  ParamScalar acc;
  for (const auto& [ab, c] : t.terms()) {
    int sign;
    if (!inverse) {
      Mono s = antipode_mono(ab.second, sign);
      acc += ParamScalar(static_cast<long>(sign)) * c * chi_mono(ab.first, s, false);
    } else {
      Mono s = antipode_mono(ab.first, sign);
      acc += ParamScalar(static_cast<long>(sign)) * c * chi_mono(s, ab.second, true);
    }
  }
  return acc;
}

}  // namespace

TensorElem coproduct(const PlanckElem& a) {
  TensorElem out;
  for (const auto& [m, c] : a.terms()) coproduct_mono(m, c, out);
  return out;
}

ParamScalar counit(const PlanckElem& a) {
  ParamScalar acc;
  for (const auto& [m, c] : a.terms())
    if (m.k == 0 && m.n == 0) acc += c;
  return acc;
}

PlanckElem antipode_classical(const PlanckElem& a) {
  PlanckElem out;
  for (const auto& [m, c] : a.terms()) {
    int sign;
    Mono s = antipode_mono(m, sign);
    out.add_term(s, ParamScalar(static_cast<long>(sign)) * c);
  }
  return out;
}

PlanckElem antipode_twisted(const PlanckElem& a) {
  require_x_free(a, "twisted antipode");
  PlanckElem out;
  for (const auto& [m, c] : a.terms())
    for (const Leg3& l : coproduct3(m)) {
      ParamScalar u = U_mono(l.a, false);
      if (u.is_zero()) continue;
      ParamScalar ui = U_mono(l.c, true);
      if (ui.is_zero()) continue;
      int sign;
      Mono s = antipode_mono(l.b, sign);
      out.add_term(s, ParamScalar(l.w * sign) * c * u * ui);
    }
  return out;
}

HopfResult hopf_ops(const PlanckElem& a, HopfOp which) {
  switch (which) {
    case HopfOp::coproduct: return coproduct(a);
    case HopfOp::counit: return counit(a);
    case HopfOp::antipode_classical: return antipode_classical(a);
    case HopfOp::antipode_twisted: return antipode_twisted(a);
  }
  return PlanckElem();
}

// ---- cocycle ----

ParamScalar chi_mono(const Mono& a, const Mono& b, bool inverse) {
  if (a.k != 0 || b.k != 0)
    throw Error(Errc::UnsupportedGenerator, "chi is defined on the g,p subalgebra only");
  if (b.n != 0) return {};
  long prod = 1;
  const int s = b.r;
  for (int k = 0; k < a.n; ++k) prod *= inverse ? (s - k) : (-s - k);
  if (prod == 0) return {};
  return ParamScalar::iA().pow(a.n) * ParamScalar(prod);
}

ParamScalar chi_eval(const PlanckElem& a, const PlanckElem& b, bool inverse) {
  require_x_free(a, "chi");
  require_x_free(b, "chi");
  ParamScalar acc;
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms()) acc += ca * cb * chi_mono(ma, mb, inverse);
  return acc;
}

PlanckElem twisted_product_cbp(const PlanckElem& a, const PlanckElem& b) {
  require_x_free(a, "twisted product");
  require_x_free(b, "twisted product");
  PlanckElem out;
  for (const auto& [ma, ca] : a.terms()) {
    auto la = coproduct3(ma);
    for (const auto& [mb, cb] : b.terms()) {
      auto lb = coproduct3(mb);
      for (const Leg3& x : la)
        for (const Leg3& y : lb) {
          ParamScalar c1 = chi_mono(x.a, y.a, false);
          if (c1.is_zero()) continue;
          ParamScalar c3 = chi_mono(x.c, y.c, true);
          if (c3.is_zero()) continue;
          Mono mid{0, x.b.r + y.b.r, x.b.n + y.b.n};
          out.add_term(mid, ParamScalar(x.w * y.w) * ca * cb * c1 * c3);
        }
    }
  }
  return out;
}

namespace {

// q[n] = p . p . ... . p (n twisted factors) as a C(B+) vector.
const PlanckElem& twisted_p_power(int n) {
  static thread_local std::vector<PlanckElem> q{PlanckElem(1L)};
  while (static_cast<int>(q.size()) <= n) q.push_back(twisted_product_cbp(q.back(), PlanckElem::p()));
  return q[n];
}

}  // namespace

PlanckElem cbp_from_planck(const PlanckElem& a) {
  require_x_free(a, "order conversion");
  // g^r . v = g^r v for the twisted product, so g^r p^n -> g^r q[n].
  PlanckElem out;
  for (const auto& [m, c] : a.terms()) out += c * twisted_p_power(m.n).shifted(0, m.r);
  return out;
}

PlanckElem planck_from_cbp(const PlanckElem& v) {
  require_x_free(v, "order conversion");
  PlanckElem out, rest = v;
  while (!rest.is_zero()) {
    auto lead = std::max_element(rest.terms().begin(), rest.terms().end(),
                                 [](const auto& a, const auto& b) { return a.first.n < b.first.n; });
    Mono m = lead->first;
    ParamScalar c = lead->second;
    out.add_term(m, c);
    rest -= c * twisted_p_power(m.n).shifted(0, m.r);
  }
  return out;
}

PlanckElem bullet_product(const PlanckElem& a, const PlanckElem& b) {
  return planck_from_cbp(twisted_product_cbp(cbp_from_planck(a), cbp_from_planck(b)));
}

TensorElem planck_coproduct(const PlanckElem& a) {
  TensorElem out;
  TensorElem raw = coproduct(cbp_from_planck(a));
  for (const auto& [ab, c] : raw.terms())
    out += tensor(c * planck_from_cbp(PlanckElem::monomial(ab.first)),
                  planck_from_cbp(PlanckElem::monomial(ab.second)));
  return out;
}

ParamScalar planck_counit(const PlanckElem& a) { return counit(cbp_from_planck(a)); }

PlanckElem planck_antipode(const PlanckElem& a) {
  return planck_from_cbp(antipode_twisted(cbp_from_planck(a)));
}

CocycleCheck check_planck_cocycle(int maxdeg, int grange, const ChiFn& chi_in,
                                  const ChiFn& chi_inv_in) {
  ChiFn chi = chi_in ? chi_in : [](const Mono& a, const Mono& b) { return chi_mono(a, b, false); };
  ChiFn chinv =
      chi_inv_in ? chi_inv_in : [](const Mono& a, const Mono& b) { return chi_mono(a, b, true); };
  CocycleCheck res;
  std::vector<Mono> basis;
  for (int n = 0; n <= maxdeg; ++n)
    for (int r = -grange; r <= grange; ++r) basis.push_back({0, r, n});

  auto split = [](const Mono& m) {
    std::vector<std::pair<std::pair<Mono, Mono>, long>> v;
    for (int j = 0; j <= m.n; ++j) v.push_back({{{0, m.r, j}, {0, m.r + j, m.n - j}}, binom(m.n, j)});
    return v;
  };
  auto fail = [&](bool& flag, const std::string& why) {
    if (flag && res.first_failure.empty()) res.first_failure = why;
    flag = false;
  };
  auto name = [](const Mono& m) {
    return "p^" + std::to_string(m.n) + " g^" + std::to_string(m.r);
  };

  // Unitality and invertibility on pairs.
  for (const Mono& a : basis) {
    ParamScalar eps = (a.n == 0) ? ParamScalar(1L) : ParamScalar();
    if (!(chi(Mono{}, a) == eps) || !(chi(a, Mono{}) == eps))
      fail(res.unital, "unitality at " + name(a));
    for (const Mono& b : basis) {
      ParamScalar l, r;
      for (const auto& [a12, wa] : split(a))
        for (const auto& [b12, wb] : split(b)) {
          ParamScalar w(wa * wb);
          l += w * chi(a12.first, b12.first) * chinv(a12.second, b12.second);
          r += w * chinv(a12.first, b12.first) * chi(a12.second, b12.second);
        }
      ParamScalar want = (a.n == 0 && b.n == 0) ? ParamScalar(1L) : ParamScalar();
      if (!(l == want) || !(r == want))
        fail(res.invertible, "inverse at " + name(a) + " (x) " + name(b));
    }
  }

  // chi(b1 (x) c1) chi(a (x) b2 c2) = chi(a1 (x) b1) chi(a2 b2 (x) c)
  for (const Mono& a : basis)
    for (const Mono& b : basis)
      for (const Mono& c : basis) {
        ++res.triples;
        ParamScalar lhs, rhs;
        for (const auto& [b12, wb] : split(b))
          for (const auto& [c12, wc] : split(c)) {
            ParamScalar x = chi(b12.first, c12.first);
            if (x.is_zero()) continue;
            Mono bc{0, b12.second.r + c12.second.r, b12.second.n + c12.second.n};
            lhs += ParamScalar(wb * wc) * x * chi(a, bc);
          }
        for (const auto& [a12, wa] : split(a))
          for (const auto& [b12, wb] : split(b)) {
            ParamScalar x = chi(a12.first, b12.first);
            if (x.is_zero()) continue;
            Mono ab{0, a12.second.r + b12.second.r, a12.second.n + b12.second.n};
            rhs += ParamScalar(wa * wb) * x * chi(ab, c);
          }
        if (!(lhs == rhs)) fail(res.identity, "cocycle identity at " + name(a) + ", " + name(b) + ", " + name(c));
      }
  return res;
}

bool cocycle_condition_check(int maxdeg, int grange) {
  return check_planck_cocycle(maxdeg, grange).ok();
}

}  // namespace hopftwist
