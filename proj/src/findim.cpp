#include "hopftwist/findim.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "findim_internal.hpp"
#include "hopftwist/errors.hpp"

namespace hopftwist {

struct DeltaCache {
  std::mutex mu;
  std::map<int, std::vector<LegTerms>> by_legs;
};

namespace detail {

void acc(Sparse& m, long long k, const GaussQ& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = m.try_emplace(k, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) m.erase(it);
  }
}

Vec to_dense(const Sparse& s, int n) {
  Vec v = zero_vec(n);
  for (const auto& [k, c] : s) v[static_cast<size_t>(k)] = c;
  return v;
}

Vec mul_basis(const FinHopf& H, int i, int j) {
  Vec out = zero_vec(H.dim);
  for (const auto& [k, c] : H.mul[static_cast<size_t>(i * H.dim + j)]) out[static_cast<size_t>(k)] += c;
  return out;
}

GaussQ dot(const Vec& a, const Vec& b) {
  GaussQ s;
  for (size_t i = 0; i < a.size(); ++i)
    if (!a[i].is_zero() && !b[i].is_zero()) s += a[i] * b[i];
  return s;
}

// chi(e_a (x) y) for a functional given by data(i, j).
GaussQ eval_right(const Mat& chi, int a, const Vec& y) {
  GaussQ s;
  for (int l = 0; l < chi.cols(); ++l)
    if (!y[static_cast<size_t>(l)].is_zero()) s += chi(a, l) * y[static_cast<size_t>(l)];
  return s;
}

GaussQ eval_left(const Mat& chi, const Vec& x, int b) {
  GaussQ s;
  for (int l = 0; l < chi.rows(); ++l)
    if (!x[static_cast<size_t>(l)].is_zero()) s += x[static_cast<size_t>(l)] * chi(l, b);
  return s;
}

Vec tensor_vec(const Vec& a, const Vec& b) {
  Vec out = zero_vec(static_cast<int>(a.size() * b.size()));
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (size_t j = 0; j < b.size(); ++j)
      if (!b[j].is_zero()) out[i * b.size() + j] = a[i] * b[j];
  }
  return out;
}

Vec antipode_of(const FinHopf& H, const Vec& a) { return H.antipode * a; }

}  // namespace detail

using namespace detail;

void FinHopf::finalize() {
  const int n = dim;
  for (auto& terms : mul) {
    std::map<int, GaussQ> m;
    for (const auto& [k, c] : terms) {
      m[k] += c;
    }
    terms.clear();
    for (const auto& [k, c] : m)
      if (!c.is_zero()) terms.emplace_back(k, c);
  }
  for (auto& terms : comul) {
    std::map<std::pair<int, int>, GaussQ> m;
    for (const auto& [j, k, c] : terms) m[{j, k}] += c;
    terms.clear();
    for (const auto& [jk, c] : m)
      if (!c.is_zero()) terms.emplace_back(jk.first, jk.second, c);
  }
  if (antipode_inv.rows() == 0 && antipode.rows() == n && antipode.cols() == n) {
    if (auto inv = inverse(antipode)) antipode_inv = *inv;
  }
  cache = std::make_shared<DeltaCache>();
}

bool operator==(const FinHopf& a, const FinHopf& b) {
  return a.dim == b.dim && a.mul == b.mul && a.unit == b.unit && a.comul == b.comul &&
         a.counit == b.counit && a.antipode == b.antipode && a.antipode_inv == b.antipode_inv;
}

Vec product(const FinHopf& H, const Vec& a, const Vec& b) {
  const int n = H.dim;
  Vec out = zero_vec(n);
  for (int i = 0; i < n; ++i) {
    if (a[static_cast<size_t>(i)].is_zero()) continue;
    for (int j = 0; j < n; ++j) {
      if (b[static_cast<size_t>(j)].is_zero()) continue;
      GaussQ f = a[static_cast<size_t>(i)] * b[static_cast<size_t>(j)];
      for (const auto& [k, c] : H.mul[static_cast<size_t>(i * n + j)]) out[static_cast<size_t>(k)] += f * c;
    }
  }
  return out;
}

Vec coproduct(const FinHopf& H, const Vec& a) {
  const int n = H.dim;
  Vec out = zero_vec(n * n);
  for (int i = 0; i < n; ++i) {
    if (a[static_cast<size_t>(i)].is_zero()) continue;
    for (const auto& [j, k, c] : H.comul[static_cast<size_t>(i)])
      out[static_cast<size_t>(j * n + k)] += a[static_cast<size_t>(i)] * c;
  }
  return out;
}

GaussQ counit(const FinHopf& H, const Vec& a) { return dot(H.counit, a); }

Vec product2(const FinHopf& H, const Vec& a, const Vec& b) {
  const int n = H.dim;
  Sparse out;
  for (int x = 0; x < n * n; ++x) {
    if (a[static_cast<size_t>(x)].is_zero()) continue;
    const int i = x / n, j = x % n;
    for (int y = 0; y < n * n; ++y) {
      if (b[static_cast<size_t>(y)].is_zero()) continue;
      const int k = y / n, l = y % n;
      GaussQ f = a[static_cast<size_t>(x)] * b[static_cast<size_t>(y)];
      for (const auto& [p, c1] : H.mul[static_cast<size_t>(i * n + k)])
        for (const auto& [q, c2] : H.mul[static_cast<size_t>(j * n + l)]) acc(out, p * n + q, f * c1 * c2);
    }
  }
  return to_dense(out, n * n);
}

const LegTerms& iterated_coproduct(const FinHopf& H, int i, int legs) {
  if (legs < 1 || legs > 8) throw Error(Errc::IndexOutOfRange, "iterated coproduct legs must be 1..8");
  if (i < 0 || i >= H.dim) throw Error(Errc::IndexOutOfRange, "basis index");
  if (!H.cache) throw Error(Errc::InvalidArgument, "FinHopf not finalized");
  DeltaCache& cache = *H.cache;
  std::lock_guard<std::mutex> lock(cache.mu);
  auto it = cache.by_legs.find(legs);
  if (it != cache.by_legs.end()) return it->second[static_cast<size_t>(i)];
  std::vector<LegTerms> all(static_cast<size_t>(H.dim));
  for (int b = 0; b < H.dim; ++b) {
    std::map<std::vector<int>, GaussQ> cur;
    cur[{b}] = GaussQ(1);
    for (int l = 1; l < legs; ++l) {
      std::map<std::vector<int>, GaussQ> next;
      for (const auto& [idx, c] : cur)
        for (const auto& [j, k, c2] : H.comul[static_cast<size_t>(idx.back())]) {
          std::vector<int> ni(idx.begin(), idx.end() - 1);
          ni.push_back(j);
          ni.push_back(k);
          GaussQ& slot = next[ni];
          slot += c * c2;
        }
      cur.clear();
      for (auto& [k, v] : next)
        if (!v.is_zero()) cur.emplace(k, v);
    }
    for (auto& [k, v] : cur) all[static_cast<size_t>(b)].emplace_back(k, v);
  }
  auto [pos, _] = cache.by_legs.emplace(legs, std::move(all));
  return pos->second[static_cast<size_t>(i)];
}

// ---- axioms ----

bool AxiomReport::ok() const {
  return std::all_of(axioms.begin(), axioms.end(), [](const AxiomResult& a) { return a.ok; });
}

bool AxiomReport::passed(const std::string& name) const {
  for (const auto& a : axioms)
    if (a.name == name) return a.ok;
  throw Error(Errc::InvalidArgument, "unknown axiom " + name);
}

std::string AxiomReport::str() const {
  std::string s;
  for (const auto& a : axioms) {
    s += a.name + ": " + (a.ok ? "pass" : "FAIL at " + a.first_failure) + "\n";
  }
  return s;
}

namespace {

void check_shapes(const FinHopf& H) {
  const int n = H.dim;
  auto bad = [](const std::string& w) { throw Error(Errc::DimensionMismatch, w); };
  if (n <= 0) bad("dim must be positive");
  if (static_cast<int>(H.mul.size()) != n * n) bad("mul has wrong size");
  if (static_cast<int>(H.comul.size()) != n) bad("comul has wrong size");
  if (static_cast<int>(H.unit.size()) != n) bad("unit has wrong size");
  if (static_cast<int>(H.counit.size()) != n) bad("counit has wrong size");
  if (H.antipode.rows() != n || H.antipode.cols() != n) bad("antipode has wrong shape");
  if (H.antipode_inv.rows() != 0 && (H.antipode_inv.rows() != n || H.antipode_inv.cols() != n))
    bad("antipode_inv has wrong shape");
  for (const auto& t : H.mul)
    for (const auto& [k, c] : t)
      if (k < 0 || k >= n) bad("mul index out of range");
  for (const auto& t : H.comul)
    for (const auto& [j, k, c] : t)
      if (j < 0 || j >= n || k < 0 || k >= n) bad("comul index out of range");
}

std::string at(std::initializer_list<int> idx) {
  std::string s;
  const char* names[] = {"i", "j", "k"};
  int p = 0;
  for (int v : idx) {
    if (p) s += " ";
    s += std::string(names[p++]) + "=" + std::to_string(v);
  }
  return s;
}

}  // namespace

AxiomReport check_hopf(const FinHopf& H) {
  check_shapes(H);
  if (!H.cache) throw Error(Errc::InvalidArgument, "FinHopf not finalized");
  const int n = H.dim;
  AxiomReport rep;
  auto record = [&](const std::string& name, const std::string& fail) {
    rep.axioms.push_back({name, fail.empty(), fail});
  };

  // associativity
  {
    std::string fail;
    for (int i = 0; i < n && fail.empty(); ++i)
      for (int j = 0; j < n && fail.empty(); ++j) {
        Vec ij = mul_basis(H, i, j);
        for (int k = 0; k < n && fail.empty(); ++k) {
          Vec l = product(H, ij, basis_vec(n, k));
          Vec r = product(H, basis_vec(n, i), mul_basis(H, j, k));
          if (l != r) fail = at({i, j, k});
        }
      }
    record("associativity", fail);
  }
  // unit
  {
    std::string fail;
    for (int i = 0; i < n && fail.empty(); ++i) {
      Vec e = basis_vec(n, i);
      if (product(H, H.unit, e) != e || product(H, e, H.unit) != e) fail = at({i});
    }
    record("unit", fail);
  }
  // coassociativity
  {
    std::string fail;
    for (int i = 0; i < n && fail.empty(); ++i) {
      Sparse l, r;
      for (const auto& [a, b, c] : H.comul[static_cast<size_t>(i)]) {
        for (const auto& [x, y, c2] : H.comul[static_cast<size_t>(a)]) acc(l, (static_cast<long long>(x) * n + y) * n + b, c * c2);
        for (const auto& [x, y, c2] : H.comul[static_cast<size_t>(b)]) acc(r, (static_cast<long long>(a) * n + x) * n + y, c * c2);
      }
      if (l != r) fail = at({i});
    }
    record("coassociativity", fail);
  }
  // counit
  {
    std::string fail;
    for (int i = 0; i < n && fail.empty(); ++i) {
      Vec l = zero_vec(n), r = zero_vec(n);
      for (const auto& [a, b, c] : H.comul[static_cast<size_t>(i)]) {
        l[static_cast<size_t>(b)] += c * H.counit[static_cast<size_t>(a)];
        r[static_cast<size_t>(a)] += c * H.counit[static_cast<size_t>(b)];
      }
      Vec e = basis_vec(n, i);
      if (l != e || r != e) fail = at({i});
    }
    record("counit", fail);
  }
  // bialgebra: Delta and eps multiplicative and unital
  {
    std::string fail;
    if (coproduct(H, H.unit) != tensor_vec(H.unit, H.unit)) fail = "Delta(1)";
    if (fail.empty() && counit(H, H.unit) != GaussQ(1)) fail = "eps(1)";
    for (int i = 0; i < n && fail.empty(); ++i)
      for (int j = 0; j < n && fail.empty(); ++j) {
        Vec ij = mul_basis(H, i, j);
        Sparse l, r;
        for (int k = 0; k < n; ++k) {
          if (ij[static_cast<size_t>(k)].is_zero()) continue;
          for (const auto& [a, b, c] : H.comul[static_cast<size_t>(k)]) acc(l, a * n + b, ij[static_cast<size_t>(k)] * c);
        }
        for (const auto& [a, b, c] : H.comul[static_cast<size_t>(i)])
          for (const auto& [x, y, c2] : H.comul[static_cast<size_t>(j)]) {
            GaussQ f = c * c2;
            for (const auto& [p, c3] : H.mul[static_cast<size_t>(a * n + x)])
              for (const auto& [q, c4] : H.mul[static_cast<size_t>(b * n + y)]) acc(r, p * n + q, f * c3 * c4);
          }
        if (l != r) fail = at({i, j});
        else if (counit(H, ij) != H.counit[static_cast<size_t>(i)] * H.counit[static_cast<size_t>(j)])
          fail = "eps " + at({i, j});
      }
    record("bialgebra", fail);
  }
  // antipode
  {
    std::string fail;
    for (int i = 0; i < n && fail.empty(); ++i) {
      Vec l = zero_vec(n), r = zero_vec(n);
      for (const auto& [a, b, c] : H.comul[static_cast<size_t>(i)]) {
        axpy(l, c, product(H, H.antipode.col(a), basis_vec(n, b)));
        axpy(r, c, product(H, basis_vec(n, a), H.antipode.col(b)));
      }
      Vec want = H.counit[static_cast<size_t>(i)] * H.unit;
      if (l != want || r != want) fail = at({i});
    }
    record("antipode", fail);
  }
  {
    std::string fail;
    if (H.antipode_inv.rows() == 0) fail = "missing";
    else if (H.antipode * H.antipode_inv != Mat::identity(n) || H.antipode_inv * H.antipode != Mat::identity(n))
      fail = "S S^-1 != id";
    record("antipode_inverse", fail);
  }
  return rep;
}

// ---- dual, opposite, tensor ----

FinHopf dual(const FinHopf& H) {
  const int n = H.dim;
  FinHopf D;
  D.dim = n;
  D.name = H.name.empty() ? "" : "dual(" + H.name + ")";
  D.mul.assign(static_cast<size_t>(n * n), {});
  for (int i = 0; i < n; ++i)
    for (const auto& [j, k, c] : H.comul[static_cast<size_t>(i)]) D.mul[static_cast<size_t>(j * n + k)].emplace_back(i, c);
  D.unit = H.counit;
  D.comul.assign(static_cast<size_t>(n), {});
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (const auto& [k, c] : H.mul[static_cast<size_t>(i * n + j)]) D.comul[static_cast<size_t>(k)].emplace_back(i, j, c);
  D.counit = H.unit;
  D.antipode = H.antipode.transpose();
  if (H.antipode_inv.rows()) D.antipode_inv = H.antipode_inv.transpose();
  D.finalize();
  return D;
}

FinHopf opposite(const FinHopf& H) {
  const int n = H.dim;
  FinHopf O = H;
  O.name = H.name.empty() ? "" : H.name + "^op";
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) O.mul[static_cast<size_t>(i * n + j)] = H.mul[static_cast<size_t>(j * n + i)];
  if (H.antipode_inv.rows() == 0) throw Error(Errc::InvalidArgument, "opposite needs an invertible antipode");
  O.antipode = H.antipode_inv;
  O.antipode_inv = H.antipode;
  O.finalize();
  return O;
}

FinHopf tensor_product(const FinHopf& H, const FinHopf& K) {
  const int n = H.dim, m = K.dim, N = n * m;
  FinHopf T;
  T.dim = N;
  T.name = H.name + "(x)" + K.name;
  T.mul.assign(static_cast<size_t>(N * N), {});
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < m; ++l)
          for (const auto& [p, c1] : H.mul[static_cast<size_t>(i * n + k)])
            for (const auto& [q, c2] : K.mul[static_cast<size_t>(j * m + l)])
              T.mul[static_cast<size_t>((i * m + j) * N + k * m + l)].emplace_back(p * m + q, c1 * c2);
  T.unit = tensor_vec(H.unit, K.unit);
  T.comul.assign(static_cast<size_t>(N), {});
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j)
      for (const auto& [a, b, c1] : H.comul[static_cast<size_t>(i)])
        for (const auto& [x, y, c2] : K.comul[static_cast<size_t>(j)])
          T.comul[static_cast<size_t>(i * m + j)].emplace_back(a * m + x, b * m + y, c1 * c2);
  T.counit = tensor_vec(H.counit, K.counit);
  T.antipode = kron(H.antipode, K.antipode);
  if (H.antipode_inv.rows() && K.antipode_inv.rows()) T.antipode_inv = kron(H.antipode_inv, K.antipode_inv);
  T.finalize();
  return T;
}

// ---- cocycles ----

std::optional<Vec> convolution_inverse(const FinHopf& H, const Vec& u) {
  const int n = H.dim;
  Mat M(n, n);
  for (int i = 0; i < n; ++i)
    for (const auto& [a, b, c] : H.comul[static_cast<size_t>(i)]) M(i, b) += c * u[static_cast<size_t>(a)];
  auto x = solve(M, H.counit);
  if (!x) return std::nullopt;
  // check the other side as well
  Vec r = zero_vec(n);
  for (int i = 0; i < n; ++i)
    for (const auto& [a, b, c] : H.comul[static_cast<size_t>(i)])
      r[static_cast<size_t>(i)] += c * (*x)[static_cast<size_t>(a)] * u[static_cast<size_t>(b)];
  if (r != H.counit) return std::nullopt;
  return x;
}

namespace {

// (chi * psi)(e_i (x) e_j) on H (x) H.
Mat convolve2(const FinHopf& H, const Mat& chi, const Mat& psi) {
  const int n = H.dim;
  Mat out(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      GaussQ s;
      for (const auto& [a, b, c] : H.comul[static_cast<size_t>(i)])
        for (const auto& [x, y, c2] : H.comul[static_cast<size_t>(j)]) {
          const GaussQ& l = chi(a, x);
          const GaussQ& r = psi(b, y);
          if (!l.is_zero() && !r.is_zero()) s += c * c2 * l * r;
        }
      out(i, j) = s;
    }
  return out;
}

Mat eps2(const FinHopf& H) {
  const int n = H.dim;
  Mat e(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) e(i, j) = H.counit[static_cast<size_t>(i)] * H.counit[static_cast<size_t>(j)];
  return e;
}

Vec mat_to_vec(const Mat& m) {
  Vec v = zero_vec(m.rows() * m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) v[static_cast<size_t>(i * m.cols() + j)] = m(i, j);
  return v;
}

Mat vec_to_mat(const Vec& v, int n) {
  Mat m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = v[static_cast<size_t>(i * n + j)];
  return m;
}

}  // namespace

Cocycle make_cocycle(const FinHopf& H, CocycleSide side, const Mat& data) {
  const int n = H.dim;
  if (data.rows() != n || data.cols() != n) throw Error(Errc::DimensionMismatch, "cocycle data must be dim x dim");
  Cocycle c{side, data, {}};
  if (side == CocycleSide::dual) {
    // solve (chi * psi) = eps (x) eps for psi
    const int N = n * n;
    Mat M(N, N);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (const auto& [a, b, c1] : H.comul[static_cast<size_t>(i)])
          for (const auto& [x, y, c2] : H.comul[static_cast<size_t>(j)]) {
            const GaussQ& l = data(a, x);
            if (!l.is_zero()) M(i * n + j, b * n + y) += c1 * c2 * l;
          }
    auto psi = solve(M, mat_to_vec(eps2(H)));
    if (!psi) throw Error(Errc::InvalidCocycle, "cocycle is not convolution invertible");
    c.inverse = vec_to_mat(*psi, n);
    if (convolve2(H, c.inverse, data) != eps2(H)) throw Error(Errc::InvalidCocycle, "no two-sided convolution inverse");
  } else {
    const int N = n * n;
    Vec X = mat_to_vec(data);
    Mat L(N, N);
    for (int y = 0; y < N; ++y) L.set_col(y, product2(H, X, basis_vec(N, y)));
    Vec one = tensor_vec(H.unit, H.unit);
    auto Y = solve(L, one);
    if (!Y) throw Error(Errc::InvalidCocycle, "cocycle is not invertible in H (x) H");
    if (product2(H, *Y, X) != one) throw Error(Errc::InvalidCocycle, "no two-sided inverse in H (x) H");
    c.inverse = vec_to_mat(*Y, n);
  }
  return c;
}

Cocycle trivial_cocycle(const FinHopf& H, CocycleSide side) {
  const int n = H.dim;
  Mat d(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      d(i, j) = side == CocycleSide::dual ? H.counit[static_cast<size_t>(i)] * H.counit[static_cast<size_t>(j)]
                                          : H.unit[static_cast<size_t>(i)] * H.unit[static_cast<size_t>(j)];
  return {side, d, d};
}

Cocycle inverse_of(const Cocycle& c) { return {c.side, c.inverse, c.data}; }

bool check_cocycle(const FinHopf& H, const Cocycle& chi) {
  const int n = H.dim;
  if (chi.data.rows() != n || chi.data.cols() != n || chi.inverse.rows() != n || chi.inverse.cols() != n)
    return false;
  const Mat& X = chi.data;
  if (chi.side == CocycleSide::dual) {
    // unital on both sides
    for (int j = 0; j < n; ++j) {
      if (eval_left(X, H.unit, j) != H.counit[static_cast<size_t>(j)]) return false;
      if (eval_right(X, j, H.unit) != H.counit[static_cast<size_t>(j)]) return false;
    }
    if (convolve2(H, X, chi.inverse) != eps2(H) || convolve2(H, chi.inverse, X) != eps2(H)) return false;
    // chi(g1 (x) f1) chi(h (x) g2 f2) = chi(h1 (x) g1) chi(h2 g2 (x) f)
    for (int h = 0; h < n; ++h)
      for (int g = 0; g < n; ++g)
        for (int f = 0; f < n; ++f) {
          GaussQ l, r;
          for (const auto& [a, b, c1] : H.comul[static_cast<size_t>(g)])
            for (const auto& [x, y, c2] : H.comul[static_cast<size_t>(f)]) {
              if (X(a, x).is_zero()) continue;
              l += c1 * c2 * X(a, x) * eval_right(X, h, mul_basis(H, b, y));
            }
          for (const auto& [a, b, c1] : H.comul[static_cast<size_t>(h)])
            for (const auto& [x, y, c2] : H.comul[static_cast<size_t>(g)]) {
              if (X(a, x).is_zero()) continue;
              r += c1 * c2 * X(a, x) * eval_left(X, mul_basis(H, b, y), f);
            }
          if (l != r) return false;
        }
    return true;
  }
  // algebra side: chi_23 (id (x) Delta) chi = chi_12 (Delta (x) id) chi
  const long long n2 = static_cast<long long>(n) * n;
  auto prod3 = [&](const Sparse& A, const Sparse& B) {
    Sparse out;
    for (const auto& [ka, ca] : A)
      for (const auto& [kb, cb] : B) {
        const int a1 = static_cast<int>(ka / n2), a2 = static_cast<int>((ka / n) % n), a3 = static_cast<int>(ka % n);
        const int b1 = static_cast<int>(kb / n2), b2 = static_cast<int>((kb / n) % n), b3 = static_cast<int>(kb % n);
        for (const auto& [p, c1] : H.mul[static_cast<size_t>(a1 * n + b1)])
          for (const auto& [q, c2] : H.mul[static_cast<size_t>(a2 * n + b2)])
            for (const auto& [r, c3] : H.mul[static_cast<size_t>(a3 * n + b3)])
              acc(out, p * n2 + q * n + r, ca * cb * c1 * c2 * c3);
      }
    return out;
  };
  Sparse chi23, chi12, idD, Did;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const GaussQ& c = X(i, j);
      if (c.is_zero()) continue;
      for (int u = 0; u < n; ++u) {
        acc(chi23, u * n2 + i * n + j, c * H.unit[static_cast<size_t>(u)]);
        acc(chi12, i * n2 + j * n + u, c * H.unit[static_cast<size_t>(u)]);
      }
      for (const auto& [a, b, c2] : H.comul[static_cast<size_t>(j)]) acc(idD, i * n2 + a * n + b, c * c2);
      for (const auto& [a, b, c2] : H.comul[static_cast<size_t>(i)]) acc(Did, a * n2 + b * n + j, c * c2);
    }
  if (prod3(chi23, idD) != prod3(chi12, Did)) return false;
  // counital on both legs
  Vec l = zero_vec(n), r = zero_vec(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      l[static_cast<size_t>(j)] += H.counit[static_cast<size_t>(i)] * X(i, j);
      r[static_cast<size_t>(i)] += X(i, j) * H.counit[static_cast<size_t>(j)];
    }
  if (l != H.unit || r != H.unit) return false;
  Vec one = tensor_vec(H.unit, H.unit);
  return product2(H, mat_to_vec(X), mat_to_vec(chi.inverse)) == one &&
         product2(H, mat_to_vec(chi.inverse), mat_to_vec(X)) == one;
}

// ---- twisting ----

FinHopf twist(const FinHopf& H, const Cocycle& chi) {
  if (!check_cocycle(H, chi)) throw Error(Errc::InvalidCocycle, "cocycle check failed");
  const int n = H.dim;
  FinHopf T = H;
  T.name = H.name.empty() ? "" : H.name + (chi.side == CocycleSide::dual ? "^chi" : "_chi");
  T.antipode_inv = Mat();
  if (chi.side == CocycleSide::dual) {
    const Mat& X = chi.data;
    const Mat& Xi = chi.inverse;
    T.mul.assign(static_cast<size_t>(n * n), {});
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        Sparse out;
        for (const auto& [li, ci] : iterated_coproduct(H, i, 3))
          for (const auto& [lj, cj] : iterated_coproduct(H, j, 3)) {
            const GaussQ& l = X(li[0], lj[0]);
            const GaussQ& r = Xi(li[2], lj[2]);
            if (l.is_zero() || r.is_zero()) continue;
            GaussQ f = ci * cj * l * r;
            for (const auto& [k, c] : H.mul[static_cast<size_t>(li[1] * n + lj[1])]) acc(out, k, f * c);
          }
        for (const auto& [k, c] : out) T.mul[static_cast<size_t>(i * n + j)].emplace_back(static_cast<int>(k), c);
      }
    // U(h) = chi(h1 (x) S h2)
    Mat XS = X * H.antipode;
    Vec U = zero_vec(n);
    for (int i = 0; i < n; ++i)
      for (const auto& [a, b, c] : H.comul[static_cast<size_t>(i)]) U[static_cast<size_t>(i)] += c * XS(a, b);
    auto Ui = convolution_inverse(H, U);
    if (!Ui) throw Error(Errc::InvalidCocycle, "U is not convolution invertible");
    Mat S(n, n);
    for (int i = 0; i < n; ++i) {
      Vec col = zero_vec(n);
      for (const auto& [li, c] : iterated_coproduct(H, i, 3)) {
        GaussQ f = c * U[static_cast<size_t>(li[0])] * (*Ui)[static_cast<size_t>(li[2])];
        if (!f.is_zero()) axpy(col, f, H.antipode.col(li[1]));
      }
      S.set_col(i, col);
    }
    T.antipode = S;
  } else {
    const Vec X = mat_to_vec(chi.data), Xi = mat_to_vec(chi.inverse);
    T.comul.assign(static_cast<size_t>(n), {});
    for (int i = 0; i < n; ++i) {
      Vec t = product2(H, product2(H, X, coproduct(H, basis_vec(n, i))), Xi);
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          if (!t[static_cast<size_t>(a * n + b)].is_zero())
            T.comul[static_cast<size_t>(i)].emplace_back(a, b, t[static_cast<size_t>(a * n + b)]);
    }
    // U = chi(1) S chi(2)
    Vec U = zero_vec(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (!chi.data(i, j).is_zero()) axpy(U, chi.data(i, j), product(H, basis_vec(n, i), H.antipode.col(j)));
    Mat L(n, n);
    for (int j = 0; j < n; ++j) L.set_col(j, product(H, U, basis_vec(n, j)));
    auto Ui = solve(L, H.unit);
    if (!Ui) throw Error(Errc::InvalidCocycle, "U is not invertible");
    Mat S(n, n);
    for (int i = 0; i < n; ++i) S.set_col(i, product(H, product(H, U, H.antipode.col(i)), *Ui));
    T.antipode = S;
  }
  T.finalize();
  return T;
}

// ---- quantum double ----

FinHopf quantum_double(const FinHopf& H) {
  const int n = H.dim, N = n * n;
  if (H.antipode_inv.rows() == 0) throw Error(Errc::InvalidArgument, "the double needs an invertible antipode");
  // M[(k*n + m)*n + s] = S(e_k) e_s e_m
  std::vector<Vec> M(static_cast<size_t>(n * n * n));
  for (int k = 0; k < n; ++k)
    for (int s = 0; s < n; ++s) {
      Vec ks = product(H, H.antipode.col(k), basis_vec(n, s));
      for (int m = 0; m < n; ++m) M[static_cast<size_t>((k * n + m) * n + s)] = product(H, ks, basis_vec(n, m));
    }
  FinHopf D;
  D.dim = N;
  D.name = H.name.empty() ? "" : "D(" + H.name + ")";
  D.mul.assign(static_cast<size_t>(N * N), {});
  for (int a = 0; a < n; ++a)
    for (int i = 0; i < n; ++i)
      for (int b = 0; b < n; ++b)
        for (int j = 0; j < n; ++j) {
          // (f^a (x) e_i)(f^b (x) e_j) = sum (t -> f^b(S h1 t1 h3) f^a(t2)) (x) h2 e_j
          Sparse out;
          for (const auto& [hi, c] : iterated_coproduct(H, i, 3)) {
            Vec lj = mul_basis(H, hi[1], j);
            if (is_zero(lj)) continue;
            for (int s = 0; s < n; ++s) {
              GaussQ val;
              for (const auto& [s1, s2, d] : H.comul[static_cast<size_t>(s)]) {
                if (s2 != a) continue;
                const GaussQ& m = M[static_cast<size_t>((hi[0] * n + hi[2]) * n + s1)][static_cast<size_t>(b)];
                if (!m.is_zero()) val += d * m;
              }
              if (val.is_zero()) continue;
              GaussQ f = c * val;
              for (int t = 0; t < n; ++t)
                if (!lj[static_cast<size_t>(t)].is_zero()) acc(out, s * n + t, f * lj[static_cast<size_t>(t)]);
            }
          }
          for (const auto& [k, v] : out) D.mul[static_cast<size_t>((a * n + i) * N + b * n + j)].emplace_back(static_cast<int>(k), v);
        }
  D.unit = tensor_vec(H.counit, H.unit);
  // Delta(f^a (x) e_i) = (f^a)1 (x) e_i1 (x) (f^a)2 (x) e_i2 with <f^a, xy> = <f^a_1, x><f^a_2, y>
  std::vector<std::vector<std::tuple<int, int, GaussQ>>> fcop(static_cast<size_t>(n));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (const auto& [a, c] : H.mul[static_cast<size_t>(x * n + y)]) fcop[static_cast<size_t>(a)].emplace_back(x, y, c);
  D.comul.assign(static_cast<size_t>(N), {});
  for (int a = 0; a < n; ++a)
    for (int i = 0; i < n; ++i)
      for (const auto& [x, y, c1] : fcop[static_cast<size_t>(a)])
        for (const auto& [i1, i2, c2] : H.comul[static_cast<size_t>(i)])
          D.comul[static_cast<size_t>(a * n + i)].emplace_back(x * n + i1, y * n + i2, c1 * c2);
  D.counit = tensor_vec(H.unit, H.counit);
  D.antipode = Mat::identity(N);  // placeholder so finalize() can run before products
  D.finalize();
  // S(phi (x) h) = (1 (x) S h)(phi o S^-1 (x) 1)
  Mat S(N, N);
  for (int a = 0; a < n; ++a)
    for (int i = 0; i < n; ++i) {
      Vec left = tensor_vec(H.counit, H.antipode.col(i));
      Vec phi = zero_vec(n);
      for (int s = 0; s < n; ++s) phi[static_cast<size_t>(s)] = H.antipode_inv(a, s);
      Vec right = tensor_vec(phi, H.unit);
      S.set_col(a * n + i, product(D, left, right));
    }
  D.antipode = S;
  D.antipode_inv = Mat();
  D.finalize();
  return D;
}

}  // namespace hopftwist
