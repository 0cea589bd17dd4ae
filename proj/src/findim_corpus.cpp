// Groups, function and group algebras, cocycles and the fixed test corpus.
#include <array>

#include "findim_internal.hpp"
#include "hopftwist/errors.hpp"

namespace hopftwist {

using namespace detail;

int Group::inv(int a) const {
  for (int b = 0; b < n; ++b)
    if (mul(a, b) == identity) return b;
  throw Error(Errc::InvalidArgument, "group element without inverse");
}

Group Group::cyclic(int n) {
  if (n < 1) throw Error(Errc::InvalidArgument, "cyclic group order must be positive");
  Group G;
  G.n = n;
  G.table.resize(static_cast<size_t>(n * n));
  for (int a = 0; a < n; ++a) {
    G.names.push_back("g" + std::to_string(a));
    for (int b = 0; b < n; ++b) G.table[static_cast<size_t>(a * n + b)] = (a + b) % n;
  }
  return G;
}

Group Group::klein() {
  Group G;
  G.n = 4;
  G.table.resize(16);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) G.table[static_cast<size_t>(a * 4 + b)] = a ^ b;
  G.names = {"(0,0)", "(0,1)", "(1,0)", "(1,1)"};
  return G;
}

Group Group::s3() {
  // images of 0,1,2; (st)(x) = s(t(x))
  const std::array<std::array<int, 3>, 6> p = {{{0, 1, 2}, {1, 0, 2}, {2, 1, 0}, {0, 2, 1}, {1, 2, 0}, {2, 0, 1}}};
  Group G;
  G.n = 6;
  G.names = {"e", "(01)", "(02)", "(12)", "(012)", "(021)"};
  G.table.resize(36);
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) {
      std::array<int, 3> c{};
      for (int x = 0; x < 3; ++x) c[static_cast<size_t>(x)] = p[static_cast<size_t>(a)][static_cast<size_t>(p[static_cast<size_t>(b)][static_cast<size_t>(x)])];
      for (int k = 0; k < 6; ++k)
        if (p[static_cast<size_t>(k)] == c) G.table[static_cast<size_t>(a * 6 + b)] = k;
    }
  return G;
}

FinHopf function_algebra(const Group& G) {
  const int n = G.n;
  FinHopf H;
  H.dim = n;
  H.name = "k(G" + std::to_string(n) + ")";
  H.mul.assign(static_cast<size_t>(n * n), {});
  H.comul.assign(static_cast<size_t>(n), {});
  H.unit = zero_vec(n);
  H.counit = zero_vec(n);
  H.antipode = Mat(n, n);
  for (int g = 0; g < n; ++g) {
    H.mul[static_cast<size_t>(g * n + g)].emplace_back(g, GaussQ(1));
    H.unit[static_cast<size_t>(g)] = GaussQ(1);
    H.antipode(G.inv(g), g) = GaussQ(1);
  }
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) H.comul[static_cast<size_t>(G.mul(x, y))].emplace_back(x, y, GaussQ(1));
  H.counit[static_cast<size_t>(G.identity)] = GaussQ(1);
  H.finalize();
  return H;
}

FinHopf group_algebra(const Group& G) {
  const int n = G.n;
  FinHopf H;
  H.dim = n;
  H.name = "kG" + std::to_string(n);
  H.mul.assign(static_cast<size_t>(n * n), {});
  H.comul.assign(static_cast<size_t>(n), {});
  H.unit = basis_vec(n, G.identity);
  H.counit = Vec(static_cast<size_t>(n), GaussQ(1));
  H.antipode = Mat(n, n);
  for (int g = 0; g < n; ++g) {
    for (int h = 0; h < n; ++h) H.mul[static_cast<size_t>(g * n + h)].emplace_back(G.mul(g, h), GaussQ(1));
    H.comul[static_cast<size_t>(g)].emplace_back(g, g, GaussQ(1));
    H.antipode(G.inv(g), g) = GaussQ(1);
  }
  H.finalize();
  return H;
}

FinHopf sweedler() {
  FinHopf H;
  H.dim = 4;
  H.name = "Sweedler";
  H.mul.assign(16, {});
  auto m = [&](int a, int b, int k, long c) { H.mul[static_cast<size_t>(a * 4 + b)].emplace_back(k, GaussQ(c)); };
  // 0 = 1, 1 = g, 2 = x, 3 = gx
  for (int a = 0; a < 4; ++a) {
    m(0, a, a, 1);
    if (a) m(a, 0, a, 1);
  }
  m(1, 1, 0, 1);
  m(1, 2, 3, 1);
  m(1, 3, 2, 1);
  m(2, 1, 3, -1);
  m(3, 1, 2, -1);
  H.unit = basis_vec(4, 0);
  H.comul = {{{0, 0, GaussQ(1)}},
             {{1, 1, GaussQ(1)}},
             {{2, 0, GaussQ(1)}, {1, 2, GaussQ(1)}},
             {{3, 1, GaussQ(1)}, {0, 3, GaussQ(1)}}};
  H.counit = {GaussQ(1), GaussQ(1), GaussQ(0), GaussQ(0)};
  H.antipode = Mat(4, 4);
  H.antipode(0, 0) = GaussQ(1);
  H.antipode(1, 1) = GaussQ(1);
  H.antipode(3, 2) = GaussQ(-1);
  H.antipode(2, 3) = GaussQ(1);
  H.finalize();
  return H;
}

GaussQ klein_bicharacter(int u, int v) {
  const int b = u & 1, c = v >> 1;
  return GaussQ((b && c) ? -1 : 1);
}

Mat klein_bicharacter_literal() {
  Mat m(4, 4);
  for (int u = 0; u < 4; ++u)
    for (int v = 0; v < 4; ++v) m(u, v) = klein_bicharacter(u, v);
  return m;
}

Cocycle klein_bicharacter_algebra(const FinHopf& kfun) {
  if (kfun.dim != 4) throw Error(Errc::DimensionMismatch, "expects k(Z2 x Z2)");
  return make_cocycle(kfun, CocycleSide::algebra, klein_bicharacter_literal());
}

Cocycle klein_bicharacter_dual(const FinHopf& kfun) {
  if (kfun.dim != 4) throw Error(Errc::DimensionMismatch, "expects k(Z2 x Z2)");
  auto pair = [](int u, int x) { return __builtin_popcount(static_cast<unsigned>(u & x)) % 2 ? -1 : 1; };
  Mat m(4, 4);
  for (int x = 0; x < 4; ++x)
    for (int y = 0; y < 4; ++y) {
      GaussQ s;
      for (int u = 0; u < 4; ++u)
        for (int v = 0; v < 4; ++v) s += klein_bicharacter(u, v) * GaussQ(pair(u, x) * pair(v, y));
      m(x, y) = s / GaussQ(16);
    }
  return make_cocycle(kfun, CocycleSide::dual, m);
}

Vec random_unital_functional(const FinHopf& H, std::mt19937& rng) {
  std::uniform_int_distribution<int> dist(-2, 2);
  for (int attempt = 0; attempt < 100; ++attempt) {
    Vec u = zero_vec(H.dim);
    for (auto& x : u) x = GaussQ(mpq_class(dist(rng)), mpq_class(dist(rng)));
    axpy(u, GaussQ(1) - dot(u, H.unit), H.counit);
    if (convolution_inverse(H, u)) return u;
  }
  throw Error(Errc::InvalidArgument, "no invertible functional found");
}

Cocycle coboundary_cocycle(const FinHopf& H, const Vec& u) {
  const int n = H.dim;
  auto ui = convolution_inverse(H, u);
  if (!ui) throw Error(Errc::InvalidCocycle, "functional is not convolution invertible");
  Mat m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      GaussQ s;
      for (const auto& [a, b, c] : H.comul[static_cast<size_t>(i)])
        for (const auto& [x, y, c2] : H.comul[static_cast<size_t>(j)]) {
          GaussQ f = c * c2 * u[static_cast<size_t>(a)] * u[static_cast<size_t>(x)];
          if (!f.is_zero()) s += f * dot(*ui, mul_basis(H, b, y));
        }
      m(i, j) = s;
    }
  return make_cocycle(H, CocycleSide::dual, m);
}

std::vector<CorpusEntry> findim_corpus(unsigned seed) {
  std::vector<CorpusEntry> out;
  auto add = [&](std::string name, FinHopf H, std::optional<Cocycle> c) {
    H.name = name;
    Cocycle chi = c ? *c : trivial_cocycle(H, CocycleSide::dual);
    out.push_back({std::move(name), std::move(H), std::move(chi)});
  };
  add("k(Z2)", function_algebra(Group::cyclic(2)), std::nullopt);
  add("kZ3", group_algebra(Group::cyclic(3)), std::nullopt);
  add("kZ4", group_algebra(Group::cyclic(4)), std::nullopt);
  FinHopf kk = function_algebra(Group::klein());
  Cocycle kc = klein_bicharacter_dual(kk);
  add("k(Z2xZ2)", kk, kc);
  FinHopf ks = function_algebra(Group::s3());
  std::mt19937 rng(seed);
  Cocycle sc = coboundary_cocycle(ks, random_unital_functional(ks, rng));
  add("k(S3)", ks, sc);
  return out;
}

}  // namespace hopftwist
