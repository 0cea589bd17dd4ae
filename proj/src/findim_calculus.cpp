// Calculi from sub-crossed modules of ker eps, degree-2 prolongations and the
// Fourier transform on a finite-dimensional Hopf algebra.
#include "findim_internal.hpp"
#include "hopftwist/errors.hpp"

namespace hopftwist {

using namespace detail;

CalculusData calculus_from_ideal(const FinHopf& H, const std::vector<Vec>& gens) {
  const int n = H.dim;
  for (const auto& g : gens) {
    if (static_cast<int>(g.size()) != n) throw Error(Errc::DimensionMismatch, "generator size");
    if (!counit(H, g).is_zero()) throw Error(Errc::NotInKernel, "generator has nonzero counit");
  }
  CrossedModule self = self_crossed_module(H);
  Subspace M = crossed_closure(self, gens);
  Mat eps(1, n);
  for (int i = 0; i < n; ++i) eps(0, i) = H.counit[static_cast<size_t>(i)];
  Subspace all = M;
  std::vector<Vec> comp;
  for (const auto& k : nullspace(eps))
    if (all.add(k)) comp.push_back(k);
  const int q = static_cast<int>(comp.size());
  std::vector<Vec> cols = M.basis();
  for (const auto& c : comp) cols.push_back(c);
  cols.push_back(H.unit);
  auto Binv = inverse(Mat::from_columns(cols, n));
  if (!Binv) throw Error(Errc::InvalidArgument, "basis of ker eps plus unit is singular");
  Mat P(q, n);
  for (int r = 0; r < q; ++r)
    for (int j = 0; j < n; ++j) P(r, j) = (*Binv)(M.dim() + r, j);

  CalculusData c{H, M, q, P, Mat(q * n, n), CrossedModule{H, q, Mat(q, n * q), Mat(n * q, q)}};
  for (int r = 0; r < q; ++r) {
    for (int i = 0; i < n; ++i) c.V.action.set_col(i * q + r, P * self.act(i, comp[static_cast<size_t>(r)]));
    Vec b = self.coact(comp[static_cast<size_t>(r)]);
    Vec col = zero_vec(n * q);
    for (int a = 0; a < n; ++a) {
      Vec s(b.begin() + a * n, b.begin() + (a + 1) * n);
      Vec ps = P * s;
      for (int x = 0; x < q; ++x) col[static_cast<size_t>(a * q + x)] = ps[static_cast<size_t>(x)];
    }
    c.V.coaction.set_col(r, col);
  }
  // d e_j = pi(e_a - eps(e_a)) (x) e_b over Delta e_j
  for (int j = 0; j < n; ++j) {
    Vec col = zero_vec(q * n);
    for (const auto& [a, b, cf] : H.comul[static_cast<size_t>(j)])
      for (int r = 0; r < q; ++r)
        if (!P(r, a).is_zero()) col[static_cast<size_t>(r * n + b)] += cf * P(r, a);
    c.d.set_col(j, col);
  }
  return c;
}

Vec form_left_mul(const CalculusData& c, const Vec& h, const Vec& w) {
  const FinHopf& H = c.hopf;
  const int n = H.dim, q = c.vdim;
  Vec out = zero_vec(q * n);
  for (int i = 0; i < n; ++i) {
    if (h[static_cast<size_t>(i)].is_zero()) continue;
    for (int v = 0; v < q; ++v)
      for (int g = 0; g < n; ++g) {
        const GaussQ& x = w[static_cast<size_t>(v * n + g)];
        if (x.is_zero()) continue;
        GaussQ f = h[static_cast<size_t>(i)] * x;
        for (const auto& [a, b, cf] : H.comul[static_cast<size_t>(i)])
          axpy(out, f * cf, tensor_vec(c.V.act(a, basis_vec(q, v)), mul_basis(H, b, g)));
      }
  }
  return out;
}

Vec form_right_mul(const CalculusData& c, const Vec& w, const Vec& h) {
  const int n = c.hopf.dim, q = c.vdim;
  Vec out = zero_vec(q * n);
  for (int v = 0; v < q; ++v) {
    Vec g(w.begin() + v * n, w.begin() + (v + 1) * n);
    if (is_zero(g)) continue;
    Vec gh = product(c.hopf, g, h);
    for (int k = 0; k < n; ++k) out[static_cast<size_t>(v * n + k)] = gh[static_cast<size_t>(k)];
  }
  return out;
}

bool leibniz_holds(const CalculusData& c) {
  const FinHopf& H = c.hopf;
  const int n = H.dim;
  if (!is_zero(c.d * H.unit)) return false;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Vec l = c.d * mul_basis(H, i, j);
      Vec r = form_right_mul(c, c.d.col(i), basis_vec(n, j)) + form_left_mul(c, basis_vec(n, i), c.d.col(j));
      if (l != r) return false;
    }
  return true;
}

bool surjective(const CalculusData& c) {
  const int n = c.hopf.dim;
  Subspace S(c.vdim * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) S.add(form_left_mul(c, basis_vec(n, i), c.d.col(j)));
  return S.dim() == c.vdim * n;
}

namespace {

// omega (x)_H eta in V (x) V (x) H: (v (x) g) (x) (w (x) k) = v (x) g1 |> w (x) g2 k.
Vec tensor_over_H(const CalculusData& c, const Vec& a, const Vec& b) {
  const FinHopf& H = c.hopf;
  const int n = H.dim, q = c.vdim;
  Vec out = zero_vec(q * q * n);
  for (int v = 0; v < q; ++v)
    for (int g = 0; g < n; ++g) {
      const GaussQ& x = a[static_cast<size_t>(v * n + g)];
      if (x.is_zero()) continue;
      Vec gb = form_left_mul(c, basis_vec(n, g), b);
      for (int k = 0; k < q * n; ++k)
        if (!gb[static_cast<size_t>(k)].is_zero()) out[static_cast<size_t>(v * q * n + k)] += x * gb[static_cast<size_t>(k)];
    }
  return out;
}

// Left action, right action and coactions on V (x) V (x) H.
Vec left2(const CalculusData& c, int i, const Vec& t) {
  const FinHopf& H = c.hopf;
  const int n = H.dim, q = c.vdim;
  Vec out = zero_vec(q * q * n);
  for (int v = 0; v < q; ++v)
    for (int w = 0; w < q; ++w)
      for (int k = 0; k < n; ++k) {
        const GaussQ& x = t[static_cast<size_t>((v * q + w) * n + k)];
        if (x.is_zero()) continue;
        for (const auto& [l, cf] : iterated_coproduct(H, i, 3)) {
          Vec vw = tensor_vec(c.V.act(l[0], basis_vec(q, v)), c.V.act(l[1], basis_vec(q, w)));
          axpy(out, x * cf, tensor_vec(vw, mul_basis(H, l[2], k)));
        }
      }
  return out;
}

Vec right2(const CalculusData& c, const Vec& t, int i) {
  const int n = c.hopf.dim, q = c.vdim;
  Vec out = zero_vec(q * q * n);
  for (int vw = 0; vw < q * q; ++vw)
    for (int k = 0; k < n; ++k) {
      const GaussQ& x = t[static_cast<size_t>(vw * n + k)];
      if (x.is_zero()) continue;
      for (const auto& [p, cf] : c.hopf.mul[static_cast<size_t>(k * n + i)]) out[static_cast<size_t>(vw * n + p)] += x * cf;
    }
  return out;
}

// Delta_L into H (x) (V (x) V (x) H): v(1) w(1) k1 (x) v(inf) (x) w(inf) (x) k2.
Vec lco2(const CalculusData& c, const Vec& t) {
  const FinHopf& H = c.hopf;
  const int n = H.dim, q = c.vdim, O = q * q * n;
  Vec out = zero_vec(n * O);
  for (int v = 0; v < q; ++v)
    for (int w = 0; w < q; ++w)
      for (int k = 0; k < n; ++k) {
        const GaussQ& x = t[static_cast<size_t>((v * q + w) * n + k)];
        if (x.is_zero()) continue;
        Vec bv = c.V.coact(basis_vec(q, v)), bw = c.V.coact(basis_vec(q, w));
        for (int a = 0; a < n; ++a)
          for (int v2 = 0; v2 < q; ++v2) {
            const GaussQ& y = bv[static_cast<size_t>(a * q + v2)];
            if (y.is_zero()) continue;
            for (int b = 0; b < n; ++b)
              for (int w2 = 0; w2 < q; ++w2) {
                const GaussQ& z = bw[static_cast<size_t>(b * q + w2)];
                if (z.is_zero()) continue;
                Vec ab = mul_basis(H, a, b);
                for (const auto& [k1, k2, cf] : H.comul[static_cast<size_t>(k)]) {
                  Vec h = product(H, ab, basis_vec(n, k1));
                  GaussQ f = x * y * z * cf;
                  for (int p = 0; p < n; ++p)
                    if (!h[static_cast<size_t>(p)].is_zero())
                      out[static_cast<size_t>(p * O + (v2 * q + w2) * n + k2)] += f * h[static_cast<size_t>(p)];
                }
              }
          }
      }
  return out;
}

Vec rco2(const CalculusData& c, const Vec& t) {
  const FinHopf& H = c.hopf;
  const int n = H.dim, q = c.vdim;
  Vec out = zero_vec(q * q * n * n);
  for (int vw = 0; vw < q * q; ++vw)
    for (int k = 0; k < n; ++k) {
      const GaussQ& x = t[static_cast<size_t>(vw * n + k)];
      if (x.is_zero()) continue;
      for (const auto& [k1, k2, cf] : H.comul[static_cast<size_t>(k)]) out[static_cast<size_t>((vw * n + k1) * n + k2)] += x * cf;
    }
  return out;
}

}  // namespace

Subspace prolong_deg2(const CalculusData& c, ProlongKind kind) {
  const FinHopf& H = c.hopf;
  const int n = H.dim, q = c.vdim, O2 = q * q * n;
  Subspace S(O2);
  if (kind == ProlongKind::maximal) {
    // I = (d (x) d)(ker(a (x) b -> a db))
    Mat Phi(q * n, n * n);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) Phi.set_col(a * n + b, form_left_mul(c, basis_vec(n, a), c.d.col(b)));
    for (const auto& k : nullspace(Phi)) {
      Vec r = zero_vec(O2);
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
          const GaussQ& x = k[static_cast<size_t>(a * n + b)];
          if (!x.is_zero()) axpy(r, x, tensor_over_H(c, c.d.col(a), c.d.col(b)));
        }
      S.add(r);
    }
  } else {
    Mat Psi = braiding(c.V, c.V);
    Mat M = Mat::identity(O2) - kron(Psi, Mat::identity(n));
    for (const auto& k : nullspace(M)) S.add(k);
  }
  return S;
}

bool is_sub_bicovariant(const CalculusData& c, const Subspace& S) {
  const int n = c.hopf.dim, O2 = c.vdim * c.vdim * n;
  for (const auto& s : S.basis()) {
    for (int i = 0; i < n; ++i)
      if (!S.contains(left2(c, i, s)) || !S.contains(right2(c, s, i))) return false;
    Vec L = lco2(c, s);
    for (int a = 0; a < n; ++a)
      if (!S.contains(Vec(L.begin() + a * O2, L.begin() + (a + 1) * O2))) return false;
    Vec R = rco2(c, s);
    for (int a = 0; a < n; ++a) {
      Vec part = zero_vec(O2);
      for (int w = 0; w < O2; ++w) part[static_cast<size_t>(w)] = R[static_cast<size_t>(w * n + a)];
      if (!S.contains(part)) return false;
    }
  }
  return true;
}

// ---- Fourier ----

bool is_right_integral(const FinHopf& H, const Vec& I) {
  const int n = H.dim;
  if (static_cast<int>(I.size()) != n) throw Error(Errc::DimensionMismatch, "integral size");
  for (int i = 0; i < n; ++i) {
    Vec l = zero_vec(n);
    for (const auto& [a, b, c] : H.comul[static_cast<size_t>(i)]) l[static_cast<size_t>(b)] += c * I[static_cast<size_t>(a)];
    if (l != I[static_cast<size_t>(i)] * H.unit) return false;
  }
  return true;
}

bool is_left_integral_dual(const FinHopf& H, const Vec& J) {
  const int n = H.dim;
  if (static_cast<int>(J.size()) != n) throw Error(Errc::DimensionMismatch, "integral size");
  // Delta f^i = sum c f^j (x) f^k over e_j e_k = sum c e_i
  std::vector<Vec> lhs(static_cast<size_t>(n), zero_vec(n));
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      for (const auto& [i, c] : H.mul[static_cast<size_t>(j * n + k)]) lhs[static_cast<size_t>(i)][static_cast<size_t>(j)] += c * J[static_cast<size_t>(k)];
  for (int i = 0; i < n; ++i)
    if (lhs[static_cast<size_t>(i)] != J[static_cast<size_t>(i)] * H.counit) return false;
  return true;
}

namespace {

Vec normalised_first(const std::vector<Vec>& ns) {
  if (ns.empty()) return {};
  Vec v = ns.front();
  for (const auto& x : v)
    if (!x.is_zero()) return x.inverse() * v;
  return v;
}

}  // namespace

Vec right_integral(const FinHopf& H) {
  const int n = H.dim;
  Mat M(n * n, n);
  for (int i = 0; i < n; ++i) {
    for (const auto& [a, b, c] : H.comul[static_cast<size_t>(i)]) M(i * n + b, a) += c;
    for (int l = 0; l < n; ++l) M(i * n + l, i) -= H.unit[static_cast<size_t>(l)];
  }
  return normalised_first(nullspace(M));
}

Vec left_integral_dual(const FinHopf& H) {
  const int n = H.dim;
  Mat M(n * n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      for (const auto& [i, c] : H.mul[static_cast<size_t>(j * n + k)]) M(i * n + j, k) += c;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) M(i * n + j, i) -= H.counit[static_cast<size_t>(j)];
  return normalised_first(nullspace(M));
}

FourierData findim_fourier(const FinHopf& H, const Vec& I, const Vec& J) {
  const int n = H.dim;
  if (!is_right_integral(H, I)) throw Error(Errc::NotIntegral, "not a right integral on H");
  if (!is_left_integral_dual(H, J)) throw Error(Errc::NotIntegral, "not a left integral on H*");
  FourierData F{Mat(n, n), Mat(n, n), GaussQ()};
  for (int a = 0; a < n; ++a)
    for (int j = 0; j < n; ++j)
      for (const auto& [k, c] : H.mul[static_cast<size_t>(a * n + j)]) F.T(a, j) += c * I[static_cast<size_t>(k)];
  for (int i = 0; i < n; ++i)
    for (const auto& [a, b, c] : H.comul[static_cast<size_t>(i)]) F.Tstar(a, b) += c * J[static_cast<size_t>(i)];
  for (int a = 0; a < n; ++a) F.scale += I[static_cast<size_t>(a)] * J[static_cast<size_t>(a)];
  return F;
}

bool fourier_composition_holds(const FinHopf& H, const FourierData& F) {
  if (H.antipode_inv.rows() == 0) return false;
  return F.T * F.Tstar == F.scale * H.antipode_inv.transpose();
}

bool fourier_intertwiners_hold(const FinHopf& H, const FourierData& F) {
  const int n = H.dim;
  FinHopf Hd = dual(H);
  const Mat Sid = H.antipode_inv.transpose();
  for (int i = 0; i < n; ++i)
    for (int b = 0; b < n; ++b) {
      // T(h1 <phi, h2>) = T(h) S^-1 phi
      Vec l = zero_vec(n);
      for (const auto& [x, y, c] : H.comul[static_cast<size_t>(i)])
        if (y == b) axpy(l, c, F.T.col(x));
      if (l != product(Hd, F.T.col(i), Sid.col(b))) return false;
      // T*(<phi1, h> phi2) = S h T*(phi)
      Vec l2 = zero_vec(n);
      for (int k = 0; k < n; ++k)
        for (const auto& [p, c] : H.mul[static_cast<size_t>(i * n + k)])
          if (p == b) axpy(l2, c, F.Tstar.col(k));
      if (l2 != product(H, H.antipode.col(i), F.Tstar.col(b))) return false;
    }
  return true;
}

}  // namespace hopftwist
