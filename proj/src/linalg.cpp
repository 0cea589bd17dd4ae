#include "hopftwist/linalg.hpp"

#include <algorithm>

#include "hopftwist/errors.hpp"

namespace hopftwist {

Vec zero_vec(int n) { return Vec(static_cast<size_t>(n)); }

Vec basis_vec(int n, int i) {
  Vec v(static_cast<size_t>(n));
  v[static_cast<size_t>(i)] = GaussQ(1);
  return v;
}

bool is_zero(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](const GaussQ& c) { return c.is_zero(); });
}

Vec operator+(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw Error(Errc::DimensionMismatch, "vector sizes differ");
  Vec out = a;
  for (size_t i = 0; i < b.size(); ++i)
    if (!b[i].is_zero()) out[i] += b[i];
  return out;
}

Vec operator-(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw Error(Errc::DimensionMismatch, "vector sizes differ");
  Vec out = a;
  for (size_t i = 0; i < b.size(); ++i)
    if (!b[i].is_zero()) out[i] -= b[i];
  return out;
}

Vec operator*(const GaussQ& s, const Vec& v) {
  Vec out(v.size());
  if (s.is_zero()) return out;
  for (size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) out[i] = s * v[i];
  return out;
}

Vec& axpy(Vec& y, const GaussQ& s, const Vec& x) {
  if (s.is_zero()) return y;
  for (size_t i = 0; i < x.size(); ++i)
    if (!x[i].is_zero()) y[i] += s * x[i];
  return y;
}

std::string vec_str(const Vec& v) {
  std::string s = "[";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += v[i].str();
  }
  return s + "]";
}

Mat Mat::identity(int n) {
  Mat m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = GaussQ(1);
  return m;
}

Mat Mat::from_columns(const std::vector<Vec>& cols, int rows) {
  Mat m(rows, static_cast<int>(cols.size()));
  for (int j = 0; j < m.cols(); ++j) m.set_col(j, cols[static_cast<size_t>(j)]);
  return m;
}

Vec Mat::col(int j) const {
  Vec v(static_cast<size_t>(rows_));
  for (int i = 0; i < rows_; ++i) v[static_cast<size_t>(i)] = (*this)(i, j);
  return v;
}

void Mat::set_col(int j, const Vec& v) {
  if (static_cast<int>(v.size()) != rows_) throw Error(Errc::DimensionMismatch, "column size");
  for (int i = 0; i < rows_; ++i) (*this)(i, j) = v[static_cast<size_t>(i)];
}

Mat Mat::transpose() const {
  Mat t(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool Mat::is_zero() const {
  return std::all_of(a_.begin(), a_.end(), [](const GaussQ& c) { return c.is_zero(); });
}

Mat operator*(const Mat& a, const Mat& b) {
  if (a.cols_ != b.rows_) throw Error(Errc::DimensionMismatch, "matrix product shapes");
  Mat out(a.rows_, b.cols_);
  for (int i = 0; i < a.rows_; ++i)
    for (int k = 0; k < a.cols_; ++k) {
      const GaussQ& x = a(i, k);
      if (x.is_zero()) continue;
      for (int j = 0; j < b.cols_; ++j) {
        const GaussQ& y = b(k, j);
        if (!y.is_zero()) out(i, j) += x * y;
      }
    }
  return out;
}

Vec operator*(const Mat& a, const Vec& v) {
  if (a.cols_ != static_cast<int>(v.size())) throw Error(Errc::DimensionMismatch, "matrix-vector shapes");
  Vec out(static_cast<size_t>(a.rows_));
  for (int k = 0; k < a.cols_; ++k) {
    const GaussQ& y = v[static_cast<size_t>(k)];
    if (y.is_zero()) continue;
    for (int i = 0; i < a.rows_; ++i) {
      const GaussQ& x = a(i, k);
      if (!x.is_zero()) out[static_cast<size_t>(i)] += x * y;
    }
  }
  return out;
}

Mat operator+(const Mat& a, const Mat& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw Error(Errc::DimensionMismatch, "matrix sum shapes");
  Mat out = a;
  for (size_t i = 0; i < out.a_.size(); ++i) out.a_[i] += b.a_[i];
  return out;
}

Mat operator-(const Mat& a, const Mat& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw Error(Errc::DimensionMismatch, "matrix difference shapes");
  Mat out = a;
  for (size_t i = 0; i < out.a_.size(); ++i) out.a_[i] -= b.a_[i];
  return out;
}

Mat operator*(const GaussQ& s, const Mat& m) {
  Mat out = m;
  for (auto& x : out.a_) x *= s;
  return out;
}

Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) {
      const GaussQ& x = a(i, j);
      if (x.is_zero()) continue;
      for (int k = 0; k < b.rows(); ++k)
        for (int l = 0; l < b.cols(); ++l)
          if (!b(k, l).is_zero()) out(i * b.rows() + k, j * b.cols() + l) = x * b(k, l);
    }
  return out;
}

namespace {

// In-place reduced row echelon form; returns pivot columns.
std::vector<int> rref(Mat& m) {
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
    int p = -1;
    for (int i = r; i < m.rows(); ++i)
      if (!m(i, c).is_zero()) {
        p = i;
        break;
      }
    if (p < 0) continue;
    if (p != r)
      for (int j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    GaussQ inv = m(r, c).inverse();
    for (int j = c; j < m.cols(); ++j)
      if (!m(r, j).is_zero()) m(r, j) *= inv;
    for (int i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c).is_zero()) continue;
      GaussQ f = m(i, c);
      for (int j = c; j < m.cols(); ++j)
        if (!m(r, j).is_zero()) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

std::optional<Mat> inverse(const Mat& m) {
  if (m.rows() != m.cols()) throw Error(Errc::DimensionMismatch, "inverse of a non-square matrix");
  const int n = m.rows();
  Mat aug(n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = GaussQ(1);
  }
  auto piv = rref(aug);
  if (static_cast<int>(piv.size()) < n || piv[static_cast<size_t>(n - 1)] != n - 1) return std::nullopt;
  Mat out(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out(i, j) = aug(i, n + j);
  return out;
}

int rank(const Mat& m) {
  Mat c = m;
  return static_cast<int>(rref(c).size());
}

std::vector<Vec> nullspace(const Mat& m) {
  Mat c = m;
  auto piv = rref(c);
  std::vector<bool> is_piv(static_cast<size_t>(m.cols()), false);
  for (int p : piv) is_piv[static_cast<size_t>(p)] = true;
  std::vector<Vec> out;
  for (int f = 0; f < m.cols(); ++f) {
    if (is_piv[static_cast<size_t>(f)]) continue;
    Vec v = basis_vec(m.cols(), f);
    for (size_t r = 0; r < piv.size(); ++r) v[static_cast<size_t>(piv[r])] = -c(static_cast<int>(r), f);
    out.push_back(std::move(v));
  }
  return out;
}

std::optional<Vec> solve(const Mat& m, const Vec& b) {
  Mat aug(m.rows(), m.cols() + 1);
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = b[static_cast<size_t>(i)];
  }
  auto piv = rref(aug);
  if (!piv.empty() && piv.back() == m.cols()) return std::nullopt;
  Vec x = zero_vec(m.cols());
  for (size_t r = 0; r < piv.size(); ++r) x[static_cast<size_t>(piv[r])] = aug(static_cast<int>(r), m.cols());
  return x;
}

Subspace Subspace::span(int n, const std::vector<Vec>& vs) {
  Subspace s(n);
  for (const auto& v : vs) s.add(v);
  return s;
}

Vec Subspace::reduce(const Vec& v) const {
  if (static_cast<int>(v.size()) != n_) throw Error(Errc::DimensionMismatch, "subspace ambient dimension");
  Vec r = v;
  for (size_t i = 0; i < rows_.size(); ++i) {
    const GaussQ f = r[static_cast<size_t>(pivots_[i])];
    if (!f.is_zero()) axpy(r, -f, rows_[i]);
  }
  return r;
}

bool Subspace::add(const Vec& v) {
  Vec r = reduce(v);
  int p = -1;
  for (int i = 0; i < n_; ++i)
    if (!r[static_cast<size_t>(i)].is_zero()) {
      p = i;
      break;
    }
  if (p < 0) return false;
  r = r[static_cast<size_t>(p)].inverse() * r;
  for (auto& row : rows_) {
    const GaussQ f = row[static_cast<size_t>(p)];
    if (!f.is_zero()) axpy(row, -f, r);
  }
  // keep rows ordered by pivot
  auto it = std::lower_bound(pivots_.begin(), pivots_.end(), p);
  auto pos = it - pivots_.begin();
  pivots_.insert(it, p);
  rows_.insert(rows_.begin() + pos, std::move(r));
  return true;
}

bool Subspace::contains(const Vec& v) const { return is_zero(reduce(v)); }

bool Subspace::contains(const Subspace& o) const {
  return std::all_of(o.rows_.begin(), o.rows_.end(), [&](const Vec& v) { return contains(v); });
}

Vec Subspace::coordinates(const Vec& v) const {
  if (!contains(v)) throw Error(Errc::InvalidArgument, "vector not in subspace");
  Vec c(rows_.size());
  for (size_t i = 0; i < rows_.size(); ++i) c[i] = v[static_cast<size_t>(pivots_[i])];
  return c;
}

}  // namespace hopftwist
