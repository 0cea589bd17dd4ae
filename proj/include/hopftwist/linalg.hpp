#ifndef HOPFTWIST_LINALG_HPP
#define HOPFTWIST_LINALG_HPP

#include <optional>
#include <string>
#include <vector>

#include "hopftwist/scalars.hpp"

namespace hopftwist {

// Dense exact vectors and matrices over GaussQ. Sizes stay small (a few
// thousand entries at most), so no blocking or pivoting strategy beyond
// "first nonzero".
using Vec = std::vector<GaussQ>;

Vec zero_vec(int n);
Vec basis_vec(int n, int i);
bool is_zero(const Vec& v);
Vec operator+(const Vec& a, const Vec& b);
Vec operator-(const Vec& a, const Vec& b);
Vec operator*(const GaussQ& s, const Vec& v);
Vec& axpy(Vec& y, const GaussQ& s, const Vec& x);  // y += s x
std::string vec_str(const Vec& v);

class Mat {
 public:
  Mat() = default;
  Mat(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {}
  static Mat identity(int n);
  static Mat from_columns(const std::vector<Vec>& cols, int rows);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  GaussQ& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
  const GaussQ& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }
  Vec col(int j) const;
  void set_col(int j, const Vec& v);
  Mat transpose() const;
  bool is_zero() const;

  friend Mat operator*(const Mat& a, const Mat& b);
  friend Vec operator*(const Mat& a, const Vec& v);
  friend Mat operator+(const Mat& a, const Mat& b);
  friend Mat operator-(const Mat& a, const Mat& b);
  friend Mat operator*(const GaussQ& s, const Mat& m);
  friend bool operator==(const Mat& a, const Mat& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<GaussQ> a_;
};

Mat kron(const Mat& a, const Mat& b);
std::optional<Mat> inverse(const Mat& m);
int rank(const Mat& m);
// Basis of {x : m x = 0}.
std::vector<Vec> nullspace(const Mat& m);
std::optional<Vec> solve(const Mat& m, const Vec& b);

// A subspace of k^n kept in reduced row echelon form.
class Subspace {
 public:
  explicit Subspace(int n = 0) : n_(n) {}
  static Subspace span(int n, const std::vector<Vec>& vs);
  int ambient() const { return n_; }
  int dim() const { return static_cast<int>(rows_.size()); }
  // Adds v; returns false when v was already in the span.
  bool add(const Vec& v);
  bool contains(const Vec& v) const;
  bool contains(const Subspace& o) const;
  const std::vector<Vec>& basis() const { return rows_; }
  // Coordinates of v (which must lie in the span) against basis().
  Vec coordinates(const Vec& v) const;

 private:
  Vec reduce(const Vec& v) const;
  int n_;
  std::vector<Vec> rows_;
  std::vector<int> pivots_;
};

}  // namespace hopftwist

#endif
