#ifndef HOPFTWIST_FINDIM_INTERNAL_HPP
#define HOPFTWIST_FINDIM_INTERNAL_HPP

#include <map>

#include "hopftwist/findim.hpp"

namespace hopftwist::detail {

using Sparse = std::map<long long, GaussQ>;

void acc(Sparse& m, long long k, const GaussQ& c);
Vec to_dense(const Sparse& s, int n);
Vec mul_basis(const FinHopf& H, int i, int j);
GaussQ dot(const Vec& a, const Vec& b);
// chi(e_a (x) y) and chi(x (x) e_b) for chi given by its matrix of values.
GaussQ eval_right(const Mat& chi, int a, const Vec& y);
GaussQ eval_left(const Mat& chi, const Vec& x, int b);
Vec tensor_vec(const Vec& a, const Vec& b);
Vec antipode_of(const FinHopf& H, const Vec& a);

}  // namespace hopftwist::detail

#endif
