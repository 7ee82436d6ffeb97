#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <optional>
#include <string>
#include <vector>

namespace mirror {

using Q = boost::multiprecision::mpq_rational;
using Z = boost::multiprecision::mpz_int;
using QVec = std::vector<Q>;
using QMat = std::vector<QVec>;
using ZVec = std::vector<Z>;
using ZMat = std::vector<ZVec>;
using IntVec = std::vector<long long>;
using IntMat = std::vector<IntVec>;

Q parse_rational(const std::string& text);
std::string to_string(const Q& q);
double to_double(const Q& q);
bool is_integer(const Q& q);
Z floor_q(const Q& q);
Z ceil_q(const Q& q);
Q frac_q(const Q& q);
long long to_ll(const Z& z);

QVec to_qvec(const IntVec& v);
QMat to_qmat(const IntMat& m);
QMat transpose(const QMat& a);
QVec mat_vec(const QMat& a, const QVec& x);
Q dot(const QVec& a, const QVec& b);

// Row-reduced echelon form; returns pivot columns.
std::vector<int> rref(QMat& a);
int rank(const QMat& a);
// Basis of {x : a x = 0}, one vector per free column.
std::vector<QVec> nullspace(const QMat& a, int cols);
std::optional<QVec> solve(const QMat& a, const QVec& b);
Q det(QMat a);
QMat inverse(const QMat& a);

struct IntegerKernel {
  int rank = 0;
  Z index;       // |N : sum Z b_i| when rank == n, else 0
  ZMat kernel;   // rows span ker over Z
};

// Kernel of the map Z^r -> Z^n sending e_i to column i of `cols` (n x r).
IntegerKernel integer_kernel(const ZMat& cols);
// Row Hermite normal form: echelon, positive pivots, reduced above pivots, zero rows dropped.
ZMat row_hnf(ZMat a);

}  // namespace mirror
