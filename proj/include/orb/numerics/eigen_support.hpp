#pragma once

#include <Eigen/Core>

#include "orb/numerics/cyclotomic.hpp"

namespace Eigen {

template <>
struct NumTraits<orb::CycNum> : GenericNumTraits<orb::CycNum> {
  using Real = orb::CycNum;
  using NonInteger = orb::CycNum;
  using Nested = orb::CycNum;
  using Literal = orb::CycNum;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 4,
    AddCost = 40,
    MulCost = 160
  };
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen

namespace orb {

using Vec = Eigen::Matrix<CycNum, Eigen::Dynamic, 1>;
using Mat = Eigen::Matrix<CycNum, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Derived>
auto conj(const Eigen::MatrixBase<Derived>& m) {
  return m.unaryExpr([](const CycNum& x) { return x.conj(); });
}

template <typename Derived>
auto adjoint(const Eigen::MatrixBase<Derived>& m) {
  return conj(m).transpose();
}

template <typename A, typename B>
bool exact_equal(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      if (a(i, j) != b(i, j)) return false;
  return true;
}

// Hermitian inner product sum conj(a_i) b_i.
CycNum dot(const Vec& a, const Vec& b);
// sum |v_i|^2, always real.
CycNum norm2(const Vec& v);

Vec make_vec(std::initializer_list<CycNum> xs);
Mat make_mat(int rows, int cols, std::initializer_list<CycNum> row_major);

// Rank and a solution of M x = r when one exists (Gaussian elimination).
bool solve_linear(const Mat& M, const Vec& r, Vec& out);

std::string to_string(const Vec& v);

}  // namespace orb
