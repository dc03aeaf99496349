#include "orb/numerics/eigen_support.hpp"

#include <sstream>

namespace orb {

CycNum dot(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw Error(ErrorKind::DimMismatch, "dot of unequal lengths");
  CycNum s(0);
  for (Eigen::Index i = 0; i < a.size(); ++i) s += a[i].conj() * b[i];
  return s;
}

CycNum norm2(const Vec& v) { return dot(v, v); }

Vec make_vec(std::initializer_list<CycNum> xs) {
  Vec v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (const auto& x : xs) v[i++] = x;
  return v;
}

Mat make_mat(int rows, int cols, std::initializer_list<CycNum> row_major) {
  if (static_cast<int>(row_major.size()) != rows * cols)
    throw Error(ErrorKind::DimMismatch, "matrix entry count");
  Mat m(rows, cols);
  int k = 0;
  for (const auto& x : row_major) {
    m(k / cols, k % cols) = x;
    ++k;
  }
  return m;
}

bool solve_linear(const Mat& M, const Vec& r, Vec& out) {
  if (M.rows() != r.size()) throw Error(ErrorKind::DimMismatch, "solve_linear shape");
  Mat a = M;
  Vec b = r;
  const Eigen::Index rows = a.rows(), cols = a.cols();
  std::vector<Eigen::Index> pivot_col;
  Eigen::Index row = 0;
  for (Eigen::Index c = 0; c < cols && row < rows; ++c) {
    Eigen::Index p = row;
    while (p < rows && a(p, c).is_zero()) ++p;
    if (p == rows) continue;
    a.row(p).swap(a.row(row));
    std::swap(b[p], b[row]);
    CycNum inv = a(row, c).inverse();
    for (Eigen::Index j = c; j < cols; ++j) a(row, j) *= inv;
    b[row] *= inv;
    for (Eigen::Index i = 0; i < rows; ++i) {
      if (i == row || a(i, c).is_zero()) continue;
      CycNum f = a(i, c);
      for (Eigen::Index j = c; j < cols; ++j) a(i, j) -= f * a(row, j);
      b[i] -= f * b[row];
    }
    pivot_col.push_back(c);
    ++row;
  }
  for (Eigen::Index i = row; i < rows; ++i)
    if (!b[i].is_zero()) return false;
  out = Vec::Zero(cols);
  for (std::size_t i = 0; i < pivot_col.size(); ++i) out[pivot_col[i]] = b[static_cast<Eigen::Index>(i)];
  return true;
}

std::string to_string(const Vec& v) {
  std::ostringstream os;
  os << "(";
  for (Eigen::Index i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i].to_string();
  os << ")";
  return os.str();
}

}  // namespace orb
