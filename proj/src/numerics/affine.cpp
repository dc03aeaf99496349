#include "orb/numerics/affine.hpp"

#include <sstream>

namespace orb {

AffineMap::AffineMap(Mat a, Vec t) : A(std::move(a)), b(std::move(t)) {
  if (A.rows() != A.cols() || A.rows() != b.size())
    throw Error(ErrorKind::DimMismatch, "affine map shape");
}

AffineMap AffineMap::identity(int n) { return AffineMap(Mat::Identity(n, n), Vec::Zero(n)); }

AffineMap AffineMap::scalar(int n, const CycNum& s, const Vec& t) {
  Mat a = Mat::Identity(n, n);
  for (int i = 0; i < n; ++i) a(i, i) = s;
  return AffineMap(a, t);
}

AffineMap AffineMap::translation(const Vec& t) {
  int n = static_cast<int>(t.size());
  return AffineMap(Mat::Identity(n, n), t);
}

Vec AffineMap::operator()(const Vec& z) const {
  if (z.size() != b.size()) throw Error(ErrorKind::DimMismatch, "apply affine map");
  Vec out = b;
  for (Eigen::Index i = 0; i < A.rows(); ++i)
    for (Eigen::Index j = 0; j < A.cols(); ++j)
      if (!A(i, j).is_zero() && !z[j].is_zero()) out[i] += A(i, j) * z[j];
  return out;
}

AffineMap compose(const AffineMap& f, const AffineMap& g) {
  if (f.dim() != g.dim()) throw Error(ErrorKind::DimMismatch, "compose affine maps");
  Mat a = f.A.lazyProduct(g.A);
  return AffineMap(a, f(g.b));
}

bool affine_equal(const AffineMap& f, const AffineMap& g) {
  return exact_equal(f.A, g.A) && exact_equal(f.b, g.b);
}

std::optional<CycNum> similarity_factor(const Mat& A) {
  if (A.rows() != A.cols()) return std::nullopt;
  const Eigen::Index n = A.rows();
  if (n == 0) return CycNum(1);
  Mat g = adjoint(A).lazyProduct(A);
  CycNum lam = g(0, 0);
  if (lam.is_zero()) return std::nullopt;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      if (g(i, j) != (i == j ? lam : CycNum(0))) return std::nullopt;
  return lam;
}

bool is_similarity(const AffineMap& f) { return similarity_factor(f.A).has_value(); }

bool is_isometry(const AffineMap& f) {
  auto l = similarity_factor(f.A);
  return l && *l == CycNum(1);
}

AffineMap inverse(const AffineMap& f) {
  auto lam = similarity_factor(f.A);
  if (!lam) throw Error(ErrorKind::DivisionByZero, "inverse of a non-similarity");
  Mat ai = adjoint(f.A);
  CycNum inv = lam->inverse();
  for (Eigen::Index i = 0; i < ai.rows(); ++i)
    for (Eigen::Index j = 0; j < ai.cols(); ++j) ai(i, j) *= inv;
  AffineMap r(ai, Vec::Zero(f.dim()));
  Vec nb = -r(f.b);
  r.b = nb;
  return r;
}

std::string to_string(const AffineMap& f) {
  std::ostringstream os;
  os << "z -> [";
  for (Eigen::Index i = 0; i < f.A.rows(); ++i) {
    if (i) os << "; ";
    for (Eigen::Index j = 0; j < f.A.cols(); ++j) os << (j ? ", " : "") << f.A(i, j);
  }
  os << "] z + " << to_string(f.b);
  return os.str();
}

bool contains(const Ball& b, const Vec& z) {
  if (z.size() != b.center.size()) throw Error(ErrorKind::DimMismatch, "ball membership");
  if (z.size() == 0) return true;
  return sign_real(b.radius2 - norm2(Vec(z - b.center))) > 0;
}

bool contains_closed(const Ball& b, const Vec& z) {
  if (z.size() != b.center.size()) throw Error(ErrorKind::DimMismatch, "ball membership");
  if (z.size() == 0) return true;
  return sign_real(b.radius2 - norm2(Vec(z - b.center))) >= 0;
}

bool contains(const Ball& outer, const Ball& inner) {
  if (outer.dim() != inner.dim()) throw Error(ErrorKind::DimMismatch, "ball containment");
  if (outer.dim() == 0) return true;
  const CycNum& r1 = inner.radius2;
  const CycNum& r2 = outer.radius2;
  if (sign_real(r2 - r1) < 0) return false;
  CycNum d2 = norm2(Vec(inner.center - outer.center));
  CycNum s = r1 + r2 - d2;
  if (sign_real(s) < 0) return false;
  return sign_real(s * s - CycNum(4) * r1 * r2) >= 0;
}

bool intersects(const Ball& a, const Ball& b) {
  if (a.dim() != b.dim()) throw Error(ErrorKind::DimMismatch, "ball intersection");
  if (a.dim() == 0) return true;
  CycNum d2 = norm2(Vec(a.center - b.center));
  CycNum t = d2 - a.radius2 - b.radius2;
  if (sign_real(t) < 0) return true;
  return sign_real(t * t - CycNum(4) * a.radius2 * b.radius2) < 0;
}

bool ball_equal(const Ball& a, const Ball& b) {
  if (a.dim() == 0 && b.dim() == 0) return true;
  return exact_equal(a.center, b.center) && a.radius2 == b.radius2;
}

Ball image(const AffineMap& f, const Ball& b) {
  auto lam = similarity_factor(f.A);
  if (!lam) throw Error(ErrorKind::NotUnique, "ball image under a non-similarity");
  return Ball{f(b.center), *lam * b.radius2};
}

bool preserves(const AffineMap& f, const Ball& b) { return ball_equal(image(f, b), b); }

}  // namespace orb
