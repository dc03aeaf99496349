#include "orb/numerics/sample.hpp"

#include <cmath>

namespace orb {

namespace {

CycNum random_coord(const Rational& scale, int conductor, Rng& rng) {
  constexpr int kGrid = 16;
  std::uniform_int_distribution<int> dist(-kGrid, kGrid);
  auto draw = [&] {
    Rational t(dist(rng), kGrid);
    t.canonicalize();
    return Rational(scale * t);
  };
  if (conductor <= 2) return CycNum(draw());
  int d = euler_phi(conductor);
  std::vector<Rational> c(conductor, Rational(0));
  for (int k = 0; k < d; ++k) c[k] = draw();
  return CycNum::from_power_coeffs(conductor, c);
}

}  // namespace

Vec sample_near(const Vec& c, const Rational& scale, int conductor, Rng& rng) {
  Vec out = c;
  for (Eigen::Index i = 0; i < c.size(); ++i) out[i] += random_coord(scale, conductor, rng);
  return out;
}

Vec sample_in_ball(const Ball& b, int conductor, Rng& rng) {
  int n = b.dim();
  if (n == 0) return Vec(0);
  double r = std::sqrt(std::max(0.0, b.radius2.to_complex().real()));
  int d = conductor <= 2 ? 1 : euler_phi(conductor);
  double s = r / (std::sqrt(static_cast<double>(n)) * d);
  long num = static_cast<long>(std::floor(s * 256.0));
  if (num <= 0) num = 1;
  Rational scale(num, 256);
  scale.canonicalize();
  for (int attempt = 0; attempt < 64; ++attempt) {
    Vec z = sample_near(b.center, scale, conductor, rng);
    if (contains(b, z)) return z;
    if (attempt % 16 == 15) scale /= 2;
  }
  return b.center;
}

}  // namespace orb
