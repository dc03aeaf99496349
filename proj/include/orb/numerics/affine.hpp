#pragma once

#include <optional>
#include <string>

#include "orb/numerics/eigen_support.hpp"

namespace orb {

// z -> A z + b.
struct AffineMap {
  Mat A;
  Vec b;

  AffineMap() = default;
  AffineMap(Mat a, Vec t);

  static AffineMap identity(int n);
  static AffineMap scalar(int n, const CycNum& s, const Vec& t);
  static AffineMap translation(const Vec& t);

  int dim() const { return static_cast<int>(b.size()); }
  Vec operator()(const Vec& z) const;
};

// f o g
AffineMap compose(const AffineMap& f, const AffineMap& g);
bool affine_equal(const AffineMap& f, const AffineMap& g);
inline bool operator==(const AffineMap& f, const AffineMap& g) { return affine_equal(f, g); }
inline bool operator!=(const AffineMap& f, const AffineMap& g) { return !affine_equal(f, g); }

// lambda with A^* A = lambda I, or nothing.
std::optional<CycNum> similarity_factor(const Mat& A);
bool is_similarity(const AffineMap& f);
bool is_isometry(const AffineMap& f);
// Requires a similarity.
AffineMap inverse(const AffineMap& f);

std::string to_string(const AffineMap& f);

// Open ball |z - center|^2 < radius2.
struct Ball {
  Vec center;
  CycNum radius2;
  int dim() const { return static_cast<int>(center.size()); }
};

bool contains(const Ball& b, const Vec& z);
// Closure membership |z - c|^2 <= r^2.
bool contains_closed(const Ball& b, const Vec& z);
bool contains(const Ball& outer, const Ball& inner);
bool intersects(const Ball& a, const Ball& b);
bool ball_equal(const Ball& a, const Ball& b);
// Image of a ball under a similarity.
Ball image(const AffineMap& f, const Ball& b);
// A similarity maps the ball onto itself.
bool preserves(const AffineMap& f, const Ball& b);

}  // namespace orb
