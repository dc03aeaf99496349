#pragma once

#include <map>
#include <string>
#include <vector>

#include "orb/numerics/affine.hpp"

namespace orb {

// Polynomial in n complex variables, holomorphic (no conjugates).
class Poly {
 public:
  using Monomial = std::vector<int>;

  explicit Poly(int nvars = 0) : n_(nvars) {}
  static Poly constant(int nvars, const CycNum& c);
  static Poly variable(int nvars, int i);

  int nvars() const { return n_; }
  const std::map<Monomial, CycNum>& terms() const { return terms_; }
  void add_term(const Monomial& e, const CycNum& c);
  int degree() const;

  CycNum operator()(const Vec& z) const;
  Poly& operator+=(const Poly& o);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(const CycNum& c, const Poly& a);
  friend bool operator==(const Poly& a, const Poly& b) { return a.n_ == b.n_ && a.terms_ == b.terms_; }

 private:
  int n_;
  std::map<Monomial, CycNum> terms_;
};

class PolyMap {
 public:
  PolyMap() = default;
  PolyMap(int nin, std::vector<Poly> comps);
  static PolyMap from_affine(const AffineMap& f);
  static PolyMap identity(int n) { return from_affine(AffineMap::identity(n)); }

  int in_dim() const { return n_in_; }
  int out_dim() const { return static_cast<int>(comps_.size()); }
  const std::vector<Poly>& components() const { return comps_; }
  int degree() const;

  Vec operator()(const Vec& z) const;
  bool is_affine() const;
  AffineMap to_affine() const;

 private:
  int n_in_ = 0;
  std::vector<Poly> comps_;
};

// f o g
PolyMap compose(const PolyMap& f, const PolyMap& g);
PolyMap compose(const PolyMap& f, const AffineMap& g);
PolyMap compose(const AffineMap& f, const PolyMap& g);
bool operator==(const PolyMap& f, const PolyMap& g);
inline bool operator!=(const PolyMap& f, const PolyMap& g) { return !(f == g); }

// Single-variable z -> c z^k, with k >= 1.
PolyMap monomial_map(const CycNum& c, int k);
// Componentwise power z -> c * z^k on each coordinate of C^n.
PolyMap power_map(int n, const CycNum& c, int k);

std::string to_string(const PolyMap& f);

}  // namespace orb
