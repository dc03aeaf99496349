#pragma once

#include <complex>
#include <memory>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "orb/error.hpp"

namespace orb {

using Rational = mpq_class;

// n/d in lowest terms (mpq_class(n, d) alone is not canonical).
inline Rational rat(long n, long d = 1) {
  Rational q(n, d);
  q.canonicalize();
  return q;
}

Rational parse_rational(const std::string& s);
std::string format_rational(const Rational& q);

// Q(zeta_m) with power basis 1, zeta, ..., zeta^(phi(m)-1) reduced modulo the
// m-th cyclotomic polynomial. Instances are interned per conductor.
class CyclotomicField {
 public:
  static std::shared_ptr<const CyclotomicField> get(int m);

  int conductor() const { return m_; }
  int degree() const { return static_cast<int>(phi_.size()) - 1; }
  // Coefficients of Phi_m, constant term first.
  const std::vector<long long>& cyclotomic_polynomial() const { return phi_; }
  // zeta^k reduced, for 0 <= k < 2m.
  const std::vector<Rational>& power(int k) const { return powers_[k]; }

 private:
  explicit CyclotomicField(int m);
  int m_;
  std::vector<long long> phi_;
  std::vector<std::vector<Rational>> powers_;
};

std::vector<long long> cyclotomic_polynomial(int m);
int euler_phi(int m);

// An element of Q(zeta_m). A null field means the element is rational and
// carries no conductor; it combines with any field.
class CycNum {
 public:
  CycNum() : c_{Rational(0)} {}
  CycNum(int v) : c_{Rational(v)} {}  // NOLINT(google-explicit-constructor)
  CycNum(long v) : c_{Rational(v)} {}  // NOLINT(google-explicit-constructor)
  CycNum(const Rational& q) : c_{q} { c_[0].canonicalize(); }  // NOLINT(google-explicit-constructor)
  CycNum(double) = delete;

  static CycNum zeta(int m, int k = 1);
  // Coefficients of zeta^0..zeta^(len-1) (any length), reduced into Q(zeta_m).
  static CycNum from_power_coeffs(int m, const std::vector<Rational>& coeffs);

  // 0 when the element is rational with no field attached.
  int conductor() const { return field_ ? field_->conductor() : 0; }
  const std::shared_ptr<const CyclotomicField>& field() const { return field_; }
  // Reduced power-basis coefficients; length 1 for a fieldless rational.
  const std::vector<Rational>& coeffs() const { return c_; }

  bool is_zero() const;
  bool is_rational() const;
  // Only valid when is_rational().
  Rational rational_value() const;
  bool is_real() const;

  CycNum conj() const;
  // zeta -> zeta^a, gcd(a, m) = 1.
  CycNum galois(int a) const;
  CycNum inverse() const;
  // Rational norm down to Q.
  Rational norm() const;
  // Lift into Q(zeta_M) for m | M.
  CycNum lift(int M) const;

  CycNum& operator+=(const CycNum& o);
  CycNum& operator-=(const CycNum& o);
  CycNum& operator*=(const CycNum& o);
  CycNum& operator/=(const CycNum& o);
  CycNum operator-() const;

  friend CycNum operator+(CycNum a, const CycNum& b) { return a += b; }
  friend CycNum operator-(CycNum a, const CycNum& b) { return a -= b; }
  friend CycNum operator*(CycNum a, const CycNum& b) { return a *= b; }
  friend CycNum operator/(CycNum a, const CycNum& b) { return a /= b; }
  friend bool operator==(const CycNum& a, const CycNum& b);
  friend bool operator!=(const CycNum& a, const CycNum& b) { return !(a == b); }

  std::complex<double> to_complex() const;
  std::string to_string() const;
  // Power-basis coefficients padded to length m.
  std::vector<std::string> serialize(int m) const;

 private:
  CycNum(std::shared_ptr<const CyclotomicField> f, std::vector<Rational> c)
      : field_(std::move(f)), c_(std::move(c)) {}
  static std::shared_ptr<const CyclotomicField> common_field(const CycNum& a, const CycNum& b);
  std::vector<Rational> coeffs_in(const CyclotomicField& f) const;

  std::shared_ptr<const CyclotomicField> field_;
  std::vector<Rational> c_;
};

// zeta_m^k; a plain rational when m <= 2.
CycNum root_of_unity(int m, int k);

// Sign of a real element: -1, 0 or +1. Throws NotReal otherwise.
int sign_real(const CycNum& x);

inline bool operator<(const CycNum& a, const CycNum& b) { return sign_real(b - a) > 0; }
inline bool operator>(const CycNum& a, const CycNum& b) { return b < a; }
inline bool operator<=(const CycNum& a, const CycNum& b) { return sign_real(b - a) >= 0; }
inline bool operator>=(const CycNum& a, const CycNum& b) { return b <= a; }

std::ostream& operator<<(std::ostream& os, const CycNum& x);

}  // namespace orb
