#pragma once

#include <mpfr.h>

#include "orb/numerics/cyclotomic.hpp"

namespace orb {

// Closed interval with MPFR endpoints and outward rounding.
class Interval {
 public:
  explicit Interval(mpfr_prec_t prec);
  Interval(const Rational& q, mpfr_prec_t prec);
  Interval(const Interval& o);
  Interval& operator=(const Interval& o);
  ~Interval();

  mpfr_prec_t precision() const { return mpfr_get_prec(lo_); }
  const __mpfr_struct* lo() const { return lo_; }
  const __mpfr_struct* hi() const { return hi_; }
  __mpfr_struct* lo() { return lo_; }
  __mpfr_struct* hi() { return hi_; }

  Interval operator+(const Interval& o) const;
  Interval operator*(const Interval& o) const;
  bool positive() const { return mpfr_sgn(lo_) > 0; }
  bool negative() const { return mpfr_sgn(hi_) < 0; }
  double width() const;

 private:
  mpfr_t lo_, hi_;
};

// Enclosure of cos(2*pi*k/m) at the given precision.
Interval cos_enclosure(int k, int m, mpfr_prec_t prec);
// Enclosure of the real part of x.
Interval enclose_real_part(const CycNum& x, mpfr_prec_t prec);
// Sign of a nonzero real element by adaptive refinement.
int sign_by_intervals(const CycNum& x);

}  // namespace orb
