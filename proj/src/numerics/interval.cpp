#include "orb/numerics/interval.hpp"

#include <map>
#include <mutex>
#include <tuple>

namespace orb {

Interval::Interval(mpfr_prec_t prec) {
  mpfr_init2(lo_, prec);
  mpfr_init2(hi_, prec);
  mpfr_set_zero(lo_, 1);
  mpfr_set_zero(hi_, 1);
}

Interval::Interval(const Rational& q, mpfr_prec_t prec) {
  mpfr_init2(lo_, prec);
  mpfr_init2(hi_, prec);
  mpfr_set_q(lo_, q.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(hi_, q.get_mpq_t(), MPFR_RNDU);
}

Interval::Interval(const Interval& o) {
  mpfr_init2(lo_, o.precision());
  mpfr_init2(hi_, o.precision());
  mpfr_set(lo_, o.lo_, MPFR_RNDD);
  mpfr_set(hi_, o.hi_, MPFR_RNDU);
}

Interval& Interval::operator=(const Interval& o) {
  if (this == &o) return *this;
  mpfr_set_prec(lo_, o.precision());
  mpfr_set_prec(hi_, o.precision());
  mpfr_set(lo_, o.lo_, MPFR_RNDD);
  mpfr_set(hi_, o.hi_, MPFR_RNDU);
  return *this;
}

Interval::~Interval() {
  mpfr_clear(lo_);
  mpfr_clear(hi_);
}

Interval Interval::operator+(const Interval& o) const {
  Interval r(precision());
  mpfr_add(r.lo_, lo_, o.lo_, MPFR_RNDD);
  mpfr_add(r.hi_, hi_, o.hi_, MPFR_RNDU);
  return r;
}

Interval Interval::operator*(const Interval& o) const {
  mpfr_prec_t p = precision();
  Interval r(p);
  mpfr_t t;
  mpfr_init2(t, p);
  const __mpfr_struct* a[2] = {lo_, hi_};
  const __mpfr_struct* b[2] = {o.lo_, o.hi_};
  bool first = true;
  for (auto x : a)
    for (auto y : b) {
      mpfr_mul(t, x, y, MPFR_RNDD);
      if (first || mpfr_less_p(t, r.lo_)) mpfr_set(r.lo_, t, MPFR_RNDD);
      mpfr_mul(t, x, y, MPFR_RNDU);
      if (first || mpfr_greater_p(t, r.hi_)) mpfr_set(r.hi_, t, MPFR_RNDU);
      first = false;
    }
  mpfr_clear(t);
  return r;
}

double Interval::width() const {
  mpfr_t t;
  mpfr_init2(t, precision());
  mpfr_sub(t, hi_, lo_, MPFR_RNDU);
  double w = mpfr_get_d(t, MPFR_RNDU);
  mpfr_clear(t);
  return w;
}

namespace {

Interval compute_cos(int k, int m, mpfr_prec_t prec) {
  // Work 32 bits above the target; the argument carries a relative error
  // below 2^(3-w), and |cos'| <= 1, so a 2^(6-w) pad covers it.
  mpfr_prec_t w = prec + 32;
  mpfr_t a, c, pad;
  mpfr_inits2(w, a, c, pad, static_cast<mpfr_ptr>(nullptr));
  mpfr_const_pi(a, MPFR_RNDN);
  mpfr_mul_si(a, a, 2L * k, MPFR_RNDN);
  mpfr_div_si(a, a, m, MPFR_RNDN);
  mpfr_set_ui_2exp(pad, 1, 6 - w, MPFR_RNDU);
  Interval r(prec);
  mpfr_cos(c, a, MPFR_RNDD);
  mpfr_sub(c, c, pad, MPFR_RNDD);
  mpfr_set(r.lo(), c, MPFR_RNDD);
  mpfr_cos(c, a, MPFR_RNDU);
  mpfr_add(c, c, pad, MPFR_RNDU);
  mpfr_set(r.hi(), c, MPFR_RNDU);
  mpfr_clears(a, c, pad, static_cast<mpfr_ptr>(nullptr));
  return r;
}

}  // namespace

Interval cos_enclosure(int k, int m, mpfr_prec_t prec) {
  static std::mutex mu;
  static std::map<std::tuple<int, int, mpfr_prec_t>, Interval> cache;
  auto key = std::make_tuple(k % m, m, prec);
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  Interval r = compute_cos(k % m, m, prec);
  cache.emplace(key, r);
  return r;
}

Interval enclose_real_part(const CycNum& x, mpfr_prec_t prec) {
  const auto& c = x.coeffs();
  Interval acc(c[0], prec);
  int m = x.conductor();
  for (std::size_t k = 1; k < c.size(); ++k) {
    if (c[k] == 0) continue;
    acc = acc + Interval(c[k], prec) * cos_enclosure(static_cast<int>(k), m, prec);
  }
  return acc;
}

int sign_by_intervals(const CycNum& x) {
  if (x.is_zero()) return 0;
  for (mpfr_prec_t p = 64;; p *= 2) {
    Interval e = enclose_real_part(x, p);
    if (e.positive()) return 1;
    if (e.negative()) return -1;
    if (p > (1 << 20)) throw Error(ErrorKind::NotReal, "sign refinement did not converge");
  }
}

}  // namespace orb
