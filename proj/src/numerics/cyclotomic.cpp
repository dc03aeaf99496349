#include "orb/numerics/cyclotomic.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <ostream>
#include <sstream>

#include "orb/numerics/interval.hpp"

namespace orb {

const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::ConductorMismatch: return "ConductorMismatch";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::NotReal: return "NotReal";
    case ErrorKind::DimMismatch: return "DimMismatch";
    case ErrorKind::PointOutsideDomain: return "PointOutsideDomain";
    case ErrorKind::NoConjugator: return "NoConjugator";
    case ErrorKind::NotUnique: return "NotUnique";
    case ErrorKind::OracleRefused: return "OracleRefused";
    case ErrorKind::AtlasMismatch: return "AtlasMismatch";
    case ErrorKind::BoundaryMismatch: return "BoundaryMismatch";
    case ErrorKind::IllTypedDiagram: return "IllTypedDiagram";
    case ErrorKind::NotComposable: return "NotComposable";
    case ErrorKind::InvalidAtlas: return "InvalidAtlas";
    case ErrorKind::InvalidSystem: return "InvalidSystem";
    case ErrorKind::InvalidCell: return "InvalidCell";
    case ErrorKind::IllTypedFixture: return "IllTypedFixture";
    case ErrorKind::NotASubAtlas: return "NotASubAtlas";
    case ErrorKind::WitnessInvalid: return "WitnessInvalid";
    case ErrorKind::NotEquivalent: return "NotEquivalent";
    case ErrorKind::InvalidRelabeling: return "InvalidRelabeling";
    case ErrorKind::UnsupportedPresentation: return "UnsupportedPresentation";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::UnsupportedParams: return "UnsupportedParams";
    case ErrorKind::PointOutsideUnitSpace: return "PointOutsideUnitSpace";
  }
  return "Unknown";
}

Rational parse_rational(const std::string& s) {
  auto bad = [&] { return Error(ErrorKind::ParseError, "bad rational '" + s + "'"); };
  if (s.empty()) throw bad();
  auto slash = s.find('/');
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  auto digits = [](const std::string& t, bool allow_sign) {
    std::size_t i = 0;
    if (allow_sign && !t.empty() && (t[0] == '-' || t[0] == '+')) i = 1;
    if (i >= t.size()) return false;
    for (; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9') return false;
    return true;
  };
  if (!digits(num, true) || !digits(den, false)) throw bad();
  mpz_class n(num[0] == '+' ? num.substr(1) : num, 10);
  mpz_class d(den, 10);
  if (d == 0) throw bad();
  Rational q(n, d);
  q.canonicalize();
  return q;
}

std::string format_rational(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  return c.get_str();
}

int euler_phi(int m) {
  int r = 0;
  for (int k = 1; k <= m; ++k)
    if (std::gcd(k, m) == 1) ++r;
  return r;
}

std::vector<long long> cyclotomic_polynomial(int m) {
  if (m < 1) throw Error(ErrorKind::UnsupportedParams, "conductor must be positive");
  // x^m - 1 divided by Phi_d for every proper divisor d.
  std::vector<long long> p(m + 1, 0);
  p[0] = -1;
  p[m] = 1;
  for (int d = 1; d < m; ++d) {
    if (m % d) continue;
    auto q = cyclotomic_polynomial(d);
    int dq = static_cast<int>(q.size()) - 1;
    int dp = static_cast<int>(p.size()) - 1;
    std::vector<long long> out(dp - dq + 1, 0);
    for (int i = dp; i >= dq; --i) {
      long long c = p[i];  // q is monic
      out[i - dq] = c;
      for (int j = 0; j <= dq; ++j) p[i - dq + j] -= c * q[j];
    }
    p = out;
  }
  return p;
}

CyclotomicField::CyclotomicField(int m) : m_(m), phi_(orb::cyclotomic_polynomial(m)) {
  int d = degree();
  std::vector<Rational> cur(d, Rational(0));
  cur[0] = 1;
  powers_.reserve(2 * m);
  for (int k = 0; k < 2 * m; ++k) {
    powers_.push_back(cur);
    // multiply by zeta
    Rational top = cur[d - 1];
    for (int i = d - 1; i > 0; --i) cur[i] = cur[i - 1];
    cur[0] = 0;
    if (top != 0)
      for (int i = 0; i < d; ++i) cur[i] -= top * Rational(static_cast<long>(phi_[i]));
  }
}

std::shared_ptr<const CyclotomicField> CyclotomicField::get(int m) {
  static std::mutex mu;
  static std::map<int, std::shared_ptr<const CyclotomicField>> cache;
  if (m < 1 || m > 4096) throw Error(ErrorKind::UnsupportedParams, "conductor out of range");
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(m);
  if (it != cache.end()) return it->second;
  std::shared_ptr<const CyclotomicField> f(new CyclotomicField(m));
  cache.emplace(m, f);
  return f;
}

CycNum CycNum::zeta(int m, int k) {
  auto f = CyclotomicField::get(m);
  int e = ((k % m) + m) % m;
  return CycNum(f, f->power(e));
}

CycNum root_of_unity(int m, int k) {
  if (m <= 2) return CycNum(m == 2 && ((k % 2) + 2) % 2 == 1 ? -1 : 1);
  return CycNum::zeta(m, k);
}

CycNum CycNum::from_power_coeffs(int m, const std::vector<Rational>& coeffs) {
  auto f = CyclotomicField::get(m);
  std::vector<Rational> c(f->degree(), Rational(0));
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if (coeffs[k] == 0) continue;
    Rational ck = coeffs[k];
    ck.canonicalize();
    const auto& p = f->power(static_cast<int>(k % m));
    for (int i = 0; i < f->degree(); ++i)
      if (p[i] != 0) c[i] += ck * p[i];
  }
  return CycNum(f, std::move(c));
}

bool CycNum::is_zero() const {
  for (const auto& q : c_)
    if (q != 0) return false;
  return true;
}

bool CycNum::is_rational() const {
  for (std::size_t i = 1; i < c_.size(); ++i)
    if (c_[i] != 0) return false;
  return true;
}

Rational CycNum::rational_value() const {
  if (!is_rational()) throw Error(ErrorKind::NotReal, "element is not rational");
  return c_[0];
}

bool CycNum::is_real() const { return is_rational() || conj() == *this; }

std::vector<Rational> CycNum::coeffs_in(const CyclotomicField& f) const {
  if (field_) return c_;
  std::vector<Rational> c(f.degree(), Rational(0));
  c[0] = c_[0];
  return c;
}

std::shared_ptr<const CyclotomicField> CycNum::common_field(const CycNum& a, const CycNum& b) {
  if (!a.field_) return b.field_;
  if (!b.field_) return a.field_;
  if (a.field_ != b.field_)
    throw Error(ErrorKind::ConductorMismatch, "conductors " + std::to_string(a.conductor()) +
                                                  " and " + std::to_string(b.conductor()));
  return a.field_;
}

CycNum& CycNum::operator+=(const CycNum& o) {
  auto f = common_field(*this, o);
  if (!f) {
    c_[0] += o.c_[0];
    return *this;
  }
  if (!field_) {
    c_ = coeffs_in(*f);
    field_ = f;
  }
  if (!o.field_) {
    c_[0] += o.c_[0];
  } else {
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  }
  return *this;
}

CycNum& CycNum::operator-=(const CycNum& o) { return *this += -o; }

CycNum CycNum::operator-() const {
  CycNum r = *this;
  for (auto& q : r.c_) q = -q;
  return r;
}

CycNum& CycNum::operator*=(const CycNum& o) {
  auto f = common_field(*this, o);
  if (!o.field_) {
    Rational s = o.c_[0];
    for (auto& q : c_) q *= s;
    return *this;
  }
  if (!field_) {
    Rational s = c_[0];
    *this = o;
    for (auto& q : c_) q *= s;
    return *this;
  }
  int d = f->degree();
  std::vector<Rational> prod(2 * d - 1, Rational(0));
  for (int i = 0; i < d; ++i) {
    if (c_[i] == 0) continue;
    for (int j = 0; j < d; ++j)
      if (o.c_[j] != 0) prod[i + j] += c_[i] * o.c_[j];
  }
  std::vector<Rational> out(prod.begin(), prod.begin() + d);
  for (int k = d; k < 2 * d - 1; ++k) {
    if (prod[k] == 0) continue;
    const auto& p = f->power(k);
    for (int i = 0; i < d; ++i)
      if (p[i] != 0) out[i] += prod[k] * p[i];
  }
  c_ = std::move(out);
  return *this;
}

CycNum CycNum::galois(int a) const {
  if (!field_) return *this;
  int m = field_->conductor();
  int aa = ((a % m) + m) % m;
  if (std::gcd(aa, m) != 1) throw Error(ErrorKind::UnsupportedParams, "galois exponent not a unit");
  int d = field_->degree();
  std::vector<Rational> out(d, Rational(0));
  for (int k = 0; k < d; ++k) {
    if (c_[k] == 0) continue;
    const auto& p = field_->power(static_cast<int>((static_cast<long long>(aa) * k) % m));
    for (int i = 0; i < d; ++i)
      if (p[i] != 0) out[i] += c_[k] * p[i];
  }
  return CycNum(field_, std::move(out));
}

CycNum CycNum::conj() const { return field_ ? galois(field_->conductor() - 1) : *this; }

Rational CycNum::norm() const {
  if (!field_) return c_[0];
  CycNum acc = *this;
  int m = field_->conductor();
  for (int a = 2; a < m; ++a)
    if (std::gcd(a, m) == 1) acc *= galois(a);
  return acc.c_[0];
}

CycNum CycNum::inverse() const {
  if (is_zero()) throw Error(ErrorKind::DivisionByZero, "inverse of zero");
  if (!field_ || is_rational()) {
    CycNum r = *this;
    Rational inv = 1 / c_[0];
    for (auto& q : r.c_) q = 0;
    r.c_[0] = inv;
    return r;
  }
  int m = field_->conductor();
  CycNum others(1);
  for (int a = 2; a < m; ++a)
    if (std::gcd(a, m) == 1) others *= galois(a);
  CycNum n = *this * others;
  Rational inv = 1 / n.c_[0];
  for (auto& q : others.c_) q *= inv;
  return others;
}

CycNum& CycNum::operator/=(const CycNum& o) { return *this *= o.inverse(); }

CycNum CycNum::lift(int M) const {
  if (!field_) return *this;
  int m = field_->conductor();
  if (M % m) throw Error(ErrorKind::ConductorMismatch, "cannot lift conductor " + std::to_string(m) +
                                                          " into " + std::to_string(M));
  if (M == m) return *this;
  std::vector<Rational> pc(M, Rational(0));
  for (std::size_t k = 0; k < c_.size(); ++k) pc[(k * (M / m)) % M] += c_[k];
  return from_power_coeffs(M, pc);
}

bool operator==(const CycNum& a, const CycNum& b) {
  if (a.field_ && b.field_ && a.field_ != b.field_) {
    int l = std::lcm(a.conductor(), b.conductor());
    return a.lift(l).c_ == b.lift(l).c_;
  }
  auto f = a.field_ ? a.field_ : b.field_;
  if (!f) return a.c_[0] == b.c_[0];
  return a.coeffs_in(*f) == b.coeffs_in(*f);
}

std::complex<double> CycNum::to_complex() const {
  if (!field_) return {c_[0].get_d(), 0.0};
  std::complex<double> z = 0;
  int m = field_->conductor();
  for (std::size_t k = 0; k < c_.size(); ++k) {
    if (c_[k] == 0) continue;
    double t = 2.0 * M_PI * static_cast<double>(k) / m;
    z += c_[k].get_d() * std::complex<double>(std::cos(t), std::sin(t));
  }
  return z;
}

std::string CycNum::to_string() const {
  if (is_rational()) return format_rational(c_[0]);
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = 0; k < c_.size(); ++k) {
    if (c_[k] == 0) continue;
    if (!first) os << " + ";
    first = false;
    os << format_rational(c_[k]);
    if (k == 1) os << "*z" << conductor();
    if (k > 1) os << "*z" << conductor() << "^" << k;
  }
  return os.str();
}

std::vector<std::string> CycNum::serialize(int m) const {
  if (field_ && m % field_->conductor())
    throw Error(ErrorKind::ConductorMismatch, "serialize conductor mismatch");
  CycNum x = lift(m);
  std::vector<std::string> out(m, "0");
  for (std::size_t k = 0; k < x.c_.size(); ++k) out[k] = format_rational(x.c_[k]);
  return out;
}

int sign_real(const CycNum& x) {
  if (x.is_rational()) {
    int s = sgn(x.coeffs()[0]);
    return s > 0 ? 1 : (s < 0 ? -1 : 0);
  }
  if (!x.is_real()) throw Error(ErrorKind::NotReal, "sign of non-real element " + x.to_string());
  return sign_by_intervals(x);
}

std::ostream& operator<<(std::ostream& os, const CycNum& x) { return os << x.to_string(); }

}  // namespace orb
