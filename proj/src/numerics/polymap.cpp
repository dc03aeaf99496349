#include "orb/numerics/polymap.hpp"

#include <sstream>

namespace orb {

Poly Poly::constant(int nvars, const CycNum& c) {
  Poly p(nvars);
  p.add_term(Monomial(nvars, 0), c);
  return p;
}

Poly Poly::variable(int nvars, int i) {
  Poly p(nvars);
  Monomial e(nvars, 0);
  e[i] = 1;
  p.add_term(e, CycNum(1));
  return p;
}

void Poly::add_term(const Monomial& e, const CycNum& c) {
  if (static_cast<int>(e.size()) != n_) throw Error(ErrorKind::DimMismatch, "monomial arity");
  if (c.is_zero()) return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

int Poly::degree() const {
  int d = 0;
  for (const auto& [e, c] : terms_) {
    int s = 0;
    for (int k : e) s += k;
    d = std::max(d, s);
  }
  return d;
}

CycNum Poly::operator()(const Vec& z) const {
  if (z.size() != n_) throw Error(ErrorKind::DimMismatch, "poly evaluation");
  CycNum s(0);
  for (const auto& [e, c] : terms_) {
    CycNum t = c;
    for (int i = 0; i < n_; ++i)
      for (int k = 0; k < e[i]; ++k) t *= z[i];
    s += t;
  }
  return s;
}

Poly& Poly::operator+=(const Poly& o) {
  if (o.n_ != n_) throw Error(ErrorKind::DimMismatch, "poly sum");
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.n_ != b.n_) throw Error(ErrorKind::DimMismatch, "poly product");
  Poly r(a.n_);
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      Poly::Monomial e(a.n_);
      for (int i = 0; i < a.n_; ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  return r;
}

Poly operator*(const CycNum& c, const Poly& a) {
  Poly r(a.n_);
  for (const auto& [e, x] : a.terms_) r.add_term(e, c * x);
  return r;
}

PolyMap::PolyMap(int nin, std::vector<Poly> comps) : n_in_(nin), comps_(std::move(comps)) {
  for (const auto& p : comps_)
    if (p.nvars() != nin) throw Error(ErrorKind::DimMismatch, "polymap arity");
}

PolyMap PolyMap::from_affine(const AffineMap& f) {
  int n = f.dim();
  std::vector<Poly> comps;
  for (int i = 0; i < n; ++i) {
    Poly p = Poly::constant(n, f.b[i]);
    for (int j = 0; j < n; ++j) p += f.A(i, j) * Poly::variable(n, j);
    comps.push_back(p);
  }
  return PolyMap(n, comps);
}

int PolyMap::degree() const {
  int d = 0;
  for (const auto& p : comps_) d = std::max(d, p.degree());
  return d;
}

Vec PolyMap::operator()(const Vec& z) const {
  if (z.size() != n_in_) throw Error(ErrorKind::DimMismatch, "polymap evaluation");
  Vec out(out_dim());
  for (int i = 0; i < out_dim(); ++i) out[i] = comps_[i](z);
  return out;
}

bool PolyMap::is_affine() const { return degree() <= 1 && n_in_ == out_dim(); }

AffineMap PolyMap::to_affine() const {
  if (!is_affine()) throw Error(ErrorKind::DimMismatch, "polymap is not affine");
  int n = n_in_;
  Mat a = Mat::Zero(n, n);
  Vec b = Vec::Zero(n);
  for (int i = 0; i < n; ++i)
    for (const auto& [e, c] : comps_[i].terms()) {
      int j = -1;
      for (int k = 0; k < n; ++k)
        if (e[k]) j = k;
      if (j < 0)
        b[i] = c;
      else
        a(i, j) = c;
    }
  return AffineMap(a, b);
}

PolyMap compose(const PolyMap& f, const PolyMap& g) {
  if (f.in_dim() != g.out_dim()) throw Error(ErrorKind::DimMismatch, "polymap composition");
  int n = g.in_dim();
  // powers[v][k] = g_v^k, built on demand
  std::vector<std::vector<Poly>> powers(f.in_dim());
  auto power = [&](int v, int k) -> const Poly& {
    auto& pw = powers[v];
    if (pw.empty()) pw.push_back(Poly::constant(n, CycNum(1)));
    while (static_cast<int>(pw.size()) <= k) pw.push_back(pw.back() * g.components()[v]);
    return pw[k];
  };
  std::vector<Poly> comps;
  for (const auto& p : f.components()) {
    Poly acc(n);
    for (const auto& [e, c] : p.terms()) {
      Poly t = Poly::constant(n, c);
      for (int v = 0; v < f.in_dim(); ++v)
        if (e[v]) t = t * power(v, e[v]);
      acc += t;
    }
    comps.push_back(acc);
  }
  return PolyMap(n, comps);
}

PolyMap compose(const PolyMap& f, const AffineMap& g) { return compose(f, PolyMap::from_affine(g)); }
PolyMap compose(const AffineMap& f, const PolyMap& g) { return compose(PolyMap::from_affine(f), g); }

bool operator==(const PolyMap& f, const PolyMap& g) {
  return f.in_dim() == g.in_dim() && f.components() == g.components();
}

PolyMap monomial_map(const CycNum& c, int k) { return power_map(1, c, k); }

PolyMap power_map(int n, const CycNum& c, int k) {
  std::vector<Poly> comps;
  for (int i = 0; i < n; ++i) {
    Poly p(n);
    Poly::Monomial e(n, 0);
    e[i] = k;
    p.add_term(e, c);
    comps.push_back(p);
  }
  return PolyMap(n, comps);
}

std::string to_string(const PolyMap& f) {
  std::ostringstream os;
  os << "(";
  for (int i = 0; i < f.out_dim(); ++i) {
    if (i) os << ", ";
    bool first = true;
    for (const auto& [e, c] : f.components()[i].terms()) {
      if (!first) os << " + ";
      first = false;
      os << "(" << c << ")";
      for (int v = 0; v < f.in_dim(); ++v)
        if (e[v]) os << "*z" << v << (e[v] > 1 ? "^" + std::to_string(e[v]) : "");
    }
    if (first) os << "0";
  }
  os << ")";
  return os.str();
}

}  // namespace orb
