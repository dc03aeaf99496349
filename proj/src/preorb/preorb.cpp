#include "orb/preorb/preorb.hpp"

#include <cmath>
#include <complex>

#include "orb/error.hpp"

namespace orb {

namespace {

std::string chart_name(const Atlas& a, std::size_t i) { return a.chart(i).id; }

// |P(c + w) - c'| <= sum |a_alpha| r^|alpha| per output; a sufficient condition for P(B) in B'.
bool coefficient_bound_holds(const PolyMap& P, const Ball& in, const Ball& out) {
  constexpr double kMargin = 1e-9;
  PolyMap Q = compose(P, AffineMap::translation(in.center));
  double r = std::sqrt(std::max(0.0, in.radius2.to_complex().real()));
  double R = std::sqrt(std::max(0.0, out.radius2.to_complex().real()));
  double total = 0;
  for (int o = 0; o < Q.out_dim(); ++o) {
    double bound = std::abs((-out.center[o]).to_complex());
    for (const auto& [mono, c] : Q.components()[o].terms()) {
      int deg = 0;
      for (int e : mono) deg += e;
      if (deg == 0) {
        bound -= std::abs((-out.center[o]).to_complex());
        bound += std::abs((c - out.center[o]).to_complex());
      } else {
        bound += std::abs(c.to_complex()) * std::pow(r, deg);
      }
    }
    total += bound * bound;
  }
  return std::sqrt(total) < R * (1 - kMargin);
}

}  // namespace

SystemPtr identity_system(const AtlasPtr& a) {
  auto f = std::make_shared<CompatibleSystem>();
  f->src = a;
  f->dst = a;
  std::size_t n = a->size();
  for (std::size_t i = 0; i < n; ++i) {
    f->theta.push_back(i);
    f->lift.push_back(PolyMap::identity(a->dim()));
  }
  f->on_emb.resize(n * n);
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t t = 0; t < n; ++t)
      for (std::size_t k = 0; k < a->emb(s, t).size(); ++k) f->on_emb[s * n + t].push_back(k);
  f->label = "1";
  return f;
}

SystemPtr system_from_lifts(const AtlasPtr& src, const AtlasPtr& dst, std::vector<std::size_t> theta,
                            std::vector<PolyMap> lifts, const std::string& label) {
  std::size_t n = src->size();
  if (theta.size() != n || lifts.size() != n)
    throw Error(ErrorKind::InvalidSystem, "chart assignment or lifts do not cover the source charts");
  for (std::size_t t : theta)
    if (t >= dst->size()) throw Error(ErrorKind::InvalidSystem, "chart assignment leaves the target atlas");
  auto f = std::make_shared<CompatibleSystem>();
  f->src = src;
  f->dst = dst;
  f->theta = std::move(theta);
  f->lift = std::move(lifts);
  f->label = label;
  f->on_emb.resize(n * n);
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t t = 0; t < n; ++t) {
      const auto& cand = dst->emb(f->theta[s], f->theta[t]);
      for (const auto& lam : src->emb(s, t)) {
        PolyMap lhs = compose(f->lift[t], lam);
        std::size_t pick = 0;
        for (std::size_t k = 0; k < cand.size(); ++k)
          if (compose(cand[k], f->lift[s]) == lhs) {
            pick = k;
            break;
          }
        f->on_emb[s * n + t].push_back(pick);
      }
    }
  return f;
}

Report validate_compatible_system(const CompatibleSystem& f, int samples, unsigned long seed) {
  Report r;
  const Atlas& U = *f.src;
  const Atlas& V = *f.dst;
  std::size_t n = U.size();
  if (!r.expect(f.theta.size() == n, "chart assignment has wrong length")) return r;
  if (!r.expect(f.lift.size() == n, "lift table has wrong length")) return r;
  if (!r.expect(f.on_emb.size() == n * n, "embedding assignment has wrong shape")) return r;
  for (std::size_t i = 0; i < n; ++i) {
    r.expect(f.theta[i] < V.size(), "chart " + chart_name(U, i) + " assigned outside the target atlas");
    r.expect(f.lift[i].in_dim() == U.dim() && f.lift[i].out_dim() == V.dim(),
             "lift on " + chart_name(U, i) + " has wrong dimensions");
  }
  if (!r.ok()) return r;
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t t = 0; t < n; ++t) {
      const auto& img = f.on_emb[s * n + t];
      bool shaped = img.size() == U.emb(s, t).size();
      for (std::size_t k : img) shaped = shaped && k < V.emb(f.theta[s], f.theta[t]).size();
      r.expect(shaped, "embedding assignment " + chart_name(U, s) + "->" + chart_name(U, t) + " malformed");
    }
  if (!r.ok()) return r;

  // Cube faces, coefficientwise.
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t t = 0; t < n; ++t)
      for (std::size_t a = 0; a < U.emb(s, t).size(); ++a) {
        const AffineMap& lam = U.emb(s, t)[a];
        r.expect(compose(f.lift[t], lam) == compose(f.emb_image_map(s, t, a), f.lift[s]),
                 "cube condition fails for embedding " + chart_name(U, s) + "->" + chart_name(U, t) + "#" +
                     std::to_string(a));
      }

  // Functoriality on composable pairs.
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t t = 0; t < n; ++t)
      for (std::size_t u = 0; u < n; ++u)
        for (std::size_t a = 0; a < U.emb(s, t).size(); ++a)
          for (std::size_t b = 0; b < U.emb(t, u).size(); ++b) {
            AffineMap c = compose(U.emb(t, u)[b], U.emb(s, t)[a]);
            auto idx = U.find_emb(s, u, c);
            std::string where = chart_name(U, s) + "->" + chart_name(U, t) + "->" + chart_name(U, u);
            if (!r.expect(idx.has_value(), "source embedding set not closed at " + where)) continue;
            r.expect(f.emb_image_map(s, u, *idx) == compose(f.emb_image_map(t, u, b), f.emb_image_map(s, t, a)),
                     "embedding assignment not functorial at " + where);
          }

  // Ball containment: witness and sampled points exactly, whole ball by coefficient bound.
  Rng rng(seed);
  for (std::size_t i = 0; i < n; ++i) {
    const Ball& in = U.chart(i).domain;
    const Ball& out = V.chart(f.theta[i]).domain;
    std::vector<Vec> pts{in.center};
    for (const auto& w : U.point_witnesses())
      if (w.chart == i) pts.push_back(w.point);
    for (int k = 0; k < samples; ++k) pts.push_back(sample_in_ball(in, U.conductor(), rng));
    for (const auto& x : pts)
      r.expect(contains(out, f.lift[i](x)), "lift on " + chart_name(U, i) + " leaves the target ball at " + to_string(x));
    const PolyMap& L = f.lift[i];
    bool exact = L.is_affine() && L.in_dim() == L.out_dim() && is_similarity(L.to_affine()) &&
                 contains(out, image(L.to_affine(), in));
    if (!exact && !coefficient_bound_holds(L, in, out))
      r.warn("containment of lift on " + chart_name(U, i) + " not certified by the coefficient bound");
  }
  // Induced map on X is well defined at span witnesses.
  for (const auto& sw : U.span_witnesses()) {
    if (sw.i >= n || sw.j >= n) continue;
    r.expect(V.identified(f.theta[sw.i], f.lift[sw.i](sw.xi), f.theta[sw.j], f.lift[sw.j](sw.xj)),
             "identified witness pair " + chart_name(U, sw.i) + "/" + chart_name(U, sw.j) + " maps to distinct points");
  }
  r.note("inclusion f(pi_i(U_i)) in phi_i(V_i) is checked on witness points only");
  return r;
}

SystemPtr compose_compatible(const SystemPtr& g, const SystemPtr& f) {
  if (f->dst != g->src) throw Error(ErrorKind::AtlasMismatch, "cannot compose " + g->label + " after " + f->label);
  auto h = std::make_shared<CompatibleSystem>();
  h->src = f->src;
  h->dst = g->dst;
  std::size_t n = f->src->size();
  std::size_t mid = g->src->size();
  h->on_emb.resize(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    h->theta.push_back(g->theta.at(f->theta[i]));
    h->lift.push_back(compose(g->lift.at(f->theta[i]), f->lift[i]));
  }
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t t = 0; t < n; ++t)
      for (std::size_t k : f->on_emb[s * n + t])
        h->on_emb[s * n + t].push_back(g->on_emb.at(f->theta[s] * mid + f->theta[t]).at(k));
  h->label = g->label + " o " + f->label;
  return h;
}

bool systems_equal(const CompatibleSystem& a, const CompatibleSystem& b) {
  return a.src == b.src && a.dst == b.dst && a.theta == b.theta && a.on_emb == b.on_emb && a.lift == b.lift;
}

CellPtr identity_orb_cell(const SystemPtr& f) {
  auto d = std::make_shared<OrbNatTrans>();
  d->from = f;
  d->to = f;
  for (std::size_t t : f->theta) d->delta.push_back(f->dst->identity_index(t));
  d->label = "i(" + f->label + ")";
  return d;
}

CellPtr solve_orb_cell(const SystemPtr& from, const SystemPtr& to, const std::string& label) {
  if (from->src != to->src || from->dst != to->dst)
    throw Error(ErrorKind::InvalidCell, "systems " + from->label + " and " + to->label + " have different atlases");
  auto d = std::make_shared<OrbNatTrans>();
  d->from = from;
  d->to = to;
  d->label = label;
  for (std::size_t i = 0; i < from->src->size(); ++i) {
    const auto& cand = from->dst->emb(from->theta[i], to->theta[i]);
    std::size_t pick = cand.size();
    for (std::size_t k = 0; k < cand.size() && pick == cand.size(); ++k)
      if (compose(cand[k], from->lift[i]) == to->lift[i]) pick = k;
    if (pick == cand.size())
      throw Error(ErrorKind::InvalidCell, "no embedding carries lift " + from->label + " to " + to->label + " on " +
                                              from->src->chart(i).id);
    d->delta.push_back(pick);
  }
  return d;
}

Report validate_orb_nat_trans(const OrbNatTrans& d) {
  Report r;
  const auto& f1 = *d.from;
  const auto& f2 = *d.to;
  if (!r.expect(f1.src == f2.src && f1.dst == f2.dst, "boundary systems have different atlases")) return r;
  const Atlas& U = *f1.src;
  const Atlas& V = *f1.dst;
  std::size_t n = U.size();
  if (!r.expect(d.delta.size() == n, "component table has wrong length")) return r;
  for (std::size_t i = 0; i < n; ++i)
    r.expect(d.delta[i] < V.emb(f1.theta[i], f2.theta[i]).size(),
             "component on " + chart_name(U, i) + " is not an embedding of the right charts");
  if (!r.ok()) return r;
  for (std::size_t i = 0; i < n; ++i)
    r.expect(f2.lift[i] == compose(d.component(i), f1.lift[i]), "(i) fails on chart " + chart_name(U, i));
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t t = 0; t < n; ++t)
      for (std::size_t a = 0; a < U.emb(s, t).size(); ++a)
        r.expect(compose(f2.emb_image_map(s, t, a), d.component(s)) == compose(d.component(t), f1.emb_image_map(s, t, a)),
                 "(ii) fails on embedding " + chart_name(U, s) + "->" + chart_name(U, t) + "#" + std::to_string(a));
  return r;
}

CellPtr vcomp_orb(const CellPtr& s, const CellPtr& d) {
  if (!systems_equal(*d->to, *s->from))
    throw Error(ErrorKind::BoundaryMismatch, "target of " + d->label + " is not the source of " + s->label);
  auto out = std::make_shared<OrbNatTrans>();
  out->from = d->from;
  out->to = s->to;
  out->label = s->label + " . " + d->label;
  const Atlas& V = *d->from->dst;
  for (std::size_t i = 0; i < d->delta.size(); ++i) {
    AffineMap c = compose(s->component(i), d->component(i));
    auto idx = V.find_emb(d->from->theta[i], s->to->theta[i], c);
    if (!idx) throw Error(ErrorKind::InvalidAtlas, "embedding set not closed under composition");
    out->delta.push_back(*idx);
  }
  return out;
}

CellPtr hcomp_orb(const CellPtr& e, const CellPtr& d) {
  if (d->from->dst != e->from->src)
    throw Error(ErrorKind::BoundaryMismatch, d->label + " and " + e->label + " do not meet in one atlas");
  const auto& f1 = *d->from;
  const auto& f2 = *d->to;
  const auto& g1 = *e->from;
  const Atlas& V = *f1.dst;
  const Atlas& W = *g1.dst;
  auto out = std::make_shared<OrbNatTrans>();
  out->from = compose_compatible(e->from, d->from);
  out->to = compose_compatible(e->to, d->to);
  out->label = e->label + " * " + d->label;
  std::size_t nv = V.size();
  for (std::size_t i = 0; i < d->delta.size(); ++i) {
    std::size_t a = f1.theta[i], b = f2.theta[i];
    const AffineMap& gd = W.emb(g1.theta[a], g1.theta[b]).at(g1.on_emb.at(a * nv + b).at(d->delta[i]));
    AffineMap c = compose(e->component(b), gd);
    auto idx = W.find_emb(out->from->theta[i], out->to->theta[i], c);
    if (!idx) throw Error(ErrorKind::InvalidAtlas, "embedding set not closed under composition");
    out->delta.push_back(*idx);
  }
  return out;
}

bool cells_equal(const OrbNatTrans& a, const OrbNatTrans& b) {
  return systems_equal(*a.from, *b.from) && systems_equal(*a.to, *b.to) && a.delta == b.delta;
}

SystemPtr rotation_system(const AtlasPtr& a, int k, const std::string& label) {
  int n = a->dim();
  AffineMap rot = AffineMap::scalar(n, root_of_unity(a->conductor(), k), Vec::Zero(n));
  std::vector<PolyMap> lifts;
  for (const auto& c : a->charts()) {
    if (!preserves(rot, c.domain)) throw Error(ErrorKind::IllTypedFixture, "rotation moves chart " + c.id);
    lifts.push_back(PolyMap::from_affine(rot));
  }
  std::vector<std::size_t> theta;
  for (std::size_t i = 0; i < a->size(); ++i) theta.push_back(i);
  return system_from_lifts(a, a, theta, lifts, label.empty() ? "rot" + std::to_string(k) : label);
}

SystemPtr power_system(const AtlasPtr& src, const AtlasPtr& dst, int n, const CycNum& c, const std::string& label) {
  if (src->size() != 1 || dst->size() != 1 || src->dim() != dst->dim())
    throw Error(ErrorKind::IllTypedFixture, "power systems need single-chart atlases of one dimension");
  PolyMap lift = power_map(src->dim(), c, n);
  return system_from_lifts(src, dst, {0}, {lift}, label.empty() ? "pow" + std::to_string(n) : label);
}

}  // namespace orb
