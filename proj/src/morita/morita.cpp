#include "orb/morita/morita.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "orb/atlas/lemmas.hpp"
#include "orb/error.hpp"

namespace orb {

namespace {

bool same_group(const std::vector<AffineMap>& a, const std::vector<AffineMap>& b) {
  if (a.size() != b.size()) return false;
  for (const auto& g : a)
    if (std::find(b.begin(), b.end(), g) == b.end()) return false;
  return true;
}

bool has_map(const std::vector<AffineMap>& v, const AffineMap& f) {
  return std::find(v.begin(), v.end(), f) != v.end();
}

// A rational s with 0 < s and s^2 <= r2, close to sqrt(r2).
Rational rational_radius_below(const CycNum& r2) {
  double d = std::sqrt(std::max(0.0, r2.to_complex().real()));
  Rational s(static_cast<long>(std::floor(d * 64)), 64);
  s.canonicalize();
  while (s > 0 && CycNum(s * s) > r2) s -= Rational(1, 64);
  if (s <= 0) {
    s = Rational(1, 64);
    while (CycNum(s * s) >= r2) s /= 2;
  }
  return s;
}

Rational rational_or_one(const CycNum& r2) { return r2.is_rational() ? r2.rational_value() : Rational(1); }

// ---- both atlases in the sheet frame of the second ----

struct Placed {
  const Chart* chart = nullptr;
  std::size_t sheet = 0;
  AffineMap place;
  Ball frame_ball() const { return image(place, chart->domain); }
};

struct Frame {
  const Atlas* u1 = nullptr;
  const Atlas* u2 = nullptr;
  std::vector<std::size_t> perm;
  std::vector<AffineMap> maps;
  std::vector<Placed> p1, p2;

  const std::vector<AffineMap>& group(std::size_t sheet) const { return u2->model()->sheets.at(sheet).group; }
};

void check_relabeling(const Relabeling& phi, const std::vector<Sheet>& from, int dim) {
  if (phi.perm.size() != from.size() || phi.maps.size() != from.size())
    throw Error(ErrorKind::InvalidRelabeling, "relabeling must give one target and one map per sheet");
  std::set<std::size_t> seen(phi.perm.begin(), phi.perm.end());
  if (seen.size() != from.size() || *seen.rbegin() >= from.size())
    throw Error(ErrorKind::InvalidRelabeling, "sheet assignment is not a bijection");
  for (const auto& m : phi.maps)
    if (m.dim() != dim || !is_similarity(m))
      throw Error(ErrorKind::InvalidRelabeling, "sheet map is not a similarity of the right dimension");
}

std::vector<Sheet> relabeled_sheets(const Relabeling& phi, const std::vector<Sheet>& from) {
  std::vector<Sheet> out(from.size());
  for (std::size_t a = 0; a < from.size(); ++a) {
    const AffineMap& m = phi.maps[a];
    AffineMap minv = inverse(m);
    Sheet s{from[a].id, image(m, from[a].domain), {}};
    for (const auto& g : from[a].group) s.group.push_back(compose(m, compose(g, minv)));
    out[phi.perm[a]] = s;
  }
  return out;
}

// Sheet correspondence U1 -> U2; nothing when no bijection between equal sheets exists.
std::optional<Frame> make_frame(const Atlas& U1, const Atlas& U2, const std::optional<Relabeling>& phi) {
  if (!U1.model() || !U2.model() || U1.dim() != U2.dim()) return std::nullopt;
  const auto& s1 = U1.model()->sheets;
  const auto& s2 = U2.model()->sheets;
  Frame f;
  f.u1 = &U1;
  f.u2 = &U2;
  if (phi) {
    check_relabeling(*phi, s1, U1.dim());
    if (s1.size() != s2.size()) return std::nullopt;
    auto moved = relabeled_sheets(*phi, s1);
    for (std::size_t b = 0; b < s2.size(); ++b)
      if (!ball_equal(moved[b].domain, s2[b].domain) || !same_group(moved[b].group, s2[b].group)) return std::nullopt;
    f.perm = phi->perm;
    f.maps = phi->maps;
  } else {
    if (s1.size() != s2.size()) return std::nullopt;
    std::vector<bool> used(s2.size(), false);
    for (const auto& a : s1) {
      bool found = false;
      for (std::size_t b = 0; b < s2.size() && !found; ++b)
        if (!used[b] && ball_equal(a.domain, s2[b].domain) && same_group(a.group, s2[b].group)) {
          used[b] = true;
          f.perm.push_back(b);
          f.maps.push_back(AffineMap::identity(U1.dim()));
          found = true;
        }
      if (!found) return std::nullopt;
    }
  }
  const SheetModel& m1 = *U1.model();
  const SheetModel& m2 = *U2.model();
  for (std::size_t i = 0; i < U1.size(); ++i) {
    std::size_t a = m1.sheet_of[i];
    f.p1.push_back({&U1.chart(i), f.perm[a], compose(f.maps[a], m1.placement[i])});
  }
  for (std::size_t j = 0; j < U2.size(); ++j) f.p2.push_back({&U2.chart(j), m2.sheet_of[j], m2.placement[j]});
  return f;
}

// Some mu = d.place^-1 o gamma o s.place that embeds s into d.
std::optional<AffineMap> cross_embedding(const Placed& s, const Placed& d, const std::vector<AffineMap>& group) {
  if (s.sheet != d.sheet) return std::nullopt;
  AffineMap dinv = inverse(d.place);
  for (const auto& g : group) {
    AffineMap mu = compose(dinv, compose(g, s.place));
    if (!contains(d.chart->domain, image(mu, s.chart->domain))) continue;
    if (validate_embedding(*s.chart, *d.chart, mu).ok()) return mu;
  }
  return std::nullopt;
}

bool covers(const Placed& w, std::size_t sheet, const Vec& p, const std::vector<AffineMap>& group) {
  if (w.sheet != sheet) return false;
  AffineMap inv = inverse(w.place);
  for (const auto& g : group)
    if (contains(w.chart->domain, inv(g(p)))) return true;
  return false;
}

enum class Overlap { Disjoint, Nested, Lens };

// Relation of two balls of one sheet modulo the sheet group.
Overlap relation(const Ball& a, const Ball& b, const std::vector<AffineMap>& group) {
  Overlap out = Overlap::Disjoint;
  for (const auto& g : group) {
    Ball ga = image(g, a);
    if (!intersects(ga, b)) continue;
    if (contains(ga, b) || contains(b, ga))
      out = Overlap::Nested;
    else
      return Overlap::Lens;
  }
  return out;
}

// Sheet points (sheet, p) sampled from every chart of an atlas, in the frame.
struct FramePoint {
  std::size_t sheet;
  Vec p;
  std::string where;
};

std::vector<FramePoint> frame_points(const Atlas& A, const std::vector<Placed>& placed, int samples, Rng& rng,
                                     const std::string& tag) {
  std::vector<FramePoint> out;
  int per = std::max(2, samples / static_cast<int>(std::max<std::size_t>(1, A.size())));
  for (std::size_t i = 0; i < A.size(); ++i) {
    std::vector<Vec> xs{A.chart(i).domain.center};
    for (const auto& w : A.point_witnesses())
      if (w.chart == i) xs.push_back(w.point);
    for (int k = 0; k < per; ++k) xs.push_back(sample_in_ball(A.chart(i).domain, A.conductor(), rng));
    for (const auto& x : xs)
      out.push_back({placed[i].sheet, placed[i].place(x), tag + " " + A.chart(i).id + to_string(x)});
  }
  return out;
}

// Span placement in the frame, through its first leg.
Placed span_placed(const Frame& f, const WitnessSpan& s) {
  const Placed& p = f.p1.at(s.i1);
  return {&s.chart, p.sheet, compose(p.place, s.l1)};
}

std::optional<WitnessSpan> restricted_span(const Frame& f, const FramePoint& q, std::size_t n) {
  const auto& group = f.group(q.sheet);
  for (std::size_t i = 0; i < f.p1.size(); ++i) {
    const Placed& a = f.p1[i];
    if (a.sheet != q.sheet) continue;
    AffineMap ainv = inverse(a.place);
    for (const auto& g : group) {
      Vec x = ainv(g(q.p));
      if (!contains(a.chart->domain, x)) continue;
      Rational r2 = rational_or_one(a.chart->domain.radius2);
      for (int iter = 0; iter < 40; ++iter) {
        RestrictedChart R = restrict_chart(*a.chart, x, r2, "w" + std::to_string(n));
        Placed w{&R.chart, a.sheet, a.place};
        for (std::size_t j = 0; j < f.p2.size(); ++j) {
          auto mu = cross_embedding(w, f.p2[j], group);
          if (mu) return WitnessSpan{R.chart, i, AffineMap::identity(R.chart.dim()), j, *mu};
        }
        r2 = R.chart.domain.radius2.rational_value() / 4;
      }
    }
  }
  return std::nullopt;
}

SheetModel extend_model(const SheetModel& base, const std::vector<std::size_t>& sheet_of,
                        const std::vector<AffineMap>& placement) {
  SheetModel m = base;
  m.sheet_of.insert(m.sheet_of.end(), sheet_of.begin(), sheet_of.end());
  m.placement.insert(m.placement.end(), placement.begin(), placement.end());
  return m;
}

// ---- Morita conditions ----

std::optional<UnitPoint> unit_preimage(const GroupoidMorphism& M, const UnitPoint& z) {
  const Groupoid& G = *M.src;
  for (std::size_t c = 0; c < M.unit.size(); ++c) {
    if (M.unit[c].target != z.comp) continue;
    const PolyMap& f = M.unit[c].map;
    if (f.in_dim() == 0) {
      UnitPoint x{c, Vec(0)};
      if (G.contains_unit(x) && exact_equal(f(x.x), z.x)) return x;
      continue;
    }
    if (!f.is_affine() || f.in_dim() != f.out_dim()) continue;
    AffineMap a = f.to_affine();
    if (!is_similarity(a)) continue;
    UnitPoint x{c, inverse(a)(z.x)};
    if (G.contains_unit(x) && exact_equal(a(x.x), z.x)) return x;
  }
  return std::nullopt;
}

std::vector<UnitPoint> comp_witnesses(const Groupoid& H, std::size_t d, int samples, Rng& rng,
                                      const std::vector<UnitPoint>& special) {
  const Ball& b = H.units()[d].ball;
  std::vector<UnitPoint> out{{d, b.center}};
  if (b.dim() > 0) {
    Rational s = rational_radius_below(b.radius2);
    for (int k = 1; k <= 3; ++k) {
      Vec x = b.center;
      x[0] += CycNum(s * k / 4);
      out.push_back({d, x});
    }
  }
  for (const auto& u : special)
    if (u.comp == d) out.push_back(u);
  for (int k = 0; k < samples; ++k) out.push_back({d, sample_in_ball(b, H.conductor(), rng)});
  return out;
}

}  // namespace

// ---- sub-atlas inclusions ----

SystemPtr inclusion_system(const AtlasPtr& sub, const AtlasPtr& full) {
  if (sub->dim() != full->dim()) throw Error(ErrorKind::NotASubAtlas, "dimensions differ");
  auto f = std::make_shared<CompatibleSystem>();
  f->src = sub;
  f->dst = full;
  f->label = "incl";
  for (const auto& c : sub->charts()) {
    auto idx = full->chart_index(c.id);
    if (!idx || !ball_equal(full->chart(*idx).domain, c.domain) || !same_group(full->chart(*idx).group, c.group))
      throw Error(ErrorKind::NotASubAtlas, "chart " + c.id + " is not a chart of the larger atlas");
    f->theta.push_back(*idx);
    f->lift.push_back(PolyMap::identity(sub->dim()));
  }
  std::size_t n = sub->size();
  f->on_emb.resize(n * n);
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t t = 0; t < n; ++t)
      for (const auto& lam : sub->emb(s, t)) {
        auto k = full->find_emb(f->theta[s], f->theta[t], lam);
        if (!k)
          throw Error(ErrorKind::NotASubAtlas,
                      "embedding " + sub->chart(s).id + "->" + sub->chart(t).id + " missing from the larger atlas");
        f->on_emb[s * n + t].push_back(*k);
      }
  return f;
}

MorphismPtr subatlas_inclusion_morphism(FunctorF& F, const AtlasPtr& sub, const AtlasPtr& full) {
  return F.morphism(inclusion_system(sub, full));
}

MoritaReport check_morita(const GroupoidMorphism& M, int samples, unsigned long seed) {
  MoritaReport out;
  const Groupoid& G = *M.src;
  const Groupoid& H = *M.dst;
  Rng rng(seed);

  Report& ri = out.condition_i;
  if (G.dim() != H.dim()) {
    ri.fail("condition (i): t o pr1 is not a submersion (unit dimensions " + std::to_string(G.dim()) + " and " +
            std::to_string(H.dim()) + ")");
  } else {
    for (std::size_t c = 0; c < M.unit.size(); ++c) {
      const PolyMap& f = M.unit[c].map;
      bool local_iso = f.is_affine() && is_similarity(f.to_affine()) && f.in_dim() == f.out_dim();
      ri.expect(local_iso, "condition (i): unit map on " + G.units()[c].label + " is not certified as a submersion");
    }
  }
  auto special = H.special_points();
  int per = std::max(2, samples / (4 * static_cast<int>(H.units().size())));
  for (std::size_t d = 0; d < H.units().size(); ++d)
    for (const auto& w : comp_witnesses(H, d, per, rng, special)) {
      bool reached = false;
      for (const auto& r : H.arrows_from(w))
        if (unit_preimage(M, H.target(r))) {
          reached = true;
          break;
        }
      ++ri.checks;
      if (!reached) {
        if (out.unreached.size() < 5)
          ri.fail("condition (i): unit point " + to_string(w) + " of " + H.units()[d].label +
                  " is not in the saturation of the image");
        out.unreached.push_back(w);
      }
    }
  if (out.unreached.size() > 5)
    ri.fail("condition (i): " + std::to_string(out.unreached.size()) + " unreached witness points in total");

  Report& rii = out.condition_ii;
  Tally t(rii);
  std::vector<UnitPoint> xs = G.special_points();
  for (int k = 0; k < samples; ++k) xs.push_back(G.sample_unit(rng));
  for (std::size_t n = 0; n < xs.size(); ++n) {
    const UnitPoint& x = xs[n];
    UnitPoint px = M.apply(x);
    std::vector<UnitPoint> ys;
    auto hs = H.arrows_from(px);
    if (!hs.empty()) {
      auto y = unit_preimage(M, H.target(hs[n % hs.size()]));
      if (y) ys.push_back(*y);
    }
    auto gs = G.arrows_from(x);
    if (!gs.empty()) ys.push_back(G.target(gs[(n * 7 + 1) % gs.size()]));
    for (const auto& y : ys) {
      std::string at = to_string(x) + " -> " + to_string(y);
      auto A = G.arrows_between(x, y);
      auto B = H.arrows_between(px, M.apply(y));
      std::vector<Arrow> img;
      bool lands = true;
      for (const auto& a : A) {
        Arrow b = M.apply(a);
        lands = lands && std::any_of(B.begin(), B.end(), [&](const Arrow& c) { return H.equal(b, c); });
        img.push_back(b);
      }
      t.check(lands, "condition (ii): Psi maps R(x, y) into R'(psi x, psi y)", at);
      bool injective = true;
      for (std::size_t i = 0; i < img.size(); ++i)
        for (std::size_t j = i + 1; j < img.size(); ++j)
          if (H.equal(img[i], img[j])) injective = false;
      t.check(injective, "condition (ii): eta is injective on the fiber", at);
      bool surjective = true;
      for (const auto& b : B)
        if (!std::any_of(img.begin(), img.end(), [&](const Arrow& c) { return H.equal(b, c); })) surjective = false;
      t.check(surjective, "condition (ii): gamma is defined on the whole fiber", at);
    }
  }
  t.flush();
  out.verdict = ri.ok() && rii.ok();
  return out;
}

// ---- atlas equivalence ----

std::optional<EquivalenceWitness> auto_witness(const Atlas& U1, const Atlas& U2, const std::optional<Relabeling>& phi,
                                               int samples, unsigned long seed) {
  auto f = make_frame(U1, U2, phi);
  if (!f) return std::nullopt;
  EquivalenceWitness w;
  w.phi = phi;
  for (std::size_t i = 0; i < U1.size(); ++i)
    for (std::size_t j = 0; j < U2.size(); ++j) {
      auto mu = cross_embedding(f->p1[i], f->p2[j], f->group(f->p1[i].sheet));
      if (!mu) continue;
      Chart c = U1.chart(i);
      c.id = "u1." + c.id;
      w.spans.push_back({c, i, AffineMap::identity(U1.dim()), j, *mu});
      break;
    }
  for (std::size_t j = 0; j < U2.size(); ++j)
    for (std::size_t i = 0; i < U1.size(); ++i) {
      auto nu = cross_embedding(f->p2[j], f->p1[i], f->group(f->p2[j].sheet));
      if (!nu) continue;
      Chart c = U2.chart(j);
      c.id = "u2." + c.id;
      w.spans.push_back({c, i, *nu, j, AffineMap::identity(U2.dim())});
      break;
    }
  Rng rng(seed);
  auto pts = frame_points(U1, f->p1, samples, rng, "U1");
  auto pts2 = frame_points(U2, f->p2, samples, rng, "U2");
  pts.insert(pts.end(), pts2.begin(), pts2.end());
  for (const auto& q : pts) {
    bool covered = false;
    for (const auto& s : w.spans)
      if (covers(span_placed(*f, s), q.sheet, q.p, f->group(q.sheet))) {
        covered = true;
        break;
      }
    if (covered) continue;
    auto s = restricted_span(*f, q, w.spans.size());
    if (s) w.spans.push_back(*s);
  }
  return w;
}

bool atlases_equivalent(const Atlas& U1, const Atlas& U2, const EquivalenceWitness& w, int samples,
                        unsigned long seed) {
  auto f = make_frame(U1, U2, w.phi);
  if (!f) {
    if (!w.spans.empty()) throw Error(ErrorKind::WitnessInvalid, "the atlases share no sheet model to check spans in");
    return false;
  }
  for (const auto& s : w.spans) {
    const std::string tag = "span " + s.chart.id + ": ";
    if (s.i1 >= U1.size() || s.i2 >= U2.size()) throw Error(ErrorKind::WitnessInvalid, tag + "unknown chart");
    Report r = validate_chart(s.chart);
    r.merge(validate_embedding(s.chart, U1.chart(s.i1), s.l1), "first leg: ");
    r.merge(validate_embedding(s.chart, U2.chart(s.i2), s.l2), "second leg: ");
    if (!r.ok()) throw Error(ErrorKind::WitnessInvalid, tag + r.violations.front());
    const Placed& a = f->p1[s.i1];
    const Placed& b = f->p2[s.i2];
    bool same = false;
    if (a.sheet == b.sheet) {
      AffineMap left = compose(a.place, s.l1), right = compose(b.place, s.l2);
      for (const auto& g : f->group(a.sheet))
        if (compose(g, left) == right) {
          same = true;
          break;
        }
    }
    if (!same) throw Error(ErrorKind::WitnessInvalid, tag + "the two legs project to different parts of the space");
  }
  Rng rng(seed);
  auto pts = frame_points(U1, f->p1, samples, rng, "U1");
  auto pts2 = frame_points(U2, f->p2, samples, rng, "U2");
  pts.insert(pts.end(), pts2.begin(), pts2.end());
  for (const auto& q : pts) {
    bool covered = false;
    for (const auto& s : w.spans)
      if (covers(span_placed(*f, s), q.sheet, q.p, f->group(q.sheet))) {
        covered = true;
        break;
      }
    if (!covered) return false;
  }
  return true;
}

bool atlases_equivalent(const Atlas& U1, const Atlas& U2, int samples, unsigned long seed) {
  auto w = auto_witness(U1, U2, std::nullopt, samples, seed);
  if (!w) return false;
  return atlases_equivalent(U1, U2, *w, samples, seed);
}

bool is_refinement(const Atlas& U, const Atlas& V, const RefinementMap& gamma) {
  if (gamma.size() != U.size()) return false;
  auto f = make_frame(U, V, std::nullopt);
  if (!f) return false;
  for (std::size_t i = 0; i < U.size(); ++i) {
    const auto& [j, lam] = gamma[i];
    if (j >= V.size() || !validate_embedding(U.chart(i), V.chart(j), lam).ok()) return false;
    const Placed& a = f->p1[i];
    const Placed& b = f->p2[j];
    if (a.sheet != b.sheet) return false;
    AffineMap right = compose(b.place, lam);
    bool same = false;
    for (const auto& g : f->group(a.sheet))
      if (compose(g, a.place) == right) same = true;
    if (!same) return false;
  }
  return true;
}

std::optional<RefinementMap> find_refinement(const Atlas& U, const Atlas& V, const std::optional<Relabeling>& phi) {
  auto f = make_frame(U, V, phi);
  if (!f) return std::nullopt;
  RefinementMap out;
  for (std::size_t i = 0; i < U.size(); ++i) {
    std::optional<std::pair<std::size_t, AffineMap>> hit;
    for (std::size_t j = 0; j < V.size() && !hit; ++j) {
      auto mu = cross_embedding(f->p1[i], f->p2[j], f->group(f->p1[i].sheet));
      if (mu) hit = std::make_pair(j, *mu);
    }
    if (!hit) return std::nullopt;
    out.push_back(*hit);
  }
  return out;
}

CommonRefinement common_refinement(const AtlasPtr& U1, const AtlasPtr& U2, const EquivalenceWitness& w, int samples,
                                   unsigned long seed) {
  if (!atlases_equivalent(*U1, *U2, w, samples, seed))
    throw Error(ErrorKind::NotEquivalent, "the witness spans do not cover both atlases");
  auto f = make_frame(*U1, *U2, w.phi);
  // Greedy: keep spans whose images are nested in or disjoint from the ones kept.
  std::vector<const WitnessSpan*> kept;
  for (const auto& s : w.spans) {
    Placed p = span_placed(*f, s);
    Ball b = p.frame_ball();
    bool ok = true;
    for (const auto* k : kept) {
      Placed q = span_placed(*f, *k);
      if (q.sheet != p.sheet) continue;
      Overlap o = relation(b, q.frame_ball(), f->group(p.sheet));
      bool duplicate = false;
      for (const auto& g : f->group(p.sheet))
        if (ball_equal(image(g, b), q.frame_ball())) duplicate = true;
      if (o == Overlap::Lens || duplicate) ok = false;
    }
    if (ok) kept.push_back(&s);
  }
  Rng rng(seed);
  auto pts = frame_points(*U1, f->p1, samples, rng, "U1");
  auto pts2 = frame_points(*U2, f->p2, samples, rng, "U2");
  pts.insert(pts.end(), pts2.begin(), pts2.end());
  for (const auto& q : pts) {
    bool covered = std::any_of(kept.begin(), kept.end(), [&](const WitnessSpan* s) {
      return covers(span_placed(*f, *s), q.sheet, q.p, f->group(q.sheet));
    });
    if (!covered) throw Error(ErrorKind::NotEquivalent, "no laminar refinement covers " + q.where);
  }

  const SheetModel& m1 = *U1->model();
  const SheetModel& m2 = *U2->model();
  std::vector<Chart> wc;
  std::vector<std::size_t> sheet1, sheet2;
  std::vector<AffineMap> place1, place2;
  CommonRefinement out;
  for (std::size_t n = 0; n < kept.size(); ++n) {
    const WitnessSpan& s = *kept[n];
    Chart c = s.chart;
    c.id = "w" + std::to_string(n);
    wc.push_back(c);
    sheet1.push_back(m1.sheet_of[s.i1]);
    place1.push_back(compose(m1.placement[s.i1], s.l1));
    sheet2.push_back(m2.sheet_of[s.i2]);
    place2.push_back(compose(m2.placement[s.i2], s.l2));
    out.to_u1.emplace_back(s.i1, s.l1);
    out.to_u2.emplace_back(s.i2, s.l2);
  }
  std::vector<PointWitness> wpts;
  for (std::size_t n = 0; n < wc.size(); ++n) wpts.push_back({n, wc[n].domain.center});
  SheetModel wm{m1.sheets, sheet1, place1};
  out.W = std::make_shared<Atlas>(U1->conductor(), U1->dim(), wc, std::vector<Embedding>{}, OracleKind::Sheets, wm,
                                  wpts);

  auto joined = [&](const AtlasPtr& U, const SheetModel& m, const std::vector<std::size_t>& sh,
                    const std::vector<AffineMap>& pl) {
    std::vector<Chart> charts = U->charts();
    charts.insert(charts.end(), wc.begin(), wc.end());
    std::vector<PointWitness> pts = U->point_witnesses();
    for (const auto& p : wpts) pts.push_back({p.chart + U->size(), p.point});
    int conductor = std::max(U1->conductor(), U2->conductor());
    return std::make_shared<Atlas>(conductor, U->dim(), charts, U->declared(), OracleKind::Sheets,
                                   extend_model(m, sh, pl), pts);
  };
  out.A1 = joined(U1, m1, sheet1, place1);
  out.A2 = joined(U2, m2, sheet2, place2);
  return out;
}

// ---- relabelings ----

AtlasPtr pushforward_atlas(const Relabeling& phi, const Atlas& U) {
  if (!U.model()) throw Error(ErrorKind::InvalidRelabeling, "the atlas has no sheet model to relabel");
  const SheetModel& m = *U.model();
  check_relabeling(phi, m.sheets, U.dim());
  SheetModel out{relabeled_sheets(phi, m.sheets), {}, {}};
  for (std::size_t i = 0; i < U.size(); ++i) {
    std::size_t a = m.sheet_of[i];
    out.sheet_of.push_back(phi.perm[a]);
    out.placement.push_back(compose(phi.maps[a], m.placement[i]));
  }
  return std::make_shared<Atlas>(U.conductor(), U.dim(), U.charts(), U.declared(), OracleKind::Sheets, out,
                                 U.point_witnesses(), U.span_witnesses());
}

bool presentations_identical(const Groupoid& a, const Groupoid& b) {
  if (a.dim() != b.dim() || a.units().size() != b.units().size() ||
      a.arrow_components().size() != b.arrow_components().size())
    return false;
  for (std::size_t c = 0; c < a.units().size(); ++c)
    if (a.units()[c].label != b.units()[c].label || !ball_equal(a.units()[c].ball, b.units()[c].ball)) return false;
  for (std::size_t c = 0; c < a.arrow_components().size(); ++c) {
    const auto& x = a.arrow_components()[c];
    const auto& y = b.arrow_components()[c];
    if (x.label != y.label || x.s_comp != y.s_comp || x.t_comp != y.t_comp || !ball_equal(x.param, y.param) ||
        x.s_map != y.s_map || x.t_map != y.t_map)
      return false;
  }
  return true;
}

// ---- reconstruction ----

AtlasPtr reconstruct_atlas(const Groupoid& G, int samples, unsigned long seed) {
  if (!G.model())
    throw Error(ErrorKind::UnsupportedPresentation, "reconstruction needs a presentation with a known orbit space");
  const SheetModel& m = *G.model();
  std::vector<UnitPoint> xs = G.special_points();
  Rng rng(seed);
  for (int k = 0; k < samples; ++k) xs.push_back(G.sample_unit(rng));

  std::vector<Chart> charts;
  std::vector<std::size_t> sheet_of;
  std::vector<AffineMap> placement;
  std::vector<PointWitness> pts;
  for (const auto& x : xs) {
    const std::size_t c = x.comp;
    const Ball& unit = G.units()[c].ball;
    std::vector<AffineMap> K;
    for (const auto& g : G.isotropy_arrows(x)) {
      AffineMap h = G.local_bisection(g);
      if (!has_map(K, h)) K.push_back(h);
    }
    const auto& sheet_group = m.sheets[m.sheet_of[c]].group;
    CycNum r2(rational_or_one(unit.radius2));
    std::optional<Ball> found;
    bool duplicate = false;
    for (int iter = 0; iter < 200 && !found && !duplicate; ++iter, r2 = r2 / CycNum(4)) {
      Ball B{x.x, r2};
      if (!contains(unit, B)) continue;
      bool ok = std::all_of(K.begin(), K.end(), [&](const AffineMap& k) { return preserves(k, B); });
      // Germs meeting B either belong to K or move B off itself.
      for (const auto& w : G.arrow_components()) {
        if (!ok) break;
        if (w.s_comp != c || w.t_comp != c) continue;
        if (!intersects(image(w.s_map, w.param), B)) continue;
        AffineMap h = compose(w.t_map, w.s_inv);
        if (!has_map(K, h) && intersects(image(h, B), B)) ok = false;
      }
      Ball fb = image(m.placement[c], B);
      for (std::size_t i = 0; i < charts.size() && ok; ++i) {
        if (sheet_of[i] != m.sheet_of[c]) continue;
        Ball other = image(placement[i], charts[i].domain);
        for (const auto& g : sheet_group)
          if (ball_equal(image(g, fb), other)) duplicate = true;
        if (relation(fb, other, sheet_group) == Overlap::Lens) ok = false;
      }
      if (ok && !duplicate) found = B;
    }
    if (!found) continue;
    std::size_t n = charts.size();
    charts.push_back(Chart{"r" + std::to_string(n), *found, K});
    sheet_of.push_back(m.sheet_of[c]);
    placement.push_back(m.placement[c]);
    pts.push_back({n, x.x});
  }
  SheetModel rm{m.sheets, sheet_of, placement};
  return std::make_shared<Atlas>(G.conductor(), G.dim(), charts, std::vector<Embedding>{}, OracleKind::Sheets, rm,
                                 pts);
}

MorphismPtr reconstruction_morita_morphism(FunctorF& F, const std::shared_ptr<const Groupoid>& G,
                                           const AtlasPtr& R) {
  if (!G->model() || !R->model())
    throw Error(ErrorKind::UnsupportedPresentation, "reconstruction morphism needs sheet models on both sides");
  const SheetModel& gm = *G->model();
  const SheetModel& rm = *R->model();
  auto src = F.object(R);
  auto m = std::make_shared<GroupoidMorphism>();
  m->src = src;
  m->dst = G;
  m->label = "reconstruction";
  std::vector<std::size_t> comp_of;
  for (std::size_t i = 0; i < R->size(); ++i) {
    std::optional<std::size_t> hit;
    for (std::size_t c = 0; c < G->units().size() && !hit; ++c)
      if (gm.sheet_of[c] == rm.sheet_of[i] && gm.placement[c] == rm.placement[i] &&
          contains(G->units()[c].ball, R->chart(i).domain))
        hit = c;
    if (!hit) throw Error(ErrorKind::UnsupportedPresentation, "chart " + R->chart(i).id + " sits in no unit component");
    comp_of.push_back(*hit);
    m->unit.push_back({*hit, PolyMap::identity(R->dim())});
  }
  m->arrow = [src, H = G, comp_of](const Arrow& g) {
    const Triple& t = src->triple(g.comp);
    const Atlas& A = *src->atlas();
    const AffineMap& li = A.emb(t.k, t.i)[t.a];
    const AffineMap& lj = A.emb(t.k, t.j)[t.b];
    AffineMap germ = compose(lj, inverse(li));
    UnitPoint s{comp_of[t.i], li(g.p)}, u{comp_of[t.j], lj(g.p)};
    for (const auto& h : H->arrows_between(s, u))
      if (H->local_bisection(h) == germ) return h;
    throw Error(ErrorKind::UnsupportedPresentation, "no arrow of the presentation carries the germ at " + to_string(s));
  };
  return m;
}

// ---- invariants and the bijection demo ----

std::vector<std::size_t> atlas_isotropy_orders(const Atlas& a, int samples, unsigned long seed) {
  Rng rng(seed);
  std::set<std::size_t> out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Chart& c = a.chart(i);
    std::vector<Vec> xs{c.domain.center};
    for (const auto& w : a.point_witnesses())
      if (w.chart == i) xs.push_back(w.point);
    for (const auto& g : c.group) {
      int n = c.dim();
      if (n == 0 || g == AffineMap::identity(n)) continue;
      Vec fix;
      if (solve_linear(Mat(g.A - Mat::Identity(n, n)), Vec(-g.b), fix) && contains(c.domain, fix)) xs.push_back(fix);
    }
    for (int k = 0; k < samples; ++k) xs.push_back(sample_in_ball(c.domain, a.conductor(), rng));
    for (const auto& x : xs) out.insert(stabilizer(c, x).size());
  }
  return {out.begin(), out.end()};
}

BijectionVerdict bijection_demo(const AtlasPtr& U1, const AtlasPtr& U2, const std::optional<Relabeling>& phi,
                                int samples, unsigned long seed) {
  BijectionVerdict v;
  if (U1->dim() != U2->dim()) {
    v.atlas_side = "inequivalent";
    v.notes.push_back("atlas side: dimensions differ");
  } else {
    std::optional<EquivalenceWitness> w;
    try {
      w = auto_witness(*U1, *U2, phi, samples, seed);
    } catch (const Error& e) {
      v.notes.push_back(std::string("atlas side: ") + e.what());
    }
    if (w && atlases_equivalent(*U1, *U2, *w, samples, seed)) {
      v.atlas_side = "equivalent";
      v.notes.push_back("atlas side: " + std::to_string(w->spans.size()) + " witness spans cover both atlases");
    } else if (atlas_isotropy_orders(*U1, samples, seed) != atlas_isotropy_orders(*U2, samples, seed)) {
      v.atlas_side = "inequivalent";
      v.notes.push_back("atlas side: stabilizer orders differ");
    } else {
      v.atlas_side = "unknown";
    }
  }

  FunctorF F;
  auto G1 = F.object(U1);
  auto G2 = F.object(U2);
  if (G1->dim() != G2->dim()) {
    v.groupoid_side = "inequivalent";
    v.notes.push_back("groupoid side: unit dimensions differ");
  } else if (isotropy_orders(*G1, samples, seed) != isotropy_orders(*G2, samples, seed)) {
    v.groupoid_side = "inequivalent";
    v.notes.push_back("groupoid side: isotropy orders differ");
  } else {
    v.groupoid_side = "not found at this bound";
    try {
      auto w = auto_witness(*U1, *U2, phi, samples, seed);
      if (w) {
        CommonRefinement cr = common_refinement(U1, U2, *w, samples, seed);
        const std::pair<AtlasPtr, AtlasPtr> legs[] = {{cr.W, cr.A1}, {cr.W, cr.A2}, {U1, cr.A1}, {U2, cr.A2}};
        bool all = true;
        for (const auto& [sub, full] : legs) {
          MoritaReport r = check_morita(*subatlas_inclusion_morphism(F, sub, full), samples, seed);
          all = all && r.verdict;
        }
        if (all) {
          v.groupoid_side = "equivalent";
          v.notes.push_back("groupoid side: zigzag of four Morita inclusions through a " +
                            std::to_string(cr.W->size()) + "-chart refinement");
        }
      }
    } catch (const Error& e) {
      v.notes.push_back(std::string("groupoid side: ") + e.what());
    }
  }
  v.agree = v.atlas_side == v.groupoid_side;
  return v;
}

}  // namespace orb
