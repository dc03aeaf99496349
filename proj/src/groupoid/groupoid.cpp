#include "orb/groupoid/groupoid.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "orb/error.hpp"

namespace orb {

bool operator==(const UnitPoint& a, const UnitPoint& b) { return a.comp == b.comp && exact_equal(a.x, b.x); }

std::string to_string(const UnitPoint& u) { return "(U" + std::to_string(u.comp) + ", " + to_string(u.x) + ")"; }

void Groupoid::add_arrow_component(ArrowComponent w) {
  w.s_inv = orb::inverse(w.s_map);
  arrows_.push_back(std::move(w));
}

UnitPoint Groupoid::source(const Arrow& g) const {
  const auto& w = arrows_.at(g.comp);
  return {w.s_comp, w.s_map(g.p)};
}

UnitPoint Groupoid::target(const Arrow& g) const {
  const auto& w = arrows_.at(g.comp);
  return {w.t_comp, w.t_map(g.p)};
}

Arrow Groupoid::multiply(const Arrow& g, const Arrow& h, unsigned completion) const {
  if (target(g) != source(h))
    throw Error(ErrorKind::NotComposable, "t(g) = " + to_string(target(g)) + " but s(h) = " + to_string(source(h)));
  return do_multiply(g, h, completion);
}

bool Groupoid::contains_unit(const UnitPoint& x) const {
  if (x.comp >= units_.size()) return false;
  const Ball& b = units_[x.comp].ball;
  return x.x.size() == b.center.size() && contains(b, x.x);
}

bool Groupoid::contains_arrow(const Arrow& g) const {
  if (g.comp >= arrows_.size()) return false;
  const Ball& b = arrows_[g.comp].param;
  return g.p.size() == b.center.size() && contains(b, g.p);
}

namespace {

// One representative per class, assuming candidates share no more than their target.
std::vector<Arrow> dedupe(const Groupoid& G, const std::vector<Arrow>& cands) {
  std::vector<Arrow> out;
  std::vector<UnitPoint> tgt;
  for (const auto& c : cands) {
    UnitPoint t = G.target(c);
    bool seen = false;
    for (std::size_t k = 0; k < out.size() && !seen; ++k)
      if (tgt[k] == t && G.equal(out[k], c)) seen = true;
    if (!seen) {
      out.push_back(c);
      tgt.push_back(std::move(t));
    }
  }
  return out;
}

}  // namespace

std::vector<Arrow> Groupoid::arrows_from(const UnitPoint& x) const {
  if (!contains_unit(x)) throw Error(ErrorKind::PointOutsideUnitSpace, to_string(x));
  std::vector<Arrow> cands;
  for (std::size_t c = 0; c < arrows_.size(); ++c) {
    const auto& w = arrows_[c];
    if (w.s_comp != x.comp) continue;
    Vec p = w.s_inv(x.x);
    if (contains(w.param, p)) cands.push_back({c, std::move(p)});
  }
  return dedupe(*this, cands);
}

std::vector<Arrow> Groupoid::arrows_between(const UnitPoint& x, const UnitPoint& y) const {
  if (!contains_unit(x)) throw Error(ErrorKind::PointOutsideUnitSpace, to_string(x));
  if (!contains_unit(y)) throw Error(ErrorKind::PointOutsideUnitSpace, to_string(y));
  std::vector<Arrow> cands;
  for (std::size_t c = 0; c < arrows_.size(); ++c) {
    const auto& w = arrows_[c];
    if (w.s_comp != x.comp || w.t_comp != y.comp) continue;
    Vec p = w.s_inv(x.x);
    if (contains(w.param, p) && exact_equal(w.t_map(p), y.x)) cands.push_back({c, std::move(p)});
  }
  return dedupe(*this, cands);
}

std::vector<Arrow> Groupoid::isotropy_arrows(const UnitPoint& x) const { return arrows_between(x, x); }

std::vector<UnitPoint> Groupoid::orbit(const UnitPoint& x) const {
  std::vector<UnitPoint> out;
  for (const auto& g : arrows_from(x)) {
    UnitPoint t = target(g);
    if (std::find(out.begin(), out.end(), t) == out.end()) out.push_back(std::move(t));
  }
  return out;
}

AffineMap Groupoid::local_bisection(const Arrow& g) const {
  if (!contains_arrow(g)) throw Error(ErrorKind::PointOutsideUnitSpace, "arrow parameter outside its component");
  const auto& w = arrows_[g.comp];
  return compose(w.t_map, w.s_inv);
}

UnitPoint Groupoid::sample_unit(Rng& rng) const {
  std::uniform_int_distribution<std::size_t> d(0, units_.size() - 1);
  std::size_t c = d(rng);
  return {c, sample_in_ball(units_[c].ball, conductor_, rng)};
}

Arrow Groupoid::sample_arrow(Rng& rng) const {
  std::uniform_int_distribution<std::size_t> d(0, arrows_.size() - 1);
  std::size_t c = d(rng);
  return {c, sample_in_ball(arrows_[c].param, conductor_, rng)};
}

std::vector<UnitPoint> Groupoid::special_points() const {
  std::vector<UnitPoint> out;
  auto add = [&](UnitPoint u) {
    if (contains_unit(u) && std::find(out.begin(), out.end(), u) == out.end()) out.push_back(std::move(u));
  };
  for (std::size_t c = 0; c < units_.size(); ++c) add({c, units_[c].ball.center});
  for (const auto& w : arrows_) {
    if (w.s_comp != w.t_comp) continue;
    AffineMap germ = compose(w.t_map, w.s_inv);
    int n = germ.dim();
    if (n == 0 || germ == AffineMap::identity(n)) continue;
    Mat M = germ.A - Mat::Identity(n, n);
    Vec fix;
    if (!solve_linear(M, Vec(-germ.b), fix)) continue;
    if (contains(w.param, w.s_inv(fix))) add({w.s_comp, fix});
  }
  return out;
}

// ---- action groupoids ----

ActionGroupoid::ActionGroupoid(int conductor, Ball ball, std::vector<AffineMap> rep,
                               std::vector<std::vector<std::size_t>> mul, std::string label)
    : Groupoid(ball.dim(), conductor), rep_(std::move(rep)), mul_(std::move(mul)) {
  std::size_t n = rep_.size();
  if (n == 0 || mul_.size() != n) throw Error(ErrorKind::UnsupportedPresentation, "group table size mismatch");
  for (const auto& row : mul_)
    if (row.size() != n) throw Error(ErrorKind::UnsupportedPresentation, "group table size mismatch");
  inv_.assign(n, n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (mul_[a][b] == 0) inv_[a] = b;
  for (std::size_t a = 0; a < n; ++a)
    if (inv_[a] == n) throw Error(ErrorKind::UnsupportedPresentation, "group table has no inverse for an element");
  units_.push_back({label, ball});
  for (std::size_t g = 0; g < n; ++g)
    add_arrow_component({label + "[" + std::to_string(g) + "]", ball, 0, AffineMap::identity(dim_), 0, rep_[g], {}});
  bool faithful = true;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      if (rep_[a] == rep_[b]) faithful = false;
  if (faithful) model_ = SheetModel{{Sheet{label, ball, rep_}}, {0}, {AffineMap::identity(dim_)}};
}

std::shared_ptr<ActionGroupoid> ActionGroupoid::from_group(int conductor, const Ball& ball,
                                                           const std::vector<AffineMap>& group,
                                                           const std::string& label) {
  std::vector<AffineMap> g = group;
  auto id = std::find(g.begin(), g.end(), AffineMap::identity(ball.dim()));
  if (id == g.end()) throw Error(ErrorKind::UnsupportedPresentation, "group lacks the identity");
  std::iter_swap(g.begin(), id);
  std::size_t n = g.size();
  std::vector<std::vector<std::size_t>> mul(n, std::vector<std::size_t>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      auto it = std::find(g.begin(), g.end(), compose(g[a], g[b]));
      if (it == g.end()) throw Error(ErrorKind::UnsupportedPresentation, "group not closed under composition");
      mul[a][b] = static_cast<std::size_t>(it - g.begin());
    }
  return std::make_shared<ActionGroupoid>(conductor, ball, g, mul, label);
}

Arrow ActionGroupoid::identity(const UnitPoint& x) const {
  if (!contains_unit(x)) throw Error(ErrorKind::PointOutsideUnitSpace, to_string(x));
  return {0, x.x};
}

Arrow ActionGroupoid::inverse(const Arrow& g) const { return {inv_.at(g.comp), rep_.at(g.comp)(g.p)}; }

bool ActionGroupoid::equal(const Arrow& g, const Arrow& h) const { return g.comp == h.comp && exact_equal(g.p, h.p); }

Arrow ActionGroupoid::do_multiply(const Arrow& g, const Arrow& h, unsigned) const {
  return {mul_[h.comp][g.comp], g.p};
}

std::shared_ptr<ActionGroupoid> trivial_groupoid(const Ball& ball, int conductor) {
  return std::make_shared<ActionGroupoid>(conductor, ball, std::vector<AffineMap>{AffineMap::identity(ball.dim())},
                                          std::vector<std::vector<std::size_t>>{{0}}, "trivial");
}

std::shared_ptr<ActionGroupoid> one_point_groupoid() {
  auto g = trivial_groupoid(Ball{Vec(0), CycNum(1)});
  return g;
}

std::shared_ptr<ActionGroupoid> noneffective_z2_groupoid() {
  AffineMap id = AffineMap::identity(1);
  return std::make_shared<ActionGroupoid>(1, Ball{Vec::Zero(1), CycNum(1)}, std::vector<AffineMap>{id, id},
                                          std::vector<std::vector<std::size_t>>{{0, 1}, {1, 0}}, "z2_trivial");
}

DelegatingGroupoid::DelegatingGroupoid(std::shared_ptr<const Groupoid> base)
    : Groupoid(base->dim(), base->conductor()), base_(std::move(base)) {
  units_ = base_->units();
  arrows_ = base_->arrow_components();
  model_ = base_->model();
}

// ---- morphisms ----

UnitPoint GroupoidMorphism::apply(const UnitPoint& x) const {
  const auto& u = unit.at(x.comp);
  return {u.target, u.map(x.x)};
}

MorphismPtr identity_morphism(const std::shared_ptr<const Groupoid>& g) {
  auto m = std::make_shared<GroupoidMorphism>();
  m->src = g;
  m->dst = g;
  for (std::size_t c = 0; c < g->units().size(); ++c) m->unit.push_back({c, PolyMap::identity(g->dim())});
  m->arrow = [](const Arrow& a) { return a; };
  m->label = "id";
  return m;
}

MorphismPtr compose(const MorphismPtr& g, const MorphismPtr& f) {
  if (f->dst != g->src) throw Error(ErrorKind::NotComposable, "morphisms " + f->label + " and " + g->label);
  auto m = std::make_shared<GroupoidMorphism>();
  m->src = f->src;
  m->dst = g->dst;
  for (const auto& u : f->unit) {
    const auto& v = g->unit.at(u.target);
    m->unit.push_back({v.target, compose(v.map, u.map)});
  }
  m->arrow = [g, f](const Arrow& a) { return g->arrow(f->arrow(a)); };
  m->label = g->label + " o " + f->label;
  return m;
}

GrpNatTrans identity_cell(const MorphismPtr& f) {
  return {f, f, [f](const UnitPoint& x) { return f->dst->identity(f->apply(x)); }, "i(" + f->label + ")"};
}

namespace {

bool same_morphism(const MorphismPtr& a, const MorphismPtr& b) {
  return a == b || morphisms_agree(*a, *b, 8);
}

}  // namespace

GrpNatTrans vcomp_grp(const GrpNatTrans& beta, const GrpNatTrans& alpha) {
  if (!same_morphism(alpha.to, beta.from))
    throw Error(ErrorKind::BoundaryMismatch, "vertical composite: target of " + alpha.label + " is not the source of " +
                                                 beta.label);
  auto G = alpha.from->dst;
  auto a = alpha.at;
  auto b = beta.at;
  return {alpha.from, beta.to, [G, a, b](const UnitPoint& x) { return G->multiply(a(x), b(x)); },
          beta.label + " . " + alpha.label};
}

GrpNatTrans hcomp_grp(const GrpNatTrans& beta, const GrpNatTrans& alpha) {
  if (alpha.from->dst != beta.from->src)
    throw Error(ErrorKind::BoundaryMismatch, "horizontal composite: " + alpha.label + " and " + beta.label +
                                                 " do not meet in one groupoid");
  auto G2 = beta.from->dst;
  auto phi1 = beta.from;
  auto psi2 = alpha.to;
  auto a = alpha.at;
  auto b = beta.at;
  return {compose(beta.from, alpha.from), compose(beta.to, alpha.to),
          [G2, phi1, psi2, a, b](const UnitPoint& x) { return G2->multiply(phi1->arrow(a(x)), b(psi2->apply(x))); },
          beta.label + " * " + alpha.label};
}

bool morphisms_agree(const GroupoidMorphism& a, const GroupoidMorphism& b, int samples, unsigned long seed) {
  if (a.src != b.src || a.dst != b.dst || a.unit.size() != b.unit.size()) return false;
  for (std::size_t c = 0; c < a.unit.size(); ++c)
    if (a.unit[c].target != b.unit[c].target || a.unit[c].map != b.unit[c].map) return false;
  Rng rng(seed);
  for (int k = 0; k < samples; ++k) {
    Arrow g = a.src->sample_arrow(rng);
    if (!a.dst->equal(a.arrow(g), b.arrow(g))) return false;
  }
  return true;
}

bool cells_agree(const GrpNatTrans& a, const GrpNatTrans& b, int samples, unsigned long seed) {
  if (a.from->src != b.from->src || a.from->dst != b.from->dst) return false;
  const auto& G = *a.from->src;
  const auto& H = *a.from->dst;
  std::vector<UnitPoint> xs = G.special_points();
  Rng rng(seed);
  for (int k = 0; k < samples; ++k) xs.push_back(G.sample_unit(rng));
  for (const auto& x : xs) {
    Arrow p = a.at(x), q = b.at(x);
    if (H.source(p) != H.source(q) || H.target(p) != H.target(q) || !H.equal(p, q)) return false;
  }
  return true;
}

// ---- checks ----

namespace {

std::string arrow_str(const Groupoid& G, const Arrow& g) {
  return G.arrow_components().at(g.comp).label + "@" + to_string(g.p);
}

// Composable chain g, h, k starting from a sampled arrow.
std::vector<Arrow> sample_chain(const Groupoid& G, Rng& rng, int len) {
  std::vector<Arrow> out{G.sample_arrow(rng)};
  while (static_cast<int>(out.size()) < len) {
    auto next = G.arrows_from(G.target(out.back()));
    std::uniform_int_distribution<std::size_t> d(0, next.size() - 1);
    out.push_back(next[d(rng)]);
  }
  return out;
}

std::vector<UnitPoint> unit_samples(const Groupoid& G, int samples, Rng& rng) {
  std::vector<UnitPoint> xs = G.special_points();
  for (int k = 0; k < samples; ++k) xs.push_back(G.sample_unit(rng));
  return xs;
}

}  // namespace

Report check_groupoid_axioms(const Groupoid& G, int samples, unsigned long seed) {
  Report r;
  Tally t(r);
  Rng rng(seed);
  if (G.units().empty() || G.arrow_components().empty()) {
    r.fail("empty presentation");
    return r;
  }
  for (const auto& x : unit_samples(G, std::max(1, samples / 4), rng)) {
    std::string at = to_string(x);
    Arrow e = G.identity(x);
    t.check(G.contains_arrow(e), "axiom (i) e lands in R", at);
    t.check(G.source(e) == x && G.target(e) == x, "axiom (i) s o e = 1 = t o e", at);
  }
  for (int n = 0; n < samples; ++n) {
    auto ch = sample_chain(G, rng, 3);
    const Arrow &g = ch[0], &h = ch[1], &k = ch[2];
    std::string at = arrow_str(G, g);
    Arrow gh = G.multiply(g, h, 0);
    t.check(G.source(gh) == G.source(g) && G.target(gh) == G.target(h), "axiom (ii) s, t of products", at);
    t.check(G.equal(G.multiply(gh, k, 0), G.multiply(g, G.multiply(h, k, 0), 0)), "axiom (iii) associativity", at);
    t.check(G.equal(G.multiply(G.identity(G.source(g)), g, 0), g), "axiom (iv) left unit", at);
    t.check(G.equal(G.multiply(g, G.identity(G.target(g)), 0), g), "axiom (iv) right unit", at);
    Arrow gi = G.inverse(g);
    bool st = t.check(G.contains_arrow(gi) && G.source(gi) == G.target(g) && G.target(gi) == G.source(g),
                      "axiom (v) s o i = t, t o i = s", at);
    if (st) {
      t.check(G.equal(G.multiply(g, gi, 0), G.identity(G.source(g))), "axiom (v) m(g, i(g)) = e(s(g))", at);
      t.check(G.equal(G.multiply(gi, g, 0), G.identity(G.target(g))), "axiom (v) m(i(g), g) = e(t(g))", at);
      t.check(G.equal(G.inverse(gi), g), "axiom (v) i o i = 1", at);
      Arrow hi = G.inverse(h);
      if (G.contains_arrow(hi) && G.target(hi) == G.source(gi))
        t.check(G.equal(G.multiply(hi, gi, 0), G.inverse(gh)), "inverse of a product", at);
      else
        t.check(false, "inverse of a product", at);
    }
  }
  t.flush();
  return r;
}

Report validate_groupoid_morphism(const GroupoidMorphism& M, int samples, unsigned long seed) {
  Report r;
  const auto& G = *M.src;
  const auto& H = *M.dst;
  if (!r.expect(M.unit.size() == G.units().size(), "unit map count differs from unit components")) return r;
  for (std::size_t c = 0; c < M.unit.size(); ++c) {
    const auto& u = M.unit[c];
    r.expect(u.target < H.units().size(), "unit component " + std::to_string(c) + " maps to a missing component");
    r.expect(u.map.in_dim() == G.dim() && u.map.out_dim() == H.dim(),
             "unit component " + std::to_string(c) + " map has wrong dimensions");
  }
  if (!r.ok()) return r;
  Tally t(r);
  Rng rng(seed);
  for (const auto& x : unit_samples(G, std::max(1, samples / 4), rng)) {
    std::string at = to_string(x);
    UnitPoint y = M.apply(x);
    if (!t.check(H.contains_unit(y), "psi maps U into U'", at)) continue;
    Arrow ex = M.arrow(G.identity(x));
    if (!t.check(H.contains_arrow(ex), "Psi maps R into R'", at)) continue;
    t.check(H.source(ex) == y, "psi = s' o Psi o e", at);
    t.check(H.equal(ex, H.identity(y)), "Psi o e = e' o psi", at);
  }
  for (int n = 0; n < samples; ++n) {
    auto ch = sample_chain(G, rng, 2);
    const Arrow &g = ch[0], &h = ch[1];
    std::string at = arrow_str(G, g);
    Arrow pg = M.arrow(g), ph = M.arrow(h);
    if (!t.check(H.contains_arrow(pg) && H.contains_arrow(ph), "Psi maps R into R'", at)) continue;
    bool s_ok = t.check(H.source(pg) == M.apply(G.source(g)), "s-compatibility s' o Psi = psi o s", at);
    bool t_ok = t.check(H.target(pg) == M.apply(G.target(g)), "t-compatibility t' o Psi = psi o t", at);
    if (s_ok && t_ok) {
      t.check(H.equal(M.arrow(G.inverse(g)), H.inverse(pg)), "Psi o i = i' o Psi", at);
      if (H.target(pg) == H.source(ph))
        t.check(H.equal(M.arrow(G.multiply(g, h, 0)), H.multiply(pg, ph, 0)), "Psi o m = m' o (Psi x Psi)", at);
    }
  }
  t.flush();
  return r;
}

Report validate_grp_nat_trans(const GrpNatTrans& a, int samples, unsigned long seed) {
  Report r;
  if (!r.expect(a.from->src == a.to->src && a.from->dst == a.to->dst, "boundary morphisms do not share groupoids"))
    return r;
  const auto& G = *a.from->src;
  const auto& H = *a.from->dst;
  Tally t(r);
  Rng rng(seed);
  for (const auto& x : unit_samples(G, std::max(1, samples / 4), rng)) {
    std::string at = to_string(x);
    Arrow ax = a.at(x);
    if (!t.check(H.contains_arrow(ax), "alpha lands in R'", at)) continue;
    t.check(H.source(ax) == a.from->apply(x), "(i) s' o alpha = psi", at);
    t.check(H.target(ax) == a.to->apply(x), "(i) t' o alpha = phi", at);
  }
  for (int n = 0; n < samples; ++n) {
    Arrow g = G.sample_arrow(rng);
    std::string at = arrow_str(G, g);
    Arrow as = a.at(G.source(g)), at_ = a.at(G.target(g));
    Arrow phig = a.to->arrow(g), psig = a.from->arrow(g);
    bool typed = H.contains_arrow(as) && H.contains_arrow(at_) && H.target(as) == H.source(phig) &&
                 H.target(psig) == H.source(at_);
    if (!t.check(typed, "(ii) composites defined", at)) continue;
    t.check(H.equal(H.multiply(as, phig, 0), H.multiply(psig, at_, 0)), "(ii) m'(alpha s, Phi) = m'(Psi, alpha t)",
            at);
  }
  t.flush();
  return r;
}

StructuralPredicates structural_predicates(const Groupoid& G, int samples, unsigned long seed) {
  StructuralPredicates out;
  Report& r = out.report;
  Rng rng(seed);

  Report et;
  for (const auto& w : G.arrow_components()) {
    bool sim = is_similarity(w.s_map) && is_similarity(w.t_map) && w.s_map.dim() == G.dim() && w.t_map.dim() == G.dim();
    if (!et.expect(sim, w.label + ": s or t is not an invertible similarity")) continue;
    et.expect(contains(G.units().at(w.s_comp).ball, image(w.s_map, w.param)), w.label + ": s image leaves U");
    et.expect(contains(G.units().at(w.t_comp).ball, image(w.t_map, w.param)), w.label + ": t image leaves U");
  }
  out.etale = et.ok();
  r.merge(et, "etale: ");

  std::vector<UnitPoint> xs = unit_samples(G, samples, rng);

  // Properness at sampled pairs: each fiber (s,t)^-1(x,y) is a finite torsor
  // under the isotropy of x, and lies in components whose parameter ball holds it.
  Report pr;
  Tally pt(pr);
  for (std::size_t n = 0; n < xs.size(); ++n) {
    const auto& x = xs[n];
    std::string at = to_string(x);
    auto from = G.arrows_from(x);
    std::size_t iso = 0;
    std::map<std::size_t, std::size_t> per_target;
    std::vector<UnitPoint> tg;
    for (const auto& g : from) {
      pt.check(G.contains_arrow(g), "arrow parameter in its component", at);
      UnitPoint y = G.target(g);
      auto it = std::find(tg.begin(), tg.end(), y);
      std::size_t idx = static_cast<std::size_t>(it - tg.begin());
      if (it == tg.end()) tg.push_back(y);
      ++per_target[idx];
      if (y == x) ++iso;
    }
    pt.check(iso >= 1, "isotropy contains the unit", at);
    for (const auto& [idx, cnt] : per_target) pt.check(cnt == iso, "fiber over (x, y) is an isotropy torsor", at);
    for (const auto& y : tg)
      pt.check(G.isotropy_arrows(y).size() == iso, "isotropy order constant on the orbit", at);
    if (n + 1 < xs.size()) {
      std::size_t cnt = G.arrows_between(x, xs[n + 1]).size();
      pt.check(cnt == 0 || cnt == iso, "fiber over sampled pair is empty or a torsor", at);
    }
  }
  pt.flush();
  out.proper = pr.ok();
  r.merge(pr, "proper: ");

  Report ef;
  Tally eft(ef);
  for (const auto& x : xs) {
    std::string at = to_string(x);
    auto iso = G.isotropy_arrows(x);
    std::vector<AffineMap> germs;
    for (const auto& g : iso) germs.push_back(G.local_bisection(g));
    bool inj = true;
    for (std::size_t a = 0; a < germs.size(); ++a)
      for (std::size_t b = a + 1; b < germs.size(); ++b)
        if (germs[a] == germs[b]) inj = false;
    eft.check(inj, "germ map on isotropy is injective", at);
  }
  eft.flush();
  out.effective = ef.ok();
  r.merge(ef, "effective: ");

  // Germ calculus as consistency checks, reported but not part of the flags.
  Report gc;
  Tally gt(gc);
  for (int n = 0; n < std::max(1, samples / 4); ++n) {
    auto ch = sample_chain(G, rng, 2);
    std::string at = arrow_str(G, ch[0]);
    AffineMap gg = G.local_bisection(ch[0]), hg = G.local_bisection(ch[1]);
    gt.check(G.local_bisection(G.multiply(ch[0], ch[1], 0)) == compose(hg, gg), "germ of product", at);
    gt.check(G.local_bisection(G.inverse(ch[0])) == inverse(gg), "germ of inverse", at);
  }
  gt.flush();
  r.merge(gc, "germs: ");
  return out;
}

std::vector<std::size_t> isotropy_orders(const Groupoid& G, int samples, unsigned long seed) {
  Rng rng(seed);
  std::set<std::size_t> s;
  for (const auto& x : unit_samples(G, samples, rng)) s.insert(G.isotropy_arrows(x).size());
  return {s.begin(), s.end()};
}

}  // namespace orb
