#include "orb/functor/translation.hpp"

#include "orb/atlas/lemmas.hpp"
#include "orb/error.hpp"

namespace orb {

TranslationGroupoid::TranslationGroupoid(AtlasPtr atlas)
    : Groupoid(atlas->dim(), atlas->conductor()), atlas_(std::move(atlas)) {
  const Atlas& A = *atlas_;
  if (A.size() == 0) throw Error(ErrorKind::InvalidAtlas, "atlas has no charts");
  if (!A.construction_issues().empty()) throw Error(ErrorKind::InvalidAtlas, A.construction_issues().front());
  for (const auto& c : A.charts()) {
    Report r = validate_chart(c);
    if (!r.ok()) throw Error(ErrorKind::InvalidAtlas, "chart " + c.id + ": " + r.violations.front());
  }
  for (const auto& c : A.charts()) units_.push_back({c.id, c.domain});
  std::size_t n = A.size();
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t a = 0; a < A.emb(k, i).size(); ++a)
        for (std::size_t j = 0; j < n; ++j)
          for (std::size_t b = 0; b < A.emb(k, j).size(); ++b) {
            Triple t{k, i, a, j, b};
            index_[{k, i, a, j, b}] = arrows_.size();
            triples_.push_back(t);
            std::string label = A.chart(k).id + "|" + A.chart(i).id + "#" + std::to_string(a) + "|" + A.chart(j).id +
                                "#" + std::to_string(b);
            add_arrow_component({label, A.chart(k).domain, i, A.emb(k, i)[a], j, A.emb(k, j)[b], {}});
          }
  model_ = A.model();
}

std::optional<std::size_t> TranslationGroupoid::component(const Triple& t) const {
  auto it = index_.find({t.k, t.i, t.a, t.j, t.b});
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Arrow TranslationGroupoid::make(const Triple& t, const Vec& xk) const {
  auto c = component(t);
  if (!c) throw Error(ErrorKind::InvalidAtlas, "no arrow component for the given legs");
  return {*c, xk};
}

Arrow TranslationGroupoid::identity(const UnitPoint& x) const {
  if (!contains_unit(x)) throw Error(ErrorKind::PointOutsideUnitSpace, to_string(x));
  std::size_t e = atlas_->identity_index(x.comp);
  return make({x.comp, x.comp, e, x.comp, e}, x.x);
}

Arrow TranslationGroupoid::inverse(const Arrow& g) const {
  const Triple& t = triple(g.comp);
  return make({t.k, t.j, t.b, t.i, t.a}, g.p);
}

bool TranslationGroupoid::equal(const Arrow& P, const Arrow& Q) const {
  if (source(P) != source(Q) || target(P) != target(Q)) return false;
  const Triple& p = triple(P.comp);
  const Triple& q = triple(Q.comp);
  const Atlas& A = *atlas_;
  if (p.k == p.i && q.k == q.i) {
    // (g1, x, g2) ~ (1, g1 x, g2 g1^-1)
    ++fast_hits_;
    AffineMap u = compose(A.emb(p.k, p.j)[p.b], A.emb_inverse(p.k, p.i)[p.a]);
    AffineMap v = compose(A.emb(q.k, q.j)[q.b], A.emb_inverse(q.k, q.i)[q.a]);
    return u == v;
  }
  CommonSpan cs = common_span(A, p.k, P.p, p.i, p.a, q.k, Q.p, q.a, 0);
  return compose(A.emb(p.k, p.j)[p.b], cs.left) == compose(A.emb(q.k, q.j)[q.b], cs.right);
}

Arrow TranslationGroupoid::do_multiply(const Arrow& P, const Arrow& Q, unsigned completion) const {
  const Triple& p = triple(P.comp);
  const Triple& q = triple(Q.comp);
  const Atlas& A = *atlas_;
  CommonSpan cs = common_span(A, p.k, P.p, p.j, p.b, q.k, Q.p, q.a, completion);
  std::size_t f = cs.span.chart;
  auto left = A.find_emb(f, p.i, compose(A.emb(p.k, p.i)[p.a], cs.left));
  auto right = A.find_emb(f, q.j, compose(A.emb(q.k, q.j)[q.b], cs.right));
  if (!left || !right) throw Error(ErrorKind::InvalidAtlas, "embedding set not closed under composition");
  return make({f, p.i, *left, q.j, *right}, cs.span.point);
}

TranslationPtr build_translation_groupoid(const AtlasPtr& a) { return std::make_shared<TranslationGroupoid>(a); }

TranslationPtr FunctorF::object(const AtlasPtr& a) {
  for (const auto& [k, v] : objects_)
    if (k == a) return v;
  auto g = build_translation_groupoid(a);
  objects_.emplace_back(a, g);
  return g;
}

MorphismPtr FunctorF::morphism(const SystemPtr& f) {
  for (const auto& [k, v] : morphisms_)
    if (k == f || systems_equal(*k, *f)) return v;
  Report r = validate_compatible_system(*f, 4);
  if (!r.ok()) throw Error(ErrorKind::InvalidSystem, f->label + ": " + r.violations.front());
  auto G = object(f->src);
  auto H = object(f->dst);
  auto m = std::make_shared<GroupoidMorphism>();
  m->src = G;
  m->dst = H;
  m->label = "F(" + f->label + ")";
  for (std::size_t i = 0; i < f->theta.size(); ++i) m->unit.push_back({f->theta[i], f->lift[i]});
  // Psi([l_ki, x, l_kj]) = [f(l_ki), f_k(x), f(l_kj)], per component.
  std::vector<std::size_t> comp_map;
  for (std::size_t c = 0; c < G->arrow_components().size(); ++c) {
    const Triple& t = G->triple(c);
    Triple u{f->theta[t.k], f->theta[t.i], f->emb_image(t.k, t.i, t.a), f->theta[t.j], f->emb_image(t.k, t.j, t.b)};
    auto idx = H->component(u);
    if (!idx) throw Error(ErrorKind::InvalidSystem, "image triple has no component");
    comp_map.push_back(*idx);
  }
  std::vector<std::size_t> chart_of;
  for (std::size_t c = 0; c < G->arrow_components().size(); ++c) chart_of.push_back(G->triple(c).k);
  auto lifts = f->lift;
  m->arrow = [comp_map, chart_of, lifts](const Arrow& g) { return Arrow{comp_map.at(g.comp), lifts[chart_of[g.comp]](g.p)}; };
  morphisms_.emplace_back(f, m);
  return m;
}

GrpNatTrans FunctorF::cell(const CellPtr& d) {
  Report r = validate_orb_nat_trans(*d);
  if (!r.ok()) throw Error(ErrorKind::InvalidCell, d->label + ": " + r.violations.front());
  auto from = morphism(d->from);
  auto to = morphism(d->to);
  auto H = object(d->from->dst);
  // alpha(x_i) = [1, f1_i(x_i), delta_i]
  std::vector<std::size_t> comp;
  for (std::size_t i = 0; i < d->delta.size(); ++i) {
    std::size_t a = d->from->theta[i], b = d->to->theta[i];
    auto idx = H->component({a, a, H->atlas()->identity_index(a), b, d->delta[i]});
    if (!idx) throw Error(ErrorKind::InvalidCell, "component triple missing");
    comp.push_back(*idx);
  }
  auto lifts = d->from->lift;
  return {from, to, [comp, lifts](const UnitPoint& x) { return Arrow{comp.at(x.comp), lifts.at(x.comp)(x.x)}; },
          "F(" + d->label + ")"};
}

MorphismPtr f_on_morphism(FunctorF& F, const SystemPtr& f) { return F.morphism(f); }

GrpNatTrans f_on_2cell(FunctorF& F, const CellPtr& d) { return F.cell(d); }

Report check_functor_laws(FunctorF& F, const LawDiagram<PreOrbOps>& d, int samples, unsigned long seed) {
  Report r;
  PreOrbOps P;
  try {
    detail::require_typed(P, d);
  } catch (const Error& e) {
    throw Error(ErrorKind::IllTypedFixture, e.what());
  }
  struct NamedSys {
    std::string name;
    SystemPtr s;
  };
  struct NamedCell {
    std::string name;
    CellPtr c;
  };
  std::vector<NamedSys> systems{{"f", d.f}, {"g", d.g}, {"h", d.h}};
  std::vector<NamedCell> cells{{"delta", d.delta}, {"sigma", d.sigma}, {"tau", d.tau},
                               {"eta", d.eta},     {"mu", d.mu},       {"gamma", d.gamma}};
  bool typed = true;
  for (const auto& s : systems) {
    Report v = validate_compatible_system(*s.s, 4, seed);
    if (!v.ok()) typed = false;
    r.merge(v, "system " + s.name + ": ");
  }
  for (const auto& c : cells) {
    for (const auto& bound : {c.c->from, c.c->to}) {
      Report v = validate_compatible_system(*bound, 4, seed);
      if (!v.ok()) typed = false;
      r.merge(v, "boundary of " + c.name + ": ");
    }
    Report v = validate_orb_nat_trans(*c.c);
    if (!v.ok()) typed = false;
    r.merge(v, "cell " + c.name + ": ");
  }
  if (!typed) return r;

  auto law = [&](const std::string& name, const std::function<bool()>& test) {
    ++r.checks;
    try {
      if (!test()) r.fail(name);
    } catch (const std::exception& e) {
      r.fail(name + " (threw: " + e.what() + ")");
    }
  };
  int ns = std::max(4, samples / 8);
  const std::vector<std::pair<std::string, AtlasPtr>> objs{
      {"A", d.f->src}, {"B", d.f->dst}, {"C", d.g->dst}, {"D", d.h->dst}};
  for (const auto& [name, a] : objs) {
    law("F(1_" + name + ") = 1_F(" + name + ")", [&] {
      auto m = F.morphism(identity_system(a));
      return morphisms_agree(*m, *identity_morphism(F.object(a)), ns, seed);
    });
  }
  for (const auto& s : systems) {
    law("F(" + s.name + ") is a groupoid morphism",
        [&] { return validate_groupoid_morphism(*F.morphism(s.s), ns, seed).ok(); });
    law("F(i_" + s.name + ") = i_F(" + s.name + ")",
        [&] { return cells_agree(F.cell(identity_orb_cell(s.s)), identity_cell(F.morphism(s.s)), ns, seed); });
  }
  law("F(g o f) = F(g) o F(f)", [&] {
    return morphisms_agree(*F.morphism(compose_compatible(d.g, d.f)), *compose(F.morphism(d.g), F.morphism(d.f)), ns,
                           seed);
  });
  law("F(h o g) = F(h) o F(g)", [&] {
    return morphisms_agree(*F.morphism(compose_compatible(d.h, d.g)), *compose(F.morphism(d.h), F.morphism(d.g)), ns,
                           seed);
  });
  for (const auto& c : cells)
    law("F(" + c.name + ") is a groupoid 2-cell", [&] { return validate_grp_nat_trans(F.cell(c.c), ns, seed).ok(); });
  law("F(sigma . delta) = F(sigma) . F(delta)", [&] {
    return cells_agree(F.cell(vcomp_orb(d.sigma, d.delta)), vcomp_grp(F.cell(d.sigma), F.cell(d.delta)), ns, seed);
  });
  law("F(mu . eta) = F(mu) . F(eta)", [&] {
    return cells_agree(F.cell(vcomp_orb(d.mu, d.eta)), vcomp_grp(F.cell(d.mu), F.cell(d.eta)), ns, seed);
  });
  law("F(eta * delta) = F(eta) * F(delta)", [&] {
    return cells_agree(F.cell(hcomp_orb(d.eta, d.delta)), hcomp_grp(F.cell(d.eta), F.cell(d.delta)), ns, seed);
  });
  law("F(gamma * eta) = F(gamma) * F(eta)", [&] {
    return cells_agree(F.cell(hcomp_orb(d.gamma, d.eta)), hcomp_grp(F.cell(d.gamma), F.cell(d.eta)), ns, seed);
  });
  return r;
}

}  // namespace orb
