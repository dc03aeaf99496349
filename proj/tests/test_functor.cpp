#include "doctest.h"

#include <algorithm>

#include "orb/functor/translation.hpp"
#include "orb/io/gallery.hpp"

using namespace orb;

namespace {

bool has_violation(const Report& r, const std::string& needle) {
  return std::any_of(r.violations.begin(), r.violations.end(),
                     [&](const std::string& v) { return v.find(needle) != std::string::npos; });
}

Vec v1(const CycNum& x) { return make_vec({x}); }

AffineMap rot(int m, int k) { return AffineMap::scalar(1, root_of_unity(m, k), Vec::Zero(1)); }

std::size_t gidx(const Atlas& A, const AffineMap& g) { return A.find_emb(0, 0, g).value(); }

Arrow cone_arrow(const TranslationGroupoid& G, int e1, const Vec& x, int e2) {
  const Atlas& A = *G.atlas();
  int m = A.conductor();
  return G.make({0, 0, gidx(A, rot(m, e1)), 0, gidx(A, rot(m, e2))}, x);
}

LawDiagram<PreOrbOps> rotation_fixture(const AtlasPtr& a, const int ks[9]) {
  auto cell = [&](int k1, int k2) { return solve_orb_cell(rotation_system(a, k1), rotation_system(a, k2)); };
  LawDiagram<PreOrbOps> d;
  d.f = rotation_system(a, ks[0]);
  d.g = rotation_system(a, ks[1]);
  d.h = rotation_system(a, ks[2]);
  d.delta = cell(ks[0], ks[3]);
  d.sigma = cell(ks[3], ks[4]);
  d.tau = cell(ks[4], ks[5]);
  d.eta = cell(ks[1], ks[6]);
  d.mu = cell(ks[6], ks[7]);
  d.gamma = cell(ks[2], ks[8]);
  return d;
}

}  // namespace

TEST_CASE("build_translation_groupoid examples") {
  auto G = build_translation_groupoid(gallery_cone(3));
  Vec q = v1(rat(1, 4));
  Arrow e = G->identity({0, q});
  const Triple& t = G->triple(e.comp);
  CHECK(t.a == G->atlas()->identity_index(0));
  CHECK(t.b == G->atlas()->identity_index(0));
  CHECK(exact_equal(e.p, q));
  CHECK(G->source(e) == UnitPoint{0, q});
  CHECK(G->target(e) == UnitPoint{0, q});
  Arrow P = cone_arrow(*G, 0, q, 1);
  Arrow Pi = G->inverse(P);
  CHECK(G->triple(Pi.comp).a == gidx(*G->atlas(), rot(3, 1)));
  CHECK(G->triple(Pi.comp).b == G->atlas()->identity_index(0));
  CHECK(exact_equal(Pi.p, q));
  CHECK(G->strategy() == "translation");

  Chart dup{"d", Ball{v1(0), 1}, {AffineMap::identity(1), AffineMap::identity(1)}};
  auto bad = std::make_shared<Atlas>(1, 1, std::vector<Chart>{dup}, std::vector<Embedding>{}, OracleKind::SpanTable,
                                     std::nullopt);
  try {
    (void)build_translation_groupoid(bad);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidAtlas);
  }
}

TEST_CASE("arrow_equal examples") {
  auto G = build_translation_groupoid(gallery_cone(3));
  CycNum z = CycNum::zeta(3);
  Arrow P = cone_arrow(*G, 1, v1(rat(1, 4)), 2);
  CHECK(G->equal(P, P));
  CHECK(G->equal(P, cone_arrow(*G, 0, v1(z / 4), 1)));
  CHECK(!G->equal(cone_arrow(*G, 0, v1(0), 1), cone_arrow(*G, 0, v1(0), 0)));
  CHECK(G->fast_path_hits() > 0);

  // Multi-chart: the pole and the big chart overlap; equality runs the span search.
  auto T = build_translation_groupoid(gallery_teardrop(3));
  const Atlas& A = *T->atlas();
  Vec y = v1(rat(1, 8));
  std::size_t e0 = A.identity_index(0);
  std::size_t inc = A.find_emb(1, 0, AffineMap::identity(1)).value();
  Arrow viaPole = T->make({1, 0, inc, 0, inc}, y);
  Arrow unit = T->identity({0, y});
  long before = T->fast_path_hits();
  CHECK(T->equal(viaPole, unit));
  CHECK(T->fast_path_hits() == before);
  std::size_t r1 = A.find_emb(1, 0, rot(3, 1)).value();
  CHECK(!T->equal(T->make({1, 0, inc, 0, r1}, y), unit));
  CHECK(T->equal(T->make({1, 0, inc, 0, r1}, y), T->make({0, 0, e0, 0, gidx(A, rot(3, 1))}, y)));
}

TEST_CASE("arrow_multiply examples") {
  auto G = build_translation_groupoid(gallery_cone(3));
  CycNum z = CycNum::zeta(3);
  Arrow P = cone_arrow(*G, 0, v1(rat(1, 4)), 1);
  Arrow Q = cone_arrow(*G, 0, v1(z / 4), 1);
  CHECK(G->equal(G->multiply(P, Q), cone_arrow(*G, 0, v1(rat(1, 4)), 2)));
  CHECK(G->equal(G->multiply(G->identity(G->source(P)), P), P));
  CHECK(G->equal(G->multiply(P, G->inverse(P)), G->identity(G->source(P))));
  try {
    (void)G->multiply(P, P);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotComposable);
  }
}

TEST_CASE("action-groupoid oracle on single-chart atlases") {
  for (const auto& [name, a] : gallery_suite()) {
    if (a->size() != 1) continue;
    CAPTURE(name);
    auto G = build_translation_groupoid(a);
    const auto& grp = a->chart(0).group;
    std::size_t e = a->identity_index(0);
    Rng rng(3);
    for (int n = 0; n < 200; ++n) {
      Vec x = sample_in_ball(a->chart(0).domain, a->conductor(), rng);
      auto from = G->arrows_from({0, x});
      CHECK(from.size() == grp.size());
      auto arrow = [&](std::size_t g) { return G->make({0, 0, e, 0, g}, x); };
      for (std::size_t g = 0; g < grp.size(); ++g) {
        Arrow ag = arrow(g);
        CHECK(std::count_if(from.begin(), from.end(), [&](const Arrow& b) { return G->equal(b, ag); }) == 1);
        CHECK(G->source(ag) == UnitPoint{0, x});
        CHECK(G->target(ag) == UnitPoint{0, grp[g](x)});
        // i(x, g) = (gx, g^-1)
        AffineMap ginv = inverse(grp[g]);
        Arrow expect_inv = G->make({0, 0, e, 0, a->find_emb(0, 0, ginv).value()}, grp[g](x));
        CHECK(G->equal(G->inverse(ag), expect_inv));
        for (std::size_t h = 0; h < grp.size(); ++h) {
          // m((x, g), (gx, h)) = (x, hg)
          Arrow bh = G->make({0, 0, e, 0, h}, grp[g](x));
          Arrow expect = arrow(a->find_emb(0, 0, compose(grp[h], grp[g])).value());
          CHECK(G->equal(G->multiply(ag, bh), expect));
        }
      }
    }
  }
}

TEST_CASE("multiplication is independent of the span completion") {
  for (const auto& [name, a] : gallery_suite()) {
    CAPTURE(name);
    auto G = build_translation_groupoid(a);
    Rng rng(21);
    for (int n = 0; n < 200; ++n) {
      Arrow g = G->sample_arrow(rng);
      auto next = G->arrows_from(G->target(g));
      Arrow h = next[n % next.size()];
      Arrow base = G->multiply(g, h, 0);
      for (unsigned c = 1; c < 5; ++c) CHECK(G->equal(base, G->multiply(g, h, c)));
    }
  }
}

TEST_CASE("local triviality and source coordinates") {
  for (const auto& [name, a] : gallery_suite()) {
    CAPTURE(name);
    auto G = build_translation_groupoid(a);
    for (std::size_t c = 0; c < G->arrow_components().size(); ++c) {
      const Triple& t = G->triple(c);
      CHECK(G->arrow_components()[c].s_map == a->emb(t.k, t.i)[t.a]);
      CHECK(G->arrow_components()[c].t_map == a->emb(t.k, t.j)[t.b]);
    }
    Rng rng(5);
    for (int n = 0; n < 100; ++n) {
      Arrow g = G->sample_arrow(rng);
      Arrow h{g.comp, sample_in_ball(G->arrow_components()[g.comp].param, a->conductor(), rng)};
      if (!exact_equal(g.p, h.p)) CHECK(!G->equal(g, h));
    }
  }
}

TEST_CASE("arrow equality is an equivalence relation") {
  for (const auto& [name, a] : gallery_suite()) {
    CAPTURE(name);
    auto G = build_translation_groupoid(a);
    Rng rng(9);
    int per = 1000 / static_cast<int>(gallery_suite().size()) + 1;
    for (int n = 0; n < per; ++n) {
      Arrow P = G->sample_arrow(rng);
      // Other representatives of the same class via unit products.
      Arrow Q = G->multiply(G->identity(G->source(P)), P, static_cast<unsigned>(n));
      Arrow R = G->multiply(Q, G->identity(G->target(P)), static_cast<unsigned>(n + 1));
      CHECK(G->equal(P, P));
      CHECK(G->equal(P, Q) == G->equal(Q, P));
      CHECK(G->equal(P, Q));
      CHECK(G->equal(Q, R));
      CHECK(G->equal(P, R));
      Arrow S = G->sample_arrow(rng);
      CHECK(G->equal(P, S) == G->equal(S, P));
      if (G->equal(P, S)) CHECK(G->equal(R, S));
    }
  }
}

TEST_CASE("groupoid axioms and predicates for every gallery atlas") {
  for (const auto& [name, a] : gallery_suite()) {
    CAPTURE(name);
    auto G = build_translation_groupoid(a);
    Report r = check_groupoid_axioms(*G, a->size() > 1 ? 150 : 300);
    CHECK(r.ok());
    for (const auto& v : r.violations) MESSAGE(v);
    auto sp = structural_predicates(*G, 40);
    CHECK(sp.etale);
    CHECK(sp.proper);
    CHECK(sp.effective);
    CHECK(sp.report.ok());
  }
}

TEST_CASE("f_on_morphism examples") {
  FunctorF F;
  AtlasPtr c3 = gallery_cone(3);
  auto id = F.morphism(identity_system(c3));
  CHECK(morphisms_agree(*id, *identity_morphism(F.object(c3)), 50));
  auto sq = F.morphism(power_system(c3, c3, 2));
  CHECK(validate_groupoid_morphism(*sq, 200).ok());
  Vec x = v1(rat(1, 3) + CycNum::zeta(3) / 5);
  CHECK(exact_equal(sq->apply(UnitPoint{0, x}).x, v1(x[0] * x[0])));
  // Representative independence of Psi.
  auto G = F.object(c3);
  Rng rng(4);
  for (int n = 0; n < 100; ++n) {
    Arrow P = G->sample_arrow(rng);
    Arrow Q = G->multiply(G->identity(G->source(P)), P, 1);
    CHECK(G->equal(sq->arrow(P), sq->arrow(Q)));
  }
  auto bad = system_from_lifts(c3, c3, {0}, {PolyMap::from_affine(AffineMap::translation(v1(rat(1, 10))))});
  CHECK_THROWS_AS(F.morphism(bad), Error);
}

TEST_CASE("f_on_2cell examples") {
  FunctorF F;
  AtlasPtr c3 = gallery_cone(3);
  auto f0 = rotation_system(c3, 0), f1 = rotation_system(c3, 1);
  CHECK(cells_agree(F.cell(identity_orb_cell(f0)), identity_cell(F.morphism(f0)), 50));
  auto a = F.cell(solve_orb_cell(f0, f1));
  CHECK(validate_grp_nat_trans(a, 200).ok());
  auto G = F.object(c3);
  Vec x = v1(rat(1, 4));
  CHECK(G->equal(a.at({0, x}), cone_arrow(*G, 0, x, 1)));
  // (ii) at 1/4 along g = [1, 1/4, zeta]
  Arrow g = cone_arrow(*G, 0, x, 1);
  Arrow lhs = G->multiply(a.at(G->source(g)), a.to->arrow(g));
  Arrow rhs = G->multiply(a.from->arrow(g), a.at(G->target(g)));
  CHECK(G->equal(lhs, rhs));
  auto broken = std::make_shared<OrbNatTrans>(*solve_orb_cell(f0, f1));
  broken->delta[0] = c3->identity_index(0);
  CHECK_THROWS_AS(F.cell(broken), Error);

  auto c32 = gallery_cone2(3);
  auto b = F.cell(solve_orb_cell(rotation_system(c32, 0), rotation_system(c32, 2)));
  CHECK(validate_grp_nat_trans(b, 100).ok());
}

TEST_CASE("check_functor_laws examples") {
  FunctorF F;
  AtlasPtr c3 = gallery_cone(3);
  const int zeros[9] = {0, 0, 0, 0, 0, 0, 0, 0, 0};
  CHECK(check_functor_laws(F, rotation_fixture(c3, zeros), 100).ok());
  const int ks[9] = {1, 0, 2, 2, 0, 1, 2, 1, 0};
  Report r = check_functor_laws(F, rotation_fixture(c3, ks), 500);
  CHECK(r.ok());
  for (const auto& v : r.violations) MESSAGE(v);

  auto c32 = gallery_cone2(3);
  CHECK(check_functor_laws(F, rotation_fixture(c32, ks), 120).ok());
  auto d = rotation_fixture(c32, ks);
  auto corrupt = std::make_shared<CompatibleSystem>(*d.f);
  corrupt->theta[0] = 1;
  corrupt->label = "corrupt";
  d.f = corrupt;
  d.delta = std::make_shared<OrbNatTrans>(OrbNatTrans{corrupt, d.delta->to, d.delta->delta, "delta"});
  Report rc = check_functor_laws(F, d, 50);
  CHECK(has_violation(rc, "system f: lift on c0"));
}
