#include "doctest.h"

#include <algorithm>
#include <random>

#include "orb/io/gallery.hpp"
#include "orb/preorb/laws.hpp"
#include "orb/preorb/preorb.hpp"

using namespace orb;

namespace {

bool has_violation(const Report& r, const std::string& needle) {
  return std::any_of(r.violations.begin(), r.violations.end(),
                     [&](const std::string& v) { return v.find(needle) != std::string::npos; });
}

// Exponent e with group[e] = z -> zeta_p^e z, read off the group independently.
int rotation_exponent(const AtlasPtr& a, std::size_t chart, std::size_t idx, int p) {
  const AffineMap& g = a->chart(chart).group.at(idx);
  for (int e = 0; e < p; ++e)
    if (g.A(0, 0) == root_of_unity(a->conductor(), e * (a->conductor() / p))) return e;
  return -1;
}

CellPtr rot_cell(const AtlasPtr& a, int k1, int k2) {
  return solve_orb_cell(rotation_system(a, k1), rotation_system(a, k2), "r" + std::to_string(k2 - k1));
}

LawDiagram<PreOrbOps> rotation_diagram(const AtlasPtr& a, int ks[9]) {
  LawDiagram<PreOrbOps> d;
  d.f = rotation_system(a, ks[0]);
  d.g = rotation_system(a, ks[1]);
  d.h = rotation_system(a, ks[2]);
  d.delta = rot_cell(a, ks[0], ks[3]);
  d.sigma = rot_cell(a, ks[3], ks[4]);
  d.tau = rot_cell(a, ks[4], ks[5]);
  d.eta = rot_cell(a, ks[1], ks[6]);
  d.mu = rot_cell(a, ks[6], ks[7]);
  d.gamma = rot_cell(a, ks[2], ks[8]);
  return d;
}

}  // namespace

TEST_CASE("validate_compatible_system examples") {
  AtlasPtr c3 = gallery_cone(3);
  CHECK(validate_compatible_system(*identity_system(c3)).ok());
  auto sq = power_system(c3, c3, 2);
  CHECK(validate_compatible_system(*sq).ok());
  // (zeta z)^2 = zeta^2 z^2: rotation by e goes to rotation by 2e.
  for (std::size_t a = 0; a < 3; ++a) {
    int e = rotation_exponent(c3, 0, a, 3);
    CHECK(rotation_exponent(c3, 0, sq->emb_image(0, 0, a), 3) == (2 * e) % 3);
  }
  auto shift = system_from_lifts(c3, c3, {0}, {PolyMap::from_affine(AffineMap::translation(make_vec({rat(1, 10)})))});
  Report r = validate_compatible_system(*shift);
  CHECK(!r.ok());
  CHECK(has_violation(r, "cube condition"));
  for (const auto& [name, a] : gallery_suite()) {
    CAPTURE(name);
    CHECK(validate_compatible_system(*identity_system(a)).ok());
  }
  auto c32 = gallery_cone2(3);
  CHECK(validate_compatible_system(*rotation_system(c32, 1)).ok());
}

TEST_CASE("compose_compatible examples") {
  AtlasPtr c3 = gallery_cone(3);
  auto f = power_system(c3, c3, 2);
  auto one = identity_system(c3);
  CHECK(systems_equal(*compose_compatible(f, one), *f));
  CHECK(systems_equal(*compose_compatible(one, f), *f));
  auto ff = compose_compatible(f, f);
  CHECK(ff->lift[0] == power_map(1, CycNum(1), 4));
  CHECK(validate_compatible_system(*ff).ok());
  auto r1 = rotation_system(c3, 1);
  auto lhs = compose_compatible(compose_compatible(r1, f), ff);
  auto rhs = compose_compatible(r1, compose_compatible(f, ff));
  CHECK(systems_equal(*lhs, *rhs));
  CHECK(validate_compatible_system(*lhs).ok());
  AtlasPtr c4 = gallery_cone(4);
  CHECK_THROWS_AS(compose_compatible(identity_system(c4), f), Error);
}

TEST_CASE("validate_orb_nat_trans examples") {
  AtlasPtr c3 = gallery_cone(3);
  auto one = identity_system(c3);
  CHECK(validate_orb_nat_trans(*identity_orb_cell(one)).ok());
  auto d = rot_cell(c3, 0, 1);
  CHECK(validate_orb_nat_trans(*d).ok());
  CHECK(rotation_exponent(c3, 0, d->delta[0], 3) == 1);
  auto bad = std::make_shared<OrbNatTrans>(*d);
  bad->delta[0] = d->from->dst->find_emb(0, 0, AffineMap::scalar(1, CycNum::zeta(3, 2), Vec::Zero(1))).value();
  Report r = validate_orb_nat_trans(*bad);
  CHECK(has_violation(r, "(i) fails on chart c0"));

  // Two-chart cone: the cell has one component per chart.
  auto c32 = gallery_cone2(3);
  auto d2 = rot_cell(c32, 0, 1);
  CHECK(validate_orb_nat_trans(*d2).ok());
  auto bad2 = std::make_shared<OrbNatTrans>(*d2);
  bad2->delta[1] = c32->identity_index(1);
  CHECK(has_violation(validate_orb_nat_trans(*bad2), "chart c1"));
}

TEST_CASE("vcomp_orb and hcomp_orb examples") {
  AtlasPtr c3 = gallery_cone(3);
  auto d = rot_cell(c3, 0, 1);
  auto s = rot_cell(c3, 1, 2);
  CHECK(cells_equal(*vcomp_orb(d, identity_orb_cell(d->from)), *d));
  auto sd = vcomp_orb(s, d);
  CHECK(validate_orb_nat_trans(*sd).ok());
  CHECK(rotation_exponent(c3, 0, sd->delta[0], 3) == 2);
  CHECK_THROWS_AS(vcomp_orb(d, d), Error);
  auto one = identity_system(c3);
  auto ii = hcomp_orb(identity_orb_cell(one), identity_orb_cell(one));
  CHECK(cells_equal(*ii, *identity_orb_cell(compose_compatible(one, one))));
  auto e = rot_cell(c3, 2, 0);
  auto ed = hcomp_orb(e, d);
  CHECK(validate_orb_nat_trans(*ed).ok());
  // exponents add: (1 - 0) + (0 - 2) = 2 mod 3.
  CHECK(rotation_exponent(c3, 0, ed->delta[0], 3) == 2);
  AtlasPtr c4 = gallery_cone(4);
  CHECK_THROWS_AS(hcomp_orb(rot_cell(c4, 0, 1), d), Error);
}

TEST_CASE("check_2cat_laws examples") {
  AtlasPtr c3 = gallery_cone(3);
  int zeros[9] = {0, 0, 0, 0, 0, 0, 0, 0, 0};
  CHECK(check_2cat_laws(PreOrbOps{}, rotation_diagram(c3, zeros)).ok());
  int ks[9] = {1, 2, 0, 2, 0, 1, 1, 2, 2};
  Report r = check_2cat_laws(PreOrbOps{}, rotation_diagram(c3, ks));
  CHECK(r.ok());
  CHECK(r.checks == 11);

  struct CorruptV : PreOrbOps {
    Cell vcomp(const Cell& b, const Cell&) const { return b; }
  };
  LawDiagram<CorruptV> dc;
  auto d = rotation_diagram(c3, ks);
  dc.f = d.f, dc.g = d.g, dc.h = d.h, dc.delta = d.delta, dc.sigma = d.sigma, dc.tau = d.tau;
  dc.eta = d.eta, dc.mu = d.mu, dc.gamma = d.gamma;
  Report rc = check_2cat_laws(CorruptV{}, dc);
  CHECK(has_violation(rc, "left unit of vertical composition"));

  auto bad = rotation_diagram(c3, ks);
  std::swap(bad.delta, bad.sigma);
  CHECK_THROWS_AS(check_2cat_laws(PreOrbOps{}, bad), Error);
}

TEST_CASE("interchange on random rotation squares") {
  std::mt19937_64 rng(11);
  for (int p : {2, 3, 4, 6}) {
    AtlasPtr a = gallery_cone(p);
    std::uniform_int_distribution<int> e(0, p - 1);
    for (int n = 0; n < 25; ++n) {
      int ks[9];
      for (int& k : ks) k = e(rng);
      auto d = rotation_diagram(a, ks);
      Report r = check_2cat_laws(PreOrbOps{}, d);
      CHECK(r.ok());
      PreOrbOps P;
      auto lhs = P.hcomp(P.vcomp(d.mu, d.eta), P.vcomp(d.sigma, d.delta));
      CHECK(validate_orb_nat_trans(*lhs).ok());
      // Oracle: the component is rotation by (k_mu - k_g1) + (k_sigma - k_f1) mod p.
      int want = ((ks[7] - ks[1]) + (ks[4] - ks[0])) % p;
      want = (want + p) % p;
      CHECK(rotation_exponent(a, 0, lhs->delta[0], p) == want);
    }
  }
}

TEST_CASE("closure of compositions on the two-chart cone") {
  auto a = gallery_cone2(3);
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 3; ++y) {
      auto d = rot_cell(a, 0, x);
      auto s = rot_cell(a, x, y);
      CHECK(validate_orb_nat_trans(*vcomp_orb(s, d)).ok());
      CHECK(validate_orb_nat_trans(*hcomp_orb(s, d)).ok());
    }
}
