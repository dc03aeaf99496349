#include "doctest.h"

#include <algorithm>

#include "orb/atlas/lemmas.hpp"
#include "orb/io/gallery.hpp"

using namespace orb;

namespace {

CycNum q(long n, long d = 1) { return CycNum(Rational(n, d)); }
Vec v1(const CycNum& x) { return make_vec({x}); }
AffineMap aff1(const CycNum& a, const CycNum& b) { return AffineMap(make_mat(1, 1, {a}), v1(b)); }

Chart cone_chart(int p, int m = 0) { return Chart{"c", Ball{v1(0), 1}, rotation_group(p, 1, m)}; }

bool has_violation(const Report& r, const std::string& needle) {
  return std::any_of(r.violations.begin(), r.violations.end(),
                     [&](const std::string& v) { return v.find(needle) != std::string::npos; });
}

}  // namespace

TEST_CASE("validate_chart examples") {
  CHECK(validate_chart(cone_chart(3)).ok());
  Chart dup = cone_chart(3);
  dup.group.push_back(AffineMap::identity(1));
  CHECK(has_violation(validate_chart(dup), "faithfulness"));
  Chart scale{"s", Ball{v1(0), 1}, {AffineMap::identity(1), aff1(2, 0)}};
  CHECK(has_violation(validate_chart(scale), "domain preservation"));
  Chart missing{"m", Ball{v1(0), 1}, {AffineMap::identity(1), aff1(CycNum::zeta(3), 0)}};
  CHECK(has_violation(validate_chart(missing), "closure"));
}

TEST_CASE("stabilizer examples") {
  Chart c = cone_chart(3);
  CHECK(stabilizer(c, v1(0)).size() == 3);
  CHECK(stabilizer(c, v1(q(1, 4))).size() == 1);
  CHECK(!has_trivial_stabilizer(c, v1(0)));
  CHECK(has_trivial_stabilizer(c, v1(q(1, 4))));
  Chart t{"t", Ball{v1(0), 1}, {AffineMap::identity(1)}};
  CHECK(has_trivial_stabilizer(t, v1(q(1, 3))));
  CHECK_THROWS_AS(stabilizer(c, v1(2)), Error);
}

TEST_CASE("find_conjugator examples") {
  Chart dst = cone_chart(3);
  AffineMap incl = AffineMap::identity(1);
  CHECK(find_conjugator(dst, incl, incl) == 0);
  CycNum z3 = CycNum::zeta(3);
  CHECK(dst.group[find_conjugator(dst, incl, aff1(z3, 0))] == aff1(z3, 0));
  try {
    (void)find_conjugator(dst, incl, aff1(1, q(1, 4)));
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NoConjugator);
  }
}

TEST_CASE("induced_homomorphism examples") {
  Chart big = cone_chart(3);
  Chart small{"s", Ball{v1(0), q(1, 4)}, rotation_group(3, 1)};
  auto L = induced_homomorphism(small, big, AffineMap::identity(1));
  CHECK(L == std::vector<std::size_t>{0, 1, 2});
  Chart c12 = cone_chart(3, 12);
  auto L12 = induced_homomorphism(c12, c12, aff1(CycNum::zeta(12), 0));
  CHECK(L12 == std::vector<std::size_t>{0, 1, 2});
  Chart c6 = cone_chart(6);
  auto L6 = induced_homomorphism(c6, c6, aff1(CycNum::zeta(6), 0));
  for (std::size_t a = 0; a < 6; ++a)
    for (std::size_t b = 0; b < 6; ++b) {
      auto ab = find_conjugator(c6, AffineMap::identity(1), compose(c6.group[a], c6.group[b]));
      CHECK(c6.group[L6[ab]] == compose(c6.group[L6[a]], c6.group[L6[b]]));
    }
}

TEST_CASE("overlap_transport examples") {
  Chart big = cone_chart(3);
  Chart small{"s", Ball{v1(0), q(1, 4)}, rotation_group(3, 1)};
  AffineMap incl = AffineMap::identity(1);
  CHECK(overlap_transport(small, big, incl, 0) == std::optional<std::size_t>(0));
  CHECK(overlap_transport(small, big, incl, 1) == std::optional<std::size_t>(1));
  Chart z2 = cone_chart(2);
  Chart off{"o", Ball{v1(0), q(1, 16)}, {AffineMap::identity(1)}};
  AffineMap shift = aff1(1, q(1, 2));
  CHECK_FALSE(overlap_transport(off, z2, shift, 1).has_value());
  CHECK(overlap_transport(off, z2, shift, 0) == std::optional<std::size_t>(0));
}

TEST_CASE("restrict_chart examples") {
  Chart c = cone_chart(3);
  auto r0 = restrict_chart(c, v1(0), Rational(1, 4));
  CHECK(r0.chart.domain.radius2 == q(1, 4));
  CHECK(r0.chart.group.size() == 3);
  CHECK(r0.inclusion == AffineMap::identity(1));
  auto r1 = restrict_chart(c, v1(q(1, 4)), Rational(1, 4));
  CHECK(r1.chart.group.size() == 1);
  CHECK(r1.chart.domain.radius2 == q(1, 64));  // 1/4 -> 1/16 -> 1/64 by hand
  CHECK(validate_chart(r1.chart).ok());
  Chart t{"t", Ball{v1(0), 1}, {AffineMap::identity(1)}};
  auto r2 = restrict_chart(t, v1(q(1, 2)), Rational(1, 4));
  CHECK(r2.chart.group.size() == 1);
  CHECK(r2.chart.domain.radius2 == q(1, 4));
}

TEST_CASE("common_span examples") {
  auto cone3 = gallery_cone(3);
  CycNum z3 = CycNum::zeta(3);
  auto s0 = common_span(*cone3, 0, v1(q(1, 4)), 0, 0, 0, v1(q(1, 4)), 0);
  CHECK(s0.left == s0.right);
  auto s = common_span(*cone3, 0, v1(z3 / CycNum(4)), 0, 0, 0, v1(q(1, 4)), 1);
  const auto& G = cone3->chart(0).group;
  CHECK(compose(G[0], s.left) == compose(G[1], s.right));
  CHECK(exact_equal(s.left(s.span.point), v1(z3 / CycNum(4))));
  CHECK(exact_equal(s.right(s.span.point), v1(q(1, 4))));
  auto tear = gallery_teardrop(3);
  auto pole = *tear->chart_index("pole");
  Vec g = v1(q(1, 8));
  auto st = common_span(*tear, 0, g, 0, 0, pole, g, 0);
  CHECK(compose(tear->emb(0, 0)[0], st.left) == compose(tear->emb(pole, 0)[0], st.right));
  CHECK(exact_equal(st.right(st.span.point), g));
  try {
    (void)common_span(*cone3, 0, v1(q(1, 4)), 0, 0, 0, v1(q(1, 3)), 0);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::OracleRefused);
  }
}

TEST_CASE("validate_atlas examples") {
  for (const auto& [name, a] : gallery_suite()) {
    CAPTURE(name);
    Report r = validate_atlas(*a, 60);
    for (const auto& v : r.violations) MESSAGE(v);
    CHECK(r.ok());
  }
  Chart c0{"c0", Ball{v1(0), 1}, {AffineMap::identity(1)}};
  Chart c1{"c1", Ball{v1(0), q(1, 16)}, {AffineMap::identity(1)}};
  Atlas bad(1, 1, {c0, c1}, {Embedding{1, 0, aff1(1, q(7, 8))}}, OracleKind::SpanTable, std::nullopt);
  CHECK(has_violation(validate_atlas(bad, 10), "image ball not contained"));
  Atlas empty(1, 1, {}, {}, OracleKind::SpanTable, std::nullopt);
  CHECK(has_violation(validate_atlas(empty, 10), "axiom (i)"));
}

TEST_CASE("sheet model catches a lens overlap") {
  // two trivial charts whose images overlap without nesting: axiom (ii) fails
  Sheet s{"s", Ball{v1(0), 4}, {AffineMap::identity(1)}};
  Chart a{"a", Ball{v1(0), 1}, {AffineMap::identity(1)}};
  Chart b{"b", Ball{v1(0), 1}, {AffineMap::identity(1)}};
  SheetModel m{{s}, {0, 0}, {AffineMap::identity(1), aff1(1, 1)}};
  Atlas lens(1, 1, {a, b}, {}, OracleKind::Sheets, m, {}, {SpanWitness{0, v1(q(1, 2)), 1, v1(q(-1, 2))}});
  Report r = validate_atlas(lens, 50);
  CHECK_FALSE(r.ok());
  CHECK(has_violation(r, "coverage witness"));
}

TEST_CASE("Moerdijk round trip and homomorphism properties on the gallery") {
  for (const auto& [name, a] : gallery_suite()) {
    CAPTURE(name);
    for (std::size_t k = 0; k < a->size(); ++k)
      for (std::size_t i = 0; i < a->size(); ++i) {
        const auto& E = a->emb(k, i);
        if (E.empty()) continue;
        const Chart& dst = a->chart(i);
        CHECK(E.size() == dst.group.size());
        for (std::size_t h = 0; h < dst.group.size(); ++h)
          CHECK(find_conjugator(dst, E[0], compose(dst.group[h], E[0])) == h);
        auto L = induced_homomorphism(a->chart(k), dst, E[0]);
        std::vector<std::size_t> sorted = L;
        std::sort(sorted.begin(), sorted.end());
        CHECK(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());
        const auto& Gk = a->chart(k).group;
        for (std::size_t g1 = 0; g1 < Gk.size(); ++g1) {
          CHECK(overlap_transport(a->chart(k), dst, E[0], L[g1]) == std::optional<std::size_t>(g1));
          for (std::size_t g2 = 0; g2 < Gk.size(); ++g2) {
            auto prod = find_conjugator(a->chart(k), AffineMap::identity(a->dim()), compose(Gk[g1], Gk[g2]));
            CHECK(dst.group[L[prod]] == compose(dst.group[L[g1]], dst.group[L[g2]]));
          }
        }
      }
  }
}

TEST_CASE("restrict_chart output validates and keeps the stabilizer") {
  Rng rng(5);
  for (const auto& [name, a] : gallery_suite()) {
    CAPTURE(name);
    for (std::size_t i = 0; i < a->size(); ++i)
      for (int s = 0; s < 10; ++s) {
        const Chart& c = a->chart(i);
        Vec x = s == 0 ? c.domain.center : sample_in_ball(c.domain, a->conductor(), rng);
        auto r = restrict_chart(c, x, Rational(1, 4));
        CHECK(validate_chart(r.chart).ok());
        CHECK(validate_embedding(r.chart, c, r.inclusion).ok());
        CHECK(r.chart.group.size() == stabilizer(c, x).size());
      }
  }
}

TEST_CASE("common_span diagrams commute on random identified pairs") {
  Rng rng(9);
  for (const auto& [name, a] : gallery_suite()) {
    CAPTURE(name);
    int done = 0;
    for (int s = 0; s < 500; ++s) {
      std::size_t l = static_cast<std::size_t>(s) % a->size();
      Vec xl = sample_in_ball(a->chart(l).domain, a->conductor(), rng);
      // preimages of xl under embeddings into l
      std::vector<std::tuple<std::size_t, std::size_t, Vec>> pre;
      for (std::size_t n = 0; n < a->size(); ++n)
        for (std::size_t e = 0; e < a->emb(n, l).size(); ++e) {
          Vec xn = a->emb_inverse(n, l)[e](xl);
          if (contains(a->chart(n).domain, xn)) pre.emplace_back(n, e, xn);
        }
      if (pre.empty()) continue;
      auto [n, e1, xn] = pre[static_cast<std::size_t>(s) % pre.size()];
      auto [p, e2, xp] = pre[static_cast<std::size_t>(s * 7 + 3) % pre.size()];
      auto cs = common_span(*a, n, xn, l, e1, p, xp, e2, static_cast<unsigned>(s % 5));
      CHECK(compose(a->emb(n, l)[e1], cs.left) == compose(a->emb(p, l)[e2], cs.right));
      CHECK(exact_equal(cs.left(cs.span.point), xn));
      CHECK(exact_equal(cs.right(cs.span.point), xp));
      ++done;
    }
    CHECK(done > 0);
  }
}
