#include "doctest.h"
#include "oracle_numeric.hpp"

#include "orb/numerics/affine.hpp"
#include "orb/numerics/interval.hpp"
#include "orb/numerics/polymap.hpp"

using namespace orb;

namespace {

CycNum q(long n, long d = 1) { return CycNum(Rational(n, d)); }

Vec v1(const CycNum& x) { return make_vec({x}); }

AffineMap aff1(const CycNum& a, const CycNum& b) { return AffineMap(make_mat(1, 1, {a}), v1(b)); }

}  // namespace

TEST_CASE("cyclotomic polynomials") {
  CHECK(cyclotomic_polynomial(1) == std::vector<long long>{-1, 1});
  CHECK(cyclotomic_polynomial(3) == std::vector<long long>{1, 1, 1});
  CHECK(cyclotomic_polynomial(4) == std::vector<long long>{1, 0, 1});
  CHECK(cyclotomic_polynomial(6) == std::vector<long long>{1, -1, 1});
  CHECK(cyclotomic_polynomial(8) == std::vector<long long>{1, 0, 0, 0, 1});
  CHECK(cyclotomic_polynomial(12) == std::vector<long long>{1, 0, -1, 0, 1});
  for (int m : oracle::conductors()) {
    CycNum z = CycNum::zeta(m);
    CycNum p(1);
    for (int k = 0; k < m; ++k) p *= z;
    CHECK(p == CycNum(1));
    CycNum phi(0), zk(1);
    for (long long c : cyclotomic_polynomial(m)) {
      phi += CycNum(static_cast<long>(c)) * zk;
      zk *= z;
    }
    CHECK(phi.is_zero());
  }
}

TEST_CASE("cyc_ops examples") {
  CycNum w = CycNum::zeta(12, 4);
  CHECK(w * w * w == CycNum(1));
  CycNum z = CycNum::zeta(12);
  CycNum s = z + z.conj();
  CHECK_FALSE(s.is_rational());
  CHECK(s * s == CycNum(3));
  CHECK_THROWS_AS(CycNum(0).inverse(), Error);
  try {
    (void)CycNum(0).inverse();
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DivisionByZero);
  }
  CHECK(CycNum::zeta(3) == CycNum::zeta(12, 4));
  CHECK(CycNum::zeta(3).lift(12) == CycNum::zeta(12, 4));
  CHECK_THROWS_AS(CycNum::zeta(3) + CycNum::zeta(4), Error);
  CHECK(CycNum::zeta(3) + CycNum::zeta(3).conj() == CycNum(-1));
  CHECK((CycNum(2) - CycNum::zeta(4)).norm() == 5);
  CycNum u = CycNum(1) + CycNum::zeta(8);
  CHECK(u * u.inverse() == CycNum(1));
  CHECK(CycNum::zeta(6, 3) == CycNum(-1));
}

TEST_CASE("sign_real examples") {
  CHECK(sign_real(CycNum(0)) == 0);
  CycNum z = CycNum::zeta(12);
  CycNum s = z + z.conj();
  CHECK(sign_real(CycNum(3) - s * s) == 0);
  CHECK(sign_real(CycNum(1) - s) == -1);
  CHECK(sign_real(s) == 1);
  CHECK_THROWS_AS(sign_real(z), Error);
  CycNum r2 = CycNum::zeta(8) + CycNum::zeta(8).conj();  // sqrt 2
  CHECK(sign_real(r2 - q(3, 2)) == -1);
  CHECK(sign_real(r2 - q(7, 5)) == 1);
  CHECK(sign_real(r2 - q(1414214, 1000000)) == -1);
  CHECK(sign_real(s - q(17320508, 10000000)) == 1);
}

TEST_CASE("sign_real on Pell convergents of sqrt 2 forces refinement") {
  CycNum r2 = CycNum::zeta(8) + CycNum::zeta(8).conj();
  mpz_class p = 1, qq = 1;
  for (int n = 0; n < 60; ++n) {
    mpz_class np = p + 2 * qq, nq = p + qq;
    p = np;
    qq = nq;
    CycNum x = r2 - CycNum(Rational(p, qq));
    int expect = oracle::sign_of_real_part(x);
    if (expect == 0) break;
    CHECK(sign_real(x) == expect);
  }
  // convergent p/q alternate around sqrt 2; at n=40 we are well past 64 bits
  CHECK(qq > mpz_class("1000000000000000000000"));
}

TEST_CASE("interval enclosure contains the oracle value") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    int m = oracle::conductors()[i % oracle::conductors().size()];
    CycNum y = oracle::random_cyc(rng, m);
    CycNum x = y + y.conj();
    Interval e = enclose_real_part(x, 64);
    oracle::Complex256 v;
    double s;
    oracle::evaluate(x, v, s);
    CHECK(mpfr_lessequal_p(e.lo(), v.re));
    CHECK(mpfr_greaterequal_p(e.hi(), v.re));
  }
}

TEST_CASE("field laws and sign agree with the oracle (sampled)") {
  std::mt19937_64 rng(11);
  int mismatches = 0, undecided = 0;
  for (int i = 0; i < 1500; ++i) {
    int m = oracle::conductors()[i % oracle::conductors().size()];
    CycNum a = oracle::random_cyc(rng, m), b = oracle::random_cyc(rng, m), c = oracle::random_cyc(rng, m);
    if ((a * b) * c != a * (b * c)) ++mismatches;
    if (a * (b + c) != a * b + a * c) ++mismatches;
    if (!a.is_zero() && a * a.inverse() != CycNum(1)) ++mismatches;
    if (a.conj().conj() != a) ++mismatches;
    if ((a * b).conj() != a.conj() * b.conj()) ++mismatches;
    if (!oracle::product_agrees(a, b, a * b)) ++mismatches;
    CycNum x = a + a.conj() - b * b.conj();
    if (x.is_zero()) continue;
    int o = oracle::sign_of_real_part(x);
    if (o == 0)
      ++undecided;
    else if (o != sign_real(x))
      ++mismatches;
  }
  CHECK(mismatches == 0);
  CHECK(undecided == 0);
}

TEST_CASE("rational parsing") {
  CHECK(parse_rational("3/6") == Rational(1, 2));
  CHECK(parse_rational("-4") == Rational(-4));
  CHECK_THROWS_AS(parse_rational("1/0"), Error);
  CHECK_THROWS_AS(parse_rational("x"), Error);
  CHECK_THROWS_AS(parse_rational("1/-2"), Error);
  CHECK(format_rational(Rational(-3, 9)) == "-1/3");
}

TEST_CASE("serialize cyclotomic elements") {
  CycNum w = CycNum::zeta(12, 4);
  auto s = w.serialize(12);
  REQUIRE(s.size() == 12);
  std::vector<Rational> back;
  for (const auto& t : s) back.push_back(parse_rational(t));
  CHECK(CycNum::from_power_coeffs(12, back) == w);
  // pre-reduction input: zeta_12^4 given directly
  std::vector<Rational> raw(12, Rational(0));
  raw[4] = 1;
  CHECK(CycNum::from_power_coeffs(12, raw) == w);
  CHECK(CycNum(Rational(1, 2)).serialize(3) == std::vector<std::string>{"1/2", "0", "0"});
}

TEST_CASE("affine_compose and affine_equal examples") {
  CycNum z3 = CycNum::zeta(3);
  AffineMap rot = aff1(z3, 0);
  AffineMap g = aff1(q(1, 2), q(1, 4));
  CHECK(compose(AffineMap::identity(1), g) == g);
  CHECK(compose(rot, rot) == aff1(z3 * z3, 0));
  CHECK(compose(g, rot) == aff1(z3 * q(1, 2), q(1, 4)));
  CHECK(affine_equal(AffineMap::identity(1), AffineMap::identity(1)));
  CHECK(affine_equal(rot, aff1(CycNum::zeta(12, 4), 0)));
  CHECK_FALSE(affine_equal(rot, aff1(z3 * z3, 0)));
  CHECK_THROWS_AS(compose(rot, AffineMap::identity(2)), Error);
}

TEST_CASE("similarity factors multiply and inverses are exact") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 100; ++i) {
    CycNum a = oracle::random_cyc(rng, 12), c = oracle::random_cyc(rng, 12);
    if (a.is_zero() || c.is_zero()) continue;
    // 2x2 similarity [[a, -conj(c)], [c, conj(a)]] has factor |a|^2 + |c|^2
    Mat A = make_mat(2, 2, {a, -c.conj(), c, a.conj()});
    AffineMap f(A, make_vec({oracle::random_cyc(rng, 12), oracle::random_cyc(rng, 12)}));
    AffineMap h = AffineMap::scalar(2, a, make_vec({c, 0}));
    auto lf = similarity_factor(f.A), lh = similarity_factor(h.A);
    REQUIRE(lf);
    REQUIRE(lh);
    CHECK(*lf == a * a.conj() + c * c.conj());
    auto lc = similarity_factor(compose(f, h).A);
    REQUIRE(lc);
    CHECK(*lc == *lf * *lh);
    CHECK(compose(f, inverse(f)) == AffineMap::identity(2));
    CHECK(compose(inverse(h), h) == AffineMap::identity(2));
    CHECK(compose(compose(f, h), f) == compose(f, compose(h, f)));
  }
  CHECK_FALSE(similarity_factor(make_mat(2, 2, {1, 1, 0, 1})).has_value());
}

TEST_CASE("ball predicates") {
  Ball unit{v1(0), 1};
  CHECK(contains(unit, v1(q(1, 4))));
  CHECK_FALSE(contains(unit, v1(1)));
  CHECK(contains_closed(unit, v1(1)));
  CHECK(contains(unit, Ball{v1(q(1, 2)), q(1, 4)}));  // internally tangent
  CHECK_FALSE(contains(unit, Ball{v1(q(1, 2)), q(1, 3)}));
  CHECK_FALSE(contains(Ball{v1(0), q(1, 4)}, unit));
  CHECK_FALSE(intersects(unit, Ball{v1(2), 1}));  // tangent open balls
  CHECK(intersects(unit, Ball{v1(q(3, 2)), 1}));
  CycNum z3 = CycNum::zeta(3);
  // B(5/8, 1/8) against its rotation by zeta_3: centres 5 sqrt3 / 8 apart
  Ball cap{v1(q(5, 8)), q(1, 64)};
  CHECK_FALSE(intersects(cap, image(aff1(z3, 0), cap)));
  CHECK(preserves(aff1(z3, 0), unit));
  CHECK_FALSE(preserves(aff1(2, 0), unit));
  CHECK(contains(Ball{Vec(0), 1}, Vec(0)));
  Ball im = image(aff1(q(1, 2), q(1, 4)), unit);
  CHECK(im.radius2 == q(1, 4));
  CHECK(im.center[0] == q(1, 4));
}

TEST_CASE("polymap composition") {
  PolyMap sq = monomial_map(1, 2);
  PolyMap q4 = compose(sq, sq);
  CHECK(q4 == monomial_map(1, 4));
  CycNum z3 = CycNum::zeta(3);
  AffineMap rot = aff1(z3, 0);
  // (zeta z)^2 = zeta^2 z^2
  CHECK(compose(sq, rot) == compose(aff1(z3 * z3, 0), sq));
  PolyMap shifted = compose(sq, aff1(1, q(1, 10)));
  CHECK(shifted(v1(1))[0] == q(121, 100));
  CHECK(shifted.degree() == 2);
  CHECK(PolyMap::from_affine(rot).to_affine() == rot);
  // 2-variable: (z0 z1, z0 + z1) o (z0 + 1, z1)
  Poly a = Poly::variable(2, 0) * Poly::variable(2, 1);
  Poly b = Poly::variable(2, 0) + Poly::variable(2, 1);
  PolyMap f(2, {a, b});
  AffineMap t = AffineMap::translation(make_vec({1, 0}));
  PolyMap ft = compose(f, t);
  Vec p = make_vec({q(1, 3), z3});
  CHECK(exact_equal(ft(p), f(t(p))));
}

TEST_CASE("exact linear solve") {
  Mat M = make_mat(2, 2, {1, 2, 2, 4});
  Vec out;
  CHECK(solve_linear(M, make_vec({1, 2}), out));
  CHECK(exact_equal(M * out, make_vec({1, 2})));
  CHECK_FALSE(solve_linear(M, make_vec({1, 3}), out));
}
