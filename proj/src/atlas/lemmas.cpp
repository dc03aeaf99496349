#include "orb/atlas/lemmas.hpp"

#include <set>

namespace orb {

namespace {

std::optional<std::size_t> index_of(const std::vector<AffineMap>& v, const AffineMap& f) {
  for (std::size_t k = 0; k < v.size(); ++k)
    if (v[k] == f) return k;
  return std::nullopt;
}

}  // namespace

Report validate_chart(const Chart& c) {
  Report r;
  const int n = c.dim();
  const std::string tag = "chart " + c.id + ": ";
  if (n > 0) {
    r.expect(c.domain.radius2.is_rational() && sign_real(c.domain.radius2) > 0,
             tag + "radius2 must be a positive rational");
  }
  bool shapes_ok = true;
  for (std::size_t g = 0; g < c.group.size(); ++g)
    if (c.group[g].dim() != n) {
      r.fail(tag + "group element " + std::to_string(g) + " has wrong dimension");
      shapes_ok = false;
    }
  if (!shapes_ok) return r;
  r.expect(index_of(c.group, AffineMap::identity(n)).has_value(), tag + "group lacks the identity");
  for (std::size_t g = 0; g < c.group.size(); ++g)
    for (std::size_t h = g + 1; h < c.group.size(); ++h)
      r.expect(c.group[g] != c.group[h], tag + "faithfulness: elements " + std::to_string(g) + " and " +
                                             std::to_string(h) + " coincide");
  for (std::size_t g = 0; g < c.group.size(); ++g) {
    const auto& f = c.group[g];
    if (!r.expect(is_similarity(f), tag + "group element " + std::to_string(g) + " is not a similarity"))
      continue;
    r.expect(preserves(f, c.domain),
             tag + "domain preservation: element " + std::to_string(g) + " does not map the domain onto itself");
    r.expect(index_of(c.group, inverse(f)).has_value(),
             tag + "closure: inverse of element " + std::to_string(g) + " missing");
    for (std::size_t h = 0; h < c.group.size(); ++h)
      r.expect(index_of(c.group, compose(f, c.group[h])).has_value(),
               tag + "closure: product " + std::to_string(g) + "*" + std::to_string(h) + " missing");
  }
  return r;
}

Report validate_embedding(const Chart& src, const Chart& dst, const AffineMap& map) {
  Report r;
  const std::string tag = "embedding " + src.id + "->" + dst.id + ": ";
  if (!r.expect(map.dim() == src.dim() && map.dim() == dst.dim(), tag + "dimension mismatch")) return r;
  if (!r.expect(is_similarity(map), tag + "not an injective similarity")) return r;
  r.expect(contains(dst.domain, image(map, src.domain)), tag + "image ball not contained in the target domain");
  for (std::size_t g = 0; g < src.group.size(); ++g) {
    AffineMap lg = compose(map, src.group[g]);
    bool found = false;
    for (const auto& h : dst.group)
      if (compose(h, map) == lg) {
        found = true;
        break;
      }
    r.expect(found, tag + "equivariance fails for source element " + std::to_string(g));
  }
  return r;
}

std::vector<std::size_t> stabilizer(const Chart& c, const Vec& x) {
  if (!contains(c.domain, x)) throw Error(ErrorKind::PointOutsideDomain, "stabilizer at " + to_string(x));
  std::vector<std::size_t> out;
  for (std::size_t g = 0; g < c.group.size(); ++g)
    if (exact_equal(c.group[g](x), x)) out.push_back(g);
  return out;
}

bool has_trivial_stabilizer(const Chart& c, const Vec& x) { return stabilizer(c, x).size() == 1; }

std::size_t find_conjugator(const Chart& dst, const AffineMap& lam, const AffineMap& mu) {
  std::optional<std::size_t> found;
  for (std::size_t h = 0; h < dst.group.size(); ++h) {
    if (compose(dst.group[h], lam) != mu) continue;
    if (found) throw Error(ErrorKind::NotUnique, "two conjugators in chart " + dst.id);
    found = h;
  }
  if (!found) throw Error(ErrorKind::NoConjugator, "no h in chart " + dst.id + " with h o lam = mu");
  return *found;
}

std::vector<std::size_t> induced_homomorphism(const Chart& src, const Chart& dst, const AffineMap& lam) {
  std::vector<std::size_t> out;
  for (const auto& g : src.group) out.push_back(find_conjugator(dst, lam, compose(lam, g)));
  return out;
}

std::optional<std::size_t> overlap_transport(const Chart& src, const Chart& dst, const AffineMap& lam,
                                             std::size_t h) {
  Ball img = image(lam, src.domain);
  if (!intersects(image(dst.group.at(h), img), img)) return std::nullopt;
  AffineMap target = compose(dst.group[h], lam);
  for (std::size_t g = 0; g < src.group.size(); ++g)
    if (compose(lam, src.group[g]) == target) return g;
  return std::nullopt;
}

RestrictedChart restrict_chart(const Chart& c, const Vec& x, const Rational& radius2, const std::string& id) {
  auto stab = stabilizer(c, x);
  std::vector<bool> in_stab(c.group.size(), false);
  for (auto g : stab) in_stab[g] = true;
  CycNum r2(radius2);
  if (sign_real(r2) <= 0) throw Error(ErrorKind::PointOutsideDomain, "restriction radius must be positive");
  for (int iter = 0; iter < 400; ++iter, r2 = r2 / CycNum(4)) {
    Ball b{x, r2};
    if (!contains(c.domain, b)) continue;
    bool ok = true;
    for (std::size_t g = 0; g < c.group.size() && ok; ++g) {
      if (in_stab[g])
        ok = preserves(c.group[g], b);
      else
        ok = !intersects(image(c.group[g], b), b);
    }
    if (!ok) continue;
    Chart out;
    out.id = id.empty() ? c.id + "|" + to_string(x) : id;
    out.domain = b;
    for (auto g : stab) out.group.push_back(c.group[g]);
    return RestrictedChart{out, AffineMap::identity(c.dim())};
  }
  throw Error(ErrorKind::PointOutsideDomain, "restriction search did not terminate");
}

CommonSpan common_span(const Atlas& a, std::size_t n, const Vec& xn, std::size_t l, std::size_t lam_nl,
                       std::size_t p, const Vec& xp, std::size_t lam_pl, unsigned completion) {
  const AffineMap& fnl = a.emb(n, l).at(lam_nl);
  const AffineMap& fpl = a.emb(p, l).at(lam_pl);
  if (!exact_equal(fnl(xn), fpl(xp)))
    throw Error(ErrorKind::OracleRefused, "common_span: marked points do not agree in the target chart");
  RefineResult rr = a.refine(n, xn, p, xp, completion);
  if (rr.status != RefineResult::Status::Identified)
    throw Error(ErrorKind::OracleRefused, rr.status == RefineResult::Status::MissingSpan
                                              ? "identified points have no span in the atlas"
                                              : "points not identified by the oracle");
  const Span& s = rr.span;
  const std::size_t q = s.chart;
  const AffineMap& tqn = a.emb(q, n)[s.left];
  const AffineMap& tqp = a.emb(q, p)[s.right];
  if (!exact_equal(tqn(s.point), xn) || !exact_equal(tqp(s.point), xp))
    throw Error(ErrorKind::OracleRefused, "oracle span does not hit the marked points");
  AffineMap alpha = compose(fnl, tqn);
  AffineMap beta = compose(fpl, tqp);
  std::size_t g = find_conjugator(a.chart(l), alpha, beta);
  AffineMap galpha = compose(a.chart(l).group[g], alpha);
  const Chart& cq = a.chart(q);
  std::optional<std::size_t> h;
  for (std::size_t k = 0; k < cq.group.size(); ++k)
    if (compose(alpha, cq.group[k]) == galpha) {
      h = k;
      break;
    }
  if (!h) throw Error(ErrorKind::NoConjugator, "stabilizer correction not found in chart " + cq.id);
  AffineMap left = compose(tqn, cq.group[*h]);
  auto li = a.find_emb(q, n, left);
  if (!li) throw Error(ErrorKind::InvalidAtlas, "corrected leg is not a stored embedding");
  CommonSpan out{Span{q, s.point, *li, s.right}, left, tqp};
  if (compose(fnl, left) != compose(fpl, tqp) || !exact_equal(left(s.point), xn))
    throw Error(ErrorKind::InvalidAtlas, "common span square does not commute");
  return out;
}

Report validate_atlas(const Atlas& a, int samples, unsigned long seed) {
  Report r;
  const std::size_t n = a.size();
  if (!r.expect(n > 0, "axiom (i): the atlas has no charts")) return r;
  {
    std::set<std::string> ids;
    for (const auto& c : a.charts()) r.expect(ids.insert(c.id).second, "duplicate chart id " + c.id);
  }
  for (const auto& issue : a.construction_issues()) r.fail(issue);
  for (const auto& c : a.charts()) r.merge(validate_chart(c));
  if (!r.ok()) return r;

  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i) {
      if (k == i) continue;
      for (const auto& f : a.emb(k, i)) r.merge(validate_embedding(a.chart(k), a.chart(i), f));
    }
  for (const auto& e : a.declared())
    r.expect(a.find_emb(e.src, e.dst, e.map).has_value(),
             "declared embedding " + a.chart(e.src).id + "->" + a.chart(e.dst).id + " missing from the set");
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (a.emb(k, i).empty() || a.emb(i, j).empty()) continue;
        if (k == i || i == j) continue;
        for (const auto& f : a.emb(k, i))
          for (const auto& g : a.emb(i, j))
            r.expect(a.find_emb(k, j, compose(g, f)).has_value(),
                     "closure: composite " + a.chart(k).id + "->" + a.chart(i).id + "->" + a.chart(j).id +
                         " is not a stored embedding");
      }

  if (a.oracle_kind() == OracleKind::Sheets) {
    const SheetModel& m = *a.model();
    for (const auto& sh : m.sheets) r.merge(validate_chart(Chart{sh.id, sh.domain, sh.group}), "sheet ");
    for (std::size_t i = 0; i < n; ++i) {
      const Sheet& sh = m.sheets[m.sheet_of[i]];
      const AffineMap& iota = m.placement[i];
      const std::string tag = "placement of " + a.chart(i).id + ": ";
      if (!r.expect(is_similarity(iota), tag + "not a similarity")) continue;
      Ball img = image(iota, a.chart(i).domain);
      r.expect(contains(sh.domain, img), tag + "chart image leaves the sheet");
      AffineMap iinv = inverse(iota);
      std::vector<AffineMap> induced;
      for (const auto& gamma : sh.group) {
        if (!intersects(image(gamma, img), img)) continue;
        AffineMap g = compose(iinv, compose(gamma, iota));
        r.expect(preserves(gamma, img), tag + "a sheet element moves the chart image onto an overlapping set");
        if (!index_of(induced, g)) induced.push_back(g);
      }
      for (const auto& g : induced)
        r.expect(index_of(a.chart(i).group, g).has_value(), tag + "chart group misses an induced element");
      r.expect(induced.size() == a.chart(i).group.size(), tag + "chart group is not the induced group");
    }
  }

  for (const auto& w : a.point_witnesses())
    r.expect(w.chart < n && contains(a.chart(w.chart).domain, w.point), "point witness outside its chart");
  for (const auto& w : a.span_witnesses()) {
    RefineResult rr = a.refine(w.i, w.xi, w.j, w.xj);
    if (!r.expect(rr.status == RefineResult::Status::Identified,
                  "coverage witness " + a.chart(w.i).id + "/" + a.chart(w.j).id + " has no span"))
      continue;
    const Span& s = rr.span;
    r.expect(exact_equal(a.emb(s.chart, w.i)[s.left](s.point), w.xi) &&
                 exact_equal(a.emb(s.chart, w.j)[s.right](s.point), w.xj),
             "coverage witness span misses the marked points");
  }

  Rng rng(seed);
  long missing = 0, nondet = 0;
  for (int s = 0; s < samples; ++s) {
    std::size_t i = static_cast<std::size_t>(s) % n;
    Vec x = sample_in_ball(a.chart(i).domain, a.conductor(), rng);
    for (const auto& w : a.identified_points(i, x)) {
      RefineResult r1 = a.refine(i, x, w.chart, w.point);
      RefineResult r2 = a.refine(i, x, w.chart, w.point);
      ++r.checks;
      if (r1.status != RefineResult::Status::Identified) {
        if (missing++ < 5)
          r.fail("axiom (ii): no span for " + a.chart(i).id + to_string(x) + " ~ " + a.chart(w.chart).id +
                 to_string(w.point));
        continue;
      }
      if (r1.span.chart != r2.span.chart || r1.span.left != r2.span.left || r1.span.right != r2.span.right ||
          !exact_equal(r1.span.point, r2.span.point))
        if (nondet++ < 5) r.fail("oracle is not deterministic");
    }
  }
  if (missing > 5) r.fail("axiom (ii): " + std::to_string(missing) + " identified pairs without a span in total");
  if (a.oracle_kind() == OracleKind::Sheets) {
    const SheetModel& m = *a.model();
    long uncovered = 0;
    for (std::size_t sidx = 0; sidx < m.sheets.size(); ++sidx) {
      const Sheet& sh = m.sheets[sidx];
      std::vector<Vec> pts{sh.domain.center};
      for (int s = 0; s < std::max(1, samples / 10); ++s) pts.push_back(sample_in_ball(sh.domain, a.conductor(), rng));
      for (const auto& p : pts) {
        bool covered = false;
        for (std::size_t i = 0; i < n && !covered; ++i) {
          if (m.sheet_of[i] != sidx) continue;
          AffineMap iinv = inverse(m.placement[i]);
          for (const auto& gamma : sh.group)
            if (contains(a.chart(i).domain, iinv(gamma(p)))) {
              covered = true;
              break;
            }
        }
        ++r.checks;
        if (!covered && uncovered++ < 5) r.fail("axiom (i): point " + to_string(p) + " of sheet " + sh.id + " not covered");
      }
    }
  }
  r.note("axiom (ii) is certified on witnesses and sampled points only");
  return r;
}

}  // namespace orb
