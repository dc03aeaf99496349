#pragma once

#include <optional>
#include <vector>

#include "orb/atlas/atlas.hpp"

namespace orb {

Report validate_chart(const Chart& c);
Report validate_embedding(const Chart& src, const Chart& dst, const AffineMap& map);
Report validate_atlas(const Atlas& a, int samples, unsigned long seed = 1);

// Indices of group elements fixing x.
std::vector<std::size_t> stabilizer(const Chart& c, const Vec& x);
bool has_trivial_stabilizer(const Chart& c, const Vec& x);

// Index h in dst.group with group[h] o lam = mu.
std::size_t find_conjugator(const Chart& dst, const AffineMap& lam, const AffineMap& mu);
// Lambda: G_src -> G_dst as indices, lam o g = Lambda(g) o lam.
std::vector<std::size_t> induced_homomorphism(const Chart& src, const Chart& dst, const AffineMap& lam);
// The g with Lambda(g) = h when h moves lam(U) onto a set meeting lam(U).
std::optional<std::size_t> overlap_transport(const Chart& src, const Chart& dst, const AffineMap& lam,
                                             std::size_t h);

struct RestrictedChart {
  Chart chart;
  AffineMap inclusion;
};

// Sub-chart around x: radius2 halved (r/2) until the ball is inside the domain,
// invariant under the stabilizer and disjoint from its other translates.
RestrictedChart restrict_chart(const Chart& c, const Vec& x, const Rational& radius2,
                               const std::string& id = "");

struct CommonSpan {
  Span span;
  AffineMap left;   // lambda_qn
  AffineMap right;  // lambda_qp
};

// For lam_nl(x_n) = lam_pl(x_p): a span (q, x_q, lambda_qn, lambda_qp) with
// lam_nl o lambda_qn = lam_pl o lambda_qp and matching marked points.
CommonSpan common_span(const Atlas& a, std::size_t n, const Vec& xn, std::size_t l, std::size_t lam_nl,
                       std::size_t p, const Vec& xp, std::size_t lam_pl, unsigned completion = 0);

}  // namespace orb
