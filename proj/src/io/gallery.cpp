#include "orb/io/gallery.hpp"

#include <numeric>

namespace orb {

namespace {

const std::vector<int> kSupported{1, 2, 3, 4, 6, 8, 12};

void check_order(int p) {
  for (int s : kSupported)
    if (s == p) return;
  throw Error(ErrorKind::UnsupportedParams, "rotation order " + std::to_string(p) + " not in {1,2,3,4,6,8,12}");
}

Vec point1(const CycNum& x) { return make_vec({x}); }

Chart trivial_chart(const std::string& id, const Ball& b) {
  return Chart{id, b, {AffineMap::identity(b.dim())}};
}

// Satellite cap chart B(5/8, 1/8): disjoint from its rotations for p <= 12.
Ball cap_ball() { return Ball{point1(CycNum(Rational(5, 8))), CycNum(Rational(1, 64))}; }

}  // namespace

std::vector<AffineMap> rotation_group(int p, int n, int m) {
  if (m == 0) m = p;
  if (m % p) throw Error(ErrorKind::ConductorMismatch, "rotation order does not divide the conductor");
  std::vector<AffineMap> g;
  for (int k = 0; k < p; ++k) {
    CycNum z = root_of_unity(m, k * (m / p));
    g.push_back(AffineMap::scalar(n, z, Vec::Zero(n)));
  }
  return g;
}

std::shared_ptr<const Atlas> gallery_cone(int p, Rational radius) {
  check_order(p);
  radius.canonicalize();
  if (radius <= 0) throw Error(ErrorKind::UnsupportedParams, "cone radius must be positive");
  Sheet sheet{"s0", Ball{point1(0), 1}, rotation_group(p, 1)};
  Chart c0{"c0", Ball{point1(0), CycNum(radius * radius)}, rotation_group(p, 1)};
  SheetModel m{{sheet}, {0}, {AffineMap::scalar(1, CycNum(1 / radius), point1(0))}};
  std::vector<PointWitness> pts{{0, point1(0)}, {0, point1(CycNum(radius / 4))}, {0, point1(CycNum(radius * 2 / 3))}};
  return std::make_shared<Atlas>(p, 1, std::vector<Chart>{c0}, std::vector<Embedding>{}, OracleKind::Sheets, m, pts);
}

std::shared_ptr<const Atlas> gallery_cone2(int p) {
  check_order(p);
  Sheet sheet{"s0", Ball{point1(0), 1}, rotation_group(p, 1)};
  Chart c0{"c0", Ball{point1(0), 1}, rotation_group(p, 1)};
  Chart c1{"c1", Ball{point1(0), CycNum(Rational(1, 4))}, rotation_group(p, 1)};
  SheetModel m{{sheet}, {0, 0}, {AffineMap::identity(1), AffineMap::identity(1)}};
  std::vector<Embedding> emb{{1, 0, AffineMap::identity(1)}};
  std::vector<PointWitness> pts{{0, point1(0)}, {0, point1(CycNum(Rational(3, 4)))}, {1, point1(CycNum(Rational(1, 4)))}};
  std::vector<SpanWitness> spans{{0, point1(CycNum(Rational(1, 4))), 1, point1(CycNum(Rational(1, 4)))}};
  return std::make_shared<Atlas>(p, 1, std::vector<Chart>{c0, c1}, emb, OracleKind::Sheets, m, pts, spans);
}

std::shared_ptr<const Atlas> gallery_football(int p, int q) {
  check_order(p);
  check_order(q);
  int m = std::lcm(p, q);
  Sheet north{"north", Ball{point1(0), 1}, rotation_group(p, 1, m)};
  Sheet south{"south", Ball{point1(0), 1}, rotation_group(q, 1, m)};
  std::vector<Chart> charts{Chart{"n0", north.domain, north.group}, trivial_chart("ncap", cap_ball()),
                            Chart{"s0", south.domain, south.group}, trivial_chart("scap", cap_ball())};
  AffineMap id = AffineMap::identity(1);
  SheetModel model{{north, south}, {0, 0, 1, 1}, {id, id, id, id}};
  std::vector<Embedding> emb{{1, 0, id}, {3, 2, id}};
  Vec c = cap_ball().center;
  std::vector<PointWitness> pts{{0, point1(0)}, {0, point1(CycNum(Rational(1, 4)))}, {1, c},
                                {2, point1(0)}, {2, point1(CycNum(Rational(1, 4)))}, {3, c}};
  std::vector<SpanWitness> spans{{0, c, 1, c}, {2, c, 3, c}};
  return std::make_shared<Atlas>(m, 1, charts, emb, OracleKind::Sheets, model, pts, spans);
}

std::shared_ptr<const Atlas> gallery_teardrop(int p, Rational glue) {
  check_order(p);
  glue.canonicalize();
  if (glue <= 0 || glue > Rational(1, 2))
    throw Error(ErrorKind::UnsupportedParams, "teardrop gluing radius must lie in (0, 1/2]");
  Sheet sheet{"s0", Ball{point1(0), 1}, rotation_group(p, 1)};
  std::vector<Chart> charts{Chart{"c0", sheet.domain, sheet.group},
                            Chart{"pole", Ball{point1(0), CycNum(glue * glue)}, sheet.group},
                            trivial_chart("cap", cap_ball())};
  AffineMap id = AffineMap::identity(1);
  SheetModel model{{sheet}, {0, 0, 0}, {id, id, id}};
  std::vector<Embedding> emb{{1, 0, id}, {2, 0, id}};
  Vec c = cap_ball().center;
  Vec g = point1(CycNum(glue / 2));
  std::vector<PointWitness> pts{{0, point1(0)}, {0, point1(CycNum(Rational(7, 8)))}, {1, g}, {2, c}};
  std::vector<SpanWitness> spans{{0, g, 1, g}, {0, c, 2, c}};
  return std::make_shared<Atlas>(p, 1, charts, emb, OracleKind::Sheets, model, pts, spans);
}

std::shared_ptr<const Atlas> gallery_global_quotient(int order, int dim) {
  check_order(order);
  if (dim < 1 || dim > 3) throw Error(ErrorKind::UnsupportedParams, "global_quotient dimension must be 1..3");
  Sheet sheet{"s0", Ball{Vec::Zero(dim), 1}, rotation_group(order, dim)};
  Chart c0{"c0", sheet.domain, sheet.group};
  SheetModel model{{sheet}, {0}, {AffineMap::identity(dim)}};
  Vec off = Vec::Zero(dim);
  off[0] = CycNum(Rational(1, 3));
  std::vector<PointWitness> pts{{0, Vec::Zero(dim)}, {0, off}};
  return std::make_shared<Atlas>(order, dim, std::vector<Chart>{c0}, std::vector<Embedding>{}, OracleKind::Sheets,
                                 model, pts);
}

std::shared_ptr<const Atlas> gallery_point() {
  Sheet sheet{"s0", Ball{Vec(0), 1}, {AffineMap::identity(0)}};
  Chart c0{"c0", sheet.domain, sheet.group};
  SheetModel model{{sheet}, {0}, {AffineMap::identity(0)}};
  std::vector<PointWitness> pts{{0, Vec(0)}};
  return std::make_shared<Atlas>(1, 0, std::vector<Chart>{c0}, std::vector<Embedding>{}, OracleKind::Sheets, model,
                                 pts);
}

std::shared_ptr<const Atlas> gallery(const GalleryParams& g) {
  if (g.name == "cone") return gallery_cone(g.p, g.radius);
  if (g.name == "cone2") return gallery_cone2(g.p);
  if (g.name == "football") return gallery_football(g.p, g.q);
  if (g.name == "teardrop") return gallery_teardrop(g.p, g.glue);
  if (g.name == "global_quotient") return gallery_global_quotient(g.order, g.dim);
  if (g.name == "point") return gallery_point();
  throw Error(ErrorKind::UnsupportedParams, "unknown gallery entry '" + g.name + "'");
}

std::vector<std::pair<std::string, std::shared_ptr<const Atlas>>> gallery_suite() {
  return {
      {"cone2", gallery_cone(2)},
      {"cone3", gallery_cone(3)},
      {"cone4", gallery_cone(4)},
      {"cone6", gallery_cone(6)},
      {"cone3_two_chart", gallery_cone2(3)},
      {"football23", gallery_football(2, 3)},
      {"teardrop3", gallery_teardrop(3)},
      {"global_quotient_z2_dim2", gallery_global_quotient(2, 2)},
      {"point", gallery_point()},
  };
}

}  // namespace orb
