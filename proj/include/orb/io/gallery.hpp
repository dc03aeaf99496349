#pragma once

#include <memory>
#include <string>
#include <vector>

#include "orb/atlas/atlas.hpp"

namespace orb {

struct GalleryParams {
  std::string name;     // cone, cone2, football, teardrop, global_quotient, point
  int p = 3;            // rotation order (cone, football north, teardrop)
  int q = 2;            // football south
  int order = 2;        // global_quotient group order
  int dim = 2;          // global_quotient dimension
  Rational radius = 1;  // cone chart radius
  Rational glue = Rational(1, 4);  // teardrop gluing-chart radius
};

// Rotation group {zeta_p^k Id} in C^n inside Q(zeta_m) (m = 0: m = p), identity first.
std::vector<AffineMap> rotation_group(int p, int n, int m = 0);

std::shared_ptr<const Atlas> gallery(const GalleryParams& g);

// Shorthands.
std::shared_ptr<const Atlas> gallery_cone(int p, Rational radius = 1);
std::shared_ptr<const Atlas> gallery_cone2(int p);
std::shared_ptr<const Atlas> gallery_football(int p, int q);
std::shared_ptr<const Atlas> gallery_teardrop(int p, Rational glue = Rational(1, 4));
std::shared_ptr<const Atlas> gallery_global_quotient(int order, int dim);
std::shared_ptr<const Atlas> gallery_point();

// Named gallery instances used by the suites, e.g. "cone3", "football23".
std::vector<std::pair<std::string, std::shared_ptr<const Atlas>>> gallery_suite();

}  // namespace orb
