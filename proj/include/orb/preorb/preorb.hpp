#pragma once

#include <memory>
#include <string>
#include <vector>

#include "orb/atlas/atlas.hpp"
#include "orb/numerics/polymap.hpp"
#include "orb/report.hpp"

namespace orb {

using AtlasPtr = std::shared_ptr<const Atlas>;

// Morphism datum of Pre-Orb: chart assignment, embedding assignment, lifts.
struct CompatibleSystem {
  AtlasPtr src;
  AtlasPtr dst;
  std::vector<std::size_t> theta;
  // on_emb[s * n + t][a]: index in dst->emb(theta[s], theta[t]) of the image of src->emb(s, t)[a].
  std::vector<std::vector<std::size_t>> on_emb;
  std::vector<PolyMap> lift;
  std::string label;

  std::size_t emb_image(std::size_t s, std::size_t t, std::size_t a) const {
    return on_emb.at(s * src->size() + t).at(a);
  }
  const AffineMap& emb_image_map(std::size_t s, std::size_t t, std::size_t a) const {
    return dst->emb(theta.at(s), theta.at(t)).at(emb_image(s, t, a));
  }
};

using SystemPtr = std::shared_ptr<const CompatibleSystem>;

// Natural transformation: per src chart, index into dst->emb(theta1(i), theta2(i)).
struct OrbNatTrans {
  SystemPtr from;
  SystemPtr to;
  std::vector<std::size_t> delta;
  std::string label;

  const AffineMap& component(std::size_t i) const {
    return from->dst->emb(from->theta.at(i), to->theta.at(i)).at(delta.at(i));
  }
};

using CellPtr = std::shared_ptr<const OrbNatTrans>;

SystemPtr identity_system(const AtlasPtr& a);
// Embedding assignment solved from the lifts: f(lambda) is the dst embedding mu
// with lift_t o lambda = mu o lift_s; index 0 where no such mu exists.
SystemPtr system_from_lifts(const AtlasPtr& src, const AtlasPtr& dst, std::vector<std::size_t> theta,
                            std::vector<PolyMap> lifts, const std::string& label = "f");
Report validate_compatible_system(const CompatibleSystem& f, int samples = 16, unsigned long seed = 1);
// g o f
SystemPtr compose_compatible(const SystemPtr& g, const SystemPtr& f);
bool systems_equal(const CompatibleSystem& a, const CompatibleSystem& b);

CellPtr identity_orb_cell(const SystemPtr& f);
// delta_i = the dst embedding mu with mu o lift1_i = lift2_i; InvalidCell when missing.
CellPtr solve_orb_cell(const SystemPtr& from, const SystemPtr& to, const std::string& label = "delta");
Report validate_orb_nat_trans(const OrbNatTrans& d);
CellPtr vcomp_orb(const CellPtr& s, const CellPtr& d);
CellPtr hcomp_orb(const CellPtr& e, const CellPtr& d);
bool cells_equal(const OrbNatTrans& a, const OrbNatTrans& b);

// Lift z -> zeta_m^k z on every chart (charts must be preserved by it).
SystemPtr rotation_system(const AtlasPtr& a, int k, const std::string& label = "");
// Lift z -> c * z^n on every chart of a single-chart atlas centred at 0.
SystemPtr power_system(const AtlasPtr& src, const AtlasPtr& dst, int n, const CycNum& c = CycNum(1),
                       const std::string& label = "");

// Pre-Orb operations for the generic law checker.
struct PreOrbOps {
  using Obj = AtlasPtr;
  using Sys = SystemPtr;
  using Cell = CellPtr;
  Obj src(const Sys& f) const { return f->src; }
  Obj dst(const Sys& f) const { return f->dst; }
  Sys cell_from(const Cell& c) const { return c->from; }
  Sys cell_to(const Cell& c) const { return c->to; }
  Sys id1(const Obj& a) const { return identity_system(a); }
  Sys compose(const Sys& g, const Sys& f) const { return compose_compatible(g, f); }
  Cell idcell(const Sys& f) const { return identity_orb_cell(f); }
  Cell vcomp(const Cell& b, const Cell& a) const { return vcomp_orb(b, a); }
  Cell hcomp(const Cell& b, const Cell& a) const { return hcomp_orb(b, a); }
  bool obj_eq(const Obj& a, const Obj& b) const { return a == b; }
  bool sys_eq(const Sys& a, const Sys& b) const { return systems_equal(*a, *b); }
  bool cell_eq(const Cell& a, const Cell& b) const { return cells_equal(*a, *b); }
};

}  // namespace orb
