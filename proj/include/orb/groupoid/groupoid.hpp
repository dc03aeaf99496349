#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "orb/atlas/atlas.hpp"
#include "orb/numerics/polymap.hpp"
#include "orb/numerics/sample.hpp"
#include "orb/report.hpp"

namespace orb {

struct UnitComponent {
  std::string label;
  Ball ball;
};

// Arrow component W: parameter ball with s, t similarities into unit components.
struct ArrowComponent {
  std::string label;
  Ball param;
  std::size_t s_comp = 0;
  AffineMap s_map;
  std::size_t t_comp = 0;
  AffineMap t_map;
  AffineMap s_inv;
};

struct UnitPoint {
  std::size_t comp = 0;
  Vec x;
};

struct Arrow {
  std::size_t comp = 0;
  Vec p;
};

bool operator==(const UnitPoint& a, const UnitPoint& b);
inline bool operator!=(const UnitPoint& a, const UnitPoint& b) { return !(a == b); }
std::string to_string(const UnitPoint& u);

// Etale groupoid presented by ball components; m and equality are procedures.
class Groupoid {
 public:
  virtual ~Groupoid() = default;

  virtual std::string strategy() const = 0;
  int dim() const { return dim_; }
  int conductor() const { return conductor_; }
  const std::vector<UnitComponent>& units() const { return units_; }
  const std::vector<ArrowComponent>& arrow_components() const { return arrows_; }
  // Model of the orbit space when known (sheets + placement per unit component).
  const std::optional<SheetModel>& model() const { return model_; }

  UnitPoint source(const Arrow& g) const;
  UnitPoint target(const Arrow& g) const;
  virtual Arrow identity(const UnitPoint& x) const = 0;
  virtual Arrow inverse(const Arrow& g) const = 0;
  // g then h; requires target(g) = source(h).
  Arrow multiply(const Arrow& g, const Arrow& h, unsigned completion = 0) const;
  virtual bool equal(const Arrow& g, const Arrow& h) const = 0;

  bool contains_unit(const UnitPoint& x) const;
  bool contains_arrow(const Arrow& g) const;
  // Distinct arrows out of x (one representative per class).
  std::vector<Arrow> arrows_from(const UnitPoint& x) const;
  std::vector<Arrow> arrows_between(const UnitPoint& x, const UnitPoint& y) const;
  std::vector<Arrow> isotropy_arrows(const UnitPoint& x) const;
  std::vector<UnitPoint> orbit(const UnitPoint& x) const;
  // g~ = t o (s restricted to the component)^-1.
  AffineMap local_bisection(const Arrow& g) const;

  UnitPoint sample_unit(Rng& rng) const;
  Arrow sample_arrow(Rng& rng) const;
  // Special points: component centres and fixed points of component germs.
  std::vector<UnitPoint> special_points() const;

 protected:
  Groupoid(int dim, int conductor) : dim_(dim), conductor_(conductor) {}
  virtual Arrow do_multiply(const Arrow& g, const Arrow& h, unsigned completion) const = 0;
  void add_arrow_component(ArrowComponent w);

  int dim_;
  int conductor_;
  std::vector<UnitComponent> units_;
  std::vector<ArrowComponent> arrows_;
  std::optional<SheetModel> model_;
};

// Finite abstract group acting on one ball through a (possibly non-faithful)
// representation; Gamma x B with (g, x): x -> rep[g] x.
class ActionGroupoid : public Groupoid {
 public:
  // mul[a][b] = index of a o b (b applied first); element 0 is the identity.
  ActionGroupoid(int conductor, Ball ball, std::vector<AffineMap> rep, std::vector<std::vector<std::size_t>> mul,
                 std::string label = "action");
  // Faithful action by a list of similarities forming a group.
  static std::shared_ptr<ActionGroupoid> from_group(int conductor, const Ball& ball,
                                                    const std::vector<AffineMap>& group,
                                                    const std::string& label = "action");

  std::string strategy() const override { return "action"; }
  Arrow identity(const UnitPoint& x) const override;
  Arrow inverse(const Arrow& g) const override;
  bool equal(const Arrow& g, const Arrow& h) const override;
  std::size_t order() const { return rep_.size(); }

 protected:
  Arrow do_multiply(const Arrow& g, const Arrow& h, unsigned completion) const override;

 private:
  std::vector<AffineMap> rep_;
  std::vector<std::vector<std::size_t>> mul_;
  std::vector<std::size_t> inv_;
};

// Builtin presentations.
std::shared_ptr<ActionGroupoid> trivial_groupoid(const Ball& ball, int conductor = 1);
std::shared_ptr<ActionGroupoid> one_point_groupoid();
// Z2 acting trivially on B(0,1): the non-effective test double.
std::shared_ptr<ActionGroupoid> noneffective_z2_groupoid();

// ---- morphisms and 2-cells ----

struct UnitMap {
  std::size_t target = 0;
  PolyMap map;
};

struct GroupoidMorphism {
  std::shared_ptr<const Groupoid> src;
  std::shared_ptr<const Groupoid> dst;
  std::vector<UnitMap> unit;
  std::function<Arrow(const Arrow&)> arrow;
  std::string label;

  UnitPoint apply(const UnitPoint& x) const;
  Arrow apply(const Arrow& g) const { return arrow(g); }
};

using MorphismPtr = std::shared_ptr<const GroupoidMorphism>;

struct GrpNatTrans {
  MorphismPtr from;
  MorphismPtr to;
  std::function<Arrow(const UnitPoint&)> at;
  std::string label;
};

MorphismPtr identity_morphism(const std::shared_ptr<const Groupoid>& g);
// g o f
MorphismPtr compose(const MorphismPtr& g, const MorphismPtr& f);
// i = e' o psi
GrpNatTrans identity_cell(const MorphismPtr& f);
GrpNatTrans vcomp_grp(const GrpNatTrans& beta, const GrpNatTrans& alpha);
GrpNatTrans hcomp_grp(const GrpNatTrans& beta, const GrpNatTrans& alpha);

// Same groupoids, same unit maps exactly, arrow maps agree on samples.
bool morphisms_agree(const GroupoidMorphism& a, const GroupoidMorphism& b, int samples, unsigned long seed = 3);
// Cells agree at sampled unit points (arrow equality).
bool cells_agree(const GrpNatTrans& a, const GrpNatTrans& b, int samples, unsigned long seed = 5);

// ---- checks ----

Report check_groupoid_axioms(const Groupoid& g, int samples, unsigned long seed = 1);
Report validate_groupoid_morphism(const GroupoidMorphism& m, int samples, unsigned long seed = 1);
Report validate_grp_nat_trans(const GrpNatTrans& a, int samples, unsigned long seed = 1);

struct StructuralPredicates {
  bool etale = false;
  bool proper = false;
  bool effective = false;
  Report report;
};
StructuralPredicates structural_predicates(const Groupoid& g, int samples, unsigned long seed = 1);

// Sorted isotropy orders at special points plus samples.
std::vector<std::size_t> isotropy_orders(const Groupoid& g, int samples, unsigned long seed = 1);

}  // namespace orb

namespace orb {

// Forwards everything to another presentation; subclass to perturb one structure map.
class DelegatingGroupoid : public Groupoid {
 public:
  explicit DelegatingGroupoid(std::shared_ptr<const Groupoid> base);
  std::string strategy() const override { return base_->strategy(); }
  Arrow identity(const UnitPoint& x) const override { return base_->identity(x); }
  Arrow inverse(const Arrow& g) const override { return base_->inverse(g); }
  bool equal(const Arrow& g, const Arrow& h) const override { return base_->equal(g, h); }
  const Groupoid& base() const { return *base_; }

 protected:
  Arrow do_multiply(const Arrow& g, const Arrow& h, unsigned completion) const override {
    return base_->multiply(g, h, completion);
  }
  std::shared_ptr<const Groupoid> base_;
};

}  // namespace orb
