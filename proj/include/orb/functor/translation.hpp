#pragma once

#include <array>
#include <map>
#include <memory>
#include <optional>

#include "orb/groupoid/groupoid.hpp"
#include "orb/preorb/laws.hpp"
#include "orb/preorb/preorb.hpp"

namespace orb {

// (lambda_ki, x_k, lambda_kj) with legs stored as indices into emb(k, i), emb(k, j).
struct Triple {
  std::size_t k = 0, i = 0, a = 0, j = 0, b = 0;
};

class TranslationGroupoid : public Groupoid {
 public:
  explicit TranslationGroupoid(AtlasPtr atlas);

  std::string strategy() const override { return "translation"; }
  Arrow identity(const UnitPoint& x) const override;
  Arrow inverse(const Arrow& g) const override;
  bool equal(const Arrow& g, const Arrow& h) const override;

  const AtlasPtr& atlas() const { return atlas_; }
  const Triple& triple(std::size_t comp) const { return triples_.at(comp); }
  std::optional<std::size_t> component(const Triple& t) const;
  Arrow make(const Triple& t, const Vec& xk) const;
  // Count of equality decisions that took the single-chart shortcut.
  long fast_path_hits() const { return fast_hits_; }

 protected:
  Arrow do_multiply(const Arrow& g, const Arrow& h, unsigned completion) const override;

 private:
  using Key = std::array<std::size_t, 5>;
  AtlasPtr atlas_;
  std::vector<Triple> triples_;
  std::map<Key, std::size_t> index_;
  mutable long fast_hits_ = 0;
};

using TranslationPtr = std::shared_ptr<const TranslationGroupoid>;

TranslationPtr build_translation_groupoid(const AtlasPtr& a);

// F on objects, 1-cells and 2-cells; caches so that equal inputs give identical outputs.
class FunctorF {
 public:
  TranslationPtr object(const AtlasPtr& a);
  MorphismPtr morphism(const SystemPtr& f);
  GrpNatTrans cell(const CellPtr& d);

 private:
  std::vector<std::pair<AtlasPtr, TranslationPtr>> objects_;
  std::vector<std::pair<SystemPtr, MorphismPtr>> morphisms_;
};

MorphismPtr f_on_morphism(FunctorF& F, const SystemPtr& f);
GrpNatTrans f_on_2cell(FunctorF& F, const CellPtr& d);

// Groupoid-side operations for the generic law checker; equality on samples.
struct GroupoidOps {
  using Obj = std::shared_ptr<const Groupoid>;
  using Sys = MorphismPtr;
  using Cell = GrpNatTrans;
  int samples = 24;
  Obj src(const Sys& f) const { return f->src; }
  Obj dst(const Sys& f) const { return f->dst; }
  Sys cell_from(const Cell& c) const { return c.from; }
  Sys cell_to(const Cell& c) const { return c.to; }
  Sys id1(const Obj& a) const { return identity_morphism(a); }
  Sys compose(const Sys& g, const Sys& f) const { return orb::compose(g, f); }
  Cell idcell(const Sys& f) const { return identity_cell(f); }
  Cell vcomp(const Cell& b, const Cell& a) const { return vcomp_grp(b, a); }
  Cell hcomp(const Cell& b, const Cell& a) const { return hcomp_grp(b, a); }
  bool obj_eq(const Obj& a, const Obj& b) const { return a == b; }
  bool sys_eq(const Sys& a, const Sys& b) const { return morphisms_agree(*a, *b, samples); }
  bool cell_eq(const Cell& a, const Cell& b) const { return cells_agree(a, b, samples); }
};

// Pre-Orb diagram pushed through F, and the functor identities checked on samples.
Report check_functor_laws(FunctorF& F, const LawDiagram<PreOrbOps>& d, int samples, unsigned long seed = 1);

}  // namespace orb
