#pragma once

#include <optional>
#include <string>
#include <vector>

#include "orb/functor/translation.hpp"

namespace orb {

struct MoritaReport {
  Report condition_i;
  Report condition_ii;
  std::vector<UnitPoint> unreached;
  bool verdict = false;
};

// Sub-atlas inclusion as a compatible system (identity lifts); NotASubAtlas otherwise.
SystemPtr inclusion_system(const AtlasPtr& sub, const AtlasPtr& full);
MorphismPtr subatlas_inclusion_morphism(FunctorF& F, const AtlasPtr& sub, const AtlasPtr& full);

MoritaReport check_morita(const GroupoidMorphism& M, int samples, unsigned long seed = 1);

// Bijective relabeling of the implicit space: sheet a goes to sheet perm[a] by maps[a].
struct Relabeling {
  std::vector<std::size_t> perm;
  std::vector<AffineMap> maps;
};

// Chart W with embeddings l1 into chart i1 of U1 and l2 into chart i2 of U2.
struct WitnessSpan {
  Chart chart;
  std::size_t i1 = 0;
  AffineMap l1;
  std::size_t i2 = 0;
  AffineMap l2;
};

struct EquivalenceWitness {
  std::vector<WitnessSpan> spans;
  std::optional<Relabeling> phi;
};

// Spans built from the shared oracle: chart-level embeddings first, restricted
// charts at uncovered sampled points after. Nothing when U1, U2 live on different spaces.
std::optional<EquivalenceWitness> auto_witness(const Atlas& U1, const Atlas& U2,
                                               const std::optional<Relabeling>& phi = std::nullopt,
                                               int samples = 16, unsigned long seed = 1);
// Throws WitnessInvalid for a span that does not validate.
bool atlases_equivalent(const Atlas& U1, const Atlas& U2, const EquivalenceWitness& w, int samples = 16,
                        unsigned long seed = 1);
bool atlases_equivalent(const Atlas& U1, const Atlas& U2, int samples = 16, unsigned long seed = 1);

// gamma[i] = (chart of V, embedding of chart i of U into it).
using RefinementMap = std::vector<std::pair<std::size_t, AffineMap>>;
bool is_refinement(const Atlas& U, const Atlas& V, const RefinementMap& gamma);
// Some refinement map from the shared oracle, if every chart of U embeds.
std::optional<RefinementMap> find_refinement(const Atlas& U, const Atlas& V,
                                             const std::optional<Relabeling>& phi = std::nullopt);

struct CommonRefinement {
  AtlasPtr W;
  AtlasPtr A1;  // U1 with the charts of W added
  AtlasPtr A2;  // U2 with the charts of W added
  RefinementMap to_u1;
  RefinementMap to_u2;
};

CommonRefinement common_refinement(const AtlasPtr& U1, const AtlasPtr& U2, const EquivalenceWitness& w,
                                   int samples = 16, unsigned long seed = 1);

AtlasPtr pushforward_atlas(const Relabeling& phi, const Atlas& U);
// Unit balls, arrow labels and s/t maps agree exactly.
bool presentations_identical(const Groupoid& a, const Groupoid& b);

// Charts at special and sampled points: halving search for a laminar, separated
// ball; group = isotropy germs. Needs the presentation's sheet model.
AtlasPtr reconstruct_atlas(const Groupoid& G, int samples = 6, unsigned long seed = 1);
MorphismPtr reconstruction_morita_morphism(FunctorF& F, const std::shared_ptr<const Groupoid>& G,
                                           const AtlasPtr& reconstructed);

// Sorted distinct stabilizer orders at chart special points and samples.
std::vector<std::size_t> atlas_isotropy_orders(const Atlas& a, int samples = 16, unsigned long seed = 1);

struct BijectionVerdict {
  std::string atlas_side;     // "equivalent", "inequivalent" or "unknown"
  std::string groupoid_side;  // "equivalent", "inequivalent" or "not found at this bound"
  bool agree = false;
  std::vector<std::string> notes;
};

BijectionVerdict bijection_demo(const AtlasPtr& U1, const AtlasPtr& U2,
                                const std::optional<Relabeling>& phi = std::nullopt, int samples = 32,
                                unsigned long seed = 1);

}  // namespace orb
