#pragma once

#include <string>

#include "json.hpp"
#include "orb/functor/translation.hpp"
#include "orb/morita/morita.hpp"

namespace orb {

using Json = nlohmann::json;

// Numbers: a rational as "p/q", otherwise the power-basis coefficients in
// Q(zeta_m) as an array of such strings. Matrices are arrays of rows.
Json number_to_json(const CycNum& x, int conductor);
CycNum number_from_json(const Json& j, int conductor, const std::string& where);
Json vec_to_json(const Vec& v, int conductor);
Vec vec_from_json(const Json& j, int conductor, int dim, const std::string& where);
Json affine_to_json(const AffineMap& f, int conductor);
AffineMap affine_from_json(const Json& j, int conductor, int dim, const std::string& where);

Json atlas_to_json(const Atlas& a);
AtlasPtr atlas_from_json(const Json& j);
// Canonical text: sorted keys, two-space indent, trailing newline.
std::string serialize_atlas(const Atlas& a);
AtlasPtr parse_atlas_text(const std::string& text);
AtlasPtr parse_atlas(const std::string& path);

// Chart references by id in U1 and U2.
Json witness_to_json(const EquivalenceWitness& w, const Atlas& U1, const Atlas& U2);
EquivalenceWitness witness_from_json(const Json& j, const Atlas& U1, const Atlas& U2);

// 64-bit FNV-1a of the canonical atlas text, hex.
std::string atlas_hash(const Atlas& a);
// Units and arrow components, source atlas referenced by hash.
Json groupoid_to_json(const TranslationGroupoid& g);

Json report_to_json(const Report& r);
Json morita_to_json(const MoritaReport& r);

std::string read_file(const std::string& path);

}  // namespace orb
