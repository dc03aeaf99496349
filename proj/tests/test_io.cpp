#include "doctest.h"

#include "orb/atlas/lemmas.hpp"
#include "orb/io/gallery.hpp"
#include "orb/io/json_io.hpp"

using namespace orb;

namespace {

std::string parse_error_of(const std::string& text) {
  try {
    parse_atlas_text(text);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::ParseError) return e.what();
    return std::string("wrong kind: ") + e.what();
  }
  return "no error";
}

Json cone3_json() { return atlas_to_json(*gallery_cone(3)); }

}  // namespace

TEST_CASE("number encoding") {
  CHECK(number_to_json(CycNum(rat(1, 2)), 3) == Json("1/2"));
  CHECK(number_to_json(CycNum::zeta(3), 3) == Json({"0", "1"}));
  CHECK(number_to_json(CycNum::zeta(4), 12) == Json({"0", "0", "0", "1"}));
  CHECK(number_from_json(Json({"0", "1"}), 3, "x") == CycNum::zeta(3));
  // zeta_4 = zeta_12^3 is reduced on the way in
  CHECK(number_from_json(Json({"0", "0", "0", "1"}), 12, "x") == CycNum::zeta(4));
  CHECK(number_from_json(Json("-3/6"), 1, "x") == CycNum(rat(-1, 2)));
  CHECK(number_from_json(Json({"2", "0"}), 3, "x").conductor() == 0);
  for (const char* bad : {"1/0", "abc", "1/-2", "", "1.5"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(number_from_json(Json(bad), 3, "x"), Error);
  }
  CHECK_THROWS_AS(number_from_json(Json(3), 3, "x"), Error);
}

TEST_CASE("gallery files round trip byte-identically") {
  for (const auto& [name, a] : gallery_suite()) {
    CAPTURE(name);
    std::string text = serialize_atlas(*a);
    auto back = parse_atlas_text(text);
    CHECK(serialize_atlas(*back) == text);
    CHECK(validate_atlas(*back, 40).ok());
    CHECK(atlas_hash(*back) == atlas_hash(*a));
    CHECK(read_file(std::string(ORB_DATA_DIR) + "/gallery/" + name + ".json") == text);
  }
  CHECK(read_file(std::string(ORB_DATA_DIR) + "/gallery/cone3_r34.json") == serialize_atlas(*gallery_cone(3, rat(3, 4))));
  CHECK(atlas_hash(*gallery_cone(3)) != atlas_hash(*gallery_cone(2)));
}

TEST_CASE("span_table atlases round trip") {
  auto c = gallery_cone2(3);
  Atlas t(3, 1, c->charts(), c->declared(), OracleKind::SpanTable, std::nullopt, c->point_witnesses(),
          c->span_witnesses());
  std::string text = serialize_atlas(t);
  auto back = parse_atlas_text(text);
  CHECK(back->oracle_kind() == OracleKind::SpanTable);
  CHECK(serialize_atlas(*back) == text);
  CHECK(back->emb(1, 0).size() == 3);
}

TEST_CASE("parse errors name the field") {
  Json j = cone3_json();
  j["charts"][0].erase("radius2");
  CHECK(parse_error_of(j.dump()).find("atlas.charts[0]: missing field 'radius2'") != std::string::npos);

  j = cone3_json();
  j["charts"][0]["radius2"] = "1/0";
  CHECK(parse_error_of(j.dump()).find("atlas.charts[0].radius2") != std::string::npos);

  j = cone3_json();
  j["oracle"]["params"]["placements"][0]["chart"] = "nope";
  CHECK(parse_error_of(j.dump()).find("placements[0].chart: unknown chart 'nope'") != std::string::npos);

  j = cone3_json();
  j["charts"][0]["group"][1]["A"] = Json::array({Json::array({"1", "0"})});
  CHECK(parse_error_of(j.dump()).find("group[1].A[0]") != std::string::npos);

  j = cone3_json();
  j["oracle"]["kind"] = "magic";
  CHECK(parse_error_of(j.dump()).find("unknown oracle kind") != std::string::npos);

  CHECK(parse_error_of("{\"conductor\": 3,").find("line/byte") != std::string::npos);
  CHECK(parse_error_of("[]").find("expected an object") != std::string::npos);
}

TEST_CASE("witness files round trip") {
  auto a = gallery_cone(3);
  auto b = gallery_cone(3, rat(3, 4));
  auto w = auto_witness(*a, *b);
  REQUIRE(w.has_value());
  Json j = witness_to_json(*w, *a, *b);
  EquivalenceWitness back = witness_from_json(Json::parse(j.dump()), *a, *b);
  CHECK(witness_to_json(back, *a, *b) == j);
  CHECK(atlases_equivalent(*a, *b, back));

  auto fb = gallery_football(2, 3);
  Relabeling swap{{1, 0}, {AffineMap::identity(1), AffineMap::identity(1)}};
  auto sw = pushforward_atlas(swap, *fb);
  auto ws = auto_witness(*fb, *sw, swap);
  REQUIRE(ws.has_value());
  EquivalenceWitness wb = witness_from_json(witness_to_json(*ws, *fb, *sw), *fb, *sw);
  REQUIRE(wb.phi.has_value());
  CHECK(wb.phi->perm == std::vector<std::size_t>{1, 0});
  CHECK(atlases_equivalent(*fb, *sw, wb));

  Json broken = j;
  broken["spans"][0]["i2"] = "missing";
  CHECK_THROWS_AS(witness_from_json(broken, *a, *b), Error);
}

TEST_CASE("groupoid serialization is deterministic") {
  auto G = build_translation_groupoid(gallery_football(2, 3));
  Json a = groupoid_to_json(*G);
  Json b = groupoid_to_json(*build_translation_groupoid(gallery_football(2, 3)));
  CHECK(a.dump() == b.dump());
  CHECK(a["strategy"] == "translation");
  CHECK(a["arrows"].size() == G->arrow_components().size());
  CHECK(a["atlas"] == atlas_hash(*gallery_football(2, 3)));
}
