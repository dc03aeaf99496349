#include "orb/io/json_io.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace orb {

namespace {

[[noreturn]] void bad(const std::string& where, const std::string& what) {
  throw Error(ErrorKind::ParseError, where + ": " + what);
}

const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) bad(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) bad(where, std::string("missing field '") + key + "'");
  return *it;
}

std::string str_field(const Json& j, const char* key, const std::string& where) {
  const Json& v = field(j, key, where);
  if (!v.is_string()) bad(where + "." + key, "expected a string");
  return v.get<std::string>();
}

long int_field(const Json& j, const char* key, const std::string& where) {
  const Json& v = field(j, key, where);
  if (!v.is_number_integer()) bad(where + "." + key, "expected an integer");
  return v.get<long>();
}

const Json& array_field(const Json& j, const char* key, const std::string& where) {
  const Json& v = field(j, key, where);
  if (!v.is_array()) bad(where + "." + key, "expected an array");
  return v;
}

std::string at(const std::string& where, std::size_t k) { return where + "[" + std::to_string(k) + "]"; }

Rational rational_from(const Json& j, const std::string& where) {
  if (!j.is_string()) bad(where, "expected a rational string");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const Error&) {
    bad(where, "malformed rational '" + j.get<std::string>() + "'");
  }
}

std::size_t chart_ref(const Atlas* a, const std::vector<std::string>& ids, const Json& j, const std::string& where) {
  if (!j.is_string()) bad(where, "expected a chart id");
  std::string id = j.get<std::string>();
  if (a) {
    auto idx = a->chart_index(id);
    if (!idx) bad(where, "unknown chart '" + id + "'");
    return *idx;
  }
  for (std::size_t i = 0; i < ids.size(); ++i)
    if (ids[i] == id) return i;
  bad(where, "unknown chart '" + id + "'");
}

Json group_to_json(const std::vector<AffineMap>& g, int m) {
  Json out = Json::array();
  for (const auto& f : g) out.push_back(affine_to_json(f, m));
  return out;
}

std::vector<AffineMap> group_from_json(const Json& j, int m, int dim, const std::string& where) {
  if (!j.is_array()) bad(where, "expected an array of maps");
  std::vector<AffineMap> out;
  for (std::size_t k = 0; k < j.size(); ++k) out.push_back(affine_from_json(j[k], m, dim, at(where, k)));
  return out;
}

Json ball_fields(Json o, const Ball& b, int m) {
  o["center"] = vec_to_json(b.center, m);
  o["radius2"] = number_to_json(b.radius2, m);
  return o;
}

Ball ball_from(const Json& j, int m, int dim, const std::string& where) {
  return Ball{vec_from_json(field(j, "center", where), m, dim, where + ".center"),
              number_from_json(field(j, "radius2", where), m, where + ".radius2")};
}

}  // namespace

Json number_to_json(const CycNum& x, int conductor) {
  if (x.is_rational()) return format_rational(x.rational_value());
  int m = conductor;
  auto coeffs = x.serialize(m);
  coeffs.resize(static_cast<std::size_t>(euler_phi(m)));
  return Json(coeffs);
}

CycNum number_from_json(const Json& j, int conductor, const std::string& where) {
  if (j.is_string()) return CycNum(rational_from(j, where));
  if (!j.is_array()) bad(where, "expected a rational string or a coefficient array");
  if (conductor < 1) bad(where, "conductor must be positive");
  std::vector<Rational> c;
  for (std::size_t k = 0; k < j.size(); ++k) c.push_back(rational_from(j[k], at(where, k)));
  if (c.size() > static_cast<std::size_t>(conductor)) bad(where, "more coefficients than the conductor");
  CycNum x = CycNum::from_power_coeffs(conductor, c);
  if (x.is_rational()) return CycNum(x.rational_value());
  return x;
}

Json vec_to_json(const Vec& v, int conductor) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(number_to_json(v[i], conductor));
  return out;
}

Vec vec_from_json(const Json& j, int conductor, int dim, const std::string& where) {
  if (!j.is_array()) bad(where, "expected a vector");
  if (static_cast<int>(j.size()) != dim) bad(where, "expected " + std::to_string(dim) + " coordinates");
  Vec v(dim);
  for (int i = 0; i < dim; ++i) v[i] = number_from_json(j[i], conductor, at(where, i));
  return v;
}

Json affine_to_json(const AffineMap& f, int conductor) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < f.A.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < f.A.cols(); ++c) row.push_back(number_to_json(f.A(r, c), conductor));
    rows.push_back(row);
  }
  return Json{{"A", rows}, {"b", vec_to_json(f.b, conductor)}};
}

AffineMap affine_from_json(const Json& j, int conductor, int dim, const std::string& where) {
  const Json& rows = array_field(j, "A", where);
  if (static_cast<int>(rows.size()) != dim) bad(where + ".A", "expected " + std::to_string(dim) + " rows");
  Mat A(dim, dim);
  for (int r = 0; r < dim; ++r) {
    std::string w = at(where + ".A", r);
    if (!rows[r].is_array() || static_cast<int>(rows[r].size()) != dim)
      bad(w, "expected " + std::to_string(dim) + " entries");
    for (int c = 0; c < dim; ++c) A(r, c) = number_from_json(rows[r][c], conductor, at(w, c));
  }
  return AffineMap(A, vec_from_json(field(j, "b", where), conductor, dim, where + ".b"));
}

Json atlas_to_json(const Atlas& a) {
  const int m = a.conductor();
  Json charts = Json::array();
  for (const auto& c : a.charts()) {
    Json o = ball_fields(Json{{"id", c.id}}, c.domain, m);
    o["group"] = group_to_json(c.group, m);
    charts.push_back(o);
  }
  Json emb = Json::array();
  for (const auto& e : a.declared()) {
    Json o = affine_to_json(e.map, m);
    o["src"] = a.chart(e.src).id;
    o["dst"] = a.chart(e.dst).id;
    emb.push_back(o);
  }
  Json oracle;
  if (a.oracle_kind() == OracleKind::Sheets) {
    const SheetModel& sm = *a.model();
    Json sheets = Json::array();
    for (const auto& s : sm.sheets) {
      Json o = ball_fields(Json{{"id", s.id}}, s.domain, m);
      o["group"] = group_to_json(s.group, m);
      sheets.push_back(o);
    }
    Json places = Json::array();
    for (std::size_t i = 0; i < a.size(); ++i) {
      Json o = affine_to_json(sm.placement[i], m);
      o["chart"] = a.chart(i).id;
      o["sheet"] = sm.sheets[sm.sheet_of[i]].id;
      places.push_back(o);
    }
    oracle = Json{{"kind", "sheets"}, {"params", {{"sheets", sheets}, {"placements", places}}}};
  } else {
    oracle = Json{{"kind", "span_table"}, {"params", Json::object()}};
  }
  Json wit = Json::array();
  for (const auto& w : a.point_witnesses())
    wit.push_back({{"kind", "point"}, {"chart", a.chart(w.chart).id}, {"point", vec_to_json(w.point, m)}});
  for (const auto& w : a.span_witnesses())
    wit.push_back({{"kind", "span"},
                   {"i", a.chart(w.i).id},
                   {"xi", vec_to_json(w.xi, m)},
                   {"j", a.chart(w.j).id},
                   {"xj", vec_to_json(w.xj, m)}});
  return Json{{"conductor", m}, {"dimension", a.dim()}, {"charts", charts},
              {"embeddings", emb}, {"oracle", oracle}, {"witnesses", wit}};
}

AtlasPtr atlas_from_json(const Json& j) {
  const std::string root = "atlas";
  long m = int_field(j, "conductor", root);
  long dim = int_field(j, "dimension", root);
  if (m < 1 || m > 240) bad(root + ".conductor", "conductor out of range");
  if (dim < 0 || dim > 8) bad(root + ".dimension", "dimension out of range");
  const int mi = static_cast<int>(m), d = static_cast<int>(dim);

  std::vector<Chart> charts;
  std::vector<std::string> ids;
  const Json& cj = array_field(j, "charts", root);
  for (std::size_t k = 0; k < cj.size(); ++k) {
    std::string w = at(root + ".charts", k);
    Chart c{str_field(cj[k], "id", w), ball_from(cj[k], mi, d, w),
            group_from_json(field(cj[k], "group", w), mi, d, w + ".group")};
    ids.push_back(c.id);
    charts.push_back(std::move(c));
  }
  std::vector<Embedding> emb;
  const Json& ej = array_field(j, "embeddings", root);
  for (std::size_t k = 0; k < ej.size(); ++k) {
    std::string w = at(root + ".embeddings", k);
    emb.push_back({chart_ref(nullptr, ids, field(ej[k], "src", w), w + ".src"),
                   chart_ref(nullptr, ids, field(ej[k], "dst", w), w + ".dst"), affine_from_json(ej[k], mi, d, w)});
  }

  const Json& oj = field(j, "oracle", root);
  std::string kind = str_field(oj, "kind", root + ".oracle");
  OracleKind ok;
  std::optional<SheetModel> model;
  if (kind == "sheets") {
    ok = OracleKind::Sheets;
    const std::string pw = root + ".oracle.params";
    const Json& params = field(oj, "params", root + ".oracle");
    SheetModel sm;
    std::vector<std::string> sheet_ids;
    const Json& sj = array_field(params, "sheets", pw);
    for (std::size_t k = 0; k < sj.size(); ++k) {
      std::string w = at(pw + ".sheets", k);
      Sheet s{str_field(sj[k], "id", w), ball_from(sj[k], mi, d, w),
              group_from_json(field(sj[k], "group", w), mi, d, w + ".group")};
      sheet_ids.push_back(s.id);
      sm.sheets.push_back(std::move(s));
    }
    const Json& pj = array_field(params, "placements", pw);
    sm.sheet_of.assign(charts.size(), 0);
    sm.placement.assign(charts.size(), AffineMap::identity(d));
    std::vector<bool> placed(charts.size(), false);
    for (std::size_t k = 0; k < pj.size(); ++k) {
      std::string w = at(pw + ".placements", k);
      std::size_t c = chart_ref(nullptr, ids, field(pj[k], "chart", w), w + ".chart");
      std::size_t s = chart_ref(nullptr, sheet_ids, field(pj[k], "sheet", w), w + ".sheet");
      if (placed[c]) bad(w, "chart placed twice");
      placed[c] = true;
      sm.sheet_of[c] = s;
      sm.placement[c] = affine_from_json(pj[k], mi, d, w);
    }
    for (std::size_t c = 0; c < charts.size(); ++c)
      if (!placed[c]) bad(pw + ".placements", "chart '" + ids[c] + "' has no placement");
    model = sm;
  } else if (kind == "span_table") {
    ok = OracleKind::SpanTable;
  } else {
    bad(root + ".oracle.kind", "unknown oracle kind '" + kind + "'");
  }

  std::vector<PointWitness> pts;
  std::vector<SpanWitness> spans;
  const Json& wj = array_field(j, "witnesses", root);
  for (std::size_t k = 0; k < wj.size(); ++k) {
    std::string w = at(root + ".witnesses", k);
    std::string wk = str_field(wj[k], "kind", w);
    if (wk == "point") {
      pts.push_back({chart_ref(nullptr, ids, field(wj[k], "chart", w), w + ".chart"),
                     vec_from_json(field(wj[k], "point", w), mi, d, w + ".point")});
    } else if (wk == "span") {
      spans.push_back({chart_ref(nullptr, ids, field(wj[k], "i", w), w + ".i"),
                       vec_from_json(field(wj[k], "xi", w), mi, d, w + ".xi"),
                       chart_ref(nullptr, ids, field(wj[k], "j", w), w + ".j"),
                       vec_from_json(field(wj[k], "xj", w), mi, d, w + ".xj")});
    } else {
      bad(w + ".kind", "unknown witness kind '" + wk + "'");
    }
  }
  try {
    return std::make_shared<Atlas>(mi, d, charts, emb, ok, model, pts, spans);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::DimMismatch || e.kind() == ErrorKind::InvalidAtlas) bad(root, e.what());
    throw;
  }
}

std::string serialize_atlas(const Atlas& a) { return atlas_to_json(a).dump(2) + "\n"; }

AtlasPtr parse_atlas_text(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorKind::ParseError, std::string("line/byte ") + std::to_string(e.byte) + ": " + e.what());
  }
  return atlas_from_json(j);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::ParseError, path + ": cannot open");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

AtlasPtr parse_atlas(const std::string& path) {
  try {
    return parse_atlas_text(read_file(path));
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::ParseError) throw Error(ErrorKind::ParseError, path + ": " + e.what());
    throw;
  }
}

Json witness_to_json(const EquivalenceWitness& w, const Atlas& U1, const Atlas& U2) {
  const int m = std::max(U1.conductor(), U2.conductor());
  Json spans = Json::array();
  for (const auto& s : w.spans) {
    Json chart = ball_fields(Json{{"id", s.chart.id}}, s.chart.domain, m);
    chart["group"] = group_to_json(s.chart.group, m);
    spans.push_back({{"chart", chart},
                     {"i1", U1.chart(s.i1).id},
                     {"l1", affine_to_json(s.l1, m)},
                     {"i2", U2.chart(s.i2).id},
                     {"l2", affine_to_json(s.l2, m)}});
  }
  Json out{{"conductor", m}, {"spans", spans}};
  if (w.phi) {
    Json maps = Json::array();
    for (const auto& f : w.phi->maps) maps.push_back(affine_to_json(f, m));
    out["relabeling"] = {{"perm", w.phi->perm}, {"maps", maps}};
  }
  return out;
}

EquivalenceWitness witness_from_json(const Json& j, const Atlas& U1, const Atlas& U2) {
  const std::string root = "witness";
  long m = int_field(j, "conductor", root);
  if (m < 1 || m > 240) bad(root + ".conductor", "conductor out of range");
  const int mi = static_cast<int>(m), d = U1.dim();
  EquivalenceWitness w;
  const Json& sj = array_field(j, "spans", root);
  for (std::size_t k = 0; k < sj.size(); ++k) {
    std::string p = at(root + ".spans", k);
    const Json& cj = field(sj[k], "chart", p);
    Chart c{str_field(cj, "id", p + ".chart"), ball_from(cj, mi, d, p + ".chart"),
            group_from_json(field(cj, "group", p + ".chart"), mi, d, p + ".chart.group")};
    w.spans.push_back({c, chart_ref(&U1, {}, field(sj[k], "i1", p), p + ".i1"),
                       affine_from_json(field(sj[k], "l1", p), mi, d, p + ".l1"),
                       chart_ref(&U2, {}, field(sj[k], "i2", p), p + ".i2"),
                       affine_from_json(field(sj[k], "l2", p), mi, d, p + ".l2")});
  }
  if (j.contains("relabeling")) {
    const Json& rj = j["relabeling"];
    std::string p = root + ".relabeling";
    Relabeling phi;
    const Json& perm = array_field(rj, "perm", p);
    for (std::size_t k = 0; k < perm.size(); ++k) {
      if (!perm[k].is_number_unsigned()) bad(at(p + ".perm", k), "expected a sheet index");
      phi.perm.push_back(perm[k].get<std::size_t>());
    }
    const Json& maps = array_field(rj, "maps", p);
    for (std::size_t k = 0; k < maps.size(); ++k) phi.maps.push_back(affine_from_json(maps[k], mi, d, at(p + ".maps", k)));
    w.phi = phi;
  }
  return w;
}

std::string atlas_hash(const Atlas& a) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : serialize_atlas(a)) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Json groupoid_to_json(const TranslationGroupoid& g) {
  const int m = g.atlas()->conductor();
  Json units = Json::array();
  for (const auto& u : g.units()) units.push_back(ball_fields(Json{{"label", u.label}}, u.ball, m));
  Json arrows = Json::array();
  for (const auto& w : g.arrow_components()) {
    Json o = ball_fields(Json{{"label", w.label}}, w.param, m);
    o["s_comp"] = w.s_comp;
    o["t_comp"] = w.t_comp;
    o["s"] = affine_to_json(w.s_map, m);
    o["t"] = affine_to_json(w.t_map, m);
    arrows.push_back(o);
  }
  return Json{{"strategy", g.strategy()}, {"atlas", atlas_hash(*g.atlas())}, {"dimension", g.dim()},
              {"units", units},           {"arrows", arrows}};
}

Json report_to_json(const Report& r) {
  return Json{{"ok", r.ok()},
              {"checks", r.checks},
              {"violations", r.violations},
              {"warnings", r.warnings},
              {"notes", r.notes}};
}

Json morita_to_json(const MoritaReport& r) {
  Json unreached = Json::array();
  for (const auto& u : r.unreached) unreached.push_back(to_string(u));
  return Json{{"condition_i", report_to_json(r.condition_i)},
              {"condition_ii", report_to_json(r.condition_ii)},
              {"unreached", unreached},
              {"verdict", r.verdict ? "pass" : "fail"}};
}

}  // namespace orb
