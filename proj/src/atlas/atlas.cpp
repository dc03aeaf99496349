#include "orb/atlas/atlas.hpp"

namespace orb {

namespace {

bool contains_map(const std::vector<AffineMap>& v, const AffineMap& f) {
  for (const auto& g : v)
    if (g == f) return true;
  return false;
}

}  // namespace

Atlas::Atlas(int conductor, int dim, std::vector<Chart> charts, std::vector<Embedding> declared,
             OracleKind kind, std::optional<SheetModel> model, std::vector<PointWitness> points,
             std::vector<SpanWitness> spans)
    : conductor_(conductor),
      dim_(dim),
      charts_(std::move(charts)),
      declared_(std::move(declared)),
      kind_(kind),
      model_(std::move(model)),
      points_(std::move(points)),
      spans_(std::move(spans)) {
  if (kind_ == OracleKind::Sheets) {
    if (!model_) throw Error(ErrorKind::InvalidAtlas, "sheets oracle without a model");
    if (model_->sheet_of.size() != charts_.size() || model_->placement.size() != charts_.size())
      throw Error(ErrorKind::InvalidAtlas, "model placements do not match the charts");
    for (auto s : model_->sheet_of)
      if (s >= model_->sheets.size()) throw Error(ErrorKind::InvalidAtlas, "placement on unknown sheet");
  }
  for (const auto& c : charts_)
    if (c.dim() != dim_) throw Error(ErrorKind::DimMismatch, "chart " + c.id + " has wrong dimension");
  for (const auto& e : declared_)
    if (e.src >= charts_.size() || e.dst >= charts_.size())
      throw Error(ErrorKind::InvalidAtlas, "embedding references an unknown chart");
  derive_embeddings();
}

std::optional<std::size_t> Atlas::chart_index(const std::string& id) const {
  for (std::size_t i = 0; i < charts_.size(); ++i)
    if (charts_[i].id == id) return i;
  return std::nullopt;
}

std::optional<std::size_t> Atlas::find_emb(std::size_t src, std::size_t dst, const AffineMap& f) const {
  const auto& v = emb(src, dst);
  for (std::size_t k = 0; k < v.size(); ++k)
    if (v[k] == f) return k;
  return std::nullopt;
}

void Atlas::derive_embeddings() {
  const std::size_t n = charts_.size();
  emb_.assign(n * n, {});
  identity_.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    bool found = false;
    for (std::size_t g = 0; g < charts_[i].group.size(); ++g)
      if (charts_[i].group[g] == AffineMap::identity(dim_)) {
        identity_[i] = g;
        found = true;
        break;
      }
    if (!found) issues_.push_back("chart " + charts_[i].id + " group has no identity");
    emb_[i * n + i] = charts_[i].group;
  }
  // torsor over one representative per ordered pair
  auto fill = [&](std::size_t k, std::size_t i, const AffineMap& rep) {
    auto& v = emb_[k * n + i];
    v.clear();
    for (const auto& h : charts_[i].group) v.push_back(compose(h, rep));
  };
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i) {
      if (k == i) continue;
      std::vector<AffineMap> candidates;
      if (kind_ == OracleKind::Sheets) {
        if (model_->sheet_of[k] != model_->sheet_of[i]) continue;
        const Sheet& sh = model_->sheets[model_->sheet_of[k]];
        AffineMap inv_i = inverse(model_->placement[i]);
        for (const auto& gamma : sh.group) {
          AffineMap lam = compose(inv_i, compose(gamma, model_->placement[k]));
          if (contains(charts_[i].domain, image(lam, charts_[k].domain)) && !contains_map(candidates, lam))
            candidates.push_back(lam);
        }
      }
      for (const auto& e : declared_)
        if (e.src == k && e.dst == i && !contains_map(candidates, e.map)) {
          if (kind_ == OracleKind::Sheets)
            issues_.push_back("declared embedding " + charts_[k].id + "->" + charts_[i].id +
                              " is not compatible with the projections");
          candidates.push_back(e.map);
        }
      if (candidates.empty()) continue;
      fill(k, i, candidates.front());
      for (const auto& c : candidates)
        if (!contains_map(emb_[k * n + i], c))
          issues_.push_back("embeddings " + charts_[k].id + "->" + charts_[i].id +
                            " do not form a single G_dst-orbit");
    }
  emb_inv_.assign(n * n, {});
  for (std::size_t k = 0; k < n * n; ++k)
    for (const auto& f : emb_[k]) {
      if (!is_similarity(f)) {
        issues_.push_back("non-invertible embedding");
        emb_inv_[k].push_back(AffineMap::identity(dim_));
        continue;
      }
      emb_inv_[k].push_back(inverse(f));
    }
  if (model_)
    for (const auto& p : model_->placement) placement_inv_.push_back(inverse(p));
}

bool Atlas::identified(std::size_t i, const Vec& x, std::size_t j, const Vec& y) const {
  if (kind_ == OracleKind::Sheets) {
    if (model_->sheet_of[i] != model_->sheet_of[j]) return false;
    Vec px = model_->placement[i](x), py = model_->placement[j](y);
    for (const auto& gamma : model_->sheets[model_->sheet_of[i]].group)
      if (exact_equal(gamma(px), py)) return true;
    return false;
  }
  return !candidate_spans(i, x, j, y).empty();
}

std::vector<Span> Atlas::candidate_spans(std::size_t i, const Vec& x, std::size_t j, const Vec& y) const {
  std::vector<Span> out;
  for (std::size_t k = 0; k < charts_.size(); ++k) {
    const auto& left = emb(k, i);
    const auto& right = emb(k, j);
    if (left.empty() || right.empty()) continue;
    for (std::size_t a = 0; a < left.size(); ++a) {
      Vec xk = emb_inverse(k, i)[a](x);
      if (!contains(charts_[k].domain, xk)) continue;
      for (std::size_t b = 0; b < right.size(); ++b)
        if (exact_equal(right[b](xk), y)) out.push_back(Span{k, xk, a, b});
    }
  }
  return out;
}

RefineResult Atlas::refine(std::size_t i, const Vec& x, std::size_t j, const Vec& y,
                           unsigned completion) const {
  RefineResult r;
  bool ident = identified(i, x, j, y);
  if (!ident) return r;
  auto spans = candidate_spans(i, x, j, y);
  if (spans.empty()) {
    r.status = RefineResult::Status::MissingSpan;
    return r;
  }
  r.status = RefineResult::Status::Identified;
  r.span = spans[completion % spans.size()];
  return r;
}

std::vector<PointWitness> Atlas::identified_points(std::size_t i, const Vec& x) const {
  std::vector<PointWitness> out;
  auto push = [&](std::size_t j, const Vec& y) {
    for (const auto& w : out)
      if (w.chart == j && exact_equal(w.point, y)) return;
    out.push_back(PointWitness{j, y});
  };
  if (kind_ == OracleKind::Sheets) {
    std::size_t s = model_->sheet_of[i];
    Vec px = model_->placement[i](x);
    for (std::size_t j = 0; j < charts_.size(); ++j) {
      if (model_->sheet_of[j] != s) continue;
      const AffineMap& inv_j = placement_inv_[j];
      for (const auto& gamma : model_->sheets[s].group) {
        Vec y = inv_j(gamma(px));
        if (contains(charts_[j].domain, y)) push(j, y);
      }
    }
    return out;
  }
  for (std::size_t k = 0; k < charts_.size(); ++k)
    for (const auto& ainv : emb_inverse(k, i)) {
      Vec xk = ainv(x);
      if (!contains(charts_[k].domain, xk)) continue;
      for (std::size_t j = 0; j < charts_.size(); ++j)
        for (const auto& b : emb(k, j)) push(j, b(xk));
    }
  return out;
}

}  // namespace orb
