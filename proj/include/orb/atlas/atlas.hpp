#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "orb/numerics/affine.hpp"
#include "orb/numerics/sample.hpp"
#include "orb/report.hpp"

namespace orb {

// Uniformizing system: ball domain, finite group of similarities preserving it.
struct Chart {
  std::string id;
  Ball domain;
  std::vector<AffineMap> group;

  int dim() const { return domain.dim(); }
};

// Embedding between charts of one atlas, by chart index.
struct Embedding {
  std::size_t src = 0;
  std::size_t dst = 0;
  AffineMap map;
};

// One piece of the implicit space: X_a = domain / group.
struct Sheet {
  std::string id;
  Ball domain;
  std::vector<AffineMap> group;
};

// Model of X: pi_i = q_a o iota_i with a = sheet_of[i], iota_i = placement[i].
struct SheetModel {
  std::vector<Sheet> sheets;
  std::vector<std::size_t> sheet_of;
  std::vector<AffineMap> placement;
};

enum class OracleKind { Sheets, SpanTable };

struct Span {
  std::size_t chart = 0;
  Vec point;
  std::size_t left = 0;   // index into emb(chart, i)
  std::size_t right = 0;  // index into emb(chart, j)
};

struct RefineResult {
  enum class Status { Identified, NotIdentified, MissingSpan };
  Status status = Status::NotIdentified;
  Span span;
};

struct PointWitness {
  std::size_t chart = 0;
  Vec point;
};

struct SpanWitness {
  std::size_t i = 0;
  Vec xi;
  std::size_t j = 0;
  Vec xj;
};

class Atlas {
 public:
  Atlas(int conductor, int dim, std::vector<Chart> charts, std::vector<Embedding> declared,
        OracleKind kind, std::optional<SheetModel> model, std::vector<PointWitness> points = {},
        std::vector<SpanWitness> spans = {});

  int conductor() const { return conductor_; }
  int dim() const { return dim_; }
  std::size_t size() const { return charts_.size(); }
  const std::vector<Chart>& charts() const { return charts_; }
  const Chart& chart(std::size_t i) const { return charts_.at(i); }
  std::optional<std::size_t> chart_index(const std::string& id) const;
  const std::vector<Embedding>& declared() const { return declared_; }
  OracleKind oracle_kind() const { return kind_; }
  const std::optional<SheetModel>& model() const { return model_; }
  const std::vector<PointWitness>& point_witnesses() const { return points_; }
  const std::vector<SpanWitness>& span_witnesses() const { return spans_; }

  // Complete embedding set Emb(src, dst); Emb(i, i) is the chart group.
  const std::vector<AffineMap>& emb(std::size_t src, std::size_t dst) const {
    return emb_[src * charts_.size() + dst];
  }
  // Inverses of emb(src, dst), same order.
  const std::vector<AffineMap>& emb_inverse(std::size_t src, std::size_t dst) const {
    return emb_inv_[src * charts_.size() + dst];
  }
  std::optional<std::size_t> find_emb(std::size_t src, std::size_t dst, const AffineMap& f) const;
  // Index of the identity in the chart group.
  std::size_t identity_index(std::size_t i) const { return identity_[i]; }
  // Problems met while deriving the embedding sets (reported by validate_atlas).
  const std::vector<std::string>& construction_issues() const { return issues_; }

  // Oracle: is (i, x) identified with (j, y) in X.
  bool identified(std::size_t i, const Vec& x, std::size_t j, const Vec& y) const;
  // Every span (k, x_k, a, b) with a(x_k) = x, b(x_k) = y, in a fixed order.
  std::vector<Span> candidate_spans(std::size_t i, const Vec& x, std::size_t j, const Vec& y) const;
  RefineResult refine(std::size_t i, const Vec& x, std::size_t j, const Vec& y,
                      unsigned completion = 0) const;
  // All (j, y) identified with (i, x), by chart order then group order.
  std::vector<PointWitness> identified_points(std::size_t i, const Vec& x) const;

 private:
  void derive_embeddings();

  int conductor_;
  int dim_;
  std::vector<Chart> charts_;
  std::vector<Embedding> declared_;
  OracleKind kind_;
  std::optional<SheetModel> model_;
  std::vector<PointWitness> points_;
  std::vector<SpanWitness> spans_;
  std::vector<std::vector<AffineMap>> emb_;
  std::vector<std::vector<AffineMap>> emb_inv_;
  std::vector<AffineMap> placement_inv_;
  std::vector<std::size_t> identity_;
  std::vector<std::string> issues_;
};

}  // namespace orb
