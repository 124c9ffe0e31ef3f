#include "lexpand/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lexpand/errors.hpp"

namespace lexpand {
namespace similarity {

namespace {

constexpr int kNoDistance = std::numeric_limits<int>::max();

bool is_verb(wndb::SynsetId id) { return wndb::file_part(id.pos) == wndb::Pos::kVerb; }

}  // namespace

std::optional<int> effective_path_distance(const taxonomy::TaxonomyGraph& graph,
                                           wndb::SynsetId a, wndb::SynsetId b) {
  std::optional<int> real = graph.shortest_ancestral_distance(a, b);
  if (real) return real;
  if (is_verb(a) && is_verb(b)) {
    const wndb::WordNetDatabase& db = graph.database();
    taxonomy::DenseAncestors ca =
        graph.dense_ancestors(static_cast<std::uint32_t>(*db.index_of(a)));
    taxonomy::DenseAncestors cb =
        graph.dense_ancestors(static_cast<std::uint32_t>(*db.index_of(b)));
    return (ca.eccentricity + 1) + (cb.eccentricity + 1);
  }
  return std::nullopt;
}

std::optional<double> path_similarity(const taxonomy::TaxonomyGraph& graph,
                                      wndb::SynsetId a, wndb::SynsetId b) {
  std::optional<int> d = effective_path_distance(graph, a, b);
  if (!d) return std::nullopt;
  return 1.0 / (*d + 1);
}

std::optional<double> lch_measure(const taxonomy::TaxonomyGraph& graph,
                                  wndb::SynsetId a, wndb::SynsetId b,
                                  Variant variant) {
  if (wndb::file_part(a.pos) != wndb::file_part(b.pos)) return std::nullopt;
  std::optional<int> d = graph.shortest_ancestral_distance(a, b);
  if (!d) return std::nullopt;
  int max_depth = graph.max_depth(a.pos);
  if (variant == Variant::kPaper) {
    return static_cast<double>(*d) / (2.0 * max_depth);
  }
  return -std::log((*d + 1) / (2.0 * (max_depth + 1)));
}

std::optional<double> wup_measure(const taxonomy::TaxonomyGraph& graph,
                                  wndb::SynsetId a, wndb::SynsetId b,
                                  Variant variant) {
  std::optional<wndb::SynsetId> lcs = graph.least_common_subsumer(a, b);
  if (!lcs) return std::nullopt;
  std::optional<int> depth_a = graph.depth(a);
  std::optional<int> depth_b = graph.depth(b);
  std::optional<int> depth_lcs = graph.depth(*lcs);
  if (!depth_a || !depth_b || !depth_lcs) return std::nullopt;
  int denominator = *depth_a + *depth_b;
  if (denominator == 0) return 1.0;  // two roots: identity-of-roots convention
  double numerator = static_cast<double>(*depth_lcs);
  if (variant == Variant::kStandard) numerator *= 2.0;
  return numerator / denominator;
}

double word_max_path_similarity(const taxonomy::TaxonomyGraph& graph,
                                const wndb::WordNetDatabase& db,
                                std::string_view word, wndb::SynsetId target,
                                int cap) {
  if (cap < 1) throw ConfigError("sense cap must be at least 1");
  double best = 0.0;
  int used = 0;
  for (wndb::SynsetId sense : db.synsets_for_word(word)) {
    if (used >= cap) break;
    ++used;
    std::optional<double> score = path_similarity(graph, sense, target);
    if (score && *score > best) best = *score;
  }
  return best;
}

void SynsetGroupProfile::add_synset(wndb::SynsetId id) {
  const wndb::WordNetDatabase& db = graph_->database();
  std::uint32_t dense = static_cast<std::uint32_t>(*db.index_of(id));
  taxonomy::DenseAncestors closure = graph_->dense_ancestors(dense);
  for (const auto& [ancestor, distance] : closure.items) {
    auto [it, inserted] = min_distance_.emplace(ancestor, distance);
    if (!inserted && distance < it->second) it->second = distance;
  }
  if (is_verb(id)) {
    int virtual_depth = closure.eccentricity + 1;
    if (min_verb_virtual_depth_ < 0 || virtual_depth < min_verb_virtual_depth_) {
      min_verb_virtual_depth_ = virtual_depth;
    }
  }
  empty_ = false;
}

void SynsetGroupProfile::add_word_senses(const wndb::WordNetDatabase& db,
                                         std::string_view word, int cap) {
  int used = 0;
  for (wndb::SynsetId sense : db.synsets_for_word(word)) {
    if (cap > 0 && used >= cap) break;
    ++used;
    add_synset(sense);
  }
}

double SynsetGroupProfile::max_path_similarity(std::uint32_t target_dense) const {
  const wndb::WordNetDatabase& db = graph_->database();
  taxonomy::DenseAncestors closure = graph_->dense_ancestors(target_dense);
  return max_path_similarity(
      closure, wndb::file_part(db.synset_at(target_dense).id.pos));
}

double SynsetGroupProfile::max_path_similarity(
    const taxonomy::DenseAncestors& target_closure,
    wndb::Pos target_file_part) const {
  int best = kNoDistance;
  for (const auto& [ancestor, distance] : target_closure.items) {
    auto it = min_distance_.find(ancestor);
    if (it != min_distance_.end()) {
      best = std::min(best, distance + it->second);
    }
  }
  if (target_file_part == wndb::Pos::kVerb && min_verb_virtual_depth_ >= 0) {
    int virtual_distance =
        (target_closure.eccentricity + 1) + min_verb_virtual_depth_;
    best = std::min(best, virtual_distance);
  }
  if (best == kNoDistance) return 0.0;
  return 1.0 / (best + 1);
}

}  // namespace similarity
}  // namespace lexpand
