// taxonomy.hpp -- the hypernym/hyponym graph built over a loaded dictionary,
// plus ancestor maps, shortest ancestral distances, least common subsumers
// and depths.  Distances are measured in edges over hypernym links only
// ('@' and '@i' pointers); there is no artificial root joining the parts of
// speech, so synsets of different parts never share an ancestor.

#ifndef LEXPAND_TAXONOMY_HPP
#define LEXPAND_TAXONOMY_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "lexpand/wndb.hpp"

namespace lexpand {
namespace taxonomy {

// A synset's ancestor set with minimal hop counts.  The synset itself is
// included at distance 0.  Keys are ordered, so iteration is deterministic.
using AncestorMap = std::map<wndb::SynsetId, int>;

// Dense form of an ancestor map, used on hot paths.  `items` holds (dense
// synset index, min distance) pairs sorted by index; `eccentricity` is the
// largest distance in the map (0 for a root with no ancestors).
struct DenseAncestors {
  std::vector<std::pair<std::uint32_t, int>> items;
  int eccentricity = 0;
};

class TaxonomyGraph {
 public:
  // Builds adjacency from every '@' / '@i' pointer of every synset.  The
  // noun hierarchy must be acyclic: a noun with no path to a root (only
  // possible through a hypernym cycle) raises IntegrityError naming it.
  // Other parts tolerate cycles — released verb data contains a genuine
  // two-synset loop ("restrain"/"inhibit" point at each other) — and the
  // synsets trapped in or beneath one simply have no depth.
  explicit TaxonomyGraph(const wndb::WordNetDatabase& db);

  const wndb::WordNetDatabase& database() const { return *db_; }

  // Direct hypernyms / hyponyms, in pointer order.
  std::vector<wndb::SynsetId> hypernyms(wndb::SynsetId id) const;
  std::vector<wndb::SynsetId> hyponyms(wndb::SynsetId id) const;

  // Breadth-first ancestor closure with minimal distances (self included at
  // distance 0).
  AncestorMap ancestor_map(wndb::SynsetId id) const;
  DenseAncestors dense_ancestors(std::uint32_t dense_index) const;

  // Length in edges of the shortest path through a common ancestor; absent
  // when the two synsets share none (always the case across parts of
  // speech).  a == b gives 0.
  std::optional<int> shortest_ancestral_distance(wndb::SynsetId a,
                                                 wndb::SynsetId b) const;

  // The common ancestor minimizing d(a,c) + d(b,c); ties broken toward the
  // deeper synset, then the lower offset.  Absent when none exists.
  std::optional<wndb::SynsetId> least_common_subsumer(wndb::SynsetId a,
                                                      wndb::SynsetId b) const;

  // Minimal edge count from the synset up to any root of its part of
  // speech; roots have depth 0.  Absent for a synset with no root path.
  std::optional<int> depth(wndb::SynsetId id) const;
  // Dense-index form; -1 encodes "no root path".
  int depth_at(std::uint32_t dense_index) const { return depth_[dense_index]; }

  // Largest defined depth over all synsets stored in the given dictionary
  // file.
  int max_depth(wndb::Pos pos) const;

  // Synsets with no hypernyms, per dictionary file, in file order.
  const std::vector<wndb::SynsetId>& roots(wndb::Pos pos) const;

 private:
  const wndb::WordNetDatabase* db_;
  std::vector<std::vector<std::uint32_t>> up_;    // dense hypernym adjacency
  std::vector<std::vector<std::uint32_t>> down_;  // dense hyponym adjacency
  std::vector<std::int32_t> depth_;
  std::array<std::vector<wndb::SynsetId>, 4> roots_;
  std::array<int, 4> max_depth_ = {0, 0, 0, 0};
};

// Memoizes dense ancestor closures.  Lookup and insertion are guarded by a
// mutex, so one cache can be shared by concurrent readers.
class AncestorCache {
 public:
  explicit AncestorCache(const TaxonomyGraph& graph) : graph_(&graph) {}

  // Returns the cached closure, computing it on first use.  The reference
  // stays valid for the cache's lifetime.
  const DenseAncestors& get(std::uint32_t dense_index);

  std::size_t size() const;

 private:
  const TaxonomyGraph* graph_;
  mutable std::mutex mutex_;
  std::unordered_map<std::uint32_t, std::unique_ptr<DenseAncestors>> cache_;
};

}  // namespace taxonomy
}  // namespace lexpand

#endif  // LEXPAND_TAXONOMY_HPP
