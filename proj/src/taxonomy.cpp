#include "lexpand/taxonomy.hpp"

#include <algorithm>
#include <cstdio>
#include <deque>
#include <unordered_map>

#include "lexpand/errors.hpp"

namespace lexpand {
namespace taxonomy {

namespace {

bool is_hypernym_symbol(const std::string& symbol) {
  return symbol == "@" || symbol == "@i";
}

bool is_hyponym_symbol(const std::string& symbol) {
  return symbol == "~" || symbol == "~i";
}

}  // namespace

TaxonomyGraph::TaxonomyGraph(const wndb::WordNetDatabase& db) : db_(&db) {
  const std::size_t n = db.size();
  up_.resize(n);
  down_.resize(n);

  for (std::size_t i = 0; i < n; ++i) {
    const wndb::Synset& synset = db.synset_at(i);
    for (const wndb::Pointer& ptr : synset.pointers) {
      if (!is_hypernym_symbol(ptr.symbol)) continue;
      auto target = db.index_of(ptr.target);
      // Load-time closure validation guarantees resolution.
      up_[i].push_back(static_cast<std::uint32_t>(*target));
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::uint32_t parent : up_[i]) {
      down_[parent].push_back(static_cast<std::uint32_t>(i));
    }
  }

  // Depth = length of the shortest hypernym path from any root, found by a
  // multi-source breadth-first search downward from the roots.  BFS rather
  // than a topological pass because released dictionaries contain a few
  // genuine hypernym loops (the verb pair "restrain"/"inhibit" point at
  // each other); a loop member, or a synset whose every upward path runs
  // through one, never reaches a root and keeps the -1 "no depth" marker.
  depth_.assign(n, -1);
  std::deque<std::uint32_t> queue;
  for (std::size_t i = 0; i < n; ++i) {
    if (up_[i].empty()) {
      depth_[i] = 0;
      queue.push_back(static_cast<std::uint32_t>(i));
      const wndb::SynsetId id = db.synset_at(i).id;
      roots_[static_cast<std::size_t>(wndb::file_index(id.pos))].push_back(id);
    }
  }
  while (!queue.empty()) {
    std::uint32_t node = queue.front();
    queue.pop_front();
    for (std::uint32_t child : down_[node]) {
      if (depth_[child] == -1) {
        depth_[child] = depth_[node] + 1;
        queue.push_back(child);
      }
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    const wndb::SynsetId id = db.synset_at(i).id;
    if (depth_[i] == -1 && wndb::file_part(id.pos) == wndb::Pos::kNoun) {
      // The noun hierarchy is required to be a rooted DAG.
      char buf[80];
      std::snprintf(buf, sizeof(buf),
                    "noun synset %08u has no path to a root (hypernym cycle)",
                    id.offset);
      throw IntegrityError(buf);
    }
    int fi = wndb::file_index(id.pos);
    max_depth_[static_cast<std::size_t>(fi)] =
        std::max(max_depth_[static_cast<std::size_t>(fi)],
                 static_cast<int>(depth_[i]));
  }
}

std::vector<wndb::SynsetId> TaxonomyGraph::hypernyms(wndb::SynsetId id) const {
  db_->require(id);
  const std::size_t i = *db_->index_of(id);
  std::vector<wndb::SynsetId> out;
  out.reserve(up_[i].size());
  for (std::uint32_t parent : up_[i]) {
    out.push_back(db_->synset_at(parent).id);
  }
  return out;
}

std::vector<wndb::SynsetId> TaxonomyGraph::hyponyms(wndb::SynsetId id) const {
  const wndb::Synset& synset = db_->require(id);
  std::vector<wndb::SynsetId> out;
  for (const wndb::Pointer& ptr : synset.pointers) {
    if (is_hyponym_symbol(ptr.symbol)) out.push_back(ptr.target);
  }
  return out;
}

DenseAncestors TaxonomyGraph::dense_ancestors(std::uint32_t dense_index) const {
  DenseAncestors result;
  std::unordered_map<std::uint32_t, int> dist;
  dist.emplace(dense_index, 0);
  std::deque<std::uint32_t> queue{dense_index};
  while (!queue.empty()) {
    std::uint32_t node = queue.front();
    queue.pop_front();
    int d = dist[node];
    result.eccentricity = std::max(result.eccentricity, d);
    for (std::uint32_t parent : up_[node]) {
      if (dist.emplace(parent, d + 1).second) queue.push_back(parent);
    }
  }
  result.items.assign(dist.begin(), dist.end());
  std::sort(result.items.begin(), result.items.end());
  return result;
}

AncestorMap TaxonomyGraph::ancestor_map(wndb::SynsetId id) const {
  db_->require(id);
  DenseAncestors dense = dense_ancestors(
      static_cast<std::uint32_t>(*db_->index_of(id)));
  AncestorMap out;
  for (const auto& [index, distance] : dense.items) {
    out.emplace(db_->synset_at(index).id, distance);
  }
  return out;
}

std::optional<int> TaxonomyGraph::shortest_ancestral_distance(
    wndb::SynsetId a, wndb::SynsetId b) const {
  db_->require(a);
  db_->require(b);
  if (a == b) return 0;
  DenseAncestors ca = dense_ancestors(static_cast<std::uint32_t>(*db_->index_of(a)));
  DenseAncestors cb = dense_ancestors(static_cast<std::uint32_t>(*db_->index_of(b)));
  std::optional<int> best;
  std::size_t i = 0, j = 0;
  while (i < ca.items.size() && j < cb.items.size()) {
    if (ca.items[i].first < cb.items[j].first) {
      ++i;
    } else if (ca.items[i].first > cb.items[j].first) {
      ++j;
    } else {
      int total = ca.items[i].second + cb.items[j].second;
      if (!best || total < *best) best = total;
      ++i;
      ++j;
    }
  }
  return best;
}

std::optional<wndb::SynsetId> TaxonomyGraph::least_common_subsumer(
    wndb::SynsetId a, wndb::SynsetId b) const {
  db_->require(a);
  db_->require(b);
  DenseAncestors ca = dense_ancestors(static_cast<std::uint32_t>(*db_->index_of(a)));
  DenseAncestors cb = dense_ancestors(static_cast<std::uint32_t>(*db_->index_of(b)));
  std::optional<std::uint32_t> best;
  int best_total = 0;
  int best_depth = 0;
  std::size_t i = 0, j = 0;
  while (i < ca.items.size() && j < cb.items.size()) {
    if (ca.items[i].first < cb.items[j].first) {
      ++i;
    } else if (ca.items[i].first > cb.items[j].first) {
      ++j;
    } else {
      std::uint32_t candidate = ca.items[i].first;
      int total = ca.items[i].second + cb.items[j].second;
      int candidate_depth = depth_[candidate];
      bool better = false;
      if (!best) {
        better = true;
      } else if (total != best_total) {
        better = total < best_total;
      } else if (candidate_depth != best_depth) {
        better = candidate_depth > best_depth;
      } else {
        better = db_->synset_at(candidate).id.offset <
                 db_->synset_at(*best).id.offset;
      }
      if (better) {
        best = candidate;
        best_total = total;
        best_depth = candidate_depth;
      }
      ++i;
      ++j;
    }
  }
  if (!best) return std::nullopt;
  return db_->synset_at(*best).id;
}

std::optional<int> TaxonomyGraph::depth(wndb::SynsetId id) const {
  db_->require(id);
  int d = depth_[*db_->index_of(id)];
  if (d < 0) return std::nullopt;
  return d;
}

int TaxonomyGraph::max_depth(wndb::Pos pos) const {
  return max_depth_[static_cast<std::size_t>(wndb::file_index(pos))];
}

const std::vector<wndb::SynsetId>& TaxonomyGraph::roots(wndb::Pos pos) const {
  return roots_[static_cast<std::size_t>(wndb::file_index(pos))];
}

const DenseAncestors& AncestorCache::get(std::uint32_t dense_index) {
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = cache_.find(dense_index);
    if (it != cache_.end()) return *it->second;
  }
  auto computed = std::make_unique<DenseAncestors>(
      graph_->dense_ancestors(dense_index));
  std::lock_guard<std::mutex> lock(mutex_);
  auto [it, inserted] = cache_.emplace(dense_index, std::move(computed));
  return *it->second;
}

std::size_t AncestorCache::size() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return cache_.size();
}

}  // namespace taxonomy
}  // namespace lexpand
