// similarity.hpp -- path-based similarity measures over the taxonomy, plus
// the capped per-word maximization the expansion sweep is built on.
//
// The path measure is 1/(d+1) with d the ancestral distance in edges, so a
// synset compared with itself scores exactly 1 and scores fall in (0, 1].
// Two verb synsets whose hierarchies are disjoint are still comparable: a
// virtual shared root is assumed one step above the remotest ancestor of
// each side, giving d = (ecc(a)+1) + (ecc(b)+1).  The virtual root never
// shortens a real path (it is always at least two edges longer), applies
// only to verb pairs, and never crosses parts of speech.  lch and wup use
// the plain ancestral distance and are absent where it is undefined.

#ifndef LEXPAND_SIMILARITY_HPP
#define LEXPAND_SIMILARITY_HPP

#include <optional>
#include <string_view>

#include "lexpand/taxonomy.hpp"
#include "lexpand/wndb.hpp"

namespace lexpand {
namespace similarity {

// Formula family: kPaper is the default ratio form; kStandard the
// literature-standard form behind an opt-in switch.
enum class Variant { kPaper, kStandard };

// Ancestral distance in edges, extended with the virtual-root convention
// for verb pairs described above.  Absent for any other disconnected pair
// (adjectives, adverbs, cross-part comparisons).
std::optional<int> effective_path_distance(const taxonomy::TaxonomyGraph& graph,
                                           wndb::SynsetId a, wndb::SynsetId b);

// 1 / (effective_path_distance + 1); absent when the distance is.
std::optional<double> path_similarity(const taxonomy::TaxonomyGraph& graph,
                                      wndb::SynsetId a, wndb::SynsetId b);

// kPaper: d(a,b) / (2 * max_depth(part)), 0 at identity.
// kStandard: -ln((d(a,b)+1) / (2 * (max_depth(part)+1))).
// Absent when the plain ancestral distance is undefined or the parts of
// speech differ.
std::optional<double> lch_measure(const taxonomy::TaxonomyGraph& graph,
                                  wndb::SynsetId a, wndb::SynsetId b,
                                  Variant variant);

// kPaper: depth(LCS) / (depth(a) + depth(b)); kStandard doubles the
// numerator.  A zero denominator (two roots) is defined as 1.  Absent when
// no common ancestor exists.
std::optional<double> wup_measure(const taxonomy::TaxonomyGraph& graph,
                                  wndb::SynsetId a, wndb::SynsetId b,
                                  Variant variant);

// Max over the first `cap` synsets of `word` (synsets_for_word order) of
// path_similarity(sense, target).  Undefined pairs are skipped; an unknown
// word or all-undefined pairs give 0.  cap must be >= 1.
double word_max_path_similarity(const taxonomy::TaxonomyGraph& graph,
                                const wndb::WordNetDatabase& db,
                                std::string_view word, wndb::SynsetId target,
                                int cap);

// Aggregates one side of a comparison: the union of several synsets'
// ancestor closures with minimal distances.  max_path_similarity(t) equals
// max over every added synset s of path_similarity(s, t), but costs one
// walk over t's closure instead of one per member.  Used by the expansion
// sweep (members = capped senses of the lexicon words) and by corpus pools.
class SynsetGroupProfile {
 public:
  explicit SynsetGroupProfile(const taxonomy::TaxonomyGraph& graph)
      : graph_(&graph) {}

  void add_synset(wndb::SynsetId id);
  // Adds the first `cap` senses of `word` (cap <= 0 means all senses).
  void add_word_senses(const wndb::WordNetDatabase& db, std::string_view word,
                       int cap);

  bool empty() const { return empty_; }

  // `target` is the dense index of the synset being scored; its closure may
  // be passed in when the caller already has it.
  double max_path_similarity(std::uint32_t target_dense) const;
  double max_path_similarity(const taxonomy::DenseAncestors& target_closure,
                             wndb::Pos target_file_part) const;

 private:
  const taxonomy::TaxonomyGraph* graph_;
  std::unordered_map<std::uint32_t, int> min_distance_;
  // Smallest (eccentricity + 1) over verb members: the virtual-root depth
  // this side contributes to a verb-verb comparison.
  int min_verb_virtual_depth_ = -1;
  bool empty_ = true;
};

}  // namespace similarity
}  // namespace lexpand

#endif  // LEXPAND_SIMILARITY_HPP
