// lexicon.hpp -- seed lexicons and both expansion procedures: the synset
// sweep (iterate synsets, score each against the two word lists, append the
// word part of the close-but-not-too-close ones) and the corpus-driven
// repetition scheme (grow word pools from labeled documents and keep the
// most-repeated words).

#ifndef LEXPAND_LEXICON_HPP
#define LEXPAND_LEXICON_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lexpand/taxonomy.hpp"
#include "lexpand/wndb.hpp"

namespace lexpand {
namespace lexicon {

enum class Side { kGood, kBad };
enum class Provenance { kSeed, kSweep, kCorpus };

const char* to_string(Side side);
const char* to_string(Provenance provenance);
std::optional<Side> side_from_string(std::string_view text);
std::optional<Provenance> provenance_from_string(std::string_view text);

struct LexiconEntry {
  std::string word;
  Provenance provenance = Provenance::kSeed;

  friend bool operator==(const LexiconEntry&, const LexiconEntry&) = default;
};

// Two ordered word lists.  Seed entries come first and are never removed or
// reordered; expansion appends after them.  Duplicates are legal (and occur
// in practice) unless dedup mode suppresses them.
struct SeedLexicon {
  std::vector<LexiconEntry> good;
  std::vector<LexiconEntry> bad;

  std::vector<LexiconEntry>& side(Side s) { return s == Side::kGood ? good : bad; }
  const std::vector<LexiconEntry>& side(Side s) const {
    return s == Side::kGood ? good : bad;
  }
  // The words of one side, in order (for searchword lists).
  std::vector<std::string> words(Side s) const;

  friend bool operator==(const SeedLexicon&, const SeedLexicon&) = default;
};

// Lexicon file: one entry per line, `<side>\t<word>\t<provenance>` with side
// in {good, bad} and provenance in {seed, sweep, corpus}; '#' starts a
// comment line; order is significant and duplicates are preserved.
SeedLexicon load_lexicon(const std::string& path);
void save_lexicon(const SeedLexicon& lexicon, const std::string& path);

// Sweep configuration.  The tau pair gates appending: a synset may append
// only when both max-similarities fall strictly inside their (0, tau)
// windows.  Caps bound how many senses of each list word are compared.
struct ExpansionConfig {
  double tau_good = 0.8;
  double tau_bad = 0.2;
  std::size_t synset_limit = 25000;
  int cap_good = 3;
  int cap_bad = 5;
  bool dedup = false;       // suppress appending words already on the side
  bool live_growth = true;  // appended words join the comparison lists
  // Iteration order over the database; kFile is the canonical noun, verb,
  // adjective, adverb file order, kPosInterleaved round-robins the four
  // files (useful because the first 25000 synsets in file order are all
  // nouns in a full dictionary), and kAdjFirst concatenates the files as
  // adjective, adverb, verb, noun so a bounded sweep reaches the verb file
  // instead of stopping inside the noun block.
  enum class Order { kFile, kPosInterleaved, kAdjFirst } order = Order::kFile;
  // Draw a random subset of synsets instead of the first synset_limit.
  bool sample = false;
  std::uint64_t seed = 0;
  // Worker count for the frozen (live_growth off) sweep; the live sweep is
  // sequential by contract.
  int jobs = 1;
  bool trace = false;  // record one trace row per examined synset
};

enum class SweepDecision { kAppendGood, kAppendBad, kSkip };
const char* to_string(SweepDecision decision);

// The sweep predicate: AppendGood iff 0 < maxp < tau_good and
// 0 < maxn < tau_bad and maxp > maxn; AppendBad iff both windows hold and
// maxp <= maxn (ties go to bad); Skip otherwise.
SweepDecision sweep_decision(double maxp, double maxn,
                             const ExpansionConfig& config);

struct SweepTraceRow {
  std::string word;
  double maxp = 0;
  double maxn = 0;
  SweepDecision decision = SweepDecision::kSkip;
  // True when dedup suppressed an append this row decided.
  bool suppressed = false;
};

struct ExpansionReport {
  std::size_t examined = 0;
  std::size_t appended_good = 0;
  std::size_t appended_bad = 0;
  std::size_t skipped = 0;  // includes dedup-suppressed appends
  std::vector<SweepTraceRow> trace;
};

struct ExpansionResult {
  SeedLexicon lexicon;
  ExpansionReport report;
};

// Sweeps the database in the configured order up to synset_limit synsets.
// For each synset, maxp is the maximum path similarity between the synset
// and any current good-list word (first cap_good senses per word), maxn
// likewise for the bad list with cap_bad; sweep_decision picks the side.
// With live_growth on, an appended word immediately joins its list and
// influences every later synset; with it off, comparisons use the seeds
// only.  Throws ConfigError for invalid configuration or empty seed sides.
ExpansionResult expand_by_sweep(const wndb::WordNetDatabase& db,
                                const taxonomy::TaxonomyGraph& graph,
                                const SeedLexicon& seeds,
                                const ExpansionConfig& config);

// Same sweep over an explicit synset sequence (order, subset and limit are
// the caller's).  This is the core the order/sampling modes reduce to.
ExpansionResult expand_by_sweep_over(const wndb::WordNetDatabase& db,
                                     const taxonomy::TaxonomyGraph& graph,
                                     const SeedLexicon& seeds,
                                     const ExpansionConfig& config,
                                     std::span<const wndb::SynsetId> sequence);

// Corpus-driven expansion: per repetition, one random document per side
// seeds the side's word pool; every other document is scanned token by
// token, and a token too similar to either pool (strictly above
// membership_threshold) is disregarded while the rest append to the pool of
// the document's label.  The top_k most-repeated appended-or-pooled words
// per side (ties by first appearance) join the lexicon with corpus
// provenance.
struct CorpusExpansionConfig {
  int repetitions = 3;
  std::size_t top_k = 10;
  double membership_threshold = 0.8;
  std::uint64_t seed = 0;
};

struct LabeledTokens {
  std::vector<std::string> tokens;  // corpus-module tokenization, in order
  Side label = Side::kGood;
};

SeedLexicon expand_from_corpus(const wndb::WordNetDatabase& db,
                               const taxonomy::TaxonomyGraph& graph,
                               const SeedLexicon& seeds,
                               const std::vector<LabeledTokens>& documents,
                               const CorpusExpansionConfig& config);

}  // namespace lexicon
}  // namespace lexpand

#endif  // LEXPAND_LEXICON_HPP
