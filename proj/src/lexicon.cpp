#include "lexpand/lexicon.hpp"

#include <algorithm>
#include <thread>
#include <unordered_map>
#include <unordered_set>

#include "lexpand/errors.hpp"
#include "lexpand/similarity.hpp"
#include "lexpand/util.hpp"

namespace lexpand {
namespace lexicon {

namespace {

void validate_config(const ExpansionConfig& config) {
  if (!(config.tau_bad >= 0.0 && config.tau_bad <= config.tau_good &&
        config.tau_good <= 1.0)) {
    throw ConfigError(
        "tau windows must satisfy 0 <= tau_bad <= tau_good <= 1");
  }
  if (config.cap_good < 1 || config.cap_bad < 1) {
    throw ConfigError("sense caps must be at least 1");
  }
  if (config.jobs < 1) throw ConfigError("jobs must be at least 1");
}

void validate_seeds(const SeedLexicon& seeds) {
  if (seeds.good.empty() || seeds.bad.empty()) {
    throw ConfigError("both seed lists must be non-empty");
  }
}

similarity::SynsetGroupProfile build_profile(
    const taxonomy::TaxonomyGraph& graph, const wndb::WordNetDatabase& db,
    const std::vector<LexiconEntry>& entries, int cap) {
  similarity::SynsetGroupProfile profile(graph);
  for (const LexiconEntry& entry : entries) {
    profile.add_word_senses(db, entry.word, cap);
  }
  return profile;
}

// Max path similarity between any sense of `word` (uncapped) and either
// pool profile; used by the corpus expansion's "already classified" test.
std::pair<double, double> word_pool_similarities(
    const wndb::WordNetDatabase& db, const taxonomy::TaxonomyGraph& graph,
    const similarity::SynsetGroupProfile& good_pool,
    const similarity::SynsetGroupProfile& bad_pool, const std::string& word) {
  double best_good = 0.0;
  double best_bad = 0.0;
  for (wndb::SynsetId sense : db.synsets_for_word(word)) {
    auto dense = static_cast<std::uint32_t>(*db.index_of(sense));
    taxonomy::DenseAncestors closure = graph.dense_ancestors(dense);
    wndb::Pos part = wndb::file_part(sense.pos);
    best_good = std::max(best_good, good_pool.max_path_similarity(closure, part));
    best_bad = std::max(best_bad, bad_pool.max_path_similarity(closure, part));
  }
  return {best_good, best_bad};
}

// Tracks append counts per word with first-appearance order for tie breaks.
class WordTally {
 public:
  void add(const std::string& word) {
    auto [it, inserted] = counts_.emplace(word, Entry{0, order_.size()});
    if (inserted) order_.push_back(word);
    ++it->second.count;
  }

  // Words sorted by count (descending), ties by first appearance.
  std::vector<std::string> top(std::size_t k) const {
    std::vector<const std::string*> words;
    words.reserve(order_.size());
    for (const std::string& w : order_) words.push_back(&w);
    std::stable_sort(words.begin(), words.end(),
                     [this](const std::string* a, const std::string* b) {
                       return counts_.at(*a).count > counts_.at(*b).count;
                     });
    std::vector<std::string> out;
    out.reserve(std::min(k, words.size()));
    for (const std::string* w : words) {
      if (out.size() >= k) break;
      out.push_back(*w);
    }
    return out;
  }

 private:
  struct Entry {
    long long count;
    std::size_t first_seen;
  };
  std::unordered_map<std::string, Entry> counts_;
  std::vector<std::string> order_;
};

}  // namespace

const char* to_string(Side side) {
  return side == Side::kGood ? "good" : "bad";
}

const char* to_string(Provenance provenance) {
  switch (provenance) {
    case Provenance::kSeed: return "seed";
    case Provenance::kSweep: return "sweep";
    case Provenance::kCorpus: return "corpus";
  }
  return "?";
}

const char* to_string(SweepDecision decision) {
  switch (decision) {
    case SweepDecision::kAppendGood: return "append-good";
    case SweepDecision::kAppendBad: return "append-bad";
    case SweepDecision::kSkip: return "skip";
  }
  return "?";
}

std::optional<Side> side_from_string(std::string_view text) {
  if (text == "good") return Side::kGood;
  if (text == "bad") return Side::kBad;
  return std::nullopt;
}

std::optional<Provenance> provenance_from_string(std::string_view text) {
  if (text == "seed") return Provenance::kSeed;
  if (text == "sweep") return Provenance::kSweep;
  if (text == "corpus") return Provenance::kCorpus;
  return std::nullopt;
}

std::vector<std::string> SeedLexicon::words(Side s) const {
  std::vector<std::string> out;
  const auto& entries = side(s);
  out.reserve(entries.size());
  for (const LexiconEntry& entry : entries) out.push_back(entry.word);
  return out;
}

SeedLexicon load_lexicon(const std::string& path) {
  std::string content = util::read_text_file(path);
  SeedLexicon lexicon;
  std::size_t line_no = 0;
  for (std::string_view line : util::split_lines(content)) {
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    std::vector<std::string_view> fields = util::split(line, '\t');
    if (fields.size() != 3) {
      throw ParseError(path, line_no, 1,
                       "expected <side>\\t<word>\\t<provenance>");
    }
    std::optional<Side> side = side_from_string(fields[0]);
    if (!side) {
      throw ParseError(path, line_no, 1, "unknown side tag (good or bad)");
    }
    if (fields[1].empty()) {
      throw ParseError(path, line_no, fields[0].size() + 2, "empty word");
    }
    std::optional<Provenance> provenance = provenance_from_string(fields[2]);
    if (!provenance) {
      throw ParseError(path, line_no,
                       fields[0].size() + fields[1].size() + 3,
                       "unknown provenance tag (seed, sweep or corpus)");
    }
    lexicon.side(*side).push_back(
        LexiconEntry{std::string(fields[1]), *provenance});
  }
  return lexicon;
}

void save_lexicon(const SeedLexicon& lexicon, const std::string& path) {
  std::string out;
  for (Side side : {Side::kGood, Side::kBad}) {
    for (const LexiconEntry& entry : lexicon.side(side)) {
      out += to_string(side);
      out.push_back('\t');
      out += entry.word;
      out.push_back('\t');
      out += to_string(entry.provenance);
      out.push_back('\n');
    }
  }
  util::write_text_file(path, out);
}

SweepDecision sweep_decision(double maxp, double maxn,
                             const ExpansionConfig& config) {
  bool good_window = maxp > 0.0 && maxp < config.tau_good;
  bool bad_window = maxn > 0.0 && maxn < config.tau_bad;
  if (!good_window || !bad_window) return SweepDecision::kSkip;
  return maxp > maxn ? SweepDecision::kAppendGood : SweepDecision::kAppendBad;
}

ExpansionResult expand_by_sweep_over(const wndb::WordNetDatabase& db,
                                     const taxonomy::TaxonomyGraph& graph,
                                     const SeedLexicon& seeds,
                                     const ExpansionConfig& config,
                                     std::span<const wndb::SynsetId> sequence) {
  validate_config(config);
  validate_seeds(seeds);

  ExpansionResult result;
  result.lexicon = seeds;
  ExpansionReport& report = result.report;
  if (config.trace) report.trace.reserve(sequence.size());

  similarity::SynsetGroupProfile good_profile =
      build_profile(graph, db, seeds.good, config.cap_good);
  similarity::SynsetGroupProfile bad_profile =
      build_profile(graph, db, seeds.bad, config.cap_bad);

  std::unordered_set<std::string> good_words;
  std::unordered_set<std::string> bad_words;
  if (config.dedup) {
    for (const LexiconEntry& e : seeds.good) good_words.insert(e.word);
    for (const LexiconEntry& e : seeds.bad) bad_words.insert(e.word);
  }

  // Frozen mode scores every synset against the seed profiles only, so the
  // (maxp, maxn) pairs are order-independent and can be precomputed in
  // parallel chunks.
  std::vector<std::pair<double, double>> frozen_scores;
  if (!config.live_growth) {
    frozen_scores.resize(sequence.size());
    auto score_range = [&](std::size_t begin, std::size_t end) {
      for (std::size_t i = begin; i < end; ++i) {
        auto dense = static_cast<std::uint32_t>(*db.index_of(sequence[i]));
        taxonomy::DenseAncestors closure = graph.dense_ancestors(dense);
        wndb::Pos part = wndb::file_part(sequence[i].pos);
        frozen_scores[i] = {good_profile.max_path_similarity(closure, part),
                            bad_profile.max_path_similarity(closure, part)};
      }
    };
    std::size_t jobs = std::min<std::size_t>(
        static_cast<std::size_t>(config.jobs),
        std::max<std::size_t>(sequence.size(), 1));
    if (jobs <= 1) {
      score_range(0, sequence.size());
    } else {
      std::vector<std::thread> workers;
      std::size_t chunk = (sequence.size() + jobs - 1) / jobs;
      for (std::size_t w = 0; w < jobs; ++w) {
        std::size_t begin = w * chunk;
        std::size_t end = std::min(begin + chunk, sequence.size());
        if (begin >= end) break;
        workers.emplace_back(score_range, begin, end);
      }
      for (std::thread& t : workers) t.join();
    }
  }

  for (std::size_t i = 0; i < sequence.size(); ++i) {
    wndb::SynsetId id = sequence[i];
    ++report.examined;

    double maxp, maxn;
    if (config.live_growth) {
      auto dense = static_cast<std::uint32_t>(*db.index_of(id));
      taxonomy::DenseAncestors closure = graph.dense_ancestors(dense);
      wndb::Pos part = wndb::file_part(id.pos);
      maxp = good_profile.max_path_similarity(closure, part);
      maxn = bad_profile.max_path_similarity(closure, part);
    } else {
      maxp = frozen_scores[i].first;
      maxn = frozen_scores[i].second;
    }

    SweepDecision decision = sweep_decision(maxp, maxn, config);
    std::string word = wndb::word_part(db.display_name(id));
    bool suppressed = false;

    if (decision == SweepDecision::kSkip) {
      ++report.skipped;
    } else {
      Side side = decision == SweepDecision::kAppendGood ? Side::kGood
                                                         : Side::kBad;
      auto& dedup_set = side == Side::kGood ? good_words : bad_words;
      if (config.dedup && !dedup_set.insert(word).second) {
        suppressed = true;
        ++report.skipped;
      } else {
        result.lexicon.side(side).push_back(
            LexiconEntry{word, Provenance::kSweep});
        if (side == Side::kGood) {
          ++report.appended_good;
        } else {
          ++report.appended_bad;
        }
        if (config.live_growth) {
          auto& profile = side == Side::kGood ? good_profile : bad_profile;
          int cap = side == Side::kGood ? config.cap_good : config.cap_bad;
          profile.add_word_senses(db, word, cap);
        }
      }
    }

    if (config.trace) {
      report.trace.push_back(
          SweepTraceRow{std::move(word), maxp, maxn, decision, suppressed});
    }
  }

  return result;
}

ExpansionResult expand_by_sweep(const wndb::WordNetDatabase& db,
                                const taxonomy::TaxonomyGraph& graph,
                                const SeedLexicon& seeds,
                                const ExpansionConfig& config) {
  validate_config(config);

  std::vector<wndb::SynsetId> sequence;
  sequence.reserve(db.size());
  if (config.order == ExpansionConfig::Order::kFile) {
    for (const wndb::Synset& synset : db.synsets()) {
      sequence.push_back(synset.id);
    }
  } else if (config.order == ExpansionConfig::Order::kAdjFirst) {
    // Concatenate the part files as adjective, adverb, verb, noun.  The
    // database stores them noun, verb, adjective, adverb, so emit the two
    // trailing blocks first, then the verb block, then the noun block.
    wndb::DatabaseCounts counts = db.counts();
    std::size_t noun_end = counts.nouns;
    std::size_t verb_end = noun_end + counts.verbs;
    std::size_t adj_end = verb_end + counts.adjectives;
    std::size_t adv_end = adj_end + counts.adverbs;
    for (std::size_t i = verb_end; i < adj_end; ++i) {
      sequence.push_back(db.synset_at(i).id);
    }
    for (std::size_t i = adj_end; i < adv_end; ++i) {
      sequence.push_back(db.synset_at(i).id);
    }
    for (std::size_t i = noun_end; i < verb_end; ++i) {
      sequence.push_back(db.synset_at(i).id);
    }
    for (std::size_t i = 0; i < noun_end; ++i) {
      sequence.push_back(db.synset_at(i).id);
    }
  } else {
    // Round-robin across the four dictionary files.
    wndb::DatabaseCounts counts = db.counts();
    std::array<std::size_t, 4> cursor;
    std::array<std::size_t, 4> end;
    cursor[0] = 0;
    end[0] = counts.nouns;
    cursor[1] = end[0];
    end[1] = end[0] + counts.verbs;
    cursor[2] = end[1];
    end[2] = end[1] + counts.adjectives;
    cursor[3] = end[2];
    end[3] = end[2] + counts.adverbs;
    bool any = true;
    while (any) {
      any = false;
      for (std::size_t part = 0; part < 4; ++part) {
        if (cursor[part] < end[part]) {
          sequence.push_back(db.synset_at(cursor[part]).id);
          ++cursor[part];
          any = true;
        }
      }
    }
  }

  if (config.sample) {
    // Uniform sample without replacement via a partial Fisher-Yates pass;
    // the sweep then visits the sample in draw order.
    util::DeterministicRng rng(config.seed);
    std::size_t take = std::min(config.synset_limit, sequence.size());
    for (std::size_t i = 0; i < take; ++i) {
      std::size_t j =
          i + static_cast<std::size_t>(rng.next_below(sequence.size() - i));
      std::swap(sequence[i], sequence[j]);
    }
    sequence.resize(take);
  } else if (sequence.size() > config.synset_limit) {
    sequence.resize(config.synset_limit);
  }

  return expand_by_sweep_over(db, graph, seeds, config, sequence);
}

SeedLexicon expand_from_corpus(const wndb::WordNetDatabase& db,
                               const taxonomy::TaxonomyGraph& graph,
                               const SeedLexicon& seeds,
                               const std::vector<LabeledTokens>& documents,
                               const CorpusExpansionConfig& config) {
  if (config.repetitions < 1) {
    throw ConfigError("repetitions must be at least 1");
  }
  if (config.top_k < 1) throw ConfigError("top_k must be at least 1");
  if (config.membership_threshold < 0.0 || config.membership_threshold > 1.0) {
    throw ConfigError("membership_threshold must lie in [0, 1]");
  }
  std::vector<std::size_t> good_docs;
  std::vector<std::size_t> bad_docs;
  for (std::size_t i = 0; i < documents.size(); ++i) {
    (documents[i].label == Side::kGood ? good_docs : bad_docs).push_back(i);
  }
  if (good_docs.empty() || bad_docs.empty()) {
    throw ConfigError("corpus expansion needs at least one document per label");
  }

  WordTally good_tally;
  WordTally bad_tally;

  for (int r = 0; r < config.repetitions; ++r) {
    // Independent per-repetition random stream, so repetitions could run
    // concurrently without changing the draws.
    util::DeterministicRng rng(config.seed + static_cast<std::uint64_t>(r));
    std::size_t gi = good_docs[rng.next_below(good_docs.size())];
    std::size_t bi = bad_docs[rng.next_below(bad_docs.size())];

    similarity::SynsetGroupProfile good_pool(graph);
    similarity::SynsetGroupProfile bad_pool(graph);
    for (const std::string& token : documents[gi].tokens) {
      good_pool.add_word_senses(db, token, 0);
      good_tally.add(token);
    }
    for (const std::string& token : documents[bi].tokens) {
      bad_pool.add_word_senses(db, token, 0);
      bad_tally.add(token);
    }

    for (std::size_t i = 0; i < documents.size(); ++i) {
      if (i == gi || i == bi) continue;
      const LabeledTokens& doc = documents[i];
      for (const std::string& token : doc.tokens) {
        auto [sim_good, sim_bad] =
            word_pool_similarities(db, graph, good_pool, bad_pool, token);
        if (sim_good > config.membership_threshold ||
            sim_bad > config.membership_threshold) {
          continue;  // already close enough to one of the pools
        }
        if (doc.label == Side::kGood) {
          good_pool.add_word_senses(db, token, 0);
          good_tally.add(token);
        } else {
          bad_pool.add_word_senses(db, token, 0);
          bad_tally.add(token);
        }
      }
    }
  }

  SeedLexicon result = seeds;
  for (const std::string& word : good_tally.top(config.top_k)) {
    result.good.push_back(LexiconEntry{word, Provenance::kCorpus});
  }
  for (const std::string& word : bad_tally.top(config.top_k)) {
    result.bad.push_back(LexiconEntry{word, Provenance::kCorpus});
  }
  return result;
}

}  // namespace lexicon
}  // namespace lexpand
