#include "lexpand/classifier.hpp"

#include <algorithm>
#include <unordered_set>

#include "lexpand/corpus.hpp"
#include "lexpand/errors.hpp"
#include "lexpand/util.hpp"

namespace lexpand {
namespace classifier {

namespace {

void check_alignment(const std::vector<long long>& row,
                     const lexicon::SeedLexicon& lex) {
  if (row.size() != lex.good.size() + lex.bad.size()) {
    throw ConfigError("frequency row does not align with the lexicon (" +
                      std::to_string(row.size()) + " columns for " +
                      std::to_string(lex.good.size() + lex.bad.size()) +
                      " lexicon entries)");
  }
}

std::pair<long long, long long> side_masses(const std::vector<long long>& row,
                                            const lexicon::SeedLexicon& lex) {
  check_alignment(row, lex);
  long long good = 0;
  long long bad = 0;
  for (std::size_t i = 0; i < lex.good.size(); ++i) good += row[i];
  for (std::size_t i = lex.good.size(); i < row.size(); ++i) bad += row[i];
  return {good, bad};
}

bool is_ascii_alpha(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

const std::unordered_set<std::string_view>& contrastive_words() {
  static const std::unordered_set<std::string_view> kWords = {
      "but", "however", "yet", "although"};
  return kWords;
}

const std::unordered_set<std::string_view>& additive_words() {
  static const std::unordered_set<std::string_view> kWords = {"and", "also",
                                                              "moreover"};
  return kWords;
}

}  // namespace

const char* to_string(Label label) {
  switch (label) {
    case Label::kA: return "A";
    case Label::kB: return "B";
    case Label::kUnclassified: return "Unclassified";
  }
  return "?";
}

std::optional<Label> label_from_string(std::string_view text) {
  if (text == "A") return Label::kA;
  if (text == "B") return Label::kB;
  if (text == "Unclassified") return Label::kUnclassified;
  return std::nullopt;
}

const char* to_string(Connective connective) {
  switch (connective) {
    case Connective::kNone: return "none";
    case Connective::kAdditive: return "additive";
    case Connective::kContrastive: return "contrastive";
  }
  return "?";
}

std::pair<double, double> proportions(const std::vector<long long>& freq_row,
                                      const lexicon::SeedLexicon& lex) {
  auto [good, bad] = side_masses(freq_row, lex);
  long long total = good + bad;
  if (total == 0) return {0.0, 0.0};
  return {static_cast<double>(good) / static_cast<double>(total),
          static_cast<double>(bad) / static_cast<double>(total)};
}

LabelDecision classify(double p_good, double p_bad,
                       const Thresholds& thresholds) {
  bool pass_good = p_good > thresholds.eps1;
  bool pass_bad = p_bad > thresholds.eps2;
  if (pass_good && pass_bad) {
    if (p_good > p_bad) return {Label::kA, true};
    if (p_bad > p_good) return {Label::kB, true};
    return {Label::kUnclassified, true};
  }
  if (pass_good) return {Label::kA, false};
  if (pass_bad) return {Label::kB, false};
  return {Label::kUnclassified, false};
}

PolarityPoint polarity_point(const std::vector<long long>& freq_row,
                             const lexicon::SeedLexicon& lex, bool normalize,
                             std::optional<std::size_t> token_total) {
  auto [good, bad] = side_masses(freq_row, lex);
  if (!normalize) {
    return {static_cast<double>(good), static_cast<double>(bad)};
  }
  if (!token_total) {
    throw ConfigError("normalized polarity point needs the token total");
  }
  if (*token_total == 0) return {0.0, 0.0};
  double t = static_cast<double>(*token_total);
  return {static_cast<double>(good) / t, static_cast<double>(bad) / t};
}

ClassificationResult classify_row(const std::vector<long long>& freq_row,
                                  const lexicon::SeedLexicon& lex,
                                  const Thresholds& thresholds) {
  ClassificationResult result;
  auto [p_good, p_bad] = proportions(freq_row, lex);
  result.p_good = p_good;
  result.p_bad = p_bad;
  LabelDecision decision = classify(p_good, p_bad, thresholds);
  result.label = decision.label;
  result.both_sides_passed = decision.both_sides_passed;
  switch (result.label) {
    case Label::kA: result.strength = p_good; break;
    case Label::kB: result.strength = p_bad; break;
    case Label::kUnclassified: result.strength = std::max(p_good, p_bad); break;
  }
  result.point = polarity_point(freq_row, lex, /*normalize=*/false);
  return result;
}

std::vector<Clause> split_clauses(std::string_view sentence) {
  std::vector<Clause> clauses;
  Connective pending = Connective::kNone;
  std::size_t clause_start = 0;
  std::size_t i = 0;

  auto flush = [&](std::size_t end, Connective next_pending) {
    std::string_view text = util::trim(sentence.substr(clause_start, end - clause_start));
    clauses.push_back(Clause{std::string(text), pending, 0});
    pending = next_pending;
  };

  while (i < sentence.size()) {
    if (!is_ascii_alpha(sentence[i])) {
      ++i;
      continue;
    }
    std::size_t begin = i;
    while (i < sentence.size() && is_ascii_alpha(sentence[i])) ++i;
    std::string word = util::to_lower_ascii(sentence.substr(begin, i - begin));
    bool contrastive = contrastive_words().count(word) > 0;
    bool additive = !contrastive && additive_words().count(word) > 0;
    if (contrastive || additive) {
      flush(begin,
            contrastive ? Connective::kContrastive : Connective::kAdditive);
      clause_start = i;
    }
  }
  flush(sentence.size(), Connective::kNone);
  return clauses;
}

std::vector<Clause> clause_signs(std::vector<Clause> clauses,
                                 const lexicon::SeedLexicon& lex,
                                 bool inherit) {
  std::unordered_set<std::string> good_words;
  std::unordered_set<std::string> bad_words;
  for (const lexicon::LexiconEntry& e : lex.good) good_words.insert(e.word);
  for (const lexicon::LexiconEntry& e : lex.bad) bad_words.insert(e.word);

  int previous = 0;
  for (Clause& clause : clauses) {
    long long hits = 0;
    for (const std::string& token : corpus::tokenize(clause.text)) {
      if (good_words.count(token)) ++hits;
      if (bad_words.count(token)) --hits;
    }
    int raw = hits > 0 ? 1 : hits < 0 ? -1 : 0;
    if (raw != 0) {
      clause.sign = raw;
    } else if (inherit && previous != 0) {
      clause.sign = clause.connective == Connective::kContrastive ? -previous
                                                                  : previous;
    } else {
      clause.sign = 0;  // leading or non-inheriting zero: dropped by averaging
    }
    previous = clause.sign;
  }
  return clauses;
}

double average_sign(const std::vector<Clause>& clauses) {
  long long sum = 0;
  long long n = 0;
  for (const Clause& clause : clauses) {
    if (clause.sign == 0) continue;
    sum += clause.sign;
    ++n;
  }
  if (n == 0) return 0.0;
  return static_cast<double>(sum) / static_cast<double>(n);
}

std::vector<std::string> split_sentences(std::string_view text) {
  std::vector<std::string> sentences;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    bool boundary = i == text.size() || text[i] == '.' || text[i] == '!' ||
                    text[i] == '?';
    if (!boundary) continue;
    std::string_view sentence = util::trim(text.substr(start, i - start));
    if (!sentence.empty()) sentences.emplace_back(sentence);
    start = i + 1;
  }
  return sentences;
}

double document_average_sign(std::string_view text,
                             const lexicon::SeedLexicon& lex, bool inherit) {
  std::vector<Clause> all;
  for (const std::string& sentence : split_sentences(text)) {
    std::vector<Clause> resolved =
        clause_signs(split_clauses(sentence), lex, inherit);
    all.insert(all.end(), resolved.begin(), resolved.end());
  }
  return average_sign(all);
}

}  // namespace classifier
}  // namespace lexpand
