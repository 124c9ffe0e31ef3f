// classifier.hpp -- proportion-threshold document classification, polarity
// coordinates with strength of evidence, and the conjunction-based clause
// sign refinement.

#ifndef LEXPAND_CLASSIFIER_HPP
#define LEXPAND_CLASSIFIER_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lexpand/lexicon.hpp"

namespace lexpand {
namespace classifier {

// Strict acceptance thresholds.  The two acceptance regions are disjoint
// when eps1 + eps2 >= 1; overlap_possible() flags configurations where both
// strict tests can pass at once (callers warn on it).
struct Thresholds {
  double eps1 = 0.5;
  double eps2 = 0.5;

  bool overlap_possible() const { return eps1 + eps2 < 1.0; }
};

enum class Label { kA, kB, kUnclassified };
const char* to_string(Label label);
std::optional<Label> label_from_string(std::string_view text);

// A document's (good-frequency, bad-frequency) coordinates.
struct PolarityPoint {
  double x = 0.0;
  double y = 0.0;
};

struct LabelDecision {
  Label label = Label::kUnclassified;
  // Both strict tests passed (possible when eps1 + eps2 < 1) and the larger
  // proportion was taken.
  bool both_sides_passed = false;
};

struct ClassificationResult {
  Label label = Label::kUnclassified;
  double p_good = 0.0;
  double p_bad = 0.0;
  double strength = 0.0;  // winning side's proportion; the larger one when unclassified
  PolarityPoint point;    // raw (G, B)
  bool both_sides_passed = false;
};

// G = sum of good-side columns, B = sum of bad-side columns; returns
// (G/(G+B), B/(G+B)), or (0,0) when no lexicon word occurred.  The row must
// align with lexicon.good followed by lexicon.bad.
std::pair<double, double> proportions(const std::vector<long long>& freq_row,
                                      const lexicon::SeedLexicon& lex);

// A iff p_good > eps1; B iff p_bad > eps2 (both strict); when both pass the
// larger proportion wins (ties stay unclassified) and the decision is
// flagged; otherwise Unclassified.
LabelDecision classify(double p_good, double p_bad,
                       const Thresholds& thresholds);

// Raw mode: (G, B).  Normalized mode divides by the document's unigram
// total, which must then be supplied; (0,0) when the total is 0.
PolarityPoint polarity_point(const std::vector<long long>& freq_row,
                             const lexicon::SeedLexicon& lex, bool normalize,
                             std::optional<std::size_t> token_total = std::nullopt);

// proportions + classify + raw polarity point for one matrix row.
ClassificationResult classify_row(const std::vector<long long>& freq_row,
                                  const lexicon::SeedLexicon& lex,
                                  const Thresholds& thresholds);

// --- clause refinement ---------------------------------------------------

enum class Connective { kNone, kAdditive, kContrastive };
const char* to_string(Connective connective);

struct Clause {
  std::string text;
  Connective connective = Connective::kNone;  // how it joins the previous clause
  int sign = 0;  // -1, 0, +1; 0 means unresolved / no evidence
};

// Splits one sentence at connective words: contrastive {but, however, yet,
// although}, additive {and, also, moreover}.  Connectives are matched as
// whole words, removed from the clause text, and recorded on the clause to
// their right.  The first clause always has connective kNone.
std::vector<Clause> split_clauses(std::string_view sentence);

// Resolves clause signs.  Raw sign = sign(good hits - bad hits) over the
// clause's tokens.  With inherit on, an evidence-free clause takes the
// previous resolved sign, flipped by a contrastive connective and kept by
// an additive one; a leading 0 stays 0 (and is ignored by averaging).  With
// inherit off, evidence-free clauses simply stay 0.
std::vector<Clause> clause_signs(std::vector<Clause> clauses,
                                 const lexicon::SeedLexicon& lex,
                                 bool inherit = true);

// Arithmetic mean over the nonzero signs; 0 when there are none.
double average_sign(const std::vector<Clause>& clauses);

// Sentence split on '.', '!' and '?' (empty sentences dropped).
std::vector<std::string> split_sentences(std::string_view text);

// Clause-sign average over every sentence of a document.
double document_average_sign(std::string_view text,
                             const lexicon::SeedLexicon& lex,
                             bool inherit = true);

}  // namespace classifier
}  // namespace lexpand

#endif  // LEXPAND_CLASSIFIER_HPP
