// pipeline.hpp -- run configuration and the end-to-end composition used by
// the command-line tool: expand, score, classify, plot, each writing its
// artifact into the output directory.

#ifndef LEXPAND_PIPELINE_HPP
#define LEXPAND_PIPELINE_HPP

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "lexpand/classifier.hpp"
#include "lexpand/corpus.hpp"
#include "lexpand/lexicon.hpp"
#include "lexpand/svgplot.hpp"

namespace lexpand {
namespace pipeline {

// Everything a full run needs.  Serializable as line-oriented
// `key = value` text; a saved config reproduces a run bit-for-bit given
// identical inputs.
struct RunConfig {
  std::string wordnet_dir;  // falls back to LEXPAND_WORDNET_DIR when empty
  std::string seeds_path;
  std::string corpus_dir;            // local corpus source...
  std::string hub_url;               // ...or hub page whose links are crawled
  std::vector<std::string> keywords; // sublink filter for the hub mode
  std::string out_dir = ".";
  lexicon::ExpansionConfig expansion;
  classifier::Thresholds thresholds;
  bool clauses = false;
  bool swap_axes = false;
  bool emit_svg = true;
  std::uint64_t random_seed = 0;
  int jobs = 1;
};

// `key = value` lines; '#' comments and blank lines allowed; unknown keys
// are errors.  save_run_config emits every key, so the loader accepts
// exactly what the saver writes.
RunConfig load_run_config(const std::string& path);
void save_run_config(const RunConfig& config, const std::string& path);

// One classified document, as written to results.csv.
struct ResultsRow {
  std::string doc_id;
  classifier::ClassificationResult result;
  bool has_avg_sign = false;
  double avg_sign = 0.0;
};

// Results CSV: doc_id,label,p_good,p_bad,strength,x,y,avg_sign (avg_sign
// column left empty for rows without one).
std::string results_csv(const std::vector<ResultsRow>& rows);

// Reads the polarity points back out of a results CSV.
std::vector<svgplot::ScatterPoint> load_results_points(const std::string& path);

// Runs expand -> score -> classify -> plot, writing lexicon.lex,
// matrix.csv, results.csv, scatter.csv (and scatter.svg unless disabled)
// into out_dir.  Progress and statistics go to `log`.  Throws on error;
// per-document fetch failures are logged and skipped instead.
void run_pipeline(const RunConfig& config, std::ostream& log);

}  // namespace pipeline
}  // namespace lexpand

#endif  // LEXPAND_PIPELINE_HPP
