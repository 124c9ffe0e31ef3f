// corpus.hpp -- document ingestion (link extraction, sublink filtering,
// pluggable local/http fetching, HTML-to-text stripping, tokenization) and
// the per-document frequency matrix.

#ifndef LEXPAND_CORPUS_HPP
#define LEXPAND_CORPUS_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace lexpand {
namespace corpus {

// One ingested document.  `text` preserves the source's line structure —
// counting is defined line by line.
struct Document {
  std::string id;  // URL or file path; unique within a run
  std::string text;

  friend bool operator==(const Document&, const Document&) = default;
};

// Every anchor href value in document order, duplicates preserved.  When
// `base` is non-empty, relative links are resolved against it.  Tolerates
// malformed markup (unparseable regions are skipped, never fatal).
std::vector<std::string> extract_links(std::string_view html,
                                       std::string_view base = "");

// Minimal reference resolution for the URL shapes link extraction meets:
// absolute refs pass through; scheme-relative, root-relative, query and
// fragment refs splice onto the base; other refs resolve against the base
// path with "." / ".." normalization.
std::string resolve_url(std::string_view base, std::string_view ref);

// Keeps links containing at least one keyword as a case-insensitive
// substring; a link is kept once at its first matching keyword.  Order and
// duplicates preserved.  Keywords must be non-empty.
std::vector<std::string> filter_sublinks(const std::vector<std::string>& links,
                                         const std::vector<std::string>& keywords);

// Visible text of an HTML page.  Tags are replaced by single spaces,
// script/style/comment content is dropped, entities are decoded, and every
// newline of the source survives, so line N of the output corresponds to
// line N of the input.
std::string html_to_text(std::string_view html);

// Lowercased tokens: maximal runs of letters, digits, underscores or
// non-ASCII bytes (so multi-byte characters stay inside words).  Within
// each line, unigrams are followed by the line's adjacent-pair bigrams
// joined with '_'; bigrams never cross line boundaries, which keeps
// whole-document and per-line counting in agreement.
std::vector<std::string> tokenize(std::string_view text);

// Unigram count of the text (token total used for length normalization).
std::size_t count_unigrams(std::string_view text);

// Where documents come from.  Local mode never touches the network.
struct FetchSource {
  enum class Kind { kLocalFile, kHttp } kind = Kind::kLocalFile;
  std::string root;          // directory prefix for local ids (may be empty)
  int max_concurrent = 4;    // politeness: parallel fetch bound
  int per_host_delay_ms = 250;  // politeness: spacing between same-host hits
};

// Fetches one document; .htm/.html content is stripped to visible text,
// anything else is taken verbatim.  Throws FetchError on failure.
Document fetch(const FetchSource& source, const std::string& id);

// Raw bytes of one document, no stripping — for pages whose markup is
// consumed directly, e.g. hub pages handed to extract_links.
std::string fetch_raw(const FetchSource& source, const std::string& id);

// Fetches many documents, recording failures instead of aborting: one bad
// link must not lose the rest of a corpus.  Document order matches id
// order (failures removed); errors are (id, message) pairs.
struct FetchReport {
  std::vector<Document> documents;
  std::vector<std::pair<std::string, std::string>> errors;
};
FetchReport fetch_all(const FetchSource& source,
                      const std::vector<std::string>& ids);

// Document ids of a corpus directory: the lines of its manifest.txt when
// present (comments '#' and blanks skipped), otherwise every *.txt, *.htm
// and *.html file, sorted by relative path.
std::vector<std::string> corpus_ids(const std::string& directory);

// counts[i][k] = occurrences of searchword k among the tokens of document
// i.  Duplicate searchwords yield duplicate columns.  token_totals[i] is
// the document's unigram count (in-memory only, not serialized).
struct FrequencyMatrix {
  std::vector<std::string> doc_ids;
  std::vector<std::string> words;
  std::vector<std::vector<long long>> counts;
  std::vector<std::size_t> token_totals;
};

FrequencyMatrix count_frequencies(const std::vector<Document>& documents,
                                  const std::vector<std::string>& searchwords);

// Fraction of zero cells; 0 for an empty matrix.
double sparsity(const FrequencyMatrix& matrix);

// Matrix CSV: header `doc_id,<word1>,...`, one row per document, counts as
// decimal integers.  Loading leaves token_totals empty.
void save_matrix_csv(const FrequencyMatrix& matrix, const std::string& path);
FrequencyMatrix load_matrix_csv(const std::string& path);

}  // namespace corpus
}  // namespace lexpand

#endif  // LEXPAND_CORPUS_HPP
