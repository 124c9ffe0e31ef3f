// wndb.hpp -- loader, parser and serializer for dictionary databases in the
// classic wndb layout: four data files (data.noun, data.verb, data.adj,
// data.adv) holding one synset record per line, and four index files
// (index.noun, ...) mapping lemmas to the offsets of their synsets.
//
// Format notes that matter for byte-exact round-trips:
//   * header lines begin with two spaces and are ignored;
//   * every record line ends with exactly two spaces before the newline;
//   * word counts are two lowercase hex digits, lexical ids one lowercase
//     hex digit, pointer counts three decimal digits, frame counts two
//     decimal digits, frame word numbers two lowercase hex digits;
//   * adjective synsets may live in data.adj with ss_type 's' (satellites);
//     pointer tuples always reference them with pos character 'a'.

#ifndef LEXPAND_WNDB_HPP
#define LEXPAND_WNDB_HPP

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace lexpand {
namespace wndb {

// Part of speech.  AdjectiveSatellite is a synset type, not a file: satellite
// records live in data.adj and are addressed as adjectives by pointers.
enum class Pos : std::uint8_t {
  kNoun = 0,
  kVerb = 1,
  kAdjective = 2,
  kAdverb = 3,
  kAdjectiveSatellite = 4,
};

// The four dictionary files, in canonical enumeration order.
inline constexpr std::array<Pos, 4> kFileParts = {
    Pos::kNoun, Pos::kVerb, Pos::kAdjective, Pos::kAdverb};

// Maps a part of speech to the file that stores it (satellite -> adjective).
Pos file_part(Pos pos);
// 0..3 position of file_part(pos) in kFileParts.
int file_index(Pos pos);
// 'n', 'v', 'a', 'r', 's'.
char pos_char(Pos pos);
// Inverse of pos_char; throws ParseError-free std::nullopt on unknown chars.
std::optional<Pos> pos_from_char(char c);

// Identifies a synset by its file and byte offset.  The pos field is always
// the file part of speech: satellites are addressed as kAdjective here, and
// their satellite-ness lives in Synset::ss_type.
struct SynsetId {
  Pos pos = Pos::kNoun;
  std::uint32_t offset = 0;

  friend bool operator==(const SynsetId&, const SynsetId&) = default;
  friend auto operator<=>(const SynsetId&, const SynsetId&) = default;
};

struct SynsetIdHash {
  std::size_t operator()(const SynsetId& id) const {
    return std::hash<std::uint64_t>()(
        (static_cast<std::uint64_t>(file_index(id.pos)) << 32) | id.offset);
  }
};

// One word of a synset, exactly as written in the data file: the lemma keeps
// its capitalization and any trailing syntactic marker such as "(p)".
struct WordForm {
  std::string lemma;
  int lex_id = 0;
};

// One pointer tuple.  `symbol` is kept verbatim (unknown codes included).
// source/target are the 1-based word numbers from the st field; 0 means the
// pointer is semantic (whole synset to whole synset).
struct Pointer {
  std::string symbol;
  SynsetId target;
  int source = 0;
  int target_word = 0;
};

// One verb frame reference: frame number plus 1-based word number (0 = all
// words of the synset).
struct Frame {
  int frame_number = 0;
  int word_number = 0;
};

// A parsed data-file record.
struct Synset {
  SynsetId id;                   // file part of speech + offset
  int lex_filenum = 0;           // lexicographer file number, 0..44
  Pos ss_type = Pos::kNoun;      // n, v, a, s, r (s only inside data.adj)
  std::vector<WordForm> words;   // never empty
  std::vector<Pointer> pointers;
  std::vector<Frame> frames;     // verbs only
  std::string gloss;             // text after " | ", untouched
};

// A parsed index-file line.
struct IndexEntry {
  std::string lemma;             // lowercase, underscores for spaces
  Pos pos = Pos::kNoun;
  std::vector<std::string> pointer_symbols;
  int sense_cnt = 0;             // historical duplicate of offsets.size()
  int tagsense_cnt = 0;
  std::vector<std::uint32_t> synset_offsets;  // sense-number order
};

// Strips a syntactic marker like "(p)" / "(a)" / "(ip)" from the end of a
// raw lemma and lowercases it: the canonical lookup form.
std::string clean_lemma(std::string_view raw_lemma);

// Parsing and serialization of single records.  `file` and `line_no` are
// used only for error messages.  parse/serialize round-trip byte-exactly:
// serialize_data_line(parse_data_line(s)) == s for every record line.
Synset parse_data_line(std::string_view line, Pos file_pos,
                       const std::string& file = "<data>",
                       std::size_t line_no = 0);
std::string serialize_data_line(const Synset& synset);

IndexEntry parse_index_line(std::string_view line, Pos file_pos,
                            const std::string& file = "<index>",
                            std::size_t line_no = 0);
std::string serialize_index_line(const IndexEntry& entry);

struct DatabaseCounts {
  std::size_t nouns = 0;
  std::size_t verbs = 0;
  std::size_t adjectives = 0;  // satellites included
  std::size_t adverbs = 0;
  std::size_t total() const { return nouns + verbs + adjectives + adverbs; }
};

// The loaded dictionary.  Synsets are stored densely in file order (nouns,
// then verbs, adjectives, adverbs); the dense index is stable and is what
// the taxonomy layer uses for its adjacency arrays.
class WordNetDatabase {
 public:
  // --- lookups ---------------------------------------------------------
  std::size_t size() const { return synsets_.size(); }
  const Synset& synset_at(std::size_t dense_index) const {
    return synsets_[dense_index];
  }
  // Dense index of a synset id, if present.
  std::optional<std::size_t> index_of(SynsetId id) const;
  const Synset* find(SynsetId id) const;
  // Throws IntegrityError when absent.
  const Synset& require(SynsetId id) const;

  // All synsets of every word form of `word` (normalized internally).  With
  // a part of speech the entry's sense order is kept; without one the four
  // parts are concatenated in noun, verb, adjective, adverb order.
  std::vector<SynsetId> synsets_for_word(std::string_view word) const;
  std::vector<SynsetId> synsets_for_word(std::string_view word, Pos pos) const;

  const IndexEntry* find_index_entry(std::string_view word, Pos pos) const;

  // "dog.n.01": lowercased first lemma, ss_type character, two-digit sense
  // number (1-based position of the synset in its first lemma's index
  // entry).  Precomputed at load time.
  const std::string& display_name(SynsetId id) const;
  // Inverse of display_name.
  std::optional<SynsetId> synset_by_name(std::string_view name) const;

  DatabaseCounts counts() const { return counts_; }
  const std::string& directory() const { return directory_; }

  // Dense iteration order: file order within noun, verb, adjective, adverb.
  const std::vector<Synset>& synsets() const { return synsets_; }

 private:
  friend WordNetDatabase load_database(const std::string& directory);

  std::vector<Synset> synsets_;
  std::vector<std::string> display_names_;
  std::unordered_map<std::uint64_t, std::uint32_t> id_to_index_;
  std::array<std::unordered_map<std::string, IndexEntry>, 4> index_;
  std::unordered_map<std::string, SynsetId> name_to_id_;
  DatabaseCounts counts_;
  std::string directory_;

  static std::uint64_t key(SynsetId id) {
    return (static_cast<std::uint64_t>(file_index(id.pos)) << 32) | id.offset;
  }
};

// The word part of a display name: "vice_president.n.02" -> "vice_president".
std::string word_part(std::string_view display_name);

// Loads the eight dictionary files from `directory`.
//   * a missing file                      -> LoadError
//   * a malformed record                  -> ParseError (file:line:column)
//   * duplicate offsets, dangling pointer
//     targets, index offsets without a
//     record, or a first lemma missing
//     from its index                      -> IntegrityError
WordNetDatabase load_database(const std::string& directory);

}  // namespace wndb
}  // namespace lexpand

#endif  // LEXPAND_WNDB_HPP
