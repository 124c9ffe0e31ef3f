#include "lexpand/wndb.hpp"

#include <algorithm>
#include <cstdio>

#include "lexpand/errors.hpp"
#include "lexpand/util.hpp"

namespace lexpand {
namespace wndb {

namespace {

constexpr std::array<const char*, 4> kFileSuffixes = {"noun", "verb", "adj",
                                                      "adv"};

bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_lower_hex(char c) { return is_digit(c) || (c >= 'a' && c <= 'f'); }

int hex_value(char c) {
  return is_digit(c) ? c - '0' : c - 'a' + 10;
}

// Walks space-separated fields of a record, tracking byte columns for error
// reporting.  Fields are separated by single spaces; the caller is expected
// to have stripped the trailing two spaces already.
class FieldScanner {
 public:
  FieldScanner(std::string_view text, const std::string& file,
               std::size_t line_no)
      : text_(text), file_(file), line_no_(line_no) {}

  std::string_view next(const char* what) {
    if (pos_ > text_.size()) fail(what);
    last_column_ = pos_ + 1;
    std::size_t end = text_.find(' ', pos_);
    std::string_view token;
    if (end == std::string_view::npos) {
      token = text_.substr(pos_);
      pos_ = text_.size() + 1;
    } else {
      token = text_.substr(pos_, end - pos_);
      pos_ = end + 1;
    }
    if (token.empty()) fail(what);
    return token;
  }

  bool exhausted() const { return pos_ > text_.size() || pos_ == text_.size(); }

  void expect_end() const {
    if (!exhausted()) {
      throw ParseError(file_, line_no_, pos_ + 1, "unexpected trailing fields");
    }
  }

  // 1-based byte column where the last token started.
  std::size_t column() const { return last_column_; }

  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError(file_, line_no_, std::min(pos_, text_.size()) + 1,
                     message);
  }

  [[noreturn]] void fail_here(const std::string& message) const {
    throw ParseError(file_, line_no_, last_column_, message);
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t last_column_ = 1;
  const std::string& file_;
  std::size_t line_no_;
};

std::uint32_t parse_offset(FieldScanner& sc, std::string_view token,
                           const char* what) {
  if (token.size() != 8 ||
      !std::all_of(token.begin(), token.end(), is_digit)) {
    sc.fail_here(std::string(what) + " is not an 8-digit decimal offset");
  }
  std::uint32_t value = 0;
  for (char c : token) value = value * 10 + static_cast<std::uint32_t>(c - '0');
  return value;
}

int parse_decimal(FieldScanner& sc, std::string_view token, const char* what,
                  std::size_t exact_width = 0) {
  if ((exact_width != 0 && token.size() != exact_width) ||
      !std::all_of(token.begin(), token.end(), is_digit)) {
    sc.fail_here(std::string(what) + " is not a valid decimal field");
  }
  int value = 0;
  for (char c : token) value = value * 10 + (c - '0');
  return value;
}

int parse_hex(FieldScanner& sc, std::string_view token, const char* what,
              std::size_t exact_width) {
  if (token.size() != exact_width ||
      !std::all_of(token.begin(), token.end(), is_lower_hex)) {
    sc.fail_here(std::string(what) + " is not a valid lowercase hex field");
  }
  int value = 0;
  for (char c : token) value = value * 16 + hex_value(c);
  return value;
}

// Strips the trailing space terminator, failing when absent.  Canonical
// records end with exactly two spaces, but a sprinkling of released records
// carries more, so any run of at least two is accepted.
std::string_view strip_terminator(std::string_view line,
                                  const std::string& file,
                                  std::size_t line_no) {
  std::size_t end = line.size();
  while (end > 0 && line[end - 1] == ' ') --end;
  if (line.size() - end < 2) {
    throw ParseError(file, line_no, line.size() + 1,
                     "record does not end with the two-space terminator");
  }
  return line.substr(0, end);
}

void append_u32_padded(std::string& out, std::uint32_t value) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%08u", value);
  out += buf;
}

bool is_record_line(std::string_view line) {
  return !line.empty() && !line.starts_with("  ");
}

}  // namespace

Pos file_part(Pos pos) {
  return pos == Pos::kAdjectiveSatellite ? Pos::kAdjective : pos;
}

int file_index(Pos pos) { return static_cast<int>(file_part(pos)); }

char pos_char(Pos pos) {
  switch (pos) {
    case Pos::kNoun: return 'n';
    case Pos::kVerb: return 'v';
    case Pos::kAdjective: return 'a';
    case Pos::kAdverb: return 'r';
    case Pos::kAdjectiveSatellite: return 's';
  }
  return '?';
}

std::optional<Pos> pos_from_char(char c) {
  switch (c) {
    case 'n': return Pos::kNoun;
    case 'v': return Pos::kVerb;
    case 'a': return Pos::kAdjective;
    case 'r': return Pos::kAdverb;
    case 's': return Pos::kAdjectiveSatellite;
    default: return std::nullopt;
  }
}

std::string clean_lemma(std::string_view raw_lemma) {
  for (std::string_view marker : {"(p)", "(a)", "(ip)"}) {
    if (raw_lemma.size() > marker.size() && raw_lemma.ends_with(marker)) {
      raw_lemma.remove_suffix(marker.size());
      break;
    }
  }
  return util::to_lower_ascii(raw_lemma);
}

Synset parse_data_line(std::string_view line, Pos file_pos,
                       const std::string& file, std::size_t line_no) {
  std::string_view body = strip_terminator(line, file, line_no);

  std::size_t sep = body.find(" | ");
  if (sep == std::string_view::npos) {
    throw ParseError(file, line_no, body.size() + 1,
                     "missing \" | \" gloss separator");
  }
  Synset synset;
  synset.gloss = std::string(body.substr(sep + 3));

  FieldScanner sc(body.substr(0, sep), file, line_no);

  synset.id.offset = parse_offset(sc, sc.next("synset offset"), "synset offset");
  synset.id.pos = file_part(file_pos);

  synset.lex_filenum =
      parse_decimal(sc, sc.next("lex_filenum"), "lex_filenum", 2);
  if (synset.lex_filenum > 44) {
    sc.fail_here("lex_filenum out of range (expected 00..44)");
  }

  std::string_view ss = sc.next("ss_type");
  std::optional<Pos> ss_type =
      ss.size() == 1 ? pos_from_char(ss[0]) : std::nullopt;
  if (!ss_type) sc.fail_here("unknown ss_type character");
  if (file_part(*ss_type) != file_part(file_pos)) {
    sc.fail_here("ss_type does not belong in this data file");
  }
  synset.ss_type = *ss_type;

  int w_cnt = parse_hex(sc, sc.next("word count"), "word count", 2);
  if (w_cnt == 0) sc.fail_here("word count must be non-zero");
  synset.words.reserve(static_cast<std::size_t>(w_cnt));
  for (int i = 0; i < w_cnt; ++i) {
    WordForm word;
    word.lemma = std::string(sc.next("word lemma"));
    word.lex_id = parse_hex(sc, sc.next("lex_id"), "lex_id", 1);
    synset.words.push_back(std::move(word));
  }

  int p_cnt = parse_decimal(sc, sc.next("pointer count"), "pointer count", 3);
  synset.pointers.reserve(static_cast<std::size_t>(p_cnt));
  for (int i = 0; i < p_cnt; ++i) {
    Pointer ptr;
    ptr.symbol = std::string(sc.next("pointer symbol"));
    ptr.target.offset =
        parse_offset(sc, sc.next("pointer offset"), "pointer offset");
    std::string_view pc = sc.next("pointer pos");
    std::optional<Pos> target_pos =
        pc.size() == 1 ? pos_from_char(pc[0]) : std::nullopt;
    if (!target_pos || *target_pos == Pos::kAdjectiveSatellite) {
      sc.fail_here("pointer pos must be one of n, v, a, r");
    }
    ptr.target.pos = *target_pos;
    int st = parse_hex(sc, sc.next("pointer source/target"),
                       "pointer source/target", 4);
    ptr.source = st >> 8;
    ptr.target_word = st & 0xff;
    synset.pointers.push_back(std::move(ptr));
  }

  if (file_part(file_pos) == Pos::kVerb) {
    int f_cnt = parse_decimal(sc, sc.next("frame count"), "frame count", 2);
    synset.frames.reserve(static_cast<std::size_t>(f_cnt));
    for (int i = 0; i < f_cnt; ++i) {
      std::string_view plus = sc.next("frame marker");
      if (plus != "+") sc.fail_here("expected \"+\" before frame tuple");
      Frame frame;
      frame.frame_number =
          parse_decimal(sc, sc.next("frame number"), "frame number", 2);
      frame.word_number =
          parse_hex(sc, sc.next("frame word number"), "frame word number", 2);
      synset.frames.push_back(frame);
    }
  }

  sc.expect_end();
  return synset;
}

std::string serialize_data_line(const Synset& synset) {
  std::string out;
  out.reserve(128);
  char buf[32];

  append_u32_padded(out, synset.id.offset);
  std::snprintf(buf, sizeof(buf), " %02d %c %02x", synset.lex_filenum,
                pos_char(synset.ss_type),
                static_cast<unsigned>(synset.words.size()));
  out += buf;

  for (const WordForm& word : synset.words) {
    out.push_back(' ');
    out += word.lemma;
    std::snprintf(buf, sizeof(buf), " %x", static_cast<unsigned>(word.lex_id));
    out += buf;
  }

  std::snprintf(buf, sizeof(buf), " %03d",
                static_cast<int>(synset.pointers.size()));
  out += buf;
  for (const Pointer& ptr : synset.pointers) {
    out.push_back(' ');
    out += ptr.symbol;
    out.push_back(' ');
    append_u32_padded(out, ptr.target.offset);
    std::snprintf(buf, sizeof(buf), " %c %02x%02x", pos_char(ptr.target.pos),
                  static_cast<unsigned>(ptr.source),
                  static_cast<unsigned>(ptr.target_word));
    out += buf;
  }

  if (file_part(synset.id.pos) == Pos::kVerb) {
    std::snprintf(buf, sizeof(buf), " %02d",
                  static_cast<int>(synset.frames.size()));
    out += buf;
    for (const Frame& frame : synset.frames) {
      std::snprintf(buf, sizeof(buf), " + %02d %02x", frame.frame_number,
                    static_cast<unsigned>(frame.word_number));
      out += buf;
    }
  }

  out += " | ";
  out += synset.gloss;
  out += "  ";
  return out;
}

IndexEntry parse_index_line(std::string_view line, Pos file_pos,
                            const std::string& file, std::size_t line_no) {
  std::string_view body = strip_terminator(line, file, line_no);
  FieldScanner sc(body, file, line_no);

  IndexEntry entry;
  entry.lemma = std::string(sc.next("lemma"));

  std::string_view pc = sc.next("pos");
  if (pc.size() != 1 || !pos_from_char(pc[0]) ||
      pc[0] != pos_char(file_part(file_pos))) {
    sc.fail_here("index pos does not match this index file");
  }
  entry.pos = file_part(file_pos);

  int synset_cnt = parse_decimal(sc, sc.next("synset count"), "synset count");
  if (synset_cnt < 1) sc.fail_here("synset count must be positive");

  int p_cnt = parse_decimal(sc, sc.next("pointer symbol count"),
                            "pointer symbol count");
  entry.pointer_symbols.reserve(static_cast<std::size_t>(p_cnt));
  for (int i = 0; i < p_cnt; ++i) {
    entry.pointer_symbols.emplace_back(sc.next("pointer symbol"));
  }

  entry.sense_cnt = parse_decimal(sc, sc.next("sense count"), "sense count");
  entry.tagsense_cnt =
      parse_decimal(sc, sc.next("tagsense count"), "tagsense count");

  entry.synset_offsets.reserve(static_cast<std::size_t>(synset_cnt));
  for (int i = 0; i < synset_cnt; ++i) {
    entry.synset_offsets.push_back(
        parse_offset(sc, sc.next("synset offset"), "synset offset"));
  }

  sc.expect_end();
  return entry;
}

std::string serialize_index_line(const IndexEntry& entry) {
  std::string out;
  out.reserve(64);
  char buf[32];

  out += entry.lemma;
  std::snprintf(buf, sizeof(buf), " %c %d %d", pos_char(entry.pos),
                static_cast<int>(entry.synset_offsets.size()),
                static_cast<int>(entry.pointer_symbols.size()));
  out += buf;
  for (const std::string& symbol : entry.pointer_symbols) {
    out.push_back(' ');
    out += symbol;
  }
  std::snprintf(buf, sizeof(buf), " %d %d", entry.sense_cnt,
                entry.tagsense_cnt);
  out += buf;
  for (std::uint32_t offset : entry.synset_offsets) {
    out.push_back(' ');
    append_u32_padded(out, offset);
  }
  out += "  ";
  return out;
}

std::optional<std::size_t> WordNetDatabase::index_of(SynsetId id) const {
  auto it = id_to_index_.find(key(id));
  if (it == id_to_index_.end()) return std::nullopt;
  return it->second;
}

const Synset* WordNetDatabase::find(SynsetId id) const {
  auto idx = index_of(id);
  return idx ? &synsets_[*idx] : nullptr;
}

const Synset& WordNetDatabase::require(SynsetId id) const {
  const Synset* s = find(id);
  if (!s) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%08u %c", id.offset, pos_char(id.pos));
    throw IntegrityError(std::string("unknown synset id: ") + buf);
  }
  return *s;
}

std::vector<SynsetId> WordNetDatabase::synsets_for_word(
    std::string_view word) const {
  std::vector<SynsetId> out;
  for (Pos pos : kFileParts) {
    std::vector<SynsetId> part = synsets_for_word(word, pos);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

std::vector<SynsetId> WordNetDatabase::synsets_for_word(std::string_view word,
                                                        Pos pos) const {
  std::vector<SynsetId> out;
  const IndexEntry* entry = find_index_entry(word, pos);
  if (!entry) return out;
  out.reserve(entry->synset_offsets.size());
  for (std::uint32_t offset : entry->synset_offsets) {
    out.push_back(SynsetId{file_part(pos), offset});
  }
  return out;
}

const IndexEntry* WordNetDatabase::find_index_entry(std::string_view word,
                                                    Pos pos) const {
  const auto& table = index_[static_cast<std::size_t>(file_index(pos))];
  auto it = table.find(util::normalize_word(word));
  return it == table.end() ? nullptr : &it->second;
}

const std::string& WordNetDatabase::display_name(SynsetId id) const {
  auto idx = index_of(id);
  if (!idx) require(id);  // throws
  return display_names_[*idx];
}

std::optional<SynsetId> WordNetDatabase::synset_by_name(
    std::string_view name) const {
  auto it = name_to_id_.find(std::string(name));
  if (it == name_to_id_.end()) return std::nullopt;
  return it->second;
}

std::string word_part(std::string_view display_name) {
  // The name has the shape <word>.<pos char>.<sense>; the word itself may
  // contain dots, so strip the last two dot-separated components.
  std::size_t last = display_name.rfind('.');
  if (last == std::string_view::npos) return std::string(display_name);
  std::size_t second = display_name.rfind('.', last - 1);
  if (second == std::string_view::npos) return std::string(display_name);
  return std::string(display_name.substr(0, second));
}

WordNetDatabase load_database(const std::string& directory) {
  WordNetDatabase db;
  db.directory_ = directory;

  for (Pos pos : kFileParts) {
    std::size_t fi = static_cast<std::size_t>(file_index(pos));
    std::string name = std::string("data.") + kFileSuffixes[fi];
    std::string path = directory + "/" + name;
    if (!util::file_exists(path)) {
      throw LoadError("missing dictionary file: " + path);
    }
    std::string content = util::read_text_file(path);
    std::size_t line_no = 0;
    std::size_t added = 0;
    for (std::string_view line : util::split_lines(content)) {
      ++line_no;
      if (!is_record_line(line)) continue;
      Synset synset = parse_data_line(line, pos, name, line_no);
      std::uint64_t key = WordNetDatabase::key(synset.id);
      auto [it, inserted] = db.id_to_index_.emplace(
          key, static_cast<std::uint32_t>(db.synsets_.size()));
      if (!inserted) {
        throw IntegrityError(name + ": duplicate synset offset " +
                             std::to_string(synset.id.offset));
      }
      db.synsets_.push_back(std::move(synset));
      ++added;
    }
    switch (pos) {
      case Pos::kNoun: db.counts_.nouns = added; break;
      case Pos::kVerb: db.counts_.verbs = added; break;
      case Pos::kAdjective: db.counts_.adjectives = added; break;
      default: db.counts_.adverbs = added; break;
    }
  }

  for (Pos pos : kFileParts) {
    std::size_t fi = static_cast<std::size_t>(file_index(pos));
    std::string name = std::string("index.") + kFileSuffixes[fi];
    std::string path = directory + "/" + name;
    if (!util::file_exists(path)) {
      throw LoadError("missing dictionary file: " + path);
    }
    std::string content = util::read_text_file(path);
    std::size_t line_no = 0;
    auto& table = db.index_[fi];
    for (std::string_view line : util::split_lines(content)) {
      ++line_no;
      if (!is_record_line(line)) continue;
      IndexEntry entry = parse_index_line(line, pos, name, line_no);
      std::string lemma = entry.lemma;
      auto [it, inserted] = table.emplace(std::move(lemma), std::move(entry));
      if (!inserted) {
        throw IntegrityError(name + ": duplicate index entry for \"" +
                             it->first + "\"");
      }
    }
  }

  // Referential closure: pointer targets and index offsets must resolve.
  for (const Synset& synset : db.synsets_) {
    for (const Pointer& ptr : synset.pointers) {
      if (!db.index_of(ptr.target)) {
        char buf[96];
        std::snprintf(buf, sizeof(buf),
                      "dangling pointer: %08u %c -> %08u %c (symbol %s)",
                      synset.id.offset, pos_char(synset.id.pos),
                      ptr.target.offset, pos_char(ptr.target.pos),
                      ptr.symbol.c_str());
        throw IntegrityError(buf);
      }
    }
  }
  for (std::size_t fi = 0; fi < 4; ++fi) {
    for (const auto& [lemma, entry] : db.index_[fi]) {
      for (std::uint32_t offset : entry.synset_offsets) {
        if (!db.index_of(SynsetId{kFileParts[fi], offset})) {
          throw IntegrityError("index." + std::string(kFileSuffixes[fi]) +
                               ": entry \"" + lemma +
                               "\" references missing synset " +
                               std::to_string(offset));
        }
      }
    }
  }

  // Display names: first lemma + ss_type char + 1-based sense position in
  // the first lemma's index entry.
  db.display_names_.reserve(db.synsets_.size());
  for (const Synset& synset : db.synsets_) {
    std::string first = clean_lemma(synset.words.front().lemma);
    const IndexEntry* entry = db.find_index_entry(first, synset.id.pos);
    if (!entry) {
      throw IntegrityError("word \"" + first +
                           "\" has a synset but no index entry");
    }
    auto it = std::find(entry->synset_offsets.begin(),
                        entry->synset_offsets.end(), synset.id.offset);
    if (it == entry->synset_offsets.end()) {
      throw IntegrityError("index entry for \"" + first +
                           "\" does not list synset " +
                           std::to_string(synset.id.offset));
    }
    int sense = static_cast<int>(it - entry->synset_offsets.begin()) + 1;
    char buf[16];
    std::snprintf(buf, sizeof(buf), ".%c.%02d", pos_char(synset.ss_type),
                  sense);
    std::string name = first + buf;
    db.name_to_id_.emplace(name, synset.id);
    db.display_names_.push_back(std::move(name));
  }

  return db;
}

}  // namespace wndb
}  // namespace lexpand
