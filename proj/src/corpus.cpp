#include "lexpand/corpus.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <condition_variable>
#include <filesystem>
#include <map>
#include <mutex>
#include <thread>
#include <unordered_map>

#include "httplib.h"
#include "lexpand/errors.hpp"
#include "lexpand/util.hpp"

namespace lexpand {
namespace corpus {

namespace {

bool is_ascii_alpha(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

bool is_word_byte(unsigned char c) {
  if (c >= 0x80) return true;  // keep multi-byte characters inside words
  if (c >= 'a' && c <= 'z') return true;
  if (c >= 'A' && c <= 'Z') return true;
  if (c >= '0' && c <= '9') return true;
  return c == '_';
}

char ascii_lower(char c) {
  return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

void append_utf8(std::string& out, std::uint32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xc0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xe0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3f)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
  } else {
    out.push_back(static_cast<char>(0xf0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3f)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3f)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
  }
}

// Decodes the entity starting at html[i] ('&').  On success appends the
// decoded text and returns the index just past the entity; otherwise
// returns i (caller emits the '&' literally).
std::size_t decode_entity(std::string_view html, std::size_t i,
                          std::string& out) {
  std::size_t semi = html.find(';', i + 1);
  if (semi == std::string_view::npos || semi - i > 12) return i;
  std::string_view name = html.substr(i + 1, semi - i - 1);
  if (name.empty()) return i;
  if (name[0] == '#') {
    std::uint32_t cp = 0;
    bool ok = false;
    if (name.size() > 1 && (name[1] == 'x' || name[1] == 'X')) {
      for (char c : name.substr(2)) {
        if (c >= '0' && c <= '9') cp = cp * 16 + static_cast<std::uint32_t>(c - '0');
        else if (c >= 'a' && c <= 'f') cp = cp * 16 + static_cast<std::uint32_t>(c - 'a' + 10);
        else if (c >= 'A' && c <= 'F') cp = cp * 16 + static_cast<std::uint32_t>(c - 'A' + 10);
        else return i;
        ok = true;
      }
    } else {
      for (char c : name.substr(1)) {
        if (c < '0' || c > '9') return i;
        cp = cp * 10 + static_cast<std::uint32_t>(c - '0');
        ok = true;
      }
    }
    if (!ok || cp > 0x10ffff) return i;
    append_utf8(out, cp);
    return semi + 1;
  }
  static const std::unordered_map<std::string_view, std::string_view> kNamed = {
      {"amp", "&"},   {"lt", "<"},    {"gt", ">"},   {"quot", "\""},
      {"apos", "'"},  {"nbsp", " "},  {"mdash", "\xe2\x80\x94"},
      {"ndash", "\xe2\x80\x93"},      {"hellip", "\xe2\x80\xa6"},
  };
  auto it = kNamed.find(name);
  if (it == kNamed.end()) return i;
  out += it->second;
  return semi + 1;
}

std::string decode_entities(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] == '&') {
      std::size_t next = decode_entity(text, i, out);
      if (next != i) {
        i = next;
        continue;
      }
    }
    out.push_back(text[i]);
    ++i;
  }
  return out;
}

struct TagInfo {
  std::string name;  // lowercased, without the leading '/'
  bool closing = false;
  std::vector<std::pair<std::string, std::string>> attributes;
  std::size_t end = 0;  // index just past the closing '>'
};

// Parses a tag starting at html[start] == '<'.  Never throws: on truncated
// input it consumes to the end of the text.
TagInfo parse_tag(std::string_view html, std::size_t start) {
  TagInfo tag;
  std::size_t i = start + 1;
  if (i < html.size() && html[i] == '/') {
    tag.closing = true;
    ++i;
  }
  while (i < html.size() && (is_ascii_alpha(html[i]) ||
                             (html[i] >= '0' && html[i] <= '9'))) {
    tag.name.push_back(ascii_lower(html[i]));
    ++i;
  }
  while (i < html.size() && html[i] != '>') {
    if (html[i] == ' ' || html[i] == '\t' || html[i] == '\n' ||
        html[i] == '\r' || html[i] == '/') {
      ++i;
      continue;
    }
    // Attribute name.
    std::string name;
    while (i < html.size() && html[i] != '=' && html[i] != '>' &&
           html[i] != ' ' && html[i] != '\t' && html[i] != '\n' &&
           html[i] != '\r' && html[i] != '/') {
      name.push_back(ascii_lower(html[i]));
      ++i;
    }
    while (i < html.size() && (html[i] == ' ' || html[i] == '\t' ||
                               html[i] == '\n' || html[i] == '\r')) {
      ++i;
    }
    std::string value;
    if (i < html.size() && html[i] == '=') {
      ++i;
      while (i < html.size() && (html[i] == ' ' || html[i] == '\t' ||
                                 html[i] == '\n' || html[i] == '\r')) {
        ++i;
      }
      if (i < html.size() && (html[i] == '"' || html[i] == '\'')) {
        char quote = html[i++];
        while (i < html.size() && html[i] != quote) value.push_back(html[i++]);
        if (i < html.size()) ++i;  // closing quote
      } else {
        while (i < html.size() && html[i] != '>' && html[i] != ' ' &&
               html[i] != '\t' && html[i] != '\n' && html[i] != '\r') {
          value.push_back(html[i++]);
        }
      }
    }
    if (!name.empty()) tag.attributes.emplace_back(std::move(name), std::move(value));
  }
  tag.end = i < html.size() ? i + 1 : html.size();
  return tag;
}

bool has_scheme(std::string_view ref) {
  if (ref.empty() || !is_ascii_alpha(ref[0])) return false;
  for (std::size_t i = 1; i < ref.size(); ++i) {
    char c = ref[i];
    if (c == ':') return true;
    if (!is_ascii_alpha(c) && !(c >= '0' && c <= '9') && c != '+' &&
        c != '-' && c != '.') {
      return false;
    }
  }
  return false;
}

std::string normalize_path(std::string_view path) {
  std::vector<std::string_view> kept;
  bool absolute = !path.empty() && path.front() == '/';
  bool trailing_slash = !path.empty() && path.back() == '/';
  for (std::string_view part : util::split(path, '/')) {
    if (part.empty() || part == ".") continue;
    if (part == "..") {
      if (!kept.empty()) kept.pop_back();
      continue;
    }
    kept.push_back(part);
  }
  std::string out = absolute ? "/" : "";
  for (std::size_t i = 0; i < kept.size(); ++i) {
    if (i) out.push_back('/');
    out += kept[i];
  }
  if (trailing_slash && !kept.empty()) out.push_back('/');
  if (out.empty()) out = absolute ? "/" : "";
  return out;
}

struct UrlParts {
  std::string_view scheme;     // "https"
  std::string_view authority;  // "host:port"
  std::string_view path;       // "/a/b"
  std::string_view query;      // "?q" (with '?') or empty
};

UrlParts split_url(std::string_view url) {
  UrlParts parts;
  std::size_t scheme_end = url.find("://");
  std::size_t authority_start = 0;
  if (scheme_end != std::string_view::npos) {
    parts.scheme = url.substr(0, scheme_end);
    authority_start = scheme_end + 3;
  }
  std::size_t path_start = url.find_first_of("/?#", authority_start);
  if (path_start == std::string_view::npos) path_start = url.size();
  parts.authority = url.substr(authority_start, path_start - authority_start);
  std::size_t frag = url.find('#', path_start);
  std::size_t path_end = url.find('?', path_start);
  std::size_t stop = std::min(frag == std::string_view::npos ? url.size() : frag,
                              url.size());
  if (path_end == std::string_view::npos || path_end > stop) path_end = stop;
  parts.path = url.substr(path_start, path_end - path_start);
  parts.query = url.substr(path_end, stop - path_end);
  return parts;
}

}  // namespace

std::string resolve_url(std::string_view base, std::string_view ref) {
  if (ref.empty()) return std::string(base);
  if (has_scheme(ref)) return std::string(ref);
  UrlParts b = split_url(base);
  std::string prefix = std::string(b.scheme);
  if (!prefix.empty()) prefix += "://";
  if (ref.starts_with("//")) {
    return std::string(b.scheme) + ":" + std::string(ref);
  }
  if (ref.front() == '/') {
    return prefix + std::string(b.authority) + normalize_path(ref);
  }
  if (ref.front() == '?') {
    return prefix + std::string(b.authority) + std::string(b.path) +
           std::string(ref);
  }
  if (ref.front() == '#') {
    return prefix + std::string(b.authority) + std::string(b.path) +
           std::string(b.query) + std::string(ref);
  }
  // Relative path: replace the last segment of the base path.
  std::string_view dir = b.path;
  std::size_t last_slash = dir.rfind('/');
  dir = last_slash == std::string_view::npos ? "/" : dir.substr(0, last_slash + 1);
  return prefix + std::string(b.authority) +
         normalize_path(std::string(dir) + std::string(ref));
}

std::vector<std::string> extract_links(std::string_view html,
                                       std::string_view base) {
  std::vector<std::string> links;
  std::size_t i = 0;
  while (i < html.size()) {
    if (html[i] != '<') {
      ++i;
      continue;
    }
    if (html.substr(i).starts_with("<!--")) {
      std::size_t end = html.find("-->", i + 4);
      i = end == std::string_view::npos ? html.size() : end + 3;
      continue;
    }
    if (i + 1 >= html.size() ||
        (!is_ascii_alpha(html[i + 1]) && html[i + 1] != '/' &&
         html[i + 1] != '!' && html[i + 1] != '?')) {
      ++i;  // stray '<'
      continue;
    }
    TagInfo tag = parse_tag(html, i);
    i = tag.end;
    if (tag.closing || tag.name != "a") continue;
    for (const auto& [name, value] : tag.attributes) {
      if (name == "href") {
        std::string href = decode_entities(value);
        links.push_back(base.empty() ? href : resolve_url(base, href));
        break;
      }
    }
  }
  return links;
}

std::vector<std::string> filter_sublinks(
    const std::vector<std::string>& links,
    const std::vector<std::string>& keywords) {
  if (keywords.empty()) {
    throw ConfigError("sublink filtering needs at least one keyword");
  }
  std::vector<std::string> lowered;
  lowered.reserve(keywords.size());
  for (const std::string& k : keywords) lowered.push_back(util::to_lower_ascii(k));

  std::vector<std::string> out;
  for (const std::string& link : links) {
    std::string low = util::to_lower_ascii(link);
    for (const std::string& keyword : lowered) {
      if (!keyword.empty() && low.find(keyword) != std::string::npos) {
        out.push_back(link);  // first match wins; later keywords are skipped
        break;
      }
    }
  }
  return out;
}

std::string html_to_text(std::string_view html) {
  std::string out;
  out.reserve(html.size() / 2);
  std::size_t i = 0;

  // Copies only the newlines of a consumed region, keeping line numbers
  // aligned between input and output.
  auto keep_newlines = [&](std::size_t from, std::size_t to) {
    for (std::size_t k = from; k < to; ++k) {
      if (html[k] == '\n') out.push_back('\n');
    }
  };

  while (i < html.size()) {
    char c = html[i];
    if (c == '<') {
      if (html.substr(i).starts_with("<!--")) {
        std::size_t end = html.find("-->", i + 4);
        std::size_t stop = end == std::string_view::npos ? html.size() : end + 3;
        keep_newlines(i, stop);
        out.push_back(' ');
        i = stop;
        continue;
      }
      if (i + 1 < html.size() &&
          (is_ascii_alpha(html[i + 1]) || html[i + 1] == '/' ||
           html[i + 1] == '!' || html[i + 1] == '?')) {
        TagInfo tag = parse_tag(html, i);
        keep_newlines(i, tag.end);
        out.push_back(' ');
        i = tag.end;
        if (!tag.closing && (tag.name == "script" || tag.name == "style")) {
          // Drop the element content (its newlines survive).
          std::string close = "</" + tag.name;
          std::size_t at = i;
          std::size_t content_end = html.size();
          std::size_t skip_to = html.size();
          while (at + close.size() <= html.size()) {
            bool match = true;
            for (std::size_t k = 0; k < close.size(); ++k) {
              if (ascii_lower(html[at + k]) != close[k]) {
                match = false;
                break;
              }
            }
            if (match) {
              content_end = at;
              std::size_t gt = html.find('>', at);
              skip_to = gt == std::string_view::npos ? html.size() : gt + 1;
              break;
            }
            ++at;
          }
          keep_newlines(i, skip_to);
          out.push_back(' ');
          (void)content_end;
          i = skip_to;
        }
        continue;
      }
      out.push_back('<');
      ++i;
      continue;
    }
    if (c == '&') {
      std::size_t next = decode_entity(html, i, out);
      if (next != i) {
        i = next;
        continue;
      }
    }
    out.push_back(c);
    ++i;
  }
  return out;
}

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::size_t line_start = 0;
  while (line_start <= text.size()) {
    std::size_t nl = text.find('\n', line_start);
    std::string_view line = nl == std::string_view::npos
                                ? text.substr(line_start)
                                : text.substr(line_start, nl - line_start);

    std::size_t first_unigram = tokens.size();
    std::size_t i = 0;
    while (i < line.size()) {
      if (!is_word_byte(static_cast<unsigned char>(line[i]))) {
        ++i;
        continue;
      }
      std::size_t begin = i;
      while (i < line.size() && is_word_byte(static_cast<unsigned char>(line[i]))) {
        ++i;
      }
      std::string token;
      token.reserve(i - begin);
      for (std::size_t k = begin; k < i; ++k) token.push_back(ascii_lower(line[k]));
      tokens.push_back(std::move(token));
    }
    std::size_t line_unigrams = tokens.size() - first_unigram;
    for (std::size_t k = 0; k + 1 < line_unigrams; ++k) {
      tokens.push_back(tokens[first_unigram + k] + "_" +
                       tokens[first_unigram + k + 1]);
    }

    if (nl == std::string_view::npos) break;
    line_start = nl + 1;
  }
  return tokens;
}

std::size_t count_unigrams(std::string_view text) {
  std::size_t count = 0;
  bool in_word = false;
  for (unsigned char c : text) {
    bool w = is_word_byte(c) && c != '\n';
    if (c == '\n') w = false;
    if (w && !in_word) ++count;
    in_word = w;
  }
  return count;
}

namespace {

// Shared retrieval for fetch()/fetch_raw(); reports the Content-Type header
// (http only) so the caller can decide whether the body is HTML.
std::string fetch_bytes(const FetchSource& source, const std::string& id,
                        std::string* content_type) {
  if (source.kind == FetchSource::Kind::kLocalFile) {
    std::string path = source.root.empty() ? id : source.root + "/" + id;
    try {
      return util::read_text_file(path);
    } catch (const LoadError& e) {
      throw FetchError(e.what());
    }
  }

  UrlParts parts = split_url(id);
  if (parts.scheme.empty() || parts.authority.empty()) {
    throw FetchError("not an absolute URL: " + id);
  }
#ifndef CPPHTTPLIB_OPENSSL_SUPPORT
  if (parts.scheme == "https") {
    throw FetchError("https support not built in: " + id);
  }
#endif
  std::string origin =
      std::string(parts.scheme) + "://" + std::string(parts.authority);
  httplib::Client client(origin);
  client.set_follow_location(true);
  std::string target = std::string(parts.path);
  if (target.empty()) target = "/";
  target += std::string(parts.query);
  httplib::Result res = client.Get(target);
  if (!res) {
    throw FetchError("fetch failed for " + id + ": " +
                     httplib::to_string(res.error()));
  }
  if (res->status < 200 || res->status >= 300) {
    throw FetchError("fetch failed for " + id + ": HTTP " +
                     std::to_string(res->status));
  }
  if (content_type != nullptr) {
    *content_type = res->get_header_value("Content-Type");
  }
  return res->body;
}

}  // namespace

std::string fetch_raw(const FetchSource& source, const std::string& id) {
  return fetch_bytes(source, id, nullptr);
}

Document fetch(const FetchSource& source, const std::string& id) {
  std::string low_id = util::to_lower_ascii(id);
  bool looks_html = low_id.ends_with(".html") || low_id.ends_with(".htm");

  std::string content_type;
  std::string body = fetch_bytes(source, id, &content_type);
  bool html = looks_html ||
              content_type.find("text/html") != std::string::npos;
  return Document{id, html ? html_to_text(body) : std::move(body)};
}

FetchReport fetch_all(const FetchSource& source,
                      const std::vector<std::string>& ids) {
  struct Slot {
    bool ok = false;
    Document doc;
    std::string error;
  };
  std::vector<Slot> slots(ids.size());

  // Politeness bookkeeping: one earliest-allowed instant per host.
  std::mutex host_mutex;
  std::map<std::string, std::chrono::steady_clock::time_point> next_allowed;
  auto wait_for_host = [&](const std::string& id) {
    if (source.kind == FetchSource::Kind::kLocalFile ||
        source.per_host_delay_ms <= 0) {
      return;
    }
    std::string host(split_url(id).authority);
    while (true) {
      std::chrono::steady_clock::time_point now =
          std::chrono::steady_clock::now();
      std::unique_lock<std::mutex> lock(host_mutex);
      auto it = next_allowed.find(host);
      if (it == next_allowed.end() || it->second <= now) {
        next_allowed[host] =
            now + std::chrono::milliseconds(source.per_host_delay_ms);
        return;
      }
      std::chrono::steady_clock::time_point until = it->second;
      lock.unlock();
      std::this_thread::sleep_until(until);
    }
  };

  std::atomic<std::size_t> cursor{0};
  auto worker = [&] {
    while (true) {
      std::size_t i = cursor.fetch_add(1);
      if (i >= ids.size()) return;
      try {
        wait_for_host(ids[i]);
        slots[i].doc = fetch(source, ids[i]);
        slots[i].ok = true;
      } catch (const Error& e) {
        slots[i].error = e.what();
      }
    }
  };

  std::size_t threads = std::min<std::size_t>(
      std::max(source.max_concurrent, 1), std::max<std::size_t>(ids.size(), 1));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }

  FetchReport report;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (slots[i].ok) {
      report.documents.push_back(std::move(slots[i].doc));
    } else {
      report.errors.emplace_back(ids[i], std::move(slots[i].error));
    }
  }
  return report;
}

std::vector<std::string> corpus_ids(const std::string& directory) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(directory)) {
    throw LoadError("not a corpus directory: " + directory);
  }
  fs::path manifest = fs::path(directory) / "manifest.txt";
  std::vector<std::string> ids;
  if (fs::exists(manifest)) {
    std::string content = util::read_text_file(manifest.string());
    for (std::string_view line : util::split_lines(content)) {
      std::string_view trimmed = util::trim(line);
      if (trimmed.empty() || trimmed.front() == '#') continue;
      ids.emplace_back(trimmed);
    }
    return ids;
  }
  for (const fs::directory_entry& entry : fs::directory_iterator(directory)) {
    if (!entry.is_regular_file()) continue;
    std::string ext = util::to_lower_ascii(entry.path().extension().string());
    if (ext == ".txt" || ext == ".htm" || ext == ".html") {
      ids.push_back(entry.path().filename().string());
    }
  }
  std::sort(ids.begin(), ids.end());
  return ids;
}

FrequencyMatrix count_frequencies(const std::vector<Document>& documents,
                                  const std::vector<std::string>& searchwords) {
  if (searchwords.empty()) {
    throw ConfigError("count_frequencies needs at least one searchword");
  }
  FrequencyMatrix matrix;
  matrix.words = searchwords;
  matrix.doc_ids.reserve(documents.size());
  matrix.counts.reserve(documents.size());
  matrix.token_totals.reserve(documents.size());
  for (const Document& doc : documents) {
    std::unordered_map<std::string, long long> bag;
    for (std::string& token : tokenize(doc.text)) {
      ++bag[std::move(token)];
    }
    std::vector<long long> row;
    row.reserve(searchwords.size());
    for (const std::string& word : searchwords) {
      auto it = bag.find(word);
      row.push_back(it == bag.end() ? 0 : it->second);
    }
    matrix.doc_ids.push_back(doc.id);
    matrix.counts.push_back(std::move(row));
    matrix.token_totals.push_back(count_unigrams(doc.text));
  }
  return matrix;
}

double sparsity(const FrequencyMatrix& matrix) {
  std::size_t cells = 0;
  std::size_t zeros = 0;
  for (const auto& row : matrix.counts) {
    cells += row.size();
    for (long long v : row) {
      if (v == 0) ++zeros;
    }
  }
  if (cells == 0) return 0.0;
  return static_cast<double>(zeros) / static_cast<double>(cells);
}

void save_matrix_csv(const FrequencyMatrix& matrix, const std::string& path) {
  std::string out;
  std::vector<std::string> header;
  header.reserve(matrix.words.size() + 1);
  header.emplace_back("doc_id");
  header.insert(header.end(), matrix.words.begin(), matrix.words.end());
  out += util::csv_join(header);
  out.push_back('\n');
  for (std::size_t i = 0; i < matrix.doc_ids.size(); ++i) {
    std::vector<std::string> row;
    row.reserve(matrix.words.size() + 1);
    row.push_back(matrix.doc_ids[i]);
    for (long long v : matrix.counts[i]) row.push_back(std::to_string(v));
    out += util::csv_join(row);
    out.push_back('\n');
  }
  util::write_text_file(path, out);
}

FrequencyMatrix load_matrix_csv(const std::string& path) {
  std::string content = util::read_text_file(path);
  std::vector<std::string_view> lines = util::split_lines(content);
  if (lines.empty()) {
    throw ParseError(path, 1, 1, "missing matrix header");
  }
  std::vector<std::string> header = util::csv_split(lines[0]);
  if (header.empty() || header[0] != "doc_id") {
    throw ParseError(path, 1, 1, "matrix header must start with doc_id");
  }
  FrequencyMatrix matrix;
  matrix.words.assign(header.begin() + 1, header.end());
  for (std::size_t li = 1; li < lines.size(); ++li) {
    if (lines[li].empty()) continue;
    std::vector<std::string> fields = util::csv_split(lines[li]);
    if (fields.size() != header.size()) {
      throw ParseError(path, li + 1, 1, "row width does not match header");
    }
    std::vector<long long> row;
    row.reserve(fields.size() - 1);
    for (std::size_t k = 1; k < fields.size(); ++k) {
      const std::string& f = fields[k];
      if (f.empty() ||
          !std::all_of(f.begin(), f.end(),
                       [](char c) { return c >= '0' && c <= '9'; })) {
        throw ParseError(path, li + 1, 1, "count is not a non-negative integer");
      }
      row.push_back(std::stoll(f));
    }
    matrix.doc_ids.push_back(fields[0]);
    matrix.counts.push_back(std::move(row));
  }
  return matrix;
}

}  // namespace corpus
}  // namespace lexpand
