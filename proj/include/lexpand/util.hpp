// util.hpp -- small shared helpers: file IO, string munging, CSV fields,
// deterministic number formatting, and a deterministic RNG wrapper.

#ifndef LEXPAND_UTIL_HPP
#define LEXPAND_UTIL_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace lexpand {
namespace util {

// Reads a whole file into memory.  Throws LoadError when the file cannot be
// opened or read.
std::string read_text_file(const std::string& path);

// Writes `content` to `path`, replacing any existing file.  Throws LoadError
// on failure.
void write_text_file(const std::string& path, std::string_view content);

bool file_exists(const std::string& path);

// Splits on '\n'.  A trailing newline does not produce a final empty line.
// '\r' preceding a '\n' is stripped.
std::vector<std::string_view> split_lines(std::string_view text);

// Splits on single spaces; consecutive separators yield empty fields.
std::vector<std::string_view> split(std::string_view text, char sep);

std::string_view trim(std::string_view s);
std::string to_lower_ascii(std::string_view s);

// Lowercases and replaces spaces with underscores: the canonical lemma form
// used for dictionary lookups.
std::string normalize_word(std::string_view s);

// Fixed-point formatting used for every real number the library writes:
// six fractional digits with trailing zeros (and a trailing dot) removed,
// so 0.75 -> "0.75", 6.0 -> "6", 1.0/3 -> "0.333333".  Never emits "-0".
std::string format_real(double value);

// CSV with minimal quoting: fields containing ',', '"', '\n' or '\r' are
// double-quoted with embedded quotes doubled; everything else is verbatim.
std::string csv_escape(std::string_view field);
std::string csv_join(const std::vector<std::string>& fields);
// Parses one logical CSV line (no embedded newlines) into fields.
std::vector<std::string> csv_split(std::string_view line);

// Deterministic pseudo-random source.  The bounded draw is implemented by
// hand (modulo reduction) so that sequences are identical across platforms
// and standard-library versions for a given seed.
class DeterministicRng {
 public:
  explicit DeterministicRng(std::uint64_t seed);

  std::uint64_t next_u64();
  // Uniform-ish draw in [0, bound); bound must be > 0.  The modulo bias is
  // irrelevant for the bounds used here and determinism matters more.
  std::uint64_t next_below(std::uint64_t bound);

  // Fisher-Yates shuffle using next_below; deterministic for a given seed.
  template <typename T>
  void shuffle(std::vector<T>& items) {
    if (items.size() < 2) return;
    for (std::size_t i = items.size() - 1; i > 0; --i) {
      std::size_t j = static_cast<std::size_t>(next_below(i + 1));
      std::swap(items[i], items[j]);
    }
  }

 private:
  std::uint64_t state_;
};

}  // namespace util
}  // namespace lexpand

#endif  // LEXPAND_UTIL_HPP
