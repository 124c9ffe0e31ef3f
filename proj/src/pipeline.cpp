#include "lexpand/pipeline.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <utility>

#include "lexpand/errors.hpp"
#include "lexpand/similarity.hpp"
#include "lexpand/taxonomy.hpp"
#include "lexpand/util.hpp"
#include "lexpand/wndb.hpp"

namespace lexpand {
namespace pipeline {

namespace {

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "on" || value == "1") return true;
  if (value == "false" || value == "off" || value == "0") return false;
  throw ConfigError("bad boolean for '" + key + "': " + value);
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("bad number for '" + key + "': " + value);
  }
}

long long parse_int(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    long long v = std::stoll(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("bad integer for '" + key + "': " + value);
  }
}

std::vector<std::string> parse_list(const std::string& value) {
  std::vector<std::string> items;
  for (std::string_view piece : util::split(value, ',')) {
    std::string item(util::trim(piece));
    if (!item.empty()) items.push_back(std::move(item));
  }
  return items;
}

std::string join_list(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i > 0) out += ",";
    out += items[i];
  }
  return out;
}

const char* order_name(lexicon::ExpansionConfig::Order order) {
  switch (order) {
    case lexicon::ExpansionConfig::Order::kPosInterleaved:
      return "pos-interleaved";
    case lexicon::ExpansionConfig::Order::kAdjFirst:
      return "adj-first";
    case lexicon::ExpansionConfig::Order::kFile:
      break;
  }
  return "file";
}

lexicon::ExpansionConfig::Order parse_order(const std::string& value) {
  if (value == "file") return lexicon::ExpansionConfig::Order::kFile;
  if (value == "pos-interleaved") {
    return lexicon::ExpansionConfig::Order::kPosInterleaved;
  }
  if (value == "adj-first") return lexicon::ExpansionConfig::Order::kAdjFirst;
  throw ConfigError("bad order (want file, pos-interleaved or adj-first): " +
                    value);
}

void apply_key(RunConfig& config, const std::string& key,
               const std::string& value) {
  if (key == "wordnet_dir") {
    config.wordnet_dir = value;
  } else if (key == "seeds") {
    config.seeds_path = value;
  } else if (key == "corpus_dir") {
    config.corpus_dir = value;
  } else if (key == "url") {
    config.hub_url = value;
  } else if (key == "keywords") {
    config.keywords = parse_list(value);
  } else if (key == "out_dir") {
    config.out_dir = value;
  } else if (key == "tau_good") {
    config.expansion.tau_good = parse_double(key, value);
  } else if (key == "tau_bad") {
    config.expansion.tau_bad = parse_double(key, value);
  } else if (key == "limit") {
    config.expansion.synset_limit =
        static_cast<std::size_t>(parse_int(key, value));
  } else if (key == "cap_good") {
    config.expansion.cap_good = static_cast<int>(parse_int(key, value));
  } else if (key == "cap_bad") {
    config.expansion.cap_bad = static_cast<int>(parse_int(key, value));
  } else if (key == "dedup") {
    config.expansion.dedup = parse_bool(key, value);
  } else if (key == "live_growth") {
    config.expansion.live_growth = parse_bool(key, value);
  } else if (key == "order") {
    config.expansion.order = parse_order(value);
  } else if (key == "sample") {
    config.expansion.sample = parse_bool(key, value);
  } else if (key == "eps1") {
    config.thresholds.eps1 = parse_double(key, value);
  } else if (key == "eps2") {
    config.thresholds.eps2 = parse_double(key, value);
  } else if (key == "clauses") {
    config.clauses = parse_bool(key, value);
  } else if (key == "swap_axes") {
    config.swap_axes = parse_bool(key, value);
  } else if (key == "svg") {
    config.emit_svg = parse_bool(key, value);
  } else if (key == "random_seed") {
    config.random_seed = static_cast<std::uint64_t>(parse_int(key, value));
  } else if (key == "jobs") {
    config.jobs = static_cast<int>(parse_int(key, value));
  } else {
    throw ConfigError("unknown config key: " + key);
  }
}

}  // namespace

RunConfig load_run_config(const std::string& path) {
  RunConfig config;
  std::string content = util::read_text_file(path);
  std::vector<std::string_view> lines = util::split_lines(content);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::string_view line = util::trim(lines[i]);
    if (line.empty() || line[0] == '#') continue;
    std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(path + ":" + std::to_string(i + 1) +
                        ": expected 'key = value'");
    }
    std::string key(util::trim(line.substr(0, eq)));
    std::string value(util::trim(line.substr(eq + 1)));
    if (key.empty()) {
      throw ConfigError(path + ":" + std::to_string(i + 1) + ": empty key");
    }
    try {
      apply_key(config, key, value);
    } catch (const ConfigError& e) {
      throw ConfigError(path + ":" + std::to_string(i + 1) + ": " + e.what());
    }
  }
  return config;
}

void save_run_config(const RunConfig& config, const std::string& path) {
  std::ostringstream out;
  out << "wordnet_dir = " << config.wordnet_dir << "\n";
  out << "seeds = " << config.seeds_path << "\n";
  out << "corpus_dir = " << config.corpus_dir << "\n";
  out << "url = " << config.hub_url << "\n";
  out << "keywords = " << join_list(config.keywords) << "\n";
  out << "out_dir = " << config.out_dir << "\n";
  out << "tau_good = " << util::format_real(config.expansion.tau_good) << "\n";
  out << "tau_bad = " << util::format_real(config.expansion.tau_bad) << "\n";
  out << "limit = " << config.expansion.synset_limit << "\n";
  out << "cap_good = " << config.expansion.cap_good << "\n";
  out << "cap_bad = " << config.expansion.cap_bad << "\n";
  out << "dedup = " << (config.expansion.dedup ? "true" : "false") << "\n";
  out << "live_growth = " << (config.expansion.live_growth ? "true" : "false")
      << "\n";
  out << "order = " << order_name(config.expansion.order) << "\n";
  out << "sample = " << (config.expansion.sample ? "true" : "false") << "\n";
  out << "eps1 = " << util::format_real(config.thresholds.eps1) << "\n";
  out << "eps2 = " << util::format_real(config.thresholds.eps2) << "\n";
  out << "clauses = " << (config.clauses ? "true" : "false") << "\n";
  out << "swap_axes = " << (config.swap_axes ? "true" : "false") << "\n";
  out << "svg = " << (config.emit_svg ? "true" : "false") << "\n";
  out << "random_seed = " << config.random_seed << "\n";
  out << "jobs = " << config.jobs << "\n";
  util::write_text_file(path, out.str());
}

std::string results_csv(const std::vector<ResultsRow>& rows) {
  std::string out = "doc_id,label,p_good,p_bad,strength,x,y,avg_sign\n";
  for (const ResultsRow& row : rows) {
    std::vector<std::string> fields;
    fields.push_back(row.doc_id);
    fields.push_back(classifier::to_string(row.result.label));
    fields.push_back(util::format_real(row.result.p_good));
    fields.push_back(util::format_real(row.result.p_bad));
    fields.push_back(util::format_real(row.result.strength));
    fields.push_back(util::format_real(row.result.point.x));
    fields.push_back(util::format_real(row.result.point.y));
    fields.push_back(row.has_avg_sign ? util::format_real(row.avg_sign) : "");
    out += util::csv_join(fields);
    out += "\n";
  }
  return out;
}

std::vector<svgplot::ScatterPoint> load_results_points(
    const std::string& path) {
  std::string content = util::read_text_file(path);
  std::vector<std::string_view> lines = util::split_lines(content);
  if (lines.empty()) throw ParseError(path, 1, 1, "missing results header");
  std::vector<std::string> header = util::csv_split(lines[0]);
  if (header.size() < 7 || header[0] != "doc_id" || header[1] != "label" ||
      header[5] != "x" || header[6] != "y") {
    throw ParseError(path, 1, 1, "not a results file header");
  }
  std::vector<svgplot::ScatterPoint> points;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    std::vector<std::string> fields = util::csv_split(lines[i]);
    if (fields.size() != header.size()) {
      throw ParseError(path, i + 1, 1, "row width differs from header");
    }
    std::optional<classifier::Label> label =
        classifier::label_from_string(fields[1]);
    if (!label.has_value()) {
      throw ParseError(path, i + 1, 1, "unknown label: " + fields[1]);
    }
    svgplot::ScatterPoint point;
    point.label = *label;
    try {
      point.x = std::stod(fields[5]);
      point.y = std::stod(fields[6]);
    } catch (const std::exception&) {
      throw ParseError(path, i + 1, 1, "bad coordinate in results row");
    }
    points.push_back(point);
  }
  return points;
}

void run_pipeline(const RunConfig& config, std::ostream& log) {
  namespace fs = std::filesystem;
  using Clock = std::chrono::steady_clock;

  std::string wordnet_dir = config.wordnet_dir;
  if (wordnet_dir.empty()) {
    const char* env = std::getenv("LEXPAND_WORDNET_DIR");
    if (env != nullptr) wordnet_dir = env;
  }
  if (wordnet_dir.empty()) {
    throw ConfigError("wordnet_dir is required (flag, config or LEXPAND_WORDNET_DIR)");
  }
  if (config.seeds_path.empty()) throw ConfigError("seeds is required");
  bool local_corpus = !config.corpus_dir.empty();
  if (!local_corpus && config.hub_url.empty()) {
    throw ConfigError("either corpus_dir or url is required");
  }
  if (!local_corpus && config.keywords.empty()) {
    throw ConfigError("keywords are required with url");
  }
  if (config.thresholds.overlap_possible()) {
    log << "warning: eps1 + eps2 < 1, both labels can pass; ties break to "
           "the larger proportion\n";
  }

  fs::create_directories(config.out_dir);
  auto out_path = [&](const char* name) {
    return (fs::path(config.out_dir) / name).string();
  };

  // --- expand ---------------------------------------------------------
  Clock::time_point t0 = Clock::now();
  wndb::WordNetDatabase db = wndb::load_database(wordnet_dir);
  taxonomy::TaxonomyGraph graph(db);
  double load_seconds =
      std::chrono::duration<double>(Clock::now() - t0).count();
  const wndb::DatabaseCounts& counts = db.counts();
  log << "loaded " << counts.total() << " synsets (" << counts.nouns
      << " noun, " << counts.verbs << " verb, " << counts.adjectives
      << " adjective, " << counts.adverbs << " adverb) in "
      << util::format_real(load_seconds) << "s\n";

  lexicon::SeedLexicon seeds = lexicon::load_lexicon(config.seeds_path);
  lexicon::ExpansionConfig expansion = config.expansion;
  expansion.seed = config.random_seed;
  expansion.jobs = config.jobs;
  t0 = Clock::now();
  lexicon::ExpansionResult expanded =
      lexicon::expand_by_sweep(db, graph, seeds, expansion);
  double sweep_seconds =
      std::chrono::duration<double>(Clock::now() - t0).count();
  const lexicon::ExpansionReport& report = expanded.report;
  log << "sweep examined " << report.examined << " synsets in "
      << util::format_real(sweep_seconds) << "s: appended "
      << report.appended_good << " good, " << report.appended_bad
      << " bad, skipped " << report.skipped << "\n";
  lexicon::save_lexicon(expanded.lexicon, out_path("lexicon.lex"));

  // --- score ----------------------------------------------------------
  corpus::FetchSource source;
  std::vector<std::string> ids;
  if (local_corpus) {
    source.kind = corpus::FetchSource::Kind::kLocalFile;
    source.root = config.corpus_dir;
    ids = corpus::corpus_ids(config.corpus_dir);
  } else {
    source.kind = corpus::FetchSource::Kind::kHttp;
    std::string hub_html = corpus::fetch_raw(source, config.hub_url);
    std::vector<std::string> links =
        corpus::extract_links(hub_html, config.hub_url);
    ids = corpus::filter_sublinks(links, config.keywords);
    log << "hub page has " << links.size() << " links, " << ids.size()
        << " match the keywords\n";
  }
  corpus::FetchReport fetched = corpus::fetch_all(source, ids);
  for (const auto& [id, message] : fetched.errors) {
    log << "fetch error: " << id << ": " << message << "\n";
  }
  log << "fetched " << fetched.documents.size() << " of " << ids.size()
      << " documents\n";

  std::vector<std::string> searchwords =
      expanded.lexicon.words(lexicon::Side::kGood);
  std::vector<std::string> bad_words =
      expanded.lexicon.words(lexicon::Side::kBad);
  searchwords.insert(searchwords.end(), bad_words.begin(), bad_words.end());
  corpus::FrequencyMatrix matrix =
      corpus::count_frequencies(fetched.documents, searchwords);
  corpus::save_matrix_csv(matrix, out_path("matrix.csv"));
  log << "matrix is " << matrix.doc_ids.size() << " x " << matrix.words.size()
      << ", sparsity " << util::format_real(corpus::sparsity(matrix)) << "\n";

  // --- classify -------------------------------------------------------
  std::vector<ResultsRow> rows;
  rows.reserve(matrix.doc_ids.size());
  for (std::size_t i = 0; i < matrix.doc_ids.size(); ++i) {
    ResultsRow row;
    row.doc_id = matrix.doc_ids[i];
    row.result = classifier::classify_row(matrix.counts[i], expanded.lexicon,
                                          config.thresholds);
    if (config.clauses) {
      row.has_avg_sign = true;
      row.avg_sign = classifier::document_average_sign(
          fetched.documents[i].text, expanded.lexicon);
    }
    rows.push_back(std::move(row));
  }
  util::write_text_file(out_path("results.csv"), results_csv(rows));

  // --- plot -----------------------------------------------------------
  std::vector<svgplot::ScatterPoint> points;
  points.reserve(rows.size());
  for (const ResultsRow& row : rows) {
    points.push_back(svgplot::ScatterPoint{row.result.point.x,
                                           row.result.point.y,
                                           row.result.label});
  }
  util::write_text_file(out_path("scatter.csv"),
                        svgplot::scatter_csv(points, config.swap_axes));
  if (config.emit_svg) {
    util::write_text_file(
        out_path("scatter.svg"),
        svgplot::render_scatter_svg(points, config.swap_axes));
  }
  log << "wrote lexicon.lex, matrix.csv, results.csv, scatter.csv"
      << (config.emit_svg ? ", scatter.svg" : "") << " to " << config.out_dir
      << "\n";
}

}  // namespace pipeline
}  // namespace lexpand
