// lexpand_module.cpp -- python bindings for the main operations: dictionary
// loading and taxonomy queries, similarity measures, lexicon expansion,
// corpus counting, classification, scatter rendering, and the one-shot
// pipeline.  Synsets cross the boundary as display names ("dog.n.01");
// matrices and reports cross as plain lists, tuples and dicts.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "lexpand/classifier.hpp"
#include "lexpand/corpus.hpp"
#include "lexpand/errors.hpp"
#include "lexpand/lexicon.hpp"
#include "lexpand/pipeline.hpp"
#include "lexpand/similarity.hpp"
#include "lexpand/svgplot.hpp"
#include "lexpand/taxonomy.hpp"
#include "lexpand/wndb.hpp"

namespace py = pybind11;

namespace {

using namespace lexpand;

wndb::Pos parse_pos(const std::string& pos) {
  if (pos.size() == 1)
    if (auto parsed = wndb::pos_from_char(pos[0])) return *parsed;
  throw py::value_error("part of speech must be one of n, v, a, r");
}

similarity::Variant parse_variant(const std::string& variant) {
  if (variant == "paper") return similarity::Variant::kPaper;
  if (variant == "standard") return similarity::Variant::kStandard;
  throw py::value_error("variant must be 'paper' or 'standard'");
}

lexicon::ExpansionConfig::Order parse_order(const std::string& order) {
  using Order = lexicon::ExpansionConfig::Order;
  if (order == "file") return Order::kFile;
  if (order == "pos-interleaved") return Order::kPosInterleaved;
  if (order == "adj-first") return Order::kAdjFirst;
  throw py::value_error("order must be file, pos-interleaved or adj-first");
}

classifier::Label parse_label(const std::string& label) {
  if (auto parsed = classifier::label_from_string(label)) return *parsed;
  throw py::value_error("label must be A, B or Unclassified");
}

// The dictionary plus its taxonomy graph, loaded once and queried by synset
// display name.  The graph references the database member, so the pair is
// pinned to the heap and never copied or moved.
class Dictionary {
 public:
  explicit Dictionary(const std::string& directory)
      : db_(wndb::load_database(directory)), graph_(db_) {}
  Dictionary(const Dictionary&) = delete;
  Dictionary& operator=(const Dictionary&) = delete;

  const wndb::WordNetDatabase& db() const { return db_; }
  const taxonomy::TaxonomyGraph& graph() const { return graph_; }

  wndb::SynsetId resolve(const std::string& name) const {
    if (auto id = db_.synset_by_name(name)) return *id;
    throw py::key_error("unknown synset: " + name);
  }

  std::vector<std::string> names_of(const std::vector<wndb::SynsetId>& ids) const {
    std::vector<std::string> names;
    names.reserve(ids.size());
    for (const auto& id : ids) names.push_back(db_.display_name(id));
    return names;
  }

 private:
  wndb::WordNetDatabase db_;
  taxonomy::TaxonomyGraph graph_;
};

lexicon::SeedLexicon make_lexicon(const std::vector<std::string>& good,
                                  const std::vector<std::string>& bad) {
  lexicon::SeedLexicon lex;
  for (const auto& word : good)
    lex.good.push_back({word, lexicon::Provenance::kSeed});
  for (const auto& word : bad)
    lex.bad.push_back({word, lexicon::Provenance::kSeed});
  return lex;
}

std::vector<std::pair<std::string, std::string>> entries_of(
    const std::vector<lexicon::LexiconEntry>& side) {
  std::vector<std::pair<std::string, std::string>> entries;
  entries.reserve(side.size());
  for (const auto& entry : side)
    entries.emplace_back(entry.word, lexicon::to_string(entry.provenance));
  return entries;
}

std::vector<corpus::Document> documents_from(
    const std::vector<std::pair<std::string, std::string>>& pairs) {
  std::vector<corpus::Document> documents;
  documents.reserve(pairs.size());
  for (const auto& [id, text] : pairs) documents.push_back({id, text});
  return documents;
}

std::vector<svgplot::ScatterPoint> points_from(
    const std::vector<std::tuple<double, double, std::string>>& raw) {
  std::vector<svgplot::ScatterPoint> points;
  points.reserve(raw.size());
  for (const auto& [x, y, label] : raw)
    points.push_back({x, y, parse_label(label)});
  return points;
}

py::dict matrix_to_dict(const corpus::FrequencyMatrix& matrix) {
  py::dict out;
  out["doc_ids"] = matrix.doc_ids;
  out["words"] = matrix.words;
  out["counts"] = matrix.counts;
  out["token_totals"] = matrix.token_totals;
  out["sparsity"] = corpus::sparsity(matrix);
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "Sentiment lexicon expansion over a dictionary taxonomy, document "
      "frequency counting, and polarity classification.";

  // Most-derived classes registered last so their translators run first.
  py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<IntegrityError>(m, "IntegrityError", PyExc_RuntimeError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<LoadError>(m, "LoadError", PyExc_OSError);
  py::register_exception<FetchError>(m, "FetchError", PyExc_OSError);

  py::class_<Dictionary>(m, "Dictionary",
                         "A loaded dictionary directory plus its taxonomy; "
                         "synsets are addressed by display name (dog.n.01).")
      .def(py::init<const std::string&>(), py::arg("directory"),
           py::call_guard<py::gil_scoped_release>())
      .def("__len__", [](const Dictionary& d) { return d.db().size(); })
      .def("counts",
           [](const Dictionary& d) {
             auto counts = d.db().counts();
             py::dict out;
             out["nouns"] = counts.nouns;
             out["verbs"] = counts.verbs;
             out["adjectives"] = counts.adjectives;
             out["adverbs"] = counts.adverbs;
             out["total"] = counts.total();
             return out;
           })
      .def(
          "synsets",
          [](const Dictionary& d, const std::string& word,
             const std::optional<std::string>& pos) {
            auto ids = pos ? d.db().synsets_for_word(word, parse_pos(*pos))
                           : d.db().synsets_for_word(word);
            return d.names_of(ids);
          },
          py::arg("word"), py::arg("pos") = py::none(),
          "Display names of every sense of a word, optionally one part of "
          "speech (n, v, a, r).")
      .def("words",
           [](const Dictionary& d, const std::string& name) {
             std::vector<std::string> words;
             for (const auto& form : d.db().require(d.resolve(name)).words)
               words.push_back(wndb::clean_lemma(form.lemma));
             return words;
           },
           py::arg("synset"))
      .def("gloss",
           [](const Dictionary& d, const std::string& name) {
             return d.db().require(d.resolve(name)).gloss;
           },
           py::arg("synset"))
      .def("hypernyms",
           [](const Dictionary& d, const std::string& name) {
             return d.names_of(d.graph().hypernyms(d.resolve(name)));
           },
           py::arg("synset"))
      .def("hyponyms",
           [](const Dictionary& d, const std::string& name) {
             return d.names_of(d.graph().hyponyms(d.resolve(name)));
           },
           py::arg("synset"))
      .def("depth",
           [](const Dictionary& d, const std::string& name) {
             return d.graph().depth(d.resolve(name));
           },
           py::arg("synset"))
      .def("max_depth",
           [](const Dictionary& d, const std::string& pos) {
             return d.graph().max_depth(parse_pos(pos));
           },
           py::arg("pos"))
      .def("distance",
           [](const Dictionary& d, const std::string& a, const std::string& b) {
             return d.graph().shortest_ancestral_distance(d.resolve(a),
                                                          d.resolve(b));
           },
           py::arg("a"), py::arg("b"),
           "Shortest ancestral distance in edges; None when disconnected.")
      .def("least_common_subsumer",
           [](const Dictionary& d, const std::string& a,
              const std::string& b) -> std::optional<std::string> {
             auto lcs = d.graph().least_common_subsumer(d.resolve(a),
                                                        d.resolve(b));
             if (!lcs) return std::nullopt;
             return d.db().display_name(*lcs);
           },
           py::arg("a"), py::arg("b"))
      .def("path_similarity",
           [](const Dictionary& d, const std::string& a, const std::string& b) {
             return similarity::path_similarity(d.graph(), d.resolve(a),
                                                d.resolve(b));
           },
           py::arg("a"), py::arg("b"),
           "1/(distance+1); verb pairs in disjoint trees fall back to a "
           "virtual shared root; None when undefined.")
      .def("lch_similarity",
           [](const Dictionary& d, const std::string& a, const std::string& b,
              const std::string& variant) {
             return similarity::lch_measure(d.graph(), d.resolve(a),
                                            d.resolve(b),
                                            parse_variant(variant));
           },
           py::arg("a"), py::arg("b"), py::arg("variant") = "paper")
      .def("wup_similarity",
           [](const Dictionary& d, const std::string& a, const std::string& b,
              const std::string& variant) {
             return similarity::wup_measure(d.graph(), d.resolve(a),
                                            d.resolve(b),
                                            parse_variant(variant));
           },
           py::arg("a"), py::arg("b"), py::arg("variant") = "paper")
      .def("word_similarity",
           [](const Dictionary& d, const std::string& word,
              const std::string& synset, int cap) {
             return similarity::word_max_path_similarity(
                 d.graph(), d.db(), word, d.resolve(synset), cap);
           },
           py::arg("word"), py::arg("synset"), py::arg("cap") = 3,
           "Max path similarity over the first `cap` senses of `word`; 0 "
           "for unknown words.");

  py::class_<lexicon::SeedLexicon>(m, "Lexicon",
                                   "Ordered good/bad word lists; expansion "
                                   "appends after the seeds.")
      .def(py::init(&make_lexicon), py::arg("good") = std::vector<std::string>{},
           py::arg("bad") = std::vector<std::string>{})
      .def_property_readonly(
          "good",
          [](const lexicon::SeedLexicon& lex) {
            return lex.words(lexicon::Side::kGood);
          })
      .def_property_readonly(
          "bad",
          [](const lexicon::SeedLexicon& lex) {
            return lex.words(lexicon::Side::kBad);
          })
      .def("entries",
           [](const lexicon::SeedLexicon& lex, const std::string& side) {
             if (side == "good") return entries_of(lex.good);
             if (side == "bad") return entries_of(lex.bad);
             throw py::value_error("side must be 'good' or 'bad'");
           },
           py::arg("side"), "(word, provenance) pairs of one side, in order.")
      .def("__repr__", [](const lexicon::SeedLexicon& lex) {
        std::ostringstream out;
        out << "Lexicon(good=" << lex.good.size() << ", bad=" << lex.bad.size()
            << ")";
        return out.str();
      });

  m.def("load_lexicon", &lexicon::load_lexicon, py::arg("path"),
        "Reads a side<TAB>word<TAB>provenance lexicon file.");
  m.def("save_lexicon", &lexicon::save_lexicon, py::arg("lexicon"),
        py::arg("path"));

  m.def(
      "sweep_decision",
      [](double maxp, double maxn, double tau_good, double tau_bad) {
        lexicon::ExpansionConfig config;
        config.tau_good = tau_good;
        config.tau_bad = tau_bad;
        return std::string(
            lexicon::to_string(lexicon::sweep_decision(maxp, maxn, config)));
      },
      py::arg("maxp"), py::arg("maxn"), py::arg("tau_good") = 0.8,
      py::arg("tau_bad") = 0.2,
      "append-good, append-bad or skip for one pair of max similarities.");

  m.def(
      "expand",
      [](const Dictionary& dictionary, const lexicon::SeedLexicon& seeds,
         double tau_good, double tau_bad, std::size_t limit, int cap_good,
         int cap_bad, bool dedup, bool live_growth, const std::string& order,
         bool sample, std::uint64_t seed, int jobs) {
        lexicon::ExpansionConfig config;
        config.tau_good = tau_good;
        config.tau_bad = tau_bad;
        config.synset_limit = limit;
        config.cap_good = cap_good;
        config.cap_bad = cap_bad;
        config.dedup = dedup;
        config.live_growth = live_growth;
        config.order = parse_order(order);
        config.sample = sample;
        config.seed = seed;
        config.jobs = jobs;
        lexicon::ExpansionResult result;
        {
          py::gil_scoped_release release;
          result = lexicon::expand_by_sweep(dictionary.db(), seeds, config);
        }
        py::dict report;
        report["examined"] = result.report.examined;
        report["appended_good"] = result.report.appended_good;
        report["appended_bad"] = result.report.appended_bad;
        report["skipped"] = result.report.skipped;
        return py::make_tuple(result.lexicon, report);
      },
      py::arg("dictionary"), py::arg("seeds"), py::arg("tau_good") = 0.8,
      py::arg("tau_bad") = 0.2, py::arg("limit") = std::size_t{25000},
      py::arg("cap_good") = 3, py::arg("cap_bad") = 5,
      py::arg("dedup") = false, py::arg("live_growth") = true,
      py::arg("order") = "file", py::arg("sample") = false,
      py::arg("seed") = std::uint64_t{0}, py::arg("jobs") = 1,
      "Sweeps the dictionary, appending each qualifying word to the closer "
      "side; returns (grown lexicon, report dict).");

  m.def("corpus_ids", &corpus::corpus_ids, py::arg("directory"),
        "Document ids of a corpus directory (manifest.txt order when "
        "present).");
  m.def(
      "load_corpus",
      [](const std::string& directory,
         const std::optional<std::vector<std::string>>& ids,
         int max_concurrent) {
        corpus::FetchSource source;
        source.root = directory;
        source.max_concurrent = max_concurrent;
        auto wanted = ids ? *ids : corpus::corpus_ids(directory);
        corpus::FetchReport report;
        {
          py::gil_scoped_release release;
          report = corpus::fetch_all(source, wanted);
        }
        std::vector<std::pair<std::string, std::string>> documents;
        for (auto& document : report.documents)
          documents.emplace_back(std::move(document.id),
                                 std::move(document.text));
        return py::make_tuple(documents, report.errors);
      },
      py::arg("directory"), py::arg("ids") = py::none(),
      py::arg("max_concurrent") = 4,
      "Fetches a local corpus; returns ((id, text) pairs, (id, error) "
      "pairs).  HTML files are stripped to visible text.");
  m.def("html_to_text", &corpus::html_to_text, py::arg("html"),
        "Strips markup, decodes entities, preserves line structure.");
  m.def(
      "extract_links",
      [](const std::string& html, const std::string& base) {
        return corpus::extract_links(html, base);
      },
      py::arg("html"), py::arg("base") = "",
      "Anchor hrefs in document order, resolved against base when given.");
  m.def("filter_sublinks", &corpus::filter_sublinks, py::arg("links"),
        py::arg("keywords"),
        "Keeps links whose text contains any keyword (case-insensitive).");
  m.def(
      "tokenize",
      [](const std::string& text) { return corpus::tokenize(text); },
      py::arg("text"),
      "Lowercased unigrams then underscore-joined adjacent bigrams, per "
      "line.");
  m.def(
      "count_frequencies",
      [](const std::vector<std::pair<std::string, std::string>>& documents,
         const std::vector<std::string>& searchwords) {
        return matrix_to_dict(
            corpus::count_frequencies(documents_from(documents), searchwords));
      },
      py::arg("documents"), py::arg("searchwords"),
      "Occurrence counts of each searchword in each (id, text) document.");

  m.def(
      "classify_row",
      [](const std::vector<long long>& row, const lexicon::SeedLexicon& lex,
         double eps1, double eps2) {
        auto result =
            classifier::classify_row(row, lex, classifier::Thresholds{eps1, eps2});
        py::dict out;
        out["label"] = std::string(classifier::to_string(result.label));
        out["p_good"] = result.p_good;
        out["p_bad"] = result.p_bad;
        out["strength"] = result.strength;
        out["x"] = result.point.x;
        out["y"] = result.point.y;
        out["both_sides_passed"] = result.both_sides_passed;
        return out;
      },
      py::arg("row"), py::arg("lexicon"), py::arg("eps1") = 0.5,
      py::arg("eps2") = 0.5,
      "Labels one frequency row (good columns first, then bad).");
  m.def(
      "clause_signs",
      [](const std::string& sentence, const lexicon::SeedLexicon& lex,
         bool inherit) {
        std::vector<std::tuple<std::string, std::string, int>> out;
        for (const auto& clause : classifier::clause_signs(
                 classifier::split_clauses(sentence), lex, inherit))
          out.emplace_back(clause.text, classifier::to_string(clause.connective),
                           clause.sign);
        return out;
      },
      py::arg("sentence"), py::arg("lexicon"), py::arg("inherit") = true,
      "(text, connective, sign) per clause; contrastive connectives flip "
      "inherited signs.");
  m.def("split_sentences",
        [](const std::string& text) { return classifier::split_sentences(text); },
        py::arg("text"));
  m.def(
      "document_average_sign",
      [](const std::string& text, const lexicon::SeedLexicon& lex,
         bool inherit) {
        return classifier::document_average_sign(text, lex, inherit);
      },
      py::arg("text"), py::arg("lexicon"), py::arg("inherit") = true,
      "Mean clause sign over every sentence, zero-evidence clauses "
      "excluded.");

  m.def(
      "scatter_svg",
      [](const std::vector<std::tuple<double, double, std::string>>& points,
         bool swap_axes) {
        return svgplot::render_scatter_svg(points_from(points), swap_axes);
      },
      py::arg("points"), py::arg("swap_axes") = false,
      "Self-contained SVG scatter of (x, y, label) points.");
  m.def(
      "scatter_csv",
      [](const std::vector<std::tuple<double, double, std::string>>& points,
         bool swap_axes) {
        return svgplot::scatter_csv(points_from(points), swap_axes);
      },
      py::arg("points"), py::arg("swap_axes") = false);

  m.def(
      "run_pipeline",
      [](const std::string& config_path,
         const std::optional<std::string>& out_dir) {
        auto config = pipeline::load_run_config(config_path);
        if (out_dir) config.out_dir = *out_dir;
        std::ostringstream log;
        {
          py::gil_scoped_release release;
          pipeline::run_pipeline(config, log);
        }
        return log.str();
      },
      py::arg("config_path"), py::arg("out_dir") = py::none(),
      "Runs expand, count, classify and plot per the config file; returns "
      "the run log.  Artifacts land in the configured (or overridden) "
      "output directory.");
}
