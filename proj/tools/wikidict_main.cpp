#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wikidict/dictionary.hpp"
#include "wikidict/evaluation.hpp"
#include "wikidict/graph.hpp"
#include "wikidict/relatedness.hpp"
#include "wikidict/wikitext.hpp"

namespace {

using namespace wikidict;

// Command-line misuse detected after CLI11 parsing (bad --weight syntax
// and the like); exits with status 1 like any other usage error.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

WeightConfig parse_weights(const std::vector<std::string>& specs) {
  WeightConfig config;
  for (const std::string& spec : specs) {
    std::size_t eq = spec.find('=');
    if (eq == std::string::npos)
      throw UsageError("--weight expects <type>=<value>, got \"" + spec + "\"");
    RelationType type;
    if (!relation_type_from_string(spec.substr(0, eq), type))
      throw UsageError("--weight: unknown relation type \"" + spec.substr(0, eq) + "\"");
    double value = 0.0;
    try {
      std::size_t used = 0;
      value = std::stod(spec.substr(eq + 1), &used);
      if (used != spec.size() - eq - 1) throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
      throw UsageError("--weight: bad value in \"" + spec + "\"");
    }
    if (!(value > 0.0)) throw UsageError("--weight: value must be positive in \"" + spec + "\"");
    config[type] = value;
  }
  return config;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open input file: " + path.string());
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>{});
}

Dictionary load_store(const std::string& dir) {
  if (!std::filesystem::is_directory(dir))
    throw std::runtime_error("store directory not found: " + dir);
  return load(dir);
}

int run_parse(const std::string& input, const std::string& out_dir) {
  std::string dump = read_file(input);
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw std::runtime_error("cannot create store directory " + out_dir + ": " + ec.message());
  std::vector<RawPage> pages = split_pages(dump);
  Dictionary dict;
  long entries = 0;
  long warnings = 0;
  for (const RawPage& page : pages) {
    PageParse parsed = parse_page(page);
    warnings += parsed.warnings;
    for (PageEntry& entry : parsed.entries) {
      dict.add(std::move(entry));
      ++entries;
    }
  }
  save(dict, out_dir);
  std::cout << "pages=" << pages.size() << "\n"
            << "entries=" << entries << "\n"
            << "warnings=" << warnings << "\n";
  return 0;
}

int run_stats(const std::string& store) {
  StatsReport report = stats(load_store(store));
  bool first = true;
  for (const auto& [language, counts] : report.by_language) {
    if (!first) std::cout << "\n";
    first = false;
    std::cout << "lang=" << language << "\n";
    std::cout << "entries=" << counts.entries << "\n";
    for (Pos pos : kAllPos)
      std::cout << to_string(pos) << "=" << counts.pos_counts.at(pos) << "\n";
    for (RelationType type : kAllRelationTypes)
      std::cout << to_string(type) << "=" << counts.relation_counts.at(type) << "\n";
    std::cout << "relations_total=" << counts.total_relations << "\n";
    std::cout << "translations=" << counts.translations << "\n";
  }
  return 0;
}

int run_relate(const std::string& store, const std::string& graph_lang,
               const std::string& from_lang, const WeightConfig& weights,
               const std::string& word_a, const std::string& word_b, bool print_paths) {
  Dictionary dict = load_store(store);
  ThesaurusGraph graph = build_graph(dict, graph_lang, weights);
  RelateOptions options;
  options.collect_linking_paths = print_paths;
  RelatednessResult result = relate(dict, graph, word_a, word_b, from_lang, graph_lang, options);
  if (print_paths) {
    if (result.missing_reason != MissingReason::none)
      std::cerr << "no paths: missing_reason=" << to_string(result.missing_reason) << "\n";
    for (const PathResult& path : result.linking_paths)
      std::cout << format_path(path) << "\n";
  } else {
    std::cout << to_text(result);
  }
  return 0;
}

int run_evaluate(const std::string& store, const std::string& graph_lang,
                 const std::string& from_lang, const WeightConfig& weights,
                 const std::string& pairs_file, const std::string& report_file,
                 std::size_t all_pairs_cap) {
  // validate every path before the heavy work starts
  std::vector<WordPair> collection = load_collection(pairs_file);
  std::ofstream out(report_file, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open report file: " + report_file);
  Dictionary dict = load_store(store);
  ThesaurusGraph graph = build_graph(dict, graph_lang, weights);

  DistanceOracle oracle;
  RelateOptions options;
  if (graph.node_count() <= all_pairs_cap) {
    oracle = graph.all_pairs_precompute(all_pairs_cap);
    options.oracle = &oracle;
    std::cerr << "precompute: all-pairs distance table over " << graph.node_count()
              << " nodes (cap " << all_pairs_cap << ")\n";
  } else {
    std::cerr << "precompute: skipped, " << graph.node_count() << " nodes over cap "
              << all_pairs_cap << "; using per-query search\n";
  }

  EvaluationReport report = evaluate(
      collection,
      [&](const std::string& a, const std::string& b) {
        return relate(dict, graph, a, b, from_lang, graph_lang, options);
      });

  out << report_to_json(report);
  out.close();
  if (!out) throw std::runtime_error("write failed: " + report_file);

  std::cout << "n_total=" << report.n_total << "\n"
            << "n_scored=" << report.n_scored << "\n"
            << "n_missing=" << report.n_missing << "\n"
            << "spearman=" << (report.spearman ? format_number(*report.spearman) : "undefined")
            << "\n"
            << "pearson=" << (report.pearson ? format_number(*report.pearson) : "undefined")
            << "\n";
  return 0;
}

int run_export(const std::string& store, const std::string& graph_lang,
               const WeightConfig& weights, const std::string& out_file) {
  std::ofstream out(out_file, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + out_file);
  Dictionary dict = load_store(store);
  ThesaurusGraph graph = build_graph(dict, graph_lang, weights);
  graph.export_edges(out);
  out.close();
  if (!out) throw std::runtime_error("write failed: " + out_file);
  std::cerr << "exported " << graph.edge_count() << " edges over " << graph.node_count()
            << " nodes\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"wikidict: wiki-dictionary parsing, thesaurus graphs and relatedness evaluation"};
  app.require_subcommand(1);

  std::string input, out_path, store, graph_lang, from_lang, pairs_file, report_file;
  std::string word_a, word_b;
  std::vector<std::string> weight_specs;
  std::size_t all_pairs_cap = kDefaultAllPairsCap;

  CLI::App* cmd_parse = app.add_subcommand("parse", "parse a dump file into a TSV store");
  cmd_parse->add_option("--input", input, "dump file")->required();
  cmd_parse->add_option("--out", out_path, "store directory to write")->required();

  CLI::App* cmd_stats = app.add_subcommand("stats", "per-language store statistics");
  cmd_stats->add_option("--store", store, "store directory")->required();

  auto add_graph_options = [&](CLI::App* cmd, bool with_from_lang) {
    cmd->add_option("--store", store, "store directory")->required();
    cmd->add_option("--graph-lang", graph_lang, "language of the thesaurus graph")->required();
    if (with_from_lang)
      cmd->add_option("--from-lang", from_lang, "language of the query words")->required();
    cmd->add_option("--weight", weight_specs, "per-relation edge weight, <type>=<value>");
  };

  CLI::App* cmd_relate = app.add_subcommand("relate", "relatedness of two words");
  add_graph_options(cmd_relate, true);
  cmd_relate->add_option("word_a", word_a, "first word")->required();
  cmd_relate->add_option("word_b", word_b, "second word")->required();

  CLI::App* cmd_path = app.add_subcommand("path", "linking words between two words");
  add_graph_options(cmd_path, true);
  cmd_path->add_option("word_a", word_a, "first word")->required();
  cmd_path->add_option("word_b", word_b, "second word")->required();

  CLI::App* cmd_evaluate = app.add_subcommand("evaluate", "score a word-pair collection");
  add_graph_options(cmd_evaluate, true);
  cmd_evaluate->add_option("--pairs", pairs_file, "collection TSV")->required();
  cmd_evaluate->add_option("--report", report_file, "report JSON to write")->required();
  cmd_evaluate->add_option("--all-pairs-cap", all_pairs_cap,
                           "max node count for the all-pairs precompute");

  CLI::App* cmd_export = app.add_subcommand("export-graph", "write the graph edge list TSV");
  add_graph_options(cmd_export, false);
  cmd_export->add_option("--out", out_path, "edge list file to write")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }

  try {
    WeightConfig weights = parse_weights(weight_specs);
    if (cmd_parse->parsed()) return run_parse(input, out_path);
    if (cmd_stats->parsed()) return run_stats(store);
    if (cmd_relate->parsed())
      return run_relate(store, graph_lang, from_lang, weights, word_a, word_b, false);
    if (cmd_path->parsed())
      return run_relate(store, graph_lang, from_lang, weights, word_a, word_b, true);
    if (cmd_evaluate->parsed())
      return run_evaluate(store, graph_lang, from_lang, weights, pairs_file, report_file,
                          all_pairs_cap);
    if (cmd_export->parsed()) return run_export(store, graph_lang, weights, out_path);
  } catch (const UsageError& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
  return 0;
}
