#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "wikidict/dictionary.hpp"
#include "wikidict/graph.hpp"

namespace wikidict {

// Why a word pair could not be scored; `none` means it was. Order matters:
// when several apply, the smallest value is reported.
enum class MissingReason {
  none,
  no_page_a,
  no_page_b,
  no_translation_a,
  no_translation_b,
  sets_not_in_graph,
  unreachable,
};

const char* to_string(MissingReason reason);

// Maximum over all (u, v) in set_a x set_b of the finite shortest-path
// lengths; pairs with u == v contribute 0. Returns nullopt only when no
// pair is connected. Unreachable pairs inside the product are skipped.
// Both sets must be nonempty subsets of the graph's nodes
// (std::invalid_argument otherwise); `oracle`, when given, must come from
// the same graph and replaces the per-source searches.
std::optional<double> path_max_len(const ThesaurusGraph& graph, const std::set<std::string>& set_a,
                                   const std::set<std::string>& set_b,
                                   const DistanceOracle* oracle = nullptr);

// 1/(1+d); strictly decreasing; nullopt (infinite distance) -> nullopt.
std::optional<double> to_score(std::optional<double> distance);

// The tie-broken shortest path for every connected (u, v) pair, ordered by
// (u, v); unreachable pairs are omitted. Preconditions as path_max_len.
std::vector<PathResult> linking_words(const ThesaurusGraph& graph,
                                      const std::set<std::string>& set_a,
                                      const std::set<std::string>& set_b);

struct RelatednessResult {
  std::string word_a;
  std::string word_b;
  std::set<std::string> set_a;  // translation sets (before graph filtering)
  std::set<std::string> set_b;
  std::optional<double> distance;  // nullopt = infinite / not computable
  std::optional<double> score;     // nullopt = missing
  MissingReason missing_reason = MissingReason::none;
  std::vector<PathResult> linking_paths;
};

struct RelateOptions {
  const DistanceOracle* oracle = nullptr;
  bool collect_linking_paths = false;
};

// The full translate -> mark -> measure pipeline for one word pair.
// Translates both words from `source_language` into `graph_language` (both
// index directions), intersects with the graph's nodes, and measures
// path_max_len over the surviving sets; score = 1/(1+distance). Absent data
// is a result, not an error: the earliest failing step is recorded in
// missing_reason (a word "has a page" when it has an entry in the source
// language or the reverse translation index knows it).
RelatednessResult relate(const Dictionary& dict, const ThesaurusGraph& graph,
                         std::string_view word_a, std::string_view word_b,
                         const std::string& source_language, const std::string& graph_language,
                         const RelateOptions& options = {});

// key=value record, one field per line (word_a, word_b, set_a, set_b,
// distance, score, missing_reason). Sets are comma-joined; an infinite
// distance prints as `inf`, a missing score as `missing`.
std::string to_text(const RelatednessResult& result);

// "w1 -> w2 -> w3"
std::string format_path(const PathResult& path);

// Shortest round-trip decimal form ("1", "0.5").
std::string format_number(double value);

}  // namespace wikidict
