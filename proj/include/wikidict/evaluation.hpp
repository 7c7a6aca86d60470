#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wikidict/relatedness.hpp"

namespace wikidict {

// One human-judged pair on a 0..10 scale.
struct WordPair {
  std::string word_a;
  std::string word_b;
  double human_score = 0.0;

  bool operator==(const WordPair&) const = default;
};

struct CollectionError : std::runtime_error {
  std::string file;
  long line;  // 0 = whole-file problem
  CollectionError(const std::string& message, std::string file, long line = 0);
};

// Reads a collection file: TSV, one header line, then
// word_a<TAB>word_b<TAB>score per line. Scores outside [0,10] or
// non-numeric raise CollectionError with the line number.
std::vector<WordPair> load_collection(const std::filesystem::path& file);

// 1-based average ranks (ties share the mean of their positions).
std::vector<double> average_ranks(const std::vector<double>& values);

// Product-moment correlation; nullopt on mismatched lengths, fewer than
// two points, or zero variance in either input.
std::optional<double> pearson(const std::vector<double>& xs, const std::vector<double>& ys);

// Rank correlation with average-rank tie handling; invariant under
// strictly monotone transforms of either input. nullopt on mismatched
// lengths, fewer than three points, or a constant input.
std::optional<double> spearman(const std::vector<double>& xs, const std::vector<double>& ys);

struct EvaluationReport {
  long n_total = 0;
  long n_scored = 0;
  long n_missing = 0;
  std::map<MissingReason, long> missing_breakdown;  // all six non-none reasons present
  std::optional<double> spearman;  // rank correlation of human score vs negated distance
  std::optional<double> pearson;   // linear correlation of human score vs 1/(1+d)
  std::vector<std::pair<WordPair, RelatednessResult>> per_pair;
};

using RelateFn = std::function<RelatednessResult(const std::string&, const std::string&)>;

struct EvaluateOptions {
  bool keep_per_pair = true;
};

// Scores every pair with `relate_fn` (which never throws for absent data),
// splits scored from missing, and computes both correlations over exactly
// the scored pairs. Deterministic given a deterministic relate_fn;
// per_pair preserves collection order.
EvaluationReport evaluate(const std::vector<WordPair>& collection, const RelateFn& relate_fn,
                          const EvaluateOptions& options = {});

// Deterministic JSON rendering of the report (stable key order, shortest
// round-trip numbers). Undefined correlations and non-finite distances
// serialize as null.
std::string report_to_json(const EvaluationReport& report);

}  // namespace wikidict
