#include "wikidict/evaluation.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>

#include <json.hpp>

namespace wikidict {

CollectionError::CollectionError(const std::string& message, std::string file_in, long line_in)
    : std::runtime_error(line_in > 0 ? message + " [" + file_in + ":" + std::to_string(line_in) + "]"
                                     : message + " [" + file_in + "]"),
      file(std::move(file_in)),
      line(line_in) {}

std::vector<WordPair> load_collection(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw CollectionError("cannot open collection", file.string());
  std::vector<WordPair> pairs;
  std::string line;
  long line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line_number == 1) continue;  // header
    if (line.empty()) continue;
    std::size_t first = line.find('\t');
    std::size_t second = first == std::string::npos ? std::string::npos : line.find('\t', first + 1);
    if (second == std::string::npos)
      throw CollectionError("expected word_a<TAB>word_b<TAB>score", file.string(), line_number);
    std::string word_a = line.substr(0, first);
    std::string word_b = line.substr(first + 1, second - first - 1);
    std::string score_field = line.substr(second + 1);
    double score = 0.0;
    auto [ptr, ec] =
        std::from_chars(score_field.data(), score_field.data() + score_field.size(), score);
    if (ec != std::errc() || ptr != score_field.data() + score_field.size())
      throw CollectionError("non-numeric score \"" + score_field + "\"", file.string(), line_number);
    if (!(score >= 0.0 && score <= 10.0))
      throw CollectionError("score " + score_field + " outside [0,10]", file.string(), line_number);
    pairs.push_back({std::move(word_a), std::move(word_b), score});
  }
  if (line_number == 0) throw CollectionError("empty collection, header missing", file.string());
  return pairs;
}

std::vector<double> average_ranks(const std::vector<double>& values) {
  std::vector<std::size_t> order(values.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(values.size(), 0.0);
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) ++j;
    double shared = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = shared;
    i = j + 1;
  }
  return ranks;
}

std::optional<double> pearson(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size() || xs.size() < 2) return std::nullopt;
  double n = static_cast<double>(xs.size());
  double mean_x = 0.0, mean_y = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mean_x += xs[i];
    mean_y += ys[i];
  }
  mean_x /= n;
  mean_y /= n;
  double cov = 0.0, var_x = 0.0, var_y = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    double dx = xs[i] - mean_x;
    double dy = ys[i] - mean_y;
    cov += dx * dy;
    var_x += dx * dx;
    var_y += dy * dy;
  }
  if (var_x == 0.0 || var_y == 0.0) return std::nullopt;
  return cov / std::sqrt(var_x * var_y);
}

std::optional<double> spearman(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size() || xs.size() < 3) return std::nullopt;
  return pearson(average_ranks(xs), average_ranks(ys));
}

EvaluationReport evaluate(const std::vector<WordPair>& collection, const RelateFn& relate_fn,
                          const EvaluateOptions& options) {
  EvaluationReport report;
  report.n_total = static_cast<long>(collection.size());
  for (MissingReason reason :
       {MissingReason::no_page_a, MissingReason::no_page_b, MissingReason::no_translation_a,
        MissingReason::no_translation_b, MissingReason::sets_not_in_graph,
        MissingReason::unreachable})
    report.missing_breakdown[reason] = 0;

  // (human, -distance, score) triples, sorted so the correlation sums run
  // in a canonical order and permuting the collection cannot change them
  std::vector<std::array<double, 3>> scored;
  for (const WordPair& pair : collection) {
    RelatednessResult result = relate_fn(pair.word_a, pair.word_b);
    if (result.missing_reason == MissingReason::none) {
      ++report.n_scored;
      scored.push_back({pair.human_score, -*result.distance, *result.score});
    } else {
      ++report.n_missing;
      ++report.missing_breakdown[result.missing_reason];
    }
    if (options.keep_per_pair) report.per_pair.emplace_back(pair, std::move(result));
  }
  std::sort(scored.begin(), scored.end());
  std::vector<double> human, neg_distance, score;
  for (const auto& [h, nd, s] : scored) {
    human.push_back(h);
    neg_distance.push_back(nd);
    score.push_back(s);
  }
  if (report.n_scored >= 3) {
    report.spearman = wikidict::spearman(human, neg_distance);
    report.pearson = wikidict::pearson(human, score);
  }
  return report;
}

std::string report_to_json(const EvaluationReport& report) {
  using json = nlohmann::ordered_json;
  json doc;
  doc["n_total"] = report.n_total;
  doc["n_scored"] = report.n_scored;
  doc["n_missing"] = report.n_missing;
  json breakdown = json::object();
  for (const auto& [reason, count] : report.missing_breakdown)
    breakdown[to_string(reason)] = count;
  doc["missing_breakdown"] = std::move(breakdown);
  doc["spearman"] = report.spearman ? json(*report.spearman) : json(nullptr);
  doc["pearson"] = report.pearson ? json(*report.pearson) : json(nullptr);
  json pairs = json::array();
  for (const auto& [pair, result] : report.per_pair) {
    json row;
    row["word_a"] = pair.word_a;
    row["word_b"] = pair.word_b;
    row["human_score"] = pair.human_score;
    row["set_a"] = result.set_a;
    row["set_b"] = result.set_b;
    row["distance"] = result.distance ? json(*result.distance) : json(nullptr);
    row["score"] = result.score ? json(*result.score) : json(nullptr);
    row["missing_reason"] = to_string(result.missing_reason);
    pairs.push_back(std::move(row));
  }
  doc["per_pair"] = std::move(pairs);
  return doc.dump(2) + "\n";
}

}  // namespace wikidict
