#include "wikidict/relatedness.hpp"

#include <charconv>
#include <stdexcept>

namespace wikidict {

const char* to_string(MissingReason reason) {
  switch (reason) {
    case MissingReason::none: return "none";
    case MissingReason::no_page_a: return "no_page_a";
    case MissingReason::no_page_b: return "no_page_b";
    case MissingReason::no_translation_a: return "no_translation_a";
    case MissingReason::no_translation_b: return "no_translation_b";
    case MissingReason::sets_not_in_graph: return "sets_not_in_graph";
    case MissingReason::unreachable: return "unreachable";
  }
  return "none";
}

namespace {

void require_marked_sets(const ThesaurusGraph& graph, const std::set<std::string>& set_a,
                         const std::set<std::string>& set_b) {
  if (set_a.empty() || set_b.empty())
    throw std::invalid_argument("vertex sets must be nonempty");
  for (const std::string& word : set_a)
    if (!graph.has_node(word)) throw std::invalid_argument("set_a word is not a node: " + word);
  for (const std::string& word : set_b)
    if (!graph.has_node(word)) throw std::invalid_argument("set_b word is not a node: " + word);
}

}  // namespace

std::optional<double> path_max_len(const ThesaurusGraph& graph, const std::set<std::string>& set_a,
                                   const std::set<std::string>& set_b,
                                   const DistanceOracle* oracle) {
  require_marked_sets(graph, set_a, set_b);
  std::optional<double> best;
  for (const std::string& u : set_a) {
    if (oracle) {
      for (const std::string& v : set_b)
        if (std::optional<double> d = oracle->distance(u, v); d && (!best || *d > *best)) best = *d;
    } else {
      std::map<std::string, double> dist = graph.multi_source_distances({u});
      for (const std::string& v : set_b)
        if (auto it = dist.find(v); it != dist.end() && (!best || it->second > *best))
          best = it->second;
    }
  }
  return best;
}

std::optional<double> to_score(std::optional<double> distance) {
  if (!distance) return std::nullopt;
  return 1.0 / (1.0 + *distance);
}

std::vector<PathResult> linking_words(const ThesaurusGraph& graph,
                                      const std::set<std::string>& set_a,
                                      const std::set<std::string>& set_b) {
  require_marked_sets(graph, set_a, set_b);
  std::vector<PathResult> out;
  for (const std::string& u : set_a)
    for (const std::string& v : set_b) {
      ShortestPathResult found = graph.shortest_path(u, v);
      if (found.status == PathStatus::found) out.push_back(std::move(found.path));
    }
  return out;
}

RelatednessResult relate(const Dictionary& dict, const ThesaurusGraph& graph,
                         std::string_view word_a, std::string_view word_b,
                         const std::string& source_language, const std::string& graph_language,
                         const RelateOptions& options) {
  RelatednessResult result;
  result.word_a = std::string(word_a);
  result.word_b = std::string(word_b);
  result.set_a = dict.translations(word_a, source_language, graph_language);
  result.set_b = dict.translations(word_b, source_language, graph_language);

  bool page_a = !result.set_a.empty() || !dict.lookup(word_a, source_language).empty();
  bool page_b = !result.set_b.empty() || !dict.lookup(word_b, source_language).empty();
  if (!page_a) {
    result.missing_reason = MissingReason::no_page_a;
    return result;
  }
  if (!page_b) {
    result.missing_reason = MissingReason::no_page_b;
    return result;
  }
  if (result.set_a.empty()) {
    result.missing_reason = MissingReason::no_translation_a;
    return result;
  }
  if (result.set_b.empty()) {
    result.missing_reason = MissingReason::no_translation_b;
    return result;
  }

  std::set<std::string> marked_a, marked_b;
  for (const std::string& word : result.set_a)
    if (graph.has_node(word)) marked_a.insert(word);
  for (const std::string& word : result.set_b)
    if (graph.has_node(word)) marked_b.insert(word);
  if (marked_a.empty() || marked_b.empty()) {
    result.missing_reason = MissingReason::sets_not_in_graph;
    return result;
  }

  result.distance = path_max_len(graph, marked_a, marked_b, options.oracle);
  if (!result.distance) {
    result.missing_reason = MissingReason::unreachable;
    return result;
  }
  result.score = to_score(result.distance);
  if (options.collect_linking_paths)
    result.linking_paths = linking_words(graph, marked_a, marked_b);
  return result;
}

std::string format_number(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

std::string format_path(const PathResult& path) {
  std::string out;
  for (std::size_t i = 0; i < path.nodes.size(); ++i) {
    if (i) out += " -> ";
    out += path.nodes[i];
  }
  return out;
}

std::string to_text(const RelatednessResult& result) {
  auto join = [](const std::set<std::string>& words) {
    std::string out;
    for (const std::string& word : words) {
      if (!out.empty()) out += ", ";
      out += word;
    }
    return out;
  };
  std::string out;
  out += "word_a=" + result.word_a + "\n";
  out += "word_b=" + result.word_b + "\n";
  out += "set_a=" + join(result.set_a) + "\n";
  out += "set_b=" + join(result.set_b) + "\n";
  out += "distance=" + (result.distance ? format_number(*result.distance) : std::string("inf")) + "\n";
  out += "score=" + (result.score ? format_number(*result.score) : std::string("missing")) + "\n";
  out += std::string("missing_reason=") + to_string(result.missing_reason) + "\n";
  return out;
}

}  // namespace wikidict
