#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "wikidict/wikitext.hpp"

namespace wikidict {

class Dictionary;

inline constexpr std::size_t kDefaultAllPairsCap = 50'000;

// Per-relation-type edge weights; all default to 1.0 so path lengths are
// hop counts. Values must be positive.
struct WeightConfig {
  std::array<double, kRelationTypeCount> by_type;

  WeightConfig() { by_type.fill(1.0); }
  double& operator[](RelationType type) { return by_type[static_cast<std::size_t>(type)]; }
  double operator[](RelationType type) const { return by_type[static_cast<std::size_t>(type)]; }
};

struct PathResult {
  double length = 0.0;
  std::vector<std::string> nodes;  // source first, target last

  bool operator==(const PathResult&) const = default;
};

enum class PathStatus { found, unreachable, node_absent };

struct ShortestPathResult {
  PathStatus status = PathStatus::node_absent;
  PathResult path;  // meaningful only when status == found
};

// Thrown by all_pairs_precompute when the node count exceeds the cap.
struct CapExceededError : std::runtime_error {
  CapExceededError(std::size_t nodes, std::size_t cap);
};

// Dense all-pairs distance table.
class DistanceOracle {
 public:
  bool has_node(std::string_view word) const;
  std::size_t node_count() const { return names_.size(); }

  // Shortest-path length, or nullopt when the pair is unreachable or a
  // word is not a node.
  std::optional<double> distance(std::string_view a, std::string_view b) const;

 private:
  friend class ThesaurusGraph;
  std::vector<std::string> names_;  // sorted
  std::vector<double> matrix_;      // row-major, infinity = unreachable
  int index_of(std::string_view word) const;
};

// Undirected labeled graph over the headwords of one language. Edges carry
// the minimum configured weight over their contributing relation types and
// the union of those types as labels. No self-loops; one edge per pair.
// Fill it up front (add_word / add_relation), then treat it as immutable:
// every query is const and safe to run concurrently.
class ThesaurusGraph {
 public:
  explicit ThesaurusGraph(std::string language, WeightConfig weights = {});

  const std::string& language() const { return language_; }
  const WeightConfig& weights() const { return weights_; }

  void add_word(std::string_view word);
  // Adds/merges the undirected edge; a == b is ignored (both still become
  // nodes). Throws std::invalid_argument if the configured weight for
  // `type` is not positive.
  void add_relation(std::string_view a, std::string_view b, RelationType type);

  std::size_t node_count() const { return names_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  bool has_node(std::string_view word) const { return find_id(word) >= 0; }
  std::vector<std::string> nodes() const;  // sorted

  struct EdgeRecord {
    std::string a, b;  // a < b
    double weight = 1.0;
    std::vector<RelationType> labels;  // enum order

    bool operator==(const EdgeRecord&) const = default;
  };
  std::vector<EdgeRecord> edge_list() const;  // sorted by (a, b)

  // Minimal-weight path with a deterministic tie-break: the
  // lexicographically smallest node sequence among all minimal paths
  // (byte order on names).
  ShortestPathResult shortest_path(std::string_view source, std::string_view target) const;

  // For every node reachable from any source, the least distance to the
  // source set. Unreachable nodes are absent. Empty sources -> empty map;
  // a source that is not a node -> std::invalid_argument.
  std::map<std::string, double> multi_source_distances(const std::set<std::string>& sources) const;

  // Dense all-pairs table; refuses (CapExceededError) above `cap` nodes.
  DistanceOracle all_pairs_precompute(std::size_t cap = kDefaultAllPairsCap) const;

  // Nodes that share an id are exactly the mutually reachable ones. Ids are
  // assigned by discovery over the sorted node list, starting at 0.
  std::map<std::string, int> connected_components() const;

  // Edge list TSV: node_a, node_b, weight, labels joined by '|'. Inspection
  // format, not a load format.
  void export_edges(std::ostream& out) const;

  // Same node set and edge list (labels, weights); build order irrelevant.
  bool operator==(const ThesaurusGraph& other) const;

 private:
  struct AdjEntry {
    int to;
    double weight;
  };

  std::string language_;
  WeightConfig weights_;
  std::vector<std::string> names_;
  std::unordered_map<std::string, int> ids_;
  std::vector<std::vector<AdjEntry>> adjacency_;
  struct EdgeData {
    double weight;
    unsigned labels;  // bit per RelationType
  };
  std::map<std::pair<int, int>, EdgeData> edges_;  // key (min id, max id)

  int find_id(std::string_view word) const;
  int intern(std::string_view word);
  // distances from `source` (by id); infinity = unreachable
  std::vector<double> dijkstra(int source) const;
  std::vector<double> dijkstra_multi(const std::vector<int>& sources) const;
};

// Builds the graph for `language` from every relation row of the
// dictionary: headwords of that language become nodes, each relation
// target becomes a node too (with or without its own entry), and each
// (headword, target) pair becomes one edge. Unknown language -> empty
// graph.
ThesaurusGraph build_graph(const Dictionary& dict, const std::string& language,
                           const WeightConfig& weights = {});

}  // namespace wikidict
