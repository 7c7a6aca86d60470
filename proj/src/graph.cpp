#include "wikidict/graph.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <queue>
#include <stdexcept>

#include "wikidict/dictionary.hpp"
#include "wikidict/tsv.hpp"

namespace wikidict {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string format_weight(double w) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, w);
  return std::string(buf, ptr);
}

}  // namespace

CapExceededError::CapExceededError(std::size_t nodes, std::size_t cap)
    : std::runtime_error("all-pairs precompute refused: " + std::to_string(nodes) +
                         " nodes exceed cap " + std::to_string(cap)) {}

bool DistanceOracle::has_node(std::string_view word) const { return index_of(word) >= 0; }

int DistanceOracle::index_of(std::string_view word) const {
  auto it = std::lower_bound(names_.begin(), names_.end(), word);
  if (it == names_.end() || *it != word) return -1;
  return static_cast<int>(it - names_.begin());
}

std::optional<double> DistanceOracle::distance(std::string_view a, std::string_view b) const {
  int i = index_of(a);
  int j = index_of(b);
  if (i < 0 || j < 0) return std::nullopt;
  double d = matrix_[static_cast<std::size_t>(i) * names_.size() + static_cast<std::size_t>(j)];
  if (d == kInf) return std::nullopt;
  return d;
}

ThesaurusGraph::ThesaurusGraph(std::string language, WeightConfig weights)
    : language_(std::move(language)), weights_(weights) {
  for (RelationType type : kAllRelationTypes)
    if (!(weights_[type] > 0.0))
      throw std::invalid_argument(std::string("weight for ") + to_string(type) +
                                  " must be positive");
}

int ThesaurusGraph::find_id(std::string_view word) const {
  auto it = ids_.find(std::string(word));
  return it == ids_.end() ? -1 : it->second;
}

int ThesaurusGraph::intern(std::string_view word) {
  auto [it, inserted] = ids_.try_emplace(std::string(word), static_cast<int>(names_.size()));
  if (inserted) {
    names_.emplace_back(word);
    adjacency_.emplace_back();
  }
  return it->second;
}

void ThesaurusGraph::add_word(std::string_view word) { intern(word); }

void ThesaurusGraph::add_relation(std::string_view a, std::string_view b, RelationType type) {
  int ia = intern(a);
  int ib = intern(b);
  if (ia == ib) return;
  double weight = weights_[type];
  std::pair<int, int> key{std::min(ia, ib), std::max(ia, ib)};
  auto [it, inserted] = edges_.try_emplace(key, EdgeData{weight, 0u});
  it->second.labels |= 1u << static_cast<unsigned>(type);
  if (inserted) {
    adjacency_[static_cast<std::size_t>(ia)].push_back({ib, weight});
    adjacency_[static_cast<std::size_t>(ib)].push_back({ia, weight});
    return;
  }
  if (weight < it->second.weight) {
    it->second.weight = weight;
    for (AdjEntry& e : adjacency_[static_cast<std::size_t>(ia)])
      if (e.to == ib) e.weight = weight;
    for (AdjEntry& e : adjacency_[static_cast<std::size_t>(ib)])
      if (e.to == ia) e.weight = weight;
  }
}

std::vector<std::string> ThesaurusGraph::nodes() const {
  std::vector<std::string> out = names_;
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<ThesaurusGraph::EdgeRecord> ThesaurusGraph::edge_list() const {
  std::vector<EdgeRecord> out;
  out.reserve(edges_.size());
  for (const auto& [key, data] : edges_) {
    EdgeRecord record;
    record.a = names_[static_cast<std::size_t>(key.first)];
    record.b = names_[static_cast<std::size_t>(key.second)];
    if (record.b < record.a) std::swap(record.a, record.b);
    record.weight = data.weight;
    for (RelationType type : kAllRelationTypes)
      if (data.labels & (1u << static_cast<unsigned>(type))) record.labels.push_back(type);
    out.push_back(std::move(record));
  }
  std::sort(out.begin(), out.end(), [](const EdgeRecord& x, const EdgeRecord& y) {
    return std::tie(x.a, x.b) < std::tie(y.a, y.b);
  });
  return out;
}

std::vector<double> ThesaurusGraph::dijkstra(int source) const {
  return dijkstra_multi({source});
}

std::vector<double> ThesaurusGraph::dijkstra_multi(const std::vector<int>& sources) const {
  std::vector<double> dist(names_.size(), kInf);
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  for (int s : sources) {
    dist[static_cast<std::size_t>(s)] = 0.0;
    queue.push({0.0, s});
  }
  while (!queue.empty()) {
    auto [d, u] = queue.top();
    queue.pop();
    if (d > dist[static_cast<std::size_t>(u)]) continue;
    for (const AdjEntry& edge : adjacency_[static_cast<std::size_t>(u)]) {
      double candidate = d + edge.weight;
      if (candidate < dist[static_cast<std::size_t>(edge.to)]) {
        dist[static_cast<std::size_t>(edge.to)] = candidate;
        queue.push({candidate, edge.to});
      }
    }
  }
  return dist;
}

ShortestPathResult ThesaurusGraph::shortest_path(std::string_view source,
                                                 std::string_view target) const {
  ShortestPathResult result;
  int s = find_id(source);
  int t = find_id(target);
  if (s < 0 || t < 0) {
    result.status = PathStatus::node_absent;
    return result;
  }
  if (s == t) {
    result.status = PathStatus::found;
    result.path = {0.0, {std::string(source)}};
    return result;
  }
  std::vector<double> from_target = dijkstra(t);
  if (from_target[static_cast<std::size_t>(s)] == kInf) {
    result.status = PathStatus::unreachable;
    return result;
  }

  // Greedy walk from the source: at each node take the lexicographically
  // smallest neighbor v with dist_t[v] + w == dist_t[u], i.e. an edge that
  // continues some minimal path. The neighbor whose relaxation produced
  // dist_t[u] always satisfies this bit-exactly, and positive weights make
  // dist_t strictly decrease, so the walk reaches the target in <= n steps
  // and yields the smallest node sequence among minimal paths.
  result.status = PathStatus::found;
  result.path.nodes.push_back(names_[static_cast<std::size_t>(s)]);
  int current = s;
  double length = 0.0;
  while (current != t) {
    double here = from_target[static_cast<std::size_t>(current)];
    int best = -1;
    double best_weight = 0.0;
    for (const AdjEntry& edge : adjacency_[static_cast<std::size_t>(current)]) {
      if (from_target[static_cast<std::size_t>(edge.to)] + edge.weight != here) continue;
      if (best < 0 || names_[static_cast<std::size_t>(edge.to)] < names_[static_cast<std::size_t>(best)]) {
        best = edge.to;
        best_weight = edge.weight;
      }
    }
    current = best;
    length += best_weight;
    result.path.nodes.push_back(names_[static_cast<std::size_t>(current)]);
  }
  result.path.length = length;
  return result;
}

std::map<std::string, double> ThesaurusGraph::multi_source_distances(
    const std::set<std::string>& sources) const {
  std::map<std::string, double> out;
  if (sources.empty()) return out;
  std::vector<int> ids;
  ids.reserve(sources.size());
  for (const std::string& word : sources) {
    int id = find_id(word);
    if (id < 0) throw std::invalid_argument("source word is not a node: " + word);
    ids.push_back(id);
  }
  std::vector<double> dist = dijkstra_multi(ids);
  for (std::size_t i = 0; i < dist.size(); ++i)
    if (dist[i] != kInf) out.emplace(names_[i], dist[i]);
  return out;
}

DistanceOracle ThesaurusGraph::all_pairs_precompute(std::size_t cap) const {
  if (names_.size() > cap) throw CapExceededError(names_.size(), cap);
  DistanceOracle oracle;
  oracle.names_ = nodes();
  std::size_t n = oracle.names_.size();
  oracle.matrix_.assign(n * n, kInf);
  for (std::size_t row = 0; row < n; ++row) {
    int id = find_id(oracle.names_[row]);
    std::vector<double> dist = dijkstra(id);
    for (std::size_t k = 0; k < dist.size(); ++k) {
      int column = oracle.index_of(names_[k]);
      oracle.matrix_[row * n + static_cast<std::size_t>(column)] = dist[k];
    }
  }
  return oracle;
}

std::map<std::string, int> ThesaurusGraph::connected_components() const {
  std::map<std::string, int> out;
  std::vector<std::string> ordered = nodes();
  std::vector<int> component(names_.size(), -1);
  int next = 0;
  for (const std::string& word : ordered) {
    int start = find_id(word);
    if (component[static_cast<std::size_t>(start)] >= 0) continue;
    int id = next++;
    std::queue<int> frontier;
    frontier.push(start);
    component[static_cast<std::size_t>(start)] = id;
    while (!frontier.empty()) {
      int u = frontier.front();
      frontier.pop();
      for (const AdjEntry& edge : adjacency_[static_cast<std::size_t>(u)]) {
        if (component[static_cast<std::size_t>(edge.to)] >= 0) continue;
        component[static_cast<std::size_t>(edge.to)] = id;
        frontier.push(edge.to);
      }
    }
  }
  for (std::size_t i = 0; i < names_.size(); ++i) out.emplace(names_[i], component[i]);
  return out;
}

void ThesaurusGraph::export_edges(std::ostream& out) const {
  out << "node_a\tnode_b\tweight\tlabels\n";
  for (const EdgeRecord& edge : edge_list()) {
    std::string labels;
    for (std::size_t i = 0; i < edge.labels.size(); ++i) {
      if (i) labels += '|';
      labels += to_string(edge.labels[i]);
    }
    out << tsv::escape(edge.a) << '\t' << tsv::escape(edge.b) << '\t' << format_weight(edge.weight)
        << '\t' << labels << '\n';
  }
}

bool ThesaurusGraph::operator==(const ThesaurusGraph& other) const {
  return language_ == other.language_ && nodes() == other.nodes() &&
         edge_list() == other.edge_list();
}

ThesaurusGraph build_graph(const Dictionary& dict, const std::string& language,
                           const WeightConfig& weights) {
  ThesaurusGraph graph(language, weights);
  for (const PageEntry& entry : dict.entries()) {
    if (entry.language != language) continue;
    graph.add_word(entry.headword);
    for (const Meaning& meaning : entry.meanings)
      for (const auto& [type, targets] : meaning.relations)
        for (const std::string& target : targets)
          graph.add_relation(entry.headword, target, type);
  }
  return graph;
}

}  // namespace wikidict
