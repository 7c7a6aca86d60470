#pragma once

// Shared test helpers: independent oracles (BFS hop counts, rank
// correlation computed from scratch), random input generators, fixture
// paths and a tiny process runner. Everything here recomputes results on
// its own so library code is never checked against itself.

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <queue>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "wikidict/dictionary.hpp"
#include "wikidict/wikitext.hpp"

namespace testutil {

inline std::filesystem::path fixture_dir() { return std::filesystem::path(WIKIDICT_FIXTURE_DIR); }

inline std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

inline void write_text_file(const std::filesystem::path& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  out << body;
}

// ---- BFS oracle over an explicit edge list ------------------------------

struct OracleGraph {
  int n = 0;
  std::vector<std::vector<int>> adj;

  explicit OracleGraph(int nodes) : n(nodes), adj(static_cast<std::size_t>(nodes)) {}

  void add_edge(int a, int b) {
    if (a == b) return;
    adj[static_cast<std::size_t>(a)].push_back(b);
    adj[static_cast<std::size_t>(b)].push_back(a);
  }

  // hop counts from src; -1 = unreachable
  std::vector<int> bfs(int src) const {
    std::vector<int> dist(static_cast<std::size_t>(n), -1);
    std::queue<int> frontier;
    dist[static_cast<std::size_t>(src)] = 0;
    frontier.push(src);
    while (!frontier.empty()) {
      int u = frontier.front();
      frontier.pop();
      for (int v : adj[static_cast<std::size_t>(u)])
        if (dist[static_cast<std::size_t>(v)] < 0) {
          dist[static_cast<std::size_t>(v)] = dist[static_cast<std::size_t>(u)] + 1;
          frontier.push(v);
        }
    }
    return dist;
  }
};

inline std::string node_name(int i) {
  char buf[8];
  std::snprintf(buf, sizeof buf, "n%02d", i);
  return buf;
}

// Random undirected edge list with inclusion probability p per pair.
inline std::vector<std::pair<int, int>> random_edges(std::mt19937& rng, int nodes, double p) {
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < nodes; ++i)
    for (int j = i + 1; j < nodes; ++j)
      if (coin(rng) < p) edges.emplace_back(i, j);
  return edges;
}

inline wikidict::RelationType random_relation_type(std::mt19937& rng) {
  std::uniform_int_distribution<int> pick(0, wikidict::kRelationTypeCount - 1);
  return wikidict::kAllRelationTypes[pick(rng)];
}

// ---- independent rank correlation ----------------------------------------

inline std::vector<double> oracle_ranks(const std::vector<double>& values) {
  std::vector<double> sorted = values;
  std::sort(sorted.begin(), sorted.end());
  std::vector<double> ranks(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    auto lo = std::lower_bound(sorted.begin(), sorted.end(), values[i]);
    auto hi = std::upper_bound(sorted.begin(), sorted.end(), values[i]);
    double first = static_cast<double>(lo - sorted.begin()) + 1.0;
    double count = static_cast<double>(hi - lo);
    ranks[i] = first + (count - 1.0) / 2.0;
  }
  return ranks;
}

inline double oracle_pearson(const std::vector<double>& xs, const std::vector<double>& ys) {
  double n = static_cast<double>(xs.size());
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
  }
  double mx = sx / n, my = sy / n;
  double cov = 0, vx = 0, vy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    cov += (xs[i] - mx) * (ys[i] - my);
    vx += (xs[i] - mx) * (xs[i] - mx);
    vy += (ys[i] - my) * (ys[i] - my);
  }
  return cov / std::sqrt(vx * vy);
}

inline double oracle_spearman(const std::vector<double>& xs, const std::vector<double>& ys) {
  return oracle_pearson(oracle_ranks(xs), oracle_ranks(ys));
}

// ---- random dictionary generator -----------------------------------------

// Entries with unique (headword, language, pos) keys; glosses exercise the
// escaping (tabs, newlines, backslashes, non-ASCII).
inline wikidict::Dictionary random_dictionary(std::mt19937& rng) {
  using namespace wikidict;
  const std::vector<std::string> langs = {"ru", "en", "de"};
  const std::vector<std::string> words = {
      "слово",  "дом",   "идея",  "water", "stone", "light", "buch", "zeit",
      "путь",   "город", "river", "wind",  "тьма",  "свет",  "baum", "berg"};
  const std::vector<std::string> gloss_bits = {
      "plain text", "с\tтабом", "две\nстроки", "back\\slash", "кавычки \"и\" ещё",
      "mixed \t\\\n bits", "", "тире — и многоточие…"};

  std::uniform_int_distribution<int> entry_count(1, 8);
  std::uniform_int_distribution<int> meaning_count(1, 3);
  std::uniform_int_distribution<int> small(0, 2);
  std::uniform_int_distribution<std::size_t> lang_pick(0, langs.size() - 1);
  std::uniform_int_distribution<std::size_t> word_pick(0, words.size() - 1);
  std::uniform_int_distribution<std::size_t> gloss_pick(0, gloss_bits.size() - 1);
  std::uniform_int_distribution<int> pos_pick(0, 4);

  Dictionary dict;
  std::set<std::tuple<std::string, std::string, Pos>> used;
  int wanted = entry_count(rng);
  for (int attempt = 0; attempt < wanted * 4 && static_cast<int>(used.size()) < wanted; ++attempt) {
    PageEntry entry;
    entry.headword = words[word_pick(rng)] + std::to_string(small(rng));
    entry.language = langs[lang_pick(rng)];
    entry.pos = kAllPos[pos_pick(rng)];
    if (!used.insert({entry.headword, entry.language, entry.pos}).second) continue;

    int meanings = meaning_count(rng);
    for (int m = 1; m <= meanings; ++m) {
      Meaning meaning;
      meaning.ordinal = m;
      meaning.gloss = gloss_bits[gloss_pick(rng)];
      for (int l = small(rng); l > 0; --l) meaning.links.push_back(words[word_pick(rng)]);
      for (int r = small(rng); r > 0; --r) {
        RelationType type = random_relation_type(rng);
        for (int t = small(rng) + 1; t > 0; --t)
          meaning.relations[type].push_back(words[word_pick(rng)]);
      }
      for (int t = small(rng); t > 0; --t) {
        const std::string& lang = langs[lang_pick(rng)];
        for (int w = small(rng) + 1; w > 0; --w)
          meaning.translations[lang].push_back(words[word_pick(rng)]);
      }
      entry.meanings.push_back(std::move(meaning));
    }
    dict.add(std::move(entry));
  }
  return dict;
}

// ---- process runner -------------------------------------------------------

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

// Runs a command line through the shell, capturing both streams.
inline RunResult run_command(const std::string& command, const std::filesystem::path& work_dir) {
  std::filesystem::path out_file = work_dir / "cmd_stdout.txt";
  std::filesystem::path err_file = work_dir / "cmd_stderr.txt";
  std::string full =
      command + " >\"" + out_file.string() + "\" 2>\"" + err_file.string() + "\"";
  int status = std::system(full.c_str());
  RunResult result;
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  result.out = read_text_file(out_file);
  result.err = read_text_file(err_file);
  return result;
}

inline std::filesystem::path make_temp_dir(const std::string& tag) {
  std::filesystem::path dir =
      std::filesystem::temp_directory_path() / ("wikidict_" + tag + "_" + std::to_string(::getpid()));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace testutil
