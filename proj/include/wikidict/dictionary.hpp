#pragma once

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "wikidict/wikitext.hpp"

namespace wikidict {

struct LanguageStats {
  long entries = 0;
  std::map<Pos, long> pos_counts;                // all five Pos keys present
  std::map<RelationType, long> relation_counts;  // all six keys present
  long total_relations = 0;
  long translations = 0;  // translation target rows

  LanguageStats();
  bool operator==(const LanguageStats&) const = default;
};

struct StatsReport {
  std::map<std::string, LanguageStats> by_language;

  bool operator==(const StatsReport&) const = default;
};

// In-memory dictionary over parsed entries, indexed by (headword, language)
// and by a bidirectional translation index. Immutable once filled; all query
// methods are const and safe to call concurrently.
class Dictionary {
 public:
  // Adds one entry. Relation and translation target lists are canonicalized
  // (sorted, deduplicated); both translation directions are indexed.
  void add(PageEntry entry);

  const std::vector<PageEntry>& entries() const { return entries_; }

  // All entries matching the key, in insertion order; empty when absent.
  std::vector<const PageEntry*> lookup(std::string_view headword, std::string_view language) const;

  // Union of translations over all meanings of all matching entries, in
  // either direction the index supports: forward rows of `headword`'s
  // entries in `source_language`, plus every `target_language` word whose
  // entry lists `headword` under `source_language`.
  std::set<std::string> translations(std::string_view headword, std::string_view source_language,
                                     std::string_view target_language) const;

  // Multiset equality over entries; insensitive to insertion order.
  bool operator==(const Dictionary& other) const;

 private:
  std::vector<PageEntry> entries_;
  std::map<std::pair<std::string, std::string>, std::vector<std::size_t>> by_key_;
  // (source language, source headword, target language) -> target headwords
  std::map<std::tuple<std::string, std::string, std::string>, std::set<std::string>> reverse_;
};

// Store I/O failure; message carries the file and, when known, the line.
struct StoreError : std::runtime_error {
  std::string file;
  long line;  // 0 = whole-file problem
  StoreError(const std::string& message, std::string file, long line = 0);
};

// Writes the five-file TSV store (page.tsv, lang_pos.tsv, meaning.tsv,
// relation.tsv, translation.tsv) into `dir`, creating it if needed. Output
// is byte-deterministic for a given dictionary: ids are assigned in sorted
// key order and rows are written sorted by primary key.
void save(const Dictionary& dict, const std::filesystem::path& dir);

// Reads a store directory back. Headers are validated verbatim; dangling
// foreign keys, bad enum values and non-consecutive meaning ordinals raise
// StoreError with the offending file and line. Row order is irrelevant.
Dictionary load(const std::filesystem::path& dir);

// Per-language entry / POS / relation / translation counts.
StatsReport stats(const Dictionary& dict);

}  // namespace wikidict
