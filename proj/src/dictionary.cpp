#include "wikidict/dictionary.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "wikidict/tsv.hpp"

namespace wikidict {

LanguageStats::LanguageStats() {
  for (Pos p : kAllPos) pos_counts[p] = 0;
  for (RelationType t : kAllRelationTypes) relation_counts[t] = 0;
}

void Dictionary::add(PageEntry entry) {
  for (Meaning& meaning : entry.meanings) {
    for (auto& [type, targets] : meaning.relations) {
      std::sort(targets.begin(), targets.end());
      targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
    }
    for (auto& [lang, targets] : meaning.translations) {
      std::sort(targets.begin(), targets.end());
      targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
    }
  }
  for (const Meaning& meaning : entry.meanings)
    for (const auto& [lang, targets] : meaning.translations)
      for (const std::string& target : targets)
        reverse_[{lang, target, entry.language}].insert(entry.headword);

  by_key_[{entry.headword, entry.language}].push_back(entries_.size());
  entries_.push_back(std::move(entry));
}

std::vector<const PageEntry*> Dictionary::lookup(std::string_view headword,
                                                 std::string_view language) const {
  std::vector<const PageEntry*> out;
  auto it = by_key_.find({std::string(headword), std::string(language)});
  if (it == by_key_.end()) return out;
  out.reserve(it->second.size());
  for (std::size_t index : it->second) out.push_back(&entries_[index]);
  return out;
}

std::set<std::string> Dictionary::translations(std::string_view headword,
                                               std::string_view source_language,
                                               std::string_view target_language) const {
  std::set<std::string> out;
  for (const PageEntry* entry : lookup(headword, source_language))
    for (const Meaning& meaning : entry->meanings)
      if (auto it = meaning.translations.find(std::string(target_language));
          it != meaning.translations.end())
        out.insert(it->second.begin(), it->second.end());

  auto rev = reverse_.find({std::string(source_language), std::string(headword),
                            std::string(target_language)});
  if (rev != reverse_.end()) out.insert(rev->second.begin(), rev->second.end());
  return out;
}

bool Dictionary::operator==(const Dictionary& other) const {
  if (entries_.size() != other.entries_.size()) return false;
  auto key_of = [](const PageEntry& e) {
    return std::tuple<const std::string&, const std::string&, Pos>(e.headword, e.language, e.pos);
  };
  auto sorted_view = [&](const std::vector<PageEntry>& src) {
    std::vector<const PageEntry*> view;
    view.reserve(src.size());
    for (const PageEntry& e : src) view.push_back(&e);
    std::stable_sort(view.begin(), view.end(),
                     [&](const PageEntry* a, const PageEntry* b) { return key_of(*a) < key_of(*b); });
    return view;
  };
  std::vector<const PageEntry*> a = sorted_view(entries_);
  std::vector<const PageEntry*> b = sorted_view(other.entries_);
  // compare equal-key runs as multisets; runs are tiny in practice
  std::size_t i = 0;
  while (i < a.size()) {
    std::size_t j = i;
    while (j < a.size() && key_of(*a[j]) == key_of(*a[i])) ++j;
    if (key_of(*b[i]) != key_of(*a[i])) return false;
    if (j < b.size() && key_of(*b[j]) == key_of(*a[i])) return false;
    if (!std::is_permutation(a.begin() + i, a.begin() + j, b.begin() + i,
                             [](const PageEntry* x, const PageEntry* y) { return *x == *y; }))
      return false;
    i = j;
  }
  return true;
}

StoreError::StoreError(const std::string& message, std::string file_in, long line_in)
    : std::runtime_error(line_in > 0 ? message + " [" + file_in + ":" + std::to_string(line_in) + "]"
                                     : message + " [" + file_in + "]"),
      file(std::move(file_in)),
      line(line_in) {}

namespace {

constexpr const char* kPageFile = "page.tsv";
constexpr const char* kLangPosFile = "lang_pos.tsv";
constexpr const char* kMeaningFile = "meaning.tsv";
constexpr const char* kRelationFile = "relation.tsv";
constexpr const char* kTranslationFile = "translation.tsv";

constexpr const char* kPageHeader = "page_id\ttitle";
constexpr const char* kLangPosHeader = "lang_pos_id\tpage_id\tlang\tpos";
constexpr const char* kMeaningHeader = "meaning_id\tlang_pos_id\tordinal\tgloss\tlinks";
constexpr const char* kRelationHeader = "meaning_id\trelation_type\ttarget_headword";
constexpr const char* kTranslationHeader = "meaning_id\tlang\ttarget_headword";

std::string join_links(const std::vector<std::string>& links) {
  std::string out;
  for (std::size_t i = 0; i < links.size(); ++i) {
    if (i) out += '|';
    out += links[i];
  }
  return out;
}

std::vector<std::string> split_links(const std::string& field) {
  std::vector<std::string> out;
  if (field.empty()) return out;
  std::size_t start = 0;
  while (true) {
    std::size_t bar = field.find('|', start);
    if (bar == std::string::npos) {
      out.push_back(field.substr(start));
      break;
    }
    out.push_back(field.substr(start, bar - start));
    start = bar + 1;
  }
  return out;
}

void write_file(const std::filesystem::path& dir, const char* name, const std::string& body) {
  std::filesystem::path path = dir / name;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw StoreError("cannot open for writing", path.string());
  out << body;
  if (!out) throw StoreError("write failed", path.string());
}

struct LoadedFile {
  std::vector<std::vector<std::string>> rows;  // unescaped fields, data lines only
  std::vector<long> line_numbers;              // 1-based, parallel to rows
};

LoadedFile read_file(const std::filesystem::path& dir, const char* name, const char* header,
                     std::size_t columns) {
  std::filesystem::path path = dir / name;
  std::ifstream in(path, std::ios::binary);
  if (!in) throw StoreError("missing store file", path.string());
  LoadedFile out;
  std::string line;
  long line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line_number == 1) {
      if (line != header)
        throw StoreError("unexpected header, want \"" + std::string(header) + "\"", path.string(), 1);
      continue;
    }
    if (line.empty()) continue;
    std::vector<std::string> fields;
    try {
      fields = tsv::split_line(line);
    } catch (const std::invalid_argument& e) {
      throw StoreError(std::string("bad field escape: ") + e.what(), path.string(), line_number);
    }
    if (fields.size() != columns)
      throw StoreError("expected " + std::to_string(columns) + " columns, got " +
                           std::to_string(fields.size()),
                       path.string(), line_number);
    out.rows.push_back(std::move(fields));
    out.line_numbers.push_back(line_number);
  }
  if (line_number == 0) throw StoreError("empty store file, header missing", path.string());
  return out;
}

long parse_id(const std::string& field, const std::filesystem::path& dir, const char* name,
              long line) {
  long value = 0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size() || value < 1)
    throw StoreError("bad id \"" + field + "\"", (dir / name).string(), line);
  return value;
}

}  // namespace

void save(const Dictionary& dict, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw StoreError("cannot create directory: " + ec.message(), dir.string());

  const std::vector<PageEntry>& entries = dict.entries();

  std::map<std::string, long> page_ids;
  for (const PageEntry& entry : entries) page_ids.emplace(entry.headword, 0);
  long next_page = 0;
  for (auto& [title, id] : page_ids) id = ++next_page;

  // entry order: (title, lang, pos, insertion) so ids are stable
  std::vector<std::size_t> order(entries.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    const PageEntry& a = entries[x];
    const PageEntry& b = entries[y];
    return std::tie(a.headword, a.language, a.pos) < std::tie(b.headword, b.language, b.pos);
  });

  std::ostringstream page_out, lang_pos_out, meaning_out, relation_out, translation_out;
  page_out << kPageHeader << '\n';
  lang_pos_out << kLangPosHeader << '\n';
  meaning_out << kMeaningHeader << '\n';
  relation_out << kRelationHeader << '\n';
  translation_out << kTranslationHeader << '\n';

  for (const auto& [title, id] : page_ids)
    page_out << id << '\t' << tsv::escape(title) << '\n';

  long lang_pos_id = 0;
  long meaning_id = 0;
  for (std::size_t index : order) {
    const PageEntry& entry = entries[index];
    ++lang_pos_id;
    lang_pos_out << lang_pos_id << '\t' << page_ids[entry.headword] << '\t'
                 << tsv::escape(entry.language) << '\t' << to_string(entry.pos) << '\n';
    for (const Meaning& meaning : entry.meanings) {
      ++meaning_id;
      meaning_out << meaning_id << '\t' << lang_pos_id << '\t' << meaning.ordinal << '\t'
                  << tsv::escape(meaning.gloss) << '\t' << tsv::escape(join_links(meaning.links))
                  << '\n';
      for (const auto& [type, targets] : meaning.relations)
        for (const std::string& target : targets)
          relation_out << meaning_id << '\t' << to_string(type) << '\t' << tsv::escape(target)
                       << '\n';
      for (const auto& [lang, targets] : meaning.translations)
        for (const std::string& target : targets)
          translation_out << meaning_id << '\t' << tsv::escape(lang) << '\t'
                          << tsv::escape(target) << '\n';
    }
  }

  write_file(dir, kPageFile, page_out.str());
  write_file(dir, kLangPosFile, lang_pos_out.str());
  write_file(dir, kMeaningFile, meaning_out.str());
  write_file(dir, kRelationFile, relation_out.str());
  write_file(dir, kTranslationFile, translation_out.str());
}

Dictionary load(const std::filesystem::path& dir) {
  LoadedFile pages = read_file(dir, kPageFile, kPageHeader, 2);
  LoadedFile lang_pos = read_file(dir, kLangPosFile, kLangPosHeader, 4);
  LoadedFile meanings = read_file(dir, kMeaningFile, kMeaningHeader, 5);
  LoadedFile relations = read_file(dir, kRelationFile, kRelationHeader, 3);
  LoadedFile translations = read_file(dir, kTranslationFile, kTranslationHeader, 3);

  std::map<long, std::string> titles;
  for (std::size_t i = 0; i < pages.rows.size(); ++i) {
    long id = parse_id(pages.rows[i][0], dir, kPageFile, pages.line_numbers[i]);
    if (!titles.emplace(id, pages.rows[i][1]).second)
      throw StoreError("duplicate page_id " + std::to_string(id), (dir / kPageFile).string(),
                       pages.line_numbers[i]);
  }

  struct EntryRow {
    std::string headword;
    std::string language;
    Pos pos;
    std::map<int, Meaning> meanings;  // by ordinal
  };
  std::map<long, EntryRow> entry_rows;
  for (std::size_t i = 0; i < lang_pos.rows.size(); ++i) {
    const auto& row = lang_pos.rows[i];
    long line = lang_pos.line_numbers[i];
    long id = parse_id(row[0], dir, kLangPosFile, line);
    long page_id = parse_id(row[1], dir, kLangPosFile, line);
    auto title = titles.find(page_id);
    if (title == titles.end())
      throw StoreError("lang_pos row references unknown page_id " + std::to_string(page_id),
                       (dir / kLangPosFile).string(), line);
    Pos pos;
    if (!pos_from_string(row[3], pos))
      throw StoreError("unknown pos \"" + row[3] + "\"", (dir / kLangPosFile).string(), line);
    if (!entry_rows.emplace(id, EntryRow{title->second, row[2], pos, {}}).second)
      throw StoreError("duplicate lang_pos_id " + std::to_string(id),
                       (dir / kLangPosFile).string(), line);
  }

  std::map<long, std::pair<long, int>> meaning_home;  // meaning_id -> (lang_pos_id, ordinal)
  for (std::size_t i = 0; i < meanings.rows.size(); ++i) {
    const auto& row = meanings.rows[i];
    long line = meanings.line_numbers[i];
    long id = parse_id(row[0], dir, kMeaningFile, line);
    long owner = parse_id(row[1], dir, kMeaningFile, line);
    long ordinal = parse_id(row[2], dir, kMeaningFile, line);
    auto entry = entry_rows.find(owner);
    if (entry == entry_rows.end())
      throw StoreError("meaning row references unknown lang_pos_id " + std::to_string(owner),
                       (dir / kMeaningFile).string(), line);
    if (!meaning_home.emplace(id, std::make_pair(owner, static_cast<int>(ordinal))).second)
      throw StoreError("duplicate meaning_id " + std::to_string(id), (dir / kMeaningFile).string(),
                       line);
    Meaning meaning;
    meaning.ordinal = static_cast<int>(ordinal);
    meaning.gloss = row[3];
    meaning.links = split_links(row[4]);
    if (!entry->second.meanings.emplace(meaning.ordinal, std::move(meaning)).second)
      throw StoreError("duplicate meaning ordinal " + std::to_string(ordinal) +
                           " in lang_pos_id " + std::to_string(owner),
                       (dir / kMeaningFile).string(), line);
  }

  auto find_meaning = [&](const std::string& field, const char* name, long line) -> Meaning& {
    long id = parse_id(field, dir, name, line);
    auto home = meaning_home.find(id);
    if (home == meaning_home.end())
      throw StoreError("row references unknown meaning_id " + std::to_string(id),
                       (dir / name).string(), line);
    return entry_rows.at(home->second.first).meanings.at(home->second.second);
  };

  for (std::size_t i = 0; i < relations.rows.size(); ++i) {
    const auto& row = relations.rows[i];
    long line = relations.line_numbers[i];
    Meaning& meaning = find_meaning(row[0], kRelationFile, line);
    RelationType type;
    if (!relation_type_from_string(row[1], type))
      throw StoreError("unknown relation_type \"" + row[1] + "\"", (dir / kRelationFile).string(),
                       line);
    meaning.relations[type].push_back(row[2]);
  }

  for (std::size_t i = 0; i < translations.rows.size(); ++i) {
    const auto& row = translations.rows[i];
    long line = translations.line_numbers[i];
    Meaning& meaning = find_meaning(row[0], kTranslationFile, line);
    meaning.translations[row[1]].push_back(row[2]);
  }

  Dictionary dict;
  for (auto& [id, row] : entry_rows) {
    PageEntry entry{std::move(row.headword), std::move(row.language), row.pos, {}};
    int expected = 1;
    for (auto& [ordinal, meaning] : row.meanings) {
      if (ordinal != expected)
        throw StoreError("meaning ordinals of lang_pos_id " + std::to_string(id) +
                             " are not consecutive from 1",
                         (dir / kMeaningFile).string());
      ++expected;
      entry.meanings.push_back(std::move(meaning));
    }
    dict.add(std::move(entry));  // canonicalizes target lists
  }
  return dict;
}

StatsReport stats(const Dictionary& dict) {
  StatsReport report;
  for (const PageEntry& entry : dict.entries()) {
    LanguageStats& lang = report.by_language[entry.language];
    ++lang.entries;
    ++lang.pos_counts[entry.pos];
    for (const Meaning& meaning : entry.meanings) {
      for (const auto& [type, targets] : meaning.relations) {
        lang.relation_counts[type] += static_cast<long>(targets.size());
        lang.total_relations += static_cast<long>(targets.size());
      }
      for (const auto& [code, targets] : meaning.translations)
        lang.translations += static_cast<long>(targets.size());
    }
  }
  return report;
}

}  // namespace wikidict
