#include "wikidict/wikitext.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <istream>
#include <iterator>
#include <optional>

namespace wikidict {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string ascii_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out)
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

void sort_unique(std::vector<std::string>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

// Drops {{...}} template spans; an unclosed {{ is kept as plain text.
std::string strip_templates(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    if (s.compare(i, 2, "{{") == 0) {
      std::size_t close = s.find("}}", i + 2);
      if (close != std::string_view::npos) {
        i = close + 2;
        continue;
      }
    }
    out += s[i++];
  }
  return out;
}

// Extracts [[target|display]] links: returns targets, and if `plain` is
// given, appends the display form (or target) in place of each link and
// everything outside links verbatim.
std::vector<std::string> extract_links(std::string_view s, std::string* plain) {
  std::vector<std::string> targets;
  std::size_t i = 0;
  while (i < s.size()) {
    if (s.compare(i, 2, "[[") == 0) {
      std::size_t close = s.find("]]", i + 2);
      if (close != std::string_view::npos) {
        std::string_view inner = s.substr(i + 2, close - i - 2);
        std::size_t pipe = inner.find('|');
        std::string_view target = trim(pipe == std::string_view::npos ? inner : inner.substr(0, pipe));
        std::string_view display = pipe == std::string_view::npos ? target : trim(inner.substr(pipe + 1));
        if (!target.empty()) targets.emplace_back(target);
        if (plain) plain->append(display);
        i = close + 2;
        continue;
      }
    }
    if (plain) *plain += s[i];
    ++i;
  }
  return targets;
}

// Parses a leading "N." meaning marker; returns the ordinal and strips the
// marker from `line`, or returns nullopt leaving `line` untouched.
std::optional<int> take_ordinal(std::string_view& line) {
  std::string_view rest = trim(line);
  std::size_t digits = 0;
  while (digits < rest.size() && std::isdigit(static_cast<unsigned char>(rest[digits]))) ++digits;
  if (digits == 0 || digits >= rest.size() || rest[digits] != '.') return std::nullopt;
  int value = 0;
  auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + digits, value);
  if (ec != std::errc() || value < 1) return std::nullopt;
  line = rest.substr(digits + 1);
  return value;
}

struct Heading {
  int level = 0;
  std::string_view title;
};

std::optional<Heading> parse_heading(std::string_view line) {
  std::string_view s = trim(line);
  if (s.size() < 2 || s.front() != '=' || s.back() != '=') return std::nullopt;
  std::size_t open = 0;
  while (open < s.size() && s[open] == '=') ++open;
  std::size_t close = 0;
  while (close < s.size() && s[s.size() - 1 - close] == '=') ++close;
  if (open + close >= s.size()) return std::nullopt;  // "===" style runs
  if (open != close) return std::nullopt;
  std::string_view title = trim(s.substr(open, s.size() - open - close));
  if (title.empty()) return std::nullopt;
  return Heading{static_cast<int>(open), title};
}

// Section-heading names for relation blocks (plural and singular).
bool relation_heading(std::string_view title, RelationType& out) {
  std::string t = ascii_lower(title);
  if (!t.empty() && t.back() == 's') t.pop_back();
  return relation_type_from_string(t, out);
}

bool translation_heading(std::string_view title) {
  std::string t = ascii_lower(title);
  return t == "translations" || t == "translation";
}

// Validates UTF-8; returns the offset of the first bad byte or npos.
std::size_t find_invalid_utf8(std::string_view s) {
  std::size_t i = 0;
  auto cont = [&](std::size_t k) {
    return k < s.size() && (static_cast<unsigned char>(s[k]) & 0xC0) == 0x80;
  };
  while (i < s.size()) {
    unsigned char b = static_cast<unsigned char>(s[i]);
    if (b < 0x80) { ++i; continue; }
    if (b >= 0xC2 && b <= 0xDF) {
      if (!cont(i + 1)) return i;
      i += 2;
    } else if (b == 0xE0) {
      if (i + 1 >= s.size() || static_cast<unsigned char>(s[i + 1]) < 0xA0 ||
          static_cast<unsigned char>(s[i + 1]) > 0xBF || !cont(i + 2))
        return i;
      i += 3;
    } else if ((b >= 0xE1 && b <= 0xEC) || b == 0xEE || b == 0xEF) {
      if (!cont(i + 1) || !cont(i + 2)) return i;
      i += 3;
    } else if (b == 0xED) {
      if (i + 1 >= s.size() || static_cast<unsigned char>(s[i + 1]) < 0x80 ||
          static_cast<unsigned char>(s[i + 1]) > 0x9F || !cont(i + 2))
        return i;
      i += 3;
    } else if (b == 0xF0) {
      if (i + 1 >= s.size() || static_cast<unsigned char>(s[i + 1]) < 0x90 ||
          static_cast<unsigned char>(s[i + 1]) > 0xBF || !cont(i + 2) || !cont(i + 3))
        return i;
      i += 4;
    } else if (b >= 0xF1 && b <= 0xF3) {
      if (!cont(i + 1) || !cont(i + 2) || !cont(i + 3)) return i;
      i += 4;
    } else if (b == 0xF4) {
      if (i + 1 >= s.size() || static_cast<unsigned char>(s[i + 1]) < 0x80 ||
          static_cast<unsigned char>(s[i + 1]) > 0x8F || !cont(i + 2) || !cont(i + 3))
        return i;
      i += 4;
    } else {
      return i;
    }
  }
  return std::string_view::npos;
}

constexpr std::string_view kPageMarker = "%%PAGE";

}  // namespace

const char* to_string(Pos pos) {
  switch (pos) {
    case Pos::noun: return "noun";
    case Pos::verb: return "verb";
    case Pos::adjective: return "adjective";
    case Pos::adverb: return "adverb";
    case Pos::unknown: return "unknown";
  }
  return "unknown";
}

const char* to_string(RelationType type) {
  switch (type) {
    case RelationType::synonym: return "synonym";
    case RelationType::antonym: return "antonym";
    case RelationType::hypernym: return "hypernym";
    case RelationType::hyponym: return "hyponym";
    case RelationType::holonym: return "holonym";
    case RelationType::meronym: return "meronym";
  }
  return "synonym";
}

bool pos_from_string(std::string_view name, Pos& out) {
  for (Pos p : kAllPos) {
    if (name == to_string(p)) {
      out = p;
      return true;
    }
  }
  return false;
}

bool relation_type_from_string(std::string_view name, RelationType& out) {
  for (RelationType t : kAllRelationTypes) {
    if (name == to_string(t)) {
      out = t;
      return true;
    }
  }
  return false;
}

bool valid_language_code(std::string_view code) {
  if (code.size() < 2 || code.size() > 3) return false;
  return std::all_of(code.begin(), code.end(), [](char c) { return c >= 'a' && c <= 'z'; });
}

FormatError::FormatError(const std::string& message, std::size_t off)
    : std::runtime_error(message + " (byte offset " + std::to_string(off) + ")"), offset(off) {}

EncodingError::EncodingError(const std::string& message, std::size_t off)
    : std::runtime_error(message + " (byte offset " + std::to_string(off) + ")"), offset(off) {}

std::vector<RawPage> split_pages(std::string_view dump) {
  if (std::size_t bad = find_invalid_utf8(dump); bad != std::string_view::npos)
    throw EncodingError("invalid UTF-8 sequence", bad);

  std::vector<RawPage> pages;
  std::size_t pos = 0;
  std::size_t text_start = 0;  // of the page currently open
  bool have_page = false;
  std::string current_title;

  auto close_page = [&](std::size_t end) {
    if (have_page)
      pages.push_back({current_title, std::string(dump.substr(text_start, end - text_start))});
  };

  while (pos <= dump.size()) {
    std::size_t eol = dump.find('\n', pos);
    std::size_t line_end = eol == std::string_view::npos ? dump.size() : eol;
    std::string_view line = dump.substr(pos, line_end - pos);

    if (line.substr(0, kPageMarker.size()) == kPageMarker) {
      if (line.size() > kPageMarker.size() && line[kPageMarker.size()] != ' ')
        throw FormatError("malformed page delimiter", pos);
      std::string_view title = trim(line.substr(kPageMarker.size()));
      if (title.empty()) throw FormatError("page delimiter with empty title", pos);
      close_page(pos);
      have_page = true;
      current_title.assign(title);
      text_start = line_end == dump.size() ? dump.size() : line_end + 1;
    } else if (!have_page) {
      // only whitespace may precede the first delimiter
      for (std::size_t k = 0; k < line.size(); ++k)
        if (!std::isspace(static_cast<unsigned char>(line[k])))
          throw FormatError("content before first page delimiter", pos + k);
    }

    if (eol == std::string_view::npos) break;
    pos = eol + 1;
  }
  close_page(dump.size());
  return pages;
}

std::vector<RawPage> split_pages(std::istream& in) {
  std::string all(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>{});
  return split_pages(all);
}

std::map<int, std::map<RelationType, std::vector<std::string>>> parse_relation_block(
    std::string_view body, RelationType type) {
  std::map<int, std::map<RelationType, std::vector<std::string>>> out;
  std::size_t pos = 0;
  while (pos <= body.size()) {
    std::size_t eol = body.find('\n', pos);
    std::string_view line = body.substr(pos, (eol == std::string_view::npos ? body.size() : eol) - pos);
    std::string cleaned = strip_templates(line);
    std::string_view rest = cleaned;
    int ordinal = take_ordinal(rest).value_or(1);
    std::vector<std::string> targets = extract_links(rest, nullptr);
    if (!targets.empty()) {
      auto& list = out[ordinal][type];
      list.insert(list.end(), targets.begin(), targets.end());
      sort_unique(list);
    }
    if (eol == std::string_view::npos) break;
    pos = eol + 1;
  }
  return out;
}

TranslationBlock parse_translation_block(std::string_view body) {
  TranslationBlock out;
  std::size_t pos = 0;
  while (pos <= body.size()) {
    std::size_t eol = body.find('\n', pos);
    std::string_view line = body.substr(pos, (eol == std::string_view::npos ? body.size() : eol) - pos);
    std::string cleaned = strip_templates(line);
    std::string_view rest = cleaned;
    int ordinal = take_ordinal(rest).value_or(1);
    rest = trim(rest);
    std::size_t colon = rest.find(':');
    if (colon != std::string_view::npos && !trim(rest).empty()) {
      std::string_view label = trim(rest.substr(0, colon));
      if (!valid_language_code(label)) {
        ++out.warnings;
      } else {
        std::vector<std::string> targets = extract_links(rest.substr(colon + 1), nullptr);
        if (!targets.empty()) {
          auto& list = out.by_ordinal[ordinal][std::string(label)];
          list.insert(list.end(), targets.begin(), targets.end());
          sort_unique(list);
        }
      }
    }
    if (eol == std::string_view::npos) break;
    pos = eol + 1;
  }
  return out;
}

namespace {

struct BlockState {
  enum class Kind { none, relation, translation } kind = Kind::none;
  RelationType type = RelationType::synonym;
  std::string body;
  int entry = -1;  // index into entries the block belongs to
};

// Index of the meaning a block line with `ordinal` lands on; creates the
// implicit first meaning when the entry has none. Out-of-range ordinals
// fall back to meaning 1 and count a warning.
std::size_t resolve_ordinal(PageEntry& entry, int ordinal, int& warnings) {
  if (entry.meanings.empty()) entry.meanings.push_back(Meaning{1, "", {}, {}, {}});
  if (ordinal >= 1 && static_cast<std::size_t>(ordinal) <= entry.meanings.size())
    return static_cast<std::size_t>(ordinal) - 1;
  ++warnings;
  return 0;
}

void attach_relations(PageEntry& entry,
                      const std::map<int, std::map<RelationType, std::vector<std::string>>>& parsed,
                      int& warnings) {
  for (const auto& [ordinal, by_type] : parsed) {
    std::size_t at = resolve_ordinal(entry, ordinal, warnings);
    for (const auto& [t, words] : by_type) {
      auto& list = entry.meanings[at].relations[t];
      list.insert(list.end(), words.begin(), words.end());
      sort_unique(list);
    }
  }
}

void attach_translations(PageEntry& entry,
                         const std::map<int, std::map<std::string, std::vector<std::string>>>& parsed,
                         int& warnings) {
  for (const auto& [ordinal, by_lang] : parsed) {
    std::size_t at = resolve_ordinal(entry, ordinal, warnings);
    for (const auto& [lang, words] : by_lang) {
      auto& list = entry.meanings[at].translations[lang];
      list.insert(list.end(), words.begin(), words.end());
      sort_unique(list);
    }
  }
}

}  // namespace

PageParse parse_page(const RawPage& page) {
  PageParse result;
  std::vector<PageEntry>& entries = result.entries;

  std::string current_language;  // empty = no usable language section
  int current_entry = -1;
  BlockState block;

  auto flush_block = [&]() {
    if (block.kind == BlockState::Kind::none) return;
    PageEntry& entry = entries[static_cast<std::size_t>(block.entry)];
    if (block.kind == BlockState::Kind::relation) {
      attach_relations(entry, parse_relation_block(block.body, block.type), result.warnings);
    } else {
      TranslationBlock parsed = parse_translation_block(block.body);
      result.warnings += parsed.warnings;
      attach_translations(entry, parsed.by_ordinal, result.warnings);
    }
    block = BlockState{};
  };

  std::string_view text = page.text;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, (eol == std::string_view::npos ? text.size() : eol) - pos);

    if (auto heading = parse_heading(line)) {
      flush_block();
      if (heading->level == 1) {
        std::string code = ascii_lower(heading->title);
        if (valid_language_code(code)) {
          current_language = code;
        } else {
          current_language.clear();
          ++result.warnings;  // unusable language section, content skipped
        }
        current_entry = -1;
      } else if (heading->level == 2) {
        if (current_language.empty()) {
          ++result.warnings;
          current_entry = -1;
        } else {
          Pos pos_value = Pos::unknown;
          pos_from_string(ascii_lower(heading->title), pos_value);
          entries.push_back(PageEntry{page.title, current_language, pos_value, {}});
          current_entry = static_cast<int>(entries.size()) - 1;
        }
      } else {  // level >= 3: relation/translation/unknown block
        RelationType type;
        if (current_entry < 0) {
          ++result.warnings;
        } else if (heading->level == 3 && relation_heading(heading->title, type)) {
          block.kind = BlockState::Kind::relation;
          block.type = type;
          block.entry = current_entry;
        } else if (heading->level == 3 && translation_heading(heading->title)) {
          block.kind = BlockState::Kind::translation;
          block.entry = current_entry;
        } else {
          ++result.warnings;  // unrecognized block, lines until next heading skipped
        }
      }
    } else if (block.kind != BlockState::Kind::none) {
      block.body.append(line);
      block.body += '\n';
    } else if (current_entry >= 0 && !line.empty() && line.front() == '#') {
      std::string_view rest = line;
      while (!rest.empty() && rest.front() == '#') rest.remove_prefix(1);
      PageEntry& entry = entries[static_cast<std::size_t>(current_entry)];
      Meaning meaning;
      meaning.ordinal = static_cast<int>(entry.meanings.size()) + 1;
      std::string plain;
      meaning.links = extract_links(strip_templates(trim(rest)), &plain);
      meaning.gloss = std::string(trim(plain));
      entry.meanings.push_back(std::move(meaning));
    }
    // anything else is plain prose; ignored

    if (eol == std::string_view::npos) break;
    pos = eol + 1;
  }
  flush_block();
  return result;
}

}  // namespace wikidict
