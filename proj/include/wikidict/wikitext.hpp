#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace wikidict {

enum class Pos { noun, verb, adjective, adverb, unknown };

enum class RelationType { synonym, antonym, hypernym, hyponym, holonym, meronym };

inline constexpr int kRelationTypeCount = 6;
inline constexpr RelationType kAllRelationTypes[kRelationTypeCount] = {
    RelationType::synonym,  RelationType::antonym, RelationType::hypernym,
    RelationType::hyponym,  RelationType::holonym, RelationType::meronym};
inline constexpr Pos kAllPos[5] = {Pos::noun, Pos::verb, Pos::adjective,
                                   Pos::adverb, Pos::unknown};

const char* to_string(Pos pos);
const char* to_string(RelationType type);
bool pos_from_string(std::string_view name, Pos& out);
bool relation_type_from_string(std::string_view name, RelationType& out);

// True for an ISO-style lowercase code: 2 or 3 ASCII letters a-z.
bool valid_language_code(std::string_view code);

// One page of the dump: title is the headword, text is raw wikitext.
// Title is never empty and never contains a newline.
struct RawPage {
  std::string title;
  std::string text;

  bool operator==(const RawPage&) const = default;
};

// One numbered definition with everything attached to it. Relation and
// translation target lists are kept sorted (byte order) and duplicate-free.
// Link strings never contain '|': wikitext splits [[target|display]] at the
// first pipe, so a target cannot hold one.
struct Meaning {
  int ordinal = 1;
  std::string gloss;
  std::vector<std::string> links;
  std::map<RelationType, std::vector<std::string>> relations;
  std::map<std::string, std::vector<std::string>> translations;

  bool operator==(const Meaning&) const = default;
};

// One (headword, language, part of speech) entry. Meanings are numbered
// 1..n consecutively by position.
struct PageEntry {
  std::string headword;
  std::string language;
  Pos pos = Pos::unknown;
  std::vector<Meaning> meanings;

  bool operator==(const PageEntry&) const = default;
};

// Malformed dump structure (bad delimiter, empty title, stray content).
struct FormatError : std::runtime_error {
  std::size_t offset;
  FormatError(const std::string& message, std::size_t offset);
};

// Invalid UTF-8 in the input stream.
struct EncodingError : std::runtime_error {
  std::size_t offset;
  EncodingError(const std::string& message, std::size_t offset);
};

// Splits a dump into pages. Format: each page starts with a line
// `%%PAGE <title>`; the page text is exactly the bytes between that line
// and the next `%%PAGE` line (or end of input). Blank space before the
// first delimiter is tolerated, anything else is a FormatError. The whole
// stream must be valid UTF-8.
std::vector<RawPage> split_pages(std::string_view dump);
std::vector<RawPage> split_pages(std::istream& in);

struct PageParse {
  std::vector<PageEntry> entries;
  int warnings = 0;
};

// Parses one page into entries, one per (language section x POS section).
// Never throws on unrecognized content: unknown POS headings keep the entry
// with pos=unknown, unknown sections and unparseable translation labels are
// skipped and counted in `warnings`.
//
// Markup subset:
//   = lang =            language section, lowercase 2-3 letter code
//   == pos ==           noun / verb / adjective / adverb, anything else -> unknown
//   === block ===       synonyms/antonyms/hypernyms/hyponyms/holonyms/meronyms
//                       (singular also accepted) or translations
//   # gloss text        one numbered definition per line, [[links]] recorded
//   N. [[w]], [[w]]     relation line for meaning N (no number -> meaning 1)
//   N. en: [[w]], [[w]] translation line for meaning N
// {{...}} templates are dropped wherever they appear.
PageParse parse_page(const RawPage& page);

// Parses the body of one semantic-relations section of the given type.
// Keys are meaning ordinals (1 when a line carries no number); lines with
// no [[target]] contribute nothing.
std::map<int, std::map<RelationType, std::vector<std::string>>> parse_relation_block(
    std::string_view body, RelationType type);

struct TranslationBlock {
  // ordinal -> language code -> sorted unique target headwords
  std::map<int, std::map<std::string, std::vector<std::string>>> by_ordinal;
  int warnings = 0;  // lines skipped for an unusable language label
};

TranslationBlock parse_translation_block(std::string_view body);

}  // namespace wikidict
