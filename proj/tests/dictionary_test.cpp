#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <sstream>

#include "test_util.hpp"
#include "wikidict/dictionary.hpp"
#include "wikidict/tsv.hpp"

using namespace wikidict;

namespace {

Dictionary fixture_dictionary() {
  auto dump = testutil::read_text_file(testutil::fixture_dir() / "fixture_dump.txt");
  Dictionary dict;
  for (const RawPage& page : split_pages(dump))
    for (PageEntry& entry : parse_page(page).entries) dict.add(std::move(entry));
  return dict;
}

std::string store_bytes(const std::filesystem::path& dir) {
  std::string all;
  for (const char* name :
       {"page.tsv", "lang_pos.tsv", "meaning.tsv", "relation.tsv", "translation.tsv"}) {
    all += "== ";
    all += name;
    all += " ==\n";
    all += testutil::read_text_file(dir / name);
  }
  return all;
}

// Shuffles the data rows of every store file, keeping headers in place.
void shuffle_store_rows(const std::filesystem::path& dir, std::mt19937& rng) {
  for (const char* name :
       {"page.tsv", "lang_pos.tsv", "meaning.tsv", "relation.tsv", "translation.tsv"}) {
    std::istringstream in(testutil::read_text_file(dir / name));
    std::string header, line;
    std::getline(in, header);
    std::vector<std::string> rows;
    while (std::getline(in, line))
      if (!line.empty()) rows.push_back(line);
    std::shuffle(rows.begin(), rows.end(), rng);
    std::string body = header + "\n";
    for (const std::string& row : rows) body += row + "\n";
    testutil::write_text_file(dir / name, body);
  }
}

}  // namespace

TEST_CASE("tsv escaping round-trips the special characters") {
  std::string nasty = "a\tb\nc\\d";
  CHECK(tsv::escape(nasty) == "a\\tb\\nc\\\\d");
  CHECK(tsv::unescape(tsv::escape(nasty)) == nasty);
  CHECK_THROWS_AS(tsv::unescape("oops\\"), std::invalid_argument);
  CHECK_THROWS_AS(tsv::unescape("bad\\q"), std::invalid_argument);
}

TEST_CASE("lookup answers by (headword, language)") {
  Dictionary dict = fixture_dictionary();
  CHECK(dict.lookup("журнал", "ru").size() == 1);
  CHECK(dict.lookup("нету", "ru").empty());
  CHECK(dict.lookup("журнал", "en").empty());
  CHECK(dict.lookup("печь", "ru").size() == 2);  // noun and verb
}

TEST_CASE("translations answers both index directions") {
  Dictionary dict = fixture_dictionary();
  // reverse: журнал's entry lists en:journal
  CHECK(dict.translations("journal", "en", "ru") == std::set<std::string>{"журнал"});
  // forward and reverse agree for magazine (own en page + журнал's row)
  CHECK(dict.translations("magazine", "en", "ru") == std::set<std::string>{"журнал"});
  CHECK(dict.translations("журнал", "ru", "en") ==
        std::set<std::string>{"journal", "magazine"});
  CHECK(dict.translations("cloud", "en", "ru").empty());
  CHECK(dict.translations("нету", "ru", "en").empty());
}

TEST_CASE("two words translating to the same target are both returned") {
  Dictionary dict;
  PageEntry first{"журнал", "ru", Pos::noun, {Meaning{1, "", {}, {}, {{"en", {"journal"}}}}}};
  PageEntry second{"тетрадь", "ru", Pos::noun, {Meaning{1, "", {}, {}, {{"en", {"journal"}}}}}};
  dict.add(first);
  dict.add(second);
  CHECK(dict.translations("journal", "en", "ru") == std::set<std::string>{"журнал", "тетрадь"});
}

TEST_CASE("save writes five header-led TSV files for an empty dictionary") {
  auto dir = testutil::make_temp_dir("empty_store");
  save(Dictionary{}, dir);
  CHECK(testutil::read_text_file(dir / "page.tsv") == "page_id\ttitle\n");
  CHECK(testutil::read_text_file(dir / "lang_pos.tsv") == "lang_pos_id\tpage_id\tlang\tpos\n");
  CHECK(testutil::read_text_file(dir / "meaning.tsv") ==
        "meaning_id\tlang_pos_id\tordinal\tgloss\tlinks\n");
  CHECK(testutil::read_text_file(dir / "relation.tsv") ==
        "meaning_id\trelation_type\ttarget_headword\n");
  CHECK(testutil::read_text_file(dir / "translation.tsv") == "meaning_id\tlang\ttarget_headword\n");
  CHECK(load(dir) == Dictionary{});
  std::filesystem::remove_all(dir);
}

TEST_CASE("the журнал hypernym lands in relation.tsv under the right meaning") {
  auto dir = testutil::make_temp_dir("fixture_store");
  save(fixture_dictionary(), dir);

  // find журнал's noun entry, then its first meaning id
  std::istringstream lang_pos(testutil::read_text_file(dir / "lang_pos.tsv"));
  std::string line;
  std::getline(lang_pos, line);
  std::string journal_lang_pos;
  std::istringstream pages(testutil::read_text_file(dir / "page.tsv"));
  std::getline(pages, line);
  std::string journal_page;
  while (std::getline(pages, line)) {
    auto fields = tsv::split_line(line);
    if (fields[1] == "журнал") journal_page = fields[0];
  }
  REQUIRE(!journal_page.empty());
  while (std::getline(lang_pos, line)) {
    auto fields = tsv::split_line(line);
    if (fields[1] == journal_page && fields[2] == "ru" && fields[3] == "noun")
      journal_lang_pos = fields[0];
  }
  REQUIRE(!journal_lang_pos.empty());
  std::string meaning_one;
  std::istringstream meanings(testutil::read_text_file(dir / "meaning.tsv"));
  std::getline(meanings, line);
  while (std::getline(meanings, line)) {
    auto fields = tsv::split_line(line);
    if (fields[1] == journal_lang_pos && fields[2] == "1") meaning_one = fields[0];
  }
  REQUIRE(!meaning_one.empty());

  bool found = false;
  std::istringstream relations(testutil::read_text_file(dir / "relation.tsv"));
  std::getline(relations, line);
  while (std::getline(relations, line)) {
    auto fields = tsv::split_line(line);
    if (fields[0] == meaning_one && fields[1] == "hypernym" && fields[2] == "издание") found = true;
  }
  CHECK(found);
  std::filesystem::remove_all(dir);
}

TEST_CASE("saving twice produces bit-identical files") {
  Dictionary dict = fixture_dictionary();
  auto dir_a = testutil::make_temp_dir("save_a");
  auto dir_b = testutil::make_temp_dir("save_b");
  save(dict, dir_a);
  save(dict, dir_b);
  CHECK(store_bytes(dir_a) == store_bytes(dir_b));
  std::filesystem::remove_all(dir_a);
  std::filesystem::remove_all(dir_b);
}

TEST_CASE("load(save(d)) == d for the fixture dictionary") {
  Dictionary dict = fixture_dictionary();
  auto dir = testutil::make_temp_dir("roundtrip");
  save(dict, dir);
  CHECK(load(dir) == dict);
  std::filesystem::remove_all(dir);
}

TEST_CASE("load(save(d)) == d for random dictionaries") {
  std::mt19937 rng(20260810);
  auto dir = testutil::make_temp_dir("roundtrip_prop");
  for (int i = 0; i < 25; ++i) {
    Dictionary dict = testutil::random_dictionary(rng);
    save(dict, dir);
    CHECK(load(dir) == dict);
  }
  std::filesystem::remove_all(dir);
}

TEST_CASE("row order in the store files does not matter") {
  Dictionary dict = fixture_dictionary();
  auto dir = testutil::make_temp_dir("shuffled");
  save(dict, dir);
  std::mt19937 rng(99);
  shuffle_store_rows(dir, rng);
  CHECK(load(dir) == dict);
  std::filesystem::remove_all(dir);
}

TEST_CASE("load errors name the file and line") {
  auto dir = testutil::make_temp_dir("load_errors");
  save(fixture_dictionary(), dir);

  SUBCASE("dangling meaning_id in relation.tsv") {
    std::string body = testutil::read_text_file(dir / "relation.tsv");
    long lines = static_cast<long>(std::count(body.begin(), body.end(), '\n'));
    body += "9999\tsynonym\tслово\n";
    testutil::write_text_file(dir / "relation.tsv", body);
    try {
      load(dir);
      FAIL("expected StoreError");
    } catch (const StoreError& e) {
      CHECK(e.file.find("relation.tsv") != std::string::npos);
      CHECK(e.line == lines + 1);
    }
  }
  SUBCASE("missing file") {
    std::filesystem::remove(dir / "translation.tsv");
    CHECK_THROWS_AS(load(dir), StoreError);
  }
  SUBCASE("unexpected header column") {
    std::string body = testutil::read_text_file(dir / "page.tsv");
    testutil::write_text_file(dir / "page.tsv", "page_id\tname\n" + body.substr(body.find('\n') + 1));
    CHECK_THROWS_AS(load(dir), StoreError);
  }
  SUBCASE("unknown pos value") {
    std::string body = testutil::read_text_file(dir / "lang_pos.tsv");
    std::size_t noun = body.find("\tnoun\n");
    REQUIRE(noun != std::string::npos);
    body.replace(noun, 6, "\tgerund\n");
    testutil::write_text_file(dir / "lang_pos.tsv", body);
    CHECK_THROWS_AS(load(dir), StoreError);
  }
  std::filesystem::remove_all(dir);
}

TEST_CASE("stats: empty dictionary is all zeros") {
  StatsReport report = stats(Dictionary{});
  CHECK(report.by_language.empty());
}

TEST_CASE("total relations is the sum of the six per-type counts") {
  std::mt19937 rng(8888);
  for (int i = 0; i < 10; ++i) {
    StatsReport report = stats(testutil::random_dictionary(rng));
    for (const auto& [lang, s] : report.by_language) {
      long sum = 0;
      for (const auto& [type, count] : s.relation_counts) sum += count;
      CHECK(sum == s.total_relations);
    }
  }
}

TEST_CASE("stats match the hand-written fixture manifest") {
  StatsReport report = stats(fixture_dictionary());
  REQUIRE(report.by_language.count("ru") == 1);
  const LanguageStats& ru = report.by_language.at("ru");
  CHECK(ru.entries == 12);
  CHECK(ru.pos_counts.at(Pos::noun) == 9);
  CHECK(ru.pos_counts.at(Pos::verb) == 1);
  CHECK(ru.pos_counts.at(Pos::adjective) == 1);
  CHECK(ru.pos_counts.at(Pos::unknown) == 1);
  CHECK(ru.relation_counts.at(RelationType::synonym) == 3);
  CHECK(ru.total_relations == 10);
  CHECK(ru.translations == 15);
  const LanguageStats& en = report.by_language.at("en");
  CHECK(en.entries == 3);
  CHECK(en.translations == 2);
}

TEST_CASE("adding one synonym row moves the synonym count by exactly one") {
  Dictionary dict = fixture_dictionary();
  long before = stats(dict).by_language.at("ru").relation_counts.at(RelationType::synonym);
  PageEntry extra{"свет", "ru", Pos::noun,
                  {Meaning{1, "", {}, {{RelationType::synonym, {"сияние"}}}, {}}}};
  dict.add(extra);
  StatsReport after = stats(dict);
  CHECK(after.by_language.at("ru").relation_counts.at(RelationType::synonym) == before + 1);
}

TEST_CASE("stats are additive over disjoint dictionary unions") {
  std::mt19937 rng(5150);
  for (int i = 0; i < 10; ++i) {
    Dictionary a = testutil::random_dictionary(rng);
    Dictionary b = testutil::random_dictionary(rng);
    Dictionary both;
    for (const PageEntry& e : a.entries()) {
      PageEntry copy = e;
      copy.language = "q" + copy.language;  // force-disjoint languages
      both.add(copy);
    }
    for (const PageEntry& e : b.entries()) both.add(e);
    StatsReport sa = stats(a), sb = stats(b), su = stats(both);
    long total_entries = 0, union_entries = 0, total_rel = 0, union_rel = 0;
    for (auto& [lang, s] : sa.by_language) total_entries += s.entries, total_rel += s.total_relations;
    for (auto& [lang, s] : sb.by_language) total_entries += s.entries, total_rel += s.total_relations;
    for (auto& [lang, s] : su.by_language) union_entries += s.entries, union_rel += s.total_relations;
    CHECK(total_entries == union_entries);
    CHECK(total_rel == union_rel);
    // per-language equality on b's untouched languages
    for (auto& [lang, s] : sb.by_language) CHECK(su.by_language.at(lang) == s);
  }
}

TEST_CASE("reverse translation index is sound and complete") {
  std::mt19937 rng(777);
  for (int i = 0; i < 20; ++i) {
    Dictionary dict = testutil::random_dictionary(rng);
    for (const PageEntry& entry : dict.entries()) {
      for (const Meaning& meaning : entry.meanings) {
        for (const auto& [lang, targets] : meaning.translations) {
          for (const std::string& target : targets) {
            auto back = dict.translations(target, lang, entry.language);
            CHECK(back.count(entry.headword) == 1);
          }
        }
      }
    }
  }
}
