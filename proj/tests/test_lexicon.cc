#include <doctest.h>

#include <sstream>

#include "parawsd/corpus.h"
#include "parawsd/errors.h"
#include "parawsd/lexicon.h"
#include "test_support.h"

using namespace parawsd;

namespace {

Token tok(int i, const std::string& lemma, const std::string& pos) {
  return {i, lemma, lemma, pos, std::nullopt};
}

// n units; the target word t/tpos appears in units [0, t_units), the source
// word s/spos in units [s_from, s_from + s_units).
Corpus synthetic(int n, int t_units, int s_from, int s_units, const std::string& spos = "n") {
  std::vector<TranslationUnit> units;
  for (int u = 0; u < n; ++u) {
    TranslationUnit unit{"u" + std::to_string(u), {}};
    auto& en = unit.sentences["en"];
    auto& ro = unit.sentences["ro"];
    en.push_back(tok(0, "filler", "n"));
    ro.push_back(tok(0, "umplutura", "n"));
    if (u < t_units) en.push_back(tok(1, "t", "n"));
    if (u >= s_from && u < s_from + s_units) ro.push_back(tok(1, "s", spos));
    units.push_back(std::move(unit));
  }
  return Corpus("en", {"ro"}, std::move(units));
}

const Corpus& fixture_corpus() {
  static const Corpus c = load_corpus(testing::fixture("corpus.tsv"), "en");
  return c;
}

}  // namespace

TEST_CASE("log-likelihood ratio against the independent oracle") {
  CHECK(log_likelihood_ratio({50, 0, 0, 50}) == doctest::Approx(138.629436111989).epsilon(1e-9));
  CHECK(log_likelihood_ratio({10, 10, 10, 10}) == doctest::Approx(0.0));
  CHECK(log_likelihood_ratio({4, 0, 0, 8}) == doctest::Approx(15.2763400390755).epsilon(1e-9));
  CHECK(log_likelihood_ratio({3, 1, 2, 14}) == doctest::Approx(5.93807946759587).epsilon(1e-9));
  CHECK(log_likelihood_ratio({2, 0, 0, 10}) == doctest::Approx(10.8134690127913).epsilon(1e-9));
  CHECK(log_likelihood_ratio({4, 1, 0, 7}) == doctest::Approx(10.2723158036936).epsilon(1e-9));
  CHECK(log_likelihood_ratio({0, 0, 0, 0}) == 0.0);
  CHECK_THROWS_AS(log_likelihood_ratio({-1, 0, 0, 0}), std::invalid_argument);
}

TEST_CASE("perfectly associated pair is retained with the oracle score") {
  const auto lex = extract_lexicon(synthetic(100, 50, 0, 50), "ro");
  const auto s = lex.score("t", "n", "ro", "s");
  REQUIRE(s.has_value());
  CHECK(*s == doctest::Approx(138.629436111989).epsilon(1e-9));
}

TEST_CASE("independent pair is dropped") {
  // t in units 0..19, s in 10..29 of 40: table (10, 10, 10, 10)
  const auto lex = extract_lexicon(synthetic(40, 20, 10, 20), "ro");
  CHECK_FALSE(lex.score("t", "n", "ro", "s").has_value());
}

TEST_CASE("cross-POS pair is never extracted") {
  const auto lex = extract_lexicon(synthetic(100, 50, 0, 50, "v"), "ro");
  CHECK(lex.equivalents("t", "n", "ro").empty());
  for (const auto& p : lex.pairs()) CHECK(p.target_pos == "n");
}

TEST_CASE("negatively associated pair is dropped") {
  // s occurs exactly where t does not
  const auto lex = extract_lexicon(synthetic(60, 30, 30, 30), "ro");
  CHECK_FALSE(lex.score("t", "n", "ro", "s").has_value());
}

TEST_CASE("extraction settings and errors") {
  const Corpus c = synthetic(100, 50, 0, 50);
  CHECK(extract_lexicon(c, "ro", {200.0, 2}).empty());
  CHECK(extract_lexicon(c, "ro", {9.0, 51}).equivalents("t", "n", "ro").empty());
  CHECK_THROWS_AS(extract_lexicon(c, "cs"), ConfigError);
  CHECK_THROWS_AS(extract_lexicon(c, "en"), ConfigError);
}

TEST_CASE("fixture extraction counts and scores") {
  const auto& c = fixture_corpus();
  const auto ro = extract_lexicon(c, "ro");
  CHECK(ro.size() == 3);
  CHECK(extract_lexicon(c, "cs").size() == 4);
  CHECK(extract_lexicon(c, "bg").size() == 4);
  CHECK(*ro.score("party", "n", "ro", "partid") ==
        doctest::Approx(15.2763400390755).epsilon(1e-9));
  CHECK(*ro.score("winston", "n", "ro", "winston") ==
        doctest::Approx(10.8134690127913).epsilon(1e-9));
  CHECK(*extract_lexicon(c, "cs").score("movement", "n", "cs", "pohyb") ==
        doctest::Approx(10.2723158036936).epsilon(1e-9));
}

TEST_CASE("import: valid lines, cross-POS skip, duplicates") {
  std::istringstream in(
      "# comment\n"
      "party\tn\tro\tpartid\t25.0\n"
      "party\tn\tro\tpetrecere\t10.2\n"
      "face\tn\tro\tfata\t11\n");
  CHECK(parse_lexicon(in).size() == 3);

  std::vector<std::string> warnings;
  std::istringstream mixed(
      "party\tn\tro\tpartid\t25.0\n"
      "party\tn:v\tro\tpetrece\t10.2\n"
      "party\tn\tro\tpartid\t3.0\n");
  const auto lex = parse_lexicon(mixed, &warnings);
  CHECK(lex.size() == 1);
  CHECK(*lex.score("party", "n", "ro", "partid") == 25.0);
  CHECK(warnings.size() == 2);
}

TEST_CASE("import errors") {
  auto line_of = [](const std::string& text) -> std::size_t {
    std::istringstream in(text);
    try {
      parse_lexicon(in);
    } catch (const ParseError& e) {
      return e.line();
    }
    return 0;
  };
  CHECK(line_of("a\tn\tro\tb\t1\na\tn\tro\tb\n") == 2);
  CHECK(line_of("a\tn\tro\tb\tx\n") == 1);
  CHECK(line_of("a\tn\tro\t\t1\n") == 1);
  CHECK(line_of("a\tn\tro\tb\t-1\n") == 1);
  CHECK_THROWS_AS(import_lexicon("/nonexistent/lex.tsv"), ConfigError);
}

TEST_CASE("write and re-read") {
  const auto lex = import_lexicon(testing::fixture("lex_cs.tsv"));
  std::stringstream s;
  write_lexicon(s, lex);
  const auto again = parse_lexicon(s);
  CHECK(again.pairs() == lex.pairs());
}

TEST_CASE("alignment picks the best scoring candidate") {
  TranslationLexicon lex;
  lex.add({"face", "n", "fata", "ro", 12.3});
  lex.add({"face", "n", "chip", "ro", 4.1});
  TranslationUnit u{"u1", {}};
  u.sentences["en"] = {tok(0, "face", "n")};
  u.sentences["ro"] = {tok(0, "chip", "n"), tok(1, "fata", "n")};
  const OccurrenceRef occ{"u1", 0, "en", 0, "face", "n"};
  CHECK(align_occurrence(u, occ, "ro", lex) == "fata");
  CHECK_FALSE(align_occurrence(u, occ, "cs", lex).has_value());

  TranslationUnit single{"u2", {}};
  single.sentences["en"] = {tok(0, "face", "n")};
  single.sentences["ro"] = {tok(0, "chip", "n"), tok(1, "casa", "n")};
  CHECK(align_occurrence(single, occ, "ro", lex) == "chip");
}

TEST_CASE("alignment is one-to-one, left to right") {
  TranslationLexicon lex;
  lex.add({"party", "n", "partid", "ro", 25});
  lex.add({"party", "n", "petrecere", "ro", 10});
  TranslationUnit u{"u1", {}};
  u.sentences["en"] = {tok(0, "party", "n"), tok(1, "and", "c"), tok(2, "party", "n"),
                       tok(3, "party", "n")};
  u.sentences["ro"] = {tok(0, "petrecere", "n"), tok(1, "partid", "n")};
  const auto aligned = align_sentence(u, "en", "party", "n", "ro", lex);
  REQUIRE(aligned.size() == 3);
  CHECK(aligned[0].second == "partid");
  CHECK(aligned[1].second == "petrecere");
  CHECK_FALSE(aligned[2].second.has_value());
}

TEST_CASE("source tokens of another POS are not candidates") {
  TranslationLexicon lex;
  lex.add({"face", "n", "fata", "ro", 12.3});
  TranslationUnit u{"u1", {}};
  u.sentences["en"] = {tok(0, "face", "n")};
  u.sentences["ro"] = {tok(0, "fata", "v")};
  CHECK_FALSE(align_occurrence(u, {"u1", 0, "en", 0, "face", "n"}, "ro", lex).has_value());
}

TEST_CASE("DEL ordering") {
  TranslationLexicon lex;
  lex.add({"t", "n", "b", "ro", 9});
  lex.add({"t", "n", "a", "ro", 9});
  lex.add({"t", "n", "c", "ro", 2});
  CHECK(build_del(lex, "t", "n", "ro").entries == std::vector<std::string>{"a", "b", "c"});
  CHECK(build_del(lex, "unknown", "n", "ro").entries.empty());
  CHECK(build_del(lex, "t", "n", "ro").position("c") == 2);
  CHECK_FALSE(build_del(lex, "t", "n", "ro").position("z").has_value());

  const auto cs = import_lexicon(testing::fixture("lex_cs.tsv"));
  CHECK(build_del(cs, "movement", "n", "cs").entries == std::vector<std::string>{"pohyb", "hnuti"});
}
