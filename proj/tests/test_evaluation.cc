#include <doctest.h>

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>

#include "parawsd/corpus.h"
#include "parawsd/errors.h"
#include "parawsd/evaluation.h"
#include "parawsd/lexicon.h"
#include "test_support.h"

using namespace parawsd;

namespace {

std::vector<AssignmentRecord> read_records(const std::string& name) {
  std::ifstream in(testing::fixture(name));
  return parse_assignments(in, name);
}

const Corpus& fixture_corpus() {
  static const Corpus c = load_corpus(testing::fixture("corpus.tsv"), "en", {"ro", "cs", "bg"});
  return c;
}

// ten gold tokens of "w", one per unit
Corpus ten_units() {
  std::ostringstream s;
  for (int u = 0; u < 10; ++u) {
    s << "u" << u << "\ten\t0\tw\tw\tn\tS-1\n";
    s << "u" << u << "\tla\t0\tx\tx\tn\n";
  }
  std::istringstream in(s.str());
  return parse_corpus(in, "en");
}

AssignmentRecord rec(int unit, const char* sense, Method m) {
  AssignmentRecord r{"u" + std::to_string(unit), 0, "w", "n", std::nullopt, m};
  if (sense) r.sense = IliCode(sense);
  return r;
}

}  // namespace

TEST_CASE("score arithmetic reproduces the published rows") {
  const auto awn = ScoreReport::from_counts(1184, 1581, 1644);
  CHECK(std::abs(awn.precision * 100 - 74.88) <= 0.1);
  CHECK(std::abs(awn.recall * 100 - 72.01) <= 0.1);
  CHECK(std::abs(awn.f_measure * 100 - 73.41) <= 0.1);

  const auto sh = ScoreReport::from_counts(1232, 1644, 1644);
  CHECK(sh.precision == sh.recall);
  CHECK(std::abs(sh.precision * 100 - 74.93) <= 0.1);
  CHECK(std::abs(sh.f_measure * 100 - 74.93) <= 0.1);
}

TEST_CASE("score edge cases") {
  const auto perfect = ScoreReport::from_counts(10, 10, 10);
  CHECK(perfect.precision == 1.0);
  CHECK(perfect.recall == 1.0);
  CHECK(perfect.f_measure == 1.0);
  CHECK(ScoreReport::from_counts(0, 5, 10).f_measure == 0.0);
  CHECK_THROWS_AS(ScoreReport::from_counts(0, 0, 10), ValidationError);
  CHECK_THROWS_AS(ScoreReport::from_counts(6, 5, 10), ValidationError);
  CHECK_THROWS_AS(ScoreReport::from_counts(5, 11, 10), ValidationError);
}

TEST_CASE("F is the harmonic mean") {
  std::mt19937 rng(3);
  for (int i = 0; i < 1000; ++i) {
    const long long total = std::uniform_int_distribution<long long>(1, 5000)(rng);
    const long long attempted = std::uniform_int_distribution<long long>(1, total)(rng);
    const long long correct = std::uniform_int_distribution<long long>(0, attempted)(rng);
    const auto r = ScoreReport::from_counts(correct, attempted, total);
    const double p = r.precision, q = r.recall;
    const double f = p + q > 0 ? 2 * p * q / (p + q) : 0.0;
    REQUIRE(std::abs(r.f_measure - f) <= 1e-12);
    REQUIRE((p >= 0 && p <= 1 && q >= 0 && q <= 1));
  }
}

TEST_CASE("one wrong of ten") {
  const Corpus c = ten_units();
  std::vector<AssignmentRecord> records;
  for (int u = 0; u < 10; ++u) records.push_back(rec(u, u == 3 ? "S-2" : "S-1", Method::kIntersection));
  const auto r = score(records, c);
  CHECK(r.precision == doctest::Approx(0.9));
  CHECK(r.recall == doctest::Approx(0.9));
  CHECK(r.f_measure == doctest::Approx(0.9));
  CHECK(r.per_method.at(Method::kIntersection).correct == 9);
}

TEST_CASE("unassigned and missing records count toward total only") {
  const Corpus c = ten_units();
  std::vector<AssignmentRecord> records;
  for (int u = 0; u < 8; ++u) records.push_back(rec(u, "S-1", Method::kIntersection));
  records.push_back(rec(8, nullptr, Method::kUnassigned));
  const auto r = score(records, c);
  CHECK(r.total == 10);
  CHECK(r.attempted == 8);
  CHECK(r.correct == 8);
}

TEST_CASE("score is permutation invariant") {
  auto records = read_records("expected_assignments.tsv");
  const auto base = score(records, fixture_corpus());
  std::mt19937 rng(5);
  for (int i = 0; i < 20; ++i) {
    std::shuffle(records.begin(), records.end(), rng);
    const auto r = score(records, fixture_corpus());
    CHECK(r.correct == base.correct);
    CHECK(r.attempted == base.attempted);
    CHECK(r.total == base.total);
  }
}

TEST_CASE("fixture scores") {
  const auto r = score(read_records("expected_assignments.tsv"), fixture_corpus());
  CHECK(r.total == 11);
  CHECK(r.attempted == 11);
  CHECK(r.correct == 10);
  CHECK(r.per_method.at(Method::kSimpleHeuristic).correct == 0);
  CHECK(r.per_method.at(Method::kClusterBackoff).correct == 1);
}

TEST_CASE("record consistency") {
  const Corpus c = ten_units();
  CHECK_THROWS_AS(score({rec(42, "S-1", Method::kIntersection)}, c), ConsistencyError);
  auto wrong_token = rec(1, "S-1", Method::kIntersection);
  wrong_token.token_index = 5;
  CHECK_THROWS_AS(score({wrong_token}, c), ConsistencyError);
  auto wrong_lemma = rec(1, "S-1", Method::kIntersection);
  wrong_lemma.lemma = "v";
  CHECK_THROWS_AS(score({wrong_lemma}, c), ConsistencyError);
  CHECK_THROWS_AS(score({rec(1, "S-1", Method::kIntersection), rec(1, "S-1", Method::kIntersection)}, c),
                  ConsistencyError);
}

TEST_CASE("no gold is an error") {
  std::istringstream in("u1\ten\t0\tw\tw\tn\nu1\tla\t0\tx\tx\tn\n");
  const Corpus c = parse_corpus(in, "en");
  CHECK_THROWS_AS(score(std::vector<AssignmentRecord>{}, c), ValidationError);
}

TEST_CASE("simple heuristic") {
  std::istringstream wn_text("A\tn\tw:3\t\nB\tn\tw:1\t\nC\tn\tw:2\t\nD\tn\tw:4\t\n");
  const auto wn = parse_wordnet(wn_text, "en");
  const OccurrenceRef o1{"u1", 0, "en", 0, "w", "n"};
  const OccurrenceRef o2{"u2", 1, "en", 0, "w", "n"};
  const OccurrenceRef o3{"u3", 2, "en", 0, "zz", "n"};
  std::vector<SenseAssignment> in{{o1, std::nullopt, Method::kUnassigned, {}, 4},
                                  {o2, IliCode("C"), Method::kIntersection, {}, 4},
                                  {o3, std::nullopt, Method::kUnassigned, {}, 0}};
  std::vector<OccurrenceRef> flagged;
  const auto out = apply_sh(in, wn, &flagged);
  CHECK(out[0].sense == IliCode("B"));
  CHECK(out[0].method == Method::kSimpleHeuristic);
  CHECK(out[1].sense == IliCode("C"));
  CHECK(out[1].method == Method::kIntersection);
  CHECK(out[2].method == Method::kUnassigned);
  CHECK(flagged == std::vector{o3});
}

TEST_CASE("after SH every in-wordnet occurrence is attempted") {
  const auto wn = load_wordnet(testing::fixture("en.wn"), "en");
  std::vector<SenseAssignment> assignments;
  const auto& c = fixture_corpus();
  for (const char* lemma : {"movement", "party", "face"}) {
    for (const auto& o : occurrences(c, lemma, "n")) {
      assignments.push_back({o, std::nullopt, Method::kUnassigned, {}, 0});
    }
  }
  const auto out = apply_sh(assignments, wn);
  for (const auto& a : out) CHECK(a.method == Method::kSimpleHeuristic);
  const auto r = score(out, c);
  CHECK(r.attempted == static_cast<long long>(out.size()));
}

TEST_CASE("coverage buckets") {
  std::istringstream text(
      "u1\ten\t0\tw\tw\tn\nu1\tla\t0\tx\tx\tn\n"
      "u2\ten\t0\tw\tw\tn\nu2\tla\t0\ty\ty\tn\n"
      "u3\ten\t0\tv\tv\tn\nu3\tla\t0\tx\tx\tn\n");
  const Corpus c = parse_corpus(text, "en");
  const OccurrenceRef o1{"u1", 0, "en", 0, "w", "n"};
  const OccurrenceRef o2{"u2", 1, "en", 0, "w", "n"};
  const OccurrenceRef o3{"u3", 2, "en", 0, "v", "n"};
  LanguageEvidence translated;
  translated.language = "la";
  translated.equivalent = "x";
  translated.state = CellState::kEmpty;
  LanguageEvidence untranslated;
  untranslated.language = "la";
  const std::vector<SenseAssignment> a{{o1, std::nullopt, Method::kUnassigned, {translated}, 2},
                                       {o2, std::nullopt, Method::kUnassigned, {untranslated}, 2},
                                       {o3, std::nullopt, Method::kUnassigned, {translated}, 0}};
  const auto report = coverage_report(a, c);
  REQUIRE(report.entries.size() == 3);
  CHECK(report.entries[0].bucket == CoverageBucket::kThresholdFailure);
  CHECK(report.entries[1].bucket == CoverageBucket::kNoTranslation);
  CHECK(report.entries[2].bucket == CoverageBucket::kLemmaAbsent);
  CHECK_FALSE(report.entries[0].hapax);
  CHECK(report.entries[2].hapax);
  CHECK(report.hapax() == 1);
  CHECK(report.count(CoverageBucket::kNoTranslation) == 1);
}

TEST_CASE("threshold failure on the corrupted wordnet") {
  const auto en = load_wordnet(testing::fixture("en.wn"), "en");
  const auto ro = load_wordnet(testing::fixture("ro_corrupt.wn"), "ro");
  const auto lex = import_lexicon(testing::fixture("lex_ro.tsv"));
  const auto out = disambiguate(fixture_corpus(), {{"party", "n"}}, {&en, {{"ro", &ro}}, &lex}, {});
  const auto report = coverage_report(out, fixture_corpus());
  CHECK(report.count(CoverageBucket::kThresholdFailure) == 4);
  for (const auto& a : out) {
    if (a.method != Method::kUnassigned) continue;
    for (const auto& ev : a.evidence) {
      if (!ev.equivalent) continue;
      REQUIRE(ev.best_pair.has_value());
      CHECK(ev.best_pair->score.value() == 0.25);
    }
  }
}

TEST_CASE("report table") {
  std::ostringstream s;
  write_report(s, read_records("expected_assignments.tsv"), fixture_corpus());
  const std::string text = s.str();
  CHECK(text.find("AWN\t100.00\t81.82\t90.00\t9\t9\t11\n") != std::string::npos);
  CHECK(text.find("AWN+C\t100.00\t90.91\t95.24\t10\t10\t11\n") != std::string::npos);
  CHECK(text.find("AWN+C+SH\t90.91\t90.91\t90.91\t10\t11\t11\n") != std::string::npos);
  CHECK(text.find("SimpleHeuristic\t0.00\t0.00\t0.00\t0\t1\t11\n") != std::string::npos);
}
