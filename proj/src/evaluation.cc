#include "parawsd/evaluation.h"

#include <algorithm>
#include <functional>
#include <ostream>
#include <set>

#include "parawsd/errors.h"
#include "parawsd/text.h"

namespace parawsd {

namespace {

struct GoldToken {
  std::string unit_id;
  int token_index;
  IliCode gold;
};

std::vector<GoldToken> gold_tokens(const Corpus& corpus) {
  std::vector<GoldToken> out;
  for (const TranslationUnit& u : corpus.units()) {
    const auto* sent = u.sentence(corpus.target_language());
    if (sent == nullptr) continue;
    for (const Token& t : *sent) {
      if (t.gold) out.push_back({u.id, t.index, *t.gold});
    }
  }
  return out;
}

using RecordIndex = std::map<std::pair<std::string, int>, const AssignmentRecord*>;

RecordIndex index_records(const std::vector<AssignmentRecord>& records, const Corpus& corpus) {
  RecordIndex index;
  for (const AssignmentRecord& r : records) {
    const TranslationUnit* unit = corpus.find_unit(r.unit_id);
    if (unit == nullptr) throw ConsistencyError("assignment for unknown unit '" + r.unit_id + "'");
    const auto* sent = unit->sentence(corpus.target_language());
    const auto it = std::find_if(sent->begin(), sent->end(),
                                 [&](const Token& t) { return t.index == r.token_index; });
    if (it == sent->end()) {
      throw ConsistencyError("assignment for unknown token " + r.unit_id + ":" +
                             std::to_string(r.token_index));
    }
    if (it->lemma != r.lemma) {
      throw ConsistencyError("assignment lemma '" + r.lemma + "' does not match token " +
                             r.unit_id + ":" + std::to_string(r.token_index) + " ('" + it->lemma +
                             "')");
    }
    if (!index.emplace(std::pair{r.unit_id, r.token_index}, &r).second) {
      throw ConsistencyError("duplicate assignment for " + r.unit_id + ":" +
                             std::to_string(r.token_index));
    }
  }
  return index;
}

ScoreCounts count(const std::vector<GoldToken>& gold, const RecordIndex& index,
                  const std::function<bool(Method)>& counts_as_attempt) {
  ScoreCounts c;
  c.total = static_cast<long long>(gold.size());
  for (const GoldToken& g : gold) {
    auto it = index.find({g.unit_id, g.token_index});
    if (it == index.end()) continue;
    const AssignmentRecord& r = *it->second;
    if (!r.sense || !counts_as_attempt(r.method)) continue;
    ++c.attempted;
    if (*r.sense == g.gold) ++c.correct;
  }
  return c;
}

constexpr Method kScoredMethods[] = {Method::kIntersection, Method::kSimilarityFallback,
                                     Method::kCrossLingualTieBreak, Method::kClusterBackoff,
                                     Method::kSimpleHeuristic};

bool wordnet_step(Method m) {
  return m == Method::kIntersection || m == Method::kSimilarityFallback ||
         m == Method::kCrossLingualTieBreak;
}

}  // namespace

ScoreReport ScoreReport::from_counts(long long correct, long long attempted, long long total) {
  if (correct < 0 || correct > attempted || attempted > total) {
    throw ValidationError("inconsistent counts: correct " + std::to_string(correct) +
                          ", attempted " + std::to_string(attempted) + ", total " +
                          std::to_string(total));
  }
  if (attempted == 0) throw ValidationError("nothing attempted; precision is undefined");
  ScoreReport r;
  r.correct = correct;
  r.attempted = attempted;
  r.total = total;
  r.precision = static_cast<double>(correct) / static_cast<double>(attempted);
  r.recall = static_cast<double>(correct) / static_cast<double>(total);
  const double sum = r.precision + r.recall;
  r.f_measure = sum > 0 ? 2.0 * r.precision * r.recall / sum : 0.0;
  return r;
}

ScoreReport score(const std::vector<AssignmentRecord>& records, const Corpus& corpus) {
  const auto gold = gold_tokens(corpus);
  if (gold.empty()) throw ValidationError("corpus has no gold sense annotations");
  const RecordIndex index = index_records(records, corpus);
  const ScoreCounts all = count(gold, index, [](Method) { return true; });
  ScoreReport report = ScoreReport::from_counts(all.correct, all.attempted, all.total);
  for (Method m : kScoredMethods) {
    const ScoreCounts c = count(gold, index, [m](Method x) { return x == m; });
    if (c.attempted > 0) report.per_method[m] = c;
  }
  return report;
}

AssignmentRecord to_record(const SenseAssignment& a) {
  return {a.occurrence.unit_id, a.occurrence.token_index, a.occurrence.lemma, a.occurrence.pos,
          a.sense, a.method};
}

ScoreReport score(const std::vector<SenseAssignment>& assignments, const Corpus& corpus) {
  std::vector<AssignmentRecord> records;
  records.reserve(assignments.size());
  for (const auto& a : assignments) records.push_back(to_record(a));
  return score(records, corpus);
}

std::vector<SenseAssignment> apply_sh(std::vector<SenseAssignment> assignments,
                                      const WordnetGraph& target_wn,
                                      std::vector<OccurrenceRef>* flagged) {
  for (SenseAssignment& a : assignments) {
    if (a.method != Method::kUnassigned) continue;
    const auto& senses = target_wn.senses(a.occurrence.lemma, a.occurrence.pos);
    if (senses.empty()) {
      if (flagged) flagged->push_back(a.occurrence);
      continue;
    }
    a.sense = senses.front();
    a.method = Method::kSimpleHeuristic;
  }
  return assignments;
}

std::string_view to_string(CoverageBucket b) {
  switch (b) {
    case CoverageBucket::kLemmaAbsent:
      return "lemma_absent";
    case CoverageBucket::kNoTranslation:
      return "no_translation";
    case CoverageBucket::kThresholdFailure:
      return "threshold_failure";
  }
  return "";
}

std::size_t CoverageReport::count(CoverageBucket b) const {
  return static_cast<std::size_t>(std::count_if(
      entries.begin(), entries.end(), [b](const CoverageEntry& e) { return e.bucket == b; }));
}

std::size_t CoverageReport::hapax() const {
  return static_cast<std::size_t>(
      std::count_if(entries.begin(), entries.end(), [](const CoverageEntry& e) { return e.hapax; }));
}

CoverageReport coverage_report(const std::vector<SenseAssignment>& assignments,
                               const Corpus& corpus) {
  const auto freq = target_frequencies(corpus);
  CoverageReport report;
  for (const SenseAssignment& a : assignments) {
    if (a.method != Method::kUnassigned) continue;
    CoverageEntry e{a.occurrence, CoverageBucket::kThresholdFailure, false};
    const bool translated = std::any_of(a.evidence.begin(), a.evidence.end(),
                                        [](const LanguageEvidence& ev) { return ev.equivalent; });
    if (a.target_sense_count == 0) {
      e.bucket = CoverageBucket::kLemmaAbsent;
    } else if (!translated) {
      e.bucket = CoverageBucket::kNoTranslation;
    }
    auto it = freq.find({a.occurrence.lemma, a.occurrence.pos});
    e.hapax = it != freq.end() && it->second == 1;
    report.entries.push_back(std::move(e));
  }
  std::stable_sort(report.entries.begin(), report.entries.end(),
                   [](const CoverageEntry& x, const CoverageEntry& y) {
                     return corpus_order(x.occurrence, y.occurrence);
                   });
  return report;
}

void write_report(std::ostream& out, const std::vector<AssignmentRecord>& records,
                  const Corpus& corpus, const CoverageReport* coverage) {
  const auto gold = gold_tokens(corpus);
  if (gold.empty()) throw ValidationError("corpus has no gold sense annotations");
  const RecordIndex index = index_records(records, corpus);

  auto row = [&](const std::string& label, const ScoreCounts& c) {
    out << label << '\t';
    if (c.attempted == 0) {
      out << "-\t-\t-";
    } else {
      const ScoreReport r = ScoreReport::from_counts(c.correct, c.attempted, c.total);
      out << format_percent(r.precision) << '\t' << format_percent(r.recall) << '\t'
          << format_percent(r.f_measure);
    }
    out << '\t' << c.correct << '\t' << c.attempted << '\t' << c.total << '\n';
  };

  out << "# variant\tprecision\trecall\tf_measure\tcorrect\tattempted\ttotal\n";
  row("AWN", count(gold, index, wordnet_step));
  row("AWN+C", count(gold, index, [](Method m) {
        return wordnet_step(m) || m == Method::kClusterBackoff;
      }));
  row("AWN+C+SH", count(gold, index, [](Method m) { return m != Method::kUnassigned; }));

  out << "# method\tprecision\trecall\tf_measure\tcorrect\tattempted\ttotal\n";
  for (Method m : kScoredMethods) {
    const ScoreCounts c = count(gold, index, [m](Method x) { return x == m; });
    if (c.attempted > 0) row(std::string(to_string(m)), c);
  }

  if (coverage != nullptr) {
    out << "# coverage\tcount\n";
    out << "unassigned\t" << coverage->entries.size() << '\n';
    for (CoverageBucket b : {CoverageBucket::kLemmaAbsent, CoverageBucket::kNoTranslation,
                             CoverageBucket::kThresholdFailure}) {
      out << to_string(b) << '\t' << coverage->count(b) << '\n';
    }
    out << "hapax\t" << coverage->hapax() << '\n';
  }
}

}  // namespace parawsd
