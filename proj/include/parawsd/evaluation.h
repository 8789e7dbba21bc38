#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "parawsd/corpus.h"
#include "parawsd/wordnet.h"
#include "parawsd/wsd.h"

namespace parawsd {

struct ScoreCounts {
  long long correct = 0;
  long long attempted = 0;
  long long total = 0;
};

struct ScoreReport {
  long long total = 0;
  long long attempted = 0;
  long long correct = 0;
  double precision = 0.0;
  double recall = 0.0;
  double f_measure = 0.0;
  std::map<Method, ScoreCounts> per_method;  // attempted methods only; total is the overall total

  // Throws ValidationError unless 0 <= correct <= attempted <= total and
  // attempted > 0.
  static ScoreReport from_counts(long long correct, long long attempted, long long total);
};

// Scores over every gold-annotated target token of the corpus. Tokens with no
// record, or an Unassigned one, count toward total only. Records must refer to
// existing target tokens (ConsistencyError); no gold at all is a
// ValidationError.
ScoreReport score(const std::vector<AssignmentRecord>& records, const Corpus& corpus);
ScoreReport score(const std::vector<SenseAssignment>& assignments, const Corpus& corpus);

AssignmentRecord to_record(const SenseAssignment& a);

// Unassigned occurrences of lemmas in `target_wn` get the sense-1 ILI
// (SimpleHeuristic). Occurrences of absent lemmas stay Unassigned and are
// appended to `flagged` when given.
std::vector<SenseAssignment> apply_sh(std::vector<SenseAssignment> assignments,
                                      const WordnetGraph& target_wn,
                                      std::vector<OccurrenceRef>* flagged = nullptr);

enum class CoverageBucket { kLemmaAbsent, kNoTranslation, kThresholdFailure };

std::string_view to_string(CoverageBucket b);

struct CoverageEntry {
  OccurrenceRef occurrence;
  CoverageBucket bucket;
  bool hapax = false;
};

struct CoverageReport {
  std::vector<CoverageEntry> entries;  // unassigned occurrences, corpus order

  std::size_t count(CoverageBucket b) const;
  std::size_t hapax() const;
};

// Buckets each Unassigned occurrence by its wordnet-step evidence: no target
// senses, no equivalent in any wordnet-linked language, or equivalents whose
// senses neither intersect nor pass the similarity threshold.
CoverageReport coverage_report(const std::vector<SenseAssignment>& assignments,
                               const Corpus& corpus);

// Table-style report: cumulative variants AWN (wordnet step), AWN+C (plus
// cluster back-off) and AWN+C+SH, then the per-method rows, then coverage when
// given. Variants with nothing attempted print '-'.
void write_report(std::ostream& out, const std::vector<AssignmentRecord>& records,
                  const Corpus& corpus, const CoverageReport* coverage = nullptr);

}  // namespace parawsd
