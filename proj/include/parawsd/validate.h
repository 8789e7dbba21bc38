#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "parawsd/corpus.h"
#include "parawsd/wordnet.h"
#include "parawsd/wsd.h"

namespace parawsd {

enum class AnomalyCategory {
  kSourceAbsent,  // equivalent has no synset of this pos in its wordnet
  kUnlinked,      // present, but its senses share no ILI and nothing close enough
};

std::string_view to_string(AnomalyCategory c);

struct AlignmentAnomaly {
  std::string target_lemma;
  std::string target_pos;
  std::string source_language;
  std::string source_lemma;
  std::vector<OccurrenceRef> occurrences;  // corpus order
  SimilarityScore best_score;
  std::optional<SimilarityMatch> best_pair;
  AnomalyCategory category = AnomalyCategory::kUnlinked;

  std::size_t support() const { return occurrences.size(); }
};

// Reciprocal translations whose senses neither intersect nor pass the
// similarity threshold, one record per (target lemma, language, source lemma).
// Ordered by descending support, then ascending best score, then the key.
// Target words absent from the target wordnet are skipped.
std::vector<AlignmentAnomaly> detect_anomalies(const Corpus& corpus,
                                               const std::vector<TargetWord>& targets,
                                               const Resources& resources,
                                               const WsdSettings& settings);

// Same, from already computed wordnet-step results.
std::vector<AlignmentAnomaly> collect_anomalies(const std::vector<SenseAssignment>& assignments);

void write_anomalies(std::ostream& out, const std::vector<AlignmentAnomaly>& anomalies);

}  // namespace parawsd
