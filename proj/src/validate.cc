#include "parawsd/validate.h"

#include <algorithm>
#include <map>
#include <ostream>
#include <tuple>

#include "parawsd/text.h"

namespace parawsd {

std::string_view to_string(AnomalyCategory c) {
  return c == AnomalyCategory::kSourceAbsent ? "source_absent" : "unlinked";
}

std::vector<AlignmentAnomaly> collect_anomalies(const std::vector<SenseAssignment>& assignments) {
  using Key = std::tuple<std::string, std::string, std::string, std::string>;
  std::map<Key, AlignmentAnomaly> grouped;
  for (const SenseAssignment& a : assignments) {
    if (a.target_sense_count == 0) continue;
    for (const LanguageEvidence& ev : a.evidence) {
      if (ev.state != CellState::kEmpty || ev.resolution != CellResolution::kNone) continue;
      const Key key{a.occurrence.lemma, a.occurrence.pos, ev.language, *ev.equivalent};
      auto [it, fresh] = grouped.try_emplace(key);
      AlignmentAnomaly& anomaly = it->second;
      if (fresh) {
        anomaly.target_lemma = a.occurrence.lemma;
        anomaly.target_pos = a.occurrence.pos;
        anomaly.source_language = ev.language;
        anomaly.source_lemma = *ev.equivalent;
        anomaly.category = ev.equivalent_in_wordnet ? AnomalyCategory::kUnlinked
                                                    : AnomalyCategory::kSourceAbsent;
      }
      anomaly.occurrences.push_back(a.occurrence);
      // Same lemma pair, same senses: every occurrence has the same best pair.
      if (ev.best_pair && (!anomaly.best_pair || ev.best_pair->score > anomaly.best_score)) {
        anomaly.best_pair = ev.best_pair;
        anomaly.best_score = ev.best_pair->score;
      }
    }
  }

  std::vector<AlignmentAnomaly> out;
  for (auto& [key, anomaly] : grouped) {
    std::sort(anomaly.occurrences.begin(), anomaly.occurrences.end(), corpus_order);
    out.push_back(std::move(anomaly));
  }
  std::stable_sort(out.begin(), out.end(), [](const AlignmentAnomaly& x, const AlignmentAnomaly& y) {
    if (x.support() != y.support()) return x.support() > y.support();
    return x.best_score < y.best_score;
  });
  return out;
}

std::vector<AlignmentAnomaly> detect_anomalies(const Corpus& corpus,
                                               const std::vector<TargetWord>& targets,
                                               const Resources& resources,
                                               const WsdSettings& settings) {
  std::vector<SenseAssignment> all;
  for (const TargetWord& w : targets) {
    auto word = disambiguate_word(corpus, w, resources, settings);
    for (auto& a : word.assignments) all.push_back(std::move(a));
  }
  return collect_anomalies(all);
}

void write_anomalies(std::ostream& out, const std::vector<AlignmentAnomaly>& anomalies) {
  for (const AlignmentAnomaly& a : anomalies) {
    out << a.target_lemma << '\t' << a.source_language << '\t' << a.source_lemma << '\t'
        << a.support() << '\t' << format_number(a.best_score.value()) << '\t'
        << (a.best_pair ? a.best_pair->target.str() : std::string("-")) << '\t'
        << (a.best_pair ? a.best_pair->source.str() : std::string("-")) << '\t'
        << to_string(a.category) << '\n';
  }
}

}  // namespace parawsd
