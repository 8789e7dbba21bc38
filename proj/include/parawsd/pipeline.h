#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "parawsd/clustering.h"
#include "parawsd/corpus.h"
#include "parawsd/evaluation.h"
#include "parawsd/lexicon.h"
#include "parawsd/validate.h"
#include "parawsd/wordnet.h"
#include "parawsd/wsd.h"

namespace parawsd {

struct OutputPaths {
  std::optional<std::filesystem::path> lexicon;
  std::optional<std::filesystem::path> assignments;
  std::optional<std::filesystem::path> trace;
  std::optional<std::filesystem::path> conflicts;
  std::optional<std::filesystem::path> report;
  std::optional<std::filesystem::path> anomalies;
};

struct PipelineConfig {
  std::filesystem::path corpus;
  std::string target_language = "en";
  std::vector<std::string> source_languages;  // empty: every non-target corpus language
  std::map<std::string, std::filesystem::path> wordnets;
  std::map<std::string, std::filesystem::path> lexicons;  // languages without one are extracted
  ExtractionSettings extraction;
  std::vector<TargetWord> target_words;  // empty: polysemous target lemmas found in the text
  SimilarityThreshold threshold;
  double alpha = 0.12;
  bool cluster = true;
  bool sh = true;
  bool cluster_modify = false;
  unsigned threads = 0;  // 0: hardware concurrency
  OutputPaths outputs;

  // Relative paths resolve against `base_dir`. Throws ConfigError.
  static PipelineConfig from_json(const std::string& text,
                                  const std::filesystem::path& base_dir = {});
  static PipelineConfig load(const std::filesystem::path& path);

  // alpha > 0, threshold in (0, 1], corpus set; with `need_wordnet`, a target
  // wordnet too. Throws ConfigError.
  void validate(bool need_wordnet) const;
};

// Loaded inputs; `resources()` points into this object.
struct Workspace {
  std::unique_ptr<Corpus> corpus;
  std::map<std::string, WordnetGraph> wordnets;
  TranslationLexicon lexicon;
  std::vector<std::string> warnings;

  Resources resources(const std::string& target_language) const;
};

Workspace load_workspace(const PipelineConfig& config, bool need_wordnets);

// Every lemma of the target text with at least `min_senses` senses in the
// target wordnet, in (lemma, pos) order.
std::vector<TargetWord> default_targets(const Corpus& corpus, const WordnetGraph& target_wn,
                                        std::size_t min_senses = 2);

struct WsdRun {
  std::vector<TargetWord> targets;
  std::vector<SenseAssignment> assignments;  // corpus order, final
  std::vector<std::vector<JoinRecord>> traces;  // per target word
  std::vector<ClusterConflict> conflicts;
  CoverageReport coverage;                   // before SH
  std::vector<OccurrenceRef> sh_flagged;
};

// Wordnet step, cluster back-off and SH in that order. Target words run on a
// worker pool; the result does not depend on scheduling.
WsdRun run_wsd(const PipelineConfig& config, const Workspace& ws);

TranslationLexicon run_extract(const PipelineConfig& config, const Corpus& corpus);

// Exit codes: 0 success, 1 usage or configuration error, 2 data error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace parawsd
