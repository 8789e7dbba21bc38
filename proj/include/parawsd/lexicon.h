#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "parawsd/corpus.h"

namespace parawsd {

struct TranslationPair {
  std::string target_lemma;
  std::string target_pos;
  std::string source_lemma;
  std::string source_language;
  double score = 0.0;

  friend bool operator==(const TranslationPair&, const TranslationPair&) = default;
};

// POS-preserving translation equivalents for any number of source languages.
class TranslationLexicon {
 public:
  // Returns false (and leaves the lexicon unchanged) if the
  // (target_lemma, target_pos, source_lemma, source_language) tuple exists.
  bool add(const TranslationPair& pair);

  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }

  // source lemma -> score for one (target lemma, pos, language) key.
  const std::map<std::string, double>& equivalents(const std::string& target_lemma,
                                                   const std::string& target_pos,
                                                   const std::string& language) const;
  std::optional<double> score(const std::string& target_lemma, const std::string& target_pos,
                              const std::string& language, const std::string& source_lemma) const;

  std::vector<std::string> languages() const;
  bool has_language(const std::string& language) const;

  // Sorted by (target lemma, pos, language, descending score, source lemma).
  std::vector<TranslationPair> pairs() const;

  void merge(const TranslationLexicon& other);

 private:
  using Key = std::tuple<std::string, std::string, std::string>;  // lemma, pos, language
  std::map<Key, std::map<std::string, double>> entries_;
  std::map<std::string, std::size_t> per_language_;
  std::size_t size_ = 0;
};

// Unit-level 2x2 co-occurrence table: a = both, b = target only,
// c = source only, d = neither.
struct ContingencyTable {
  long long a = 0, b = 0, c = 0, d = 0;
};

// Dunning's log-likelihood ratio G^2 for a 2x2 table (0 log 0 = 0).
double log_likelihood_ratio(const ContingencyTable& t);

struct ExtractionSettings {
  double min_score = 9.0;
  int min_cooccurrence = 2;
};

// Scores every same-POS (target, source) content-word pair co-occurring in at
// least min_cooccurrence units and keeps positively associated pairs whose LLR
// reaches min_score. Only units holding both languages are counted.
TranslationLexicon extract_lexicon(const Corpus& corpus, const std::string& source_language,
                                   const ExtractionSettings& settings = {});

// Cross-POS lines ("n:v" in the pos column) are skipped with a warning;
// repeated pairs keep the first score.
TranslationLexicon parse_lexicon(std::istream& in, std::vector<std::string>* warnings = nullptr,
                                 const std::string& source_name = "<lexicon>");
TranslationLexicon import_lexicon(const std::filesystem::path& path,
                                  std::vector<std::string>* warnings = nullptr);
void write_lexicon(std::ostream& out, const TranslationLexicon& lexicon);

// One-to-one alignment of every target-language occurrence of (lemma, pos) in
// a unit. Occurrences are served left to right; each takes the unused source
// token with the highest lexicon score, leftmost on ties. Returns one entry per
// occurrence (token index, aligned source lemma or nullopt).
std::vector<std::pair<int, std::optional<std::string>>> align_sentence(
    const TranslationUnit& unit, const std::string& target_language,
    const std::string& lemma, const std::string& pos, const std::string& source_language,
    const TranslationLexicon& lexicon);

std::optional<std::string> align_occurrence(const TranslationUnit& unit, const OccurrenceRef& occ,
                                            const std::string& source_language,
                                            const TranslationLexicon& lexicon);

struct DelList {
  std::string target_lemma;
  std::string source_language;
  std::vector<std::string> entries;  // descending score, then lemma

  std::optional<std::size_t> position(const std::string& source_lemma) const;
};

DelList build_del(const TranslationLexicon& lexicon, const std::string& target_lemma,
                  const std::string& target_pos, const std::string& source_language);

}  // namespace parawsd
