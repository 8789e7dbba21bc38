#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "parawsd/corpus.h"
#include "parawsd/lexicon.h"
#include "parawsd/wordnet.h"

namespace parawsd {

// Provenance of a sense assignment, in the order the pipeline applies them.
enum class Method {
  kIntersection,
  kSimilarityFallback,
  kCrossLingualTieBreak,
  kClusterBackoff,
  kSimpleHeuristic,
  kUnassigned,
};

std::string_view to_string(Method m);
std::optional<Method> parse_method(std::string_view name);

struct TargetWord {
  std::string lemma;
  std::string pos;

  // "lemma/pos"; throws ConfigError.
  static TargetWord parse(std::string_view text);
  friend auto operator<=>(const TargetWord&, const TargetWord&) = default;
};

// Languages x occurrences matrix of translation equivalents; nullopt is the
// null string (untranslated).
struct EqMatrix {
  std::string target_lemma;
  std::string target_pos;
  std::vector<OccurrenceRef> columns;
  std::vector<std::string> rows;
  std::vector<std::vector<std::optional<std::string>>> cells;  // [row][column]

  const std::optional<std::string>& at(std::size_t row, std::size_t column) const {
    return cells[row][column];
  }
  std::optional<std::size_t> row_of(const std::string& language) const;
  EqMatrix restricted_to(const std::vector<std::string>& languages) const;
};

EqMatrix build_eq_matrix(const Corpus& corpus, const std::string& target_lemma,
                         const std::string& target_pos, const TranslationLexicon& lexicon,
                         const std::vector<std::string>& languages);

class VsaCell {
 public:
  static VsaCell undefined() { return VsaCell(); }
  static VsaCell of(std::vector<IliCode> ilis);

  bool is_defined() const { return defined_; }
  const std::vector<IliCode>& ilis() const { return ilis_; }

  friend bool operator==(const VsaCell&, const VsaCell&) = default;

 private:
  bool defined_ = false;
  std::vector<IliCode> ilis_;
};

struct VsaMatrix {
  std::vector<std::string> rows;
  std::vector<std::vector<VsaCell>> cells;  // [row][column]
};

using WordnetMap = std::map<std::string, const WordnetGraph*>;

// Each defined cell is L_ILI(target) ∩ L_ILI(equivalent), in target sense
// order. Throws ConfigError if a row language has no wordnet.
VsaMatrix compute_vsa(const EqMatrix& eq, const WordnetGraph& target_wn,
                      const WordnetMap& source_wns);

struct SimilarityMatch {
  IliCode target;
  IliCode source;
  SimilarityScore score;
};

// Every pair of the Cartesian product that reaches the maximal non-zero score,
// in product order (target list order, then source list order). Codes missing
// from the reference graph score zero.
std::vector<SimilarityMatch> best_similarity_pairs(const std::vector<IliCode>& target_ilis,
                                                   const std::vector<IliCode>& source_ilis,
                                                   const WordnetGraph& graph,
                                                   int max_k = kDefaultMaxLinks);

// The maximal pair if the threshold admits its score. Ties go to the lowest
// target sense, then the lowest source sense (list order).
std::optional<SimilarityMatch> similarity_fallback(const std::vector<IliCode>& target_ilis,
                                                   const std::vector<IliCode>& source_ilis,
                                                   const WordnetGraph& graph,
                                                   const SimilarityThreshold& threshold,
                                                   int max_k = kDefaultMaxLinks);

using SenseCounts = std::map<IliCode, int>;

// Most frequent candidate in `counts`; ties go to the lowest sense number of
// (lemma, pos). Throws std::invalid_argument if the candidates are empty or
// not senses of the lemma.
IliCode tie_break(const std::vector<IliCode>& candidates, const SenseCounts& counts,
                  const WordnetGraph& target_wn, const std::string& lemma,
                  const std::string& pos);

enum class CellState { kUndefined, kSingleton, kAmbiguous, kEmpty };
enum class CellResolution { kNone, kIntersection, kTieBreak, kFallback };

// What one wordnet-linked source language contributed for one occurrence.
struct LanguageEvidence {
  std::string language;
  CellState state = CellState::kUndefined;
  std::optional<std::string> equivalent;
  std::vector<IliCode> candidates;  // the VSA cell
  CellResolution resolution = CellResolution::kNone;
  std::optional<IliCode> sense;
  SimilarityScore score;
  std::optional<SimilarityMatch> best_pair;  // empty cells: best pair even below threshold
  bool equivalent_in_wordnet = false;
};

struct SenseAssignment {
  OccurrenceRef occurrence;
  std::optional<IliCode> sense;
  Method method = Method::kUnassigned;
  std::vector<LanguageEvidence> evidence;
  std::size_t target_sense_count = 0;
};

struct Resources {
  const WordnetGraph* target_wordnet = nullptr;
  WordnetMap source_wordnets;
  const TranslationLexicon* lexicon = nullptr;
};

struct WsdSettings {
  SimilarityThreshold threshold;
  int max_links = kDefaultMaxLinks;
};

struct WordDisambiguation {
  EqMatrix eq;        // every lexicon language
  VsaMatrix vsa;      // wordnet-linked languages only
  std::vector<SenseAssignment> assignments;  // column order
};

// Languages that contribute EQ rows: corpus source languages the lexicon covers.
std::vector<std::string> eq_languages(const Corpus& corpus, const TranslationLexicon& lexicon);

WordDisambiguation disambiguate_word(const Corpus& corpus, const TargetWord& word,
                                     const Resources& resources, const WsdSettings& settings);

// All occurrences of all target words, in corpus order.
std::vector<SenseAssignment> disambiguate(const Corpus& corpus,
                                          const std::vector<TargetWord>& targets,
                                          const Resources& resources,
                                          const WsdSettings& settings);

void write_assignments(std::ostream& out, const std::vector<SenseAssignment>& assignments);

struct AssignmentRecord {
  std::string unit_id;
  int token_index = 0;
  std::string lemma;
  std::string pos;
  std::optional<IliCode> sense;
  Method method = Method::kUnassigned;
};

std::vector<AssignmentRecord> parse_assignments(std::istream& in,
                                                const std::string& source_name = "<assignments>");

}  // namespace parawsd
