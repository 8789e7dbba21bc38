#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "parawsd/wordnet.h"

namespace parawsd {

struct Token {
  int index = 0;
  std::string surface;
  std::string lemma;  // lowercased at load
  std::string pos;
  std::optional<IliCode> gold;  // target-language tokens only

  friend bool operator==(const Token&, const Token&) = default;
};

struct TranslationUnit {
  std::string id;
  std::map<std::string, std::vector<Token>> sentences;  // language -> tokens

  const std::vector<Token>* sentence(const std::string& language) const;
  friend bool operator==(const TranslationUnit&, const TranslationUnit&) = default;
};

// A target-language token position. unit_index is the unit's position in the
// corpus and is what every ordering uses.
struct OccurrenceRef {
  std::string unit_id;
  std::size_t unit_index = 0;
  std::string language;
  int token_index = 0;
  std::string lemma;
  std::string pos;

  friend bool operator==(const OccurrenceRef&, const OccurrenceRef&) = default;
};

// Corpus order: unit, then token, then lemma.
bool corpus_order(const OccurrenceRef& a, const OccurrenceRef& b);

class Corpus {
 public:
  Corpus(std::string target_language, std::vector<std::string> source_languages,
         std::vector<TranslationUnit> units);

  const std::string& target_language() const { return target_language_; }
  const std::vector<std::string>& source_languages() const { return source_languages_; }
  const std::vector<TranslationUnit>& units() const { return units_; }

  const TranslationUnit* find_unit(const std::string& id) const;
  std::optional<std::size_t> unit_index(const std::string& id) const;
  const Token* token(const OccurrenceRef& occ) const;

  bool has_language(const std::string& language) const;

  friend bool operator==(const Corpus& a, const Corpus& b) {
    return a.target_language_ == b.target_language_ &&
           a.source_languages_ == b.source_languages_ && a.units_ == b.units_;
  }

 private:
  std::string target_language_;
  std::vector<std::string> source_languages_;
  std::vector<TranslationUnit> units_;
  std::unordered_map<std::string, std::size_t> by_id_;
};

// When `source_languages` is empty the source languages are every non-target
// language in order of first appearance; otherwise any other language is a
// parse error.
Corpus parse_corpus(std::istream& in, const std::string& target_language,
                    const std::vector<std::string>& source_languages = {},
                    const std::string& source_name = "<corpus>");
Corpus load_corpus(const std::filesystem::path& path, const std::string& target_language,
                   const std::vector<std::string>& source_languages = {});

// Writes the line format; parse_corpus(write_corpus(c)) == c.
void write_corpus(std::ostream& out, const Corpus& corpus);

// Target-language tokens with this lemma and pos, in corpus order.
std::vector<OccurrenceRef> occurrences(const Corpus& corpus, const std::string& lemma,
                                       const std::string& pos);

// Distinct (lemma, pos) pairs of the target text with their token counts.
std::map<std::pair<std::string, std::string>, int> target_frequencies(const Corpus& corpus);

}  // namespace parawsd
