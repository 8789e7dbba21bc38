#pragma once

#include <compare>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace parawsd {

// Identifier of a concept in the interlingual index, e.g. "ENG20-00019837-n".
class IliCode {
 public:
  IliCode() = default;
  explicit IliCode(std::string code);

  const std::string& str() const { return code_; }
  bool empty() const { return code_.empty(); }

  friend auto operator<=>(const IliCode&, const IliCode&) = default;

 private:
  std::string code_;
};

std::ostream& operator<<(std::ostream& os, const IliCode& ili);

// Wordnet part-of-speech letters: n, v, a, r.
bool is_wordnet_pos(std::string_view pos);

struct Literal {
  std::string lemma;
  int sense_number = 0;
};

struct SynsetLink {
  std::string relation;  // "hyp", "mer", or a materialized inverse ("hypo", "hol")
  IliCode target;
};

struct Synset {
  IliCode ili;
  std::string pos;
  std::vector<Literal> literals;
  std::vector<SynsetLink> links;
};

struct DanglingLink {
  IliCode from;
  std::string relation;
  IliCode target;
};

// Immutable per-language wordnet. Links to ILI codes outside the graph are kept
// out of the traversal structure and reported in dangling_links().
class WordnetGraph {
 public:
  // Validates and indexes. Throws ValidationError on a duplicate ILI code,
  // a duplicate (lemma, pos, sense) literal, or an invalid field.
  static WordnetGraph build(std::string language, std::vector<Synset> synsets);

  const std::string& language() const { return language_; }
  const std::vector<Synset>& synsets() const { return synsets_; }
  std::size_t size() const { return synsets_.size(); }

  bool contains(const IliCode& ili) const { return index_.contains(ili.str()); }
  const Synset* find(const IliCode& ili) const;

  // ILI codes for (lemma, pos) ordered by ascending sense number.
  const std::vector<IliCode>& senses(const std::string& lemma, const std::string& pos) const;

  // 1-based sense number of `lemma` in synset `ili`, if it is a member.
  std::optional<int> sense_number(const std::string& lemma, const std::string& pos,
                                  const IliCode& ili) const;

  using LemmaKey = std::pair<std::string, std::string>;  // (lemma, pos)
  const std::map<LemmaKey, std::vector<IliCode>>& lemma_index() const { return lemma_index_; }

  const std::vector<DanglingLink>& dangling_links() const { return dangling_; }

  // Number of stored links with the given relation tag, as written in the
  // source (materialized inverses are not counted).
  std::size_t count_links(const std::string& relation) const;

  // Undirected adjacency over hypernym/hyponym and meronym/holonym links.
  const std::vector<std::vector<std::uint32_t>>& taxonomic_adjacency() const { return adjacency_; }
  std::optional<std::uint32_t> node_of(const IliCode& ili) const;

 private:
  std::string language_;
  std::vector<Synset> synsets_;
  std::unordered_map<std::string, std::uint32_t> index_;
  std::map<LemmaKey, std::vector<IliCode>> lemma_index_;
  std::vector<DanglingLink> dangling_;
  std::vector<std::vector<std::uint32_t>> adjacency_;
};

// Rebuilds the (lemma, pos) -> senses index from synset literals alone.
std::map<WordnetGraph::LemmaKey, std::vector<IliCode>> rebuild_lemma_index(
    const std::vector<Synset>& synsets);

WordnetGraph parse_wordnet(std::istream& in, const std::string& language,
                           const std::string& source_name = "<wordnet>");
WordnetGraph load_wordnet(const std::filesystem::path& path, const std::string& language);

// L_ILI(lemma): senses ordered by sense number, empty when absent.
std::vector<IliCode> ili_senses(const WordnetGraph& graph, const std::string& lemma,
                                const std::string& pos);

inline constexpr int kDefaultMaxLinks = 6;

// Shortest undirected path length over taxonomic links, or nullopt if none is
// within max_k. Throws LookupError if either code is not in the graph.
std::optional<int> link_distance(const WordnetGraph& graph, const IliCode& a, const IliCode& b,
                                 int max_k = kDefaultMaxLinks);

// 1/(1+k) for a path of k links, exactly 0 when no path exists. Ordering is
// by value; comparisons are exact.
class SimilarityScore {
 public:
  SimilarityScore() = default;  // zero
  static SimilarityScore from_links(int k);
  static SimilarityScore zero() { return {}; }

  std::optional<int> links() const { return links_; }
  bool is_zero() const { return !links_.has_value(); }
  double value() const { return links_ ? 1.0 / (1.0 + *links_) : 0.0; }

  friend bool operator==(const SimilarityScore&, const SimilarityScore&) = default;
  friend std::strong_ordering operator<=>(const SimilarityScore& a, const SimilarityScore& b);

 private:
  std::optional<int> links_;
};

// Exact rational significance threshold in (0, 1]; the default is 1/3.
class SimilarityThreshold {
 public:
  SimilarityThreshold() = default;
  SimilarityThreshold(std::int64_t numerator, std::int64_t denominator);

  // Accepts "p/q" or a decimal such as "0.33". Throws ConfigError.
  static SimilarityThreshold parse(const std::string& text);

  bool admits(const SimilarityScore& score) const;
  double value() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  std::string str() const;

 private:
  std::int64_t num_ = 1;
  std::int64_t den_ = 3;
};

SimilarityScore semantic_similarity(const WordnetGraph& graph, const IliCode& a, const IliCode& b,
                                    int max_k = kDefaultMaxLinks);

}  // namespace parawsd
