#include "parawsd/wordnet.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <ostream>
#include <queue>
#include <set>
#include <sstream>

#include "parawsd/errors.h"
#include "parawsd/text.h"

namespace parawsd {

namespace {

bool is_taxonomic(const std::string& relation) {
  return relation == "hyp" || relation == "hypo" || relation == "mer" || relation == "hol";
}

bool is_relation_tag(std::string_view tag) {
  if (tag.empty()) return false;
  return std::all_of(tag.begin(), tag.end(),
                     [](char c) { return (c >= 'a' && c <= 'z') || c == '_'; });
}

const std::vector<IliCode>& empty_senses() {
  static const std::vector<IliCode> kEmpty;
  return kEmpty;
}

}  // namespace

IliCode::IliCode(std::string code) : code_(std::move(code)) {
  if (code_.empty()) throw ValidationError("empty ILI code");
}

std::ostream& operator<<(std::ostream& os, const IliCode& ili) { return os << ili.str(); }

bool is_wordnet_pos(std::string_view pos) {
  return pos == "n" || pos == "v" || pos == "a" || pos == "r";
}

WordnetGraph WordnetGraph::build(std::string language, std::vector<Synset> synsets) {
  WordnetGraph g;
  g.language_ = std::move(language);
  g.synsets_ = std::move(synsets);

  std::set<std::tuple<std::string, std::string, int>> literals;
  for (std::uint32_t i = 0; i < g.synsets_.size(); ++i) {
    const Synset& s = g.synsets_[i];
    if (s.ili.empty()) throw ValidationError("synset without ILI code");
    if (!is_wordnet_pos(s.pos)) {
      throw ValidationError("synset " + s.ili.str() + ": invalid part of speech '" + s.pos + "'");
    }
    if (!g.index_.emplace(s.ili.str(), i).second) {
      throw ValidationError("duplicate ILI code " + s.ili.str());
    }
    for (const Literal& lit : s.literals) {
      if (lit.lemma.empty() || lit.sense_number < 1) {
        throw ValidationError("synset " + s.ili.str() + ": invalid literal");
      }
      if (!literals.emplace(lit.lemma, s.pos, lit.sense_number).second) {
        throw ValidationError("duplicate literal " + lit.lemma + ":" +
                              std::to_string(lit.sense_number) + " (" + s.pos + ")");
      }
    }
  }

  g.lemma_index_ = rebuild_lemma_index(g.synsets_);

  std::vector<std::set<std::uint32_t>> adj(g.synsets_.size());
  for (std::uint32_t i = 0; i < g.synsets_.size(); ++i) {
    for (const SynsetLink& link : g.synsets_[i].links) {
      auto it = g.index_.find(link.target.str());
      if (it == g.index_.end()) {
        g.dangling_.push_back({g.synsets_[i].ili, link.relation, link.target});
        continue;
      }
      if (!is_taxonomic(link.relation) || it->second == i) continue;
      adj[i].insert(it->second);
      adj[it->second].insert(i);
    }
  }
  g.adjacency_.reserve(adj.size());
  for (const auto& nbrs : adj) g.adjacency_.emplace_back(nbrs.begin(), nbrs.end());
  return g;
}

const Synset* WordnetGraph::find(const IliCode& ili) const {
  auto it = index_.find(ili.str());
  return it == index_.end() ? nullptr : &synsets_[it->second];
}

const std::vector<IliCode>& WordnetGraph::senses(const std::string& lemma,
                                                 const std::string& pos) const {
  auto it = lemma_index_.find({lemma, pos});
  return it == lemma_index_.end() ? empty_senses() : it->second;
}

std::optional<int> WordnetGraph::sense_number(const std::string& lemma, const std::string& pos,
                                              const IliCode& ili) const {
  const Synset* s = find(ili);
  if (s == nullptr || s->pos != pos) return std::nullopt;
  for (const Literal& lit : s->literals) {
    if (lit.lemma == lemma) return lit.sense_number;
  }
  return std::nullopt;
}

std::size_t WordnetGraph::count_links(const std::string& relation) const {
  std::size_t n = 0;
  for (const Synset& s : synsets_) {
    n += static_cast<std::size_t>(std::count_if(
        s.links.begin(), s.links.end(), [&](const SynsetLink& l) { return l.relation == relation; }));
  }
  return n;
}

std::optional<std::uint32_t> WordnetGraph::node_of(const IliCode& ili) const {
  auto it = index_.find(ili.str());
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::map<WordnetGraph::LemmaKey, std::vector<IliCode>> rebuild_lemma_index(
    const std::vector<Synset>& synsets) {
  std::map<WordnetGraph::LemmaKey, std::vector<std::pair<int, IliCode>>> numbered;
  for (const Synset& s : synsets) {
    for (const Literal& lit : s.literals) {
      numbered[{lit.lemma, s.pos}].emplace_back(lit.sense_number, s.ili);
    }
  }
  std::map<WordnetGraph::LemmaKey, std::vector<IliCode>> index;
  for (auto& [key, entries] : numbered) {
    std::sort(entries.begin(), entries.end());
    auto& out = index[key];
    for (auto& [num, ili] : entries) out.push_back(ili);
  }
  return index;
}

WordnetGraph parse_wordnet(std::istream& in, const std::string& language,
                           const std::string& source_name) {
  std::vector<Synset> synsets;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty() || line.front() == '#') continue;

    const auto cols = split(line, '\t');
    if (cols.size() < 3 || cols.size() > 4) {
      throw ParseError(source_name, line_no, "expected 3 or 4 tab-separated fields");
    }
    Synset s;
    if (cols[0].empty()) throw ParseError(source_name, line_no, "empty ILI code");
    s.ili = IliCode(std::string(cols[0]));
    s.pos = std::string(cols[1]);
    if (!is_wordnet_pos(s.pos)) {
      throw ParseError(source_name, line_no, "unknown part of speech '" + s.pos + "'");
    }
    for (std::string_view lit : split(cols[2], ',')) {
      const std::size_t colon = lit.rfind(':');
      if (colon == std::string_view::npos || colon == 0) {
        throw ParseError(source_name, line_no, "literal without sense number: '" +
                                                   std::string(lit) + "'");
      }
      int sense = 0;
      const std::string_view num = lit.substr(colon + 1);
      auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), sense);
      if (ec != std::errc() || ptr != num.data() + num.size() || sense < 1) {
        throw ParseError(source_name, line_no, "bad sense number in '" + std::string(lit) + "'");
      }
      s.literals.push_back({to_lower(lit.substr(0, colon)), sense});
    }
    if (cols.size() == 4 && !trim(cols[3]).empty()) {
      for (std::string_view link : split(cols[3], ',')) {
        const std::size_t colon = link.find(':');
        if (colon == std::string_view::npos || colon + 1 == link.size() ||
            !is_relation_tag(link.substr(0, colon))) {
          throw ParseError(source_name, line_no, "malformed link '" + std::string(link) + "'");
        }
        s.links.push_back({std::string(link.substr(0, colon)),
                           IliCode(std::string(link.substr(colon + 1)))});
      }
    }
    synsets.push_back(std::move(s));
  }
  return WordnetGraph::build(language, std::move(synsets));
}

WordnetGraph load_wordnet(const std::filesystem::path& path, const std::string& language) {
  std::ifstream in(path);
  if (!in) throw ConfigError("wordnet not found: " + path.string());
  return parse_wordnet(in, language, path.string());
}

std::vector<IliCode> ili_senses(const WordnetGraph& graph, const std::string& lemma,
                                const std::string& pos) {
  return graph.senses(lemma, pos);
}

std::optional<int> link_distance(const WordnetGraph& graph, const IliCode& a, const IliCode& b,
                                 int max_k) {
  const auto from = graph.node_of(a);
  if (!from) throw LookupError("ILI code not in " + graph.language() + " wordnet: " + a.str());
  const auto to = graph.node_of(b);
  if (!to) throw LookupError("ILI code not in " + graph.language() + " wordnet: " + b.str());
  if (*from == *to) return 0;

  const auto& adj = graph.taxonomic_adjacency();
  std::vector<int> depth(adj.size(), -1);
  std::queue<std::uint32_t> frontier;
  depth[*from] = 0;
  frontier.push(*from);
  while (!frontier.empty()) {
    const std::uint32_t u = frontier.front();
    frontier.pop();
    if (depth[u] >= max_k) continue;
    for (std::uint32_t v : adj[u]) {
      if (depth[v] >= 0) continue;
      depth[v] = depth[u] + 1;
      if (v == *to) return depth[v];
      frontier.push(v);
    }
  }
  return std::nullopt;
}

SimilarityScore SimilarityScore::from_links(int k) {
  if (k < 0) throw std::invalid_argument("negative link count");
  SimilarityScore s;
  s.links_ = k;
  return s;
}

std::strong_ordering operator<=>(const SimilarityScore& a, const SimilarityScore& b) {
  if (a.is_zero() || b.is_zero()) return !a.is_zero() <=> !b.is_zero();
  // Fewer links means a higher score.
  return *b.links_ <=> *a.links_;
}

SimilarityThreshold::SimilarityThreshold(std::int64_t numerator, std::int64_t denominator)
    : num_(numerator), den_(denominator) {
  if (den_ <= 0 || num_ <= 0 || num_ > den_) {
    throw ConfigError("similarity threshold must lie in (0, 1]");
  }
}

SimilarityThreshold SimilarityThreshold::parse(const std::string& text) {
  const std::string_view t = trim(text);
  auto parse_int = [&](std::string_view s) {
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
      throw ConfigError("bad similarity threshold '" + text + "'");
    }
    return v;
  };
  if (const std::size_t slash = t.find('/'); slash != std::string_view::npos) {
    return {parse_int(t.substr(0, slash)), parse_int(t.substr(slash + 1))};
  }
  const std::size_t dot = t.find('.');
  if (dot == std::string_view::npos) return {parse_int(t), 1};
  const std::string_view frac = t.substr(dot + 1);
  if (frac.size() > 12) throw ConfigError("similarity threshold has too many decimals");
  std::int64_t den = 1;
  for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
  const std::int64_t whole = dot == 0 ? 0 : parse_int(t.substr(0, dot));
  const std::int64_t part = frac.empty() ? 0 : parse_int(frac);
  return {whole * den + part, den};
}

bool SimilarityThreshold::admits(const SimilarityScore& score) const {
  const auto k = score.links();
  if (!k) return false;
  // 1/(1+k) >= num/den  <=>  den >= num * (1+k)
  return den_ >= num_ * (1 + static_cast<std::int64_t>(*k));
}

std::string SimilarityThreshold::str() const {
  return std::to_string(num_) + "/" + std::to_string(den_);
}

SimilarityScore semantic_similarity(const WordnetGraph& graph, const IliCode& a, const IliCode& b,
                                    int max_k) {
  const auto k = link_distance(graph, a, b, max_k);
  return k ? SimilarityScore::from_links(*k) : SimilarityScore::zero();
}

}  // namespace parawsd
