#include "parawsd/wsd.h"

#include <algorithm>
#include <charconv>
#include <ostream>
#include <set>
#include <stdexcept>

#include "parawsd/errors.h"
#include "parawsd/text.h"

namespace parawsd {

namespace {

constexpr std::pair<Method, std::string_view> kMethodNames[] = {
    {Method::kIntersection, "Intersection"},
    {Method::kSimilarityFallback, "SimilarityFallback"},
    {Method::kCrossLingualTieBreak, "CrossLingualTieBreak"},
    {Method::kClusterBackoff, "ClusterBackoff"},
    {Method::kSimpleHeuristic, "SimpleHeuristic"},
    {Method::kUnassigned, "Unassigned"},
};

bool in_list(const std::vector<IliCode>& list, const IliCode& ili) {
  return std::find(list.begin(), list.end(), ili) != list.end();
}

}  // namespace

std::string_view to_string(Method m) {
  for (const auto& [method, name] : kMethodNames) {
    if (method == m) return name;
  }
  return "Unassigned";
}

std::optional<Method> parse_method(std::string_view name) {
  for (const auto& [method, n] : kMethodNames) {
    if (n == name) return method;
  }
  return std::nullopt;
}

TargetWord TargetWord::parse(std::string_view text) {
  const std::size_t slash = text.rfind('/');
  if (slash == std::string_view::npos || slash == 0 || slash + 1 == text.size()) {
    throw ConfigError("target word must be lemma/pos: '" + std::string(text) + "'");
  }
  return {to_lower(text.substr(0, slash)), std::string(text.substr(slash + 1))};
}

std::optional<std::size_t> EqMatrix::row_of(const std::string& language) const {
  auto it = std::find(rows.begin(), rows.end(), language);
  if (it == rows.end()) return std::nullopt;
  return static_cast<std::size_t>(it - rows.begin());
}

EqMatrix EqMatrix::restricted_to(const std::vector<std::string>& languages) const {
  EqMatrix out{target_lemma, target_pos, columns, {}, {}};
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (std::find(languages.begin(), languages.end(), rows[r]) == languages.end()) continue;
    out.rows.push_back(rows[r]);
    out.cells.push_back(cells[r]);
  }
  return out;
}

EqMatrix build_eq_matrix(const Corpus& corpus, const std::string& target_lemma,
                         const std::string& target_pos, const TranslationLexicon& lexicon,
                         const std::vector<std::string>& languages) {
  EqMatrix eq{target_lemma, target_pos, occurrences(corpus, target_lemma, target_pos), languages,
              {}};
  eq.cells.assign(languages.size(),
                  std::vector<std::optional<std::string>>(eq.columns.size()));
  // Columns of one unit are contiguous; align each unit once per language.
  std::size_t j = 0;
  while (j < eq.columns.size()) {
    const TranslationUnit& unit = corpus.units()[eq.columns[j].unit_index];
    std::size_t end = j;
    while (end < eq.columns.size() && eq.columns[end].unit_index == eq.columns[j].unit_index) {
      ++end;
    }
    for (std::size_t r = 0; r < languages.size(); ++r) {
      const auto aligned = align_sentence(unit, corpus.target_language(), target_lemma,
                                          target_pos, languages[r], lexicon);
      for (std::size_t c = j; c < end; ++c) {
        for (const auto& [index, lemma] : aligned) {
          if (index == eq.columns[c].token_index) eq.cells[r][c] = lemma;
        }
      }
    }
    j = end;
  }
  return eq;
}

VsaCell VsaCell::of(std::vector<IliCode> ilis) {
  VsaCell cell;
  cell.defined_ = true;
  cell.ilis_ = std::move(ilis);
  return cell;
}

VsaMatrix compute_vsa(const EqMatrix& eq, const WordnetGraph& target_wn,
                      const WordnetMap& source_wns) {
  VsaMatrix vsa{eq.rows, {}};
  const auto& target_ilis = target_wn.senses(eq.target_lemma, eq.target_pos);
  for (std::size_t r = 0; r < eq.rows.size(); ++r) {
    auto it = source_wns.find(eq.rows[r]);
    if (it == source_wns.end() || it->second == nullptr) {
      throw ConfigError("no wordnet for language " + eq.rows[r]);
    }
    const WordnetGraph& source_wn = *it->second;
    auto& row = vsa.cells.emplace_back();
    for (std::size_t c = 0; c < eq.columns.size(); ++c) {
      const auto& equivalent = eq.at(r, c);
      if (!equivalent) {
        row.push_back(VsaCell::undefined());
        continue;
      }
      const auto& source_ilis = source_wn.senses(*equivalent, eq.target_pos);
      std::vector<IliCode> common;
      for (const IliCode& ili : target_ilis) {
        if (in_list(source_ilis, ili)) common.push_back(ili);
      }
      row.push_back(VsaCell::of(std::move(common)));
    }
  }
  return vsa;
}

std::vector<SimilarityMatch> best_similarity_pairs(const std::vector<IliCode>& target_ilis,
                                                   const std::vector<IliCode>& source_ilis,
                                                   const WordnetGraph& graph, int max_k) {
  std::vector<SimilarityMatch> best;
  for (const IliCode& t : target_ilis) {
    if (!graph.contains(t)) continue;
    for (const IliCode& s : source_ilis) {
      if (!graph.contains(s)) continue;
      const SimilarityScore score = semantic_similarity(graph, t, s, max_k);
      if (score.is_zero()) continue;
      if (best.empty() || score > best.front().score) {
        best.assign(1, {t, s, score});
      } else if (score == best.front().score) {
        best.push_back({t, s, score});
      }
    }
  }
  return best;
}

std::optional<SimilarityMatch> similarity_fallback(const std::vector<IliCode>& target_ilis,
                                                   const std::vector<IliCode>& source_ilis,
                                                   const WordnetGraph& graph,
                                                   const SimilarityThreshold& threshold,
                                                   int max_k) {
  const auto best = best_similarity_pairs(target_ilis, source_ilis, graph, max_k);
  if (best.empty() || !threshold.admits(best.front().score)) return std::nullopt;
  return best.front();
}

IliCode tie_break(const std::vector<IliCode>& candidates, const SenseCounts& counts,
                  const WordnetGraph& target_wn, const std::string& lemma,
                  const std::string& pos) {
  if (candidates.empty()) throw std::invalid_argument("tie_break: no candidates");
  const auto& senses = target_wn.senses(lemma, pos);
  auto rank = [&](const IliCode& ili) {
    auto it = std::find(senses.begin(), senses.end(), ili);
    if (it == senses.end()) {
      throw std::invalid_argument("tie_break: " + ili.str() + " is not a sense of " + lemma);
    }
    return it - senses.begin();
  };
  auto count = [&](const IliCode& ili) {
    auto it = counts.find(ili);
    return it == counts.end() ? 0 : it->second;
  };
  for (const IliCode& c : candidates) rank(c);
  const IliCode* best = &candidates.front();
  for (const IliCode& c : candidates) {
    const int cc = count(c), bc = count(*best);
    if (cc > bc || (cc == bc && rank(c) < rank(*best))) best = &c;
  }
  return *best;
}

std::vector<std::string> eq_languages(const Corpus& corpus, const TranslationLexicon& lexicon) {
  std::vector<std::string> out;
  for (const auto& lang : corpus.source_languages()) {
    if (lexicon.has_language(lang)) out.push_back(lang);
  }
  return out;
}

namespace {

// Votes the per-language resolutions of one occurrence into a final sense.
void merge_evidence(SenseAssignment& a, const SenseCounts& pooled, const WordnetGraph& target_wn) {
  struct Tally {
    int votes = 0;
    SimilarityScore best;
  };
  std::map<IliCode, Tally> tally;
  bool any_intersection = false, any_tie_break = false;
  for (const auto& ev : a.evidence) {
    if (ev.resolution == CellResolution::kNone) continue;
    Tally& t = tally[*ev.sense];
    ++t.votes;
    t.best = std::max(t.best, ev.score);
    any_intersection |= ev.resolution == CellResolution::kIntersection;
    any_tie_break |= ev.resolution == CellResolution::kTieBreak;
  }
  if (tally.empty()) {
    a.method = Method::kUnassigned;
    return;
  }

  int top_votes = 0;
  for (const auto& [ili, t] : tally) top_votes = std::max(top_votes, t.votes);
  SimilarityScore top_score;
  for (const auto& [ili, t] : tally) {
    if (t.votes == top_votes) top_score = std::max(top_score, t.best);
  }
  std::vector<IliCode> finalists;
  for (const auto& [ili, t] : tally) {
    if (t.votes == top_votes && t.best == top_score) finalists.push_back(ili);
  }
  a.sense = finalists.size() == 1
                ? finalists.front()
                : tie_break(finalists, pooled, target_wn, a.occurrence.lemma, a.occurrence.pos);

  if (tally.size() > 1 || (any_tie_break && !any_intersection)) {
    a.method = Method::kCrossLingualTieBreak;
  } else if (any_intersection) {
    a.method = Method::kIntersection;
  } else {
    a.method = Method::kSimilarityFallback;
  }
}

}  // namespace

WordDisambiguation disambiguate_word(const Corpus& corpus, const TargetWord& word,
                                     const Resources& resources, const WsdSettings& settings) {
  if (resources.target_wordnet == nullptr) throw ConfigError("missing target wordnet");
  if (resources.lexicon == nullptr) throw ConfigError("missing translation lexicon");
  const WordnetGraph& target_wn = *resources.target_wordnet;
  const auto& target_ilis = target_wn.senses(word.lemma, word.pos);

  WordDisambiguation out;
  out.eq = build_eq_matrix(corpus, word.lemma, word.pos, *resources.lexicon,
                           eq_languages(corpus, *resources.lexicon));
  std::vector<std::string> wn_rows;
  for (const auto& lang : out.eq.rows) {
    if (resources.source_wordnets.contains(lang)) wn_rows.push_back(lang);
  }
  const EqMatrix wn_eq = out.eq.restricted_to(wn_rows);
  out.vsa = compute_vsa(wn_eq, target_wn, resources.source_wordnets);

  const std::size_t n = wn_eq.columns.size();
  out.assignments.resize(n);
  for (std::size_t c = 0; c < n; ++c) {
    SenseAssignment& a = out.assignments[c];
    a.occurrence = wn_eq.columns[c];
    a.target_sense_count = target_ilis.size();
    for (std::size_t r = 0; r < wn_rows.size(); ++r) {
      const VsaCell& cell = out.vsa.cells[r][c];
      LanguageEvidence ev;
      ev.language = wn_rows[r];
      ev.equivalent = wn_eq.at(r, c);
      ev.candidates = cell.ilis();
      if (ev.equivalent) {
        const WordnetGraph& swn = *resources.source_wordnets.at(ev.language);
        ev.equivalent_in_wordnet = !swn.senses(*ev.equivalent, word.pos).empty();
      }
      if (!cell.is_defined()) {
        ev.state = CellState::kUndefined;
      } else if (cell.ilis().empty()) {
        ev.state = CellState::kEmpty;
      } else {
        ev.state = cell.ilis().size() == 1 ? CellState::kSingleton : CellState::kAmbiguous;
      }
      a.evidence.push_back(std::move(ev));
    }
  }

  // Pass 1: unambiguous intersections seed the per-bitext sense counts.
  std::map<std::string, SenseCounts> counts;
  for (auto& a : out.assignments) {
    for (auto& ev : a.evidence) {
      if (ev.state != CellState::kSingleton) continue;
      ev.resolution = CellResolution::kIntersection;
      ev.sense = ev.candidates.front();
      ev.score = SimilarityScore::from_links(0);
      ++counts[ev.language][*ev.sense];
    }
  }

  // Pass 2a: similarity fallback for empty intersections. Ties use the pass-1
  // counts only, so the outcome does not depend on column order.
  std::map<std::string, SenseCounts> fallback_counts;
  for (auto& a : out.assignments) {
    for (auto& ev : a.evidence) {
      if (ev.state != CellState::kEmpty) continue;
      const WordnetGraph& swn = *resources.source_wordnets.at(ev.language);
      const auto& source_ilis = swn.senses(*ev.equivalent, word.pos);
      const auto best = best_similarity_pairs(target_ilis, source_ilis, target_wn,
                                              settings.max_links);
      if (best.empty()) continue;
      ev.best_pair = best.front();
      if (!settings.threshold.admits(best.front().score)) continue;
      std::vector<IliCode> tied_targets;
      for (const auto& m : best) {
        if (!in_list(tied_targets, m.target)) tied_targets.push_back(m.target);
      }
      const IliCode chosen =
          tied_targets.size() == 1
              ? tied_targets.front()
              : tie_break(tied_targets, counts[ev.language], target_wn, word.lemma, word.pos);
      for (const auto& m : best) {
        if (m.target == chosen) {
          ev.best_pair = m;
          break;
        }
      }
      ev.resolution = CellResolution::kFallback;
      ev.sense = chosen;
      ev.score = ev.best_pair->score;
      ++fallback_counts[ev.language][chosen];
    }
  }
  for (const auto& [lang, fc] : fallback_counts) {
    for (const auto& [ili, k] : fc) counts[lang][ili] += k;
  }

  // Pass 2b: cross-lingual ambiguity resolved by the bitext counts.
  for (auto& a : out.assignments) {
    for (auto& ev : a.evidence) {
      if (ev.state != CellState::kAmbiguous) continue;
      ev.resolution = CellResolution::kTieBreak;
      ev.sense = tie_break(ev.candidates, counts[ev.language], target_wn, word.lemma, word.pos);
      ev.score = SimilarityScore::from_links(0);
    }
  }

  SenseCounts pooled;
  for (const auto& [lang, lc] : counts) {
    for (const auto& [ili, k] : lc) pooled[ili] += k;
  }
  for (auto& a : out.assignments) merge_evidence(a, pooled, target_wn);
  return out;
}

std::vector<SenseAssignment> disambiguate(const Corpus& corpus,
                                          const std::vector<TargetWord>& targets,
                                          const Resources& resources,
                                          const WsdSettings& settings) {
  std::vector<SenseAssignment> all;
  for (const TargetWord& w : targets) {
    auto word = disambiguate_word(corpus, w, resources, settings);
    for (auto& a : word.assignments) all.push_back(std::move(a));
  }
  std::stable_sort(all.begin(), all.end(), [](const SenseAssignment& x, const SenseAssignment& y) {
    return corpus_order(x.occurrence, y.occurrence);
  });
  return all;
}

void write_assignments(std::ostream& out, const std::vector<SenseAssignment>& assignments) {
  for (const SenseAssignment& a : assignments) {
    out << a.occurrence.unit_id << '\t' << a.occurrence.token_index << '\t'
        << a.occurrence.lemma << '\t' << a.occurrence.pos << '\t'
        << (a.sense ? a.sense->str() : std::string("-")) << '\t' << to_string(a.method) << '\n';
  }
}

std::vector<AssignmentRecord> parse_assignments(std::istream& in, const std::string& source_name) {
  std::vector<AssignmentRecord> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty() || line.front() == '#') continue;
    const auto cols = split(line, '\t');
    if (cols.size() != 6) throw ParseError(source_name, line_no, "expected 6 tab-separated fields");
    AssignmentRecord r;
    r.unit_id = std::string(cols[0]);
    auto [ptr, ec] = std::from_chars(cols[1].data(), cols[1].data() + cols[1].size(), r.token_index);
    if (cols[1].empty() || ec != std::errc() || ptr != cols[1].data() + cols[1].size()) {
      throw ParseError(source_name, line_no, "bad token index");
    }
    r.lemma = std::string(cols[2]);
    r.pos = std::string(cols[3]);
    if (cols[4] != "-") r.sense = IliCode(std::string(cols[4]));
    const auto method = parse_method(cols[5]);
    if (!method) throw ParseError(source_name, line_no, "unknown method '" + std::string(cols[5]) + "'");
    r.method = *method;
    if (r.sense.has_value() == (r.method == Method::kUnassigned)) {
      throw ParseError(source_name, line_no, "sense must be '-' exactly when Unassigned");
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace parawsd
