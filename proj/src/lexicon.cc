#include "parawsd/lexicon.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <set>

#include "parawsd/errors.h"
#include "parawsd/text.h"

namespace parawsd {

namespace {

const std::map<std::string, double>& no_equivalents() {
  static const std::map<std::string, double> kEmpty;
  return kEmpty;
}

long double xlogx(long double x) { return x > 0 ? x * std::log(x) : 0.0L; }

std::string format_score(double score) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", score);
  return buf;
}

}  // namespace

bool TranslationLexicon::add(const TranslationPair& pair) {
  auto& slot = entries_[{pair.target_lemma, pair.target_pos, pair.source_language}];
  if (!slot.emplace(pair.source_lemma, pair.score).second) return false;
  ++per_language_[pair.source_language];
  ++size_;
  return true;
}

const std::map<std::string, double>& TranslationLexicon::equivalents(
    const std::string& target_lemma, const std::string& target_pos,
    const std::string& language) const {
  auto it = entries_.find({target_lemma, target_pos, language});
  return it == entries_.end() ? no_equivalents() : it->second;
}

std::optional<double> TranslationLexicon::score(const std::string& target_lemma,
                                                const std::string& target_pos,
                                                const std::string& language,
                                                const std::string& source_lemma) const {
  const auto& eq = equivalents(target_lemma, target_pos, language);
  auto it = eq.find(source_lemma);
  if (it == eq.end()) return std::nullopt;
  return it->second;
}

std::vector<std::string> TranslationLexicon::languages() const {
  std::vector<std::string> out;
  for (const auto& [lang, n] : per_language_) out.push_back(lang);
  return out;
}

bool TranslationLexicon::has_language(const std::string& language) const {
  return per_language_.contains(language);
}

std::vector<TranslationPair> TranslationLexicon::pairs() const {
  std::vector<TranslationPair> out;
  out.reserve(size_);
  for (const auto& [key, eq] : entries_) {
    const auto& [lemma, pos, lang] = key;
    std::vector<std::pair<std::string, double>> sorted(eq.begin(), eq.end());
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const auto& x, const auto& y) { return x.second > y.second; });
    for (const auto& [src, score] : sorted) out.push_back({lemma, pos, src, lang, score});
  }
  return out;
}

void TranslationLexicon::merge(const TranslationLexicon& other) {
  for (const auto& p : other.pairs()) add(p);
}

double log_likelihood_ratio(const ContingencyTable& t) {
  if (t.a < 0 || t.b < 0 || t.c < 0 || t.d < 0) {
    throw std::invalid_argument("negative contingency count");
  }
  const long double a = t.a, b = t.b, c = t.c, d = t.d;
  const long double g2 = 2.0L * (xlogx(a) + xlogx(b) + xlogx(c) + xlogx(d) - xlogx(a + b) -
                                 xlogx(a + c) - xlogx(b + d) - xlogx(c + d) +
                                 xlogx(a + b + c + d));
  return g2 > 0 ? static_cast<double>(g2) : 0.0;
}

TranslationLexicon extract_lexicon(const Corpus& corpus, const std::string& source_language,
                                   const ExtractionSettings& settings) {
  if (source_language == corpus.target_language() || !corpus.has_language(source_language)) {
    throw ConfigError("source language '" + source_language + "' not in corpus");
  }
  if (settings.min_cooccurrence < 1) throw ConfigError("min_cooccurrence must be positive");

  using Type = std::pair<std::string, std::string>;  // lemma, pos
  std::map<Type, long long> target_units, source_units;
  std::map<std::pair<Type, std::string>, long long> joint;  // (target type, source lemma)
  long long n = 0;

  for (const TranslationUnit& u : corpus.units()) {
    const auto* tsent = u.sentence(corpus.target_language());
    const auto* ssent = u.sentence(source_language);
    if (tsent == nullptr || ssent == nullptr) continue;
    ++n;
    std::set<Type> ttypes, stypes;
    for (const Token& t : *tsent) {
      if (is_wordnet_pos(t.pos)) ttypes.insert({t.lemma, t.pos});
    }
    for (const Token& t : *ssent) {
      if (is_wordnet_pos(t.pos)) stypes.insert({t.lemma, t.pos});
    }
    for (const auto& t : ttypes) ++target_units[t];
    for (const auto& s : stypes) ++source_units[s];
    for (const auto& t : ttypes) {
      for (const auto& s : stypes) {
        if (s.second == t.second) ++joint[{t, s.first}];
      }
    }
  }

  TranslationLexicon lexicon;
  for (const auto& [key, a] : joint) {
    if (a < settings.min_cooccurrence) continue;
    const auto& [ttype, src] = key;
    ContingencyTable table;
    table.a = a;
    table.b = target_units[ttype] - a;
    table.c = source_units[{src, ttype.second}] - a;
    table.d = n - table.a - table.b - table.c;
    if (table.a * table.d <= table.b * table.c) continue;  // not positively associated
    const double g2 = log_likelihood_ratio(table);
    if (g2 < settings.min_score) continue;
    lexicon.add({ttype.first, ttype.second, src, source_language, g2});
  }
  return lexicon;
}

TranslationLexicon parse_lexicon(std::istream& in, std::vector<std::string>* warnings,
                                 const std::string& source_name) {
  TranslationLexicon lexicon;
  std::string line;
  std::size_t line_no = 0;
  auto warn = [&](const std::string& msg) {
    if (warnings) warnings->push_back(source_name + ":" + std::to_string(line_no) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty() || line.front() == '#') continue;
    const auto cols = split(line, '\t');
    if (cols.size() != 5) throw ParseError(source_name, line_no, "expected 5 tab-separated fields");
    for (const auto& c : cols) {
      if (c.empty()) throw ParseError(source_name, line_no, "empty field");
    }
    std::string pos(cols[1]);
    if (const std::size_t colon = pos.find(':'); colon != std::string::npos) {
      const std::string tpos = pos.substr(0, colon), spos = pos.substr(colon + 1);
      if (tpos != spos) {
        warn("skipping cross-POS pair " + std::string(cols[0]) + "/" + tpos + " -> " +
             std::string(cols[3]) + "/" + spos);
        continue;
      }
      pos = tpos;
    }
    const std::string score_text(cols[4]);
    char* end = nullptr;
    const double score = std::strtod(score_text.c_str(), &end);
    if (end != score_text.c_str() + score_text.size() || !std::isfinite(score) || score < 0) {
      throw ParseError(source_name, line_no, "bad score '" + score_text + "'");
    }
    TranslationPair p{to_lower(cols[0]), pos, to_lower(cols[3]), std::string(cols[2]), score};
    if (!lexicon.add(p)) warn("duplicate pair " + p.target_lemma + " -> " + p.source_lemma);
  }
  return lexicon;
}

TranslationLexicon import_lexicon(const std::filesystem::path& path,
                                  std::vector<std::string>* warnings) {
  std::ifstream in(path);
  if (!in) throw ConfigError("lexicon not found: " + path.string());
  return parse_lexicon(in, warnings, path.string());
}

void write_lexicon(std::ostream& out, const TranslationLexicon& lexicon) {
  for (const TranslationPair& p : lexicon.pairs()) {
    out << p.target_lemma << '\t' << p.target_pos << '\t' << p.source_language << '\t'
        << p.source_lemma << '\t' << format_score(p.score) << '\n';
  }
}

std::vector<std::pair<int, std::optional<std::string>>> align_sentence(
    const TranslationUnit& unit, const std::string& target_language, const std::string& lemma,
    const std::string& pos, const std::string& source_language,
    const TranslationLexicon& lexicon) {
  std::vector<std::pair<int, std::optional<std::string>>> out;
  const auto* tsent = unit.sentence(target_language);
  if (tsent == nullptr) return out;
  for (const Token& t : *tsent) {
    if (t.lemma == lemma && t.pos == pos) out.emplace_back(t.index, std::nullopt);
  }
  const auto* ssent = unit.sentence(source_language);
  if (ssent == nullptr || out.empty()) return out;

  const auto& eq = lexicon.equivalents(lemma, pos, source_language);
  struct Candidate {
    double score;
    std::size_t position;
  };
  std::vector<Candidate> candidates;
  for (std::size_t i = 0; i < ssent->size(); ++i) {
    const Token& s = (*ssent)[i];
    if (s.pos != pos) continue;
    if (auto it = eq.find(s.lemma); it != eq.end()) candidates.push_back({it->second, i});
  }
  std::sort(candidates.begin(), candidates.end(), [](const Candidate& x, const Candidate& y) {
    return x.score != y.score ? x.score > y.score : x.position < y.position;
  });
  std::size_t next = 0;
  for (auto& slot : out) {
    if (next == candidates.size()) break;
    slot.second = (*ssent)[candidates[next++].position].lemma;
  }
  return out;
}

std::optional<std::string> align_occurrence(const TranslationUnit& unit, const OccurrenceRef& occ,
                                            const std::string& source_language,
                                            const TranslationLexicon& lexicon) {
  for (auto& [index, lemma] :
       align_sentence(unit, occ.language, occ.lemma, occ.pos, source_language, lexicon)) {
    if (index == occ.token_index) return lemma;
  }
  return std::nullopt;
}

std::optional<std::size_t> DelList::position(const std::string& source_lemma) const {
  auto it = std::find(entries.begin(), entries.end(), source_lemma);
  if (it == entries.end()) return std::nullopt;
  return static_cast<std::size_t>(it - entries.begin());
}

DelList build_del(const TranslationLexicon& lexicon, const std::string& target_lemma,
                  const std::string& target_pos, const std::string& source_language) {
  DelList del{target_lemma, source_language, {}};
  std::vector<std::pair<std::string, double>> eq;
  for (const auto& e : lexicon.equivalents(target_lemma, target_pos, source_language)) {
    eq.push_back(e);
  }
  std::sort(eq.begin(), eq.end(), [](const auto& x, const auto& y) {
    return x.second != y.second ? x.second > y.second : x.first < y.first;
  });
  for (auto& [lemma, score] : eq) del.entries.push_back(lemma);
  return del;
}

}  // namespace parawsd
