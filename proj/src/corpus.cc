#include "parawsd/corpus.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <ostream>
#include <set>
#include <tuple>

#include "parawsd/errors.h"
#include "parawsd/text.h"

namespace parawsd {

namespace {

bool is_language_code(std::string_view code) {
  return code.size() >= 2 && code.size() <= 3 &&
         std::all_of(code.begin(), code.end(), [](char c) { return c >= 'a' && c <= 'z'; });
}

}  // namespace

const std::vector<Token>* TranslationUnit::sentence(const std::string& language) const {
  auto it = sentences.find(language);
  return it == sentences.end() ? nullptr : &it->second;
}

bool corpus_order(const OccurrenceRef& a, const OccurrenceRef& b) {
  return std::tie(a.unit_index, a.token_index, a.lemma, a.pos) <
         std::tie(b.unit_index, b.token_index, b.lemma, b.pos);
}

Corpus::Corpus(std::string target_language, std::vector<std::string> source_languages,
               std::vector<TranslationUnit> units)
    : target_language_(std::move(target_language)),
      source_languages_(std::move(source_languages)),
      units_(std::move(units)) {
  if (source_languages_.empty()) throw ValidationError("corpus has no source languages");
  std::set<std::string> seen{target_language_};
  for (const auto& lang : source_languages_) {
    if (!seen.insert(lang).second) {
      throw ValidationError("source language '" + lang +
                            "' repeated or equal to the target language");
    }
  }
  for (std::size_t i = 0; i < units_.size(); ++i) {
    const TranslationUnit& u = units_[i];
    if (!by_id_.emplace(u.id, i).second) throw ValidationError("duplicate unit id " + u.id);
    if (!u.sentences.contains(target_language_)) {
      throw ValidationError("unit " + u.id + " has no " + target_language_ + " sentence");
    }
    for (const auto& [lang, tokens] : u.sentences) {
      if (!seen.contains(lang)) {
        throw ValidationError("unit " + u.id + ": unknown language code " + lang);
      }
      for (std::size_t t = 0; t < tokens.size(); ++t) {
        const Token& tok = tokens[t];
        if (tok.index != static_cast<int>(t) || tok.lemma.empty() || tok.surface.empty()) {
          throw ValidationError("unit " + u.id + " (" + lang + "): malformed token " +
                                std::to_string(t));
        }
        if (tok.gold && lang != target_language_) {
          throw ValidationError("unit " + u.id + ": gold sense on a " + lang + " token");
        }
      }
    }
  }
}

const TranslationUnit* Corpus::find_unit(const std::string& id) const {
  auto it = by_id_.find(id);
  return it == by_id_.end() ? nullptr : &units_[it->second];
}

std::optional<std::size_t> Corpus::unit_index(const std::string& id) const {
  auto it = by_id_.find(id);
  if (it == by_id_.end()) return std::nullopt;
  return it->second;
}

const Token* Corpus::token(const OccurrenceRef& occ) const {
  const TranslationUnit* u = find_unit(occ.unit_id);
  if (u == nullptr) return nullptr;
  const auto* sent = u->sentence(occ.language);
  if (sent == nullptr || occ.token_index < 0 ||
      occ.token_index >= static_cast<int>(sent->size())) {
    return nullptr;
  }
  return &(*sent)[static_cast<std::size_t>(occ.token_index)];
}

bool Corpus::has_language(const std::string& language) const {
  return language == target_language_ ||
         std::find(source_languages_.begin(), source_languages_.end(), language) !=
             source_languages_.end();
}

Corpus parse_corpus(std::istream& in, const std::string& target_language,
                    const std::vector<std::string>& source_languages,
                    const std::string& source_name) {
  const bool declared = !source_languages.empty();
  std::vector<std::string> sources = source_languages;
  std::vector<TranslationUnit> units;
  std::set<std::string> finished_units;
  std::set<std::string> finished_langs;  // languages already closed in the current unit
  std::string current_lang;

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty() || line.front() == '#') continue;

    const auto cols = split(line, '\t');
    if (cols.size() != 6 && cols.size() != 7) {
      throw ParseError(source_name, line_no, "expected 6 or 7 tab-separated fields");
    }
    const std::string unit_id(cols[0]);
    const std::string lang(cols[1]);
    if (unit_id.empty()) throw ParseError(source_name, line_no, "empty unit id");
    if (!is_language_code(lang)) {
      throw ParseError(source_name, line_no, "unknown language code '" + lang + "'");
    }
    if (lang != target_language &&
        std::find(sources.begin(), sources.end(), lang) == sources.end()) {
      if (declared) throw ParseError(source_name, line_no, "unknown language code '" + lang + "'");
      sources.push_back(lang);
    }

    if (units.empty() || units.back().id != unit_id) {
      if (!units.empty()) finished_units.insert(units.back().id);
      if (finished_units.contains(unit_id)) {
        throw ValidationError(source_name + ":" + std::to_string(line_no) +
                              ": duplicate unit id " + unit_id);
      }
      units.push_back({unit_id, {}});
      finished_langs.clear();
      current_lang.clear();
    }
    TranslationUnit& unit = units.back();
    if (lang != current_lang) {
      if (!current_lang.empty()) finished_langs.insert(current_lang);
      if (finished_langs.contains(lang)) {
        throw ValidationError(source_name + ":" + std::to_string(line_no) + ": unit " + unit_id +
                              " has more than one " + lang + " sentence");
      }
      current_lang = lang;
    }

    Token tok;
    const std::string_view idx = cols[2];
    auto [ptr, ec] = std::from_chars(idx.data(), idx.data() + idx.size(), tok.index);
    if (idx.empty() || ec != std::errc() || ptr != idx.data() + idx.size()) {
      throw ParseError(source_name, line_no, "bad token index '" + std::string(idx) + "'");
    }
    auto& sentence = unit.sentences[lang];
    if (tok.index != static_cast<int>(sentence.size())) {
      throw ParseError(source_name, line_no,
                       "token index " + std::to_string(tok.index) + " out of sequence");
    }
    tok.surface = std::string(cols[3]);
    tok.lemma = to_lower(cols[4]);
    tok.pos = std::string(cols[5]);
    if (tok.surface.empty() || tok.lemma.empty() || tok.pos.empty()) {
      throw ParseError(source_name, line_no, "empty surface, lemma or pos");
    }
    if (cols.size() == 7 && !cols[6].empty()) {
      if (lang != target_language) {
        throw ParseError(source_name, line_no, "gold sense on a non-target token");
      }
      tok.gold = IliCode(std::string(cols[6]));
    }
    sentence.push_back(std::move(tok));
  }
  try {
    return Corpus(target_language, std::move(sources), std::move(units));
  } catch (const ValidationError& e) {
    throw ValidationError(source_name + ": " + e.what());
  }
}

Corpus load_corpus(const std::filesystem::path& path, const std::string& target_language,
                   const std::vector<std::string>& source_languages) {
  std::ifstream in(path);
  if (!in) throw ConfigError("corpus not found: " + path.string());
  return parse_corpus(in, target_language, source_languages, path.string());
}

void write_corpus(std::ostream& out, const Corpus& corpus) {
  std::vector<std::string> langs{corpus.target_language()};
  langs.insert(langs.end(), corpus.source_languages().begin(), corpus.source_languages().end());
  bool first = true;
  for (const TranslationUnit& u : corpus.units()) {
    if (!first) out << '\n';
    first = false;
    for (const auto& lang : langs) {
      const auto* sent = u.sentence(lang);
      if (sent == nullptr) continue;
      for (const Token& t : *sent) {
        out << u.id << '\t' << lang << '\t' << t.index << '\t' << t.surface << '\t' << t.lemma
            << '\t' << t.pos;
        if (t.gold) out << '\t' << t.gold->str();
        out << '\n';
      }
    }
  }
}

std::vector<OccurrenceRef> occurrences(const Corpus& corpus, const std::string& lemma,
                                       const std::string& pos) {
  std::vector<OccurrenceRef> out;
  const auto& units = corpus.units();
  for (std::size_t u = 0; u < units.size(); ++u) {
    const auto* sent = units[u].sentence(corpus.target_language());
    if (sent == nullptr) continue;
    for (const Token& t : *sent) {
      if (t.lemma == lemma && t.pos == pos) {
        out.push_back({units[u].id, u, corpus.target_language(), t.index, t.lemma, t.pos});
      }
    }
  }
  return out;
}

std::map<std::pair<std::string, std::string>, int> target_frequencies(const Corpus& corpus) {
  std::map<std::pair<std::string, std::string>, int> freq;
  for (const TranslationUnit& u : corpus.units()) {
    if (const auto* sent = u.sentence(corpus.target_language())) {
      for (const Token& t : *sent) ++freq[{t.lemma, t.pos}];
    }
  }
  return freq;
}

}  // namespace parawsd
