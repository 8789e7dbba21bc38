#include "parawsd/pipeline.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <exception>
#include <fstream>
#include <functional>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

#include "parawsd/errors.h"

namespace parawsd {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

fs::path resolve(const fs::path& base, const std::string& p) {
  const fs::path path(p);
  return path.is_absolute() || base.empty() ? path : base / path;
}

std::string require_string(const json& j, const std::string& key) {
  if (!j.is_string()) throw ConfigError("config key '" + key + "' must be a string");
  return j.get<std::string>();
}

bool require_bool(const json& j, const std::string& key) {
  if (!j.is_boolean()) throw ConfigError("config key '" + key + "' must be true or false");
  return j.get<bool>();
}

double require_number(const json& j, const std::string& key) {
  if (!j.is_number()) throw ConfigError("config key '" + key + "' must be a number");
  return j.get<double>();
}

std::map<std::string, fs::path> path_map(const json& j, const std::string& key,
                                         const fs::path& base) {
  if (!j.is_object()) throw ConfigError("config key '" + key + "' must map languages to paths");
  std::map<std::string, fs::path> out;
  for (const auto& [lang, p] : j.items()) out[lang] = resolve(base, require_string(p, key));
  return out;
}

void write_output(const std::optional<fs::path>& path, std::ostream& fallback,
                  const std::function<void(std::ostream&)>& body) {
  if (!path) {
    body(fallback);
    return;
  }
  if (path->has_parent_path()) fs::create_directories(path->parent_path());
  std::ofstream f(*path, std::ios::binary);
  if (!f) throw ConfigError("cannot write " + path->string());
  body(f);
  if (!f) throw ConfigError("error writing " + path->string());
}

void write_file(const fs::path& path, const std::function<void(std::ostream&)>& body) {
  std::ostringstream sink;
  write_output(path, sink, body);
}

}  // namespace

PipelineConfig PipelineConfig::from_json(const std::string& text, const fs::path& base_dir) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");

  PipelineConfig c;
  for (const auto& [key, v] : j.items()) {
    if (key == "corpus") {
      c.corpus = resolve(base_dir, require_string(v, key));
    } else if (key == "target_language") {
      c.target_language = require_string(v, key);
    } else if (key == "source_languages") {
      if (!v.is_array()) throw ConfigError("source_languages must be a list");
      for (const auto& l : v) c.source_languages.push_back(require_string(l, key));
    } else if (key == "wordnets") {
      c.wordnets = path_map(v, key, base_dir);
    } else if (key == "lexicons") {
      c.lexicons = path_map(v, key, base_dir);
    } else if (key == "extraction") {
      if (!v.is_object()) throw ConfigError("extraction must be an object");
      for (const auto& [k, x] : v.items()) {
        if (k == "min_score") {
          c.extraction.min_score = require_number(x, k);
        } else if (k == "min_cooccurrence") {
          if (!x.is_number_integer()) throw ConfigError("min_cooccurrence must be an integer");
          c.extraction.min_cooccurrence = x.get<int>();
        } else {
          throw ConfigError("unknown extraction key '" + k + "'");
        }
      }
    } else if (key == "target_words") {
      if (!v.is_array()) throw ConfigError("target_words must be a list");
      for (const auto& w : v) c.target_words.push_back(TargetWord::parse(require_string(w, key)));
    } else if (key == "sim_threshold") {
      if (v.is_string()) {
        c.threshold = SimilarityThreshold::parse(v.get<std::string>());
      } else if (v.is_number()) {
        c.threshold = SimilarityThreshold::parse(v.dump());
      } else {
        throw ConfigError("sim_threshold must be a number or \"p/q\"");
      }
    } else if (key == "alpha") {
      c.alpha = require_number(v, key);
    } else if (key == "cluster") {
      c.cluster = require_bool(v, key);
    } else if (key == "sh") {
      c.sh = require_bool(v, key);
    } else if (key == "cluster_modify") {
      c.cluster_modify = require_bool(v, key);
    } else if (key == "threads") {
      if (!v.is_number_unsigned()) throw ConfigError("threads must be a non-negative integer");
      c.threads = v.get<unsigned>();
    } else if (key == "outputs") {
      if (!v.is_object()) throw ConfigError("outputs must be an object");
      for (const auto& [k, x] : v.items()) {
        const fs::path p = resolve(base_dir, require_string(x, k));
        if (k == "lexicon") c.outputs.lexicon = p;
        else if (k == "assignments") c.outputs.assignments = p;
        else if (k == "trace") c.outputs.trace = p;
        else if (k == "conflicts") c.outputs.conflicts = p;
        else if (k == "report") c.outputs.report = p;
        else if (k == "anomalies") c.outputs.anomalies = p;
        else throw ConfigError("unknown output '" + k + "'");
      }
    } else {
      throw ConfigError("unknown config key '" + key + "'");
    }
  }
  return c;
}

PipelineConfig PipelineConfig::load(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config not found: " + path.string());
  std::stringstream text;
  text << in.rdbuf();
  return from_json(text.str(), path.parent_path());
}

void PipelineConfig::validate(bool need_wordnet) const {
  if (corpus.empty()) throw ConfigError("no corpus given");
  if (target_language.empty()) throw ConfigError("no target language given");
  if (!(alpha > 0.0)) throw ConfigError("alpha must be positive");
  if (extraction.min_cooccurrence < 1) throw ConfigError("min_cooccurrence must be positive");
  if (need_wordnet && !wordnets.contains(target_language)) {
    throw ConfigError("no wordnet configured for target language " + target_language);
  }
}

Resources Workspace::resources(const std::string& target_language) const {
  Resources r;
  for (const auto& [lang, wn] : wordnets) {
    if (lang == target_language) {
      r.target_wordnet = &wn;
    } else {
      r.source_wordnets[lang] = &wn;
    }
  }
  r.lexicon = &lexicon;
  return r;
}

TranslationLexicon run_extract(const PipelineConfig& config, const Corpus& corpus) {
  TranslationLexicon lexicon;
  for (const auto& lang : corpus.source_languages()) {
    lexicon.merge(extract_lexicon(corpus, lang, config.extraction));
  }
  return lexicon;
}

Workspace load_workspace(const PipelineConfig& config, bool need_wordnets) {
  Workspace ws;
  ws.corpus = std::make_unique<Corpus>(
      load_corpus(config.corpus, config.target_language, config.source_languages));
  if (need_wordnets) {
    for (const auto& [lang, path] : config.wordnets) {
      ws.wordnets.emplace(lang, load_wordnet(path, lang));
    }
  }
  for (const auto& [lang, path] : config.lexicons) {
    if (!ws.corpus->has_language(lang) || lang == config.target_language) {
      ws.warnings.push_back("lexicon for " + lang + " ignored: language not a corpus source");
      continue;
    }
    ws.lexicon.merge(import_lexicon(path, &ws.warnings));
  }
  for (const auto& lang : ws.corpus->source_languages()) {
    if (config.lexicons.contains(lang)) continue;
    ws.lexicon.merge(extract_lexicon(*ws.corpus, lang, config.extraction));
  }
  return ws;
}

std::vector<TargetWord> default_targets(const Corpus& corpus, const WordnetGraph& target_wn,
                                        std::size_t min_senses) {
  std::vector<TargetWord> out;
  for (const auto& [key, n] : target_frequencies(corpus)) {
    if (target_wn.senses(key.first, key.second).size() >= min_senses) {
      out.push_back({key.first, key.second});
    }
  }
  return out;
}

namespace {

struct WordOutcome {
  std::vector<SenseAssignment> assignments;
  std::vector<JoinRecord> trace;
  std::vector<ClusterConflict> conflicts;
};

WordOutcome process_word(const PipelineConfig& config, const Corpus& corpus,
                         const Resources& resources, const TargetWord& word) {
  const WsdSettings settings{config.threshold, kDefaultMaxLinks};
  WordDisambiguation wd = disambiguate_word(corpus, word, resources, settings);
  WordOutcome out;
  if (!config.cluster || wd.eq.rows.empty() || wd.assignments.empty()) {
    out.assignments = std::move(wd.assignments);
    return out;
  }
  std::vector<DelList> dels;
  for (const auto& lang : wd.eq.rows) {
    dels.push_back(build_del(*resources.lexicon, word.lemma, word.pos, lang));
  }
  const VectorSet vectors = build_vectors(wd.eq, dels);
  std::vector<ClusterLabel> labels;
  for (const auto& a : wd.assignments) labels.push_back(seed_label(a));
  ClusterConfig cc;
  cc.alpha = config.alpha;
  Agglomeration agg = agglomerate(vectors, labels, cc);
  BackoffResult backoff =
      backoff_assign(agg.clusters, std::move(wd.assignments), config.cluster_modify);
  out.assignments = std::move(backoff.assignments);
  out.trace = std::move(agg.trace);
  out.conflicts = std::move(backoff.conflicts);
  return out;
}

}  // namespace

WsdRun run_wsd(const PipelineConfig& config, const Workspace& ws) {
  config.validate(true);
  const Resources resources = ws.resources(config.target_language);
  if (resources.target_wordnet == nullptr) {
    throw ConfigError("no wordnet loaded for target language " + config.target_language);
  }
  const Corpus& corpus = *ws.corpus;

  WsdRun run;
  if (config.target_words.empty()) {
    run.targets = default_targets(corpus, *resources.target_wordnet);
  } else {
    std::set<TargetWord> seen;
    for (const auto& w : config.target_words) {
      if (seen.insert(w).second) run.targets.push_back(w);
    }
  }

  const std::size_t n = run.targets.size();
  std::vector<WordOutcome> outcomes(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < n;) {
      try {
        outcomes[i] = process_word(config, corpus, resources, run.targets[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::size_t threads = config.threads != 0 ? config.threads : std::thread::hardware_concurrency();
  threads = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(n, 1));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  for (auto& o : outcomes) {
    for (auto& a : o.assignments) run.assignments.push_back(std::move(a));
    for (auto& c : o.conflicts) run.conflicts.push_back(std::move(c));
    run.traces.push_back(std::move(o.trace));
  }
  std::stable_sort(run.assignments.begin(), run.assignments.end(),
                   [](const SenseAssignment& x, const SenseAssignment& y) {
                     return corpus_order(x.occurrence, y.occurrence);
                   });
  std::stable_sort(run.conflicts.begin(), run.conflicts.end(),
                   [](const ClusterConflict& x, const ClusterConflict& y) {
                     return corpus_order(x.occurrence, y.occurrence);
                   });
  run.coverage = coverage_report(run.assignments, corpus);
  if (config.sh) {
    run.assignments =
        apply_sh(std::move(run.assignments), *resources.target_wordnet, &run.sh_flagged);
  }
  return run;
}

namespace {

bool has_gold(const Corpus& corpus) {
  for (const auto& u : corpus.units()) {
    const auto* sent = u.sentence(corpus.target_language());
    for (const Token& t : *sent) {
      if (t.gold) return true;
    }
  }
  return false;
}

void print_warnings(const std::vector<std::string>& warnings, std::ostream& err) {
  for (const auto& w : warnings) err << "warning: " << w << '\n';
}

struct CliOptions {
  std::string config;
  std::string corpus;
  std::string target_lang;
  bool no_cluster = false;
  bool no_sh = false;
  std::optional<double> alpha;
  std::string sim_threshold;
  std::string cluster_trace;
  std::string out;
  std::string assignments;
};

PipelineConfig make_config(const CliOptions& o) {
  PipelineConfig c = o.config.empty() ? PipelineConfig{} : PipelineConfig::load(o.config);
  if (!o.corpus.empty()) c.corpus = o.corpus;
  if (!o.target_lang.empty()) c.target_language = o.target_lang;
  if (o.no_cluster) c.cluster = false;
  if (o.no_sh) c.sh = false;
  if (o.alpha) c.alpha = *o.alpha;
  if (!o.sim_threshold.empty()) c.threshold = SimilarityThreshold::parse(o.sim_threshold);
  if (!o.cluster_trace.empty()) c.outputs.trace = fs::path(o.cluster_trace);
  return c;
}

std::optional<fs::path> out_path(const CliOptions& o, const std::optional<fs::path>& configured) {
  if (!o.out.empty()) return fs::path(o.out);
  return configured;
}

void cmd_extract_lexicon(const CliOptions& o, std::ostream& out, std::ostream& err) {
  const PipelineConfig config = make_config(o);
  config.validate(false);
  const Corpus corpus =
      load_corpus(config.corpus, config.target_language, config.source_languages);
  const TranslationLexicon lexicon = run_extract(config, corpus);
  if (lexicon.empty()) err << "warning: no translation pair reached the extraction thresholds\n";
  write_output(out_path(o, config.outputs.lexicon), out,
               [&](std::ostream& s) { write_lexicon(s, lexicon); });
}

void cmd_wsd(const CliOptions& o, std::ostream& out, std::ostream& err) {
  const PipelineConfig config = make_config(o);
  config.validate(true);
  const Workspace ws = load_workspace(config, true);
  print_warnings(ws.warnings, err);
  const WsdRun run = run_wsd(config, ws);
  for (const auto& occ : run.sh_flagged) {
    err << "warning: " << occ.unit_id << ':' << occ.token_index << ' ' << occ.lemma
        << " is not in the target wordnet; left unassigned\n";
  }
  write_output(out_path(o, config.outputs.assignments), out,
               [&](std::ostream& s) { write_assignments(s, run.assignments); });
  if (config.outputs.trace) {
    write_file(*config.outputs.trace, [&](std::ostream& s) {
      for (std::size_t i = 0; i < run.targets.size(); ++i) {
        write_trace(s, run.targets[i], run.traces[i]);
      }
    });
  }
  if (config.outputs.conflicts) {
    write_file(*config.outputs.conflicts,
               [&](std::ostream& s) { write_conflicts(s, run.conflicts); });
  }
  if (config.outputs.report) {
    if (!has_gold(*ws.corpus)) {
      err << "warning: corpus has no gold annotation; no report written\n";
    } else {
      std::vector<AssignmentRecord> records;
      for (const auto& a : run.assignments) records.push_back(to_record(a));
      write_file(*config.outputs.report,
                 [&](std::ostream& s) { write_report(s, records, *ws.corpus, &run.coverage); });
    }
  }
}

void cmd_eval(const CliOptions& o, std::ostream& out, std::ostream& err) {
  const PipelineConfig config = make_config(o);
  config.validate(false);
  std::ifstream in(o.assignments);
  if (!in) throw ConfigError("assignment file not found: " + o.assignments);
  const auto records = parse_assignments(in, o.assignments);

  std::optional<CoverageReport> coverage;
  std::unique_ptr<Corpus> corpus;
  if (config.wordnets.contains(config.target_language)) {
    // Rerun the wordnet step for the unassigned occurrences to explain them.
    Workspace ws = load_workspace(config, true);
    print_warnings(ws.warnings, err);
    const Resources resources = ws.resources(config.target_language);
    std::set<std::pair<std::string, int>> unassigned;
    std::set<TargetWord> words;
    for (const auto& r : records) {
      if (r.method != Method::kUnassigned) continue;
      unassigned.insert({r.unit_id, r.token_index});
      words.insert({r.lemma, r.pos});
    }
    std::vector<SenseAssignment> residual;
    for (const TargetWord& w : words) {
      auto wd = disambiguate_word(*ws.corpus, w, resources, {config.threshold, kDefaultMaxLinks});
      for (auto& a : wd.assignments) {
        if (!unassigned.contains({a.occurrence.unit_id, a.occurrence.token_index})) continue;
        a.sense.reset();
        a.method = Method::kUnassigned;
        residual.push_back(std::move(a));
      }
    }
    coverage = coverage_report(residual, *ws.corpus);
    corpus = std::move(ws.corpus);
  } else {
    corpus = std::make_unique<Corpus>(
        load_corpus(config.corpus, config.target_language, config.source_languages));
  }
  score(records, *corpus);  // validates records and gold before anything is written
  write_output(out_path(o, config.outputs.report), out, [&](std::ostream& s) {
    write_report(s, records, *corpus, coverage ? &*coverage : nullptr);
  });
}

void cmd_wn_validate(const CliOptions& o, std::ostream& out, std::ostream& err) {
  const PipelineConfig config = make_config(o);
  config.validate(true);
  const Workspace ws = load_workspace(config, true);
  print_warnings(ws.warnings, err);
  const Resources resources = ws.resources(config.target_language);
  if (resources.source_wordnets.empty()) throw ConfigError("no source wordnet configured");
  const auto targets = config.target_words.empty()
                           ? default_targets(*ws.corpus, *resources.target_wordnet, 1)
                           : config.target_words;
  const auto anomalies =
      detect_anomalies(*ws.corpus, targets, resources, {config.threshold, kDefaultMaxLinks});
  write_output(out_path(o, config.outputs.anomalies), out,
               [&](std::ostream& s) { write_anomalies(s, anomalies); });
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Parallel-corpus word sense disambiguation over aligned wordnets", "parawsd"};
  app.require_subcommand(1);
  CliOptions o;
  app.add_option("--config", o.config, "JSON configuration file");
  app.add_option("--corpus", o.corpus, "Corpus file (overrides the config)");
  app.add_option("--target-lang", o.target_lang, "Target language code");
  app.add_flag("--no-cluster", o.no_cluster, "Disable the clustering back-off");
  app.add_flag("--no-sh", o.no_sh, "Disable the most-frequent-sense heuristic");
  app.add_option("--alpha", o.alpha, "Clustering stop threshold");
  app.add_option("--sim-threshold", o.sim_threshold, "Similarity threshold, p/q or decimal");
  app.add_option("--cluster-trace", o.cluster_trace, "Write the join trace here");
  app.add_option("--out", o.out, "Main output file (default: stdout)");

  auto* extract = app.add_subcommand("extract-lexicon", "Extract translation pairs from the corpus");
  auto* wsd = app.add_subcommand("wsd", "Disambiguate the target words");
  auto* eval = app.add_subcommand("eval", "Score an assignment file against the gold senses");
  eval->add_option("assignments", o.assignments, "Assignment file")->required();
  auto* validate = app.add_subcommand("wn-validate", "Report likely interlingual alignment errors");
  for (auto* sub : {extract, wsd, eval, validate}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 1;
  }

  try {
    if (*extract) cmd_extract_lexicon(o, out, err);
    else if (*wsd) cmd_wsd(o, out, err);
    else if (*eval) cmd_eval(o, out, err);
    else cmd_wn_validate(o, out, err);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

}  // namespace parawsd
