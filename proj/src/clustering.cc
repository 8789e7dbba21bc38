#include "parawsd/clustering.h"

#include <algorithm>
#include <ostream>
#include <tuple>

#include "parawsd/errors.h"
#include "parawsd/text.h"

namespace parawsd {

std::size_t VectorLayout::length() const {
  std::size_t n = 0;
  for (const auto& b : blocks) n += b.entries.size();
  return n;
}

std::size_t VectorLayout::offset(std::size_t block) const {
  std::size_t n = 0;
  for (std::size_t i = 0; i < block; ++i) n += blocks[i].entries.size();
  return n;
}

VectorSet build_vectors(const EqMatrix& eq, const std::vector<DelList>& dels) {
  VectorSet out;
  for (const auto& lang : eq.rows) {
    auto it = std::find_if(dels.begin(), dels.end(),
                           [&](const DelList& d) { return d.source_language == lang; });
    if (it == dels.end()) throw ConsistencyError("no DEL list for language " + lang);
    out.layout.blocks.push_back(*it);
  }
  const std::size_t length = out.layout.length();
  for (std::size_t c = 0; c < eq.columns.size(); ++c) {
    OccurrenceVector v{eq.columns[c], std::vector<std::uint8_t>(length, 0)};
    std::size_t offset = 0;
    for (std::size_t r = 0; r < eq.rows.size(); ++r) {
      const DelList& del = out.layout.blocks[r];
      if (const auto& equivalent = eq.at(r, c)) {
        const auto h = del.position(*equivalent);
        if (!h) {
          throw ConsistencyError("equivalent '" + *equivalent + "' of " + eq.target_lemma +
                                 " missing from the " + del.source_language + " DEL list");
        }
        v.bits[offset + *h] = 1;
      }
      offset += del.entries.size();
    }
    out.vectors.push_back(std::move(v));
  }
  return out;
}

void ClusterConfig::validate() const {
  if (!(alpha > 0.0)) throw ConfigError("alpha must be positive");
  if (distance != "hamming") throw ConfigError("unsupported distance '" + distance + "'");
  if (linkage != "average") throw ConfigError("unsupported linkage '" + linkage + "'");
}

std::size_t hamming(const std::vector<std::uint8_t>& a, const std::vector<std::uint8_t>& b) {
  if (a.size() != b.size()) throw ConsistencyError("vector layouts differ");
  std::size_t d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += a[i] != b[i];
  return d;
}

double cluster_distance(const Cluster& a, const Cluster& b, const VectorSet& vectors,
                        const ClusterConfig& config) {
  config.validate();
  if (a.members.empty() || b.members.empty()) throw std::invalid_argument("empty cluster");
  std::size_t sum = 0;
  for (std::size_t i : a.members) {
    for (std::size_t j : b.members) {
      sum += hamming(vectors.vectors.at(i).bits, vectors.vectors.at(j).bits);
    }
  }
  return static_cast<double>(sum) / static_cast<double>(a.members.size() * b.members.size());
}

bool gate_admits(long double d_prev, long double d, double alpha) {
  if (d <= 0) return true;
  // alpha arrives as a binary double; the slack keeps ratios such as 3/25
  // admissible at alpha = 0.12.
  return (d - d_prev) / d <= static_cast<long double>(alpha) + 1e-12L;
}

namespace {

bool compatible(const ClusterLabel& a, const ClusterLabel& b) { return !a || !b || *a == *b; }

// Average distance held as an exact fraction sum / pairs.
struct Fraction {
  long long sum;
  long long pairs;

  double value() const { return static_cast<double>(sum) / static_cast<double>(pairs); }
  friend bool operator<(const Fraction& x, const Fraction& y) {
    return static_cast<__int128>(x.sum) * y.pairs < static_cast<__int128>(y.sum) * x.pairs;
  }
};

}  // namespace

Agglomeration agglomerate(const VectorSet& vectors, const std::vector<ClusterLabel>& seed_labels,
                          const ClusterConfig& config) {
  config.validate();
  const std::size_t n = vectors.vectors.size();
  if (seed_labels.size() != n) throw ConsistencyError("one seed label per vector required");

  std::vector<Cluster> slots(n);
  std::vector<bool> active(n, true);
  std::vector<std::vector<long long>> sums(n, std::vector<long long>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    slots[i] = {{i}, seed_labels[i]};
    for (std::size_t j = i + 1; j < n; ++j) {
      sums[i][j] = sums[j][i] =
          static_cast<long long>(hamming(vectors.vectors[i].bits, vectors.vectors[j].bits));
    }
  }

  Agglomeration out;
  std::optional<Fraction> previous;
  struct Candidate {
    Fraction d;
    std::size_t a, b;  // slot indices; slot index == cluster id
  };
  while (true) {
    std::vector<Candidate> candidates;
    for (std::size_t i = 0; i < n; ++i) {
      if (!active[i]) continue;
      for (std::size_t j = i + 1; j < n; ++j) {
        if (!active[j]) continue;
        const long long pairs = static_cast<long long>(slots[i].members.size()) *
                                static_cast<long long>(slots[j].members.size());
        candidates.push_back({{sums[i][j], pairs}, i, j});
      }
    }
    std::stable_sort(candidates.begin(), candidates.end(),
                     [](const Candidate& x, const Candidate& y) {
                       if (x.d < y.d) return true;
                       if (y.d < x.d) return false;
                       return std::tie(x.a, x.b) < std::tie(y.a, y.b);
                     });

    std::optional<Candidate> chosen;
    std::optional<double> ratio;
    for (const Candidate& c : candidates) {
      if (!compatible(slots[c.a].label, slots[c.b].label)) continue;
      if (previous) {
        // (d - d_prev)/d grows with d, so the first compatible pair decides.
        const long double d = static_cast<long double>(c.d.sum) / c.d.pairs;
        const long double dp = static_cast<long double>(previous->sum) / previous->pairs;
        if (!gate_admits(dp, d, config.alpha)) break;
        ratio = static_cast<double>(d > 0 ? (d - dp) / d : 0.0L);
      }
      chosen = c;
      break;
    }
    if (!chosen) break;

    Cluster& a = slots[chosen->a];
    Cluster& b = slots[chosen->b];
    a.members.insert(a.members.end(), b.members.begin(), b.members.end());
    std::sort(a.members.begin(), a.members.end());
    if (!a.label) a.label = b.label;
    for (std::size_t k = 0; k < n; ++k) {
      if (k == chosen->a || k == chosen->b || !active[k]) continue;
      sums[chosen->a][k] += sums[chosen->b][k];
      sums[k][chosen->a] = sums[chosen->a][k];
    }
    active[chosen->b] = false;
    out.trace.push_back({out.trace.size() + 1, chosen->a, chosen->b, chosen->d.value(), ratio,
                         a.label});
    previous = chosen->d;
  }

  for (std::size_t i = 0; i < n; ++i) {
    if (active[i]) out.clusters.push_back(std::move(slots[i]));
  }
  return out;
}

ClusterLabel seed_label(const SenseAssignment& a) {
  switch (a.method) {
    case Method::kIntersection:
    case Method::kSimilarityFallback:
    case Method::kCrossLingualTieBreak:
      return a.sense;
    default:
      return std::nullopt;
  }
}

BackoffResult backoff_assign(const std::vector<Cluster>& clusters,
                             std::vector<SenseAssignment> assignments, bool modify_tie_breaks) {
  BackoffResult out;
  for (const Cluster& cluster : clusters) {
    if (!cluster.label) continue;
    for (std::size_t m : cluster.members) {
      SenseAssignment& a = assignments.at(m);
      if (a.method == Method::kUnassigned) {
        a.sense = cluster.label;
        a.method = Method::kClusterBackoff;
      } else if (a.method == Method::kCrossLingualTieBreak && a.sense != cluster.label) {
        out.conflicts.push_back({a.occurrence, *a.sense, *cluster.label});
        if (modify_tie_breaks) {
          a.sense = cluster.label;
          a.method = Method::kClusterBackoff;
        }
      }
    }
  }
  std::sort(out.conflicts.begin(), out.conflicts.end(),
            [](const ClusterConflict& x, const ClusterConflict& y) {
              return corpus_order(x.occurrence, y.occurrence);
            });
  out.assignments = std::move(assignments);
  return out;
}

void write_trace(std::ostream& out, const TargetWord& word, const std::vector<JoinRecord>& trace) {
  out << "# " << word.lemma << '\t' << word.pos << '\n';
  for (const JoinRecord& j : trace) {
    out << j.step << "\tc" << j.cluster_a << "\tc" << j.cluster_b << '\t'
        << format_number(j.distance) << '\t' << (j.ratio ? format_number(*j.ratio) : "-") << '\t'
        << (j.label ? j.label->str() : std::string("any")) << '\n';
  }
}

void write_conflicts(std::ostream& out, const std::vector<ClusterConflict>& conflicts) {
  for (const ClusterConflict& c : conflicts) {
    out << c.occurrence.unit_id << '\t' << c.occurrence.token_index << '\t' << c.occurrence.lemma
        << '\t' << c.occurrence.pos << '\t' << c.assigned.str() << '\t' << c.cluster_label.str()
        << '\n';
  }
}

}  // namespace parawsd
