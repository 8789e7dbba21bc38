#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "parawsd/lexicon.h"
#include "parawsd/wsd.h"

namespace parawsd {

// Block layout shared by every vector of one target word: one DEL per source
// language, concatenated in row order.
struct VectorLayout {
  std::vector<DelList> blocks;

  std::size_t length() const;
  std::size_t offset(std::size_t block) const;
};

struct OccurrenceVector {
  OccurrenceRef occurrence;
  std::vector<std::uint8_t> bits;  // 0/1, layout.length() long
};

struct VectorSet {
  VectorLayout layout;
  std::vector<OccurrenceVector> vectors;  // EQ column order
};

// One one-hot block per EQ row; an untranslated occurrence leaves its block
// all zero. Throws ConsistencyError if an equivalent is missing from its DEL or
// a row has no DEL.
VectorSet build_vectors(const EqMatrix& eq, const std::vector<DelList>& dels);

// Cluster label: a sense, or nullopt for "any".
using ClusterLabel = std::optional<IliCode>;

struct Cluster {
  std::vector<std::size_t> members;  // indices into VectorSet::vectors, ascending
  ClusterLabel label;

  std::size_t id() const { return members.front(); }
};

struct ClusterConfig {
  double alpha = 0.12;
  std::string distance = "hamming";
  std::string linkage = "average";

  void validate() const;  // throws ConfigError
};

std::size_t hamming(const std::vector<std::uint8_t>& a, const std::vector<std::uint8_t>& b);

// Average-linkage mean of pairwise Hamming distances.
double cluster_distance(const Cluster& a, const Cluster& b, const VectorSet& vectors,
                        const ClusterConfig& config = {});

// Admissibility of a join at distance d after a join at d_prev:
// (d - d_prev) / d <= alpha, with a zero distance always admissible.
bool gate_admits(long double d_prev, long double d, double alpha);

struct JoinRecord {
  std::size_t step = 0;
  std::size_t cluster_a = 0;
  std::size_t cluster_b = 0;
  double distance = 0.0;
  std::optional<double> ratio;  // (d - d_prev) / d; undefined for the first join
  ClusterLabel label;           // label of the merged cluster
};

struct Agglomeration {
  std::vector<Cluster> clusters;  // ordered by id
  std::vector<JoinRecord> trace;
};

// Label-aware agglomeration. Candidate pairs are scanned by ascending average
// distance (then cluster ids); a pair joins when its labels agree or one is
// "any" and (d - d_prev)/d <= alpha, d_prev being the previous join's
// distance. The first join has no previous distance and is always admitted.
// Stops when no pair qualifies.
Agglomeration agglomerate(const VectorSet& vectors, const std::vector<ClusterLabel>& seed_labels,
                          const ClusterConfig& config = {});

// Seed label for an assignment: its sense when produced by the wordnet step.
ClusterLabel seed_label(const SenseAssignment& a);

struct ClusterConflict {
  OccurrenceRef occurrence;
  IliCode assigned;
  IliCode cluster_label;
};

struct BackoffResult {
  std::vector<SenseAssignment> assignments;
  std::vector<ClusterConflict> conflicts;
};

// Unassigned members of a sense-labelled cluster take the label
// (ClusterBackoff). Tie-break assignments that disagree with their cluster are
// reported as conflicts and relabelled only when `modify_tie_breaks` is set.
// `assignments` must be in the same order as the clustered vectors.
BackoffResult backoff_assign(const std::vector<Cluster>& clusters,
                             std::vector<SenseAssignment> assignments,
                             bool modify_tie_breaks = false);

void write_trace(std::ostream& out, const TargetWord& word, const std::vector<JoinRecord>& trace);
void write_conflicts(std::ostream& out, const std::vector<ClusterConflict>& conflicts);

}  // namespace parawsd
