#pragma once

// Helpers shared by the unit tests and the acceptance binary. The oracles here
// deliberately avoid the library's own traversal code.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "parawsd/wordnet.h"

namespace testing {

inline std::filesystem::path fixture(const std::string& name) {
  return std::filesystem::path(PARAWSD_FIXTURE_DIR) / name;
}

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

inline parawsd::IliCode ili(int i) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "T-%08d-n", i);
  return parawsd::IliCode(buf);
}

struct RandomGraph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;  // undirected, as generated
  parawsd::WordnetGraph graph;
};

// Forest-ish hypernym structure plus a sprinkling of meronym links and a few
// isolated nodes, so that some pairs are unreachable or beyond max_k.
inline RandomGraph random_graph(std::mt19937& rng, int max_nodes = 200) {
  RandomGraph g;
  g.n = std::uniform_int_distribution<int>(2, max_nodes)(rng);
  std::vector<parawsd::Synset> synsets(g.n);
  std::bernoulli_distribution has_parent(0.9), extra(0.08), isolated(0.03);
  for (int i = 0; i < g.n; ++i) {
    synsets[i].ili = ili(i);
    synsets[i].pos = "n";
    synsets[i].literals = {{"w" + std::to_string(i), 1}};
    if (i == 0 || isolated(rng)) continue;
    if (has_parent(rng)) {
      const int p = std::uniform_int_distribution<int>(0, i - 1)(rng);
      synsets[i].links.push_back({"hyp", ili(p)});
      g.edges.emplace_back(i, p);
    }
    if (extra(rng)) {
      const int p = std::uniform_int_distribution<int>(0, g.n - 1)(rng);
      if (p != i) {
        synsets[i].links.push_back({"mer", ili(p)});
        g.edges.emplace_back(i, p);
      }
    }
  }
  g.graph = parawsd::WordnetGraph::build("xx", std::move(synsets));
  return g;
}

// All-pairs shortest paths by Floyd-Warshall; INT_MAX marks no path.
inline std::vector<std::vector<int>> all_pairs(const RandomGraph& g) {
  const int inf = std::numeric_limits<int>::max() / 4;
  std::vector<std::vector<int>> d(g.n, std::vector<int>(g.n, inf));
  for (int i = 0; i < g.n; ++i) d[i][i] = 0;
  for (auto [a, b] : g.edges) d[a][b] = d[b][a] = 1;
  for (int k = 0; k < g.n; ++k) {
    for (int i = 0; i < g.n; ++i) {
      if (d[i][k] == inf) continue;
      for (int j = 0; j < g.n; ++j) {
        if (d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];
      }
    }
  }
  for (auto& row : d) {
    for (int& x : row) {
      if (x == inf) x = std::numeric_limits<int>::max();
    }
  }
  return d;
}

// Brute-force intersection in the order of `a`.
inline std::vector<parawsd::IliCode> intersect(const std::vector<parawsd::IliCode>& a,
                                               const std::vector<parawsd::IliCode>& b) {
  std::vector<parawsd::IliCode> out;
  for (const auto& x : a) {
    for (const auto& y : b) {
      if (x == y) {
        out.push_back(x);
        break;
      }
    }
  }
  return out;
}

}  // namespace testing
