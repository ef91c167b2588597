#pragma once

// Maximum cocliques (intersecting subsets) and cliques (semiregular subsets)
// of derangement graphs by bitset branch and bound with greedy-coloring
// bounds.
//
// The derangement graph is vertex-transitive, so some maximum coclique and
// some maximum clique contain the identity; searches are seeded with vertex 0
// unless `seed_identity` is switched off.

#include <cstdint>
#include <optional>
#include <vector>

#include "ekr/derangement.hpp"

namespace ekr {

inline constexpr std::size_t kMaxExactVertices = 5000;

class DerangementGraph {
public:
  explicit DerangementGraph(const ActionProfile& prof);

  std::size_t size() const { return n_; }
  std::size_t words() const { return words_; }
  bool adjacent(std::uint32_t u, std::uint32_t v) const { return (row(u)[v >> 6] >> (v & 63)) & 1u; }
  const std::uint64_t* row(std::uint32_t u) const { return bits_.data() + std::size_t{u} * words_; }
  std::size_t degree(std::uint32_t u) const;

private:
  std::size_t n_;
  std::size_t words_;
  std::vector<std::uint64_t> bits_;
};

struct SearchOptions {
  std::optional<double> prune_bound;  // stop once a set of size floor(bound) is found
  double time_limit = 60.0;           // seconds
  unsigned threads = 1;
  bool seed_identity = true;
};

struct SearchResult {
  std::vector<std::uint32_t> best_set;
  bool optimal = false;
  double upper_bound_used = 0;
  std::uint64_t nodes_explored = 0;
  bool time_limit_hit = false;
};

SearchResult max_coclique(const DerangementGraph& graph, const SearchOptions& opts = {});
SearchResult max_clique(const DerangementGraph& graph, const SearchOptions& opts = {});

// Greedy intersecting subset through the identity for graphs beyond exact
// range; scans elements in index order.
SearchResult greedy_coclique(const ActionProfile& prof);

} // namespace ekr
