// Hypergraph matchings: Haxell's sufficient condition as an (exponential)
// checker and a complete backtracking search for A-saturating matchings.
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace ctlab {

struct Hypergraph {
  int vertex_count = 0;
  std::vector<std::vector<int>> edges;
};

struct Matching {
  std::vector<int> edge_indices;
  std::vector<int> saturates;
};

enum class MatchStatus { Found, None, Unknown };

struct MatchResult {
  MatchStatus status = MatchStatus::Unknown;
  std::optional<Matching> matching;
};

// Every edge must have exactly one vertex in A ("Haxell shape"); complete
// search for a matching covering A within the work budget.
MatchResult find_saturating_matching(const Hypergraph& h, const std::vector<int>& side_A,
                                     uint64_t work_budget = 50'000'000);

// For every nonempty A' and every B' with |B'| <= (2l-3)(|A'|-1), some edge
// meets A' and avoids B'. Exponential in |A|; |A| <= 12, |B| <= 18.
bool check_haxell_condition(const Hypergraph& h, const std::vector<int>& side_A);

// Perfect matching (edges covering every vertex exactly once); used by the
// template machinery. Complete search.
std::optional<std::vector<int>> find_perfect_matching(int vertex_count,
                                                      const std::vector<std::vector<int>>& edges,
                                                      const std::vector<char>& removed,
                                                      uint64_t work_budget = 50'000'000);

}  // namespace ctlab
