// Exact C_t-factor search and verification. "none" verdicts are complete
// searches; budget exhaustion is reported as a distinct "unknown".
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ctlab/graph.hpp"

namespace ctlab {

struct FactorCertificate {
  int t = 0;
  std::vector<std::vector<int>> cycles;  // each a t-tuple in cyclic order
  std::vector<int> covered() const;
};

enum class SearchStatus { Found, None, Unknown };

struct FactorSearchOptions {
  std::optional<std::vector<int>> restrict_to;
  // When set, every cycle must be canonical: one vertex per part, parts
  // visited in cyclic order. Outer index = part position 0..t-1.
  std::optional<std::vector<std::vector<int>>> canonical_parts;
  // Cycles tried first at each branch point (e.g. a gadget's defining list).
  std::vector<std::vector<int>> hint_cycles;
  // Deterministic work budget; roughly "expansion steps".
  uint64_t work_budget = 400'000'000;
};

struct FactorSearchResult {
  SearchStatus status = SearchStatus::Unknown;
  std::optional<FactorCertificate> certificate;
  uint64_t work_used = 0;
};

FactorSearchResult find_ct_factor(const Graph& g, int t,
                                  const FactorSearchOptions& opts = {});

bool verify_factor(const Graph& g, const FactorCertificate& cert, int t,
                   const std::vector<int>& required_cover);

// Exact count of canonical copies of C_t across the listed parts.
uint64_t enumerate_canonical_copies(const PartitionedGraph& pg,
                                    const std::vector<int>& part_indices);

// All t-cycles through pivot inside `allowed` (sorted ids); each cycle once.
// With parts given (pivot's part first), only canonical cycles and each
// exactly once. Used by the solver and by hypergraph builders.
std::vector<std::vector<int>> cycles_through(const Graph& g, int pivot, int t,
                                             const std::vector<char>& allowed,
                                             const std::vector<std::vector<int>>* parts,
                                             uint64_t* work, uint64_t work_limit,
                                             size_t max_cycles = SIZE_MAX);

}  // namespace ctlab
