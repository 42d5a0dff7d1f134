// Regularity, lower-regularity, expansion, typicality and class-membership
// predicates. Exact checks are exponential and capped; sampled checks are
// refutation-only (they never certify regularity, only report "no violation
// found in N trials").
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ctlab/graph.hpp"
#include "ctlab/rat.hpp"

namespace ctlab {

struct RegParams {
  Rat epsilon;
  Rat p;
  Rat alpha{1};

  void validate() const;
};

// --- pair-level checks -----------------------------------------------------

bool check_regular_exact(const Graph& g, const std::vector<int>& X,
                         const std::vector<int>& Y, const RegParams& params,
                         int cap = 14);

bool check_lower_regular_exact(const Graph& g, const std::vector<int>& X,
                               const std::vector<int>& Y, const RegParams& params,
                               int cap = 14);

struct SampledVerdict {
  bool violation_found = false;
  int trial = -1;
  std::vector<int> witness_x, witness_y;
};

SampledVerdict check_regular_sampled(const Graph& g, const std::vector<int>& X,
                                     const std::vector<int>& Y, const RegParams& params,
                                     int trials, uint64_t seed);
SampledVerdict check_regular_sampled_serial(const Graph& g, const std::vector<int>& X,
                                            const std::vector<int>& Y,
                                            const RegParams& params, int trials,
                                            uint64_t seed);

SampledVerdict check_lower_regular_sampled(const Graph& g, const std::vector<int>& X,
                                           const std::vector<int>& Y,
                                           const RegParams& params, int trials,
                                           uint64_t seed);

// Slicing: subsets of relative size >= eps2 of an (eps1,p)-regular pair are
// (eps1/eps2, p)-regular; requires eps1 < eps2 <= 1/2.
RegParams slice_params(const RegParams& params, const Rat& epsilon2);

// --- expansion and class membership ----------------------------------------

struct ExpansionLevel {
  int level = 0;
  long long size = 0;
  Rat threshold;
  bool pass = false;
};

struct ExpansionReport {
  int vertex = -1;
  int k = 0;
  Rat gamma;
  std::vector<ExpansionLevel> plus, minus;
  bool pass = false;
};

// (gamma,k)-expanding both cyclic directions: level i needs
// |N^i| >= (1-gamma)(n~ * alpha * p)^i.
ExpansionReport expansion_profile(const PartitionedGraph& pg, int v, int k,
                                  const Rat& gamma, const RegParams& params);

struct GexpOptions {
  int exact_cap = 14;
  int sample_trials = 200;
  uint64_t seed = 1;
};

struct ClauseOutcome {
  std::string clause;
  long long failures = 0;
  long long checks = 0;
};

struct GexpVertexReport {
  int vertex;
  bool degree_ok, growth_ok, lower_regular_ok;
};

struct GexpReport {
  bool pair_densities_ok = true;
  bool pair_regularity_ok = true;  // refutation-only when sampled
  std::vector<GexpVertexReport> vertices;
  std::vector<ClauseOutcome> clauses;
  bool all_pass = false;
};

GexpReport check_gexp_membership(const PartitionedGraph& pg, int t, int k,
                                 const RegParams& params, const GexpOptions& opts = {});

bool check_typicality(const PartitionedGraph& pg, int v, int t, int k,
                      const RegParams& params, const GexpOptions& opts = {});

std::vector<char> typicality_census(const PartitionedGraph& pg, int t, int k,
                                    const RegParams& params, const GexpOptions& opts = {});
std::vector<char> typicality_census_serial(const PartitionedGraph& pg, int t, int k,
                                           const RegParams& params,
                                           const GexpOptions& opts = {});

}  // namespace ctlab
