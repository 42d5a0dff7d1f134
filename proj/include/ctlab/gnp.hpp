// Seeded random graphs, the two resilience attacks, and empirical probes of
// the expansion/edge-distribution predicates. All randomness is counter-based
// so results are identical across runs and thread counts.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ctlab/factor.hpp"
#include "ctlab/graph.hpp"
#include "ctlab/rat.hpp"
#include "ctlab/regularity.hpp"

namespace ctlab {

struct GnpSample {
  Graph graph;
  int n = 0;
  Rat p;
  uint64_t seed = 0;
};

GnpSample sample_gnp(int n, const Rat& p, uint64_t seed);
GnpSample sample_gnp_serial(int n, const Rat& p, uint64_t seed);

// Random blow-up of C_t: independent edges at density alpha*p between
// cyclically consecutive parts only. Part i occupies ids [i*n_tilde, (i+1)*n_tilde).
PartitionedGraph sample_blowup_subgraph(int t, int n_tilde, const Rat& p,
                                        const Rat& alpha, uint64_t seed);

struct AttackReport {
  long long deleted_edges = 0;
  Rat max_deleted_degree_fraction;
  int target_vertex = -1;           // second-neighborhood attack
  std::vector<int> target_set;      // half-cut attack
  std::string post_property;        // name of the checked property
  bool post_property_holds = false; // e.g. "v lies on a C_5": false after attack
  SearchStatus post_search_status = SearchStatus::None;  // half-cut factor search
};

// Deletes all edges spanned by the second neighborhood of v (path version:
// endpoints of 2-paths from v), then checks exactly whether v is on any C_5.
std::pair<Graph, AttackReport> attack_second_neighborhood(const Graph& g, int v);

// Disconnects a set of size n/2-1 from the rest (n even); reports whether a
// C_t-factor survives (complete search at desk scale).
std::pair<Graph, AttackReport> attack_half_cut(const Graph& g, int t,
                                               std::optional<std::vector<int>> S = {},
                                               uint64_t work_budget = 200'000'000);

int max_degree_vertex(const Graph& g);

// Highest-degree vertex whose neighborhood spans no edge. For such targets
// the second-neighborhood attack respects the (np)^2 p deletion estimate at
// every vertex; a neighbor inside its own second neighborhood would instead
// lose all but one of its edges. Falls back to the max-degree vertex.
int independent_neighborhood_target(const Graph& g);

struct ProbeRow {
  int trial = 0;
  double quantity = 0, threshold = 0;
  bool pass = false;
  std::string note;
};

struct ProbeReport {
  std::vector<ProbeRow> rows;
  long long violations = 0;
};

// e(X,Y) <= |X||Y|p + c sqrt(|X||Y| n p) over random (possibly overlapping)
// set pairs.
ProbeReport empirical_edge_bound(const GnpSample& g, int trials, double c, uint64_t seed);

// |N^k(X)| >= (1-k nu)|X|(np)^k over random sets in the lemma's size regime;
// singleton fallback when the regime bound drops below 1.
ProbeReport empirical_k_expansion(const GnpSample& g, int k, double nu, int trials,
                                  uint64_t seed, bool allow_singleton = true);

// Exact path-version k-th neighborhood of a set (distinct-vertex paths).
std::vector<int> path_neighborhood(const Graph& g, const std::vector<int>& X, int k);

// For each q in the schedule remove nabla(Q) for a random Q and count
// vertices of part 0 that stop being (gamma,k)-expanding.
ProbeReport robust_expansion_experiment(const PartitionedGraph& pg, int k,
                                        const Rat& gamma, const std::vector<int>& q_schedule,
                                        const RegParams& params, double ceiling_K,
                                        uint64_t seed);

struct DegreeHypothesisReport {
  long long below_alpha_Up = 0;      // vertices of X u U with deg(v,U) < alpha|U|p
  long long below_half_plus = 0;     // vertices of U with deg(u,U) < (1/2+alpha)|U|p
  Rat threshold_alpha, threshold_half;
};

struct CycleCoverResult {
  SearchStatus status = SearchStatus::Unknown;
  std::optional<FactorCertificate> certificate;  // covers X only
  DegreeHypothesisReport degrees;
};

// Auxiliary t-uniform hypergraph ({x} u Y an edge iff x+Y induces a t-cycle)
// plus an X-saturating matching; covers all of X by disjoint t-cycles.
CycleCoverResult min_degree_cycle_cover(const Graph& g, const std::vector<int>& X,
                                        const std::vector<int>& U, int t,
                                        const Rat& alpha, const Rat& p,
                                        uint64_t work_budget = 200'000'000,
                                        size_t max_edges_per_x = 2000);

}  // namespace ctlab
