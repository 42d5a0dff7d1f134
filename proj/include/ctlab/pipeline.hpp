// Executable absorbing method: carve designated sets, build a template,
// embed rooted absorbers, tile the bulk, match leftovers into the designated
// sets, and absorb the residue into a full verified factor.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ctlab/factor.hpp"
#include "ctlab/gadget.hpp"
#include "ctlab/graph.hpp"
#include "ctlab/rat.hpp"
#include "ctlab/template_graph.hpp"

namespace ctlab {

struct PipelineConfig {
  int t = 3, k = 2;
  Rat epsilon{1, 2};
  Rat gamma{1, 2};
  Rat xi{1, 12};
  Rat rho{1, 25};
  Rat alpha{1};
  Rat p{3, 5};
  uint64_t seed = 1;
  int m_override = 0;                  // 0: m = max(1, floor(xi * n~))
  long long template_max_degree = 0;   // 0: 40^t
  int template_verify_cap = 3;
  std::string absorber_kind = "auto";  // auto | full | compact
  std::string gexp_check = "advisory"; // skip | advisory | strict
  uint64_t embed_budget = 300'000'000;
  uint64_t cover_budget = 600'000'000;
  uint64_t match_budget = 200'000'000;
  int embed_retries = 4;
};

PipelineConfig pipeline_config_from_json(const nlohmann::ordered_json& j);
nlohmann::ordered_json pipeline_config_to_json(const PipelineConfig& cfg);

struct EmbeddedAbsorber {
  std::vector<int> roots;                              // host ids, part order
  std::vector<int> host_of;                            // pattern id -> host id
  std::vector<std::vector<int>> factor_with_roots;     // host cycles
  std::vector<std::vector<int>> factor_without_roots;  // host cycles
  std::vector<int> internal;                           // host ids minus roots
};

struct WAbsorber {
  int t = 0;
  std::vector<std::vector<int>> W, X;
  TemplateGraph tpl;
  RootPlan plan;
  std::vector<EmbeddedAbsorber> per_edge;
  std::string pattern_kind;

  std::vector<int> all_vertices() const;  // V(A) = roots + internals
};

struct EmbedResult {
  bool ok = false;
  std::vector<EmbeddedAbsorber> absorbers;
  std::vector<int> failed_edges;
  std::string error;
};

// Exact rooted pattern embedding honoring the blow-up labeling; copies for
// different root tuples are internally disjoint. `avoid` marks host vertices
// that may never be used as internals (roots themselves are exempt).
EmbedResult embed_absorbers(const PartitionedGraph& pg,
                            const std::vector<std::vector<int>>& root_tuples,
                            const RootedGadget& pattern,
                            const std::vector<int>& pattern_labels,
                            const std::vector<char>& avoid, const PipelineConfig& cfg);

// Z is a balanced subset of the designated W sets; returns a verified factor
// of A - Z via a perfect matching of the template minus f^{-1}(Z).
FactorCertificate absorb(const WAbsorber& wabs, const std::vector<int>& Z);

struct BulkCover {
  FactorCertificate certificate;
  std::vector<std::vector<int>> leftover_per_part;
  bool reached_target = false;
};

// Canonical C_t packing of the parts minus `avoid`, leaving at most
// max_leftover uncovered per part (equal counts by construction).
BulkCover cover_bulk(const PartitionedGraph& pg, const std::vector<int>& avoid,
                     int max_leftover, const PipelineConfig& cfg);

// One canonical cycle per leftover vertex, all other vertices drawn from the
// W sets; an A-saturating matching of the auxiliary hypergraph.
FactorCertificate match_leftover(const PartitionedGraph& pg,
                                 const std::vector<std::vector<int>>& Z_parts,
                                 const std::vector<std::vector<int>>& W_parts,
                                 const PipelineConfig& cfg);

enum class PipelineStatus { Ok, Failed };

struct PipelineResult {
  PipelineStatus status = PipelineStatus::Failed;
  std::string phase;  // last phase entered; empty on success
  std::optional<FactorCertificate> certificate;
  nlohmann::ordered_json trace;
};

PipelineResult run_pipeline(const PartitionedGraph& pg, const PipelineConfig& cfg);

}  // namespace ctlab
