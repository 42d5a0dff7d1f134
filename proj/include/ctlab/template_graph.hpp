// Robust t-partite t-uniform templates: every balanced deletion of flexible
// vertices leaves a perfect matching. Built by randomized greedy and verified
// exhaustively at small m.
#pragma once

#include <cstdint>
#include <vector>

namespace ctlab {

struct TemplateGraph {
  int t = 0, m = 0;
  long long max_degree = 0;
  std::vector<std::vector<int>> edges;  // edge[i] lies in part i
  bool verified = false;

  // Part i occupies ids [i*2m, (i+1)*2m); flexible vertices are the first m.
  int vertex(int part, int idx) const { return part * 2 * m + idx; }
  int part_of(int v) const { return v / (2 * m); }
  bool is_flexible(int v) const { return v % (2 * m) < m; }
  int vertex_count() const { return 2 * m * t; }
  long long degree(int v) const;
};

TemplateGraph build_template(int t, int m, long long max_degree, uint64_t seed,
                             int verify_cap = 3, int retries = 400);

// Exhaustive over balanced Z (all flexible-subset combinations per level).
bool verify_template(const TemplateGraph& tpl, int cap = 3);

// Random balanced Z samples for m over the exhaustive cap.
bool spot_check_template(const TemplateGraph& tpl, int samples, uint64_t seed);

struct RootPlan {
  std::vector<int> host_of;               // template vertex -> host vertex
  std::vector<std::vector<int>> tuples;   // R_e per template edge, part order
};

// Bijection B_i -> W_i u X_i with f(B_i') = W_i, plus per-edge root tuples.
RootPlan plan_roots(const TemplateGraph& tpl, const std::vector<std::vector<int>>& W,
                    const std::vector<std::vector<int>>& X, uint64_t seed);

}  // namespace ctlab
