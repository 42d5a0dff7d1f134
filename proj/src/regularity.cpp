#include "ctlab/regularity.hpp"

#include <algorithm>
#include <stdexcept>

#include "ctlab/rng.hpp"

namespace ctlab {
namespace {

long long ceil_frac(const Rat& r) {  // smallest integer >= r
  long long q = r.numerator() / r.denominator();
  return q * r.denominator() < r.numerator() ? q + 1 : q;
}

// Extremal e(X',Y') over Y' of each size, for a fixed X': with per-y degrees
// into X' sorted, prefix sums give the min and suffix sums the max. Checking
// the extremes against the density window is exact.
bool pair_check_exact(const Graph& g, const std::vector<int>& X,
                      const std::vector<int>& Y, const RegParams& params, int cap,
                      bool two_sided) {
  params.validate();
  if (int(X.size()) > cap || int(Y.size()) > cap)
    throw std::invalid_argument("regular_exact: side over cap, use the sampled check");
  if (X.empty() || Y.empty())
    throw std::invalid_argument("regular_exact: empty side");
  Rat d = bipartite_density(g, X, Y);
  Rat lo = d - params.epsilon * params.p;
  Rat hi = d + params.epsilon * params.p;
  int nx = int(X.size()), ny = int(Y.size());
  long long ax = ceil_frac(params.epsilon * Rat(nx));
  long long ay = ceil_frac(params.epsilon * Rat(ny));
  ax = std::max<long long>(ax, 1);
  ay = std::max<long long>(ay, 1);

  std::vector<std::vector<char>> adjXY((size_t)(nx), std::vector<char>(size_t(ny), 0));
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < ny; ++j)
      adjXY[size_t(i)][size_t(j)] = g.has_edge(X[size_t(i)], Y[size_t(j)]) ? 1 : 0;

  std::vector<int> deg((size_t)(ny));
  for (uint32_t mask = 1; mask < (1u << nx); ++mask) {
    int a = __builtin_popcount(mask);
    if (a < ax) continue;
    for (int j = 0; j < ny; ++j) {
      int dsum = 0;
      for (int i = 0; i < nx; ++i)
        if (mask >> i & 1) dsum += adjXY[size_t(i)][size_t(j)];
      deg[size_t(j)] = dsum;
    }
    std::sort(deg.begin(), deg.end());
    long long min_e = 0, max_e = 0;
    for (int b = 1; b <= ny; ++b) {
      min_e += deg[size_t(b - 1)];
      max_e += deg[size_t(ny - b)];
      if (b < ay) continue;
      Rat denom((long long)a * b);
      if (Rat(min_e) / denom < lo) return false;
      if (two_sided && Rat(max_e) / denom > hi) return false;
    }
  }
  return true;
}

SampledVerdict pair_check_sampled(const Graph& g, const std::vector<int>& X,
                                  const std::vector<int>& Y, const RegParams& params,
                                  int trials, uint64_t seed, bool two_sided,
                                  bool parallel) {
  params.validate();
  if (trials < 1) throw std::invalid_argument("sampled check: trials >= 1 required");
  if (X.empty() || Y.empty())
    throw std::invalid_argument("sampled check: empty side");
  Rat d = bipartite_density(g, X, Y);
  Rat lo = d - params.epsilon * params.p;
  Rat hi = d + params.epsilon * params.p;
  int sx = int(std::max<long long>(1, ceil_frac(params.epsilon * Rat((long long)X.size()))));
  int sy = int(std::max<long long>(1, ceil_frac(params.epsilon * Rat((long long)Y.size()))));

  auto run_trial = [&](int tr, std::vector<int>* wx, std::vector<int>* wy) {
    uint64_t s1 = counter_hash(seed, uint64_t(tr), 1);
    uint64_t s2 = counter_hash(seed, uint64_t(tr), 2);
    auto ix = sample_indices(s1, int(X.size()), sx);
    auto iy = sample_indices(s2, int(Y.size()), sy);
    std::vector<int> Xs, Ys;
    for (int i : ix) Xs.push_back(X[size_t(i)]);
    for (int i : iy) Ys.push_back(Y[size_t(i)]);
    long long e = count_cross_edges(g, Xs, Ys);
    Rat dd = Rat(e) / Rat((long long)sx * sy);
    bool viol = dd < lo || (two_sided && dd > hi);
    if (viol && wx) {
      *wx = std::move(Xs);
      *wy = std::move(Ys);
    }
    return viol;
  };

  int first_bad = trials;
  if (parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 16) reduction(min : first_bad)
#endif
    for (int tr = 0; tr < trials; ++tr) {
      if (run_trial(tr, nullptr, nullptr)) first_bad = std::min(first_bad, tr);
    }
  } else {
    for (int tr = 0; tr < trials && first_bad == trials; ++tr)
      if (run_trial(tr, nullptr, nullptr)) first_bad = tr;
  }

  SampledVerdict v;
  if (first_bad < trials) {
    v.violation_found = true;
    v.trial = first_bad;
    run_trial(first_bad, &v.witness_x, &v.witness_y);
  }
  return v;
}

}  // namespace

void RegParams::validate() const {
  if (epsilon <= Rat(0) || epsilon > Rat(1))
    throw std::invalid_argument("RegParams: epsilon must be in (0,1]");
  if (p <= Rat(0) || p > Rat(1))
    throw std::invalid_argument("RegParams: p must be in (0,1]");
  if (alpha <= Rat(0)) throw std::invalid_argument("RegParams: alpha must be > 0");
}

bool check_regular_exact(const Graph& g, const std::vector<int>& X,
                         const std::vector<int>& Y, const RegParams& params, int cap) {
  return pair_check_exact(g, X, Y, params, cap, true);
}

bool check_lower_regular_exact(const Graph& g, const std::vector<int>& X,
                               const std::vector<int>& Y, const RegParams& params,
                               int cap) {
  return pair_check_exact(g, X, Y, params, cap, false);
}

SampledVerdict check_regular_sampled(const Graph& g, const std::vector<int>& X,
                                     const std::vector<int>& Y, const RegParams& params,
                                     int trials, uint64_t seed) {
  return pair_check_sampled(g, X, Y, params, trials, seed, true, true);
}

SampledVerdict check_regular_sampled_serial(const Graph& g, const std::vector<int>& X,
                                            const std::vector<int>& Y,
                                            const RegParams& params, int trials,
                                            uint64_t seed) {
  return pair_check_sampled(g, X, Y, params, trials, seed, true, false);
}

SampledVerdict check_lower_regular_sampled(const Graph& g, const std::vector<int>& X,
                                           const std::vector<int>& Y,
                                           const RegParams& params, int trials,
                                           uint64_t seed) {
  return pair_check_sampled(g, X, Y, params, trials, seed, false, true);
}

RegParams slice_params(const RegParams& params, const Rat& epsilon2) {
  params.validate();
  if (!(params.epsilon < epsilon2) || epsilon2 > Rat(1, 2))
    throw std::invalid_argument("slice_params: need eps1 < eps2 <= 1/2");
  RegParams out = params;
  out.epsilon = params.epsilon / epsilon2;
  return out;
}

ExpansionReport expansion_profile(const PartitionedGraph& pg, int v, int k,
                                  const Rat& gamma, const RegParams& params) {
  params.validate();
  if (k < 1) throw std::invalid_argument("expansion_profile: k >= 1");
  ExpansionReport rep;
  rep.vertex = v;
  rep.k = k;
  rep.gamma = gamma;
  rep.pass = true;
  int i0 = pg.part_of(v);
  if (i0 < 0) throw std::invalid_argument("expansion_profile: exceptional vertex");
  Rat base = Rat(pg.part_size()) * params.alpha * params.p;
  for (int dir = 0; dir < 2; ++dir) {
    auto& side = dir == 0 ? rep.plus : rep.minus;
    std::vector<std::vector<int>> seq;
    for (int j = 1; j <= k; ++j)
      seq.push_back(pg.parts[size_t(pg.cyc(dir == 0 ? i0 + j : i0 - j))]);
    // levels computed incrementally so each level is reported
    for (int j = 1; j <= k; ++j) {
      std::vector<std::vector<int>> prefix(seq.begin(), seq.begin() + j);
      auto layer = iterated_neighborhood(pg.graph, v, prefix);
      ExpansionLevel lv;
      lv.level = j;
      lv.size = (long long)layer.size();
      lv.threshold = (Rat(1) - gamma) * rat_pow(base, j);
      lv.pass = Rat(lv.size) >= lv.threshold;
      rep.pass = rep.pass && lv.pass;
      side.push_back(lv);
    }
  }
  return rep;
}

namespace {

// Shared per-vertex clause logic for G_exp^k membership and typicality.
struct VertexClauses {
  bool degree_ok = true;
  bool growth_ok = true;  // |N^j| >= (1-eps)(n~ alpha p)^j, j in [k-1]
  bool lower_ok = true;
};

VertexClauses vertex_clauses(const PartitionedGraph& pg, int v, int t, int k,
                             const RegParams& params, const GexpOptions& opts,
                             bool with_degree_window) {
  VertexClauses out;
  int i0 = pg.part_of(v);
  long long nt = pg.part_size();
  Rat base = Rat(nt) * params.alpha * params.p;
  Rat one(1);

  if (with_degree_window) {
    for (int dir : {+1, -1}) {
      const auto& part = pg.parts[size_t(pg.cyc(i0 + dir))];
      long long deg = 0;
      for (int u : pg.graph.neighbors(v))
        if (pg.part_of(u) == pg.cyc(i0 + dir)) ++deg;
      (void)part;
      if (Rat(deg) < (one - params.epsilon) * base ||
          Rat(deg) > (one + params.epsilon) * base)
        out.degree_ok = false;
    }
  }

  std::vector<int> nk_plus, nk_minus;
  for (int dir = 0; dir < 2; ++dir) {
    std::vector<std::vector<int>> seq;
    for (int j = 1; j <= k - 1; ++j)
      seq.push_back(pg.parts[size_t(pg.cyc(dir == 0 ? i0 + j : i0 - j))]);
    std::vector<int> layer = {v};
    for (int j = 1; j <= k - 1; ++j) {
      std::vector<std::vector<int>> prefix(seq.begin(), seq.begin() + j);
      layer = iterated_neighborhood(pg.graph, v, prefix);
      if (Rat((long long)layer.size()) < (one - params.epsilon) * rat_pow(base, j))
        out.growth_ok = false;
    }
    (dir == 0 ? nk_plus : nk_minus) = layer;
  }

  // lower-regularity of the (k-1)-st neighborhoods
  auto lower_pair_ok = [&](const std::vector<int>& A, const std::vector<int>& B) {
    if (A.empty() || B.empty()) return false;
    RegParams q = params;
    q.p = params.alpha * params.p;  // class applied at density alpha*p
    if (int(A.size()) <= opts.exact_cap && int(B.size()) <= opts.exact_cap)
      return check_lower_regular_exact(pg.graph, A, B, q, opts.exact_cap);
    auto verdict = check_lower_regular_sampled(pg.graph, A, B, q, opts.sample_trials,
                                               counter_hash(opts.seed, uint64_t(v), 77));
    return !verdict.violation_found;
  };

  if (t == 2 * k - 1) {
    out.lower_ok = lower_pair_ok(nk_plus, nk_minus);
  } else {
    out.lower_ok = lower_pair_ok(nk_plus, pg.parts[size_t(pg.cyc(i0 + k))]) &&
                   lower_pair_ok(nk_minus, pg.parts[size_t(pg.cyc(i0 - k))]);
  }
  return out;
}

}  // namespace

GexpReport check_gexp_membership(const PartitionedGraph& pg, int t, int k,
                                 const RegParams& params, const GexpOptions& opts) {
  params.validate();
  if (t != 2 * k - 1 && t != 2 * k)
    throw std::invalid_argument("check_gexp_membership: t must be 2k-1 or 2k");
  if (pg.t != t) throw std::invalid_argument("check_gexp_membership: partition has wrong t");
  GexpReport rep;
  Rat one(1);
  Rat dens_target = params.alpha * params.p;

  RegParams pair_params = params;
  pair_params.p = dens_target;
  for (int i = 0; i < t; ++i) {
    const auto& A = pg.parts[size_t(i)];
    const auto& B = pg.parts[size_t(pg.cyc(i + 1))];
    Rat d = bipartite_density(pg.graph, A, B);
    if (d < (one - params.epsilon) * dens_target || d > (one + params.epsilon) * dens_target)
      rep.pair_densities_ok = false;
    if (int(A.size()) <= opts.exact_cap && int(B.size()) <= opts.exact_cap) {
      if (!check_regular_exact(pg.graph, A, B, pair_params, opts.exact_cap))
        rep.pair_regularity_ok = false;
    } else {
      auto verdict = check_regular_sampled(pg.graph, A, B, pair_params,
                                           opts.sample_trials,
                                           counter_hash(opts.seed, uint64_t(i), 13));
      if (verdict.violation_found) rep.pair_regularity_ok = false;
    }
  }

  ClauseOutcome deg{"degree_window", 0, 0}, grow{"neighborhood_growth", 0, 0},
      lower{"lower_regular_neighborhoods", 0, 0};
  for (int v = 0; v < pg.graph.vertex_count(); ++v) {
    if (pg.part_of(v) < 0) continue;
    auto vc = vertex_clauses(pg, v, t, k, params, opts, true);
    rep.vertices.push_back({v, vc.degree_ok, vc.growth_ok, vc.lower_ok});
    deg.checks++;
    grow.checks++;
    lower.checks++;
    if (!vc.degree_ok) deg.failures++;
    if (!vc.growth_ok) grow.failures++;
    if (!vc.lower_ok) lower.failures++;
  }
  rep.clauses = {deg, grow, lower};
  rep.all_pass = rep.pair_densities_ok && rep.pair_regularity_ok && deg.failures == 0 &&
                 grow.failures == 0 && lower.failures == 0;
  return rep;
}

bool check_typicality(const PartitionedGraph& pg, int v, int t, int k,
                      const RegParams& params, const GexpOptions& opts) {
  params.validate();
  if (t != 2 * k - 1 && t != 2 * k)
    throw std::invalid_argument("check_typicality: t must be 2k-1 or 2k");
  if (pg.part_of(v) < 0) return false;
  auto vc = vertex_clauses(pg, v, t, k, params, opts, false);
  return vc.growth_ok && vc.lower_ok;
}

std::vector<char> typicality_census_serial(const PartitionedGraph& pg, int t, int k,
                                           const RegParams& params,
                                           const GexpOptions& opts) {
  std::vector<char> out(size_t(pg.graph.vertex_count()), 0);
  for (int v = 0; v < pg.graph.vertex_count(); ++v)
    if (pg.part_of(v) >= 0) out[size_t(v)] = check_typicality(pg, v, t, k, params, opts);
  return out;
}

std::vector<char> typicality_census(const PartitionedGraph& pg, int t, int k,
                                    const RegParams& params, const GexpOptions& opts) {
  std::vector<char> out(size_t(pg.graph.vertex_count()), 0);
  int n = pg.graph.vertex_count();
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 8)
#endif
  for (int v = 0; v < n; ++v)
    if (pg.part_of(v) >= 0) out[size_t(v)] = check_typicality(pg, v, t, k, params, opts);
  return out;
}

}  // namespace ctlab
