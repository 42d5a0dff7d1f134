#include "ctlab/gnp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ctlab/hypergraph.hpp"
#include "ctlab/rng.hpp"

namespace ctlab {
namespace {

// Exact inclusion test: h < floor(p * 2^64). Bias is < 2^-64.
struct EdgeCoin {
  uint64_t seed;
  unsigned __int128 thr;

  EdgeCoin(uint64_t seed_, const Rat& p) : seed(seed_) {
    if (p < Rat(0) || p > Rat(1)) throw std::invalid_argument("p must be in [0,1]");
    thr = ((unsigned __int128)p.numerator() << 64) / (unsigned __int128)p.denominator();
  }

  bool operator()(int u, int v) const {
    if (u > v) std::swap(u, v);
    return (unsigned __int128)counter_hash(seed, uint64_t(u), uint64_t(v)) < thr;
  }
};

Graph gnp_graph(int n, const Rat& p, uint64_t seed, bool parallel) {
  EdgeCoin coin(seed, p);
  std::vector<std::vector<int>> outs((size_t)(n));
  if (parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 64)
#endif
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (coin(u, v)) outs[size_t(u)].push_back(v);
  } else {
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (coin(u, v)) outs[size_t(u)].push_back(v);
  }
  std::vector<std::pair<int, int>> edges;
  size_t total = 0;
  for (const auto& o : outs) total += o.size();
  edges.reserve(total);
  for (int u = 0; u < n; ++u)
    for (int v : outs[size_t(u)]) edges.emplace_back(u, v);
  return Graph(n, std::move(edges));
}

}  // namespace

GnpSample sample_gnp(int n, const Rat& p, uint64_t seed) {
  return GnpSample{gnp_graph(n, p, seed, true), n, p, seed};
}

GnpSample sample_gnp_serial(int n, const Rat& p, uint64_t seed) {
  return GnpSample{gnp_graph(n, p, seed, false), n, p, seed};
}

PartitionedGraph sample_blowup_subgraph(int t, int n_tilde, const Rat& p,
                                        const Rat& alpha, uint64_t seed) {
  if (t < 3 || n_tilde < 1) throw std::invalid_argument("blowup: t >= 3, n_tilde >= 1");
  Rat q = alpha * p;
  if (q > Rat(1)) q = Rat(1);
  EdgeCoin coin(seed, q);
  std::vector<std::pair<int, int>> edges;
  std::vector<std::vector<int>> parts((size_t)(t));
  for (int i = 0; i < t; ++i)
    for (int j = 0; j < n_tilde; ++j) parts[size_t(i)].push_back(i * n_tilde + j);
  for (int i = 0; i < t; ++i) {
    int j = (i + 1) % t;
    if (j == i) continue;
    if (t == 2 && i == 1) break;
    for (int u : parts[size_t(i)])
      for (int v : parts[size_t(j)])
        if (coin(u, v)) edges.emplace_back(u, v);
  }
  return PartitionedGraph(Graph(t * n_tilde, std::move(edges)), std::move(parts));
}

int max_degree_vertex(const Graph& g) {
  int best = 0;
  for (int v = 1; v < g.vertex_count(); ++v)
    if (g.degree(v) > g.degree(best)) best = v;
  return best;
}

int independent_neighborhood_target(const Graph& g) {
  std::vector<int> order(size_t(g.vertex_count()));
  for (int v = 0; v < g.vertex_count(); ++v) order[size_t(v)] = v;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (g.degree(a) != g.degree(b)) return g.degree(a) > g.degree(b);
    return a < b;
  });
  for (int v : order) {
    bool indep = true;
    const auto& nb = g.neighbors(v);
    for (size_t i = 0; i < nb.size() && indep; ++i)
      for (size_t j = i + 1; j < nb.size(); ++j)
        if (g.has_edge(nb[i], nb[j])) {
          indep = false;
          break;
        }
    if (indep) return v;
  }
  return order.empty() ? 0 : order[0];
}

namespace {

Rat fraction_report(const Graph& before, const Graph& after) {
  Rat best(0);
  for (int v = 0; v < before.vertex_count(); ++v) {
    int d0 = before.degree(v);
    if (d0 == 0) continue;
    int d1 = after.degree(v);
    Rat f(d0 - d1, d0);
    if (f > best) best = f;
  }
  return best;
}

// Is v on any 5-cycle? Exact: two-paths from both sides joined by an edge.
bool on_c5(const Graph& g, int v) {
  // per endpoint b: the list of middles a with path v-a-b
  std::vector<std::vector<int>> mids((size_t)(g.vertex_count()));
  std::vector<int> endpoints;
  for (int a : g.neighbors(v))
    for (int b : g.neighbors(a)) {
      if (b == v) continue;
      if (mids[size_t(b)].empty()) endpoints.push_back(b);
      mids[size_t(b)].push_back(a);
    }
  for (int c : endpoints)
    for (int d : mids[size_t(c)])       // right path v-d-c
      for (int b : g.neighbors(c)) {    // need left path v-?-b with edge b-c
        if (b == v || b == d || mids[size_t(b)].empty()) continue;
        for (int a : mids[size_t(b)])
          if (a != c && a != d) return true;
      }
  return false;
}

}  // namespace

std::pair<Graph, AttackReport> attack_second_neighborhood(const Graph& g, int v) {
  if (v < 0 || v >= g.vertex_count())
    throw std::invalid_argument("attack: vertex out of range");
  std::vector<char> in_n2(size_t(g.vertex_count()), 0);
  for (int a : g.neighbors(v))
    for (int b : g.neighbors(a))
      if (b != v) in_n2[size_t(b)] = 1;
  std::vector<std::pair<int, int>> kept;
  long long deleted = 0;
  for (auto [a, b] : g.edges()) {
    if (in_n2[size_t(a)] && in_n2[size_t(b)])
      ++deleted;
    else
      kept.emplace_back(a, b);
  }
  Graph after(g.vertex_count(), std::move(kept));
  AttackReport rep;
  rep.deleted_edges = deleted;
  rep.max_deleted_degree_fraction = fraction_report(g, after);
  rep.target_vertex = v;
  rep.post_property = "target_on_c5";
  rep.post_property_holds = on_c5(after, v);
  return {std::move(after), std::move(rep)};
}

std::pair<Graph, AttackReport> attack_half_cut(const Graph& g, int t,
                                               std::optional<std::vector<int>> S,
                                               uint64_t work_budget) {
  int n = g.vertex_count();
  if (n % 2 != 0) throw std::invalid_argument("attack_half_cut: n must be even");
  std::vector<int> cut = S ? std::move(*S) : std::vector<int>{};
  if (!S) {
    for (int v = 0; v < n / 2 - 1; ++v) cut.push_back(v);
  }
  if (int(cut.size()) != n / 2 - 1)
    throw std::invalid_argument("attack_half_cut: |S| must be n/2-1");
  std::vector<char> inS(size_t(n), 0);
  for (int v : cut) inS[size_t(v)] = 1;
  std::vector<std::pair<int, int>> kept;
  long long deleted = 0;
  for (auto [a, b] : g.edges()) {
    if (inS[size_t(a)] != inS[size_t(b)])
      ++deleted;
    else
      kept.emplace_back(a, b);
  }
  Graph after(n, std::move(kept));
  AttackReport rep;
  rep.deleted_edges = deleted;
  rep.max_deleted_degree_fraction = fraction_report(g, after);
  rep.target_set = cut;
  rep.post_property = "ct_factor_exists";
  if (n % t == 0) {
    FactorSearchOptions opts;
    opts.work_budget = work_budget;
    auto res = find_ct_factor(after, t, opts);
    rep.post_search_status = res.status;
    rep.post_property_holds = res.status == SearchStatus::Found;
  } else {
    rep.post_search_status = SearchStatus::None;
    rep.post_property_holds = false;
  }
  return {std::move(after), std::move(rep)};
}

ProbeReport empirical_edge_bound(const GnpSample& g, int trials, double c, uint64_t seed) {
  if (g.p > Rat(99, 100))
    throw std::invalid_argument("empirical_edge_bound: requires p <= 0.99");
  ProbeReport rep;
  rep.rows.resize(size_t(trials));
  int n = g.n;
  double pd = rat_double(g.p);
  const auto& edges = g.graph.edges();
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 4)
#endif
  for (int tr = 0; tr < trials; ++tr) {
    SplitMix szrng(counter_hash(seed, uint64_t(tr), 0));
    int sx = int(szrng.below(uint64_t(n) + 1));
    int sy = int(szrng.below(uint64_t(n) + 1));
    auto X = sample_indices(counter_hash(seed, uint64_t(tr), 1), n, sx);
    auto Y = sample_indices(counter_hash(seed, uint64_t(tr), 2), n, sy);
    std::vector<char> inX(size_t(n), 0), inY(size_t(n), 0);
    for (int v : X) inX[size_t(v)] = 1;
    for (int v : Y) inY[size_t(v)] = 1;
    long long e = 0;
    for (auto [a, b] : edges)
      if ((inX[size_t(a)] && inY[size_t(b)]) || (inX[size_t(b)] && inY[size_t(a)])) ++e;
    double xy = double(sx) * double(sy);
    double bound = xy * pd + c * std::sqrt(xy * double(n) * pd);
    ProbeRow row;
    row.trial = tr;
    row.quantity = double(e);
    row.threshold = bound;
    row.pass = double(e) <= bound;
    row.note = "|X|=" + std::to_string(sx) + " |Y|=" + std::to_string(sy);
    rep.rows[size_t(tr)] = std::move(row);
  }
  for (const auto& r : rep.rows)
    if (!r.pass) ++rep.violations;
  return rep;
}

std::vector<int> path_neighborhood(const Graph& g, const std::vector<int>& X, int k) {
  if (k < 1) throw std::invalid_argument("path_neighborhood: k >= 1");
  std::vector<char> mark(size_t(g.vertex_count()), 0);
  std::vector<int> path;
  struct Rec {
    const Graph& g;
    int k;
    std::vector<char>& mark;
    std::vector<int>& path;
    void go(int cur, int depth) {
      if (depth == k) {
        mark[size_t(cur)] = 1;
        return;
      }
      for (int w : g.neighbors(cur)) {
        if (std::find(path.begin(), path.end(), w) != path.end()) continue;
        path.push_back(w);
        go(w, depth + 1);
        path.pop_back();
      }
    }
  } rec{g, k, mark, path};
  for (int x : X) {
    path = {x};
    rec.go(x, 0);
  }
  std::vector<char> inX(size_t(g.vertex_count()), 0);
  for (int x : X) inX[size_t(x)] = 1;
  std::vector<int> out;
  for (int v = 0; v < g.vertex_count(); ++v)
    if (mark[size_t(v)] && !inX[size_t(v)]) out.push_back(v);
  return out;
}

ProbeReport empirical_k_expansion(const GnpSample& g, int k, double nu, int trials,
                                  uint64_t seed, bool allow_singleton) {
  ProbeReport rep;
  rep.rows.resize(size_t(trials));
  double pd = rat_double(g.p);
  double np = double(g.n) * pd;
  double bound = nu / (std::pow(double(g.n), double(k - 1)) * std::pow(pd, double(k)));
  bool singleton = bound < 1.0;
  if (singleton && !allow_singleton)
    throw std::invalid_argument("empirical_k_expansion: size regime empty");
  int max_size = singleton ? 1 : int(std::min<double>(bound, 1e6));
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 4)
#endif
  for (int tr = 0; tr < trials; ++tr) {
    SplitMix rng(counter_hash(seed, uint64_t(tr), 3));
    int sx = 1 + int(rng.below(uint64_t(max_size)));
    auto X = sample_indices(counter_hash(seed, uint64_t(tr), 4), g.n, sx);
    auto nk = path_neighborhood(g.graph, X, k);
    double threshold = (1.0 - double(k) * nu) * double(sx) * std::pow(np, double(k));
    ProbeRow row;
    row.trial = tr;
    row.quantity = double(nk.size());
    row.threshold = threshold;
    row.pass = row.quantity >= threshold;
    row.note = singleton ? "singleton-fallback" : "regime";
    rep.rows[size_t(tr)] = std::move(row);
  }
  for (const auto& r : rep.rows)
    if (!r.pass) ++rep.violations;
  return rep;
}

ProbeReport robust_expansion_experiment(const PartitionedGraph& pg, int k,
                                        const Rat& gamma, const std::vector<int>& q_schedule,
                                        const RegParams& params, double ceiling_K,
                                        uint64_t seed) {
  ProbeReport rep;
  const auto& U = pg.parts[0];
  std::vector<int> pool;
  for (int v = 0; v < pg.graph.vertex_count(); ++v)
    if (pg.part_of(v) != 0) pool.push_back(v);

  std::vector<char> base_expanding(size_t(pg.graph.vertex_count()), 0);
  for (int v : U)
    base_expanding[size_t(v)] = expansion_profile(pg, v, k, gamma, params).pass;

  int trial = 0;
  for (int q : q_schedule) {
    if (q < 0 || q > int(pool.size()))
      throw std::invalid_argument("robust_expansion_experiment: bad q");
    auto pick = sample_indices(counter_hash(seed, uint64_t(trial), 9), int(pool.size()), q);
    std::vector<int> Q;
    for (int i : pick) Q.push_back(pool[size_t(i)]);
    Graph stripped = remove_closed_edge_set(pg.graph, Q);
    PartitionedGraph pg2(stripped, pg.parts, pg.exceptional);
    long long lost = 0;
    for (int v : U) {
      if (!base_expanding[size_t(v)]) continue;
      if (!expansion_profile(pg2, v, k, gamma, params).pass) ++lost;
    }
    ProbeRow row;
    row.trial = trial++;
    row.quantity = double(lost);
    row.threshold = ceiling_K / rat_double(params.p);
    row.pass = row.quantity <= row.threshold;
    row.note = "q=" + std::to_string(q);
    if (!row.pass) ++rep.violations;
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

CycleCoverResult min_degree_cycle_cover(const Graph& g, const std::vector<int>& X,
                                        const std::vector<int>& U, int t,
                                        const Rat& alpha, const Rat& p,
                                        uint64_t work_budget, size_t max_edges_per_x) {
  CycleCoverResult out;
  std::vector<char> inU(size_t(g.vertex_count()), 0), inX(size_t(g.vertex_count()), 0);
  for (int u : U) inU[size_t(u)] = 1;
  for (int x : X) {
    if (inU[size_t(x)])
      throw std::invalid_argument("min_degree_cycle_cover: X and U must be disjoint");
    inX[size_t(x)] = 1;
  }

  // report the lemma's degree hypotheses (informational)
  Rat thr_a = alpha * Rat((long long)U.size()) * p;
  Rat thr_h = (Rat(1, 2) + alpha) * Rat((long long)U.size()) * p;
  out.degrees.threshold_alpha = thr_a;
  out.degrees.threshold_half = thr_h;
  auto deg_into_U = [&](int v) {
    long long d = 0;
    for (int w : g.neighbors(v))
      if (inU[size_t(w)]) ++d;
    return d;
  };
  for (int v : X)
    if (Rat(deg_into_U(v)) < thr_a) ++out.degrees.below_alpha_Up;
  for (int v : U) {
    long long d = deg_into_U(v);
    if (Rat(d) < thr_a) ++out.degrees.below_alpha_Up;
    if (Rat(d) < thr_h) ++out.degrees.below_half_plus;
  }

  // auxiliary t-uniform hypergraph: {x} u Y an edge iff x+Y induces a t-cycle
  Hypergraph h;
  h.vertex_count = g.vertex_count();
  std::vector<std::vector<int>> cycle_of_edge;
  uint64_t work = 0;
  std::vector<char> allowed(size_t(g.vertex_count()), 0);
  for (int u : U) allowed[size_t(u)] = 1;
  for (int x : X) {
    allowed[size_t(x)] = 1;
    auto cycs = cycles_through(g, x, t, allowed, nullptr, &work, work_budget,
                               max_edges_per_x);
    for (auto& c : cycs) {
      h.edges.push_back(c);
      cycle_of_edge.push_back(std::move(c));
    }
    allowed[size_t(x)] = 0;
  }

  auto match = find_saturating_matching(h, X, work_budget);
  if (match.status == MatchStatus::Found) {
    FactorCertificate cert;
    cert.t = t;
    for (int ei : match.matching->edge_indices)
      cert.cycles.push_back(cycle_of_edge[size_t(ei)]);
    out.status = SearchStatus::Found;
    out.certificate = std::move(cert);
  } else if (match.status == MatchStatus::None) {
    out.status = SearchStatus::None;
  } else {
    out.status = SearchStatus::Unknown;
  }
  return out;
}

}  // namespace ctlab
