#include "ctlab/two_density.hpp"

#include <algorithm>
#include <cstdint>
#include <memory>
#include <numeric>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ctlab {
namespace {

constexpr int kInfArc = 1 << 30;  // arc capacities fit int (a, b <= ~3e4)

// Dinic on the Goldberg-style network for one block.
// Nodes: 0 = source, 1 = sink, 2..2+nv-1 vertices, then one node per edge.
// Arcs: s -> edge_i (cap b), edge_i -> endpoints (inf), vertex_j -> t (cap a),
// plus zero-capacity s -> vertex_j slots that a probe can open to force a
// pair of vertices onto the source side.
struct DensityNet {
  int nv = 0, mv = 0, nodes = 0;
  std::vector<int> head, nxt, to;
  std::vector<int> cap;
  std::vector<int> src_vertex_arc;
  std::vector<int> src_edge_arc;
  std::vector<int> vertex_sink_arc;
  std::vector<int> level, it;
  std::vector<int> q, reach_q;
  std::vector<char> reach;
  int src_open[2] = {-1, -1};  // the only source arcs with residual capacity

  void add_arc(int a, int b, int c) {
    to.push_back(b);
    cap.push_back(c);
    nxt.push_back(head[size_t(a)]);
    head[size_t(a)] = int(to.size()) - 1;
    to.push_back(a);
    cap.push_back(0);
    nxt.push_back(head[size_t(b)]);
    head[size_t(b)] = int(to.size()) - 1;
  }

  void build(int n, const std::vector<std::pair<int, int>>& es) {
    nv = n;
    mv = int(es.size());
    nodes = 2 + nv + mv;
    head.assign(size_t(nodes), -1);
    to.clear();
    cap.clear();
    nxt.clear();
    src_vertex_arc.resize(size_t(nv));
    src_edge_arc.resize(size_t(mv));
    vertex_sink_arc.resize(size_t(nv));
    for (int j = 0; j < nv; ++j) {
      src_vertex_arc[size_t(j)] = int(to.size());
      add_arc(0, 2 + j, 0);
    }
    for (int j = 0; j < nv; ++j) {
      vertex_sink_arc[size_t(j)] = int(to.size());
      add_arc(2 + j, 1, 0);
    }
    for (int i = 0; i < mv; ++i) {
      int en = 2 + nv + i;
      src_edge_arc[size_t(i)] = int(to.size());
      add_arc(0, en, 0);
      add_arc(en, 2 + es[size_t(i)].first, kInfArc);
      add_arc(en, 2 + es[size_t(i)].second, kInfArc);
    }
    level.resize(size_t(nodes));
    it.resize(size_t(nodes));
    fresh_cap_ = cap;
  }

  // fresh capacities for lambda = a/b, forced slots closed
  void set_lambda(int a, int b) {
    cap = fresh_cap_;
    for (int i = 0; i < mv; ++i) cap[size_t(src_edge_arc[size_t(i)])] = b;
    for (int j = 0; j < nv; ++j) cap[size_t(vertex_sink_arc[size_t(j)])] = a;
  }

  // When src_open is set, all other source arcs are known saturated, so the
  // BFS can seed the two forced endpoints directly.
  bool bfs() {
    std::fill(level.begin(), level.end(), -1);
    q.clear();
    level[0] = 0;
    if (src_open[0] >= 0) {
      for (int s : {0, 1}) {
        int e = src_open[size_t(s)];
        if (cap[size_t(e)] > 0 && level[size_t(to[size_t(e)])] < 0) {
          level[size_t(to[size_t(e)])] = 1;
          q.push_back(to[size_t(e)]);
        }
      }
    } else {
      q.push_back(0);
    }
    for (size_t qi = 0; qi < q.size(); ++qi) {
      int x = q[qi];
      for (int e = head[size_t(x)]; e != -1; e = nxt[size_t(e)])
        if (cap[size_t(e)] > 0 && level[size_t(to[size_t(e)])] < 0) {
          level[size_t(to[size_t(e)])] = level[size_t(x)] + 1;
          q.push_back(to[size_t(e)]);
        }
    }
    return level[1] >= 0;
  }

  int dfs(int x, int f) {
    if (x == 1) return f;
    for (int& e = it[size_t(x)]; e != -1; e = nxt[size_t(e)]) {
      int y = to[size_t(e)];
      if (cap[size_t(e)] > 0 && level[size_t(y)] == level[size_t(x)] + 1) {
        int d = dfs(y, std::min(f, cap[size_t(e)]));
        if (d > 0) {
          cap[size_t(e)] -= d;
          cap[size_t(e ^ 1)] += d;
          return d;
        }
      }
    }
    level[size_t(x)] = -1;
    return 0;
  }

  // continues from the current residual state
  long long maxflow() {
    long long total = 0;
    while (bfs()) {
      for (int i = 0; i < nodes; ++i) it[size_t(i)] = head[size_t(i)];
      if (src_open[0] >= 0) {
        // route the source DFS through the two open arcs only
        for (int s : {0, 1}) {
          int e = src_open[size_t(s)];
          int y = to[size_t(e)];
          if (level[size_t(y)] != 1) continue;
          while (cap[size_t(e)] > 0) {
            int d = dfs(y, cap[size_t(e)]);
            if (d == 0) break;
            cap[size_t(e)] -= d;
            cap[size_t(e ^ 1)] += d;
            total += d;
          }
        }
      } else {
        while (int f = dfs(0, kInfArc)) total += f;
      }
    }
    return total;
  }

  // complement of the residual reach-to-sink set = maximal source side
  void maximal_source_vertices(std::vector<int>* out) {
    reach.assign(size_t(nodes), 0);
    reach_q.clear();
    reach[1] = 1;
    reach_q.push_back(1);
    for (size_t qi = 0; qi < reach_q.size(); ++qi) {
      int y = reach_q[qi];
      for (int e = head[size_t(y)]; e != -1; e = nxt[size_t(e)]) {
        int x = to[size_t(e)];
        if (!reach[size_t(x)] && cap[size_t(e ^ 1)] > 0) {
          reach[size_t(x)] = 1;
          reach_q.push_back(x);
        }
      }
    }
    out->clear();
    for (int j = 0; j < nv; ++j)
      if (!reach[size_t(2 + j)]) out->push_back(j);
  }

 private:
  std::vector<int> fresh_cap_;
};

// Warm-start forced-edge prober: one base max flow per lambda, then each
// edge probe restores the saved residual state, opens the two forced slots,
// and augments. The forced maximum exceeds the two-endpoint baseline exactly
// when m_2 has a witness through that edge. The saturated-source shortcut in
// the probe phase is valid only when the base flow saturates every source
// arc, which the caller checks.
struct ForcedProbe {
  DensityNet net;
  const std::vector<std::pair<int, int>>& edges;
  std::vector<int> base_state;
  long long base_value = 0;
  long long a = 0, b = 0;
  bool base_saturated = false;
  Rat lambda{-1};

  explicit ForcedProbe(int nv, const std::vector<std::pair<int, int>>& es)
      : edges(es) {
    net.build(nv, es);
  }

  void rebase(const Rat& lam) {
    lambda = lam;
    a = lam.numerator();
    b = lam.denominator();
    net.src_open[0] = net.src_open[1] = -1;
    net.set_lambda(int(a), int(b));
    base_value = net.maxflow();
    base_state = net.cap;
    base_saturated = base_value == b * (long long)edges.size();
  }

  // strict test: exists S containing edge ei with e(S)-lambda|S| > 1-2lambda
  bool probe(int ei, std::vector<int>* smax) {
    net.cap = base_state;
    auto [u, v] = edges[size_t(ei)];
    int au = net.src_vertex_arc[size_t(u)];
    int av = net.src_vertex_arc[size_t(v)];
    net.cap[size_t(au)] = kInfArc;
    net.cap[size_t(av)] = kInfArc;
    if (base_saturated) {
      net.src_open[0] = au;
      net.src_open[1] = av;
    } else {
      net.src_open[0] = net.src_open[1] = -1;
    }
    long long total = base_value + net.maxflow();
    long long target = b * (long long)edges.size() - (b - 2 * a);
    bool beats = total < target;  // forced max value above the pair baseline
    if (smax) net.maximal_source_vertices(smax);
    return beats;
  }
};

struct Block {
  std::vector<int> old_of_new;
  std::vector<std::pair<int, int>> edges;  // remapped ids
};

// Biconnected components, iterative Hopcroft-Tarjan. Single-edge blocks
// (bridges) come out as blocks too.
std::vector<Block> biconnected_blocks(const Graph& g) {
  int n = g.vertex_count();
  std::vector<int> num(size_t(n), -1), low(size_t(n), 0), parent(size_t(n), -1);
  std::vector<size_t> child_it(size_t(n), 0);
  std::vector<std::pair<int, int>> estack;
  std::vector<Block> blocks;
  int timer = 0;

  auto pop_block = [&](int u, int v) {
    Block b;
    std::vector<std::pair<int, int>> es;
    while (!estack.empty()) {
      auto e = estack.back();
      estack.pop_back();
      es.push_back(e);
      if (e == std::make_pair(u, v) || e == std::make_pair(v, u)) break;
    }
    std::vector<int> verts;
    for (auto [a, b2] : es) {
      verts.push_back(a);
      verts.push_back(b2);
    }
    verts = sorted_unique(std::move(verts));
    std::vector<int> remap(size_t(n), -1);
    for (size_t i = 0; i < verts.size(); ++i) remap[size_t(verts[i])] = int(i);
    b.old_of_new = verts;
    for (auto [a, b2] : es) b.edges.emplace_back(remap[size_t(a)], remap[size_t(b2)]);
    blocks.push_back(std::move(b));
  };

  for (int s = 0; s < n; ++s) {
    if (num[size_t(s)] != -1) continue;
    std::vector<int> stack = {s};
    num[size_t(s)] = low[size_t(s)] = timer++;
    while (!stack.empty()) {
      int u = stack.back();
      const auto& nb = g.neighbors(u);
      if (child_it[size_t(u)] < nb.size()) {
        int v = nb[child_it[size_t(u)]++];
        if (num[size_t(v)] == -1) {
          estack.emplace_back(u, v);
          parent[size_t(v)] = u;
          num[size_t(v)] = low[size_t(v)] = timer++;
          stack.push_back(v);
        } else if (v != parent[size_t(u)] && num[size_t(v)] < num[size_t(u)]) {
          estack.emplace_back(u, v);
          low[size_t(u)] = std::min(low[size_t(u)], num[size_t(v)]);
        }
      } else {
        stack.pop_back();
        if (!stack.empty()) {
          int p = stack.back();
          low[size_t(p)] = std::min(low[size_t(p)], low[size_t(u)]);
          if (low[size_t(u)] >= num[size_t(p)]) pop_block(p, u);
        }
      }
    }
  }
  return blocks;
}

struct BlockResult {
  bool has = false;
  Rat value;
  std::vector<int> witness;  // block-local ids
};

Rat induced_ratio(const std::vector<std::pair<int, int>>& edges,
                  const std::vector<char>& in_set, int set_size, long long* e_out) {
  long long e = 0;
  for (auto [u, v] : edges)
    if (in_set[size_t(u)] && in_set[size_t(v)]) ++e;
  if (e_out) *e_out = e;
  if (set_size < 3 || e < 2) return Rat(-1);
  return Rat(e - 1, set_size - 2);
}

// Exact solve on one 2-connected block with >= 2 edges.
BlockResult solve_block(const Block& blk) {
  int nb = int(blk.old_of_new.size());
  int mb = int(blk.edges.size());
  BlockResult res;
  if (mb < 2) return res;

  ForcedProbe probe(nb, blk.edges);

  auto ratio_of_set = [&](const std::vector<int>& set, long long* e_out) {
    std::vector<char> in(size_t(nb), 0);
    for (int v : set) in[size_t(v)] = 1;
    return induced_ratio(blk.edges, in, int(set.size()), e_out);
  };

  uint64_t lattice_size = uint64_t(mb) * uint64_t(nb);
  if (lattice_size <= 1000000ULL) {
    // Bisection over the finite candidate set {(e-1)/(v-2)}.
    std::vector<Rat> cands;
    cands.reserve(size_t(lattice_size));
    for (int e = 2; e <= mb; ++e)
      for (int v = 3; v <= nb; ++v) cands.emplace_back(e - 1, v - 2);
    std::sort(cands.begin(), cands.end());
    cands.erase(std::unique(cands.begin(), cands.end()), cands.end());

    auto any_strict = [&](const Rat& lam) {
      probe.rebase(lam);
      for (int ei = 0; ei < mb; ++ei)
        if (probe.probe(ei, nullptr)) return true;
      return false;
    };

    size_t lo = 0, hi = cands.size() - 1;
    while (lo < hi) {
      size_t mid = (lo + hi) / 2;
      if (any_strict(cands[mid]))
        lo = mid + 1;
      else
        hi = mid;
    }
    Rat best = cands[lo];
    // Witness from the maximal maximizer at the optimum.
    probe.rebase(best);
    for (int ei = 0; ei < mb; ++ei) {
      std::vector<int> smax;
      probe.probe(ei, &smax);
      long long e;
      Rat r = ratio_of_set(smax, &e);
      if (e >= 2 && r == best) {
        res.has = true;
        res.value = best;
        res.witness = std::move(smax);
        return res;
      }
    }
    return res;  // unreachable for valid blocks
  }

  // Ascending exact pass: lambda only moves up through attained ratios; an
  // edge whose strict test fails at some lambda stays settled for every
  // larger lambda, so one sweep suffices.
  std::vector<int> order((size_t)mb);
  std::iota(order.begin(), order.end(), 0);
  std::vector<int> deg((size_t)nb, 0);
  for (auto [u, v] : blk.edges) {
    deg[size_t(u)]++;
    deg[size_t(v)]++;
  }
  std::sort(order.begin(), order.end(), [&](int x, int y) {
    int dx = std::min(deg[size_t(blk.edges[size_t(x)].first)],
                      deg[size_t(blk.edges[size_t(x)].second)]);
    int dy = std::min(deg[size_t(blk.edges[size_t(y)].first)],
                      deg[size_t(blk.edges[size_t(y)].second)]);
    if (dx != dy) return dx > dy;
    return x < y;
  });

  Rat lam(mb - 1, nb - 2);
  std::vector<int> witness((size_t)nb);
  std::iota(witness.begin(), witness.end(), 0);

#ifdef _OPENMP
  int nthreads = std::max(1, omp_get_max_threads());
#else
  int nthreads = 1;
#endif
  std::vector<std::unique_ptr<ForcedProbe>> probes;
  for (int i = 0; i < nthreads; ++i)
    probes.push_back(std::make_unique<ForcedProbe>(nb, blk.edges));

  const int chunk = 1024;
  for (int start = 0; start < mb; start += chunk) {
    int end = std::min(mb, start + chunk);
    std::vector<int> active(order.begin() + start, order.begin() + end);
    while (!active.empty()) {
      struct Hit {
        int ei;
        Rat r;
        std::vector<int> set;
      };
      std::vector<Hit> hits;
      std::vector<char> was_true(active.size(), 0);
#ifdef _OPENMP
#pragma omp parallel
#endif
      {
#ifdef _OPENMP
        ForcedProbe& mine = *probes[size_t(omp_get_thread_num())];
#else
        ForcedProbe& mine = *probes[0];
#endif
        if (mine.lambda != lam) mine.rebase(lam);
        std::vector<Hit> local;
#ifdef _OPENMP
#pragma omp for schedule(dynamic, 16)
#endif
        for (int i = 0; i < int(active.size()); ++i) {
          int ei = active[size_t(i)];
          std::vector<int> smax;
          if (mine.probe(ei, &smax)) {
            was_true[size_t(i)] = 1;
            long long e;
            Rat r = ratio_of_set(smax, &e);
            local.push_back(Hit{ei, r, std::move(smax)});
          }
        }
#ifdef _OPENMP
#pragma omp critical
#endif
        for (auto& h : local) hits.push_back(std::move(h));
      }
      if (hits.empty()) break;
      size_t best_i = 0;
      for (size_t i = 1; i < hits.size(); ++i)
        if (hits[i].r > hits[best_i].r ||
            (hits[i].r == hits[best_i].r && hits[i].ei < hits[best_i].ei))
          best_i = i;
      if (!(hits[best_i].r > lam))
        throw std::logic_error("two_density_flow: probe produced no improvement");
      lam = hits[best_i].r;
      witness = std::move(hits[best_i].set);
      std::vector<int> next_active;
      for (size_t i = 0; i < active.size(); ++i)
        if (was_true[size_t(i)]) next_active.push_back(active[size_t(i)]);
      active = std::move(next_active);
    }
  }

  res.has = true;
  res.value = lam;
  res.witness = std::move(witness);
  return res;
}

}  // namespace

TwoDensityResult two_density_exact(const Graph& g, int cap) {
  if (g.edge_count() < 2)
    throw std::invalid_argument("two_density: needs at least 2 edges");
  int n = g.vertex_count();
  if (n > cap)
    throw std::invalid_argument(
        "two_density_exact: over brute-force cap, use two_density_flow");
  const auto& edges = g.edges();
  long long best_num = -1, best_den = 1;
  uint32_t best_mask = 0;
  for (uint32_t mask = 0; mask < (1u << n); ++mask) {
    int pc = __builtin_popcount(mask);
    if (pc < 3) continue;
    long long e = 0;
    for (auto [u, v] : edges)
      if ((mask >> u & 1) && (mask >> v & 1)) ++e;
    if (e < 2) continue;
    long long num = e - 1, den = pc - 2;
    if (num * best_den > best_num * den) {
      best_num = num;
      best_den = den;
      best_mask = mask;
    }
  }
  if (best_num < 0)
    throw std::invalid_argument("two_density: no subgraph with 2 edges");
  TwoDensityResult r;
  r.value = Rat(best_num, best_den);
  for (int v = 0; v < n; ++v)
    if (best_mask >> v & 1) r.witness.push_back(v);
  return r;
}

TwoDensityResult two_density_flow(const Graph& g) {
  if (g.edge_count() < 2)
    throw std::invalid_argument("two_density: needs at least 2 edges");

  // Base candidates not confined to a 2-connected block: a 2-edge path
  // (ratio 1) or two independent edges (ratio 1/2).
  TwoDensityResult best;
  bool found = false;
  for (int v = 0; v < g.vertex_count() && !found; ++v)
    if (g.degree(v) >= 2) {
      best.value = Rat(1);
      best.witness = {v, g.neighbors(v)[0], g.neighbors(v)[1]};
      std::sort(best.witness.begin(), best.witness.end());
      found = true;
    }
  if (!found) {
    auto [u1, v1] = g.edges()[0];
    auto [u2, v2] = g.edges()[1];
    best.value = Rat(1, 2);
    best.witness = sorted_unique({u1, v1, u2, v2});
  }

  for (const auto& blk : biconnected_blocks(g)) {
    if (blk.edges.size() < 2) continue;
    BlockResult br = solve_block(blk);
    if (br.has && br.value > best.value) {
      best.value = br.value;
      best.witness.clear();
      for (int v : br.witness) best.witness.push_back(blk.old_of_new[size_t(v)]);
      std::sort(best.witness.begin(), best.witness.end());
    }
  }
  return best;
}

}  // namespace ctlab
