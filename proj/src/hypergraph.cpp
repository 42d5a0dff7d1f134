#include "ctlab/hypergraph.hpp"

#include <algorithm>
#include <stdexcept>

namespace ctlab {
namespace {

struct BudgetExceeded {};

struct SatSearch {
  const Hypergraph& h;
  const std::vector<int>& A;
  std::vector<char> used;
  std::vector<int> chosen;
  std::vector<std::vector<int>> edges_at;  // A-vertex -> incident edge ids
  uint64_t work = 0, budget;

  SatSearch(const Hypergraph& h_, const std::vector<int>& A_, uint64_t b)
      : h(h_), A(A_), budget(b) {
    used.assign(size_t(h.vertex_count), 0);
    edges_at.assign(A.size(), {});
    std::vector<int> apos(size_t(h.vertex_count), -1);
    for (size_t i = 0; i < A.size(); ++i) apos[size_t(A[i])] = int(i);
    for (size_t ei = 0; ei < h.edges.size(); ++ei) {
      int hits = 0, pos = -1;
      for (int v : h.edges[ei]) {
        if (v < 0 || v >= h.vertex_count)
          throw std::invalid_argument("hypergraph: vertex out of range");
        if (apos[size_t(v)] >= 0) {
          ++hits;
          pos = apos[size_t(v)];
        }
      }
      if (hits != 1)
        throw std::invalid_argument("hypergraph: edge must meet A exactly once");
      edges_at[size_t(pos)].push_back(int(ei));
    }
  }

  bool go(size_t i) {
    if (++work > budget) throw BudgetExceeded{};
    if (i == A.size()) return true;
    for (int ei : edges_at[i]) {
      const auto& e = h.edges[size_t(ei)];
      bool free = true;
      for (int v : e)
        if (used[size_t(v)]) {
          free = false;
          break;
        }
      if (!free) continue;
      for (int v : e) used[size_t(v)] = 1;
      chosen.push_back(ei);
      if (go(i + 1)) return true;
      chosen.pop_back();
      for (int v : e) used[size_t(v)] = 0;
    }
    return false;
  }
};

// Minimum hitting set on the B-parts of a family; returns true if some
// hitting set of size <= q exists.
bool hitting_set_leq(const std::vector<std::vector<int>>& fam, size_t from,
                     std::vector<char>& hit, int q, uint64_t& work) {
  if (++work > 200'000'000ULL)
    throw std::runtime_error("check_haxell_condition: work limit");
  size_t i = from;
  while (i < fam.size()) {
    bool covered = false;
    for (int v : fam[i])
      if (hit[size_t(v)]) {
        covered = true;
        break;
      }
    if (!covered) break;
    ++i;
  }
  if (i == fam.size()) return true;
  if (q == 0) return false;
  for (int v : fam[i]) {
    if (hit[size_t(v)]) continue;
    hit[size_t(v)] = 1;
    if (hitting_set_leq(fam, i + 1, hit, q - 1, work)) {
      hit[size_t(v)] = 0;
      return true;
    }
    hit[size_t(v)] = 0;
  }
  return false;
}

}  // namespace

MatchResult find_saturating_matching(const Hypergraph& h, const std::vector<int>& side_A,
                                     uint64_t work_budget) {
  SatSearch s(h, side_A, work_budget);
  MatchResult res;
  try {
    if (s.go(0)) {
      Matching m;
      m.edge_indices = s.chosen;
      for (int ei : s.chosen)
        for (int v : h.edges[size_t(ei)]) m.saturates.push_back(v);
      std::sort(m.saturates.begin(), m.saturates.end());
      res.status = MatchStatus::Found;
      res.matching = std::move(m);
    } else {
      res.status = MatchStatus::None;
    }
  } catch (BudgetExceeded&) {
    res.status = MatchStatus::Unknown;
  }
  return res;
}

bool check_haxell_condition(const Hypergraph& h, const std::vector<int>& side_A) {
  if (h.edges.empty()) return side_A.empty();
  size_t ell = h.edges[0].size();
  for (const auto& e : h.edges)
    if (e.size() != ell)
      throw std::invalid_argument("check_haxell_condition: not uniform");
  if (side_A.size() > 12)
    throw std::invalid_argument("check_haxell_condition: |A| over cap 12");
  std::vector<char> inA(size_t(h.vertex_count), 0);
  for (int v : side_A) inA[size_t(v)] = 1;
  int bcount = 0;
  std::vector<int> bpos(size_t(h.vertex_count), -1);
  for (int v = 0; v < h.vertex_count; ++v)
    if (!inA[size_t(v)]) bpos[size_t(v)] = bcount++;
  if (bcount > 18)
    throw std::invalid_argument("check_haxell_condition: |B| over cap 18");

  std::vector<int> apos(size_t(h.vertex_count), -1);
  for (size_t i = 0; i < side_A.size(); ++i) apos[size_t(side_A[i])] = int(i);

  // Per edge: which A-vertex, and its B-part remapped.
  std::vector<int> edge_a(h.edges.size(), -1);
  std::vector<std::vector<int>> edge_b(h.edges.size());
  for (size_t ei = 0; ei < h.edges.size(); ++ei) {
    for (int v : h.edges[ei]) {
      if (apos[size_t(v)] >= 0) {
        if (edge_a[ei] != -1)
          throw std::invalid_argument("check_haxell_condition: edge meets A twice");
        edge_a[ei] = apos[size_t(v)];
      } else {
        edge_b[ei].push_back(bpos[size_t(v)]);
      }
    }
    if (edge_a[ei] == -1)
      throw std::invalid_argument("check_haxell_condition: edge misses A");
  }

  long long factor = 2 * (long long)ell - 3;
  uint64_t work = 0;
  for (uint32_t amask = 1; amask < (1u << side_A.size()); ++amask) {
    int asz = __builtin_popcount(amask);
    long long q = factor * (asz - 1);
    // Condition fails iff the B-parts of edges meeting A' admit a hitting
    // set of size <= q (then B' = that hitting set blocks every edge).
    std::vector<std::vector<int>> fam;
    for (size_t ei = 0; ei < h.edges.size(); ++ei)
      if (amask >> edge_a[ei] & 1) fam.push_back(edge_b[ei]);
    if (fam.empty()) return false;  // no edge meets A' at all
    long long q_eff = std::min<long long>(q, bcount);
    std::vector<char> hit(size_t(bcount), 0);
    if (hitting_set_leq(fam, 0, hit, int(q_eff), work)) return false;
  }
  return true;
}

std::optional<std::vector<int>> find_perfect_matching(int vertex_count,
                                                      const std::vector<std::vector<int>>& edges,
                                                      const std::vector<char>& removed,
                                                      uint64_t work_budget) {
  std::vector<char> used = removed;
  used.resize(size_t(vertex_count), 0);
  std::vector<std::vector<int>> at((size_t)vertex_count);
  for (size_t ei = 0; ei < edges.size(); ++ei)
    for (int v : edges[ei]) at[size_t(v)].push_back(int(ei));

  std::vector<int> chosen;
  uint64_t work = 0;

  struct Rec {
    int n;
    const std::vector<std::vector<int>>& edges;
    std::vector<std::vector<int>>& at;
    std::vector<char>& used;
    std::vector<int>& chosen;
    uint64_t& work;
    uint64_t budget;

    bool go(int from) {
      if (++work > budget) throw BudgetExceeded{};
      int v = from;
      while (v < n && used[size_t(v)]) ++v;
      if (v >= n) return true;
      for (int ei : at[size_t(v)]) {
        bool free = true;
        for (int u : edges[size_t(ei)])
          if (used[size_t(u)]) {
            free = false;
            break;
          }
        if (!free) continue;
        for (int u : edges[size_t(ei)]) used[size_t(u)] = 1;
        chosen.push_back(ei);
        if (go(v + 1)) return true;
        chosen.pop_back();
        for (int u : edges[size_t(ei)]) used[size_t(u)] = 0;
      }
      return false;
    }
  } rec{vertex_count, edges, at, used, chosen, work, work_budget};

  try {
    if (rec.go(0)) return chosen;
  } catch (BudgetExceeded&) {
    throw std::runtime_error("find_perfect_matching: work budget exhausted");
  }
  return std::nullopt;
}

}  // namespace ctlab
