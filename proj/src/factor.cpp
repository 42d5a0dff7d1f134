#include "ctlab/factor.hpp"

#include <algorithm>
#include <stdexcept>

namespace ctlab {
namespace {

struct BudgetExceeded {};

// Meet-in-the-middle: an a-step arm and a b-step arm from the pivot,
// a + b = t - 1, joined by an edge between arm endpoints.
struct CycleEnum {
  const Graph& g;
  int pivot, t, a, b;
  const std::vector<char>& allowed;
  const std::vector<std::vector<int>>* parts;  // cyclic order, pivot part first
  uint64_t* work;
  uint64_t work_limit;
  std::vector<char> part_mask_scratch;

  std::vector<std::vector<int>> arm_a;  // paths excluding pivot, length a
  std::vector<std::vector<int>> out;
  size_t max_cycles;

  // part membership by position for canonical walks
  std::vector<std::vector<char>> in_part;

  CycleEnum(const Graph& g_, int pivot_, int t_, const std::vector<char>& allowed_,
            const std::vector<std::vector<int>>* parts_, uint64_t* work_,
            uint64_t work_limit_, size_t max_cycles_)
      : g(g_), pivot(pivot_), t(t_), allowed(allowed_), parts(parts_), work(work_),
        work_limit(work_limit_), max_cycles(max_cycles_) {
    a = (t - 1 + 1) / 2;
    b = (t - 1) / 2;
    if (parts) {
      in_part.assign(size_t(t), std::vector<char>(size_t(g.vertex_count()), 0));
      for (int i = 0; i < t; ++i)
        for (int v : (*parts)[size_t(i)]) in_part[size_t(i)][size_t(v)] = 1;
    }
  }

  void charge() {
    if (++*work > work_limit) throw BudgetExceeded{};
  }

  bool ok_at(int v, int pos) const {  // pos in 1..t-1 along the +direction
    if (!allowed[size_t(v)]) return false;
    if (parts) return in_part[size_t(pos)][size_t(v)] != 0;
    return true;
  }

  void grow_a(std::vector<int>& path) {
    if (int(path.size()) == a) {
      arm_a.push_back(path);
      return;
    }
    int cur = path.empty() ? pivot : path.back();
    int pos = int(path.size()) + 1;
    for (int w : g.neighbors(cur)) {
      charge();
      if (!ok_at(w, pos) || w == pivot) continue;
      if (std::find(path.begin(), path.end(), w) != path.end()) continue;
      path.push_back(w);
      grow_a(path);
      path.pop_back();
    }
  }

  void grow_b(std::vector<int>& path, const std::vector<std::vector<int>*>& by_end) {
    if (out.size() >= max_cycles) return;
    if (int(path.size()) == b) {
      int yb = path.empty() ? pivot : path.back();
      for (int w : g.neighbors(yb)) {
        charge();
        if (out.size() >= max_cycles) return;
        auto* lst = by_end[size_t(w)];
        if (!lst) continue;
        for (size_t idx = 0; idx < lst->size(); idx += size_t(a)) {
          const int* ap = lst->data() + idx;
          // disjointness of arms
          bool clash = false;
          for (int i = 0; i < a && !clash; ++i)
            for (int j = 0; j < b && !clash; ++j)
              if (ap[i] == path[size_t(j)]) clash = true;
          if (clash) continue;
          if (!parts && b > 0 && ap[0] > path[0]) continue;  // orientation dedupe
          std::vector<int> cyc;
          cyc.reserve(size_t(t));
          cyc.push_back(pivot);
          for (int i = 0; i < a; ++i) cyc.push_back(ap[i]);
          for (int j = b - 1; j >= 0; --j) cyc.push_back(path[size_t(j)]);
          out.push_back(std::move(cyc));
        }
      }
      return;
    }
    int cur = path.empty() ? pivot : path.back();
    int pos = t - (int(path.size()) + 1);  // positions t-1, t-2, ...
    for (int w : g.neighbors(cur)) {
      charge();
      if (!ok_at(w, pos) || w == pivot) continue;
      if (std::find(path.begin(), path.end(), w) != path.end()) continue;
      path.push_back(w);
      grow_b(path, by_end);
      path.pop_back();
    }
  }

  std::vector<std::vector<int>> run() {
    std::vector<int> path;
    grow_a(path);
    // flatten a-arms into per-endpoint buckets
    std::vector<std::vector<int>> bucket_store((size_t)(g.vertex_count()));
    std::vector<std::vector<int>*> by_end(size_t(g.vertex_count()), nullptr);
    for (const auto& p : arm_a) {
      auto& bk = bucket_store[size_t(p.back())];
      for (int v : p) bk.push_back(v);
      by_end[size_t(p.back())] = &bk;
    }
    path.clear();
    grow_b(path, by_end);
    return std::move(out);
  }
};

struct Solver {
  const Graph& g;
  int t;
  const FactorSearchOptions& opts;
  std::vector<char> in_target;
  std::vector<char> covered;  // true = not available
  std::vector<std::vector<int>> cycles_out;
  std::vector<std::vector<size_t>> hints_at;  // vertex -> hint indices
  std::vector<std::vector<int>> hint_sorted;  // sorted tuples for dedupe
  const std::vector<std::vector<int>>* canon = nullptr;
  std::vector<std::vector<std::vector<int>>> canon_rot;  // rotations per part
  std::vector<int> part_of;
  uint64_t work = 0;
  int n;

  explicit Solver(const Graph& g_, int t_, const FactorSearchOptions& o)
      : g(g_), t(t_), opts(o), n(g_.vertex_count()) {
    in_target.assign(size_t(n), 1);
    if (opts.restrict_to) {
      in_target.assign(size_t(n), 0);
      for (int v : *opts.restrict_to) in_target[size_t(v)] = 1;
    }
    covered.assign(size_t(n), 0);
    for (int v = 0; v < n; ++v)
      if (!in_target[size_t(v)]) covered[size_t(v)] = 1;

    if (opts.canonical_parts) {
      canon = &*opts.canonical_parts;
      part_of.assign(size_t(n), -1);
      for (int i = 0; i < t; ++i)
        for (int v : (*canon)[size_t(i)]) part_of[size_t(v)] = i;
      canon_rot.resize(size_t(t));
      for (int r = 0; r < t; ++r) {
        canon_rot[size_t(r)].resize(size_t(t));
        for (int i = 0; i < t; ++i)
          canon_rot[size_t(r)][size_t(i)] = (*canon)[size_t((r + i) % t)];
      }
    }

    hints_at.assign(size_t(n), {});
    for (const auto& hc : opts.hint_cycles) {
      if (int(hc.size()) != t) continue;
      bool ok = true;
      for (int v : hc)
        if (v < 0 || v >= n || !in_target[size_t(v)]) ok = false;
      if (!ok) continue;
      size_t idx = hint_sorted.size();
      std::vector<int> s = hc;
      std::sort(s.begin(), s.end());
      hint_sorted.push_back(std::move(s));
      for (int v : hc) hints_at[size_t(v)].push_back(idx);
      cycles_store_.push_back(hc);
    }
  }

  void charge(uint64_t c = 1) {
    work += c;
    if (work > opts.work_budget) throw BudgetExceeded{};
  }

  // Every component of the uncovered subgraph must have size divisible by t.
  bool components_divisible() {
    static thread_local std::vector<int> stack;
    static thread_local std::vector<char> seen;
    seen.assign(size_t(n), 0);
    for (int s = 0; s < n; ++s) {
      if (covered[size_t(s)] || seen[size_t(s)]) continue;
      long long size = 0;
      stack.clear();
      stack.push_back(s);
      seen[size_t(s)] = 1;
      while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        ++size;
        charge();
        for (int y : g.neighbors(x))
          if (!covered[size_t(y)] && !seen[size_t(y)]) {
            seen[size_t(y)] = 1;
            stack.push_back(y);
          }
      }
      if (size % t != 0) return false;
    }
    return true;
  }

  bool all_uncovered(const std::vector<int>& cyc) const {
    for (int v : cyc)
      if (covered[size_t(v)]) return false;
    return true;
  }

  bool is_cycle_in_g(const std::vector<int>& cyc) const {
    for (int i = 0; i < t; ++i)
      if (!g.has_edge(cyc[size_t(i)], cyc[size_t((i + 1) % t)])) return false;
    return true;
  }

  std::vector<std::vector<int>> enumerate_at(int pivot) {
    std::vector<char> allowed(size_t(n), 0);
    for (int v = 0; v < n; ++v) allowed[size_t(v)] = !covered[size_t(v)];
    const std::vector<std::vector<int>>* parts_seq = nullptr;
    std::vector<std::vector<int>> rot;
    if (canon) {
      int p = part_of[size_t(pivot)];
      if (p < 0) throw std::invalid_argument("find_ct_factor: vertex outside parts");
      parts_seq = &canon_rot[size_t(p)];
    }
    CycleEnum ce(g, pivot, t, allowed, parts_seq, &work, opts.work_budget, SIZE_MAX);
    return ce.run();
  }

  bool solve(int from) {
    int pivot = from;
    while (pivot < n && covered[size_t(pivot)]) ++pivot;
    if (pivot >= n) return true;

    // hints first, in recorded order
    std::vector<const std::vector<int>*> tried;
    for (size_t hi : hints_at[size_t(pivot)]) {
      const auto& cyc = cycles_store_[hi];
      if (!all_uncovered(cyc) || !is_cycle_in_g(cyc)) continue;
      if (canon && !hint_is_canonical(cyc)) continue;
      tried.push_back(&hint_sorted[hi]);
      if (try_cycle(cyc, pivot)) return true;
    }
    auto cands = enumerate_at(pivot);
    for (const auto& cyc : cands) {
      if (!tried.empty()) {
        std::vector<int> s = cyc;
        std::sort(s.begin(), s.end());
        bool dup = false;
        for (auto* hs : tried)
          if (*hs == s) dup = true;
        if (dup) continue;
      }
      if (try_cycle(cyc, pivot)) return true;
    }
    return false;
  }

  bool hint_is_canonical(const std::vector<int>& cyc) const {
    // one vertex per part, consecutive along the cyclic order in some direction
    int p0 = part_of[size_t(cyc[0])];
    if (p0 < 0) return false;
    bool fwd = true, bwd = true;
    for (int i = 0; i < t; ++i) {
      int pi = part_of[size_t(cyc[size_t(i)])];
      if (pi < 0) return false;
      if (pi != (p0 + i) % t) fwd = false;
      if (pi != ((p0 - i) % t + t) % t) bwd = false;
    }
    return fwd || bwd;
  }

  bool try_cycle(const std::vector<int>& cyc, int pivot) {
    charge(uint64_t(t));
    for (int v : cyc) covered[size_t(v)] = 1;
    bool ok = components_divisible() && solve(pivot);
    if (ok) {
      cycles_out.push_back(cyc);
      return true;
    }
    for (int v : cyc) covered[size_t(v)] = 0;
    return false;
  }

 private:
  std::vector<std::vector<int>> cycles_store_;
};

}  // namespace

std::vector<int> FactorCertificate::covered() const {
  std::vector<int> all;
  for (const auto& c : cycles) all.insert(all.end(), c.begin(), c.end());
  return sorted_unique(std::move(all));
}

std::vector<std::vector<int>> cycles_through(const Graph& g, int pivot, int t,
                                             const std::vector<char>& allowed,
                                             const std::vector<std::vector<int>>* parts,
                                             uint64_t* work, uint64_t work_limit,
                                             size_t max_cycles) {
  CycleEnum ce(g, pivot, t, allowed, parts, work, work_limit, max_cycles);
  try {
    return ce.run();
  } catch (BudgetExceeded&) {
    throw std::runtime_error("cycles_through: work budget exhausted");
  }
}

FactorSearchResult find_ct_factor(const Graph& g, int t, const FactorSearchOptions& opts) {
  if (t < 3) throw std::invalid_argument("find_ct_factor: t < 3");
  long long target_size = opts.restrict_to
                              ? (long long)opts.restrict_to->size()
                              : g.vertex_count();
  if (target_size % t != 0)
    throw std::invalid_argument("find_ct_factor: target size not divisible by t");

  Solver s(g, t, opts);
  FactorSearchResult res;
  try {
    bool ok = s.components_divisible() && s.solve(0);
    res.work_used = s.work;
    if (ok) {
      std::reverse(s.cycles_out.begin(), s.cycles_out.end());
      res.status = SearchStatus::Found;
      res.certificate = FactorCertificate{t, std::move(s.cycles_out)};
    } else {
      res.status = SearchStatus::None;
    }
  } catch (BudgetExceeded&) {
    res.status = SearchStatus::Unknown;
    res.work_used = s.work;
  }
  return res;
}

bool verify_factor(const Graph& g, const FactorCertificate& cert, int t,
                   const std::vector<int>& required_cover) {
  std::vector<char> seen(size_t(g.vertex_count()), 0);
  for (const auto& cyc : cert.cycles) {
    if (int(cyc.size()) != t) return false;
    for (int v : cyc) {
      if (v < 0 || v >= g.vertex_count()) return false;
      if (seen[size_t(v)]) return false;  // overlap
      seen[size_t(v)] = 1;
    }
    for (int i = 0; i < t; ++i)
      if (!g.has_edge(cyc[size_t(i)], cyc[size_t((i + 1) % t)])) return false;
  }
  std::vector<int> covered = cert.covered();
  std::vector<int> req = sorted_unique(required_cover);
  return std::includes(covered.begin(), covered.end(), req.begin(), req.end());
}

uint64_t enumerate_canonical_copies(const PartitionedGraph& pg,
                                    const std::vector<int>& part_indices) {
  int t = int(part_indices.size());
  if (t < 3) throw std::invalid_argument("enumerate_canonical_copies: t < 3");
  const Graph& g = pg.graph;
  uint64_t count = 0;
  std::vector<int> pick(size_t(t), -1);
  // DFS over part positions; close the cycle with an edge back to pick[0].
  std::vector<std::vector<char>> member(size_t(t),
                                        std::vector<char>(size_t(g.vertex_count()), 0));
  for (int i = 0; i < t; ++i)
    for (int v : pg.parts[size_t(part_indices[size_t(i)])])
      member[size_t(i)][size_t(v)] = 1;

  struct Rec {
    int t;
    const Graph& g;
    std::vector<std::vector<char>>& member;
    std::vector<int>& pick;
    uint64_t count = 0;
    void go(int pos) {
      if (pos == t) {
        if (g.has_edge(pick[size_t(t - 1)], pick[0])) ++count;
        return;
      }
      for (int w : g.neighbors(pick[size_t(pos - 1)]))
        if (member[size_t(pos)][size_t(w)]) {
          pick[size_t(pos)] = w;
          go(pos + 1);
        }
    }
  } rec{t, g, member, pick};

  for (int v : pg.parts[size_t(part_indices[0])]) {
    pick[0] = v;
    rec.go(1);
  }
  count = rec.count;
  return count;
}

}  // namespace ctlab
