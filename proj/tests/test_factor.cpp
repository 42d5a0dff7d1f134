#include <doctest.h>

#include <algorithm>

#include "ctlab/factor.hpp"
#include "ctlab/gadget.hpp"
#include "ctlab/gnp.hpp"
#include "ctlab/rng.hpp"

using namespace ctlab;

namespace {

Graph cycle_graph(int n) {
  std::vector<std::pair<int, int>> es;
  for (int i = 0; i < n; ++i) es.emplace_back(i, (i + 1) % n);
  return Graph(n, es);
}

Graph complete_graph(int n) {
  std::vector<std::pair<int, int>> es;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) es.emplace_back(i, j);
  return Graph(n, es);
}

// exact-cover oracle: enumerate all t-cycles, then DFS cover lowest vertex
struct CoverOracle {
  const Graph& g;
  int t;
  std::vector<std::vector<int>> all_cycles;

  CoverOracle(const Graph& g_, int t_) : g(g_), t(t_) {
    std::vector<char> allowed(size_t(g.vertex_count()), 1);
    uint64_t work = 0;
    for (int v = 0; v < g.vertex_count(); ++v) {
      auto cs = cycles_through(g, v, t, allowed, nullptr, &work, 1'000'000'000);
      for (auto& c : cs) {
        std::vector<int> s = c;
        std::sort(s.begin(), s.end());
        if (s[0] == v) all_cycles.push_back(s);  // record once, by min vertex
      }
    }
    std::sort(all_cycles.begin(), all_cycles.end());
    all_cycles.erase(std::unique(all_cycles.begin(), all_cycles.end()),
                     all_cycles.end());
  }

  bool cover(std::vector<char>& used, int from) {
    int v = from;
    while (v < g.vertex_count() && used[size_t(v)]) ++v;
    if (v >= g.vertex_count()) return true;
    for (const auto& c : all_cycles) {
      if (c[0] != v) continue;
      bool free = true;
      for (int x : c)
        if (used[size_t(x)]) {
          free = false;
          break;
        }
      if (!free) continue;
      for (int x : c) used[size_t(x)] = 1;
      if (cover(used, v + 1)) return true;
      for (int x : c) used[size_t(x)] = 0;
    }
    return false;
  }

  bool has_factor() {
    std::vector<char> used(size_t(g.vertex_count()), 0);
    return cover(used, 0);
  }
};

}  // namespace

TEST_CASE("triangle factors on small graphs") {
  auto res = find_ct_factor(complete_graph(6), 3);
  REQUIRE(res.status == SearchStatus::Found);
  CHECK(res.certificate->cycles.size() == 2);

  auto none = find_ct_factor(cycle_graph(6), 3);
  CHECK(none.status == SearchStatus::None);

  CHECK_THROWS_AS(find_ct_factor(complete_graph(5), 3), std::invalid_argument);
}

TEST_CASE("verify_factor accepts valid and rejects overlapping certificates") {
  auto c4 = cycle_graph(4);
  FactorCertificate own{4, {{0, 1, 2, 3}}};
  CHECK(verify_factor(c4, own, 4, {0, 1, 2, 3}));

  FactorCertificate overlap{3, {{0, 1, 2}, {2, 3, 0}}};
  CHECK_FALSE(verify_factor(complete_graph(4), overlap, 3, {0, 1, 2, 3}));

  FactorCertificate nonedge{3, {{0, 1, 3}}};
  CHECK_FALSE(verify_factor(cycle_graph(4), nonedge, 3, {0, 1, 3}));

  auto k9 = complete_graph(9);
  auto r = find_ct_factor(k9, 3);
  REQUIRE(r.status == SearchStatus::Found);
  std::vector<int> all(9);
  for (int i = 0; i < 9; ++i) all[size_t(i)] = i;
  CHECK(verify_factor(k9, *r.certificate, 3, all));
}

TEST_CASE("switcher(3,2) minus v: certificate with 15 triangles") {
  auto sw = build_switcher(3, 2);
  std::vector<int> keep;
  for (int v = 0; v < sw.graph.vertex_count(); ++v)
    if (v != sw.role_vertex("v")) keep.push_back(v);
  FactorSearchOptions opts;
  opts.restrict_to = keep;
  opts.hint_cycles = sw.cycle_list;
  auto res = find_ct_factor(sw.graph, 3, opts);
  REQUIRE(res.status == SearchStatus::Found);
  CHECK(res.certificate->cycles.size() == 15);
}

TEST_CASE("canonical copy counts") {
  // complete blow-up of C_3 with parts of size 2: all 8 triples close
  std::vector<std::vector<int>> parts = {{0, 1}, {2, 3}, {4, 5}};
  std::vector<std::pair<int, int>> es;
  for (int a : parts[0])
    for (int b : parts[1]) es.emplace_back(a, b);
  for (int a : parts[1])
    for (int b : parts[2]) es.emplace_back(a, b);
  for (int a : parts[2])
    for (int b : parts[0]) es.emplace_back(a, b);
  PartitionedGraph pg(Graph(6, es), parts);
  CHECK(enumerate_canonical_copies(pg, {0, 1, 2}) == 8);

  // one pair edgeless
  std::vector<std::pair<int, int>> es2;
  for (int a : parts[0])
    for (int b : parts[1]) es2.emplace_back(a, b);
  for (int a : parts[1])
    for (int b : parts[2]) es2.emplace_back(a, b);
  PartitionedGraph pg2(Graph(6, es2), parts);
  CHECK(enumerate_canonical_copies(pg2, {0, 1, 2}) == 0);

  // singleton parts, all edges present: exactly one canonical copy
  PartitionedGraph pg3(Graph(3, {{0, 1}, {1, 2}, {2, 0}}), {{0}, {1}, {2}});
  CHECK(enumerate_canonical_copies(pg3, {0, 1, 2}) == 1);
}

TEST_CASE("canonical restriction: one vertex per part") {
  std::vector<std::vector<int>> parts = {{0, 1, 2}, {3, 4, 5}, {6, 7, 8}};
  std::vector<std::pair<int, int>> es;
  for (int a : parts[0])
    for (int b : parts[1]) es.emplace_back(a, b);
  for (int a : parts[1])
    for (int b : parts[2]) es.emplace_back(a, b);
  for (int a : parts[2])
    for (int b : parts[0]) es.emplace_back(a, b);
  Graph g(9, es);
  FactorSearchOptions opts;
  opts.canonical_parts = parts;
  auto res = find_ct_factor(g, 3, opts);
  REQUIRE(res.status == SearchStatus::Found);
  for (const auto& cyc : res.certificate->cycles) {
    std::vector<int> part_of(9, 0);
    for (int p = 0; p < 3; ++p)
      for (int v : parts[size_t(p)]) part_of[size_t(v)] = p;
    std::vector<char> seen(3, 0);
    for (int v : cyc) {
      CHECK_FALSE(seen[size_t(part_of[size_t(v)])]);
      seen[size_t(part_of[size_t(v)])] = 1;
    }
  }
}

TEST_CASE("soundness fuzz: every returned certificate verifies") {
  for (uint64_t seed = 0; seed < 60; ++seed) {
    int n = 6 + 3 * int(seed % 4);
    auto g = sample_gnp_serial(n, Rat(1, 2), counter_hash(5, seed, 0)).graph;
    auto res = find_ct_factor(g, 3);
    if (res.status == SearchStatus::Found) {
      std::vector<int> all((size_t)(n));
      for (int i = 0; i < n; ++i) all[size_t(i)] = i;
      CHECK(verify_factor(g, *res.certificate, 3, all));
    }
  }
}

TEST_CASE("completeness at desk scale vs exact-cover oracle") {
  int agree = 0;
  for (uint64_t seed = 0; seed < 50; ++seed) {
    int n = 6 + 3 * int(seed % 3);  // 6, 9, 12
    for (int t : {3, 4}) {
      if (n % t != 0) continue;
      auto g = sample_gnp_serial(n, Rat(2, 5), counter_hash(31, seed, uint64_t(t))).graph;
      auto res = find_ct_factor(g, t);
      REQUIRE(res.status != SearchStatus::Unknown);
      CoverOracle oracle(g, t);
      CHECK((res.status == SearchStatus::Found) == oracle.has_factor());
      ++agree;
    }
  }
  CHECK(agree > 20);
}

TEST_CASE("budget exhaustion reports unknown") {
  auto g = sample_gnp_serial(30, Rat(1, 2), 123).graph;
  FactorSearchOptions opts;
  opts.work_budget = 50;  // absurdly small
  auto res = find_ct_factor(g, 3, opts);
  CHECK(res.status == SearchStatus::Unknown);
}
