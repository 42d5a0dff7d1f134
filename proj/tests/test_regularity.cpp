#include <doctest.h>

#include "ctlab/gnp.hpp"
#include "ctlab/regularity.hpp"
#include "ctlab/rng.hpp"

using namespace ctlab;

namespace {

Graph complete_bipartite(int a, int b) {
  std::vector<std::pair<int, int>> es;
  for (int i = 0; i < a; ++i)
    for (int j = 0; j < b; ++j) es.emplace_back(i, a + j);
  return Graph(a + b, es);
}

std::vector<int> iota_vec(int from, int count) {
  std::vector<int> v((size_t)(count));
  for (int i = 0; i < count; ++i) v[size_t(i)] = from + i;
  return v;
}

PartitionedGraph complete_blowup(int t, int s) {
  std::vector<std::pair<int, int>> es;
  std::vector<std::vector<int>> parts((size_t)(t));
  for (int i = 0; i < t; ++i) parts[size_t(i)] = iota_vec(i * s, s);
  for (int i = 0; i < t; ++i) {
    int j = (i + 1) % t;
    for (int u : parts[size_t(i)])
      for (int v : parts[size_t(j)]) es.emplace_back(u, v);
  }
  return PartitionedGraph(Graph(t * s, es), parts);
}

}  // namespace

TEST_CASE("exact regularity checks") {
  RegParams params{Rat(1, 5), Rat(1), Rat(1)};
  auto kb = complete_bipartite(6, 6);
  CHECK(check_regular_exact(kb, iota_vec(0, 6), iota_vec(6, 6), params));

  Graph empty(12, {});
  CHECK(check_regular_exact(empty, iota_vec(0, 6), iota_vec(6, 6), params));

  // 4+4 perfect matching: subset pair density 0 vs overall 1/4
  std::vector<std::pair<int, int>> m;
  for (int i = 0; i < 4; ++i) m.emplace_back(i, 4 + i);
  Graph pm(8, m);
  CHECK_FALSE(check_regular_exact(pm, iota_vec(0, 4), iota_vec(4, 4), params));

  CHECK_THROWS_AS(check_regular_exact(kb, iota_vec(0, 6), iota_vec(6, 6),
                                      RegParams{Rat(0), Rat(1), Rat(1)}),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      check_regular_exact(complete_bipartite(15, 15), iota_vec(0, 15), iota_vec(15, 15), params),
      std::invalid_argument);
}

TEST_CASE("exact lower-regularity checks") {
  RegParams params{Rat(1, 5), Rat(1), Rat(1)};
  auto kb = complete_bipartite(5, 5);
  CHECK(check_lower_regular_exact(kb, iota_vec(0, 5), iota_vec(5, 5), params));

  // planted empty block: X' = {0,1}, Y' = {5,6} has density 0
  std::vector<std::pair<int, int>> es;
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) {
      if (i < 2 && j < 2) continue;
      es.emplace_back(i, 5 + j);
    }
  Graph planted(10, es);
  RegParams tight{Rat(1, 3), Rat(1), Rat(1)};
  CHECK_FALSE(check_lower_regular_exact(planted, iota_vec(0, 5), iota_vec(5, 5), tight));

  // vacuous when eps >= d/p
  std::vector<std::pair<int, int>> one = {{0, 5}};
  Graph sparse(10, one);
  RegParams vac{Rat(1, 2), Rat(1), Rat(1)};
  CHECK(check_lower_regular_exact(sparse, iota_vec(0, 5), iota_vec(5, 5), vac));
}

TEST_CASE("sampled checker finds planted violations and matches exact checks") {
  RegParams params{Rat(1, 5), Rat(1), Rat(1)};
  auto kb = complete_bipartite(20, 20);
  auto v = check_regular_sampled(kb.has_edge(0, 20) ? kb : kb, iota_vec(0, 20),
                                 iota_vec(20, 20), params, 200, 5);
  CHECK_FALSE(v.violation_found);

  // 4+4 matching embedded in a 14+14 pair
  std::vector<std::pair<int, int>> es;
  for (int i = 0; i < 4; ++i) es.emplace_back(i, 14 + i);
  for (int i = 4; i < 14; ++i)
    for (int j = 4; j < 14; ++j) es.emplace_back(i, 14 + j);
  Graph emb(28, es);
  auto verdict =
      check_regular_sampled(emb, iota_vec(0, 14), iota_vec(14, 14), params, 10000, 5);
  CHECK(verdict.violation_found);
  // witness re-verifies against the definition
  Rat d = bipartite_density(emb, iota_vec(0, 14), iota_vec(14, 14));
  Rat dw = bipartite_density(emb, verdict.witness_x, verdict.witness_y);
  Rat gap = dw > d ? dw - d : d - dw;
  CHECK(gap > params.epsilon * params.p);

  CHECK_THROWS_AS(
      check_regular_sampled(emb, iota_vec(0, 14), iota_vec(14, 14), params, 0, 5),
      std::invalid_argument);
}

TEST_CASE("serial and parallel sampled checkers agree") {
  RegParams params{Rat(1, 4), Rat(1, 2), Rat(1)};
  auto g = sample_gnp(40, Rat(1, 3), 99).graph;
  auto a = check_regular_sampled(g, iota_vec(0, 20), iota_vec(20, 20), params, 500, 7);
  auto b = check_regular_sampled_serial(g, iota_vec(0, 20), iota_vec(20, 20), params, 500, 7);
  CHECK(a.violation_found == b.violation_found);
  CHECK(a.trial == b.trial);
  CHECK(a.witness_x == b.witness_x);
  CHECK(a.witness_y == b.witness_y);
}

TEST_CASE("slicing lemma parameter arithmetic") {
  RegParams p1{Rat(1, 100), Rat(1, 2), Rat(1)};
  CHECK(slice_params(p1, Rat(1, 10)).epsilon == Rat(1, 10));
  RegParams p2{Rat(1, 50), Rat(1, 2), Rat(1)};
  CHECK(slice_params(p2, Rat(1, 2)).epsilon == Rat(1, 25));
  CHECK_THROWS_AS(slice_params(p1, Rat(1, 100)), std::invalid_argument);
  CHECK_THROWS_AS(slice_params(p1, Rat(3, 4)), std::invalid_argument);
}

TEST_CASE("expansion profile on complete and broken instances") {
  auto pg = complete_blowup(4, 5);
  RegParams params{Rat(1, 10), Rat(1), Rat(1)};
  auto rep = expansion_profile(pg, 0, 1, Rat(0), params);
  CHECK(rep.pass);
  CHECK(rep.plus[0].size == 5);
  CHECK(rep.minus[0].size == 5);

  // isolated vertex fails for any gamma < 1
  std::vector<std::vector<int>> parts = {{0, 1}, {2, 3}, {4, 5}};
  Graph g(6, {{1, 2}, {3, 4}, {5, 1}});
  PartitionedGraph lonely(g, parts);
  CHECK_FALSE(expansion_profile(lonely, 0, 1, Rat(1, 2), params).pass);

  // seeded sparse instance: report sizes match an independent recount
  auto inst = sample_blowup_subgraph(3, 12, Rat(1, 2), Rat(1), 17);
  RegParams sp{Rat(1, 2), Rat(1, 2), Rat(1)};
  for (int v : {0, 5, 14, 30}) {
    auto r = expansion_profile(inst, v, 2, Rat(1, 2), sp);
    int i0 = inst.part_of(v);
    auto l1 = iterated_neighborhood(inst.graph, v, {inst.parts[size_t(inst.cyc(i0 + 1))]});
    auto l2 = iterated_neighborhood(
        inst.graph, v,
        {inst.parts[size_t(inst.cyc(i0 + 1))], inst.parts[size_t(inst.cyc(i0 + 2))]});
    CHECK(r.plus[0].size == (long long)l1.size());
    CHECK(r.plus[1].size == (long long)l2.size());
  }

  // monotone in gamma
  auto inst2 = sample_blowup_subgraph(3, 15, Rat(3, 5), Rat(1), 23);
  for (int v = 0; v < 45; v += 7) {
    bool small = expansion_profile(inst2, v, 2, Rat(1, 4), sp).pass;
    bool large = expansion_profile(inst2, v, 2, Rat(1, 2), sp).pass;
    if (small) CHECK(large);
  }
}

TEST_CASE("gexp membership: complete blow-ups pass, broken vertices fail the degree clause") {
  for (int t : {3, 4}) {
    auto pg = complete_blowup(t, 8);
    for (const char* eps : {"1/2", "1/10", "1/100"}) {
      RegParams params{rat_parse(eps), Rat(1), Rat(1)};
      auto rep = check_gexp_membership(pg, t, 2, params);
      CHECK(rep.all_pass);
    }
  }

  // delete one vertex's star: that vertex fails the degree clause only
  auto pg = complete_blowup(3, 8);
  Graph g = remove_closed_edge_set(pg.graph, {0});
  PartitionedGraph broken(g, pg.parts);
  RegParams params{Rat(1, 2), Rat(1), Rat(1)};
  auto rep = check_gexp_membership(broken, 3, 2, params);
  CHECK_FALSE(rep.all_pass);
  for (const auto& v : rep.vertices)
    if (v.vertex == 0) CHECK_FALSE(v.degree_ok);

  CHECK_THROWS_AS(check_gexp_membership(pg, 3, 3, params), std::invalid_argument);
}

TEST_CASE("typicality: subsumption and census recount") {
  auto pg = complete_blowup(3, 8);
  RegParams params{Rat(1, 2), Rat(1), Rat(1)};
  auto rep = check_gexp_membership(pg, 3, 2, params);
  REQUIRE(rep.all_pass);
  for (int v = 0; v < pg.graph.vertex_count(); ++v)
    CHECK(check_typicality(pg, v, 3, 2, params));

  // isolated vertex is never typical
  std::vector<std::vector<int>> parts = {{0, 1}, {2, 3}, {4, 5}};
  Graph g(6, {{1, 2}, {3, 4}, {5, 1}, {2, 5}});
  PartitionedGraph lonely(g, parts);
  CHECK_FALSE(check_typicality(lonely, 0, 3, 2, params));

  auto inst = sample_blowup_subgraph(3, 10, Rat(3, 5), Rat(1), 31);
  RegParams sp{Rat(1, 2), Rat(3, 5), Rat(1)};
  auto census = typicality_census(inst, 3, 2, sp);
  auto serial = typicality_census_serial(inst, 3, 2, sp);
  CHECK(census == serial);
  for (int v = 0; v < inst.graph.vertex_count(); ++v)
    CHECK(bool(census[size_t(v)]) == check_typicality(inst, v, 3, 2, sp));
}
