#include <doctest.h>

#include <algorithm>
#include <set>
#include <stdexcept>

#include "ctlab/gnp.hpp"
#include "ctlab/pipeline.hpp"
#include "ctlab/rng.hpp"

using namespace ctlab;

namespace {

PartitionedGraph complete_blowup(int t, int s) {
  std::vector<std::pair<int, int>> es;
  std::vector<std::vector<int>> parts((size_t)t);
  for (int i = 0; i < t; ++i)
    for (int j = 0; j < s; ++j) parts[size_t(i)].push_back(i * s + j);
  for (int i = 0; i < t; ++i)
    for (int u : parts[size_t(i)])
      for (int v : parts[size_t((i + 1) % t)]) es.emplace_back(u, v);
  return PartitionedGraph(Graph(t * s, es), parts);
}

// Carve + template + plan + embed on a given instance; mirrors the pipeline
// prefix so absorb can be exercised against every balanced Z.
WAbsorber build_wabsorber(const PartitionedGraph& pg, int m, const std::string& kind,
                          uint64_t seed) {
  PipelineConfig cfg;
  cfg.t = pg.t;
  cfg.k = 2;
  cfg.seed = seed;
  cfg.m_override = m;
  cfg.absorber_kind = kind;
  int nt = pg.part_size();
  WAbsorber wabs;
  wabs.t = pg.t;
  wabs.W.resize(size_t(pg.t));
  wabs.X.resize(size_t(pg.t));
  for (int i = 0; i < pg.t; ++i) {
    auto idx = sample_indices(subseed(seed, "carve" + std::to_string(i)), nt, 2 * m);
    for (int j = 0; j < m; ++j)
      wabs.W[size_t(i)].push_back(pg.parts[size_t(i)][size_t(idx[size_t(j)])]);
    for (int j = m; j < 2 * m; ++j)
      wabs.X[size_t(i)].push_back(pg.parts[size_t(i)][size_t(idx[size_t(j)])]);
  }
  wabs.tpl = build_template(pg.t, m, 64000, subseed(seed, "template"));
  wabs.plan = plan_roots(wabs.tpl, wabs.W, wabs.X, subseed(seed, "plan"));
  RootedGadget pattern =
      kind == "full" ? build_absorber(pg.t, cfg.k) : build_compact_absorber(pg.t);
  auto labels = blowup_labeling(pattern);
  std::vector<char> avoid(size_t(pg.graph.vertex_count()), 0);
  for (int i = 0; i < pg.t; ++i) {
    for (int v : wabs.W[size_t(i)]) avoid[size_t(v)] = 1;
    for (int v : wabs.X[size_t(i)]) avoid[size_t(v)] = 1;
  }
  auto er = embed_absorbers(pg, wabs.plan.tuples, pattern, labels, avoid, cfg);
  REQUIRE(er.ok);
  wabs.per_edge = std::move(er.absorbers);
  wabs.pattern_kind = kind;
  return wabs;
}

void check_embedding(const PartitionedGraph& pg, const RootedGadget& pattern,
                     const std::vector<int>& labels, const EmbeddedAbsorber& ea) {
  // injective, edges carried over, labels respected
  std::set<int> image(ea.host_of.begin(), ea.host_of.end());
  CHECK(image.size() == ea.host_of.size());
  for (auto [u, v] : pattern.graph.edges())
    CHECK(pg.graph.has_edge(ea.host_of[size_t(u)], ea.host_of[size_t(v)]));
  for (int u = 0; u < pattern.graph.vertex_count(); ++u)
    CHECK(pg.part_of(ea.host_of[size_t(u)]) == labels[size_t(u)]);
}

}  // namespace

TEST_CASE("embedding the full absorber into a complete blow-up") {
  auto pg = complete_blowup(3, 150);
  PipelineConfig cfg;
  auto pattern = build_absorber(3, 2);
  auto labels = blowup_labeling(pattern);
  std::vector<std::vector<int>> tuples = {{0, 150, 300}};
  std::vector<char> avoid(size_t(pg.graph.vertex_count()), 0);
  auto er = embed_absorbers(pg, tuples, pattern, labels, avoid, cfg);
  REQUIRE(er.ok);
  REQUIRE(er.absorbers.size() == 1);
  check_embedding(pg, pattern, labels, er.absorbers[0]);
  CHECK(er.absorbers[0].roots == std::vector<int>{0, 150, 300});
  // per-part balance of the absorber image
  std::vector<int> per_part(3, 0);
  for (int h : er.absorbers[0].host_of) per_part[size_t(pg.part_of(h))]++;
  CHECK(per_part[0] == per_part[1]);
  CHECK(per_part[1] == per_part[2]);

  // roots in one part: rejected
  std::vector<std::vector<int>> bad = {{0, 1, 300}};
  CHECK_THROWS_AS(embed_absorbers(pg, bad, pattern, labels, avoid, cfg),
                  std::invalid_argument);
}

TEST_CASE("absorb covers A minus Z for every balanced Z (compact, m=1)") {
  auto pg = complete_blowup(3, 30);
  auto wabs = build_wabsorber(pg, 1, "compact", 5);
  auto va = wabs.all_vertices();

  // Z empty: the factor covers all of V(A)
  auto cert0 = absorb(wabs, {});
  CHECK(verify_factor(pg.graph, cert0, 3, va));
  CHECK(cert0.covered() == va);

  // Z = all of W (fully balanced)
  std::vector<int> zfull;
  for (const auto& w : wabs.W) zfull.insert(zfull.end(), w.begin(), w.end());
  auto cert1 = absorb(wabs, zfull);
  std::vector<int> expect;
  std::set<int> zset(zfull.begin(), zfull.end());
  for (int v : va)
    if (!zset.count(v)) expect.push_back(v);
  CHECK(verify_factor(pg.graph, cert1, 3, expect));
  CHECK(cert1.covered() == expect);

  // unbalanced Z rejected
  CHECK_THROWS_AS(absorb(wabs, {wabs.W[0][0]}), std::invalid_argument);
  CHECK_THROWS_AS(absorb(wabs, {pg.parts[0][29]}), std::invalid_argument);
}

TEST_CASE("cover_bulk: complete blow-up tiles fully, edgeless flags") {
  auto pg = complete_blowup(3, 9);
  PipelineConfig cfg;
  auto bulk = cover_bulk(pg, {}, 0, cfg);
  CHECK(bulk.reached_target);
  CHECK(bulk.certificate.cycles.size() == 9);
  for (const auto& l : bulk.leftover_per_part) CHECK(l.empty());

  std::vector<std::vector<int>> parts = {{0, 1}, {2, 3}, {4, 5}};
  PartitionedGraph edgeless(Graph(6, {}), parts);
  auto flagged = cover_bulk(edgeless, {}, 0, cfg);
  CHECK_FALSE(flagged.reached_target);
  CHECK(flagged.certificate.cycles.empty());
}

TEST_CASE("cover_bulk: seeded instance reaches its leftover target") {
  auto pg = sample_blowup_subgraph(3, 30, Rat(1, 2), Rat(1), 77);
  PipelineConfig cfg;
  auto bulk = cover_bulk(pg, {}, 3, cfg);
  CHECK(bulk.reached_target);
  for (const auto& l : bulk.leftover_per_part) CHECK(l.size() <= 3);
  CHECK(bulk.leftover_per_part[0].size() == bulk.leftover_per_part[1].size());
  CHECK(bulk.leftover_per_part[1].size() == bulk.leftover_per_part[2].size());
  std::vector<int> req = bulk.certificate.covered();
  CHECK(verify_factor(pg.graph, bulk.certificate, 3, req));
}

TEST_CASE("match_leftover covers the leftovers using equal W counts") {
  auto pg = complete_blowup(3, 10);
  PipelineConfig cfg;
  std::vector<std::vector<int>> Z = {{0}, {10}, {20}};
  std::vector<std::vector<int>> W = {{1, 2}, {11, 12}, {21, 22}};
  auto cert = match_leftover(pg, Z, W, cfg);
  REQUIRE(cert.cycles.size() == 3);
  CHECK(verify_factor(pg.graph, cert, 3, {0, 10, 20}));
  // aggregate W usage: (t-1)|Z_i| = 2 per part
  std::vector<int> used(3, 0);
  for (const auto& c : cert.cycles)
    for (int v : c)
      for (int i = 0; i < 3; ++i)
        if (std::find(W[size_t(i)].begin(), W[size_t(i)].end(), v) != W[size_t(i)].end())
          used[size_t(i)]++;
  CHECK(used == std::vector<int>{2, 2, 2});

  auto empty = match_leftover(pg, {{}, {}, {}}, W, cfg);
  CHECK(empty.cycles.empty());

  CHECK_THROWS_AS(match_leftover(pg, {{0}, {}, {}}, W, cfg), std::invalid_argument);
}

TEST_CASE("run_pipeline on a complete blow-up") {
  auto pg = complete_blowup(3, 30);
  PipelineConfig cfg;
  cfg.seed = 4;
  cfg.gexp_check = "skip";
  auto res = run_pipeline(pg, cfg);
  REQUIRE(res.status == PipelineStatus::Ok);
  std::vector<int> all(size_t(90));
  for (int i = 0; i < 90; ++i) all[size_t(i)] = i;
  CHECK(verify_factor(pg.graph, *res.certificate, 3, all));
  CHECK(res.certificate->covered() == all);

  // part size not divisible by t
  auto bad = complete_blowup(3, 25);
  auto fail = run_pipeline(bad, cfg);
  CHECK(fail.status == PipelineStatus::Failed);
  CHECK(fail.trace.at("phase").get<std::string>() == "validate");
}

TEST_CASE("run_pipeline on seeded sparse instances") {
  int ok = 0;
  for (uint64_t seed : {1u, 2u, 3u}) {
    auto pg = sample_blowup_subgraph(3, 24, Rat(3, 5), Rat(1), counter_hash(1000, seed, 0));
    PipelineConfig cfg;
    cfg.seed = seed;
    auto res = run_pipeline(pg, cfg);
    if (res.status == PipelineStatus::Ok) {
      ++ok;
      std::vector<int> all(size_t(72));
      for (int i = 0; i < 72; ++i) all[size_t(i)] = i;
      CHECK(verify_factor(pg.graph, *res.certificate, 3, all));
    }
  }
  CHECK(ok >= 2);
}

TEST_CASE("run_pipeline exercises the leftover matching at larger sizes") {
  auto pg = sample_blowup_subgraph(3, 60, Rat(7, 10), Rat(1), 424242);
  PipelineConfig cfg;
  cfg.seed = 9;
  cfg.m_override = 2;
  cfg.rho = Rat(1, 30);
  auto res = run_pipeline(pg, cfg);
  REQUIRE(res.status == PipelineStatus::Ok);
  std::vector<int> all(size_t(180));
  for (int i = 0; i < 180; ++i) all[size_t(i)] = i;
  CHECK(verify_factor(pg.graph, *res.certificate, 3, all));
  CHECK(res.trace.at("leftover_per_part").get<int>() >= 0);
}

TEST_CASE("root discipline: embedded absorbers meet only in shared roots") {
  auto pg = complete_blowup(3, 60);
  auto wabs = build_wabsorber(pg, 2, "compact", 21);
  REQUIRE(wabs.per_edge.size() >= 2);
  for (size_t i = 0; i < wabs.per_edge.size(); ++i)
    for (size_t j = i + 1; j < wabs.per_edge.size(); ++j) {
      std::set<int> a(wabs.per_edge[i].host_of.begin(), wabs.per_edge[i].host_of.end());
      std::set<int> roots_i(wabs.per_edge[i].roots.begin(), wabs.per_edge[i].roots.end());
      std::set<int> roots_j(wabs.per_edge[j].roots.begin(), wabs.per_edge[j].roots.end());
      for (int v : wabs.per_edge[j].host_of)
        if (a.count(v)) {
          CHECK(roots_i.count(v));
          CHECK(roots_j.count(v));
        }
    }
  // |V(A) n V_i| equal across parts
  std::vector<int> per_part(3, 0);
  for (int v : wabs.all_vertices()) per_part[size_t(pg.part_of(v))]++;
  CHECK(per_part[0] == per_part[1]);
  CHECK(per_part[1] == per_part[2]);
}

TEST_CASE("pipeline certificate never double-covers across phases") {
  auto pg = complete_blowup(3, 30);
  PipelineConfig cfg;
  cfg.seed = 11;
  auto res = run_pipeline(pg, cfg);
  REQUIRE(res.status == PipelineStatus::Ok);
  std::vector<int> flat;
  for (const auto& c : res.certificate->cycles)
    flat.insert(flat.end(), c.begin(), c.end());
  std::sort(flat.begin(), flat.end());
  CHECK(std::adjacent_find(flat.begin(), flat.end()) == flat.end());
}
