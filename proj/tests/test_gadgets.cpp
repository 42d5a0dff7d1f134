#include <doctest.h>

#include "ctlab/factor.hpp"
#include "ctlab/gadget.hpp"
#include "ctlab/two_density.hpp"

using namespace ctlab;

namespace {

long long tree_size(int t, int k) {  // sum of (t-1)^i, i = 0..k+1
  long long s = 0, pw = 1;
  for (int i = 0; i <= k + 1; ++i) {
    s += pw;
    pw *= (t - 1);
  }
  return s;
}

long long tree_cycles(int t, int k) {
  long long s = 0, pw = 1;
  for (int i = 0; i <= k; ++i) {
    s += pw;
    pw *= (t - 1);
  }
  return s;
}

bool cycles_are_real(const RootedGadget& g) {
  for (const auto& c : g.cycle_list) {
    if (int(c.size()) != g.t) return false;
    for (size_t i = 0; i < c.size(); ++i)
      if (!g.graph.has_edge(c[i], c[(i + 1) % c.size()])) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("ct-tree level counts and root degree") {
  auto g = build_ct_tree(3, 2);
  CHECK(g.graph.vertex_count() == 15);
  CHECK(g.cycle_list.size() == 7);
  CHECK(g.graph.vertex_count() == tree_size(3, 2));
  CHECK((long long)g.cycle_list.size() == tree_cycles(3, 2));
  CHECK(g.graph.degree(g.role_vertex("u[0,1]")) == 2);

  auto g42 = build_ct_tree(4, 2);
  CHECK(g42.graph.vertex_count() == 40);
  CHECK(g42.cycle_list.size() == 13);
  CHECK(g42.graph.degree(g42.role_vertex("u[0,1]")) == 2);

  for (auto [t, k] : std::vector<std::pair<int, int>>{{3, 1}, {5, 2}, {6, 2}}) {
    auto gg = build_ct_tree(t, k);
    CHECK(gg.graph.vertex_count() == tree_size(t, k));
    CHECK(gg.graph.degree(gg.role_vertex("u[0,1]")) == 2);
    CHECK(cycles_are_real(gg));
  }
  CHECK_THROWS_AS(build_ct_tree(2, 2), std::invalid_argument);
  CHECK_THROWS_AS(build_ct_tree(3, 0), std::invalid_argument);
}

TEST_CASE("ladder vertex counts and parity precondition") {
  auto l = build_ladder(2, 3, 7);
  CHECK(l.graph.vertex_count() == 17);  // 4 odd rows of 2, 3 even rows of 3
  CHECK(cycles_are_real(l));
  auto l2 = build_ladder(1, 2, 3);
  CHECK(l2.graph.vertex_count() == 4);
  CHECK_THROWS_AS(build_ladder(2, 3, 4), std::invalid_argument);
}

TEST_CASE("switcher sizes") {
  auto sw = build_switcher(3, 2);
  CHECK(sw.graph.vertex_count() == 46);
  CHECK((sw.graph.vertex_count() - 1) % 3 == 0);
  CHECK(cycles_are_real(sw));

  auto sw42 = build_switcher(4, 2);
  CHECK(sw42.graph.vertex_count() % 4 == 1);

  auto sw53 = build_switcher(5, 3);
  CHECK(sw53.graph.vertex_count() % 5 == 1);
  CHECK(cycles_are_real(sw53));

  CHECK_THROWS_AS(build_switcher(7, 2), std::invalid_argument);
  CHECK_THROWS_AS(build_switcher(3, 1), std::invalid_argument);
}

TEST_CASE("switcher minus either endpoint has a factor (3,2)") {
  auto sw = build_switcher(3, 2);
  for (const char* role : {"v", "v'"}) {
    std::vector<int> keep;
    int drop = sw.role_vertex(role);
    for (int v = 0; v < sw.graph.vertex_count(); ++v)
      if (v != drop) keep.push_back(v);
    FactorSearchOptions opts;
    opts.restrict_to = keep;
    opts.hint_cycles = sw.cycle_list;
    auto res = find_ct_factor(sw.graph, 3, opts);
    REQUIRE(res.status == SearchStatus::Found);
    CHECK(res.certificate->cycles.size() == 15);
    CHECK(verify_factor(sw.graph, *res.certificate, 3, keep));
  }
}

TEST_CASE("absorber sizes, roots, and divisibility") {
  auto ab = build_absorber(3, 2);
  CHECK(ab.graph.vertex_count() == 138);
  CHECK(ab.graph.vertex_count() % 3 == 0);
  CHECK(cycles_are_real(ab));
  // roots pairwise non-adjacent
  for (int i = 1; i <= 3; ++i)
    for (int j = i + 1; j <= 3; ++j)
      CHECK_FALSE(ab.graph.has_edge(ab.role_vertex("r" + std::to_string(i)),
                                    ab.role_vertex("r" + std::to_string(j))));
}

TEST_CASE("fconn contraction counts and 2-density (3,2)") {
  auto ab = build_absorber(3, 2);
  auto fc = contract_fconn(ab);
  CHECK(fc.graph.vertex_count() == 120);  // 138 - 3*(7-1)
  CHECK(fc.kind == GadgetKind::Fconn);
  CHECK_THROWS_AS(contract_fconn(fc), std::invalid_argument);

  auto m2 = two_density_flow(fc.graph);
  CHECK(m2.value <= Rat(2));

  auto fm = remove_root_trees(ab);
  CHECK(fm.graph.vertex_count() == 138 - 3 * 7);
  CHECK(fm.kind == GadgetKind::FabsMinus);
}

TEST_CASE("blow-up labeling is canonical along defining cycles") {
  // a single C_t: the tree with k=... smallest carrier is the compact absorber
  auto sw = build_switcher(3, 2);
  auto labels = blowup_labeling(sw);
  for (const auto& cyc : sw.cycle_list) {
    std::vector<char> seen(3, 0);
    for (int v : cyc) seen[size_t(labels[size_t(v)])] = 1;
    CHECK((seen[0] && seen[1] && seen[2]));
  }
  for (auto [u, v] : sw.graph.edges()) CHECK(labels[size_t(u)] != labels[size_t(v)]);

  auto ab = build_absorber(3, 2);
  auto al = blowup_labeling(ab);
  for (int i = 1; i <= 3; ++i)
    CHECK(al[size_t(ab.role_vertex("r" + std::to_string(i)))] == i - 1);
  for (auto [u, v] : ab.graph.edges()) CHECK(al[size_t(u)] != al[size_t(v)]);

  CHECK_THROWS_AS(blowup_labeling(build_ladder(1, 2, 3)), std::invalid_argument);
}

TEST_CASE("compact absorber structure") {
  for (int t : {3, 4, 5}) {
    auto ca = build_compact_absorber(t);
    CHECK(ca.graph.vertex_count() == t * (t + 1));
    CHECK(cycles_are_real(ca));
    auto labels = blowup_labeling(ca);
    for (int i = 1; i <= t; ++i)
      CHECK(labels[size_t(ca.role_vertex("r" + std::to_string(i)))] == i - 1);

    FactorSearchOptions opts;
    opts.hint_cycles = ca.cycle_list;
    auto full = find_ct_factor(ca.graph, t, opts);
    REQUIRE(full.status == SearchStatus::Found);
    std::vector<int> keep;
    std::vector<char> is_root(size_t(ca.graph.vertex_count()), 0);
    for (int i = 1; i <= t; ++i)
      is_root[size_t(ca.role_vertex("r" + std::to_string(i)))] = 1;
    for (int v = 0; v < ca.graph.vertex_count(); ++v)
      if (!is_root[size_t(v)]) keep.push_back(v);
    FactorSearchOptions o2 = opts;
    o2.restrict_to = keep;
    auto minus = find_ct_factor(ca.graph, t, o2);
    REQUIRE(minus.status == SearchStatus::Found);
    CHECK(verify_factor(ca.graph, *minus.certificate, t, keep));
  }
}
