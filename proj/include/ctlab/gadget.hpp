// Gadget constructions: C_t-trees, ladders, switchers, absorbers, the
// contracted connection graph, and a compact absorber for small hosts.
#pragma once

#include <map>
#include <string>
#include <vector>

#include "ctlab/graph.hpp"

namespace ctlab {

enum class GadgetKind { CtTree, Ladder, Switcher, Absorber, Fconn, FabsMinus, CompactAbsorber };

const char* gadget_kind_name(GadgetKind k);

struct RootedGadget {
  Graph graph;
  GadgetKind kind = GadgetKind::CtTree;
  int t = 0;
  int k = 0;
  std::vector<std::string> role_of;           // per-vertex, "" if unnamed
  std::map<std::string, int> vertex_of_role;  // named vertices, unique roles
  std::vector<std::vector<int>> cycle_list;   // defining t-cycles, oriented
  // Structural vertex groups (switcher trees by level etc.), used by the
  // contraction ops.
  std::map<std::string, std::vector<int>> groups;

  int role_vertex(const std::string& role) const;
};

// Labeled C_t-tree of depth k: levels 0..k+1, one cycle per vertex on
// levels 0..k. Root has degree 2.
RootedGadget build_ct_tree(int t, int k);

// (a,b)-ladder of odd length l; rows alternate widths a (odd rows) and b.
RootedGadget build_ladder(int a, int b, int l);

// Two C_t-trees of depth k whose bottom cycle pairs are k-ladder-connected;
// requires t in {2k-1, 2k}, k >= 2.
RootedGadget build_switcher(int t, int k);

// t-cycle s_1..s_t plus disjoint (s_i, r_i)-switchers.
RootedGadget build_absorber(int t, int k);

// Small absorber: t-cycle s_1..s_t, each s_i and root r_i joined by two
// t-cycles sharing a (t-1)-path. Fits hosts too small for the full gadget.
RootedGadget build_compact_absorber(int t);

// Collapse the depth-(k-1) tree rooted at each r_i to one vertex z_i.
RootedGadget contract_fconn(const RootedGadget& absorber);

// Remove those trees instead of contracting them.
RootedGadget remove_root_trees(const RootedGadget& absorber);

// Greedy part labeling (0..t-1) along defining cycles; every cycle gets all
// t labels. Throws on contradiction (signals a construction bug).
std::vector<int> blowup_labeling(const RootedGadget& gadget);

}  // namespace ctlab
