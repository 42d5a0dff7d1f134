#include "ctlab/gadget.hpp"

#include <algorithm>
#include <stdexcept>

namespace ctlab {
namespace {

struct Builder {
  std::vector<std::string> roles;
  std::vector<std::pair<int, int>> edges;
  std::vector<std::vector<int>> cycles;
  std::map<std::string, std::vector<int>> groups;

  int add_vertex(const std::string& role) {
    roles.push_back(role);
    return int(roles.size()) - 1;
  }
  void add_edge(int u, int v) { edges.emplace_back(u, v); }
  void add_cycle(std::vector<int> cyc, bool front = false) {
    // cycle edges are implied
    for (size_t i = 0; i < cyc.size(); ++i)
      add_edge(cyc[i], cyc[(i + 1) % cyc.size()]);
    if (front)
      cycles.insert(cycles.begin(), std::move(cyc));
    else
      cycles.push_back(std::move(cyc));
  }

  RootedGadget finish(GadgetKind kind, int t, int k) {
    RootedGadget g;
    g.graph = Graph(int(roles.size()), edges);
    g.kind = kind;
    g.t = t;
    g.k = k;
    g.role_of = roles;
    for (int v = 0; v < int(roles.size()); ++v)
      if (!roles[size_t(v)].empty()) {
        if (!g.vertex_of_role.emplace(roles[size_t(v)], v).second)
          throw std::logic_error("gadget: duplicate role " + roles[size_t(v)]);
      }
    g.cycle_list = cycles;
    g.groups = groups;
    return g;
  }
};

struct TreePart {
  std::vector<std::vector<int>> levels;  // levels[i] = vertex ids, level i
};

// Levels 0..k+1; cycle anchored at each vertex of levels 0..k. Cycle tuples
// are recorded anchor-first so labels advance by +1 along the tuple.
TreePart grow_tree(Builder& b, int t, int k, const std::string& prefix,
                   const std::string& group_prefix) {
  TreePart tp;
  tp.levels.resize(size_t(k) + 2);
  int root = b.add_vertex(prefix + "[0,1]");
  tp.levels[0] = {root};
  for (int i = 0; i <= k; ++i) {
    for (int j = 1; j <= int(tp.levels[size_t(i)].size()); ++j) {
      int anchor = tp.levels[size_t(i)][size_t(j - 1)];
      std::vector<int> cyc = {anchor};
      for (int c = 1; c <= t - 1; ++c) {
        int lbl = (j - 1) * (t - 1) + c;
        int v = b.add_vertex(prefix + "[" + std::to_string(i + 1) + "," +
                             std::to_string(lbl) + "]");
        tp.levels[size_t(i) + 1].push_back(v);
        cyc.push_back(v);
      }
      b.add_cycle(std::move(cyc));
    }
  }
  if (!group_prefix.empty())
    for (int i = 0; i <= k + 1; ++i)
      b.groups[group_prefix + ".L" + std::to_string(i)] = tp.levels[size_t(i)];
  return tp;
}

// Ladder between two fixed rows. row_first/row_last already exist; interior
// rows are created. Tuples alternate traversal direction so the +1 labeling
// stays consistent from row to row.
void attach_ladder(Builder& b, const std::vector<int>& row_first,
                   const std::vector<int>& row_last, int a, int bw, int len,
                   const std::string& prefix) {
  if (len % 2 == 0 || len < 3) throw std::invalid_argument("ladder length must be odd >= 3");
  if (int(row_first.size()) != a || int(row_last.size()) != a)
    throw std::invalid_argument("ladder: boundary row width mismatch");
  std::vector<std::vector<int>> rows(size_t(len) + 1);
  rows[1] = row_first;
  rows[size_t(len)] = row_last;
  for (int i = 2; i < len; ++i) {
    int w = (i % 2 == 1) ? a : bw;
    for (int j = 1; j <= w; ++j)
      rows[size_t(i)].push_back(
          b.add_vertex(prefix + "[" + std::to_string(i) + "," + std::to_string(j) + "]"));
  }
  // row paths (boundary rows already carry their path edges from the trees)
  for (int i = 2; i < len; ++i)
    for (size_t j = 0; j + 1 < rows[size_t(i)].size(); ++j)
      b.add_edge(rows[size_t(i)][j], rows[size_t(i)][j + 1]);
  for (int i = 1; i < len; ++i) {
    const auto& r1 = rows[size_t(i)];
    const auto& r2 = rows[size_t(i) + 1];
    b.add_edge(r1.front(), r2.front());  // first-column path
    b.add_edge(r1.back(), r2.back());    // last-element path
    std::vector<int> cyc;
    if (i % 2 == 1) {  // row i ascending, row i+1 descending
      cyc.insert(cyc.end(), r1.begin(), r1.end());
      cyc.insert(cyc.end(), r2.rbegin(), r2.rend());
    } else {
      cyc.insert(cyc.end(), r1.rbegin(), r1.rend());
      cyc.insert(cyc.end(), r2.begin(), r2.end());
    }
    // drop duplicate edges silently via Graph set semantics
    b.add_cycle(std::move(cyc));
  }
}

// Body of the switcher build; prefixes allow embedding into an absorber.
void grow_switcher(Builder& b, int t, int k, const std::string& pfx,
                   const std::string& gpfx, int* v_out, int* vp_out) {
  TreePart t1 = grow_tree(b, t, k, pfx + "u", gpfx + ".t1");
  TreePart t2 = grow_tree(b, t, k, pfx + "u'", gpfx + ".t2");
  *v_out = t1.levels[0][0];
  *vp_out = t2.levels[0][0];
  int pairs = 1;
  for (int i = 0; i < k; ++i) pairs *= (t - 1);
  int a1 = k - 1, a2 = t - k;
  int b1 = t - a1, b2 = t - a2;
  int len = 2 * k - 1;
  for (int j = 0; j < pairs; ++j) {
    // children of the j-th level-k anchor, in label order
    auto children = [&](const TreePart& tp) {
      std::vector<int> cs;
      for (int c = 0; c < t - 1; ++c)
        cs.push_back(tp.levels[size_t(k) + 1][size_t(j * (t - 1) + c)]);
      return cs;
    };
    std::vector<int> c1 = children(t1), c2 = children(t2);
    std::vector<int> rowA_first(c1.begin(), c1.begin() + a1);
    std::vector<int> rowA_last(c2.begin(), c2.begin() + a1);
    std::vector<int> rowB_first(c1.begin() + a1, c1.end());
    std::vector<int> rowB_last(c2.begin() + a1, c2.end());
    std::string pj = std::to_string(j + 1);
    attach_ladder(b, rowA_first, rowA_last, a1, b1, len, pfx + "w1[" + pj + ";");
    attach_ladder(b, rowB_first, rowB_last, a2, b2, len, pfx + "w2[" + pj + ";");
  }
}

void require_switcher_params(int t, int k) {
  if (k < 2) throw std::invalid_argument("switcher: k >= 2 required");
  if (t != 2 * k - 1 && t != 2 * k)
    throw std::invalid_argument("switcher: t must be 2k-1 or 2k");
}

}  // namespace

const char* gadget_kind_name(GadgetKind k) {
  switch (k) {
    case GadgetKind::CtTree: return "tree";
    case GadgetKind::Ladder: return "ladder";
    case GadgetKind::Switcher: return "switcher";
    case GadgetKind::Absorber: return "absorber";
    case GadgetKind::Fconn: return "fconn";
    case GadgetKind::FabsMinus: return "fabs-minus";
    case GadgetKind::CompactAbsorber: return "compact";
  }
  return "?";
}

int RootedGadget::role_vertex(const std::string& role) const {
  auto it = vertex_of_role.find(role);
  if (it == vertex_of_role.end())
    throw std::invalid_argument("gadget: no vertex with role " + role);
  return it->second;
}

RootedGadget build_ct_tree(int t, int k) {
  if (t < 3 || k < 1) throw std::invalid_argument("ct_tree: need t >= 3, k >= 1");
  Builder b;
  grow_tree(b, t, k, "u", "t1");
  return b.finish(GadgetKind::CtTree, t, k);
}

RootedGadget build_ladder(int a, int b, int l) {
  if (a < 1 || b < 1) throw std::invalid_argument("ladder: widths must be >= 1");
  if (l < 3 || l % 2 == 0) throw std::invalid_argument("ladder: length must be odd >= 3");
  Builder bld;
  std::vector<int> row1, rowl;
  for (int j = 1; j <= a; ++j)
    row1.push_back(bld.add_vertex("w[1," + std::to_string(j) + "]"));
  for (size_t j = 0; j + 1 < row1.size(); ++j) bld.add_edge(row1[j], row1[j + 1]);
  for (int j = 1; j <= a; ++j)
    rowl.push_back(bld.add_vertex("w[" + std::to_string(l) + "," + std::to_string(j) + "]"));
  for (size_t j = 0; j + 1 < rowl.size(); ++j) bld.add_edge(rowl[j], rowl[j + 1]);
  attach_ladder(bld, row1, rowl, a, b, l, "w[");
  return bld.finish(GadgetKind::Ladder, a + b, 0);
}

RootedGadget build_switcher(int t, int k) {
  require_switcher_params(t, k);
  Builder b;
  int v, vp;
  grow_switcher(b, t, k, "", "sw1", &v, &vp);
  b.roles[size_t(v)] = "v";
  b.roles[size_t(vp)] = "v'";
  return b.finish(GadgetKind::Switcher, t, k);
}

RootedGadget build_absorber(int t, int k) {
  require_switcher_params(t, k);
  Builder b;
  std::vector<int> s((size_t)t), r((size_t)t);
  for (int i = 1; i <= t; ++i) {
    std::string pfx = "sw" + std::to_string(i) + ".";
    int v, vp;
    grow_switcher(b, t, k, pfx, "sw" + std::to_string(i), &v, &vp);
    s[size_t(i - 1)] = v;
    r[size_t(i - 1)] = vp;
    b.roles[size_t(v)] = "s" + std::to_string(i);
    b.roles[size_t(vp)] = "r" + std::to_string(i);
  }
  b.add_cycle(s, /*front=*/true);  // searched first; pruned fast when invalid
  b.groups["s"] = s;
  b.groups["r"] = r;
  return b.finish(GadgetKind::Absorber, t, k);
}

RootedGadget build_compact_absorber(int t) {
  if (t < 3) throw std::invalid_argument("compact absorber: t >= 3");
  Builder b;
  std::vector<int> s((size_t)t), r((size_t)t);
  std::vector<std::vector<int>> paths((size_t)(t));
  for (int i = 1; i <= t; ++i) {
    s[size_t(i - 1)] = b.add_vertex("s" + std::to_string(i));
    r[size_t(i - 1)] = b.add_vertex("r" + std::to_string(i));
    for (int j = 1; j <= t - 1; ++j)
      paths[size_t(i - 1)].push_back(
          b.add_vertex("x" + std::to_string(i) + "[" + std::to_string(j) + "]"));
  }
  b.add_cycle(s);  // first in the list, searched first
  for (int i = 0; i < t; ++i) {
    std::vector<int> cs = {s[size_t(i)]};
    cs.insert(cs.end(), paths[size_t(i)].begin(), paths[size_t(i)].end());
    b.add_cycle(cs);
    std::vector<int> cr = {r[size_t(i)]};
    cr.insert(cr.end(), paths[size_t(i)].begin(), paths[size_t(i)].end());
    b.add_cycle(cr);
  }
  b.groups["s"] = s;
  b.groups["r"] = r;
  return b.finish(GadgetKind::CompactAbsorber, t, 1);
}

namespace {

// Vertices of the depth-(k-1) tree rooted at r_i: levels 0..k of tree 2.
std::vector<int> contracted_set(const RootedGadget& abs, int i) {
  std::vector<int> out;
  for (int lvl = 0; lvl <= abs.k; ++lvl) {
    auto it = abs.groups.find("sw" + std::to_string(i) + ".t2.L" + std::to_string(lvl));
    if (it == abs.groups.end()) throw std::logic_error("absorber missing tree groups");
    out.insert(out.end(), it->second.begin(), it->second.end());
  }
  return out;
}

}  // namespace

RootedGadget contract_fconn(const RootedGadget& absorber) {
  if (absorber.kind != GadgetKind::Absorber)
    throw std::invalid_argument("contract_fconn: input must be an absorber");
  int n = absorber.graph.vertex_count();
  int t = absorber.t;
  std::vector<int> to_new(size_t(n), -1);
  std::vector<std::string> roles;
  for (int v = 0; v < n; ++v) {
    // contracted vertices handled below
    to_new[size_t(v)] = -2;
  }
  std::vector<std::vector<int>> csets((size_t)(t));
  for (int i = 1; i <= t; ++i) {
    csets[size_t(i - 1)] = contracted_set(absorber, i);
    for (int v : csets[size_t(i - 1)]) to_new[size_t(v)] = -(10 + i);  // marker
  }
  int next = 0;
  for (int v = 0; v < n; ++v)
    if (to_new[size_t(v)] == -2) {
      to_new[size_t(v)] = next++;
      roles.push_back(absorber.role_of[size_t(v)]);
    }
  std::vector<int> zid((size_t)(t));
  for (int i = 1; i <= t; ++i) {
    zid[size_t(i - 1)] = next++;
    roles.push_back("z" + std::to_string(i));
  }
  for (int i = 1; i <= t; ++i)
    for (int v : csets[size_t(i - 1)]) to_new[size_t(v)] = zid[size_t(i - 1)];

  std::vector<std::pair<int, int>> edges;
  for (auto [u, v] : absorber.graph.edges()) {
    int a = to_new[size_t(u)], b = to_new[size_t(v)];
    if (a == b) continue;  // loop suppressed
    edges.emplace_back(a, b);
  }
  Builder bld;
  bld.roles = roles;
  bld.edges = edges;
  for (const auto& cyc : absorber.cycle_list) {
    std::vector<int> proj;
    for (int v : cyc) proj.push_back(to_new[size_t(v)]);
    auto uniq = sorted_unique(proj);
    if (int(uniq.size()) == t) bld.cycles.push_back(proj);
  }
  RootedGadget out = bld.finish(GadgetKind::Fconn, t, absorber.k);
  return out;
}

RootedGadget remove_root_trees(const RootedGadget& absorber) {
  if (absorber.kind != GadgetKind::Absorber)
    throw std::invalid_argument("remove_root_trees: input must be an absorber");
  std::vector<int> all;
  for (int i = 1; i <= absorber.t; ++i) {
    auto cs = contracted_set(absorber, i);
    all.insert(all.end(), cs.begin(), cs.end());
  }
  RemovedGraph rg = remove_vertices(absorber.graph, all);
  Builder bld;
  bld.roles.resize(size_t(rg.graph.vertex_count()));
  for (int v = 0; v < rg.graph.vertex_count(); ++v)
    bld.roles[size_t(v)] = absorber.role_of[size_t(rg.old_of_new[size_t(v)])];
  bld.edges = rg.graph.edges();
  for (const auto& cyc : absorber.cycle_list) {
    std::vector<int> proj;
    bool ok = true;
    for (int v : cyc) {
      int nv = rg.new_of_old[size_t(v)];
      if (nv < 0) { ok = false; break; }
      proj.push_back(nv);
    }
    if (ok) bld.cycles.push_back(proj);
  }
  return bld.finish(GadgetKind::FabsMinus, absorber.t, absorber.k);
}

std::vector<int> blowup_labeling(const RootedGadget& gadget) {
  switch (gadget.kind) {
    case GadgetKind::CtTree:
    case GadgetKind::Switcher:
    case GadgetKind::Absorber:
    case GadgetKind::CompactAbsorber:
      break;
    default:
      throw std::invalid_argument("blowup_labeling: unsupported gadget kind");
  }
  int n = gadget.graph.vertex_count();
  int t = gadget.t;
  std::vector<int> label(size_t(n), -1);
  bool progress = true;
  size_t done = 0;
  std::vector<char> processed(gadget.cycle_list.size(), 0);
  while (progress && done < gadget.cycle_list.size()) {
    progress = false;
    for (size_t ci = 0; ci < gadget.cycle_list.size(); ++ci) {
      if (processed[ci]) continue;
      const auto& cyc = gadget.cycle_list[ci];
      int base = -1;
      if (ci == 0 && done == 0) {
        base = 0;  // seed
      } else {
        for (int i = 0; i < t; ++i)
          if (label[size_t(cyc[size_t(i)])] >= 0) {
            base = ((label[size_t(cyc[size_t(i)])] - i) % t + t) % t;
            break;
          }
        if (base < 0) continue;
      }
      for (int i = 0; i < t; ++i) {
        int want = (base + i) % t;
        int& lv = label[size_t(cyc[size_t(i)])];
        if (lv >= 0 && lv != want)
          throw std::runtime_error("blowup_labeling: contradiction (construction bug)");
        lv = want;
      }
      processed[ci] = 1;
      ++done;
      progress = true;
    }
  }
  if (done < gadget.cycle_list.size())
    throw std::runtime_error("blowup_labeling: disconnected cycle structure");
  for (int v = 0; v < n; ++v)
    if (label[size_t(v)] < 0)
      throw std::runtime_error("blowup_labeling: vertex not on any defining cycle");

  // Normalize: roots r_i (or root/endpoint v) land in parts 0..t-1.
  int shift = 0;
  if (gadget.kind == GadgetKind::Absorber || gadget.kind == GadgetKind::CompactAbsorber) {
    int r1 = gadget.role_vertex("r1");
    shift = ((0 - label[size_t(r1)]) % t + t) % t;
  } else if (gadget.kind == GadgetKind::Switcher) {
    shift = ((0 - label[size_t(gadget.role_vertex("v"))]) % t + t) % t;
  }
  if (shift)
    for (auto& l : label) l = (l + shift) % t;
  return label;
}

}  // namespace ctlab
