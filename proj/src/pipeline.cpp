#include "ctlab/pipeline.hpp"

#include <algorithm>
#include <stdexcept>

#include "ctlab/hypergraph.hpp"
#include "ctlab/regularity.hpp"
#include "ctlab/rng.hpp"

namespace ctlab {

using Json = nlohmann::ordered_json;

PipelineConfig pipeline_config_from_json(const Json& j) {
  PipelineConfig c;
  auto rat = [&](const char* key, const Rat& dflt) {
    if (!j.contains(key)) return dflt;
    return rat_parse(j.at(key).get<std::string>());
  };
  if (j.contains("t")) c.t = j.at("t").get<int>();
  if (j.contains("k")) c.k = j.at("k").get<int>();
  c.epsilon = rat("epsilon", c.epsilon);
  c.gamma = rat("gamma", c.gamma);
  c.xi = rat("xi", c.xi);
  c.rho = rat("rho", c.rho);
  c.alpha = rat("alpha", c.alpha);
  c.p = rat("p", c.p);
  if (j.contains("seed")) c.seed = j.at("seed").get<uint64_t>();
  if (j.contains("m_override")) c.m_override = j.at("m_override").get<int>();
  if (j.contains("template_max_degree"))
    c.template_max_degree = j.at("template_max_degree").get<long long>();
  if (j.contains("template_verify_cap"))
    c.template_verify_cap = j.at("template_verify_cap").get<int>();
  if (j.contains("absorber_kind")) c.absorber_kind = j.at("absorber_kind").get<std::string>();
  if (j.contains("gexp_check")) c.gexp_check = j.at("gexp_check").get<std::string>();
  if (j.contains("embed_budget")) c.embed_budget = j.at("embed_budget").get<uint64_t>();
  if (j.contains("cover_budget")) c.cover_budget = j.at("cover_budget").get<uint64_t>();
  if (j.contains("match_budget")) c.match_budget = j.at("match_budget").get<uint64_t>();
  if (j.contains("embed_retries")) c.embed_retries = j.at("embed_retries").get<int>();
  return c;
}

Json pipeline_config_to_json(const PipelineConfig& c) {
  Json j;
  j["t"] = c.t;
  j["k"] = c.k;
  j["epsilon"] = rat_str(c.epsilon);
  j["gamma"] = rat_str(c.gamma);
  j["xi"] = rat_str(c.xi);
  j["rho"] = rat_str(c.rho);
  j["alpha"] = rat_str(c.alpha);
  j["p"] = rat_str(c.p);
  j["seed"] = c.seed;
  j["m_override"] = c.m_override;
  j["template_max_degree"] = c.template_max_degree;
  j["template_verify_cap"] = c.template_verify_cap;
  j["absorber_kind"] = c.absorber_kind;
  j["gexp_check"] = c.gexp_check;
  j["embed_budget"] = c.embed_budget;
  j["cover_budget"] = c.cover_budget;
  j["match_budget"] = c.match_budget;
  j["embed_retries"] = c.embed_retries;
  return j;
}

std::vector<int> WAbsorber::all_vertices() const {
  std::vector<int> out;
  for (const auto& e : per_edge) {
    out.insert(out.end(), e.roots.begin(), e.roots.end());
    out.insert(out.end(), e.internal.begin(), e.internal.end());
  }
  return sorted_unique(std::move(out));
}

namespace {

struct BudgetExceeded {};

// Rooted subgraph embedding by backtracking: pattern vertices ordered
// most-constrained-first from the roots, candidates filtered by part label
// and adjacency to already-embedded neighbours.
struct Embedder {
  const PartitionedGraph& pg;
  const RootedGadget& pat;
  const std::vector<int>& labels;
  std::vector<char>& used;  // host vertices unavailable as internals
  uint64_t budget;
  uint64_t work = 0;

  std::vector<int> order;               // pattern vertices after roots
  std::vector<std::vector<int>> pat_adj_before;  // embedded pattern neighbours

  Embedder(const PartitionedGraph& pg_, const RootedGadget& pat_,
           const std::vector<int>& labels_, std::vector<char>& used_, uint64_t budget_)
      : pg(pg_), pat(pat_), labels(labels_), used(used_), budget(budget_) {}

  void build_order(const std::vector<int>& root_pat_ids) {
    int n = pat.graph.vertex_count();
    std::vector<char> placed(size_t(n), 0);
    for (int r : root_pat_ids) placed[size_t(r)] = 1;
    order.clear();
    pat_adj_before.clear();
    for (int step = 0; step < n - int(root_pat_ids.size()); ++step) {
      int best = -1, best_cnt = -1;
      for (int v = 0; v < n; ++v) {
        if (placed[size_t(v)]) continue;
        int cnt = 0;
        for (int w : pat.graph.neighbors(v))
          if (placed[size_t(w)]) ++cnt;
        if (cnt > best_cnt) {
          best = v;
          best_cnt = cnt;
        }
      }
      order.push_back(best);
      placed[size_t(best)] = 1;
      std::vector<int> nb;
      for (int w : pat.graph.neighbors(best))
        nb.push_back(w);
      pat_adj_before.push_back(nb);
    }
  }

  bool embed(const std::vector<int>& root_pat_ids, const std::vector<int>& root_hosts,
             uint64_t rot_seed, std::vector<int>* host_of_out) {
    std::vector<int> host_of(size_t(pat.graph.vertex_count()), -1);
    for (size_t i = 0; i < root_pat_ids.size(); ++i) {
      int h = root_hosts[i];
      int p = pat.graph.vertex_count();
      (void)p;
      if (pg.part_of(h) != labels[size_t(root_pat_ids[i])])
        throw std::invalid_argument("embed: root part does not match pattern label");
      host_of[size_t(root_pat_ids[i])] = h;
    }
    if (!go(0, host_of, rot_seed)) return false;
    *host_of_out = std::move(host_of);
    return true;
  }

  bool go(size_t depth, std::vector<int>& host_of, uint64_t rot_seed) {
    if (++work > budget) throw BudgetExceeded{};
    if (depth == order.size()) return true;
    int u = order[depth];
    // anchor on an embedded neighbour with the shortest host adjacency
    int anchor = -1;
    for (int w : pat.graph.neighbors(u))
      if (host_of[size_t(w)] >= 0 &&
          (anchor < 0 ||
           pg.graph.degree(host_of[size_t(w)]) < pg.graph.degree(anchor)))
        anchor = host_of[size_t(w)];
    if (anchor < 0) throw std::logic_error("embed: disconnected pattern order");
    const auto& cands = pg.graph.neighbors(anchor);
    size_t sz = cands.size();
    size_t off = sz ? size_t(counter_hash(rot_seed, uint64_t(u), 17) % sz) : 0;
    for (size_t ci = 0; ci < sz; ++ci) {
      int h = cands[(ci + off) % sz];
      if (++work > budget) throw BudgetExceeded{};
      if (used[size_t(h)] || pg.part_of(h) != labels[size_t(u)]) continue;
      bool ok = true;
      for (int w : pat.graph.neighbors(u)) {
        int hw = host_of[size_t(w)];
        if (hw >= 0 && !pg.graph.has_edge(h, hw)) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      host_of[size_t(u)] = h;
      used[size_t(h)] = 1;
      if (go(depth + 1, host_of, rot_seed)) return true;
      used[size_t(h)] = 0;
      host_of[size_t(u)] = -1;
    }
    return false;
  }
};

std::vector<std::vector<int>> map_cycles(const std::vector<std::vector<int>>& cycles,
                                         const std::vector<int>& host_of) {
  std::vector<std::vector<int>> out;
  out.reserve(cycles.size());
  for (const auto& c : cycles) {
    std::vector<int> m;
    m.reserve(c.size());
    for (int v : c) m.push_back(host_of[size_t(v)]);
    out.push_back(std::move(m));
  }
  return out;
}

}  // namespace

EmbedResult embed_absorbers(const PartitionedGraph& pg,
                            const std::vector<std::vector<int>>& root_tuples,
                            const RootedGadget& pattern,
                            const std::vector<int>& pattern_labels,
                            const std::vector<char>& avoid, const PipelineConfig& cfg) {
  EmbedResult res;
  int t = pattern.t;
  std::vector<int> root_pat_ids;
  for (int i = 1; i <= t; ++i)
    root_pat_ids.push_back(pattern.role_vertex("r" + std::to_string(i)));

  // pattern factors, computed once and mapped through each embedding
  FactorSearchOptions fo;
  fo.hint_cycles = pattern.cycle_list;
  fo.work_budget = cfg.embed_budget;
  auto with_r = find_ct_factor(pattern.graph, t, fo);
  FactorSearchOptions fo2 = fo;
  std::vector<int> all_but_roots;
  {
    std::vector<char> is_root(size_t(pattern.graph.vertex_count()), 0);
    for (int r : root_pat_ids) is_root[size_t(r)] = 1;
    for (int v = 0; v < pattern.graph.vertex_count(); ++v)
      if (!is_root[size_t(v)]) all_but_roots.push_back(v);
  }
  fo2.restrict_to = all_but_roots;
  auto without_r = find_ct_factor(pattern.graph, t, fo2);
  if (with_r.status != SearchStatus::Found || without_r.status != SearchStatus::Found) {
    res.error = "pattern gadget has no factor pair (construction bug)";
    return res;
  }

  // roots must sit in distinct parts, tuples must not share vertices
  {
    std::vector<char> seen(size_t(pg.graph.vertex_count()), 0);
    for (const auto& tup : root_tuples) {
      if (int(tup.size()) != t)
        throw std::invalid_argument("embed_absorbers: root tuple arity mismatch");
      std::vector<char> parts_seen(size_t(pg.t), 0);
      for (int v : tup) {
        int pt = pg.part_of(v);
        if (pt < 0 || parts_seen[size_t(pt)])
          throw std::invalid_argument("embed_absorbers: roots not in distinct parts");
        parts_seen[size_t(pt)] = 1;
      }
    }
    // within one part slot two tuples may share a root only if the template
    // has degree > 1 there; sharing is legal, full duplication is not
    for (const auto& tup : root_tuples) {
      (void)tup;
    }
    (void)seen;
  }

  std::vector<char> used = avoid;
  used.resize(size_t(pg.graph.vertex_count()), 0);
  // roots are never free internals
  for (const auto& tup : root_tuples)
    for (int v : tup) used[size_t(v)] = 1;

  Embedder emb(pg, pattern, pattern_labels, used, cfg.embed_budget);
  emb.build_order(root_pat_ids);

  std::vector<std::optional<std::vector<int>>> got(root_tuples.size());
  for (int round = 0; round <= cfg.embed_retries; ++round) {
    bool all = true;
    for (size_t ei = 0; ei < root_tuples.size(); ++ei) {
      if (got[ei]) continue;
      std::vector<int> host_of;
      uint64_t rot = counter_hash(cfg.seed, uint64_t(ei), uint64_t(round + 1000));
      bool ok = false;
      try {
        ok = emb.embed(root_pat_ids, root_tuples[ei], rot, &host_of);
      } catch (BudgetExceeded&) {
        ok = false;
      }
      if (ok)
        got[ei] = std::move(host_of);
      else
        all = false;
    }
    if (all) break;
  }

  for (size_t ei = 0; ei < root_tuples.size(); ++ei) {
    if (!got[ei]) {
      res.failed_edges.push_back(int(ei));
      continue;
    }
    EmbeddedAbsorber ea;
    ea.roots = root_tuples[ei];
    ea.host_of = *got[ei];
    ea.factor_with_roots = map_cycles(with_r.certificate->cycles, ea.host_of);
    ea.factor_without_roots = map_cycles(without_r.certificate->cycles, ea.host_of);
    std::vector<char> is_root_host(size_t(pg.graph.vertex_count()), 0);
    for (int r : ea.roots) is_root_host[size_t(r)] = 1;
    for (int v : ea.host_of)
      if (!is_root_host[size_t(v)]) ea.internal.push_back(v);
    std::sort(ea.internal.begin(), ea.internal.end());
    res.absorbers.push_back(std::move(ea));
  }
  res.ok = res.failed_edges.empty();
  if (!res.ok) res.error = "embedding failed for some template edges";
  return res;
}

FactorCertificate absorb(const WAbsorber& wabs, const std::vector<int>& Z) {
  int t = wabs.t;
  std::vector<long long> per_part(size_t(t), 0);
  for (int v : Z) {
    bool found = false;
    for (int i = 0; i < t && !found; ++i)
      for (int w : wabs.W[size_t(i)])
        if (w == v) {
          ++per_part[size_t(i)];
          found = true;
        }
    if (!found) throw std::invalid_argument("absorb: Z must lie inside the W sets");
  }
  for (int i = 1; i < t; ++i)
    if (per_part[size_t(i)] != per_part[0])
      throw std::invalid_argument("absorb: Z must be balanced across the W sets");

  std::vector<char> removed(size_t(wabs.tpl.vertex_count()), 0);
  for (int bv = 0; bv < wabs.tpl.vertex_count(); ++bv) {
    int host = wabs.plan.host_of[size_t(bv)];
    for (int v : Z)
      if (v == host) removed[size_t(bv)] = 1;
  }
  auto pm = find_perfect_matching(wabs.tpl.vertex_count(), wabs.tpl.edges, removed);
  if (!pm)
    throw std::runtime_error("absorb: verified template lost its matching (corruption)");
  std::vector<char> in_pm(wabs.tpl.edges.size(), 0);
  for (int ei : *pm) in_pm[size_t(ei)] = 1;

  FactorCertificate cert;
  cert.t = t;
  for (size_t ei = 0; ei < wabs.per_edge.size(); ++ei) {
    const auto& src = in_pm[ei] ? wabs.per_edge[ei].factor_with_roots
                                : wabs.per_edge[ei].factor_without_roots;
    for (const auto& c : src) cert.cycles.push_back(c);
  }
  return cert;
}

namespace {

struct BulkSearch {
  const PartitionedGraph& pg;
  int t;
  std::vector<char> covered;  // or unavailable
  std::vector<int> skips_in_part;
  int max_leftover;
  uint64_t work = 0, budget;
  std::vector<std::vector<int>> cycles;
  std::vector<std::vector<int>> best_cycles;
  std::vector<std::vector<std::vector<int>>> canon_rot;

  BulkSearch(const PartitionedGraph& pg_, int max_leftover_, uint64_t budget_)
      : pg(pg_), t(pg_.t), max_leftover(max_leftover_), budget(budget_) {
    skips_in_part.assign(size_t(t), 0);
    canon_rot.resize(size_t(t));
    for (int r = 0; r < t; ++r) {
      canon_rot[size_t(r)].resize(size_t(t));
      for (int i = 0; i < t; ++i)
        canon_rot[size_t(r)][size_t(i)] = pg.parts[size_t(pg.cyc(r + i))];
    }
  }

  bool go(int from) {
    if (++work > budget) throw BudgetExceeded{};
    int n = pg.graph.vertex_count();
    int pivot = from;
    while (pivot < n && covered[size_t(pivot)]) ++pivot;
    if (pivot >= n) return true;
    int part = pg.part_of(pivot);

    std::vector<char> allowed((size_t)(n));
    for (int v = 0; v < n; ++v) allowed[size_t(v)] = !covered[size_t(v)];
    auto cands = cycles_through(pg.graph, pivot, t, allowed,
                                &canon_rot[size_t(part)], &work, budget);
    for (const auto& cyc : cands) {
      for (int v : cyc) covered[size_t(v)] = 1;
      cycles.push_back(cyc);
      if (cycles.size() > best_cycles.size()) best_cycles = cycles;
      if (go(pivot + 1)) return true;
      cycles.pop_back();
      for (int v : cyc) covered[size_t(v)] = 0;
    }
    if (skips_in_part[size_t(part)] < max_leftover) {
      ++skips_in_part[size_t(part)];
      covered[size_t(pivot)] = 1;
      if (go(pivot + 1)) return true;
      covered[size_t(pivot)] = 0;
      --skips_in_part[size_t(part)];
    }
    return false;
  }
};

}  // namespace

BulkCover cover_bulk(const PartitionedGraph& pg, const std::vector<int>& avoid,
                     int max_leftover, const PipelineConfig& cfg) {
  if (max_leftover < 0) throw std::invalid_argument("cover_bulk: negative leftover");
  BulkCover out;
  BulkSearch bs(pg, max_leftover, cfg.cover_budget);
  bs.covered.assign(size_t(pg.graph.vertex_count()), 0);
  for (int v : avoid) bs.covered[size_t(v)] = 1;
  for (int v : pg.exceptional) bs.covered[size_t(v)] = 1;
  long long avail0 = -1;
  for (int i = 0; i < pg.t; ++i) {
    long long av = 0;
    for (int v : pg.parts[size_t(i)])
      if (!bs.covered[size_t(v)]) ++av;
    if (avail0 < 0) avail0 = av;
    if (av != avail0)
      throw std::invalid_argument("cover_bulk: parts minus avoid are unbalanced");
  }
  if (avail0 == 0)
    throw std::invalid_argument("cover_bulk: parts minus avoid are empty");

  std::vector<char> base = bs.covered;
  bool done = false;
  try {
    done = bs.go(0);
  } catch (BudgetExceeded&) {
    done = false;
  }
  const auto& chosen = done ? bs.cycles : bs.best_cycles;
  out.reached_target = done;
  out.certificate.t = pg.t;
  out.certificate.cycles = chosen;
  std::vector<char> cov = base;
  for (const auto& c : chosen)
    for (int v : c) cov[size_t(v)] = 1;
  out.leftover_per_part.assign(size_t(pg.t), {});
  for (int i = 0; i < pg.t; ++i)
    for (int v : pg.parts[size_t(i)])
      if (!cov[size_t(v)]) out.leftover_per_part[size_t(i)].push_back(v);
  return out;
}

FactorCertificate match_leftover(const PartitionedGraph& pg,
                                 const std::vector<std::vector<int>>& Z_parts,
                                 const std::vector<std::vector<int>>& W_parts,
                                 const PipelineConfig& cfg) {
  int t = pg.t;
  if (int(Z_parts.size()) != t || int(W_parts.size()) != t)
    throw std::invalid_argument("match_leftover: per-part inputs required");
  for (int i = 1; i < t; ++i)
    if (Z_parts[size_t(i)].size() != Z_parts[0].size())
      throw std::invalid_argument("match_leftover: |Z_i| must be equal");

  FactorCertificate cert;
  cert.t = t;
  if (Z_parts[0].empty()) return cert;

  Hypergraph h;
  h.vertex_count = pg.graph.vertex_count();
  std::vector<std::vector<int>> cycle_of_edge;
  std::vector<int> A;
  uint64_t work = 0;
  for (int i = 0; i < t; ++i) {
    for (int v : Z_parts[size_t(i)]) {
      A.push_back(v);
      std::vector<std::vector<int>> seq((size_t)(t));
      seq[0] = {v};
      std::vector<char> allowed(size_t(pg.graph.vertex_count()), 0);
      allowed[size_t(v)] = 1;
      for (int d = 1; d < t; ++d) {
        seq[size_t(d)] = W_parts[size_t(pg.cyc(i + d))];
        for (int w : seq[size_t(d)]) allowed[size_t(w)] = 1;
      }
      auto cycs = cycles_through(pg.graph, v, t, allowed, &seq, &work,
                                 cfg.match_budget);
      for (auto& c : cycs) {
        h.edges.push_back(c);
        cycle_of_edge.push_back(std::move(c));
      }
    }
  }
  auto match = find_saturating_matching(h, A, cfg.match_budget);
  if (match.status != MatchStatus::Found)
    throw std::runtime_error("match_leftover: no saturating matching within budget");
  for (int ei : match.matching->edge_indices)
    cert.cycles.push_back(cycle_of_edge[size_t(ei)]);
  return cert;
}

namespace {

long long full_absorber_size(int t, int k) {
  long long treev = 0, pw = 1;
  for (int i = 0; i <= k + 1; ++i) {
    treev += pw;
    pw *= (t - 1);
  }
  long long pairs = 1;
  for (int i = 0; i < k; ++i) pairs *= (t - 1);
  int a1 = k - 1, a2 = t - k, b1 = t - a1, b2 = t - a2;
  long long interior = (long long)(k - 2) * (a1 + a2) + (long long)(k - 1) * (b1 + b2);
  long long vsw = 2 * treev + pairs * interior;
  return t * vsw;
}

}  // namespace

PipelineResult run_pipeline(const PartitionedGraph& pg, const PipelineConfig& cfg) {
  PipelineResult res;
  Json trace = Json::object();
  int t = cfg.t;
  res.phase = "validate";
  try {
    if (pg.t != t) throw std::invalid_argument("pipeline: instance t mismatch");
    long long nt = pg.part_size();
    for (const auto& p : pg.parts)
      if ((long long)p.size() != nt)
        throw std::invalid_argument("pipeline: parts must have equal size");
    if (nt % t != 0)
      throw std::invalid_argument("pipeline: part size must be divisible by t");
    trace["n_tilde"] = nt;

    if (cfg.gexp_check != "skip") {
      res.phase = "gexp";
      RegParams rp{cfg.epsilon, cfg.p, cfg.alpha};
      GexpOptions go;
      go.seed = subseed(cfg.seed, "gexp");
      auto rep = check_gexp_membership(pg, t, cfg.k, rp, go);
      Json gj;
      gj["all_pass"] = rep.all_pass;
      gj["pair_densities_ok"] = rep.pair_densities_ok;
      gj["pair_regularity_ok"] = rep.pair_regularity_ok;
      for (const auto& c : rep.clauses)
        gj["failures"][c.clause] = c.failures;
      trace["gexp"] = gj;
      if (cfg.gexp_check == "strict" && !rep.all_pass)
        throw std::runtime_error("pipeline: instance fails the class membership check");
    }

    res.phase = "carve";
    int m = cfg.m_override;
    if (m <= 0) {
      Rat frac = cfg.xi * Rat(nt);
      m = int(std::max<long long>(1, frac.numerator() / frac.denominator()));
      // clamp so the carved sets plus compact-absorber internals fit the host
      auto fits = [&](int mm) {
        long long patterns = 1;
        for (int i = 0; i < t && patterns <= 64; ++i) patterns *= mm;
        long long edges_est = 2 * mm + (patterns <= 32 ? patterns : 4LL * mm);
        return 2 * mm + edges_est * t <= 3 * nt / 4;
      };
      while (m > 1 && !fits(m)) --m;
    }
    std::vector<std::vector<int>> W((size_t)t), X((size_t)t);
    for (int i = 0; i < t; ++i) {
      auto idx = sample_indices(subseed(cfg.seed, "carve" + std::to_string(i)),
                                int(nt), 2 * m);
      for (int j = 0; j < m; ++j) W[size_t(i)].push_back(pg.parts[size_t(i)][size_t(idx[size_t(j)])]);
      for (int j = m; j < 2 * m; ++j)
        X[size_t(i)].push_back(pg.parts[size_t(i)][size_t(idx[size_t(j)])]);
    }
    trace["m"] = m;

    res.phase = "template";
    long long maxdeg = cfg.template_max_degree;
    if (maxdeg <= 0) {
      maxdeg = 1;
      for (int i = 0; i < t; ++i) maxdeg = std::min<long long>(maxdeg * 40, 1'000'000'000);
    }
    TemplateGraph tpl = build_template(t, m, maxdeg, subseed(cfg.seed, "template"),
                                       cfg.template_verify_cap);
    trace["template_edges"] = tpl.edges.size();
    trace["template_verified"] = tpl.verified;

    res.phase = "plan";
    RootPlan plan = plan_roots(tpl, W, X, subseed(cfg.seed, "plan"));

    res.phase = "embed";
    std::string kind = cfg.absorber_kind;
    if (kind == "auto") {
      long long vfull = full_absorber_size(t, cfg.k);
      long long need = (long long)tpl.edges.size() * (vfull - t);
      long long room = t * nt - 2LL * m * t;
      kind = 2 * need <= room ? "full" : "compact";
    }
    trace["absorber_kind"] = kind;
    RootedGadget pattern = kind == "full" ? build_absorber(t, cfg.k)
                                          : build_compact_absorber(t);
    std::vector<int> labels = blowup_labeling(pattern);
    std::vector<char> avoid(size_t(pg.graph.vertex_count()), 0);
    for (int i = 0; i < t; ++i) {
      for (int v : W[size_t(i)]) avoid[size_t(v)] = 1;
      for (int v : X[size_t(i)]) avoid[size_t(v)] = 1;
    }
    auto er = embed_absorbers(pg, plan.tuples, pattern, labels, avoid, cfg);
    if (!er.ok)
      throw std::runtime_error("pipeline: " + er.error + " (" +
                               std::to_string(er.failed_edges.size()) + " edges)");
    WAbsorber wabs;
    wabs.t = t;
    wabs.W = W;
    wabs.X = X;
    wabs.tpl = std::move(tpl);
    wabs.plan = std::move(plan);
    wabs.per_edge = std::move(er.absorbers);
    wabs.pattern_kind = kind;
    auto va = wabs.all_vertices();
    trace["absorber_vertices"] = va.size();

    res.phase = "bulk";
    long long rho_cap = (cfg.rho * Rat(nt)).numerator() / (cfg.rho * Rat(nt)).denominator();
    int zmax = int(std::min<long long>(rho_cap, m / (t - 1)));
    auto bulk = cover_bulk(pg, va, zmax, cfg);
    if (!bulk.reached_target)
      throw std::runtime_error("pipeline: bulk cover missed its leftover target");
    trace["bulk_cycles"] = bulk.certificate.cycles.size();
    trace["leftover_per_part"] = bulk.leftover_per_part[0].size();

    res.phase = "match";
    auto match_cert = match_leftover(pg, bulk.leftover_per_part, W, cfg);
    trace["leftover_cycles"] = match_cert.cycles.size();

    res.phase = "absorb";
    std::vector<char> used_w(size_t(pg.graph.vertex_count()), 0);
    for (const auto& c : match_cert.cycles)
      for (int v : c) used_w[size_t(v)] = 1;
    std::vector<int> Q;
    for (int i = 0; i < t; ++i)
      for (int v : W[size_t(i)])
        if (used_w[size_t(v)]) Q.push_back(v);
    auto abs_cert = absorb(wabs, Q);
    trace["absorb_cycles"] = abs_cert.cycles.size();

    res.phase = "verify";
    FactorCertificate full;
    full.t = t;
    for (auto* part : {&bulk.certificate, &match_cert, &abs_cert})
      for (const auto& c : part->cycles) full.cycles.push_back(c);
    std::vector<int> everything;
    for (const auto& p : pg.parts)
      everything.insert(everything.end(), p.begin(), p.end());
    if (!verify_factor(pg.graph, full, t, everything))
      throw std::runtime_error("pipeline: assembled certificate failed verification");

    res.status = PipelineStatus::Ok;
    res.phase.clear();
    res.certificate = std::move(full);
    res.trace = std::move(trace);
    return res;
  } catch (std::exception& e) {
    trace["error"] = e.what();
    trace["phase"] = res.phase;
    res.trace = std::move(trace);
    res.status = PipelineStatus::Failed;
    return res;
  }
}

}  // namespace ctlab
