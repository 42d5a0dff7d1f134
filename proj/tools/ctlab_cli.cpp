// ctlab: gadget construction, exact C_t-factor solving, regularity and
// expansion diagnostics on random graphs, and the absorbing pipeline.
//
// Exit codes: 0 success, 1 negative mathematical verdict, 2 usage error,
// 3 budget exhausted / unknown.
#include <chrono>
#include <iostream>
#include <functional>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "ctlab/density_expr.hpp"
#include "ctlab/factor.hpp"
#include "ctlab/gadget.hpp"
#include "ctlab/gnp.hpp"
#include "ctlab/graph_io.hpp"
#include "ctlab/manifest.hpp"
#include "ctlab/pipeline.hpp"
#include "ctlab/regularity.hpp"
#include "ctlab/rng.hpp"
#include "ctlab/template_graph.hpp"
#include "ctlab/two_density.hpp"

using namespace ctlab;

namespace {

std::string csv_of(const ProbeReport& rep) {
  std::ostringstream os;
  os << "trial,quantity,threshold,pass,note\n";
  for (const auto& r : rep.rows)
    os << r.trial << "," << r.quantity << "," << r.threshold << ","
       << (r.pass ? 1 : 0) << "," << r.note << "\n";
  return os.str();
}

Json cert_to_json(const FactorCertificate& cert) {
  Json j;
  j["t"] = cert.t;
  Json cs = Json::array();
  for (const auto& c : cert.cycles) cs.push_back(c);
  j["cycles"] = std::move(cs);
  j["covered"] = cert.covered();
  return j;
}

FactorCertificate cert_from_json(const Json& j) {
  FactorCertificate c;
  c.t = j.at("t").get<int>();
  for (const auto& cyc : j.at("cycles")) c.cycles.push_back(cyc.get<std::vector<int>>());
  return c;
}

std::map<int, std::string> roles_map(const RootedGadget& g) {
  std::map<int, std::string> m;
  for (int v = 0; v < g.graph.vertex_count(); ++v)
    if (!g.role_of[size_t(v)].empty()) m[v] = g.role_of[size_t(v)];
  return m;
}

Json gadget_to_json(const RootedGadget& g) {
  Json j = graph_to_json(g.graph);
  j["kind"] = gadget_kind_name(g.kind);
  j["t"] = g.t;
  j["k"] = g.k;
  Json roles = Json::object();
  for (auto& [v, role] : roles_map(g)) roles[std::to_string(v)] = role;
  j["roles"] = std::move(roles);
  Json cys = Json::array();
  for (const auto& c : g.cycle_list) cys.push_back(c);
  j["cycles"] = std::move(cys);
  return j;
}

struct CommonOpts {
  std::string out_dir = ".";
  uint64_t seed = 1;
  uint64_t budget_ms = 60000;
};

uint64_t work_units(uint64_t budget_ms) {
  // deterministic work budget: replays are identical on any machine
  return budget_ms * 200'000ULL;
}

int run_gadget_verify(const std::string& pairs, uint64_t budget_ms) {
  std::istringstream ss(pairs);
  std::string tk;
  bool all_ok = true;
  std::printf("%-10s %-14s %-8s %s\n", "pair", "check", "status", "detail");
  while (std::getline(ss, tk, ';')) {
    auto comma = tk.find(',');
    int t = std::stoi(tk.substr(0, comma)), k = std::stoi(tk.substr(comma + 1));
    auto sw = build_switcher(t, k);
    auto ab = build_absorber(t, k);
    auto fc = contract_fconn(ab);
    FactorSearchOptions opts;
    opts.work_budget = work_units(budget_ms);

    auto run_case = [&](const char* name, const Graph& g,
                        const std::vector<std::vector<int>>& hints,
                        const std::vector<int>& drop) {
      FactorSearchOptions o = opts;
      o.hint_cycles = hints;
      std::vector<char> gone(size_t(g.vertex_count()), 0);
      for (int v : drop) gone[size_t(v)] = 1;
      std::vector<int> keep;
      for (int v = 0; v < g.vertex_count(); ++v)
        if (!gone[size_t(v)]) keep.push_back(v);
      o.restrict_to = keep;
      auto res = find_ct_factor(g, t, o);
      bool ok = res.status == SearchStatus::Found &&
                verify_factor(g, *res.certificate, t, keep);
      std::printf("(%d,%d)%-4s %-14s %-8s %zu cycles\n", t, k, "", name,
                  ok ? "pass" : "FAIL",
                  res.certificate ? res.certificate->cycles.size() : 0);
      all_ok = all_ok && ok;
    };
    run_case("Fsw-v", sw.graph, sw.cycle_list, {sw.role_vertex("v")});
    run_case("Fsw-v'", sw.graph, sw.cycle_list, {sw.role_vertex("v'")});
    run_case("Fabs", ab.graph, ab.cycle_list, {});
    std::vector<int> roots;
    for (int i = 1; i <= t; ++i) roots.push_back(ab.role_vertex("r" + std::to_string(i)));
    run_case("Fabs-R", ab.graph, ab.cycle_list, roots);

    auto m2 = two_density_flow(fc.graph);
    bool m2ok = m2.value <= Rat(k, k - 1);
    std::printf("(%d,%d)%-4s %-14s %-8s m2=%s <= %s\n", t, k, "", "m2(Fconn)",
                m2ok ? "pass" : "FAIL", rat_str(m2.value).c_str(),
                rat_str(Rat(k, k - 1)).c_str());
    all_ok = all_ok && m2ok;

    auto labels = blowup_labeling(ab);
    bool lab_ok = true;
    for (auto [u, v] : ab.graph.edges()) {
      int d = std::abs(labels[size_t(u)] - labels[size_t(v)]);
      if (d != 1 && d != t - 1) lab_ok = false;
    }
    std::printf("(%d,%d)%-4s %-14s %-8s\n", t, k, "", "blowup-label",
                lab_ok ? "pass" : "FAIL");
    all_ok = all_ok && lab_ok;
  }
  return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cycle-factor laboratory"};
  app.require_subcommand(1);
  CommonOpts common;
  app.add_option("--out-dir", common.out_dir, "output directory");
  app.add_option("--seed", common.seed, "master seed");
  app.add_option("--budget-ms", common.budget_ms, "deterministic work budget (ms-equivalent)");

  std::vector<std::string> argv_vec(argv, argv + argc);
  auto t0 = std::chrono::steady_clock::now();
  auto wall = [&] {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
  };

  // ---- gadget ----
  auto* gadget = app.add_subcommand("gadget", "build or verify gadget graphs");
  auto* gbuild = gadget->add_subcommand("build", "construct a gadget, emit JSON + DOT");
  int g_t = 3, g_k = 2, g_a = 1, g_b = 2, g_l = 3;
  std::string g_kind = "tree";
  gbuild->add_option("--t", g_t);
  gbuild->add_option("--k", g_k);
  gbuild->add_option("--kind", g_kind,
                     "tree|ladder|switcher|absorber|fconn|fabs-minus|compact");
  gbuild->add_option("--a", g_a, "ladder width a");
  gbuild->add_option("--b", g_b, "ladder width b");
  gbuild->add_option("--l", g_l, "ladder length (odd)");
  auto* gverify = gadget->add_subcommand("verify", "run the absorber property suite");
  std::string g_pairs = "3,2;4,2";
  gverify->add_option("--pairs", g_pairs, "semicolon list like 3,2;4,2");

  // ---- m2 ----
  auto* m2cmd = app.add_subcommand("m2", "exact 2-density of a graph");
  std::string m2_input;
  std::string m2_method = "auto";
  m2cmd->add_option("--input", m2_input, "graph JSON")->required();
  m2cmd->add_option("--method", m2_method, "auto|exact|flow");

  // ---- factor ----
  auto* factor = app.add_subcommand("factor", "exact C_t-factor solving");
  auto* fsolve = factor->add_subcommand("solve", "search for a C_t-factor");
  std::string f_input, f_out = "cert.json";
  int f_t = 3;
  bool f_parts = false;
  fsolve->add_option("--t", f_t);
  fsolve->add_option("--input", f_input)->required();
  fsolve->add_option("--out", f_out);
  fsolve->add_flag("--parts", f_parts, "restrict to canonical copies along parts");
  auto* fverify = factor->add_subcommand("verify", "verify a certificate");
  std::string fv_input, fv_cert;
  int fv_t = 3;
  fverify->add_option("--t", fv_t);
  fverify->add_option("--input", fv_input)->required();
  fverify->add_option("--cert", fv_cert)->required();

  // ---- regcheck ----
  auto* reg = app.add_subcommand("regcheck", "regularity / expansion / typicality");
  std::string r_mode = "pair", r_input;
  std::string r_eps = "1/10", r_p = "1", r_alpha = "1";
  int r_k = 2, r_trials = 200;
  reg->add_option("--mode", r_mode, "pair|gexp|typical");
  reg->add_option("--input", r_input, "partitioned graph JSON (pair: first two parts)")
      ->required();
  reg->add_option("--epsilon", r_eps);
  reg->add_option("--p", r_p);
  reg->add_option("--alpha", r_alpha);
  reg->add_option("--k", r_k);
  reg->add_option("--trials", r_trials);

  // ---- gnp ----
  auto* gnp = app.add_subcommand("gnp", "random graphs and empirical probes");
  auto* gsample = gnp->add_subcommand("sample", "sample G(n,p)");
  long long s_n = 100;
  std::string s_p = "1/2", s_out = "graph.json";
  gsample->add_option("--n", s_n)->required();
  gsample->add_option("--p", s_p, "rational, decimal, or C*n^-a/b")->required();
  gsample->add_option("--out", s_out);
  auto* gblow = gnp->add_subcommand("blowup", "sample a random C_t blow-up");
  int bl_t = 3, bl_nt = 24;
  std::string bl_p = "3/5", bl_alpha = "1", bl_out = "instance.json";
  gblow->add_option("--t", bl_t);
  gblow->add_option("--ntilde", bl_nt)->required();
  gblow->add_option("--p", bl_p);
  gblow->add_option("--alpha", bl_alpha);
  gblow->add_option("--out", bl_out);
  auto* gprobe = gnp->add_subcommand("probe", "edge-bound / k-expansion probes");
  std::string pr_kind = "edge-bound", pr_p = "1/2";
  long long pr_n = 1000;
  int pr_trials = 100, pr_k = 2;
  double pr_c = 3.0, pr_nu = 0.1;
  gprobe->add_option("--kind", pr_kind, "edge-bound|k-expansion|robust-expansion");
  gprobe->add_option("--n", pr_n);
  gprobe->add_option("--p", pr_p);
  gprobe->add_option("--trials", pr_trials);
  gprobe->add_option("--c", pr_c);
  gprobe->add_option("--nu", pr_nu);
  gprobe->add_option("--k", pr_k);

  // ---- attack ----
  auto* attack = app.add_subcommand("attack", "resilience lower-bound attacks");
  std::string a_kind = "second-neighborhood", a_input, a_target = "max-degree";
  int a_t = 4;
  attack->add_option("--kind", a_kind, "second-neighborhood|half-cut");
  attack->add_option("--input", a_input)->required();
  attack->add_option("--target", a_target, "vertex id, max-degree, or independent-neighborhood");
  attack->add_option("--t", a_t, "cycle length for half-cut factor check");

  // ---- template ----
  auto* tmpl = app.add_subcommand("template", "absorption template graphs");
  auto* tbuild = tmpl->add_subcommand("build", "randomized-greedy template");
  int tb_t = 3, tb_m = 1, tb_cap = 3;
  long long tb_maxdeg = 0;
  std::string tb_out = "template.json";
  tbuild->add_option("--t", tb_t);
  tbuild->add_option("--m", tb_m);
  tbuild->add_option("--max-degree", tb_maxdeg, "0 = 40^t");
  tbuild->add_option("--verify-cap", tb_cap);
  tbuild->add_option("--out", tb_out);
  auto* tverify = tmpl->add_subcommand("verify", "exhaustive balanced-deletion check");
  std::string tv_input;
  tverify->add_option("--input", tv_input)->required();

  // ---- pipeline ----
  auto* pipe = app.add_subcommand("pipeline", "absorbing-method pipeline");
  auto* prun = pipe->add_subcommand("run", "run on a blow-up instance");
  std::string p_config, p_input, p_out = "cert.json";
  prun->add_option("--config", p_config, "pipeline config JSON");
  prun->add_option("--input", p_input)->required();
  prun->add_option("--out", p_out);

  // global options (--seed, --out-dir, --budget-ms) may follow a subcommand
  std::function<void(CLI::App*)> allow_fallthrough = [&](CLI::App* a) {
    for (auto* sub : a->get_subcommands({})) {
      sub->fallthrough();
      allow_fallthrough(sub);
    }
  };
  allow_fallthrough(&app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;  // stable usage-error code
  }

  try {
    RunManifest manifest(argv_vec, common.seed);

    if (gbuild->parsed()) {
      RootedGadget g;
      if (g_kind == "tree") g = build_ct_tree(g_t, g_k);
      else if (g_kind == "ladder") g = build_ladder(g_a, g_b, g_l);
      else if (g_kind == "switcher") g = build_switcher(g_t, g_k);
      else if (g_kind == "absorber") g = build_absorber(g_t, g_k);
      else if (g_kind == "compact") g = build_compact_absorber(g_t);
      else if (g_kind == "fconn") g = contract_fconn(build_absorber(g_t, g_k));
      else if (g_kind == "fabs-minus") g = remove_root_trees(build_absorber(g_t, g_k));
      else throw CLI::ValidationError("--kind", "unknown gadget kind");
      manifest.emit(common.out_dir, "gadget.json", gadget_to_json(g).dump(2) + "\n");
      manifest.emit(common.out_dir, "gadget.dot", graph_to_dot(g.graph, roles_map(g)));
      manifest.finalize(common.out_dir, wall());
      std::printf("%s(t=%d,k=%d): %d vertices, %lld edges, %zu defining cycles\n",
                  gadget_kind_name(g.kind), g.t, g.k, g.graph.vertex_count(),
                  g.graph.edge_count(), g.cycle_list.size());
      return 0;
    }
    if (gverify->parsed()) {
      int rc = run_gadget_verify(g_pairs, common.budget_ms);
      manifest.finalize(common.out_dir, wall());
      return rc;
    }
    if (m2cmd->parsed()) {
      Graph g = graph_from_json(Json::parse(read_file(m2_input)));
      TwoDensityResult r;
      if (m2_method == "exact" || (m2_method == "auto" && g.vertex_count() <= 16))
        r = two_density_exact(g);
      else
        r = two_density_flow(g);
      std::printf("%s\n", rat_str(r.value).c_str());
      Json out;
      out["m2"] = rat_str(r.value);
      out["witness"] = r.witness;
      manifest.emit(common.out_dir, "m2.json", out.dump(2) + "\n");
      manifest.finalize(common.out_dir, wall());
      return 0;
    }
    if (fsolve->parsed()) {
      Json j = Json::parse(read_file(f_input));
      FactorSearchOptions opts;
      opts.work_budget = work_units(common.budget_ms);
      Graph g;
      if (f_parts) {
        PartitionedGraph pg = partitioned_from_json(j);
        opts.canonical_parts = pg.parts;
        g = pg.graph;
      } else {
        g = graph_from_json(j);
      }
      auto res = find_ct_factor(g, f_t, opts);
      if (res.status == SearchStatus::Found) {
        manifest.emit(common.out_dir, f_out, cert_to_json(*res.certificate).dump(2) + "\n");
        manifest.finalize(common.out_dir, wall());
        std::printf("found: %zu cycles\n", res.certificate->cycles.size());
        return 0;
      }
      manifest.finalize(common.out_dir, wall());
      std::printf("%s\n", res.status == SearchStatus::None ? "none" : "unknown");
      return res.status == SearchStatus::None ? 1 : 3;
    }
    if (fverify->parsed()) {
      Graph g = graph_from_json(Json::parse(read_file(fv_input)));
      FactorCertificate cert = cert_from_json(Json::parse(read_file(fv_cert)));
      bool ok = verify_factor(g, cert, fv_t, cert.covered());
      std::printf("%s\n", ok ? "valid" : "invalid");
      manifest.finalize(common.out_dir, wall());
      return ok ? 0 : 1;
    }
    if (reg->parsed()) {
      PartitionedGraph pg = partitioned_from_json(Json::parse(read_file(r_input)));
      RegParams params{rat_parse(r_eps), rat_parse(r_p), rat_parse(r_alpha)};
      Json out;
      int rc = 0;
      if (r_mode == "pair") {
        const auto& X = pg.parts[0];
        const auto& Y = pg.parts[1];
        if (int(X.size()) <= 14 && int(Y.size()) <= 14) {
          bool ok = check_regular_exact(pg.graph, X, Y, params);
          out["mode"] = "exact";
          out["regular"] = ok;
          rc = ok ? 0 : 1;
        } else {
          auto v = check_regular_sampled(pg.graph, X, Y, params, r_trials, common.seed);
          out["mode"] = "sampled";
          out["violation_found"] = v.violation_found;
          if (v.violation_found) {
            out["witness_x"] = v.witness_x;
            out["witness_y"] = v.witness_y;
          }
          rc = v.violation_found ? 1 : 0;
        }
      } else if (r_mode == "gexp") {
        GexpOptions go;
        go.sample_trials = r_trials;
        go.seed = common.seed;
        auto rep = check_gexp_membership(pg, pg.t, r_k, params, go);
        out["all_pass"] = rep.all_pass;
        out["pair_densities_ok"] = rep.pair_densities_ok;
        out["pair_regularity_ok"] = rep.pair_regularity_ok;
        for (const auto& c : rep.clauses) {
          out["clauses"][c.clause]["failures"] = c.failures;
          out["clauses"][c.clause]["checks"] = c.checks;
        }
        std::ostringstream csv;
        csv << "vertex,degree_ok,growth_ok,lower_regular_ok\n";
        for (const auto& v : rep.vertices)
          csv << v.vertex << "," << v.degree_ok << "," << v.growth_ok << ","
              << v.lower_regular_ok << "\n";
        manifest.emit(common.out_dir, "census.csv", csv.str());
        rc = rep.all_pass ? 0 : 1;
      } else if (r_mode == "typical") {
        GexpOptions go;
        go.sample_trials = r_trials;
        go.seed = common.seed;
        auto census = typicality_census(pg, pg.t, r_k, params, go);
        long long typical = 0, total = 0;
        std::ostringstream csv;
        csv << "vertex,typical\n";
        for (int v = 0; v < pg.graph.vertex_count(); ++v) {
          if (pg.part_of(v) < 0) continue;
          ++total;
          typical += census[size_t(v)] ? 1 : 0;
          csv << v << "," << int(census[size_t(v)]) << "\n";
        }
        manifest.emit(common.out_dir, "census.csv", csv.str());
        out["typical"] = typical;
        out["total"] = total;
        rc = typical == total ? 0 : 1;
      } else {
        throw CLI::ValidationError("--mode", "unknown mode");
      }
      manifest.emit(common.out_dir, "report.json", out.dump(2) + "\n");
      manifest.finalize(common.out_dir, wall());
      return rc;
    }
    if (gsample->parsed()) {
      Rat p = parse_density(s_p, s_n);
      auto sample = sample_gnp(int(s_n), p, common.seed);
      manifest.emit(common.out_dir, s_out, graph_to_json(sample.graph).dump() + "\n");
      manifest.finalize(common.out_dir, wall());
      std::printf("n=%d p=%s edges=%lld\n", sample.n, rat_str(sample.p).c_str(),
                  sample.graph.edge_count());
      return 0;
    }
    if (gblow->parsed()) {
      Rat p = parse_density(bl_p, bl_nt);
      PartitionedGraph pg =
          sample_blowup_subgraph(bl_t, bl_nt, p, rat_parse(bl_alpha), common.seed);
      manifest.emit(common.out_dir, bl_out, partitioned_to_json(pg).dump() + "\n");
      manifest.finalize(common.out_dir, wall());
      std::printf("t=%d ntilde=%d edges=%lld\n", bl_t, bl_nt, pg.graph.edge_count());
      return 0;
    }
    if (gprobe->parsed()) {
      Rat p = parse_density(pr_p, pr_n);
      auto sample = sample_gnp(int(pr_n), p, common.seed);
      ProbeReport rep;
      if (pr_kind == "edge-bound")
        rep = empirical_edge_bound(sample, pr_trials, pr_c, subseed(common.seed, "probe"));
      else if (pr_kind == "k-expansion")
        rep = empirical_k_expansion(sample, pr_k, pr_nu, pr_trials,
                                    subseed(common.seed, "probe"));
      else if (pr_kind == "robust-expansion") {
        auto pg = sample_blowup_subgraph(3, int(pr_n), p, Rat(1),
                                         subseed(common.seed, "blowup"));
        std::vector<int> schedule;
        for (int q = 0; q <= pr_trials; ++q) schedule.push_back(q * int(pr_n) / 50);
        RegParams rp{Rat(1, 2), p, Rat(1)};
        rep = robust_expansion_experiment(pg, pr_k, Rat(1, 2), schedule, rp, pr_c,
                                          subseed(common.seed, "probe"));
      }
      else
        throw CLI::ValidationError("--kind", "unknown probe kind");
      manifest.emit(common.out_dir, "probe.csv", csv_of(rep));
      manifest.finalize(common.out_dir, wall());
      std::printf("trials=%d violations=%lld\n", pr_trials, rep.violations);
      return 0;
    }
    if (attack->parsed()) {
      Graph g = graph_from_json(Json::parse(read_file(a_input)));
      Json out;
      int rc = 0;
      if (a_kind == "second-neighborhood") {
        int v = a_target == "max-degree" ? max_degree_vertex(g)
                 : a_target == "independent-neighborhood"
                     ? independent_neighborhood_target(g)
                     : std::stoi(a_target);
        auto [after, rep] = attack_second_neighborhood(g, v);
        out["target"] = rep.target_vertex;
        out["deleted_edges"] = rep.deleted_edges;
        out["max_deleted_degree_fraction"] = rat_str(rep.max_deleted_degree_fraction);
        out[rep.post_property] = rep.post_property_holds;
        manifest.emit(common.out_dir, "attacked.json", graph_to_json(after).dump() + "\n");
        rc = rep.post_property_holds ? 1 : 0;  // attack succeeds when v is on no C_5
      } else if (a_kind == "half-cut") {
        auto [after, rep] = attack_half_cut(g, a_t);
        out["deleted_edges"] = rep.deleted_edges;
        out["max_deleted_degree_fraction"] = rat_str(rep.max_deleted_degree_fraction);
        out["factor_search"] = rep.post_search_status == SearchStatus::Found
                                   ? "found"
                                   : rep.post_search_status == SearchStatus::None
                                         ? "none"
                                         : "unknown";
        manifest.emit(common.out_dir, "attacked.json", graph_to_json(after).dump() + "\n");
        rc = rep.post_property_holds ? 1 : 0;
      } else {
        throw CLI::ValidationError("--kind", "unknown attack kind");
      }
      manifest.emit(common.out_dir, "attack.json", out.dump(2) + "\n");
      manifest.finalize(common.out_dir, wall());
      return rc;
    }
    if (tbuild->parsed()) {
      long long maxdeg = tb_maxdeg;
      if (maxdeg <= 0) {
        maxdeg = 1;
        for (int i = 0; i < tb_t; ++i) maxdeg = std::min<long long>(maxdeg * 40, 1'000'000'000);
      }
      TemplateGraph tpl = build_template(tb_t, tb_m, maxdeg, common.seed, tb_cap);
      Json out;
      out["t"] = tpl.t;
      out["m"] = tpl.m;
      out["max_degree"] = tpl.max_degree;
      out["verified"] = tpl.verified;
      Json es = Json::array();
      for (const auto& e : tpl.edges) es.push_back(e);
      out["edges"] = std::move(es);
      manifest.emit(common.out_dir, tb_out, out.dump(2) + "\n");
      manifest.finalize(common.out_dir, wall());
      std::printf("template t=%d m=%d edges=%zu verified=%d\n", tpl.t, tpl.m,
                  tpl.edges.size(), int(tpl.verified));
      return 0;
    }
    if (tverify->parsed()) {
      Json j = Json::parse(read_file(tv_input));
      TemplateGraph tpl;
      tpl.t = j.at("t").get<int>();
      tpl.m = j.at("m").get<int>();
      tpl.max_degree = j.at("max_degree").get<long long>();
      for (const auto& e : j.at("edges")) tpl.edges.push_back(e.get<std::vector<int>>());
      bool ok = verify_template(tpl);
      std::printf("%s\n", ok ? "robust" : "not-robust");
      manifest.finalize(common.out_dir, wall());
      return ok ? 0 : 1;
    }
    if (prun->parsed()) {
      PipelineConfig cfg;
      std::string blob;
      if (!p_config.empty()) {
        blob = read_file(p_config);
        cfg = pipeline_config_from_json(Json::parse(blob));
      }
      if (common.seed != 1) cfg.seed = common.seed;
      manifest.set_config_blob(pipeline_config_to_json(cfg).dump());
      PartitionedGraph pg = partitioned_from_json(Json::parse(read_file(p_input)));
      auto res = run_pipeline(pg, cfg);
      Json out;
      out["status"] = res.status == PipelineStatus::Ok ? "ok" : "failed";
      out["trace"] = res.trace;
      if (res.certificate) out["certificate"] = cert_to_json(*res.certificate);
      manifest.emit(common.out_dir, p_out, out.dump(2) + "\n");
      manifest.finalize(common.out_dir, wall());
      if (res.status == PipelineStatus::Ok) {
        std::printf("ok: %zu cycles\n", res.certificate->cycles.size());
        return 0;
      }
      std::printf("failed at phase %s\n", res.phase.c_str());
      return 3;
    }
  } catch (CLI::Error& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;  // stable usage-error code
  } catch (std::invalid_argument& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return 2;
  } catch (std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
  return 2;
}
