// rect-escape: solve, generate, verify, render and benchmark escape
// instances stored as JSON documents.
//
// Exit status: 0 success, 1 malformed input / failed verification / other
// error, 2 infeasible input or unmet density precondition, 3 inconclusive
// (node budget exhausted, or no feasible rounding trial).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <type_traits>
#include <vector>

#include "CLI11.hpp"
#include "rect_escape/approx.hpp"
#include "rect_escape/boxes.hpp"
#include "rect_escape/exact.hpp"
#include "rect_escape/generate.hpp"
#include "rect_escape/io.hpp"
#include "rect_escape/lp.hpp"
#include "rect_escape/reductions.hpp"
#include "rect_escape/squares.hpp"

namespace re = rect_escape;
using re::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitInconclusive = 3;

struct SolveOptions {
  std::string alg;
  std::optional<int> d, k, p, q;
  double epsilon = 0.1;
  int trials = 32;
  std::uint64_t seed = 0;
  long long node_budget = re::kDefaultNodeBudget;
  std::string mis = "auto";
  bool timing = false;
};

struct SolveOutcome {
  json doc;
  int exit_code = kExitOk;
};

long long default_node_budget() {
  if (const char* env = std::getenv("RECT_ESCAPE_NODE_BUDGET")) {
    try {
      return std::stoll(env);
    } catch (const std::exception&) {
      throw re::EscapeError(re::ErrorKind::kParameter, "RECT_ESCAPE_NODE_BUDGET is not a number");
    }
  }
  return re::kDefaultNodeBudget;
}

const char* kind_name(const re::AnyInstance& inst) {
  switch (inst.index()) {
    case 0: return "rect";
    case 1: return "grid";
    default: return "box3";
  }
}

void apply_overrides(re::AnyInstance& any, const SolveOptions& o) {
  std::visit(
      [&](auto& inst) {
        if (o.d) inst.d = *o.d;
        if (o.k) inst.k = *o.k;
        if constexpr (std::is_same_v<std::decay_t<decltype(inst)>, re::Instance>) {
          if (o.p) inst.p = *o.p;
          if (o.q) inst.q = *o.q;
        }
      },
      any);
}

json base_solution(const re::AnyInstance& inst, const std::string& tag, const std::string& ratio,
                   const json& entries, int count, int density) {
  return {{"format", re::kFormatVersion},
          {"kind", "solution"},
          {"instance_digest", re::instance_digest(inst)},
          {"algorithm", tag},
          {"claimed_ratio", ratio},
          {"extended_count", count},
          {"max_density", density},
          {"assignment", entries},
          {"details", json::object()}};
}

json rect_solution(const re::Instance& inst, const re::Solution& s) {
  return base_solution(inst, s.algorithm_tag, s.claimed_ratio, re::assignment_to_json(s.assignment),
                       s.extended_count,
                       re::max_density(re::apply_assignment(inst, s.assignment)).max_density);
}

template <typename T>
const T& need(const re::AnyInstance& any, const std::string& alg) {
  const T* inst = std::get_if<T>(&any);
  if (!inst) {
    throw re::EscapeError(re::ErrorKind::kParameter,
                          "--alg " + alg + " does not take " + kind_name(any) + " instances");
  }
  return *inst;
}

re::MisPlugin pick_plugin(const std::string& mis, std::size_t n) {
  if (mis == "exact") return re::exact_mis_plugin();
  if (mis == "greedy") return re::greedy_mis_plugin();
  if (mis == "auto") return n <= re::kRectMisCap ? re::exact_mis_plugin() : re::greedy_mis_plugin();
  throw re::EscapeError(re::ErrorKind::kParameter, "--mis must be auto, exact or greedy");
}

SolveOutcome run_solver(const re::AnyInstance& any, const SolveOptions& o) {
  SolveOutcome out;
  const std::string& alg = o.alg;
  if (alg == "brute") {
    if (const auto* g = std::get_if<re::GridInstance>(&any)) {
      const auto r = re::exact_backtracking(*g, re::BacktrackMode::kMaximize, o.node_budget);
      if (r.verdict == re::Verdict::kInconclusive) {
        out.doc = base_solution(any, "brute", "exact", json::array(), 0, 0);
        out.doc["details"]["verdict"] = "inconclusive";
        out.exit_code = kExitInconclusive;
        return out;
      }
      out.doc = base_solution(any, "brute", "exact", re::assignment_to_json(*r.witness), r.rho,
                              re::grid_density(*g, *r.witness).max_density);
      out.doc["details"]["nodes"] = r.nodes;
      return out;
    }
    const auto& inst = need<re::Instance>(any, alg);
    const auto r = re::brute_force_rho(inst);
    out.doc = base_solution(any, "brute", "exact", re::assignment_to_json(r.witness), r.rho,
                            re::max_density(re::apply_assignment(inst, r.witness)).max_density);
    return out;
  }
  if (alg == "fpt") {
    std::optional<int> k = std::visit([](const auto& i) { return i.k; }, any);
    if (!k) throw re::EscapeError(re::ErrorKind::kParameter, "fpt needs k (--k or in the document)");
    re::FptTrace t;
    int density = 0;
    if (const auto* g = std::get_if<re::GridInstance>(&any)) {
      t = re::fpt_solve_grid(*g, *k);
      if (t.witness) density = re::grid_density(*g, *t.witness).max_density;
    } else {
      const auto& inst = need<re::Instance>(any, alg);
      t = re::fpt_solve(inst, *k);
      if (t.witness) density = re::max_density(re::apply_assignment(inst, *t.witness)).max_density;
    }
    const re::Assignment a = t.witness.value_or(re::Assignment{});
    out.doc = base_solution(any, "fpt", "exact", re::assignment_to_json(a), re::extended_count(a),
                            density);
    out.doc["details"] = {{"verdict", re::to_string(t.verdict)}, {"k", *k}, {"p", t.p}, {"q", t.q},
                          {"reached_enumeration", t.reached_enumeration},
                          {"subsets_tried", t.subsets_tried}};
    return out;
  }
  if (alg == "approx4d" || alg == "disjoint") {
    const auto& inst = need<re::Instance>(any, alg);
    re::Solution s;
    bool fallback = false;
    if (alg == "disjoint" && inst.d >= 2) {
      s = re::solve_disjoint(inst);
    } else {
      s = re::solve_general_4d(inst);
      fallback = alg == "disjoint";
    }
    if (s.infeasible_input) {
      throw re::EscapeError(re::ErrorKind::kInfeasibleInput, "input density exceeds d");
    }
    out.doc = rect_solution(inst, s);
    if (fallback) out.doc["details"]["fallback"] = "d = 1 has no (d-1)-fold packing; used approx4d";
    return out;
  }
  if (alg == "lp-round") {
    const auto& inst = need<re::Instance>(any, alg);
    const re::RoundingParams params{o.epsilon, o.trials, o.seed};
    const auto r = re::randomized_solve(inst, params);
    const auto pre = re::check_preconditions(inst, o.epsilon);
    json details = {{"lp_value", r.lp_value},
                    {"epsilon", o.epsilon},
                    {"trials", o.trials},
                    {"seed", o.seed},
                    {"feasible_trials", r.feasible_trials},
                    {"best_trial", r.best_trial},
                    {"trial_max_density", r.trial_max_density},
                    {"alpha", pre.alpha},
                    {"d_threshold", std::isfinite(pre.d_threshold) ? json(pre.d_threshold) : json(nullptr)},
                    {"precondition_satisfied", pre.satisfied},
                    {"effective_constant", pre.effective_constant}};
    if (!r.solution) {
      out.doc = base_solution(any, "lp-round", "1/(1-eps) whp", json::array(), 0,
                              re::input_density(inst));
      out.doc["details"] = std::move(details);
      out.exit_code = kExitInconclusive;
      return out;
    }
    out.doc = rect_solution(inst, *r.solution);
    out.doc["details"] = std::move(details);
    return out;
  }
  if (alg == "square2x") {
    const auto& g = need<re::GridInstance>(any, alg);
    const re::Solution s = re::two_approx(g);
    out.doc = base_solution(any, s.algorithm_tag, s.claimed_ratio,
                            re::assignment_to_json(s.assignment), s.extended_count,
                            re::grid_density(g, s.assignment).max_density);
    return out;
  }
  if (alg == "boxes-general" || alg == "boxes-disjoint") {
    const auto& inst = need<re::Instance3>(any, alg);
    const re::MisPlugin plugin = pick_plugin(o.mis, inst.boxes.size());
    const re::Solution3 s = alg == "boxes-general" ? re::solve_boxes_general(inst, plugin)
                                                   : re::solve_boxes_disjoint(inst, plugin);
    out.doc = base_solution(any, s.algorithm_tag, s.claimed_ratio,
                            re::assignment_to_json(s.assignment), s.extended_count,
                            re::density_of(inst, s.assignment).max_density);
    out.doc["details"]["mis_plugin"] = plugin.name;
    return out;
  }
  if (alg == "constrained") {
    const auto& inst = need<re::Instance>(any, alg);
    if (!inst.p || !inst.q) {
      throw re::EscapeError(re::ErrorKind::kParameter, "constrained needs p and q");
    }
    const auto r = re::constrained_solve(inst, *inst.p, *inst.q, o.node_budget);
    const re::Assignment a = r.witness.value_or(re::Assignment{});
    out.doc = base_solution(any, "constrained", "exact", re::assignment_to_json(a),
                            re::extended_count(a),
                            re::max_density(re::apply_assignment(inst, a)).max_density);
    const auto [h, v] = re::internal_axis_counts(inst, a);
    out.doc["details"] = {{"verdict", re::to_string(r.verdict)}, {"p", *inst.p}, {"q", *inst.q},
                          {"nodes", r.nodes}, {"internal_horizontal", h}, {"internal_vertical", v}};
    if (r.verdict == re::Verdict::kInconclusive) out.exit_code = kExitInconclusive;
    return out;
  }
  throw re::EscapeError(re::ErrorKind::kParameter, "unknown algorithm " + alg);
}

SolveOutcome timed_solve(const re::AnyInstance& any, const SolveOptions& o) {
  const auto start = std::chrono::steady_clock::now();
  SolveOutcome out = run_solver(any, o);
  if (o.timing) {
    const std::chrono::duration<double, std::milli> ms = std::chrono::steady_clock::now() - start;
    out.doc["runtime_ms"] = ms.count();
  }
  return out;
}

int exit_code_for(const re::EscapeError& e) {
  switch (e.kind()) {
    case re::ErrorKind::kInfeasibleInput:
    case re::ErrorKind::kDensityPrecondition:
      return kExitInfeasible;
    default:
      return kExitError;
  }
}

// ------------------------------------------------------------------ bench

std::optional<int> bench_optimum(const re::AnyInstance& any, int cap, long long budget) {
  if (const auto* r = std::get_if<re::Instance>(&any)) {
    if (static_cast<int>(r->rects.size()) > cap || re::input_density(*r) > r->d) return std::nullopt;
    return re::brute_force_rho(*r, cap).rho;
  }
  if (const auto* g = std::get_if<re::GridInstance>(&any)) {
    if (static_cast<int>(g->squares.size()) > cap || re::input_multiplicity(*g) > g->d) {
      return std::nullopt;
    }
    const auto res = re::exact_backtracking(*g, re::BacktrackMode::kMaximize, budget);
    if (res.verdict == re::Verdict::kInconclusive) return std::nullopt;
    return res.rho;
  }
  return std::nullopt;
}

bool applies(const std::string& alg, const re::AnyInstance& any) {
  switch (any.index()) {
    case 0:
      return alg == "brute" || alg == "fpt" || alg == "approx4d" || alg == "disjoint" ||
             alg == "lp-round" || alg == "constrained";
    case 1:
      return alg == "brute" || alg == "fpt" || alg == "square2x";
    default:
      return alg == "boxes-general" || alg == "boxes-disjoint";
  }
}

json run_bench(const std::string& corpus, const std::vector<std::string>& algs,
               const SolveOptions& base, int brute_cap) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(corpus)) {
    throw re::EscapeError(re::ErrorKind::kValidation, "corpus is not a directory: " + corpus);
  }
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(corpus)) {
    if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  json rows = json::array();
  std::map<std::string, json> summary;
  for (const fs::path& f : files) {
    const json doc = re::read_json_file(f.string());
    const std::string kind = doc.value("kind", "");
    if (kind != "rect" && kind != "grid" && kind != "box3") continue;
    const re::AnyInstance inst = re::instance_from_json(doc);
    const std::optional<int> opt = bench_optimum(inst, brute_cap, base.node_budget);
    for (const std::string& alg : algs) {
      if (!applies(alg, inst)) continue;
      SolveOptions o = base;
      o.alg = alg;
      json row = {{"instance", f.filename().string()}, {"algorithm", alg}};
      try {
        const SolveOutcome s = timed_solve(inst, o);
        const int count = s.doc["extended_count"].get<int>();
        row["count"] = count;
        row["exit"] = s.exit_code;
        if (s.doc.contains("runtime_ms")) row["runtime_ms"] = s.doc["runtime_ms"];
        row["opt"] = opt ? json(*opt) : json(nullptr);
        json& agg = summary[alg];
        if (!agg.is_object()) agg = {{"rows", 0}, {"worst_ratio", 1.0}, {"unbounded", 0}};
        agg["rows"] = agg["rows"].get<int>() + 1;
        if (opt) {
          if (count == 0 && *opt > 0) {
            row["ratio"] = nullptr;
            agg["unbounded"] = agg["unbounded"].get<int>() + 1;
          } else {
            const double ratio = count == 0 ? 1.0 : static_cast<double>(*opt) / count;
            row["ratio"] = ratio;
            agg["worst_ratio"] = std::max(agg["worst_ratio"].get<double>(), ratio);
          }
        }
      } catch (const re::EscapeError& e) {
        row["error"] = e.what();
        row["exit"] = exit_code_for(e);
      }
      rows.push_back(std::move(row));
    }
  }
  json sum = json::object();
  for (auto& [alg, agg] : summary) sum[alg] = agg;
  return {{"format", re::kFormatVersion}, {"kind", "bench"}, {"rows", std::move(rows)},
          {"summary", std::move(sum)}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Solve, generate, verify and render rectangle escape instances."};
  app.require_subcommand(1);

  SolveOptions so;
  std::string in_path, out_path = "-";
  auto* solve = app.add_subcommand("solve", "Run one algorithm on an instance document");
  solve->add_option("--alg", so.alg, "Algorithm")
      ->required()
      ->check(CLI::IsMember({"brute", "fpt", "approx4d", "disjoint", "lp-round", "square2x",
                             "boxes-general", "boxes-disjoint", "constrained"}));
  solve->add_option("--in", in_path, "Instance document")->required();
  solve->add_option("--out", out_path, "Solution document (default stdout)");
  solve->add_option("--d", so.d, "Override density budget");
  solve->add_option("--k", so.k, "Override target k");
  solve->add_option("--p", so.p, "Override horizontal target p");
  solve->add_option("--q", so.q, "Override vertical target q");
  solve->add_option("--epsilon", so.epsilon, "Rounding slack in (0, 1/2)");
  solve->add_option("--trials", so.trials, "Rounding trials");
  solve->add_option("--seed", so.seed, "RNG seed");
  solve->add_option("--node-budget", so.node_budget, "Search node budget");
  solve->add_option("--mis", so.mis, "Rectangle MIS plugin for boxes: auto, exact, greedy");
  solve->add_flag("--timing", so.timing, "Record runtime_ms in the output");

  std::string mode, formula_path, graph_path, roles_path;
  int gen_n = 8, gen_m = 6, gen_d = 2;
  long long coord_max = 20, max_side = 6;
  std::uint64_t gen_seed = 0;
  bool gen_disjoint = false;
  std::optional<int> gen_max_input;
  std::string gen_out = "-";
  auto* gen = app.add_subcommand("gen", "Generate an instance document");
  gen->add_option("mode", mode, "random-rect, random-grid, random-box3, reduce-naesat, reduce-mcc")
      ->required()
      ->check(CLI::IsMember({"random-rect", "random-grid", "random-box3", "reduce-naesat",
                             "reduce-mcc"}));
  gen->add_option("--n", gen_n, "Number of objects");
  gen->add_option("--m", gen_m, "Grid side (random-grid)");
  gen->add_option("--d", gen_d, "Density budget");
  gen->add_option("--coord-max", coord_max, "Region side");
  gen->add_option("--max-side", max_side, "Largest side length");
  gen->add_option("--seed", gen_seed, "RNG seed");
  gen->add_flag("--disjoint", gen_disjoint, "Reject overlapping placements");
  gen->add_option("--max-input-density", gen_max_input, "Reject placements above this density");
  gen->add_option("--formula", formula_path, "NAE formula document (reduce-naesat)");
  gen->add_option("--graph", graph_path, "Graph document (reduce-mcc)");
  gen->add_option("--roles", roles_path, "Write the role-map sidecar here");
  gen->add_option("--out", gen_out, "Instance document (default stdout)");

  std::string v_instance, v_assignment, v_out = "-";
  auto* verify = app.add_subcommand("verify", "Check an assignment or solution against an instance");
  verify->add_option("--instance", v_instance, "Instance document")->required();
  verify->add_option("--assignment", v_assignment, "Assignment or solution document")->required();
  verify->add_option("--out", v_out, "Report (default stdout)");

  std::string r_instance, r_assignment, r_roles, r_out;
  int r_scale = 12;
  auto* render = app.add_subcommand("render", "Draw an instance (and assignment) as SVG");
  render->add_option("--instance", r_instance, "Instance document")->required();
  render->add_option("--assignment", r_assignment, "Assignment or solution document");
  render->add_option("--roles", r_roles, "Role-map sidecar");
  render->add_option("--out", r_out, "SVG file")->required();
  render->add_option("--scale", r_scale, "Pixels per unit");

  std::string corpus, b_out = "-";
  std::vector<std::string> b_algs;
  int brute_cap = re::kBruteForceCap;
  SolveOptions bo;
  auto* bench = app.add_subcommand("bench", "Run algorithms over a corpus directory");
  bench->add_option("--corpus", corpus, "Directory of instance documents")->required();
  bench->add_option("--alg", b_algs, "Algorithms (comma separated)")->required()->delimiter(',');
  bench->add_option("--seed", bo.seed, "RNG seed for randomized algorithms");
  bench->add_option("--epsilon", bo.epsilon, "Rounding slack");
  bench->add_option("--trials", bo.trials, "Rounding trials");
  bench->add_option("--brute-cap", brute_cap, "Largest instance given an exact optimum");
  bench->add_option("--mis", bo.mis, "Rectangle MIS plugin for boxes");
  bench->add_flag("--timing", bo.timing, "Record runtimes");
  bench->add_option("--out", b_out, "Table document (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*solve) {
      if (solve->count("--node-budget") == 0) so.node_budget = default_node_budget();
      re::AnyInstance inst = re::instance_from_json(re::read_json_file(in_path));
      apply_overrides(inst, so);
      std::visit([](const auto& i) { re::validate(i); }, inst);
      const SolveOutcome out = timed_solve(inst, so);
      re::write_text(out_path, re::dump_document(out.doc));
      return out.exit_code;
    }
    if (*gen) {
      json doc, roles;
      if (mode == "random-rect") {
        re::RandomRectParams p{gen_n, coord_max, max_side, gen_d, gen_disjoint, gen_max_input};
        doc = re::to_json(re::random_rect_instance(p, gen_seed));
      } else if (mode == "random-grid") {
        doc = re::to_json(re::random_grid_instance({gen_m, gen_n, gen_d}, gen_seed));
      } else if (mode == "random-box3") {
        re::RandomBoxParams p{gen_n, coord_max, max_side, gen_d, gen_disjoint, gen_max_input};
        doc = re::to_json(re::random_box_instance(p, gen_seed));
      } else if (mode == "reduce-naesat") {
        if (formula_path.empty()) throw re::EscapeError(re::ErrorKind::kParameter, "--formula is required");
        const re::NaeArtifact art = re::reduce_naesat(re::formula_from_json(re::read_json_file(formula_path)));
        doc = re::to_json(art.instance);
        roles = re::roles_document(art.instance, art.roles, art.notes);
      } else {
        if (graph_path.empty()) throw re::EscapeError(re::ErrorKind::kParameter, "--graph is required");
        const re::MccArtifact art = re::reduce_mcc(re::graph_from_json(re::read_json_file(graph_path)));
        doc = re::to_json(art.instance);
        roles = re::roles_document(art.instance, art.roles, art.notes);
      }
      re::write_text(gen_out, re::dump_document(doc));
      if (!roles_path.empty()) {
        if (roles.is_null()) throw re::EscapeError(re::ErrorKind::kParameter, "--roles only applies to reductions");
        re::write_text(roles_path, re::dump_document(roles));
      }
      return kExitOk;
    }
    if (*verify) {
      const re::AnyInstance inst = re::instance_from_json(re::read_json_file(v_instance));
      const re::VerifyReport rep = re::verify(inst, re::read_json_file(v_assignment));
      re::write_text(v_out, re::dump_document(re::to_json(rep)));
      return rep.pass ? kExitOk : kExitError;
    }
    if (*render) {
      const re::AnyInstance inst = re::instance_from_json(re::read_json_file(r_instance));
      std::optional<json> a;
      if (!r_assignment.empty()) {
        a = re::read_json_file(r_assignment);
        re::verify(inst, *a);  // digest and domain checks
      }
      const re::RoleMap roles = r_roles.empty() ? re::RoleMap{} : re::roles_from_json(re::read_json_file(r_roles));
      re::write_text(r_out, re::render_svg(inst, a ? &*a : nullptr, roles, r_scale));
      return kExitOk;
    }
    if (*bench) {
      bo.node_budget = default_node_budget();
      re::write_text(b_out, re::dump_document(run_bench(corpus, b_algs, bo, brute_cap)));
      return kExitOk;
    }
  } catch (const re::EscapeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitOk;
}
