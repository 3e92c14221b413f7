#include "outcx/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "outcx/currents.hpp"
#include "outcx/report.hpp"
#include "outcx/whitehead.hpp"

namespace outcx {

namespace {

struct CliState {
  std::string config_path;
  std::string out_dir = "out";
};

std::vector<ConjClass> testset_from_file(const std::string& path, int rank) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open test set file: " + path);
  std::vector<ConjClass> out;
  std::string line;
  while (std::getline(in, line)) {
    std::string t;
    for (char c : line)
      if (c != ' ' && c != '\t' && c != '\r') t.push_back(c);
    if (t.empty() || t[0] == '#') continue;
    ConjClass c = parse_class(t, rank);
    if (c.empty()) throw InputError("test set contains a trivial class: " + line);
    out.push_back(c);
  }
  if (out.empty()) throw InputError("empty test set file: " + path);
  return out;
}

void emit(const Json& report) { std::cout << report.dump(2) << "\n"; }

int cmd_analyze(Workspace& ws, const std::string& map_name) {
  auto sys = ws.system(map_name);
  Json j = report_envelope("analyze", ws);
  Json res;
  res["map"] = map_name;
  res["geometric"] = sys->geometric;
  res["literature"] = sys->literature;
  for (const char* dir : {"forward", "backward"}) {
    bool fwd = std::string(dir) == "forward";
    if (!fwd && !sys->bwd) {
      res["backward"] = nullptr;
      continue;
    }
    const TrackedSide& side = fwd ? sys->fwd : *sys->bwd;
    Json s;
    s["train_track"] = true;  // analyze_side would have rejected otherwise
    s["lambda"] = side.eigen.lambda;
    s["edge_lengths"] = side.eigen.edge_lengths;
    s["eigen_residual"] = side.eigen.residual;
    s["K0"] = side.K0;
    s["Kbcc"] = side.Kbcc;
    s["critical_constant"] = side.Ccrit;
    Json turns = Json::array();
    for (const auto& [u, v] : side.legal.illegal_turns()) turns.push_back(u + "," + v);
    s["illegal_turns"] = turns;
    res[dir] = s;
  }
  // Geometric declaration check: search short classes for periodic orbits.
  {
    bool found = false;
    std::string witness;
    for (const ConjClass& c : classes_up_to(ws.rank, 6)) {
      ConjClass cur = c;
      for (int step = 1; step <= 2 && !found; ++step) {
        cur = apply(sys->aut, cur);
        if (cur == c && c.size() >= 2) {
          found = true;
          witness = to_string(c);
        }
      }
      if (found) break;
    }
    res["periodic_class_found"] = found;
    res["periodic_class"] = witness;
    if (found != sys->geometric)
      j["warnings"].push_back("declared geometric flag disagrees with the short-class scan");
  }
  j["results"] = res;
  emit(j);
  return 0;
}

int cmd_limits(Workspace& ws, const std::string& map_name, const std::string& sign_str,
               const std::string& g_word, const std::string& testset_path, double tol, int kmax) {
  auto sys = ws.system(map_name);
  int sign = sign_str == "-" ? -1 : +1;
  FreeGroupAut g = ws.translator_from_word(g_word);
  std::vector<ConjClass> testset =
      testset_path.empty() ? ws.testset(map_name) : testset_from_file(testset_path, ws.rank);
  TightenOptions opt = ws.tighten;
  if (tol > 0) opt.tol = tol;
  if (kmax > 0) opt.kmax = kmax;
  LengthFunctionApprox lf = length_function(*sys, sign, g, testset, opt, g_word);
  Json j = report_envelope("limits", ws);
  Json values = Json::object();
  for (size_t i = 0; i < testset.size(); ++i) values[to_string(testset[i])] = lf.values[i];
  j["results"] = {{"map", map_name},
                  {"sign", sign > 0 ? "+" : "-"},
                  {"g", g_word.empty() ? "id" : g_word},
                  {"values", values},
                  {"raw_sum", lf.raw_sum},
                  {"k_used", lf.k_used},
                  {"error_estimate", lf.error_estimate}};
  emit(j);
  return 0;
}

int cmd_complex_build(Workspace& ws, const CliState& st, int radius, int r,
                      const std::string& dot_path, const std::string& json_path) {
  if (ws.system_map_names.empty()) throw InputError("config: system_maps is empty");
  InstanceSpec spec = ws.instance_spec(ws.system_map_names[0]);
  if (radius > 0) spec.params.radius = radius;
  int use_r = r >= 0 ? r : ws.r;
  ComplexResult res = complex_experiment(spec, ws.triple_points, use_r, ws.quad_budget, ws.seed);

  Json j = report_envelope("complex build", ws);
  j["results"] = to_json(res, /*include_tables=*/true);
  std::string dot = dot_path.empty() ? st.out_dir + "/complex.dot" : dot_path;
  std::string jsn = json_path.empty() ? st.out_dir + "/complex.json" : json_path;
  write_file(dot, to_dot(res));
  write_file(jsn, j.dump(2) + "\n");
  j["results"]["dot_file"] = dot;
  j["results"]["json_file"] = jsn;
  emit(j);

  bool ok = res.connected && res.triangle.violations == 0 && res.rho_violations == 0;
  return ok ? 0 : 1;
}

int cmd_complex_check(Workspace& ws, const std::string& json_path) {
  std::ifstream in(json_path);
  if (!in) throw InputError("cannot open complex file: " + json_path);
  std::stringstream ss;
  ss << in.rdbuf();
  Json file;
  try {
    file = Json::parse(ss.str());
  } catch (const std::exception& e) {
    throw InputError(std::string("complex file is not valid JSON: ") + e.what());
  }

  Json results = file.at("results");
  long table_bad = 0, rho_bad = 0;
  // Shared-point entries must be zero; values nonnegative.
  std::map<std::array<int, 4>, int> table;
  for (const auto& e : results.at("table")) {
    std::array<int, 4> key = {e[0], e[1], e[2], e[3]};
    int val = e[4];
    table[key] = val;
    if (val < 0) ++table_bad;
    for (int a : {key[0], key[1]})
      for (int b : {key[2], key[3]})
        if (a >= 0 && a == b && val != 0) ++table_bad;
  }
  auto lookup = [&](int k1, int k2, int l1, int l2) {
    if (k2 >= 0 && k2 < k1) std::swap(k1, k2);
    if (l2 >= 0 && l2 < l1) std::swap(l1, l2);
    std::array<int, 4> a = {k1, k2, l1, l2}, b = {l1, l2, k1, k2};
    if (b < a) std::swap(a, b);
    for (int x : {a[0], a[1]})
      for (int y : {a[2], a[3]})
        if (x >= 0 && x == y) return 0;
    auto it = table.find(a);
    return it == table.end() ? -1 : it->second;
  };

  // rho entries must be the max over the nine pair-vs-pair crossratios.
  std::vector<std::array<int, 3>> triples;
  for (const auto& t : results.at("triple_list")) triples.push_back({t[0], t[1], t[2]});
  static constexpr int pairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
  for (const auto& e : results.at("rho")) {
    int i = e[0], k = e[1], v = e[2];
    int best = 0;
    bool missing = false;
    for (const auto& pa : pairs)
      for (const auto& pb : pairs) {
        int cr = lookup(triples[i][pa[0]], triples[i][pa[1]], triples[k][pb[0]],
                        triples[k][pb[1]]);
        if (cr < 0) missing = true;
        best = std::max(best, cr);
      }
    if (!missing && best != v) ++rho_bad;
  }

  // Byte-exact round trip of the sparse tables.
  bool roundtrip = Json::parse(results.at("table").dump()).dump() == results.at("table").dump() &&
                   Json::parse(results.at("rho").dump()).dump() == results.at("rho").dump();

  Json j = report_envelope("complex check", ws);
  j["results"] = {{"file", json_path},
                  {"table_entries", table.size()},
                  {"table_violations", table_bad},
                  {"rho_entries", results.at("rho").size()},
                  {"rho_violations", rho_bad},
                  {"roundtrip_bit_exact", roundtrip}};
  emit(j);
  return (table_bad == 0 && rho_bad == 0 && roundtrip) ? 0 : 1;
}

int cmd_experiment(Workspace& ws, const CliState& st, const std::string& which, int lmax, int nmax,
                   int leaves, long budget_flag) {
  long budget = budget_flag > 0 ? budget_flag : ws.quad_budget;
  Json j = report_envelope("experiment " + which, ws);
  int exit_code = 0;

  if (which == "treemodel") {
    TreeModelResult res = tree_model_experiment(leaves >  0 ? leaves : 6, budget, ws.seed);
    j["results"] = to_json(res);
    bool ok = res.mismatches == 0 && res.axioms.k == 0 && res.triangle.violations == 0 &&
              res.connected && res.delta.delta <= 1.0;
    exit_code = ok ? 0 : 1;
  } else if (which == "t2") {
    if (ws.system_map_names.empty()) throw InputError("config: system_maps is empty");
    const std::string map_name = ws.system_map_names[0];
    auto sys = ws.system(map_name);
    const ConfigValue* second = ws.raw.find("experiment.t2", "second");
    if (!second) throw InputError("config: [experiment.t2] second = \"...\" required");
    FreeGroupAut h = ws.translator_from_word(second->str);
    if (!h.inverse_images) throw InputError("t2: the conjugating translator needs inverses");
    int L = lmax > 0 ? lmax : 8;
    T2Result res = t2_experiment(*sys, identity_aut(ws.rank), *sys, h, L, false,
                                 ws.testset(map_name), ws.tighten);
    j["results"] = to_json(res, /*include_rows=*/false);
    j["results"]["lmax"] = L;
    j["results"]["second"] = second->str;
    write_file(st.out_dir + "/t2_table.csv", to_csv(res));
    j["results"]["csv_file"] = st.out_dir + "/t2_table.csv";
    exit_code = res.delta > 0 ? 0 : 1;
  } else if (which == "scaling") {
    if (ws.system_map_names.empty()) throw InputError("config: system_maps is empty");
    const std::string map_name = ws.system_map_names[0];
    auto sys = ws.system(map_name);
    auto ball = enumerate_ball(ws.gen_auts(), ws.gen_names, std::min(ws.radius, 3));
    ScalingReport res = scaling_diagnostic(*sys, identity_aut(ws.rank),
                                           *sys, inverse_of(sys->aut), ball,
                                           ws.testset(map_name), ws.tighten);
    j["results"] = to_json(res);
    write_file(st.out_dir + "/scaling.csv", to_csv(res));
    exit_code = res.frac_max_nondecreasing >= 0.9 ? 0 : 1;
  } else if (which == "a1a2") {
    InstanceSpec spec = ws.instance_spec(ws.system_map_names.at(0));
    A1A2Result res = a1a2_experiment(spec, budget, ws.seed);
    j["results"] = to_json(res);
    bool ok = res.scans[1].axioms.a2_k == 0 && res.scans[1].axioms.quadruples >= 10000 &&
              res.a1_stable;
    exit_code = ok ? 0 : 1;
  } else if (which == "axioms") {
    InstanceSpec spec = ws.instance_spec(ws.system_map_names.at(0));
    DeltaDrift res = delta_drift_experiment(spec, ws.triple_points, ws.r, budget, ws.seed);
    j["results"] = {{"small", to_json(res.small, false)},
                    {"large", to_json(res.large, false)},
                    {"delta_drift", res.drift}};
    bool ok = res.large.connected && res.large.triangle.violations == 0 &&
              res.large.rho_violations == 0 && res.drift < 1.0;
    exit_code = ok ? 0 : 1;
  } else if (which == "translation") {
    InstanceSpec spec = ws.instance_spec(ws.system_map_names.at(0));
    auto sys = ws.system(ws.system_map_names.at(0));
    int N = nmax > 0 ? nmax : 8;
    TranslationResult res = translation_experiment(spec, sys, N, ws.r, ws.triple_points);
    j["results"] = to_json(res);
    exit_code = res.slope >= 0.1 ? 0 : 1;
  } else if (which == "orbit") {
    InstanceSpec spec = ws.instance_spec(ws.system_map_names.at(0));
    const ConfigValue* gens = ws.raw.find("experiment.orbit", "stab_gens");
    if (!gens) throw InputError("config: [experiment.orbit] stab_gens required");
    std::vector<FreeGroupAut> stab;
    for (const std::string& n : gens->array) stab.push_back(ws.aut(n));
    const ConfigValue* marker = ws.raw.find("experiment.orbit", "marker");
    ConjClass mc = parse_class(marker ? marker->str : "a", ws.rank);
    int sr = static_cast<int>(
        ws.raw.find("experiment.orbit", "radius") ? ws.raw.find("experiment.orbit", "radius")->num
                                                  : 3);
    OrbitResult res = orbit_experiment(spec, stab, gens->array, sr, mc);
    j["results"] = to_json(res);
    exit_code = res.bound_holds ? 0 : 1;
  } else if (which == "wpd") {
    InstanceSpec spec = ws.instance_spec(ws.system_map_names.at(0));
    auto sys = ws.system(ws.system_map_names.at(0));
    const ConfigValue* cval = ws.raw.find("experiment.wpd", "C");
    int C = cval ? static_cast<int>(cval->num) : 2;
    std::vector<int> n_values = {0, 1, 6};
    if (const ConfigValue* nv = ws.raw.find("experiment.wpd", "n_list")) {
      n_values.clear();
      for (const std::string& s : nv->array) n_values.push_back(std::stoi(s));
    }
    const ConfigValue* rv = ws.raw.find("experiment.wpd", "radius");
    int wr = rv ? static_cast<int>(rv->num) : 3;
    WpdResult res = wpd_experiment(spec, sys, C, n_values, wr);
    j["results"] = to_json(res);
    // Monotonicity surrogate: the census at the largest n is no bigger
    // than at n = 1 (when both are present).
    bool ok = true;
    long at1 = -1, at_last = -1;
    for (size_t i = 0; i < res.n_values.size(); ++i) {
      if (res.n_values[i] == 1) at1 = res.counts[i];
      if (i + 1 == res.n_values.size()) at_last = res.counts[i];
    }
    if (at1 >= 0 && at_last >= 0) ok = at_last <= at1;
    exit_code = ok ? 0 : 1;
  } else {
    throw InputError("unknown experiment: " + which);
  }
  emit(j);
  return exit_code;
}

}  // namespace

int run_cli(int argc, char** argv) {
  CLI::App app{"annulus-system complexes from free group automorphism dynamics"};
  app.require_subcommand(1);

  CliState st;
  if (const char* env = std::getenv("OUTCX_OUT_DIR")) st.out_dir = env;
  app.add_option("--config", st.config_path, "config file")->required();
  app.add_option("--out", st.out_dir, "directory for side files (DOT/CSV)");

  auto* analyze = app.add_subcommand("analyze", "train track analysis of one map");
  std::string map_name;
  analyze->add_option("--map", map_name, "map name")->required();

  auto* limits_cmd = app.add_subcommand("limits", "normalized length function of a translated tree");
  std::string sign_str = "+", g_word, testset_path;
  double tol_flag = 0;
  int kmax_flag = 0;
  limits_cmd->add_option("--map", map_name, "map name")->required();
  limits_cmd->add_option("--sign", sign_str, "+ or -");
  limits_cmd->add_option("--g", g_word, "translator word in generator names, dot separated");
  limits_cmd->add_option("--testset", testset_path, "file with one class per line");
  limits_cmd->add_option("--tol", tol_flag, "convergence tolerance");
  limits_cmd->add_option("--kmax", kmax_flag, "iteration cap");

  auto* complex_cmd = app.add_subcommand("complex", "build or check the triple complex");
  auto* build = complex_cmd->add_subcommand("build", "build the complex and emit DOT/JSON");
  int radius_flag = 0, r_flag = -1;
  std::string dot_path, json_path;
  build->add_option("--radius", radius_flag, "enumeration radius override");
  build->add_option("--r", r_flag, "edge threshold (default: connectivity threshold + 1)");
  build->add_option("--dot", dot_path, "DOT output path");
  build->add_option("--json", json_path, "JSON output path");
  auto* check = complex_cmd->add_subcommand("check", "re-read and validate an emitted complex");
  std::string check_path;
  check->add_option("--json", check_path, "complex JSON file")->required();

  auto* exp = app.add_subcommand("experiment", "run a named experiment");
  std::string which;
  int lmax = 0, nmax = 0, leaves = 0;
  long budget = 0;
  exp->add_option("name", which,
                  "one of: t2, a1a2, axioms, translation, orbit, wpd, treemodel, scaling")
      ->required();
  exp->add_option("--lmax", lmax, "class length bound (t2)");
  exp->add_option("--nmax", nmax, "iteration bound (translation)");
  exp->add_option("--leaves", leaves, "leaf count (treemodel)");
  exp->add_option("--budget", budget, "scan budget override");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  auto started = std::chrono::steady_clock::now();
  int code = 0;
  try {
    Workspace ws = load_workspace(st.config_path);
    if (*analyze)
      code = cmd_analyze(ws, map_name);
    else if (*limits_cmd)
      code = cmd_limits(ws, map_name, sign_str, g_word, testset_path, tol_flag, kmax_flag);
    else if (*complex_cmd && *build)
      code = cmd_complex_build(ws, st, radius_flag, r_flag, dot_path, json_path);
    else if (*complex_cmd && *check)
      code = cmd_complex_check(ws, check_path);
    else if (*exp)
      code = cmd_experiment(ws, st, which, lmax, nmax, leaves, budget);
    else
      throw InputError("no command given");
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const DegenerateSystemError& e) {
    std::cerr << "degeneracy error: " << e.what() << "\n";
    return 3;
  } catch (const ConvergenceError& e) {
    std::cerr << "convergence error: " << e.what() << "\n";
    return 3;
  }
  auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                     std::chrono::steady_clock::now() - started)
                     .count();
  std::cerr << "elapsed_ms=" << elapsed << "\n";
  return code;
}

}  // namespace outcx
