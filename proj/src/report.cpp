#include "outcx/report.hpp"

#include <filesystem>
#include <fstream>

namespace outcx {

Json config_echo(const Workspace& ws) {
  Json echo = Json::object();
  for (const auto& [section, key] : ws.raw.order) {
    const ConfigValue* v = ws.raw.find(section, key);
    if (!v) continue;
    std::string flat = section.empty() ? key : section + "." + key;
    switch (v->kind) {
      case ConfigValue::Kind::String:
        echo[flat] = v->str;
        break;
      case ConfigValue::Kind::Number:
        echo[flat] = v->num;
        break;
      case ConfigValue::Kind::Bool:
        echo[flat] = v->boolean;
        break;
      case ConfigValue::Kind::Array:
        echo[flat] = v->array;
        break;
    }
  }
  return echo;
}

Json report_envelope(const std::string& command, const Workspace& ws) {
  Json j = Json::object();
  j["schema"] = 1;
  j["command"] = command;
  j["seed"] = ws.seed;
  j["config"] = config_echo(ws);
  j["warnings"] = Json::array();
  return j;
}

Json to_json(const ComplexResult& r, bool include_tables) {
  Json j;
  j["points"] = r.points;
  j["annuli"] = r.annuli;
  j["relation_edges"] = r.relation_edges;
  j["axioms"] = {{"c1_k", r.axioms.c1_k},
                 {"c2_k", r.axioms.c2_k},
                 {"k", r.axioms.k},
                 {"fours", r.axioms.fours},
                 {"fives", r.axioms.fives},
                 {"path_checked", r.axioms.path_checked},
                 {"path_ok", r.axioms.path_ok}};
  j["triangle"] = {{"checked", r.triangle.checked},
                   {"violations", r.triangle.violations},
                   {"witness", r.triangle.witness}};
  j["r"] = r.r;
  j["connectivity_threshold"] = r.connectivity_threshold;
  j["triples"] = r.triples;
  j["connected"] = r.connected;
  j["spearman_d_vs_rho"] = r.spearman;
  j["delta"] = {{"value", r.delta.delta},
                {"quadruples", r.delta.quadruples},
                {"exhaustive", r.delta.exhaustive},
                {"diameter", r.delta.diameter}};
  j["rho_triangle"] = {{"checked", r.rho_triples_checked},
                       {"rho_k", r.rho_k},
                       {"violations_at_rho_k", r.rho_violations},
                       {"violations_at_axiom_k", r.rho_violations_axiom_k}};
  if (include_tables) {
    Json sample = Json::array();
    for (const auto& s : r.point_labels) sample.push_back(s);
    j["sample"] = sample;
    Json triples = Json::array();
    for (const auto& t : r.triple_list) triples.push_back({t[0], t[1], t[2]});
    j["triple_list"] = triples;
    Json rho = Json::array();
    for (size_t i = 0; i < r.rho.size(); ++i)
      for (size_t k = i + 1; k < r.rho.size(); ++k)
        if (r.rho[i][k] > 0) rho.push_back({i, k, r.rho[i][k]});
    j["rho"] = rho;
    Json table = Json::array();
    for (const auto& e : r.table) table.push_back({e[0], e[1], e[2], e[3], e[4]});
    j["table"] = table;
  }
  return j;
}

Json to_json(const A1A2Result& r) {
  Json j;
  j["pole_separation"] = r.pole_separation;
  j["a1_stable"] = r.a1_stable;
  Json scans = Json::array();
  for (const auto& s : r.scans) {
    scans.push_back({{"radius", s.radius},
                     {"points", s.points},
                     {"annuli", s.annuli},
                     {"quadruples", s.axioms.quadruples},
                     {"a1_max", s.axioms.a1_max},
                     {"a1_witness", s.axioms.a1_witness},
                     {"a2_k", s.axioms.a2_k},
                     {"a2_witness", s.axioms.a2_witness},
                     {"a2_nonzero", s.axioms.a2_nonzero},
                     {"shallow_quadruples", s.shallow_axioms.quadruples},
                     {"shallow_a1_max", s.shallow_axioms.a1_max}});
  }
  j["scans"] = scans;
  return j;
}

Json to_json(const TranslationResult& r) {
  Json j;
  j["base"] = r.base_labels;
  j["rho"] = r.rho_vals;
  j["graph_distances"] = r.dist_vals;
  j["graph_ok"] = r.graph_ok;
  j["slope_rho"] = r.slope_rho;
  j["slope"] = r.slope;
  j["metric"] = r.graph_ok ? "graph" : "rho-fallback";
  j["r"] = r.r;
  return j;
}

Json to_json(const OrbitResult& r) {
  Json j;
  j["base"] = r.base_labels;
  j["marker"] = r.marker;
  j["orbit_size"] = r.orbit_size;
  j["n_bound"] = r.n_bound;
  j["diameter"] = r.diameter;
  j["bound_2n_plus_2"] = 2 * r.n_bound + 2;
  j["bound_holds"] = r.bound_holds;
  j["lower_witness"] = r.lower_witness;
  return j;
}

Json to_json(const WpdResult& r) {
  Json j;
  j["C"] = r.C;
  j["ball_size"] = r.ball_size;
  j["n_values"] = r.n_values;
  j["counts"] = r.counts;
  return j;
}

Json to_json(const TreeModelResult& r) {
  Json j;
  j["leaves"] = r.leaves;
  j["pairs_checked"] = r.pairs_checked;
  j["mismatches"] = r.mismatches;
  j["axioms_k"] = r.axioms.k;
  j["path_checked"] = r.axioms.path_checked;
  j["path_ok"] = r.axioms.path_ok;
  j["triangle_violations"] = r.triangle.violations;
  j["connected"] = r.connected;
  j["delta"] = r.delta.delta;
  j["delta_exhaustive"] = r.delta.exhaustive;
  return j;
}

Json to_json(const T2Result& r, bool include_rows) {
  Json j;
  j["delta"] = r.delta;
  j["delta_class"] = r.delta_class;
  j["ceiling"] = r.ceiling;
  j["ceiling_class"] = r.ceiling_class;
  j["classes_scanned"] = r.classes_scanned;
  if (include_rows) {
    Json rows = Json::array();
    for (const auto& row : r.rows)
      rows.push_back({{"class", row.cls}, {"len", row.len}, {"a", row.a}, {"b", row.b}});
    j["rows"] = rows;
  }
  return j;
}

Json to_json(const ScalingReport& r) {
  Json j;
  j["frac_max_nondecreasing"] = r.frac_max_nondecreasing;
  Json rows = Json::array();
  for (const auto& row : r.rows)
    rows.push_back(
        {{"g", row.g}, {"len", row.len}, {"scale_p", row.scale_p}, {"scale_q", row.scale_q}});
  j["rows"] = rows;
  return j;
}

Json to_json(const PairingEstimate& e) {
  Json j;
  j["value"] = e.value;
  j["k_used"] = e.k_used;
  j["error_estimate"] = e.error_estimate;
  j["converged"] = e.converged;
  j["periodic"] = e.periodic;
  j["sequence"] = e.sequence;
  return j;
}

std::string to_dot(const ComplexResult& r) {
  std::string out = "graph complex {\n";
  for (size_t i = 0; i < r.triple_list.size(); ++i) {
    const auto& t = r.triple_list[i];
    out += "  v" + std::to_string(i) + " [label=\"(" + std::to_string(t[0]) + "," +
           std::to_string(t[1]) + "," + std::to_string(t[2]) + ")\"];\n";
  }
  for (size_t i = 0; i < r.rho.size(); ++i)
    for (size_t k = i + 1; k < r.rho.size(); ++k)
      if (r.rho[i][k] <= r.r)
        out += "  v" + std::to_string(i) + " -- v" + std::to_string(k) + " [weight=" +
               std::to_string(r.rho[i][k]) + "];\n";
  out += "}\n";
  return out;
}

std::string to_csv(const T2Result& r) {
  std::string out = "class,len,a,b,max_over_len\n";
  for (const auto& row : r.rows) {
    double m = std::max(row.a, row.b) / row.len;
    out += row.cls + "," + std::to_string(row.len) + "," + std::to_string(row.a) + "," +
           std::to_string(row.b) + "," + std::to_string(m) + "\n";
  }
  return out;
}

std::string to_csv(const ScalingReport& r) {
  std::string out = "g,len,scale_p,scale_q\n";
  for (const auto& row : r.rows)
    out += row.g + "," + std::to_string(row.len) + "," + std::to_string(row.scale_p) + "," +
           std::to_string(row.scale_q) + "\n";
  return out;
}

void write_file(const std::string& path, const std::string& content) {
  std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write file: " + path);
  out << content;
}

}  // namespace outcx
