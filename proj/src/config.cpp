#include "outcx/config.hpp"

#include <fstream>
#include <sstream>

namespace outcx {

namespace {

[[noreturn]] void parse_fail(int line, int col, const std::string& what) {
  throw InputError("config parse error at line " + std::to_string(line) + ", column " +
                   std::to_string(col) + ": " + what);
}

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

ConfigValue parse_value(const std::string& text, int line, int col) {
  ConfigValue v;
  std::string t = trim(text);
  if (t.empty()) parse_fail(line, col, "empty value");
  if (t.front() == '"') {
    if (t.size() < 2 || t.back() != '"') parse_fail(line, col, "unterminated string");
    v.kind = ConfigValue::Kind::String;
    v.str = t.substr(1, t.size() - 2);
    return v;
  }
  if (t.front() == '[') {
    if (t.back() != ']') parse_fail(line, col, "unterminated array");
    v.kind = ConfigValue::Kind::Array;
    std::string inner = t.substr(1, t.size() - 2);
    std::string cur;
    bool in_str = false;
    for (char c : inner) {
      if (c == '"') {
        in_str = !in_str;
        continue;
      }
      if (c == ',' && !in_str) {
        std::string item = trim(cur);
        if (!item.empty()) v.array.push_back(item);
        cur.clear();
      } else {
        cur.push_back(c);
      }
    }
    std::string item = trim(cur);
    if (!item.empty()) v.array.push_back(item);
    if (in_str) parse_fail(line, col, "unterminated string in array");
    return v;
  }
  if (t == "true" || t == "false") {
    v.kind = ConfigValue::Kind::Bool;
    v.boolean = t == "true";
    return v;
  }
  try {
    size_t used = 0;
    v.num = std::stod(t, &used);
    if (used != t.size()) parse_fail(line, col, "trailing characters after number '" + t + "'");
    v.kind = ConfigValue::Kind::Number;
    return v;
  } catch (const std::exception&) {
    parse_fail(line, col, "cannot parse value '" + t + "'");
  }
}

}  // namespace

const ConfigValue* RawConfig::find(const std::string& section, const std::string& key) const {
  auto sit = sections.find(section);
  if (sit == sections.end()) return nullptr;
  auto kit = sit->second.find(key);
  if (kit == sit->second.end()) return nullptr;
  return &kit->second;
}

RawConfig parse_config_text(const std::string& text) {
  RawConfig cfg;
  std::istringstream in(text);
  std::string line;
  std::string section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    if (t.front() == '[') {
      if (t.back() != ']') parse_fail(lineno, 1, "unterminated section header");
      section = trim(t.substr(1, t.size() - 2));
      if (section.empty()) parse_fail(lineno, 2, "empty section name");
      continue;
    }
    size_t eq = t.find('=');
    if (eq == std::string::npos) parse_fail(lineno, 1, "expected key = value");
    std::string key = trim(t.substr(0, eq));
    if (key.empty()) parse_fail(lineno, 1, "empty key");
    ConfigValue v = parse_value(t.substr(eq + 1), lineno, static_cast<int>(eq) + 2);
    cfg.sections[section][key] = std::move(v);
    cfg.order.emplace_back(section, key);
  }
  return cfg;
}

RawConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

namespace {

double number_or(const RawConfig& raw, const std::string& sec, const std::string& key,
                 double fallback) {
  const ConfigValue* v = raw.find(sec, key);
  if (!v) return fallback;
  if (v->kind != ConfigValue::Kind::Number)
    throw InputError("config key '" + key + "' must be a number");
  return v->num;
}

std::vector<std::string> array_or(const RawConfig& raw, const std::string& sec,
                                  const std::string& key, std::vector<std::string> fallback) {
  const ConfigValue* v = raw.find(sec, key);
  if (!v) return fallback;
  if (v->kind != ConfigValue::Kind::Array)
    throw InputError("config key '" + key + "' must be an array");
  return v->array;
}

}  // namespace

const FreeGroupAut& Workspace::aut(const std::string& name) const {
  auto it = auts.find(name);
  if (it == auts.end()) throw InputError("unknown automorphism '" + name + "'");
  return it->second;
}

std::shared_ptr<const MapSystem> Workspace::system(const std::string& name) {
  auto it = systems.find(name);
  if (it != systems.end()) return it->second;
  auto dit = aut_defs.find(name);
  if (dit == aut_defs.end()) throw InputError("unknown map '" + name + "'");
  const AutDef& def = dit->second;
  std::vector<ConjClass> boundary;
  for (const std::string& b : def.boundary) boundary.push_back(parse_class(b, rank));
  auto sys = std::make_shared<MapSystem>(
      make_map_system(name, aut(name), def.geometric, boundary, def.literature));
  systems.emplace(name, sys);
  return sys;
}

std::vector<ConjClass> Workspace::testset(const std::string& map_name) {
  auto sys = system(map_name);
  std::vector<ConjClass> extras;
  for (const std::string& e : testset_extra) extras.push_back(parse_class(e, rank));
  return default_test_set(rank, sys->boundary_classes, extras);
}

std::vector<FreeGroupAut> Workspace::gen_auts() const {
  std::vector<FreeGroupAut> out;
  for (const std::string& g : gen_names) out.push_back(aut(g));
  return out;
}

InstanceSpec Workspace::instance_spec(const std::string& map_name) {
  InstanceSpec spec;
  spec.systems = {system(map_name)};
  spec.gens = gen_auts();
  spec.gen_names = gen_names;
  spec.testset = testset(map_name);
  spec.params.eps = eps;
  spec.params.margin = margin;
  spec.params.eps_eq = eps_eq;
  spec.params.radius = radius;
  spec.params.workers = workers;
  spec.params.tighten = tighten;
  return spec;
}

FreeGroupAut Workspace::translator_from_word(const std::string& word) const {
  if (word.empty() || word == "id") return identity_aut(rank);
  FreeGroupAut out = identity_aut(rank);
  std::string cur;
  std::vector<std::string> parts;
  for (char c : word) {
    if (c == '.') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  parts.push_back(cur);
  for (const std::string& p : parts) out = compose(out, aut(p));
  return out;
}

Workspace workspace_from_text(const std::string& text) {
  Workspace ws;
  ws.raw = parse_config_text(text);
  const RawConfig& raw = ws.raw;

  ws.rank = static_cast<int>(number_or(raw, "", "rank", 2));
  if (ws.rank < 2 || ws.rank > 26) throw InputError("rank must be in [2,26]");
  ws.seed = static_cast<uint64_t>(number_or(raw, "", "seed", 1));
  ws.workers = static_cast<int>(number_or(raw, "", "workers", 1));
  ws.eps = number_or(raw, "", "eps", 0.05);
  ws.margin = number_or(raw, "", "margin", 0.005);
  ws.eps_eq = number_or(raw, "", "eps_eq", 1e-6);
  ws.radius = static_cast<int>(number_or(raw, "", "radius", 4));
  ws.r = static_cast<int>(number_or(raw, "", "r", -1));
  ws.triple_points = static_cast<int>(number_or(raw, "", "triple_points", 12));
  ws.quad_budget = static_cast<long>(number_or(raw, "", "quad_budget", 20000));
  ws.tighten.tol = number_or(raw, "", "tol", 1e-9);
  ws.tighten.kmax = static_cast<int>(number_or(raw, "", "kmax", 60));
  ws.system_map_names = array_or(raw, "", "system_maps", {});
  ws.gen_names = array_or(raw, "", "gens", {});
  ws.testset_extra = array_or(raw, "", "testset_extra", {});

  if (ws.eps <= 0 || ws.margin <= 0 || ws.margin >= ws.eps)
    throw InputError("need 0 < margin < eps");

  for (const auto& [section, kv] : raw.sections) {
    if (section.rfind("aut.", 0) != 0) continue;
    AutDef def;
    def.name = section.substr(4);
    if (def.name.empty()) throw InputError("automorphism section with empty name");
    auto images = kv.find("images");
    if (images == kv.end() || images->second.kind != ConfigValue::Kind::Array)
      throw InputError("automorphism '" + def.name + "': images array required");
    def.images = images->second.array;
    auto inv = kv.find("inverse_images");
    if (inv != kv.end()) def.inverse_images = inv->second.array;
    auto geo = kv.find("geometric");
    if (geo != kv.end()) def.geometric = geo->second.boolean;
    auto bnd = kv.find("boundary");
    if (bnd != kv.end()) def.boundary = bnd->second.array;
    auto lit = kv.find("literature");
    if (lit != kv.end()) def.literature = lit->second.str;
    ws.aut_defs.emplace(def.name, std::move(def));
  }

  for (const auto& [name, def] : ws.aut_defs) {
    FreeGroupAut f;
    f.rank = ws.rank;
    if (static_cast<int>(def.images.size()) != ws.rank)
      throw InputError("automorphism '" + name + "': expected " + std::to_string(ws.rank) +
                       " images");
    for (const std::string& s : def.images) f.images.push_back(parse_word(s, ws.rank));
    if (!def.inverse_images.empty()) {
      if (static_cast<int>(def.inverse_images.size()) != ws.rank)
        throw InputError("automorphism '" + name + "': expected " + std::to_string(ws.rank) +
                         " inverse images");
      std::vector<Word> inv;
      for (const std::string& s : def.inverse_images) inv.push_back(parse_word(s, ws.rank));
      f.inverse_images = std::move(inv);
      certify_automorphism(f, name);
    }
    ws.auts.emplace(name, std::move(f));
  }

  for (const std::string& g : ws.gen_names)
    if (!ws.aut(g).inverse_images)
      throw InputError("generator '" + g + "' needs inverse_images");

  return ws;
}

Workspace load_workspace(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return workspace_from_text(ss.str());
}

}  // namespace outcx
