#pragma once

// Single self-describing config file per run. The format is a key = value
// text file with [dotted.section] headers; values are strings, numbers,
// booleans, or arrays of strings. Automorphisms come in [aut.NAME]
// sections with images/inverse_images as words over a..z (A..Z inverses)
// and are certified at load time.

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "outcx/experiments.hpp"
#include "outcx/limits.hpp"

namespace outcx {

struct ConfigValue {
  enum class Kind { String, Number, Bool, Array } kind = Kind::String;
  std::string str;
  double num = 0.0;
  bool boolean = false;
  std::vector<std::string> array;
};

struct RawConfig {
  // section -> key -> value; top-level keys live in section "".
  std::map<std::string, std::map<std::string, ConfigValue>> sections;
  std::vector<std::pair<std::string, std::string>> order;  // (section, key) in file order

  const ConfigValue* find(const std::string& section, const std::string& key) const;
};

RawConfig parse_config_text(const std::string& text);
RawConfig parse_config_file(const std::string& path);

struct AutDef {
  std::string name;
  std::vector<std::string> images, inverse_images;
  bool geometric = false;
  std::vector<std::string> boundary;
  std::string literature;
};

// Everything a command needs, built and certified from a config.
struct Workspace {
  RawConfig raw;
  int rank = 2;
  uint64_t seed = 1;
  int workers = 1;
  double eps = 0.05, margin = 0.005, eps_eq = 1e-6;
  int radius = 4;
  int r = -1;  // -1 = connectivity threshold + 1
  int triple_points = 12;
  long quad_budget = 20000;
  TightenOptions tighten;
  std::vector<std::string> system_map_names;
  std::vector<std::string> gen_names;
  std::vector<std::string> testset_extra;

  std::map<std::string, AutDef> aut_defs;
  std::map<std::string, std::shared_ptr<MapSystem>> systems;  // built on demand
  std::map<std::string, FreeGroupAut> auts;                   // certified

  const FreeGroupAut& aut(const std::string& name) const;
  std::shared_ptr<const MapSystem> system(const std::string& name);
  std::vector<ConjClass> testset(const std::string& map_name);
  std::vector<FreeGroupAut> gen_auts() const;
  InstanceSpec instance_spec(const std::string& map_name);

  // A word in generator names joined by '.', composed left to right as a
  // right-action product (rightmost acts first on classes).
  FreeGroupAut translator_from_word(const std::string& word) const;
};

Workspace load_workspace(const std::string& path);
Workspace workspace_from_text(const std::string& text);

}  // namespace outcx
