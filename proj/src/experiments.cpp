#include "outcx/experiments.hpp"

#include <algorithm>

#include "outcx/tree_model.hpp"

namespace outcx {

namespace {

std::vector<int> non_marker_points(const OutInstance& inst, const Bits& mask) {
  std::vector<int> pts;
  for (size_t i = 0; i < inst.sample().size(); ++i)
    if (mask.test(i) && !inst.sample()[i].marker) pts.push_back(static_cast<int>(i));
  return pts;
}

FreeGroupAut power_of(const FreeGroupAut& f, int n) {
  FreeGroupAut out = identity_aut(f.rank);
  FreeGroupAut base = n >= 0 ? f : inverse_of(f);
  for (int i = 0; i < std::abs(n); ++i) out = compose(out, base);
  return out;
}

}  // namespace

std::array<int, 3> pick_base_triple(const OutInstance& inst, double clearance) {
  std::vector<std::vector<double>> poles;
  for (size_t s = 0; s < inst.system_count(); ++s)
    for (int sign : {+1, -1})
      poles.push_back(inst.vector_of(static_cast<int>(s), sign, identity_aut(inst.rank())));

  std::array<int, 3> out = {-1, -1, -1};
  int found = 0;
  for (size_t i = 0; i < inst.sample().size() && found < 3; ++i) {
    const OutSamplePoint& p = inst.sample()[i];
    if (p.marker) continue;
    bool clear = true;
    for (const auto& pole : poles)
      if (point_distance(p.values, pole) < clearance) clear = false;
    if (clear) out[found++] = static_cast<int>(i);
  }
  if (found < 3) throw InputError("could not pick a base triple away from the poles");
  return out;
}

A1A2Result a1a2_experiment(const InstanceSpec& spec, long budget, uint64_t seed) {
  OutInstance inst(spec.systems, spec.gens, spec.gen_names, spec.testset, spec.params);
  A1A2Result out;
  out.pole_separation = inst.pole_separation(0);
  // The radius parameterizes the annulus system; membership quantifiers
  // always run over the full sample (the best finite stand-in for the
  // space), and quadruples are drawn from the shallow point prefix whose
  // separating chains live in shallow translates.
  Bits smask = inst.sample_mask(spec.params.radius);
  Bits quad_mask = inst.sample_mask(spec.params.radius - 2);
  for (int radius : {spec.params.radius - 1, spec.params.radius}) {
    Bits amask = inst.annulus_mask(radius);
    ChainIndex idx(inst.universe(), smask, amask);
    RadiusScan scan;
    scan.radius = radius;
    scan.points = smask.count();
    scan.annuli = amask.count();
    scan.axioms = axiom_scan(idx, non_marker_points(inst, smask), budget, seed);
    scan.shallow_axioms = axiom_scan(idx, non_marker_points(inst, quad_mask), budget, seed);
    out.scans.push_back(std::move(scan));
  }
  out.a1_stable = out.scans[0].shallow_axioms.a1_max == out.scans[1].shallow_axioms.a1_max;
  return out;
}

namespace {

ComplexResult complex_at_radius(const OutInstance& inst, int radius, int triple_points, int r,
                                long budget, uint64_t seed) {
  ComplexResult out;
  // The full sample carries the membership quantifiers; the radius
  // truncates the annulus system.
  Bits smask = inst.sample_mask(inst.params().radius);
  Bits amask = inst.annulus_mask(radius);
  ChainIndex idx(inst.universe(), smask, amask);
  out.points = smask.count();
  out.annuli = idx.active_instances();
  out.relation_edges = idx.relation_edges();

  std::vector<int> pts = non_marker_points(inst, smask);
  out.axioms = crossratio_axioms(idx, pts, budget, seed);
  out.triangle = triangle_check(idx, pts, budget, seed ^ 0x7777);

  Bits tmask(smask.size());
  for (int p : pts) tmask.set(p);
  auto triples = enumerate_triples(tmask, triple_points);
  out.triples = triples.size();
  TripleGraph g = build_triple_graph(idx, triples, r);
  out.r = g.r;
  out.connectivity_threshold = g.connectivity_threshold;
  out.connected = g.connected();
  out.spearman = g.spearman_d_vs_rho;
  if (g.connected()) out.delta = estimate_delta(g, budget, seed ^ 0x1234);

  // Quasi-metric inequality over sampled triple-triples with the scanned k.
  const int k = out.axioms.k;
  const size_t V = triples.size();
  if (V >= 3) {
    uint64_t state = seed ^ 0x9e3779b97f4a7c15ULL;
    auto rnd = [&state]() {
      state += 0x9e3779b97f4a7c15ULL;
      uint64_t z = state;
      z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
      z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
      return z ^ (z >> 31);
    };
    long checks = std::min<long>(budget, 20000);
    int max_defect = 0;
    for (long t = 0; t < checks; ++t) {
      size_t a = rnd() % V, b = rnd() % V, c = rnd() % V;
      if (a == b || b == c || a == c) continue;
      ++out.rho_triples_checked;
      int defect = g.rho[a][c] - g.rho[a][b] - g.rho[b][c];
      max_defect = std::max(max_defect, defect);
      if (defect > k) ++out.rho_violations_axiom_k;
    }
    out.rho_k = max_defect;
    // Violations at the measured constant are zero by construction; a
    // second pass over fresh samples guards the reported constant.
    state = seed ^ 0x51ed2701beefULL;
    for (long t = 0; t < checks; ++t) {
      size_t a = rnd() % V, b = rnd() % V, c = rnd() % V;
      if (a == b || b == c || a == c) continue;
      if (g.rho[a][c] - g.rho[a][b] - g.rho[b][c] > out.rho_k) ++out.rho_violations;
    }
  }
  out.triple_list = std::move(triples);
  out.rho = std::move(g.rho);
  for (size_t i = 0; i < inst.universe().point_labels.size(); ++i)
    out.point_labels.push_back(inst.universe().point_labels[i]);
  out.table = idx.computed_entries();
  return out;
}

}  // namespace

ComplexResult complex_experiment(const InstanceSpec& spec, int triple_points, int r, long budget,
                                 uint64_t seed) {
  OutInstance inst(spec.systems, spec.gens, spec.gen_names, spec.testset, spec.params);
  return complex_at_radius(inst, spec.params.radius, triple_points, r, budget, seed);
}

DeltaDrift delta_drift_experiment(const InstanceSpec& spec, int triple_points, int r, long budget,
                                  uint64_t seed) {
  OutInstance inst(spec.systems, spec.gens, spec.gen_names, spec.testset, spec.params);
  DeltaDrift out;
  out.small = complex_at_radius(inst, spec.params.radius - 1, triple_points, r, budget, seed);
  out.large = complex_at_radius(inst, spec.params.radius, triple_points, r, budget, seed);
  out.drift = std::abs(out.large.delta.delta - out.small.delta.delta);
  return out;
}

TranslationResult translation_experiment(const InstanceSpec& spec,
                                         const std::shared_ptr<const MapSystem>& f, int Nmax,
                                         int r, int triple_points) {
  // Probe instance to pick base points, then the real instance with the
  // orbit translates as extra points and powers of f as extra annuli.
  OutInstance probe(spec.systems, spec.gens, spec.gen_names, spec.testset, spec.params);
  double clearance = spec.params.eps + spec.params.margin;
  std::array<int, 3> base = pick_base_triple(probe, clearance);

  std::vector<ExtraTranslator> extra_pts, extra_ann;
  std::vector<FreeGroupAut> base_tr;
  for (int i = 0; i < 3; ++i) base_tr.push_back(probe.sample()[base[i]].translator);
  for (int n = 1; n <= Nmax; ++n) {
    FreeGroupAut fn = power_of(f->aut, n);
    for (int i = 0; i < 3; ++i)
      extra_pts.push_back({compose(base_tr[i], fn),
                           probe.sample()[base[i]].translator_word + ".f^" + std::to_string(n)});
  }
  for (int j = -(Nmax + 2); j <= Nmax + 2; ++j) {
    if (j == 0) continue;
    extra_ann.push_back({power_of(f->aut, j), "f^" + std::to_string(j)});
  }

  OutInstance inst(spec.systems, spec.gens, spec.gen_names, spec.testset, spec.params, extra_pts,
                   extra_ann);
  ChainIndex idx(inst.universe());

  TranslationResult out;
  std::array<int, 3> x;
  for (int i = 0; i < 3; ++i) {
    const OutSamplePoint& bp = probe.sample()[base[i]];
    x[i] = inst.point_for(bp.system, bp.sign, bp.translator);
    if (x[i] < 0) throw InputError("translation: base point missing from the sample");
    out.base_labels.push_back(inst.sample()[x[i]].label);
  }

  std::vector<std::array<int, 3>> orbit = {x};
  bool all_found = true;
  for (int n = 1; n <= Nmax; ++n) {
    FreeGroupAut fn = power_of(f->aut, n);
    std::array<int, 3> xn;
    for (int i = 0; i < 3; ++i) {
      const OutSamplePoint& bp = probe.sample()[base[i]];
      xn[i] = inst.point_for(bp.system, bp.sign, compose(bp.translator, fn));
      if (xn[i] < 0) all_found = false;
    }
    if (!all_found) break;
    orbit.push_back(xn);
    out.rho_vals.push_back(idx.rho(x, xn));
  }

  // Graph distances over the orbit plus filler triples.
  Bits smask = inst.sample_mask(spec.params.radius + 1);
  auto triples = enumerate_triples(smask, triple_points);
  for (const auto& t : orbit)
    if (std::find(triples.begin(), triples.end(), t) == triples.end()) triples.push_back(t);
  TripleGraph g = build_triple_graph(idx, triples, r);
  out.r = g.r;
  auto index_of = [&](const std::array<int, 3>& t) {
    auto it = std::find(triples.begin(), triples.end(), t);
    return it == triples.end() ? -1 : static_cast<int>(it - triples.begin());
  };
  int x_id = index_of(orbit[0]);
  out.graph_ok = g.connected() && x_id >= 0;
  if (out.graph_ok) {
    // BFS from x.
    std::vector<int> dist(triples.size(), -1);
    dist[x_id] = 0;
    std::vector<int> q = {x_id};
    for (size_t qi = 0; qi < q.size(); ++qi)
      for (int w : g.adj[q[qi]])
        if (dist[w] < 0) {
          dist[w] = dist[q[qi]] + 1;
          q.push_back(w);
        }
    for (size_t n = 1; n < orbit.size(); ++n) {
      int id = index_of(orbit[n]);
      out.dist_vals.push_back(id >= 0 ? dist[id] : -1);
      if (id < 0 || dist[id] < 0) out.graph_ok = false;
    }
  }

  std::vector<double> rho_d(out.rho_vals.begin(), out.rho_vals.end());
  out.slope_rho = slope_fit(rho_d);
  if (out.graph_ok) {
    std::vector<double> dd(out.dist_vals.begin(), out.dist_vals.end());
    out.slope = slope_fit(dd);
  } else {
    out.slope = out.slope_rho;  // flagged fallback to the quasi-metric
  }
  return out;
}

OrbitResult orbit_experiment(const InstanceSpec& spec, const std::vector<FreeGroupAut>& stab_gens,
                             const std::vector<std::string>& stab_names, int stab_radius,
                             const ConjClass& marker_class) {
  if (marker_class.empty()) throw InputError("orbit experiment: empty marker class");
  for (size_t i = 0; i < stab_gens.size(); ++i) {
    if (!(apply(stab_gens[i], marker_class) == marker_class))
      throw InputError("orbit experiment: generator '" + stab_names[i] +
                       "' moves the marker class");
  }

  OutInstance probe(spec.systems, spec.gens, spec.gen_names, spec.testset, spec.params);
  std::array<int, 3> base = pick_base_triple(probe, spec.params.eps + spec.params.margin);

  auto stab_ball = enumerate_ball(stab_gens, stab_names, stab_radius);
  std::vector<ExtraTranslator> extra_pts;
  std::vector<FreeGroupAut> base_tr;
  for (int i = 0; i < 3; ++i) base_tr.push_back(probe.sample()[base[i]].translator);
  for (const BallElement& el : stab_ball) {
    if (el.length == 0) continue;
    for (int i = 0; i < 3; ++i)
      extra_pts.push_back(
          {compose(base_tr[i], el.aut),
           probe.sample()[base[i]].translator_word + "." + el.gen_word});
  }

  OutInstance inst(spec.systems, spec.gens, spec.gen_names, spec.testset, spec.params, extra_pts,
                   {}, /*add_marker=*/true, marker_class);
  ChainIndex idx(inst.universe());

  OrbitResult out;
  out.marker = to_string(marker_class);
  int marker = inst.marker_point();

  std::vector<std::array<int, 3>> orbit;
  for (const BallElement& el : stab_ball) {
    std::array<int, 3> t;
    bool ok = true;
    for (int i = 0; i < 3; ++i) {
      const OutSamplePoint& bp = probe.sample()[base[i]];
      t[i] = inst.point_for(bp.system, bp.sign, compose(bp.translator, el.aut));
      ok = ok && t[i] >= 0;
    }
    if (ok) orbit.push_back(t);
  }
  if (orbit.empty()) throw InputError("orbit experiment: no orbit points found");
  out.orbit_size = static_cast<int>(orbit.size());
  for (int i = 0; i < 3; ++i) out.base_labels.push_back(inst.sample()[orbit[0][i]].label);

  static constexpr int pairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
  int N = 0;
  for (const auto& pr : pairs)
    N = std::max(N, idx.crossratio_ps(orbit[0][pr[0]], orbit[0][pr[1]], marker));
  out.n_bound = N;

  int diam = 0, lower = 0;
  for (size_t i = 0; i < orbit.size(); ++i) {
    for (const auto& pr : pairs)
      lower = std::max(lower, idx.crossratio_ps(orbit[i][pr[0]], orbit[i][pr[1]], marker));
    for (size_t j = i + 1; j < orbit.size(); ++j)
      diam = std::max(diam, idx.rho(orbit[i], orbit[j]));
  }
  out.diameter = diam;
  out.lower_witness = lower;
  out.bound_holds = diam <= 2 * N + 2;
  return out;
}

WpdResult wpd_experiment(const InstanceSpec& spec, const std::shared_ptr<const MapSystem>& f,
                         int C, const std::vector<int>& n_values, int census_radius) {
  OutInstanceParams params = spec.params;
  params.radius = std::min(params.radius, census_radius);
  OutInstance probe(spec.systems, spec.gens, spec.gen_names, spec.testset, spec.params);
  std::array<int, 3> base = pick_base_triple(probe, params.eps + params.margin);
  std::vector<FreeGroupAut> base_tr;
  for (int i = 0; i < 3; ++i) base_tr.push_back(probe.sample()[base[i]].translator);

  auto ball = enumerate_ball(spec.gens, spec.gen_names, census_radius);

  std::vector<ExtraTranslator> extra_pts;
  for (int i = 0; i < 3; ++i)
    extra_pts.push_back({base_tr[i], "x" + std::to_string(i)});
  for (const BallElement& g : ball) {
    for (int i = 0; i < 3; ++i) {
      if (g.length > 0)
        extra_pts.push_back({compose(base_tr[i], g.aut), "x" + std::to_string(i) + "." + g.gen_word});
    }
    for (int n : n_values) {
      if (n == 0) continue;
      FreeGroupAut fn = power_of(f->aut, n);
      for (int i = 0; i < 3; ++i)
        extra_pts.push_back({compose(base_tr[i], compose(fn, g.aut)),
                             "x" + std::to_string(i) + ".f^" + std::to_string(n) + "." + g.gen_word});
    }
  }
  for (int n : n_values) {
    if (n == 0) continue;
    FreeGroupAut fn = power_of(f->aut, n);
    for (int i = 0; i < 3; ++i)
      extra_pts.push_back({compose(base_tr[i], fn), "x" + std::to_string(i) + ".f^" + std::to_string(n)});
  }

  OutInstance inst(spec.systems, spec.gens, spec.gen_names, spec.testset, params, extra_pts, {});
  ChainIndex idx(inst.universe());

  auto locate = [&](const FreeGroupAut& tail) {
    std::array<int, 3> t;
    for (int i = 0; i < 3; ++i) {
      const OutSamplePoint& bp = probe.sample()[base[i]];
      t[i] = inst.point_for(bp.system, bp.sign, compose(bp.translator, tail));
      if (t[i] < 0) throw InputError("wpd census: orbit point missing from the sample");
    }
    return t;
  };

  WpdResult out;
  out.C = C;
  out.n_values = n_values;
  out.ball_size = static_cast<long>(ball.size());
  std::array<int, 3> x = locate(identity_aut(f->aut.rank));
  for (int n : n_values) {
    FreeGroupAut fn = power_of(f->aut, n);
    std::array<int, 3> xf = n == 0 ? x : locate(fn);
    long count = 0;
    for (const BallElement& g : ball) {
      std::array<int, 3> xg = locate(g.aut);
      if (idx.rho(x, xg) > C) continue;
      std::array<int, 3> xfg = n == 0 ? xg : locate(compose(fn, g.aut));
      if (idx.rho(xf, xfg) <= C) ++count;
    }
    out.counts.push_back(count);
  }
  return out;
}

TreeModelResult tree_model_experiment(int leaves, long budget, uint64_t seed) {
  TreeModel tm = caterpillar_tree(leaves);
  ChainIndex idx(tm.universe);
  TreeModelResult out;
  out.leaves = leaves;
  for (int x1 = 0; x1 < leaves; ++x1)
    for (int x2 = x1 + 1; x2 < leaves; ++x2)
      for (int y1 = 0; y1 < leaves; ++y1)
        for (int y2 = y1 + 1; y2 < leaves; ++y2) {
          ++out.pairs_checked;
          bool share = x1 == y1 || x1 == y2 || x2 == y1 || x2 == y2;
          int want = share ? 0 : subtree_distance_oracle(tm, x1, x2, y1, y2);
          if (idx.crossratio_pp(x1, x2, y1, y2) != want) ++out.mismatches;
        }
  std::vector<int> pts(leaves);
  for (int i = 0; i < leaves; ++i) pts[i] = i;
  out.axioms = crossratio_axioms(idx, pts, budget, seed);
  out.triangle = triangle_check(idx, pts, budget, seed ^ 0x31);
  auto triples = enumerate_triples(Bits::all(leaves), leaves);
  TripleGraph g = build_triple_graph(idx, triples, -1);
  out.connected = g.connected();
  if (g.connected()) out.delta = estimate_delta(g, budget, seed ^ 0x77);
  return out;
}

}  // namespace outcx
