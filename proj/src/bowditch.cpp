#include "outcx/bowditch.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <numeric>

namespace outcx {

size_t Bits::count() const {
  size_t c = 0;
  for (uint64_t x : w_) c += std::popcount(x);
  return c;
}

bool Bits::any() const {
  for (uint64_t x : w_)
    if (x) return true;
  return false;
}

bool Bits::union_covers(const Bits& other, const Bits& mask) const {
  for (size_t i = 0; i < w_.size(); ++i)
    if ((~(w_[i] | other.w_[i]) & mask.w_[i]) != 0) return false;
  return true;
}

bool Bits::covers(const Bits& mask) const {
  for (size_t i = 0; i < w_.size(); ++i)
    if ((~w_[i] & mask.w_[i]) != 0) return false;
  return true;
}

bool Bits::intersects(const Bits& other) const {
  for (size_t i = 0; i < w_.size(); ++i)
    if (w_[i] & other.w_[i]) return true;
  return false;
}

Bits Bits::operator&(const Bits& o) const {
  Bits out(n_);
  for (size_t i = 0; i < w_.size(); ++i) out.w_[i] = w_[i] & o.w_[i];
  return out;
}

Bits Bits::operator|(const Bits& o) const {
  Bits out(n_);
  for (size_t i = 0; i < w_.size(); ++i) out.w_[i] = w_[i] | o.w_[i];
  return out;
}

Bits Bits::all(size_t n) {
  Bits out(n);
  for (size_t i = 0; i < n; ++i) out.set(i);
  return out;
}

namespace {

std::string signature_of(const AnnulusInst& a) {
  std::string s;
  auto app = [&s](const Bits& b) {
    for (size_t i = 0; i < b.size(); ++i) s.push_back(b.test(i) ? '1' : '0');
    s.push_back('/');
  };
  app(a.minus_int);
  app(a.plus_int);
  app(a.minus_closed);
  app(a.plus_closed);
  return s;
}

struct SplitMix {
  uint64_t s;
  explicit SplitMix(uint64_t seed) : s(seed) {}
  uint64_t next() {
    s += 0x9e3779b97f4a7c15ULL;
    uint64_t z = s;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  size_t below(size_t n) { return static_cast<size_t>(next() % n); }
};

}  // namespace

int AnnulusUniverse::add_instance(AnnulusInst inst) {
  std::string sig = signature_of(inst);
  auto it = signature_index_.find(sig);
  if (it != signature_index_.end()) return it->second;
  int id = static_cast<int>(annuli.size());
  annuli.push_back(std::move(inst));
  signature_index_.emplace(std::move(sig), id);
  return id;
}

ChainIndex::ChainIndex(const AnnulusUniverse& u, const Bits& sample_mask, const Bits& annulus_mask)
    : u_(u), sample_mask_(sample_mask) {
  for (size_t i = 0; i < u.annuli.size(); ++i) {
    if (!annulus_mask.test(i)) continue;
    const AnnulusInst& a = u.annuli[i];
    // Disjoint sides, and a nonempty gap on the masked sample.
    if ((a.minus_closed & a.plus_closed & sample_mask_).any())
      throw DegenerateSystemError("annulus sides intersect on the sample: " + a.label);
    if ((a.minus_closed | a.plus_closed).covers(sample_mask_)) {
      ++dropped_covering_;
      continue;
    }
    active_.push_back(static_cast<int>(i));
  }
  build();
}

ChainIndex::ChainIndex(const AnnulusUniverse& u)
    : ChainIndex(u, Bits::all(u.sample_size()), Bits::all(u.annuli.size())) {}

void ChainIndex::build() {
  const size_t V = active_.size();
  minus_int_.reserve(V);
  plus_int_.reserve(V);
  for (int id : active_) {
    minus_int_.push_back(u_.annuli[id].minus_int & sample_mask_);
    plus_int_.push_back(u_.annuli[id].plus_int & sample_mask_);
  }

  // A < B iff int A+ and int B- jointly cover the sample.
  succ_.assign(V, {});
  std::vector<int> indeg(V, 0);
  for (size_t a = 0; a < V; ++a) {
    for (size_t b = 0; b < V; ++b) {
      if (plus_int_[a].union_covers(minus_int_[b], sample_mask_)) {
        if (a == b)
          throw DegenerateSystemError("degenerate annulus system: shrink eps or raise margin");
        succ_[a].push_back(static_cast<int32_t>(b));
        ++indeg[b];
        ++relation_edges_;
      }
    }
  }

  // Kahn topological order; leftovers mean a cycle.
  topo_.clear();
  std::vector<int> q;
  for (size_t v = 0; v < V; ++v)
    if (indeg[v] == 0) q.push_back(static_cast<int>(v));
  while (!q.empty()) {
    int v = q.back();
    q.pop_back();
    topo_.push_back(v);
    for (int w : succ_[v])
      if (--indeg[w] == 0) q.push_back(w);
  }
  if (topo_.size() != V)
    throw DegenerateSystemError("degenerate annulus system: shrink eps or raise margin");

  // Longest-path edge counts between all pairs of instances.
  lp_.assign(V * V, -1);
  std::vector<size_t> pos(V);
  for (size_t i = 0; i < V; ++i) pos[topo_[i]] = i;
  for (size_t s = 0; s < V; ++s) {
    int16_t* row = lp_.data() + s * V;
    row[s] = 0;
    for (size_t ti = pos[s]; ti < V; ++ti) {
      int v = topo_[ti];
      if (row[v] < 0) continue;
      int16_t cand = static_cast<int16_t>(row[v] + 1);
      for (int w : succ_[v])
        if (cand > row[w]) row[w] = cand;
    }
  }
}

int ChainIndex::longest_chain(const std::vector<int>& srcs, const std::vector<int>& sinks) const {
  const size_t V = active_.size();
  int best = 0;  // chain node count; 0 = no admissible instance
  for (int a : srcs) {
    const int16_t* row = lp_.data() + static_cast<size_t>(a) * V;
    for (int b : sinks) {
      int16_t d = row[b];
      if (d >= 0 && d + 1 > best) best = d + 1;
    }
  }
  return best;
}

int ChainIndex::crossratio(std::array<int, 2> K, std::array<int, 2> L) const {
  if (K[1] >= 0 && K[1] < K[0]) std::swap(K[0], K[1]);
  if (L[1] >= 0 && L[1] < L[0]) std::swap(L[0], L[1]);
  if (std::make_pair(L[0], L[1]) < std::make_pair(K[0], K[1])) std::swap(K, L);

  for (int k : {K[0], K[1]})
    for (int l : {L[0], L[1]})
      if (k >= 0 && k == l) return 0;

  auto enc = [](int x) { return static_cast<uint64_t>(static_cast<uint16_t>(x)); };
  uint64_t key = enc(K[0]) << 48 | enc(K[1]) << 32 | enc(L[0]) << 16 | enc(L[1]);
  auto it = memo_.find(key);
  if (it != memo_.end()) return it->second;

  const size_t V = active_.size();
  std::vector<int> srcs, sinks;
  for (size_t v = 0; v < V; ++v) {
    if (minus_int_[v].test(K[0]) && (K[1] < 0 || minus_int_[v].test(K[1])))
      srcs.push_back(static_cast<int>(v));
    if (plus_int_[v].test(L[0]) && (L[1] < 0 || plus_int_[v].test(L[1])))
      sinks.push_back(static_cast<int>(v));
  }
  int val = longest_chain(srcs, sinks);
  memo_.emplace(key, val);
  return val;
}

int ChainIndex::crossratio_pp(int k1, int k2, int l1, int l2) const {
  return crossratio({k1, k2}, {l1, l2});
}

std::vector<std::array<int, 5>> ChainIndex::computed_entries() const {
  std::vector<std::array<int, 5>> out;
  out.reserve(memo_.size());
  auto dec = [](uint64_t key, int shift) {
    auto v = static_cast<int16_t>((key >> shift) & 0xFFFF);
    return static_cast<int>(v);
  };
  for (const auto& [key, val] : memo_)
    out.push_back({dec(key, 48), dec(key, 32), dec(key, 16), dec(key, 0), val});
  std::sort(out.begin(), out.end());
  return out;
}

int ChainIndex::crossratio_ps(int k1, int k2, int x) const {
  return crossratio({k1, k2}, {x, -1});
}

int ChainIndex::rho(const std::array<int, 3>& A, const std::array<int, 3>& B) const {
  static constexpr int pairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
  int best = 0;
  for (const auto& pa : pairs)
    for (const auto& pb : pairs)
      best = std::max(best, crossratio_pp(A[pa[0]], A[pa[1]], B[pb[0]], B[pb[1]]));
  return best;
}

std::vector<std::array<int, 3>> enumerate_triples(const Bits& sample_mask, int max_points) {
  std::vector<int> pts;
  for (size_t i = 0; i < sample_mask.size() && static_cast<int>(pts.size()) < max_points; ++i)
    if (sample_mask.test(i)) pts.push_back(static_cast<int>(i));
  std::vector<std::array<int, 3>> out;
  for (size_t i = 0; i < pts.size(); ++i)
    for (size_t j = i + 1; j < pts.size(); ++j)
      for (size_t k = j + 1; k < pts.size(); ++k) out.push_back({pts[i], pts[j], pts[k]});
  return out;
}

namespace {

double spearman(const std::vector<double>& x, const std::vector<double>& y) {
  const size_t n = x.size();
  if (n < 2) return 1.0;
  auto ranks = [](const std::vector<double>& v) {
    std::vector<size_t> idx(v.size());
    std::iota(idx.begin(), idx.end(), size_t{0});
    std::stable_sort(idx.begin(), idx.end(), [&](size_t a, size_t b) { return v[a] < v[b]; });
    std::vector<double> r(v.size());
    size_t i = 0;
    while (i < idx.size()) {
      size_t j = i;
      while (j + 1 < idx.size() && v[idx[j + 1]] == v[idx[i]]) ++j;
      double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
      for (size_t t = i; t <= j; ++t) r[idx[t]] = avg;
      i = j + 1;
    }
    return r;
  };
  std::vector<double> rx = ranks(x), ry = ranks(y);
  double mx = 0, my = 0;
  for (size_t i = 0; i < n; ++i) {
    mx += rx[i];
    my += ry[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0, syy = 0;
  for (size_t i = 0; i < n; ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  if (sxx == 0 || syy == 0) return 1.0;
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace

TripleGraph build_triple_graph(const ChainIndex& idx,
                               const std::vector<std::array<int, 3>>& triples, int r) {
  TripleGraph g;
  g.triples = triples;
  const size_t V = triples.size();
  g.rho.assign(V, std::vector<int>(V, 0));
  int rho_max = 0;
  for (size_t i = 0; i < V; ++i)
    for (size_t j = i + 1; j < V; ++j) {
      int v = idx.rho(triples[i], triples[j]);
      g.rho[i][j] = g.rho[j][i] = v;
      rho_max = std::max(rho_max, v);
    }

  std::vector<int> parent(V);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  int threshold = 0;
  size_t comps = V;
  for (int rr = 0; rr <= rho_max && comps > 1; ++rr) {
    for (size_t i = 0; i < V; ++i)
      for (size_t j = i + 1; j < V; ++j)
        if (g.rho[i][j] == rr) {
          int a = find(static_cast<int>(i)), b = find(static_cast<int>(j));
          if (a != b) {
            parent[a] = b;
            --comps;
          }
        }
    threshold = rr;
    if (comps == 1) break;
  }
  g.connectivity_threshold = comps == 1 ? threshold : rho_max + 1;
  g.r = r >= 0 ? r : g.connectivity_threshold + 1;

  g.adj.assign(V, {});
  for (size_t i = 0; i < V; ++i)
    for (size_t j = i + 1; j < V; ++j)
      if (g.rho[i][j] <= g.r) {
        g.adj[i].push_back(static_cast<int>(j));
        g.adj[j].push_back(static_cast<int>(i));
      }

  std::vector<int> comp(V, -1);
  int nc = 0;
  for (size_t s = 0; s < V; ++s) {
    if (comp[s] >= 0) continue;
    comp[s] = nc;
    std::vector<int> stack = {static_cast<int>(s)};
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int w : g.adj[v])
        if (comp[w] < 0) {
          comp[w] = nc;
          stack.push_back(w);
        }
    }
    ++nc;
  }
  g.components = nc;

  if (nc == 1 && V >= 4) {
    std::vector<double> ds, rs;
    std::vector<int> dist(V);
    for (size_t s = 0; s < V; s += std::max<size_t>(1, V / 40)) {
      std::fill(dist.begin(), dist.end(), -1);
      std::vector<int> q = {static_cast<int>(s)};
      dist[s] = 0;
      for (size_t qi = 0; qi < q.size(); ++qi) {
        int v = q[qi];
        for (int w : g.adj[v])
          if (dist[w] < 0) {
            dist[w] = dist[v] + 1;
            q.push_back(w);
          }
      }
      for (size_t t = s + 1; t < V; t += 7) {
        ds.push_back(dist[t]);
        rs.push_back(g.rho[s][t]);
      }
    }
    g.spearman_d_vs_rho = spearman(ds, rs);
  }
  return g;
}

DeltaEstimate estimate_delta(const TripleGraph& g, long budget, uint64_t seed) {
  const size_t V = g.triples.size();
  if (g.components != 1)
    throw ConvergenceError("estimate_delta: graph disconnected into " +
                           std::to_string(g.components) + " components");
  std::vector<std::vector<int>> dist(V, std::vector<int>(V, -1));
  for (size_t s = 0; s < V; ++s) {
    auto& d = dist[s];
    d[s] = 0;
    std::vector<int> q = {static_cast<int>(s)};
    for (size_t qi = 0; qi < q.size(); ++qi) {
      int v = q[qi];
      for (int w : g.adj[v])
        if (d[w] < 0) {
          d[w] = d[v] + 1;
          q.push_back(w);
        }
    }
  }
  DeltaEstimate out;
  for (size_t i = 0; i < V; ++i)
    for (size_t j = 0; j < V; ++j) out.diameter = std::max(out.diameter, dist[i][j]);

  auto defect = [&](size_t w, size_t x, size_t y, size_t z) {
    long s1 = dist[w][x] + dist[y][z];
    long s2 = dist[w][y] + dist[x][z];
    long s3 = dist[w][z] + dist[x][y];
    long hi = std::max({s1, s2, s3});
    long mid = s1 + s2 + s3 - hi - std::min({s1, s2, s3});
    return static_cast<double>(hi - mid) / 2.0;
  };

  double total = V >= 4 ? static_cast<double>(V) * (V - 1) * (V - 2) * (V - 3) / 24.0 : 0.0;
  if (total <= static_cast<double>(budget)) {
    for (size_t a = 0; a < V; ++a)
      for (size_t b = a + 1; b < V; ++b)
        for (size_t c = b + 1; c < V; ++c)
          for (size_t d = c + 1; d < V; ++d) {
            out.delta = std::max(out.delta, defect(a, b, c, d));
            ++out.quadruples;
          }
    out.exhaustive = true;
  } else {
    SplitMix rng(seed);
    for (long t = 0; t < budget; ++t) {
      size_t a = rng.below(V), b = rng.below(V), c = rng.below(V), d = rng.below(V);
      if (a == b || a == c || a == d || b == c || b == d || c == d) continue;
      out.delta = std::max(out.delta, defect(a, b, c, d));
      ++out.quadruples;
    }
  }
  return out;
}

AxiomScanReport axiom_scan(const ChainIndex& idx, const std::vector<int>& points, long budget,
                           uint64_t seed) {
  AxiomScanReport rep;
  const size_t n = points.size();
  if (n < 4) throw InputError("axiom_scan: need at least 4 points");

  auto scan_one = [&](int x, int y, int z, int w) {
    ++rep.quadruples;
    int v0 = idx.crossratio_pp(x, y, z, w);
    int v1 = idx.crossratio_pp(x, z, y, w);
    int v2 = idx.crossratio_pp(x, w, y, z);
    int a1 = std::max({v0, v1, v2});
    if (a1 > rep.a1_max) {
      rep.a1_max = a1;
      rep.a1_witness = "{" + std::to_string(x) + "," + std::to_string(y) + "," +
                       std::to_string(z) + "," + std::to_string(w) + "}";
    }
    // Over all labelings of the quadruple the two crossed ratios range over
    // all 2-subsets of the three pairings, so the binding constant is the
    // middle value.
    int vs[3] = {v0, v1, v2};
    std::sort(vs, vs + 3);
    int k = vs[1];
    if (k > 0) ++rep.a2_nonzero;
    if (k > rep.a2_k) {
      rep.a2_k = k;
      rep.a2_witness = "{" + std::to_string(x) + "," + std::to_string(y) + "," +
                       std::to_string(z) + "," + std::to_string(w) + "}";
    }
  };

  double total = n >= 4 ? static_cast<double>(n) * (n - 1) * (n - 2) * (n - 3) / 24.0 : 0;
  if (total <= static_cast<double>(budget)) {
    for (size_t a = 0; a < n; ++a)
      for (size_t b = a + 1; b < n; ++b)
        for (size_t c = b + 1; c < n; ++c)
          for (size_t d = c + 1; d < n; ++d) scan_one(points[a], points[b], points[c], points[d]);
  } else {
    SplitMix rng(seed);
    while (rep.quadruples < budget) {
      size_t a = rng.below(n), b = rng.below(n), c = rng.below(n), d = rng.below(n);
      if (a == b || a == c || a == d || b == c || b == d || c == d) continue;
      scan_one(points[a], points[b], points[c], points[d]);
    }
  }
  return rep;
}

CrossratioAxiomReport crossratio_axioms(const ChainIndex& idx, const std::vector<int>& points,
                                        long budget, uint64_t seed) {
  CrossratioAxiomReport rep;
  const size_t n = points.size();
  if (n < 4) throw InputError("crossratio_axioms: need at least 4 points");

  // (C1): the best labeling of a 4-subset leaves the two smallest of the
  // three pairings as the off-ratios, so the subset needs the middle value.
  auto c1_of = [&](int x, int y, int z, int w) {
    int v[3] = {idx.crossratio_pp(x, y, z, w), idx.crossratio_pp(x, z, y, w),
                idx.crossratio_pp(x, w, y, z)};
    std::sort(v, v + 3);
    return v[1];
  };

  auto c2_of = [&](const std::array<int, 5>& f) {
    std::array<int, 5> p = {0, 1, 2, 3, 4};
    int best = INT32_MAX;
    do {
      int x = f[p[0]], y = f[p[1]], z = f[p[2]], w = f[p[3]], u = f[p[4]];
      int need = 0;
      need =
          std::max(need, std::abs(idx.crossratio_pp(x, y, z, u) - idx.crossratio_pp(x, y, w, u)));
      need =
          std::max(need, std::abs(idx.crossratio_pp(x, u, z, w) - idx.crossratio_pp(y, u, z, w)));
      need = std::max(need, std::abs(idx.crossratio_pp(x, y, z, w) - idx.crossratio_pp(x, y, z, u) -
                                     idx.crossratio_pp(x, u, z, w)));
      best = std::min(best, need);
      if (best == 0) break;
    } while (std::next_permutation(p.begin(), p.end()));
    return best;
  };

  double fours_total = static_cast<double>(n) * (n - 1) * (n - 2) * (n - 3) / 24.0;
  if (fours_total <= static_cast<double>(budget)) {
    for (size_t a = 0; a < n; ++a)
      for (size_t b = a + 1; b < n; ++b)
        for (size_t c = b + 1; c < n; ++c)
          for (size_t d = c + 1; d < n; ++d) {
            rep.c1_k = std::max(rep.c1_k, c1_of(points[a], points[b], points[c], points[d]));
            ++rep.fours;
          }
  } else {
    SplitMix rng(seed);
    while (rep.fours < budget) {
      size_t a = rng.below(n), b = rng.below(n), c = rng.below(n), d = rng.below(n);
      if (a == b || a == c || a == d || b == c || b == d || c == d) continue;
      rep.c1_k = std::max(rep.c1_k, c1_of(points[a], points[b], points[c], points[d]));
      ++rep.fours;
    }
  }

  long five_budget = std::max<long>(1, budget / 24);
  double fives_total =
      n >= 5 ? static_cast<double>(n) * (n - 1) * (n - 2) * (n - 3) * (n - 4) / 120.0 : 0;
  if (n >= 5 && fives_total <= static_cast<double>(five_budget)) {
    for (size_t a = 0; a < n; ++a)
      for (size_t b = a + 1; b < n; ++b)
        for (size_t c = b + 1; c < n; ++c)
          for (size_t d = c + 1; d < n; ++d)
            for (size_t e = d + 1; e < n; ++e) {
              rep.c2_k = std::max(rep.c2_k,
                                  c2_of({points[a], points[b], points[c], points[d], points[e]}));
              ++rep.fives;
            }
  } else if (n >= 5) {
    SplitMix rng(seed ^ 0xabcdefULL);
    while (rep.fives < five_budget) {
      std::array<size_t, 5> ix = {rng.below(n), rng.below(n), rng.below(n), rng.below(n),
                                  rng.below(n)};
      std::sort(ix.begin(), ix.end());
      if (std::adjacent_find(ix.begin(), ix.end()) != ix.end()) continue;
      rep.c2_k = std::max(rep.c2_k, c2_of({points[ix[0]], points[ix[1]], points[ix[2]],
                                           points[ix[3]], points[ix[4]]}));
      ++rep.fives;
    }
  }
  rep.k = std::max(rep.c1_k, rep.c2_k);

  // Path-crossratio spot checks at the passing k.
  const int k = rep.k;
  auto near = [&](int a, int b) { return std::abs(a - b) <= k; };
  auto colon = [&](int a, int b, int c, int d) {
    return idx.crossratio_pp(a, c, b, d) <= k && idx.crossratio_pp(a, d, b, c) <= k;
  };
  SplitMix rng(seed ^ 0x5eedULL);
  long attempts = std::min<long>(budget / 10 + 1, 2000);
  for (long t = 0; t < attempts; ++t) {
    size_t a = rng.below(n), b = rng.below(n), c = rng.below(n), d = rng.below(n);
    if (a == b || a == c || a == d || b == c || b == d || c == d) continue;
    int x = points[a], y = points[b], z = points[c], w = points[d];
    int nmax = idx.crossratio_pp(x, y, z, w);
    if (nmax < 2) continue;
    for (int p = 1; p < nmax; ++p) {
      ++rep.path_checked;
      bool found = false;
      for (size_t ui = 0; ui < n && !found; ++ui) {
        int u = points[ui];
        if (u == x || u == y || u == z || u == w) continue;
        bool mid = colon(x, y, z, w) && colon(y, u, z, w) && colon(x, u, z, w) &&
                   colon(x, y, u, w) && colon(x, y, u, z);
        if (mid && near(idx.crossratio_pp(x, y, z, u), p)) found = true;
      }
      if (found) ++rep.path_ok;
    }
  }
  return rep;
}

TriangleReport triangle_check(const ChainIndex& idx, const std::vector<int>& points, long budget,
                              uint64_t seed) {
  TriangleReport rep;
  const size_t n = points.size();
  if (n < 5) throw InputError("triangle_check: need at least 5 points");

  auto check_one = [&](int a1, int a2, int x, int b1, int b2) {
    ++rep.checked;
    int ab = idx.crossratio_pp(a1, a2, b1, b2);
    int ax = idx.crossratio_ps(a1, a2, x);
    int xb = idx.crossratio_ps(b1, b2, x);
    if (ab > ax + xb + 1) {
      ++rep.violations;
      if (rep.witness.empty())
        rep.witness = "A={" + std::to_string(a1) + "," + std::to_string(a2) +
                      "} x=" + std::to_string(x) + " B={" + std::to_string(b1) + "," +
                      std::to_string(b2) + "}";
    }
  };

  double total = static_cast<double>(n) * (n - 1) / 2 * (n - 2) * (n - 3) / 2 * (n - 4);
  if (total <= static_cast<double>(budget)) {
    for (size_t i = 0; i < n; ++i)
      for (size_t j = i + 1; j < n; ++j)
        for (size_t l = 0; l < n; ++l)
          for (size_t m = l + 1; m < n; ++m)
            for (size_t k = 0; k < n; ++k) {
              if (k == i || k == j || k == l || k == m) continue;
              check_one(points[i], points[j], points[k], points[l], points[m]);
            }
  } else {
    SplitMix rng(seed);
    while (rep.checked < budget) {
      size_t i = rng.below(n), j = rng.below(n), k = rng.below(n), l = rng.below(n),
             m = rng.below(n);
      if (i == j || l == m || k == i || k == j || k == l || k == m) continue;
      check_one(points[i], points[j], points[k], points[l], points[m]);
    }
  }
  return rep;
}

double slope_fit(const std::vector<double>& d) {
  const size_t n = d.size();
  if (n < 2) return 0.0;
  double mx = 0, my = 0;
  for (size_t i = 0; i < n; ++i) {
    mx += static_cast<double>(i + 1);
    my += d[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxy = 0, sxx = 0;
  for (size_t i = 0; i < n; ++i) {
    double x = static_cast<double>(i + 1);
    sxy += (x - mx) * (d[i] - my);
    sxx += (x - mx) * (x - mx);
  }
  return sxx == 0 ? 0.0 : sxy / sxx;
}

}  // namespace outcx
