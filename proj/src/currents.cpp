#include "outcx/currents.hpp"

#include <algorithm>
#include <map>

namespace outcx {

double CurrentApprox::freq(const std::string& w) const {
  for (const auto& [key, v] : freqs)
    if (key == w) return v;
  return 0.0;
}

std::vector<Sym> edge_iterate(const TrackedSide& side, int edge, int k) {
  std::vector<Sym> cur = {static_cast<Sym>(edge)};
  for (int step = 0; step < k; ++step) {
    std::vector<Sym> next;
    next.reserve(cur.size() * 2);
    for (Sym s : cur) {
      Word img = side.rose.oriented_image(s);
      for (Sym t : img.syms) {
        if (!next.empty() && next.back() == inv(t))
          next.pop_back();
        else
          next.push_back(t);
      }
    }
    cur = std::move(next);
  }
  return cur;
}

namespace {

std::vector<std::pair<std::string, double>> window_frequencies(const std::vector<Sym>& w, int L,
                                                               bool cyclic) {
  if (static_cast<int>(w.size()) < L) throw InputError("word too short for subword length");
  std::map<std::string, long long> counts;
  const size_t n = w.size();
  const size_t windows = cyclic ? n : n - L + 1;
  std::string key(L, ' ');
  for (size_t i = 0; i < windows; ++i) {
    for (int j = 0; j < L; ++j) {
      Sym s = w[(i + j) % n];
      key[j] = s > 0 ? char('a' + s - 1) : char('A' - s - 1);
    }
    ++counts[key];
  }
  std::vector<std::pair<std::string, double>> out;
  out.reserve(counts.size());
  for (const auto& [k, c] : counts)
    out.emplace_back(k, static_cast<double>(c) / static_cast<double>(windows));
  return out;
}

long long image_length(const CountMatrix& m, int edge, int k) {
  // Column sums of M^k without forming the power: iterate the unit vector.
  const size_t n = m.size();
  std::vector<long long> v(n, 0);
  v[edge - 1] = 1;
  for (int step = 0; step < k; ++step) {
    std::vector<long long> next(n, 0);
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) next[i] += m[i][j] * v[j];
    v = std::move(next);
  }
  long long total = 0;
  for (long long x : v) total += x;
  return total;
}

}  // namespace

CurrentApprox stable_current(const MapSystem& sys, int sign, int L, int k) {
  if (L < 1) throw InputError("stable_current: L must be >= 1");
  const TrackedSide& side = sys.side(sign);
  for (int e = 1; e <= side.rose.rank; ++e)
    if (image_length(side.matrix, e, k) < 10LL * L)
      throw InputError("stable_current: k too small, edge iterate shorter than 10*L");

  int dominant = 1;
  for (int e = 2; e <= side.rose.rank; ++e)
    if (side.eigen.edge_lengths[e - 1] > side.eigen.edge_lengths[dominant - 1]) dominant = e;

  CurrentApprox out;
  out.L = L;
  out.map_name = sys.name;
  out.sign = sign >= 0 ? +1 : -1;
  out.k = k;
  out.freqs = window_frequencies(edge_iterate(side, dominant, k), L, /*cyclic=*/false);
  return out;
}

CurrentApprox class_current(const MapSystem& sys, int sign, const ConjClass& base, int k, int L) {
  if (base.empty()) throw InputError("class_current: empty base class");
  FreeGroupAut f = sign >= 0 ? sys.aut : inverse_of(sys.aut);
  ConjClass cur = base;
  for (int step = 0; step < k; ++step) cur = apply(f, cur);
  CurrentApprox out;
  out.L = L;
  out.map_name = sys.name;
  out.sign = sign >= 0 ? +1 : -1;
  out.k = k;
  out.base_class = base;
  out.freqs = window_frequencies(cur.syms, L, /*cyclic=*/true);
  return out;
}

CurrentApprox push_current(const FreeGroupAut& g, const CurrentApprox& c, const MapSystem& sys) {
  if (!c.base_class) throw InputError("push_current: current carries no generating class");
  return class_current(sys, c.sign, apply(g, *c.base_class), c.k, c.L);
}

CurrentApprox dual_current(const MapSystem& sys, int sign, int L, int k) {
  int opposite = sign >= 0 ? -1 : +1;
  sys.side(opposite);  // raises if the inverse map is missing
  return stable_current(sys, opposite, L, k);
}

PairingEstimate pairing_current(const MapSystem& tree_sys, const LengthFunctionApprox& T,
                                const MapSystem& cur_sys, int cur_sign, const ConjClass& base,
                                int k, const TightenOptions& opt) {
  if (base.empty()) throw InputError("pairing_current: empty base class");
  FreeGroupAut f = cur_sign >= 0 ? cur_sys.aut : inverse_of(cur_sys.aut);
  const double growth = cur_sys.growth(cur_sign);

  PairingEstimate out;
  ConjClass cur = base;
  double scale = 1.0;
  for (int j = 1; j <= k; ++j) {
    cur = apply(f, cur);
    scale *= growth;
    double v = pairing(tree_sys, T, cur, opt) / scale;
    out.sequence.push_back(v);
  }
  if (out.sequence.empty()) throw InputError("pairing_current: k must be >= 1");
  out.value = out.sequence.back();
  out.k_used = k;
  out.error_estimate = out.sequence.size() >= 2
                           ? std::abs(out.sequence.back() - out.sequence[out.sequence.size() - 2])
                           : out.sequence.back();
  out.converged = true;
  return out;
}

std::vector<std::pair<std::string, double>> marginalize_last(const CurrentApprox& c) {
  std::map<std::string, double> acc;
  for (const auto& [w, v] : c.freqs) acc[w.substr(0, w.size() - 1)] += v;
  return {acc.begin(), acc.end()};
}

}  // namespace outcx
