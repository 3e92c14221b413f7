#include "outcx/train_track.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace outcx {

Word RoseMap::oriented_image(Sym s) const {
  int e = s > 0 ? s : -s;
  if (e > rank) throw InputError("edge outside rose");
  const Word& img = edge_images[e - 1];
  if (s > 0) return img;
  return inverse(img);
}

Sym RoseMap::direction(Sym s) const {
  int e = s > 0 ? s : -s;
  const Word& img = edge_images[e - 1];
  if (img.empty()) throw InputError("edge image is empty");
  return s > 0 ? img.syms.front() : inv(img.syms.back());
}

std::vector<std::pair<std::string, std::string>> LegalStructure::illegal_turns() const {
  std::vector<std::pair<std::string, std::string>> out;
  std::vector<Sym> dirs;
  for (int i = 1; i <= rank; ++i) {
    dirs.push_back(static_cast<Sym>(i));
    dirs.push_back(static_cast<Sym>(-i));
  }
  std::sort(dirs.begin(), dirs.end(), [](Sym a, Sym b) { return sym_ord(a) < sym_ord(b); });
  for (size_t i = 0; i < dirs.size(); ++i)
    for (size_t j = i + 1; j < dirs.size(); ++j)
      if (!turn_is_legal(dirs[i], dirs[j]))
        out.emplace_back(to_string(std::span<const Sym>(&dirs[i], 1)),
                         to_string(std::span<const Sym>(&dirs[j], 1)));
  return out;
}

LegalStructure legal_structure(const RoseMap& m) {
  const int n2 = 2 * m.rank;
  LegalStructure out;
  out.rank = m.rank;
  out.illegal_pair.assign(n2 * n2, 0);

  std::vector<Sym> dirs;
  for (int i = 1; i <= m.rank; ++i) {
    dirs.push_back(static_cast<Sym>(i));
    dirs.push_back(static_cast<Sym>(-i));
  }
  auto mark = [&](Sym u, Sym v, char val) {
    out.illegal_pair[sym_ord(u) * n2 + sym_ord(v)] = val;
    out.illegal_pair[sym_ord(v) * n2 + sym_ord(u)] = val;
  };

  // Iterate the direction map on each pair until it degenerates or cycles.
  const size_t bound = static_cast<size_t>(n2) * n2 + 1;
  for (size_t i = 0; i < dirs.size(); ++i) {
    for (size_t j = i + 1; j < dirs.size(); ++j) {
      Sym u = dirs[i], v = dirs[j];
      bool illegal = false;
      std::vector<std::pair<Sym, Sym>> seen;
      for (size_t step = 0; step < bound; ++step) {
        if (u == v) {
          illegal = true;
          break;
        }
        std::pair<Sym, Sym> key = u < v ? std::make_pair(u, v) : std::make_pair(v, u);
        if (std::find(seen.begin(), seen.end(), key) != seen.end()) break;
        seen.push_back(key);
        u = m.direction(u);
        v = m.direction(v);
      }
      if (illegal) mark(dirs[i], dirs[j], 1);
    }
  }
  return out;
}

TrainTrackCheck check_train_track(const RoseMap& m) {
  if (static_cast<int>(m.edge_images.size()) != m.rank)
    throw InputError("rose map: wrong number of edge images");
  for (int e = 1; e <= m.rank; ++e) {
    const Word& img = m.image(e);
    if (img.empty()) throw InputError("rose map: edge image is empty");
    Word re = reduce(img.syms);
    if (!(re == img))
      throw InputError("rose map: image of edge " + std::string(1, char('a' + e - 1)) +
                       " is not reduced");
  }
  TrainTrackCheck out;
  out.legal = legal_structure(m);
  out.ok = true;
  for (int e = 1; e <= m.rank && out.ok; ++e) {
    const Word& img = m.image(e);
    for (size_t i = 0; i + 1 < img.size(); ++i) {
      if (!out.legal.crossing_is_legal(img.syms[i], img.syms[i + 1])) {
        out.ok = false;
        out.detail = "image of edge " + std::string(1, char('a' + e - 1)) +
                     " crosses the illegal turn after position " + std::to_string(i);
        break;
      }
    }
  }
  return out;
}

CountMatrix transition_matrix(const RoseMap& m) {
  CountMatrix out(m.rank, std::vector<long long>(m.rank, 0));
  for (int j = 1; j <= m.rank; ++j)
    for (Sym s : m.image(j).syms) {
      int i = s > 0 ? s : -s;
      ++out[i - 1][j - 1];
    }
  return out;
}

bool matrix_is_primitive(const CountMatrix& m) {
  const size_t n = m.size();
  std::vector<std::vector<char>> b(n, std::vector<char>(n, 0)), cur;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) b[i][j] = m[i][j] > 0;
  cur = b;
  auto all_positive = [&](const std::vector<std::vector<char>>& x) {
    for (const auto& row : x)
      for (char v : row)
        if (!v) return false;
    return true;
  };
  const size_t bound = (n - 1) * (n - 1) + 1;  // Wielandt
  for (size_t p = 1; p <= bound; ++p) {
    if (all_positive(cur)) return true;
    std::vector<std::vector<char>> next(n, std::vector<char>(n, 0));
    for (size_t i = 0; i < n; ++i)
      for (size_t k = 0; k < n; ++k)
        if (cur[i][k])
          for (size_t j = 0; j < n; ++j)
            if (b[k][j]) next[i][j] = 1;
    cur = std::move(next);
  }
  return false;
}

namespace {

// Power iteration for the dominant eigenpair of a nonnegative matrix,
// mat-vec given as a callback. Deterministic all-ones start.
struct PowerResult {
  double lambda;
  std::vector<double> vec;  // sum-normalized
  int iterations;
};

PowerResult power_iterate(size_t n, const std::function<void(const std::vector<double>&, std::vector<double>&)>& matvec,
                          double tol) {
  std::vector<double> v(n, 1.0), mv(n, 0.0);
  double lambda = 0.0, prev = -1.0;
  const long max_iter = 1000000;
  int it = 0;
  for (; it < max_iter; ++it) {
    matvec(v, mv);
    double num = 0.0, den = 0.0;
    for (size_t i = 0; i < n; ++i) {
      num += v[i] * mv[i];
      den += v[i] * v[i];
    }
    lambda = num / den;
    double sum = 0.0;
    for (double x : mv) sum += x;
    if (sum <= 0.0) throw ConvergenceError("power iteration collapsed to zero");
    for (size_t i = 0; i < n; ++i) v[i] = mv[i] / sum;
    if (it > 0 && std::abs(lambda - prev) < tol) {
      // Also require a small eigen-residual before stopping.
      matvec(v, mv);
      double resid = 0.0, vmax = 0.0;
      for (size_t i = 0; i < n; ++i) {
        resid = std::max(resid, std::abs(mv[i] - lambda * v[i]));
        vmax = std::max(vmax, std::abs(v[i]));
      }
      if (resid < tol * vmax) break;
    }
    prev = lambda;
  }
  if (it == max_iter) throw ConvergenceError("power iteration did not converge");
  return {lambda, v, it};
}

}  // namespace

EigenMetric growth_rate(const CountMatrix& m, double tol) {
  const size_t n = m.size();
  if (!matrix_is_primitive(m))
    throw InputError("not irreducible: train track for a fully irreducible map expected");

  auto matvec = [&](const std::vector<double>& x, std::vector<double>& y) {
    for (size_t i = 0; i < n; ++i) {
      double acc = 0.0;
      for (size_t j = 0; j < n; ++j) acc += static_cast<double>(m[i][j]) * x[j];
      y[i] = acc;
    }
  };
  auto matvec_t = [&](const std::vector<double>& x, std::vector<double>& y) {
    for (size_t j = 0; j < n; ++j) {
      double acc = 0.0;
      for (size_t i = 0; i < n; ++i) acc += static_cast<double>(m[i][j]) * x[i];
      y[j] = acc;
    }
  };

  PowerResult right = power_iterate(n, matvec, tol);
  PowerResult left = power_iterate(n, matvec_t, tol);

  EigenMetric out;
  out.lambda = right.lambda;
  out.right_vector = right.vec;
  // The eigen-metric: length(rho(e)) = lambda * length(e), i.e. the PF
  // vector of the transpose.
  out.edge_lengths = left.vec;
  out.tolerance = tol;
  out.iterations = right.iterations + left.iterations;
  double resid = 0.0;
  for (size_t e = 0; e < n; ++e) {
    double img_len = 0.0;
    for (size_t i = 0; i < n; ++i) img_len += static_cast<double>(m[i][e]) * out.edge_lengths[i];
    resid = std::max(resid, std::abs(img_len - out.lambda * out.edge_lengths[e]));
  }
  out.residual = resid;
  return out;
}

double metric_length(std::span<const Sym> syms, const std::vector<double>& edge_lengths) {
  double acc = 0.0;
  for (Sym s : syms) acc += edge_lengths[(s > 0 ? s : -s) - 1];
  return acc;
}

int cancellation_bound(const RoseMap& m) {
  int k0 = 0;
  std::vector<Sym> dirs;
  for (int i = 1; i <= m.rank; ++i) {
    dirs.push_back(static_cast<Sym>(i));
    dirs.push_back(static_cast<Sym>(-i));
  }
  for (Sym e : dirs) {
    for (Sym f : dirs) {
      if (f == inv(e)) continue;  // path e.f must be reduced
      Word u = m.oriented_image(e);
      Word v = m.oriented_image(f);
      int cancel = 0;
      size_t iu = u.size(), iv = 0;
      while (iu > 0 && iv < v.size() && u.syms[iu - 1] == inv(v.syms[iv])) {
        --iu;
        ++iv;
        ++cancel;
      }
      k0 = std::max(k0, cancel);
    }
  }
  return k0;
}

double bounded_cancellation(int k0, double lambda) {
  if (lambda <= 1.0) throw InputError("bounded cancellation needs lambda > 1");
  return static_cast<double>(k0) * lambda / (lambda - 1.0);
}

double critical_constant(int k0, double lambda) {
  if (lambda <= 1.0) throw InputError("critical constant needs lambda > 1");
  return 2.0 * bounded_cancellation(k0, lambda) / (lambda - 1.0) + 1.0;
}

ConjClass iterate_tighten(const RoseMap& m, const ConjClass& alpha, int N) {
  ConjClass cur = alpha;
  for (int step = 0; step < N; ++step) {
    Word w;
    for (Sym s : cur.syms) {
      Word img = m.oriented_image(s);
      for (Sym t : img.syms) {
        if (!w.syms.empty() && w.syms.back() == inv(t))
          w.syms.pop_back();
        else
          w.syms.push_back(t);
      }
    }
    cur = cyclic_reduce(w);
  }
  return cur;
}

double legality(const ConjClass& alpha, const LegalStructure& legal,
                const std::vector<double>& edge_lengths, double C) {
  if (alpha.empty()) throw InputError("legality: empty class");
  const size_t n = alpha.size();
  double total = metric_length(alpha.syms, edge_lengths);

  // Positions i where the cyclic turn between syms[i] and syms[i+1] is illegal.
  std::vector<size_t> breaks;
  for (size_t i = 0; i < n; ++i)
    if (!legal.crossing_is_legal(alpha.syms[i], alpha.syms[(i + 1) % n])) breaks.push_back(i);

  if (breaks.empty()) return total >= C ? 1.0 : 0.0;

  double good = 0.0;
  for (size_t b = 0; b < breaks.size(); ++b) {
    // Segment starts after break b and runs to the next break (cyclically).
    size_t start = (breaks[b] + 1) % n;
    size_t end = breaks[(b + 1) % breaks.size()];
    double len = 0.0;
    size_t i = start;
    while (true) {
      len += edge_lengths[(alpha.syms[i] > 0 ? alpha.syms[i] : -alpha.syms[i]) - 1];
      if (i == end) break;
      i = (i + 1) % n;
    }
    if (len >= C) good += len;
  }
  return good / total;
}

TrackedSide analyze_side(const RoseMap& m, double tol) {
  TrackedSide out;
  out.rose = m;
  TrainTrackCheck chk = check_train_track(m);
  if (!chk.ok) throw InputError("not a train track map: " + chk.detail);
  out.legal = chk.legal;
  out.matrix = transition_matrix(m);
  out.eigen = growth_rate(out.matrix, tol);
  out.K0 = cancellation_bound(m);
  out.Kbcc = bounded_cancellation(out.K0, out.eigen.lambda);
  out.Ccrit = critical_constant(out.K0, out.eigen.lambda);
  return out;
}

}  // namespace outcx
