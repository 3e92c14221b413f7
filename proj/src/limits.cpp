#include "outcx/limits.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "outcx/whitehead.hpp"

namespace outcx {

namespace {

struct WindowOverflow {};

// A maximal legal segment of the tracked loop. Exact segments keep all
// their symbols in `head`; windowed segments keep `window` symbols at each
// end and only the metric length of the hidden middle.
struct Seg {
  std::vector<Sym> head;
  std::vector<Sym> tail;
  double mid = 0.0;  // metric length of the hidden middle (0 for exact segments)

  bool exact() const { return mid == 0.0 && tail.empty(); }
  bool vanished() const { return head.empty() && tail.empty() && mid == 0.0; }
};

class TightenEngine {
 public:
  TightenEngine(const TrackedSide& side, const ConjClass& alpha, const TightenOptions& opt)
      : side_(side), opt_(opt), alpha_(alpha) {
    if (alpha.empty()) throw InputError("stable_tree_length: empty class");
  }

  PairingEstimate run() {
    size_t window = opt_.window;
    for (;;) {
      try {
        return attempt(window);
      } catch (const WindowOverflow&) {
        window *= 2;
        if (window > opt_.window_max)
          throw ConvergenceError("tighten engine: junction window exceeded limit", seq_);
      }
    }
  }

 private:
  const TrackedSide& side_;
  const TightenOptions& opt_;
  ConjClass alpha_;
  std::vector<double> seq_;

  double len_of(Sym s) const {
    return side_.eigen.edge_lengths[(s > 0 ? s : -s) - 1];
  }
  double metric_of(const std::vector<Sym>& v) const {
    double acc = 0.0;
    for (Sym s : v) acc += len_of(s);
    return acc;
  }
  bool crossing_legal(Sym s, Sym t) const { return side_.legal.crossing_is_legal(s, t); }

  void append_image(std::vector<Sym>& out, Sym s) const {
    const Word& img = side_.rose.image(s > 0 ? s : -s);
    if (s > 0) {
      for (Sym t : img.syms) {
        if (!out.empty() && out.back() == inv(t))
          out.pop_back();
        else
          out.push_back(t);
      }
    } else {
      for (auto it = img.syms.rbegin(); it != img.syms.rend(); ++it) {
        Sym t = inv(*it);
        if (!out.empty() && out.back() == inv(t))
          out.pop_back();
        else
          out.push_back(t);
      }
    }
  }

  // Image of a legal path: plain concatenation, no cancellation occurs.
  std::vector<Sym> image_of(const std::vector<Sym>& p) const {
    std::vector<Sym> out;
    out.reserve(p.size() * 2);
    for (Sym s : p) append_image(out, s);
    return out;
  }

  static bool equal_or_converged(double a, double b, double tol) { return std::abs(a - b) < tol; }

  PairingEstimate attempt(size_t window) {
    seq_.clear();
    const double lambda = side_.eigen.lambda;

    std::vector<Sym> loop = alpha_.syms;
    double lam_pow = 1.0;
    double s = metric_of(loop);
    seq_.push_back(s);

    bool windowed_mode = false;
    std::vector<Seg> segs;
    bool legal_mode = false;

    // Periodicity detection while the loop stays small.
    std::map<std::string, int> seen;
    std::vector<double> lens = {s};

    for (int k = 1; k <= opt_.kmax; ++k) {
      double prev_s = s;
      lam_pow *= lambda;

      if (legal_mode) {
        // Fully legal loop: every further iterate scales exactly by lambda.
        seq_.push_back(s);
        PairingEstimate out;
        out.value = s;
        out.k_used = k;
        out.error_estimate = 0.0;
        out.sequence = seq_;
        out.converged = true;
        return out;
      }

      if (!windowed_mode) {
        // Exact mode: substitute, free-reduce, cyclically reduce.
        std::vector<Sym> next;
        next.reserve(loop.size() * 2);
        for (Sym sym : loop) append_image(next, sym);
        size_t lo = 0, hi = next.size();
        while (hi - lo >= 2 && next[lo] == inv(next[hi - 1])) {
          ++lo;
          --hi;
        }
        loop.assign(next.begin() + lo, next.begin() + hi);
        if (loop.empty()) throw InputError("stable_tree_length: class became trivial");

        double len = metric_of(loop);
        s = len / lam_pow;
        seq_.push_back(s);
        lens.push_back(len);

        bool any_illegal = false;
        for (size_t i = 0; i < loop.size() && !any_illegal; ++i)
          if (!crossing_legal(loop[i], loop[(i + 1) % loop.size()])) any_illegal = true;

        if (!any_illegal) {
          legal_mode = true;
        } else if (loop.size() <= 4096) {
          // Periodic classes stay bounded; once an iterate repeats, the
          // whole tail of the sequence is determined by scalars.
          size_t rot = least_rotation(loop);
          std::string key;
          key.reserve(loop.size());
          for (size_t i = 0; i < loop.size(); ++i)
            key.push_back(static_cast<char>(loop[(i + rot) % loop.size()]));
          auto it = seen.find(key);
          if (it != seen.end()) {
            return finish_periodic(it->second, k, lens, lambda, lam_pow);
          }
          seen.emplace(std::move(key), k);
        }

        if (!legal_mode && loop.size() > opt_.exact_threshold && any_illegal) {
          segs = build_segments(loop, window);
          windowed_mode = true;
          loop.clear();
          loop.shrink_to_fit();
        }
      } else {
        double cancelled = step_windowed(segs, window);
        s = s - cancelled / lam_pow;
        seq_.push_back(s);
        if (segs.size() == 1) {
          Sym x = back_sym(segs[0]);
          Sym y = front_sym(segs[0]);
          if (crossing_legal(x, y)) legal_mode = true;
        }
      }

      if (k >= 1 && equal_or_converged(s, prev_s, opt_.tol)) {
        PairingEstimate out;
        out.value = s;
        out.k_used = k;
        out.error_estimate = std::abs(s - prev_s);
        out.sequence = seq_;
        out.converged = true;
        return out;
      }
    }
    throw ConvergenceError("stable_tree_length: no convergence by k_max for class " +
                               to_string(alpha_),
                           seq_);
  }

  PairingEstimate finish_periodic(int k_first, int k_now, const std::vector<double>& lens,
                                  double lambda, double lam_pow) {
    // lens[j] is the metric length at step j; from k_now on they repeat
    // with period k_now - k_first, so the limit is exactly 0 and the
    // remaining estimates are pure scalars.
    const int period = k_now - k_first;
    double s_prev = seq_.back();
    double lp = lam_pow;
    for (int k = k_now + 1; k <= 100000; ++k) {
      lp *= lambda;
      double len = lens[k_first + ((k - k_first) % period)];
      double s = len / lp;
      seq_.push_back(s);
      if (std::abs(s - s_prev) < opt_.tol) {
        PairingEstimate out;
        out.value = 0.0;           // periodic orbit: bounded lengths over lambda^k
        out.k_used = k;
        out.error_estimate = s;    // bound on the truncation, not a delta
        out.sequence = seq_;
        out.converged = true;
        out.periodic = true;
        return out;
      }
      s_prev = s;
    }
    throw ConvergenceError("stable_tree_length: periodic tail did not reach tolerance", seq_);
  }

  std::vector<Seg> build_segments(const std::vector<Sym>& loop, size_t window) const {
    const size_t n = loop.size();
    std::vector<size_t> breaks;
    for (size_t i = 0; i < n; ++i)
      if (!crossing_legal(loop[i], loop[(i + 1) % n])) breaks.push_back(i);
    // Caller guarantees at least one illegal turn.
    std::vector<Seg> segs;
    segs.reserve(breaks.size());
    for (size_t b = 0; b < breaks.size(); ++b) {
      size_t start = (breaks[b] + 1) % n;
      size_t end = breaks[(b + 1) % breaks.size()];
      std::vector<Sym> syms;
      size_t i = start;
      while (true) {
        syms.push_back(loop[i]);
        if (i == end) break;
        i = (i + 1) % n;
      }
      segs.push_back(make_seg(std::move(syms), window));
    }
    return segs;
  }

  Seg make_seg(std::vector<Sym> syms, size_t window) const {
    Seg seg;
    if (syms.size() <= 2 * window + 8) {
      seg.head = std::move(syms);
      return seg;
    }
    seg.head.assign(syms.begin(), syms.begin() + window);
    seg.tail.assign(syms.end() - window, syms.end());
    seg.mid = metric_of(syms) - metric_of(seg.head) - metric_of(seg.tail);
    return seg;
  }

  static Sym back_sym(const Seg& s) {
    if (!s.tail.empty()) return s.tail.back();
    if (s.mid > 0.0) throw WindowOverflow{};
    return s.head.back();
  }
  static Sym front_sym(const Seg& s) {
    if (!s.head.empty()) return s.head.front();
    if (s.mid > 0.0) throw WindowOverflow{};
    return s.tail.front();
  }
  double pop_back(Seg& s) const {
    if (!s.tail.empty()) {
      double l = len_of(s.tail.back());
      s.tail.pop_back();
      if (s.tail.empty() && s.mid > 0.0) throw WindowOverflow{};
      return l;
    }
    if (s.mid > 0.0) throw WindowOverflow{};
    double l = len_of(s.head.back());
    s.head.pop_back();
    return l;
  }
  double pop_front(Seg& s) const {
    if (!s.head.empty()) {
      double l = len_of(s.head.front());
      s.head.erase(s.head.begin());
      if (s.head.empty() && s.mid > 0.0) throw WindowOverflow{};
      return l;
    }
    if (s.mid > 0.0) throw WindowOverflow{};
    double l = len_of(s.tail.front());
    s.tail.erase(s.tail.begin());
    return l;
  }

  // One application of the map in windowed mode; returns the total metric
  // length removed by cancellation (so s_{k+1} = s_k - cancelled/lambda^{k+1}).
  double step_windowed(std::vector<Seg>& segs, size_t window) {
    const double lambda = side_.eigen.lambda;

    // Apply the map to every segment.
    for (Seg& seg : segs) {
      if (seg.exact()) {
        std::vector<Sym> img = image_of(seg.head);
        seg = make_seg(std::move(img), window);
      } else {
        std::vector<Sym> ih = image_of(seg.head);
        std::vector<Sym> it = image_of(seg.tail);
        seg.mid *= lambda;
        if (ih.size() > window) {
          for (size_t i = window; i < ih.size(); ++i) seg.mid += len_of(ih[i]);
          ih.resize(window);
        }
        seg.head = std::move(ih);
        if (it.size() > window) {
          for (size_t i = 0; i + window < it.size(); ++i) seg.mid += len_of(it[i]);
          it.erase(it.begin(), it.end() - window);
        }
        seg.tail = std::move(it);
      }
    }

    // Cancellation at junctions, to a fixed point. Junction j joins
    // segs[j] and segs[(j+1) % m].
    double cancelled = 0.0;
    bool changed = true;
    while (changed) {
      changed = false;
      for (size_t j = 0; j < segs.size(); ++j) {
        if (segs.size() == 1) {
          Seg& a = segs[0];
          while (true) {
            if (total_syms_at_most(a, 1)) break;
            Sym x = back_sym(a), y = front_sym(a);
            if (x != inv(y)) break;
            cancelled += pop_back(a);
            cancelled += pop_front(a);
            changed = true;
            if (a.vanished()) throw InputError("tighten engine: loop vanished");
          }
          continue;
        }
        size_t jr = (j + 1) % segs.size();
        Seg& a = segs[j];
        Seg& b = segs[jr];
        while (true) {
          if (a.vanished() || b.vanished()) break;
          Sym x = back_sym(a), y = front_sym(b);
          if (x != inv(y)) break;
          cancelled += pop_back(a);
          cancelled += pop_front(b);
          changed = true;
        }
        if (a.vanished() || b.vanished()) {
          size_t victim = a.vanished() ? j : jr;
          segs.erase(segs.begin() + victim);
          changed = true;
          break;  // indices shifted; restart the pass
        }
      }
    }

    // Merge segments across junctions whose turn has become legal.
    bool merged = true;
    while (merged && segs.size() > 1) {
      merged = false;
      for (size_t j = 0; j < segs.size(); ++j) {
        size_t jr = (j + 1) % segs.size();
        Sym x = back_sym(segs[j]);
        Sym y = front_sym(segs[jr]);
        if (crossing_legal(x, y)) {
          Seg m = merge_segs(segs[j], segs[jr], window);
          segs[j] = std::move(m);
          segs.erase(segs.begin() + jr);
          merged = true;
          break;
        }
      }
    }
    return cancelled;
  }

  static bool total_syms_at_most(const Seg& s, size_t n) {
    return s.mid == 0.0 && s.head.size() + s.tail.size() <= n;
  }

  Seg merge_segs(const Seg& a, const Seg& b, size_t window) const {
    if (a.exact() && b.exact()) {
      std::vector<Sym> syms = a.head;
      syms.insert(syms.end(), b.head.begin(), b.head.end());
      return make_seg(std::move(syms), window);
    }
    Seg out;
    if (a.exact()) {
      // a's full content is contiguous with b's head.
      std::vector<Sym> pre = a.head;
      pre.insert(pre.end(), b.head.begin(), b.head.end());
      double pre_metric = metric_of(pre);
      if (pre.size() > window) pre.resize(window);
      out.head = std::move(pre);
      out.mid = pre_metric - metric_of(out.head) + b.mid;
      out.tail = b.tail;
    } else if (b.exact()) {
      std::vector<Sym> post = a.tail;
      post.insert(post.end(), b.head.begin(), b.head.end());
      double post_metric = metric_of(post);
      if (post.size() > window) post.erase(post.begin(), post.end() - window);
      out.tail = std::move(post);
      out.mid = a.mid + post_metric - metric_of(out.tail);
      out.head = a.head;
    } else {
      out.head = a.head;
      out.tail = b.tail;
      out.mid = a.mid + metric_of(a.tail) + metric_of(b.head) + b.mid;
    }
    if (out.mid == 0.0 && !out.tail.empty() &&
        out.head.size() + out.tail.size() <= 2 * window + 8) {
      out.head.insert(out.head.end(), out.tail.begin(), out.tail.end());
      out.tail.clear();
    }
    return out;
  }
};

}  // namespace

PairingEstimate stable_tree_length(const TrackedSide& side, const ConjClass& alpha,
                                   const TightenOptions& opt) {
  TightenEngine eng(side, alpha, opt);
  return eng.run();
}

const TrackedSide& MapSystem::side(int sign) const {
  if (sign >= 0) return fwd;
  if (!bwd) throw InputError("map '" + name + "': inverse train track map required for sign -");
  return *bwd;
}

PairingEstimate MapSystem::tree_length(int sign, const ConjClass& alpha,
                                       const TightenOptions& opt) const {
  std::string key = to_string(alpha);
  auto& cache = sign >= 0 ? cache_->fwd : cache_->bwd;
  {
    std::lock_guard<std::mutex> lock(cache_->mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  PairingEstimate est = stable_tree_length(side(sign), alpha, opt);
  std::lock_guard<std::mutex> lock(cache_->mu);
  return cache.emplace(std::move(key), std::move(est)).first->second;
}

MapSystem make_map_system(const std::string& name, const FreeGroupAut& aut, bool geometric,
                          const std::vector<ConjClass>& boundary, const std::string& literature,
                          double eigen_tol) {
  certify_automorphism(aut, name);
  MapSystem sys;
  sys.name = name;
  sys.aut = aut;
  sys.geometric = geometric;
  sys.boundary_classes = boundary;
  sys.literature = literature;

  RoseMap fwd;
  fwd.rank = aut.rank;
  fwd.edge_images = aut.images;
  sys.fwd = analyze_side(fwd, eigen_tol);

  RoseMap bwd;
  bwd.rank = aut.rank;
  bwd.edge_images = *aut.inverse_images;
  TrainTrackCheck chk = check_train_track(bwd);
  if (chk.ok) sys.bwd = analyze_side(bwd, eigen_tol);
  return sys;
}

std::vector<ConjClass> default_test_set(int rank, const std::vector<ConjClass>& exclude,
                                        const std::vector<ConjClass>& extras) {
  std::vector<ConjClass> out = classes_up_to(rank, 2);
  std::vector<ConjClass> len3 = classes_up_to(rank, 3);
  int taken = 0;
  for (const ConjClass& c : len3) {
    if (c.size() != 3) continue;
    if (taken >= 20) break;
    if (is_primitive(c, rank)) {
      out.push_back(c);
      ++taken;
    }
  }
  for (const ConjClass& c : extras) out.push_back(c);
  auto excluded = [&](const ConjClass& c) {
    for (const ConjClass& e : exclude)
      if (e == c) return true;
    return false;
  };
  std::vector<ConjClass> filtered;
  for (const ConjClass& c : out)
    if (!c.empty() && !excluded(c)) filtered.push_back(c);
  std::sort(filtered.begin(), filtered.end(), class_less);
  filtered.erase(std::unique(filtered.begin(), filtered.end()), filtered.end());
  return filtered;
}

LengthFunctionApprox length_function(const MapSystem& sys, int sign, const FreeGroupAut& g,
                                     const std::vector<ConjClass>& testset,
                                     const TightenOptions& opt,
                                     const std::string& translator_word) {
  if (testset.empty()) throw InputError("length_function: empty test set");
  LengthFunctionApprox out;
  out.map_name = sys.name;
  out.sign = sign >= 0 ? +1 : -1;
  out.translator = g;
  out.translator_word = translator_word;
  out.translator_fp = fingerprint(g).key;
  out.values.reserve(testset.size());
  double sum = 0.0;
  for (const ConjClass& c : testset) {
    PairingEstimate est = sys.tree_length(sign, apply(g, c), opt);
    out.values.push_back(est.value);
    sum += est.value;
    out.k_used = std::max(out.k_used, est.k_used);
    out.error_estimate = std::max(out.error_estimate, est.error_estimate);
  }
  if (sum <= 0.0) throw ConvergenceError("degenerate test set for this tree");
  out.raw_sum = sum;
  for (double& v : out.values) v /= sum;
  return out;
}

double point_distance(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) throw InputError("point_distance: dimension mismatch");
  // Projective points are stored sum-normalized; the metric is the
  // sup-norm between those representatives.
  double d = 0.0;
  for (size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

double pairing(const MapSystem& sys, const LengthFunctionApprox& T, const ConjClass& gamma,
               const TightenOptions& opt) {
  PairingEstimate est = sys.tree_length(T.sign, apply(T.translator, gamma), opt);
  return est.value / T.raw_sum;
}

T2Result t2_experiment(const MapSystem& sysA, const FreeGroupAut& gA, const MapSystem& sysB,
                       const FreeGroupAut& gB, int Lmax, bool all_classes,
                       const std::vector<ConjClass>& testset, const TightenOptions& opt) {
  LengthFunctionApprox TA = length_function(sysA, +1, gA, testset, opt);
  LengthFunctionApprox TB = length_function(sysB, +1, gB, testset, opt);
  if (point_distance(TA.values, TB.values) < 1e-6)
    throw InputError("t2_experiment: the two stable trees are projectively equal");

  if (all_classes && (sysA.geometric || sysB.geometric))
    throw InputError("t2_experiment: all-classes scan requires nongeometric maps");

  const int rank = sysA.aut.rank;
  T2Result out;
  out.delta = std::numeric_limits<double>::infinity();
  for (const ConjClass& c : classes_up_to(rank, Lmax)) {
    if (!all_classes && !is_primitive(c, rank)) continue;
    double a = pairing(sysA, TA, c, opt);
    double b = pairing(sysB, TB, c, opt);
    double len = static_cast<double>(c.size());
    double lo = std::max(a, b) / len;
    double hi = (a + b) / len;
    if (lo < out.delta) {
      out.delta = lo;
      out.delta_class = to_string(c);
    }
    if (hi > out.ceiling) {
      out.ceiling = hi;
      out.ceiling_class = to_string(c);
    }
    out.rows.push_back({to_string(c), static_cast<int>(c.size()), a, b});
    ++out.classes_scanned;
  }
  return out;
}

ScalingReport scaling_diagnostic(const MapSystem& sysP, const FreeGroupAut& p0,
                                 const MapSystem& sysQ, const FreeGroupAut& q0,
                                 const std::vector<BallElement>& gs,
                                 const std::vector<ConjClass>& testset,
                                 const TightenOptions& opt) {
  ScalingReport out;
  out.rows.reserve(gs.size());
  for (const BallElement& el : gs) {
    FreeGroupAut tp = compose(p0, el.aut);
    FreeGroupAut tq = compose(q0, el.aut);
    double sp = 0.0, sq = 0.0;
    for (const ConjClass& c : testset) {
      sp += sysP.tree_length(+1, apply(tp, c), opt).value;
      sq += sysQ.tree_length(+1, apply(tq, c), opt).value;
    }
    out.rows.push_back({el.gen_word.empty() ? "id" : el.gen_word, el.length, sp, sq});
  }
  std::stable_sort(out.rows.begin(), out.rows.end(),
                   [](const ScalingRow& a, const ScalingRow& b) { return a.len < b.len; });
  int ok = 0, total = 0;
  for (size_t i = 1; i < out.rows.size(); ++i) {
    if (out.rows[i].len == out.rows[i - 1].len) continue;
    ++total;
    if (std::max(out.rows[i].scale_p, out.rows[i].scale_q) >=
        std::max(out.rows[i - 1].scale_p, out.rows[i - 1].scale_q) - 1e-12)
      ++ok;
  }
  out.frac_max_nondecreasing = total == 0 ? 1.0 : static_cast<double>(ok) / total;
  return out;
}

}  // namespace outcx
