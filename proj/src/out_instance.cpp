#include "outcx/out_instance.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <thread>

namespace outcx {

double splitting_syllable_length(const ConjClass& c) {
  if (c.empty()) return 0.0;
  const size_t n = c.size();
  int breaks = 0;
  for (size_t i = 0; i < n; ++i) {
    int cur = std::abs(c.syms[i]);
    int nxt = std::abs(c.syms[(i + 1) % n]);
    if (cur != nxt) ++breaks;
  }
  return static_cast<double>(breaks);  // 0 for single-letter powers
}

std::vector<double> splitting_marker_vector(const std::vector<ConjClass>& testset) {
  std::vector<double> out;
  out.reserve(testset.size());
  double sum = 0.0;
  for (const ConjClass& c : testset) {
    double v = splitting_syllable_length(c);
    out.push_back(v);
    sum += v;
  }
  if (sum <= 0.0) throw InputError("splitting marker: zero vector on this test set");
  for (double& v : out) v /= sum;
  return out;
}

namespace {

void parallel_for(int workers, size_t n, const std::function<void(size_t)>& body) {
  if (workers <= 1 || n < 2) {
    for (size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  std::atomic<size_t> next{0};
  int count = std::min<int>(workers, static_cast<int>(n));
  std::atomic<bool> failed{false};
  std::exception_ptr first_error;
  std::mutex err_mu;
  for (int t = 0; t < count; ++t)
    pool.emplace_back([&] {
      for (;;) {
        size_t i = next.fetch_add(1);
        if (i >= n || failed.load()) break;
        try {
          body(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(err_mu);
          if (!first_error) first_error = std::current_exception();
          failed.store(true);
        }
      }
    });
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace

OutInstance::OutInstance(std::vector<std::shared_ptr<const MapSystem>> systems,
                         std::vector<FreeGroupAut> gens, std::vector<std::string> gen_names,
                         std::vector<ConjClass> testset, OutInstanceParams params,
                         std::vector<ExtraTranslator> extra_points,
                         std::vector<ExtraTranslator> extra_annuli, bool add_marker,
                         const ConjClass& marker_class)
    : systems_(std::move(systems)), testset_(std::move(testset)), params_(params) {
  if (systems_.empty()) throw InputError("out instance: no pole maps");
  for (const auto& s : systems_) s->side(-1);  // both directions are required here
  ball_ = enumerate_ball(gens, gen_names, params_.radius);
  build_sample(extra_points, add_marker, marker_class);
  build_annuli(extra_annuli);
}

std::vector<double> OutInstance::compute_vector(int system, int sign,
                                                const FreeGroupAut& g) const {
  LengthFunctionApprox lf = length_function(*systems_[system], sign, g, testset_, params_.tighten);
  return lf.values;
}

const std::vector<double>& OutInstance::vector_of(int system, int sign,
                                                  const FreeGroupAut& g) const {
  std::string key = std::to_string(system) + (sign >= 0 ? "/+/" : "/-/") + fingerprint(g).key;
  {
    std::lock_guard<std::mutex> lock(cache_mu_);
    auto it = vector_cache_.find(key);
    if (it != vector_cache_.end()) return it->second;
  }
  std::vector<double> v = compute_vector(system, sign, g);
  std::lock_guard<std::mutex> lock(cache_mu_);
  return vector_cache_.emplace(std::move(key), std::move(v)).first->second;
}

void OutInstance::build_sample(const std::vector<ExtraTranslator>& extra_points, bool add_marker,
                               const ConjClass& marker_class) {
  struct Candidate {
    int system, sign, radius;
    const FreeGroupAut* aut;
    std::string word;
  };
  std::vector<Candidate> cand;
  for (size_t s = 0; s < systems_.size(); ++s) {
    for (int sign : {+1, -1}) {
      for (const BallElement& el : ball_)
        cand.push_back({static_cast<int>(s), sign, el.length, &el.aut,
                        el.gen_word.empty() ? "id" : el.gen_word});
      for (const ExtraTranslator& ex : extra_points)
        cand.push_back({static_cast<int>(s), sign, params_.radius + 1, &ex.aut, ex.word});
    }
  }

  parallel_for(params_.workers, cand.size(),
               [&](size_t i) { vector_of(cand[i].system, cand[i].sign, *cand[i].aut); });

  for (const Candidate& c : cand) {
    const std::vector<double>& v = vector_of(c.system, c.sign, *c.aut);
    bool dup = false;
    for (OutSamplePoint& p : sample_) {
      if (!p.marker && point_distance(p.values, v) < params_.eps_eq) {
        p.radius = std::min(p.radius, c.radius);
        dup = true;
        break;
      }
    }
    if (dup) continue;
    OutSamplePoint p;
    p.system = c.system;
    p.sign = c.sign;
    p.translator = *c.aut;
    p.translator_word = c.word;
    p.fp_key = fingerprint(*c.aut).key;
    p.radius = c.radius;
    p.values = v;
    p.label = systems_[c.system]->name + (c.sign > 0 ? "+" : "-") + "." + c.word;
    sample_.push_back(std::move(p));
  }

  if (add_marker) {
    if (marker_class.empty()) throw InputError("marker class must be nontrivial");
    OutSamplePoint p;
    p.system = -1;
    p.sign = 0;
    p.translator = identity_aut(systems_[0]->aut.rank);
    p.translator_word = "marker(" + to_string(marker_class) + ")";
    p.radius = params_.radius + 1;
    p.values = splitting_marker_vector(testset_);
    p.label = p.translator_word;
    p.marker = true;
    marker_point_ = static_cast<int>(sample_.size());
    sample_.push_back(std::move(p));
  }

  universe_.point_labels.clear();
  for (const OutSamplePoint& p : sample_) universe_.point_labels.push_back(p.label);
}

void OutInstance::build_annuli(const std::vector<ExtraTranslator>& extra_annuli) {
  const size_t n = sample_.size();
  struct Translate {
    const FreeGroupAut* aut;
    std::string word;
    int radius;
  };
  std::vector<Translate> translates;
  for (const BallElement& el : ball_)
    translates.push_back({&el.aut, el.gen_word.empty() ? "id" : el.gen_word, el.length});
  for (const ExtraTranslator& ex : extra_annuli)
    translates.push_back({&ex.aut, ex.word, params_.radius + 1});

  std::vector<FreeGroupAut> ginv;
  ginv.reserve(translates.size());
  for (const Translate& t : translates) ginv.push_back(inverse_of(*t.aut));

  // Warm the vector cache for every (point translator o g^-1) in parallel.
  struct Job {
    size_t point, translate;
  };
  std::vector<Job> jobs;
  for (size_t p = 0; p < n; ++p)
    for (size_t t = 0; t < translates.size(); ++t) jobs.push_back({p, t});
  parallel_for(params_.workers, jobs.size(), [&](size_t j) {
    const OutSamplePoint& p = sample_[jobs[j].point];
    if (p.marker) return;
    FreeGroupAut moved = compose(p.translator, ginv[jobs[j].translate]);
    vector_of(p.system, p.sign, moved);
  });

  // Marker membership: the splitting length function moved by g^-1 is the
  // syllable count of the g^-1-images, computable directly.
  auto marker_vec_moved = [&](const FreeGroupAut& inv_g) {
    std::vector<double> out;
    out.reserve(testset_.size());
    double sum = 0.0;
    for (const ConjClass& c : testset_) {
      double v = splitting_syllable_length(apply(inv_g, c));
      out.push_back(v);
      sum += v;
    }
    if (sum > 0.0)
      for (double& v : out) v /= sum;
    return out;  // all-zero marks a degenerate translate; callers skip it
  };

  const double in_lo = params_.eps - params_.margin;   // strict interior
  const double in_hi = params_.eps + params_.margin;   // closed set
  annulus_radius_.clear();

  for (size_t s = 0; s < systems_.size(); ++s) {
    const std::vector<double>& pole_minus =
        vector_of(static_cast<int>(s), -1, identity_aut(systems_[s]->aut.rank));
    const std::vector<double>& pole_plus =
        vector_of(static_cast<int>(s), +1, identity_aut(systems_[s]->aut.rank));
    for (size_t t = 0; t < translates.size(); ++t) {
      AnnulusInst inst;
      inst.minus_int = Bits(n);
      inst.plus_int = Bits(n);
      inst.minus_closed = Bits(n);
      inst.plus_closed = Bits(n);
      for (size_t p = 0; p < n; ++p) {
        std::vector<double> moved_storage;
        const std::vector<double>* moved;
        if (sample_[p].marker) {
          moved_storage = marker_vec_moved(ginv[t]);
          bool zero = true;
          for (double v : moved_storage)
            if (v != 0.0) zero = false;
          if (zero) continue;  // degenerate translate sits in the gap
          moved = &moved_storage;
        } else {
          moved = &vector_of(sample_[p].system, sample_[p].sign,
                             compose(sample_[p].translator, ginv[t]));
        }
        double dm = point_distance(*moved, pole_minus);
        double dp = point_distance(*moved, pole_plus);
        if (dm < in_lo) inst.minus_int.set(p);
        if (dm <= in_hi) inst.minus_closed.set(p);
        if (dp < in_lo) inst.plus_int.set(p);
        if (dp <= in_hi) inst.plus_closed.set(p);
      }
      inst.label = "A[" + systems_[s]->name + "]." + translates[t].word;
      AnnulusInst neg;
      neg.minus_int = inst.plus_int;
      neg.plus_int = inst.minus_int;
      neg.minus_closed = inst.plus_closed;
      neg.plus_closed = inst.minus_closed;
      neg.label = "-" + inst.label;

      size_t before = universe_.annuli.size();
      int a = universe_.add_instance(std::move(inst));
      if (universe_.annuli.size() > before) annulus_radius_.push_back(translates[t].radius);
      annulus_radius_[a] = std::min(annulus_radius_[a], translates[t].radius);
      before = universe_.annuli.size();
      int b = universe_.add_instance(std::move(neg));
      if (universe_.annuli.size() > before) annulus_radius_.push_back(translates[t].radius);
      annulus_radius_[b] = std::min(annulus_radius_[b], translates[t].radius);
      universe_.annuli[a].negation = b;
      universe_.annuli[b].negation = a;
    }
  }
}

Bits OutInstance::sample_mask(int radius) const {
  Bits m(sample_.size());
  for (size_t i = 0; i < sample_.size(); ++i)
    if (sample_[i].radius <= radius) m.set(i);
  return m;
}

Bits OutInstance::annulus_mask(int radius) const {
  Bits m(universe_.annuli.size());
  for (size_t i = 0; i < universe_.annuli.size(); ++i)
    if (annulus_radius_[i] <= radius) m.set(i);
  return m;
}

int OutInstance::point_for(int system, int sign, const FreeGroupAut& g) const {
  const std::vector<double>& v = vector_of(system, sign, g);
  for (size_t i = 0; i < sample_.size(); ++i)
    if (!sample_[i].marker && point_distance(sample_[i].values, v) < params_.eps_eq)
      return static_cast<int>(i);
  return -1;
}

double OutInstance::pole_separation(int system) const {
  const std::vector<double>& a = vector_of(system, +1, identity_aut(systems_[system]->aut.rank));
  const std::vector<double>& b = vector_of(system, -1, identity_aut(systems_[system]->aut.rank));
  return point_distance(a, b);
}

}  // namespace outcx
