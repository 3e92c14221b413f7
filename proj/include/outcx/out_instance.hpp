#pragma once

// The outer-automorphism instance of the annulus construction: sample
// points are pole translates T_(f_i)^(+-) . g over an enumerated ball
// (deduplicated projectively), annuli are the translates of eps-balls
// around the poles with strict-interior margins, and membership is
// evaluated through the length-function machinery with a fingerprint-keyed
// vector cache.

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "outcx/autos.hpp"
#include "outcx/bowditch.hpp"
#include "outcx/limits.hpp"

namespace outcx {

struct OutInstanceParams {
  double eps = 0.05;
  double margin = 0.005;  // strict-interior slack
  double eps_eq = 1e-6;   // projective dedup distance
  int radius = 4;         // enumeration radius for points and annuli
  int workers = 1;
  TightenOptions tighten;
};

struct OutSamplePoint {
  int system = 0;  // index into the systems list
  int sign = +1;
  FreeGroupAut translator;
  std::string translator_word;
  std::string fp_key;
  int radius = 0;  // ball layer of first appearance (extras get radius+1)
  std::vector<double> values;
  std::string label;
  bool marker = false;
};

struct ExtraTranslator {
  FreeGroupAut aut;
  std::string word;
};

class OutInstance {
 public:
  OutInstance(std::vector<std::shared_ptr<const MapSystem>> systems,
              std::vector<FreeGroupAut> gens, std::vector<std::string> gen_names,
              std::vector<ConjClass> testset, OutInstanceParams params,
              std::vector<ExtraTranslator> extra_points = {},
              std::vector<ExtraTranslator> extra_annuli = {}, bool add_marker = false,
              const ConjClass& marker_class = {});

  const AnnulusUniverse& universe() const { return universe_; }
  const std::vector<OutSamplePoint>& sample() const { return sample_; }
  const std::vector<BallElement>& ball() const { return ball_; }
  const OutInstanceParams& params() const { return params_; }
  const std::vector<ConjClass>& testset() const { return testset_; }

  // Mask of sample points first seen within the given ball radius
  // (markers and extras are excluded for radius < params.radius + 1).
  Bits sample_mask(int radius) const;
  // Mask of annulus instances induced by translators of length <= radius.
  Bits annulus_mask(int radius) const;

  // Point id of (system, sign, translator), matched projectively; -1 if
  // the point is not in the sample.
  int point_for(int system, int sign, const FreeGroupAut& g) const;
  int marker_point() const { return marker_point_; }

  // Distances between the separated poles, for reporting.
  double pole_separation(int system) const;
  size_t system_count() const { return systems_.size(); }
  int rank() const { return systems_[0]->aut.rank; }

  // The normalized vector of (system, sign, translator), from the cache.
  const std::vector<double>& vector_of(int system, int sign, const FreeGroupAut& g) const;

 private:
  std::vector<std::shared_ptr<const MapSystem>> systems_;
  std::vector<BallElement> ball_;
  std::vector<ConjClass> testset_;
  OutInstanceParams params_;
  AnnulusUniverse universe_;
  std::vector<OutSamplePoint> sample_;
  std::vector<int> annulus_radius_;  // per universe instance, min translator length
  int marker_point_ = -1;
  mutable std::mutex cache_mu_;
  mutable std::map<std::string, std::vector<double>> vector_cache_;  // key: sys/sign/fp

  std::vector<double> compute_vector(int system, int sign, const FreeGroupAut& g) const;
  void build_sample(const std::vector<ExtraTranslator>& extra_points, bool add_marker,
                    const ConjClass& marker_class);
  void build_annuli(const std::vector<ExtraTranslator>& extra_annuli);
};

// Translation lengths in the Bass-Serre tree of the one-edge splitting
// along the first basis letter: the number of syllables of the cyclic
// word, 0 for powers of a single letter. Stands in for a simplicial tree.
double splitting_syllable_length(const ConjClass& c);
std::vector<double> splitting_marker_vector(const std::vector<ConjClass>& testset);

}  // namespace outcx
