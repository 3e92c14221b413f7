#pragma once

// Finite approximations of the objects at infinity: scaled-limit lengths of
// conjugacy classes in stable/unstable trees, normalized length functions
// on a finite test set, and the experiments built on them.
//
// The central primitive is stable_tree_length: the sequence
//   s_k = metric-length([rho^k(alpha)]) / lambda^k
// computed exactly. Words are materialized only while small; beyond a
// threshold the loop is tracked as legal segments joined at illegal turns,
// with symbol windows around each junction (cancellation is confined to
// bounded neighbourhoods of illegal turns, so this is exact; a window that
// proves too small triggers a deterministic retry with a wider one).

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "outcx/autos.hpp"
#include "outcx/train_track.hpp"

namespace outcx {

struct TightenOptions {
  double tol = 1e-9;
  int kmax = 60;
  size_t exact_threshold = size_t{1} << 17;  // symbols; switch to windowed above
  size_t window = 64;                        // initial junction window
  size_t window_max = 32768;
};

struct PairingEstimate {
  double value = 0.0;
  int k_used = 0;
  double error_estimate = 0.0;
  std::vector<double> sequence;  // s_0 .. s_{k_used}
  bool converged = false;
  bool periodic = false;  // iterates cycle; the limit is exactly 0
};

PairingEstimate stable_tree_length(const TrackedSide& side, const ConjClass& alpha,
                                   const TightenOptions& opt = {});

// One fully irreducible automorphism realized on the rose, both directions.
struct MapSystem {
  std::string name;
  FreeGroupAut aut;              // certified automorphism
  TrackedSide fwd;
  std::optional<TrackedSide> bwd;
  bool geometric = false;
  std::vector<ConjClass> boundary_classes;
  std::string literature;

  const TrackedSide& side(int sign) const;
  double growth(int sign) const { return side(sign).eigen.lambda; }

  // Memoized stable_tree_length per (sign, class).
  PairingEstimate tree_length(int sign, const ConjClass& alpha,
                              const TightenOptions& opt = {}) const;

 private:
  struct Cache {
    std::mutex mu;
    std::unordered_map<std::string, PairingEstimate> fwd, bwd;
  };
  std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

MapSystem make_map_system(const std::string& name, const FreeGroupAut& aut, bool geometric,
                          const std::vector<ConjClass>& boundary, const std::string& literature,
                          double eigen_tol = 1e-12);

// Test set: all classes of length <= 2, the 20 lexicographically first
// primitive classes of length 3, plus extras; declared boundary classes
// are excluded.
std::vector<ConjClass> default_test_set(int rank, const std::vector<ConjClass>& exclude,
                                        const std::vector<ConjClass>& extras);

struct LengthFunctionApprox {
  std::string map_name;
  int sign = +1;
  FreeGroupAut translator;
  std::string translator_word;  // description, e.g. generator path
  std::string translator_fp;
  std::vector<double> values;  // aligned with the test set, normalized to sum 1
  double raw_sum = 0.0;
  int k_used = 0;
  double error_estimate = 0.0;
};

// The point T_(sign) . g of the sample space: values[alpha] is the scaled
// limit length of g(alpha), normalized projectively over the test set.
LengthFunctionApprox length_function(const MapSystem& sys, int sign, const FreeGroupAut& g,
                                     const std::vector<ConjClass>& testset,
                                     const TightenOptions& opt = {},
                                     const std::string& translator_word = "");

// Projective sup distance: sup-norm between max-normalized representatives.
double point_distance(const std::vector<double>& a, const std::vector<double>& b);

// Pairing of a normalized length function with an arbitrary class (the
// same limit, run on the class and scaled by the function's raw sum).
double pairing(const MapSystem& sys, const LengthFunctionApprox& T, const ConjClass& gamma,
               const TightenOptions& opt = {});

struct T2Row {
  std::string cls;
  int len = 0;
  double a = 0.0, b = 0.0;  // normalized pairings with the two trees
};

struct T2Result {
  double delta = 0.0;       // min over classes of max(a,b)/|alpha|
  std::string delta_class;
  double ceiling = 0.0;     // max over classes of (a+b)/|alpha|
  std::string ceiling_class;
  int classes_scanned = 0;
  std::vector<T2Row> rows;
};

// Scan over all primitive (or all, when both maps are nongeometric and
// all_classes is set) classes of length <= Lmax.
T2Result t2_experiment(const MapSystem& sysA, const FreeGroupAut& gA, const MapSystem& sysB,
                       const FreeGroupAut& gB, int Lmax, bool all_classes,
                       const std::vector<ConjClass>& testset, const TightenOptions& opt = {});

struct ScalingRow {
  std::string g;
  int len = 0;
  double scale_p = 0.0, scale_q = 0.0;  // raw test-set sums before normalization
};

struct ScalingReport {
  std::vector<ScalingRow> rows;               // ordered by generator word length
  double frac_max_nondecreasing = 0.0;        // fraction of consecutive steps with max scale not dropping
};

ScalingReport scaling_diagnostic(const MapSystem& sysP, const FreeGroupAut& p0,
                                 const MapSystem& sysQ, const FreeGroupAut& q0,
                                 const std::vector<BallElement>& gs,
                                 const std::vector<ConjClass>& testset,
                                 const TightenOptions& opt = {});

}  // namespace outcx
