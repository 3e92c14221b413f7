#pragma once

// Train track maps on roses: legal-turn structure, transition matrix,
// Perron-Frobenius growth rate and eigen-metric, cancellation bounds,
// critical constant, tightened iteration and the legality ratio.
//
// v1 restricts marked graphs to roses (one vertex, n petals), so edge
// paths are exactly words over the basis and the marking is the identity.

#include <optional>
#include <string>
#include <vector>

#include "outcx/words.hpp"

namespace outcx {

// A self map of the rank-n rose: one reduced edge path per positive edge.
struct RoseMap {
  int rank = 2;
  std::vector<Word> edge_images;

  const Word& image(int edge) const { return edge_images[edge - 1]; }
  // Image of an oriented edge (signed symbol).
  Word oriented_image(Sym s) const;
  // First symbol of the image of the direction s (the direction map).
  Sym direction(Sym s) const;
};

// Legality of turns. A turn is an unordered pair of distinct directions at
// the vertex; it is illegal iff some iterate of the direction map
// degenerates it (maps both directions to the same one).
struct LegalStructure {
  int rank = 2;
  std::vector<char> illegal_pair;  // (2n)^2 matrix indexed by sym_ord

  bool turn_is_legal(Sym u, Sym v) const {
    return !illegal_pair[sym_ord(u) * 2 * rank + sym_ord(v)];
  }
  // The turn crossed between consecutive path symbols s, t is {s^-1, t}.
  bool crossing_is_legal(Sym s, Sym t) const { return turn_is_legal(inv(s), t); }
  std::vector<std::pair<std::string, std::string>> illegal_turns() const;
};

LegalStructure legal_structure(const RoseMap& m);

struct TrainTrackCheck {
  bool ok = false;
  std::string detail;        // offending edge and iterate on failure
  LegalStructure legal;      // valid whenever no input error was raised
};

// True iff no edge image crosses an illegal turn (equivalently, all
// iterates restricted to edges are locally injective). Non-reduced edge
// images raise InputError, which is distinct from a train-track failure.
TrainTrackCheck check_train_track(const RoseMap& m);

using CountMatrix = std::vector<std::vector<long long>>;

// entry (i,j) = occurrences of edge i (in either direction) in the image
// of edge j.
CountMatrix transition_matrix(const RoseMap& m);

// Primitivity: some power <= (n-1)^2 + 1 (Wielandt's bound) is strictly
// positive.
bool matrix_is_primitive(const CountMatrix& m);

struct EigenMetric {
  double lambda = 0.0;
  std::vector<double> edge_lengths;  // positive, sum 1; length(image of e) = lambda * length(e)
  std::vector<double> right_vector;  // PF vector of the count matrix itself (edge frequencies)
  double tolerance = 0.0;
  double residual = 0.0;             // max_e |length(rho(e)) - lambda * length(e)|
  int iterations = 0;
};

// Power iteration with Rayleigh-quotient stopping, deterministic all-ones
// start. Throws on a non-primitive matrix.
EigenMetric growth_rate(const CountMatrix& m, double tol = 1e-12);

double metric_length(std::span<const Sym> syms, const std::vector<double>& edge_lengths);

// K0: max cancellation (symbol pairs) when tightening the image of any
// reduced two-edge path.
int cancellation_bound(const RoseMap& m);

// Kbcc = K0 * lambda / (lambda - 1).
double bounded_cancellation(int k0, double lambda);

// C = 2 * Kbcc / (lambda - 1) + 1, in eigen-metric units.
double critical_constant(int k0, double lambda);

// The cyclically reduced image [rho^N(alpha)], computed stepwise.
ConjClass iterate_tighten(const RoseMap& m, const ConjClass& alpha, int N);

// Fraction of the metric length of alpha carried by maximal legal cyclic
// subpaths of metric length >= C.
double legality(const ConjClass& alpha, const LegalStructure& legal,
                const std::vector<double>& edge_lengths, double C);

// Everything derived from one rose map, bundled for downstream modules.
struct TrackedSide {
  RoseMap rose;
  LegalStructure legal;
  CountMatrix matrix;
  EigenMetric eigen;
  int K0 = 0;
  double Kbcc = 0.0;
  double Ccrit = 0.0;
};

TrackedSide analyze_side(const RoseMap& m, double tol = 1e-12);

}  // namespace outcx
