#pragma once

// Currents as subword frequency vectors: leaf approximants read off a
// high iterate of the expanding edge, class approximants read off the
// cyclic word of an iterated conjugacy class, the group action on the
// generating class, and pairings between tree and current approximants.

#include <optional>
#include <string>
#include <vector>

#include "outcx/limits.hpp"

namespace outcx {

struct CurrentApprox {
  int L = 1;
  std::vector<std::pair<std::string, double>> freqs;  // sorted by subword, sum 1
  // Generating recipe: actions and pairings re-run it rather than acting
  // on frequency space.
  std::string map_name;
  int sign = +1;
  int k = 0;
  std::optional<ConjClass> base_class;  // set for class approximants

  double freq(const std::string& w) const;
};

// Length-L subword frequencies of the k-th image of the dominant edge
// (the edge with the largest eigen-metric length). Requires the image of
// every edge under k iterations to have at least 10*L symbols.
CurrentApprox stable_current(const MapSystem& sys, int sign, int L, int k);

// Frequencies of the cyclic word [f^(sign*k)(base)] (wraparound windows).
CurrentApprox class_current(const MapSystem& sys, int sign, const ConjClass& base, int k, int L);

// Action on a class approximant: the automorphism moves the generating
// class, then the recipe is re-run.
CurrentApprox push_current(const FreeGroupAut& g, const CurrentApprox& c, const MapSystem& sys);

// The dual of the tree with the given sign: the current of the opposite
// side (stable_current of the inverse map when sign = +).
CurrentApprox dual_current(const MapSystem& sys, int sign, int L, int k);

// <T, current>: estimates <T, gamma_j>/growth^j along the defining class
// iterates gamma_j, j = 1..k.
PairingEstimate pairing_current(const MapSystem& tree_sys, const LengthFunctionApprox& T,
                                const MapSystem& cur_sys, int cur_sign, const ConjClass& base,
                                int k, const TightenOptions& opt = {});

// Marginalizing length-L frequencies over the last letter; the result is
// comparable against the length-(L-1) table.
std::vector<std::pair<std::string, double>> marginalize_last(const CurrentApprox& c);

// The raw iterate word used by leaf approximants (exposed for oracles).
std::vector<Sym> edge_iterate(const TrackedSide& side, int edge, int k);

}  // namespace outcx
