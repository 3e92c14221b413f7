#pragma once

// Whitehead graphs of conjugacy classes, the cut-vertex test, and the
// primitivity decision by greedy Whitehead reduction.

#include <vector>

#include "outcx/autos.hpp"
#include "outcx/words.hpp"

namespace outcx {

struct WhiteheadGraph {
  int rank = 2;                                  // vertices are the 2*rank symbols, indexed by sym_ord
  std::vector<std::pair<int, int>> edges;        // multiset of unordered ord-index pairs, first <= second
};

// One edge (u^-1, v) per cyclic adjacency uv of the class; empty classes
// are rejected.
WhiteheadGraph whitehead_graph(const ConjClass& c, int rank);

// True iff the graph is disconnected or has an articulation vertex.
// Isolated vertices count as disconnection when edges exist elsewhere;
// connectivity itself is computed on the support.
bool has_cut_vertex_or_disconnected(const WhiteheadGraph& g);

// The type II Whitehead automorphisms (A, m) with multiplier m in A and
// m^-1 outside, excluding the identity, in a fixed deterministic order.
const std::vector<FreeGroupAut>& whitehead_type2_autos(int rank);

// Primitivity via greedy peak reduction: repeatedly apply the steepest
// length-reducing type II automorphism (first in the enumeration on
// ties); primitive iff the terminal length is 1.
bool is_primitive(const ConjClass& c, int rank);

}  // namespace outcx
