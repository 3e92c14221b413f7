#pragma once

// The exact finite-tree instance: points are designated leaves of a finite
// tree, one annulus per directed edge (sides = leaf sets of the two
// components), and the chain-counted crossratio then equals the edge
// distance between the spanned subtrees. Ships with its own brute-force
// oracle for that distance.

#include <string>
#include <vector>

#include "outcx/bowditch.hpp"

namespace outcx {

struct TreeModel {
  // Tree on vertices 0..V-1 given by parent edges; points are the leaves.
  int vertices = 0;
  std::vector<std::pair<int, int>> edges;
  std::vector<int> leaves;            // vertex ids, in sample order
  AnnulusUniverse universe;           // one instance per directed edge
  std::vector<std::string> leaf_labels;
};

// Builds the annulus system of a finite tree. `edges` must form a tree.
TreeModel make_tree_model(int vertices, const std::vector<std::pair<int, int>>& edges,
                          const std::vector<int>& leaves);

// A caterpillar: a spine of `spine` vertices with one leaf hanging off
// every spine vertex (so `spine` leaves in total).
TreeModel caterpillar_tree(int spine);

// A star with n leaves.
TreeModel star_tree(int n);

// Oracle: the number of edges strictly between the Steiner subtree of
// {x1,x2} and that of {y1,y2} (0 if they share a vertex). Indices are
// leaf positions in the sample order.
int subtree_distance_oracle(const TreeModel& tm, int x1, int x2, int y1, int y2);

// Oracle for the median (tripod center) of three leaves.
int tripod_center_oracle(const TreeModel& tm, int a, int b, int c);

}  // namespace outcx
