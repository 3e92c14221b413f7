#pragma once

// The annulus-system machinery over a frozen finite sample: the nesting
// relation, crossratios by longest chains, the triple-space quasi-metric
// rho, the graph on triples, hyperbolicity estimation, and the axiom
// scans. Everything here is purely combinatorial; instance builders (the
// outer-automorphism instance and the finite tree model) live elsewhere.
//
// All quantifiers over the space are evaluated over the explicit sample,
// so computed crossratios are lower bounds of the ideal ones; reports
// carry the sample and truncation parameters.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "outcx/errors.hpp"

namespace outcx {

class Bits {
 public:
  Bits() = default;
  explicit Bits(size_t n) : n_(n), w_((n + 63) / 64, 0) {}

  size_t size() const { return n_; }
  void set(size_t i) { w_[i >> 6] |= (uint64_t{1} << (i & 63)); }
  void reset(size_t i) { w_[i >> 6] &= ~(uint64_t{1} << (i & 63)); }
  bool test(size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
  size_t count() const;
  bool any() const;
  bool none() const { return !any(); }

  // this | other covers mask?
  bool union_covers(const Bits& other, const Bits& mask) const;
  // this & mask == mask?
  bool covers(const Bits& mask) const;
  bool intersects(const Bits& other) const;
  Bits operator&(const Bits& o) const;
  Bits operator|(const Bits& o) const;
  bool operator==(const Bits& o) const { return n_ == o.n_ && w_ == o.w_; }

  static Bits all(size_t n);

 private:
  size_t n_ = 0;
  std::vector<uint64_t> w_;
  friend struct std::hash<Bits>;
};

// One annulus instance evaluated on the sample: strict-interior and closed
// membership bitsets for both sides.
struct AnnulusInst {
  Bits minus_int, plus_int;      // interiors (inner margin)
  Bits minus_closed, plus_closed;
  std::string label;
  int negation = -1;             // index of the instance -A after dedup
};

// A frozen sample plus a deduplicated instance set.
struct AnnulusUniverse {
  std::vector<std::string> point_labels;
  std::vector<AnnulusInst> annuli;
  size_t sample_size() const { return point_labels.size(); }

  // Appends an instance unless an identical membership signature exists;
  // returns the index of the surviving instance.
  int add_instance(AnnulusInst inst);

 private:
  std::unordered_map<std::string, int> signature_index_;
};

// The nesting DAG and longest-chain tables for a (sample mask, instance
// mask) restriction. Construction fails with DegenerateSystemError if the
// strict relation has a cycle.
class ChainIndex {
 public:
  ChainIndex(const AnnulusUniverse& u, const Bits& sample_mask, const Bits& annulus_mask);
  ChainIndex(const AnnulusUniverse& u);  // full sample, full system

  // (K|L): the maximal number of instances A_1 < ... < A_n with K < A_1
  // and A_n < L. K, L are sets of 1 or 2 point ids. Returns 0 when K and
  // L share a point. Memoized; symmetric in (K, L).
  int crossratio(std::array<int, 2> K, std::array<int, 2> L) const;  // -1 marks "unused slot"
  int crossratio_pp(int k1, int k2, int l1, int l2) const;           // pair vs pair
  int crossratio_ps(int k1, int k2, int x) const;                    // pair vs singleton

  // rho of two triples: max over the nine pair-vs-pair crossratios.
  int rho(const std::array<int, 3>& A, const std::array<int, 3>& B) const;

  const AnnulusUniverse& universe() const { return u_; }
  const Bits& sample_mask() const { return sample_mask_; }
  size_t active_instances() const { return active_.size(); }
  size_t dropped_covering() const { return dropped_covering_; }
  long relation_edges() const { return relation_edges_; }

  // Every crossratio computed so far, sorted by key: {k1,k2,l1,l2,value}
  // with -1 in unused singleton slots.
  std::vector<std::array<int, 5>> computed_entries() const;

 private:
  const AnnulusUniverse& u_;
  Bits sample_mask_;
  std::vector<int> active_;              // universe indices of usable instances
  std::vector<Bits> minus_int_, plus_int_;  // per active instance, masked
  std::vector<std::vector<int32_t>> succ_;  // nesting successors
  std::vector<int> topo_;
  std::vector<int16_t> lp_;              // longest-path edge counts, -1 unreachable
  size_t dropped_covering_ = 0;
  long relation_edges_ = 0;
  mutable std::unordered_map<uint64_t, int> memo_;

  int longest_chain(const std::vector<int>& srcs, const std::vector<int>& sinks) const;
  void build();
};

// ----- triples, rho table, graph -----

struct TripleGraph {
  std::vector<std::array<int, 3>> triples;
  std::vector<std::vector<int>> rho;  // symmetric matrix
  int r = 0;
  int connectivity_threshold = 0;  // min r making the graph connected
  std::vector<std::vector<int>> adj;
  int components = 1;
  double spearman_d_vs_rho = 0.0;  // rank correlation of graph distance vs rho

  bool connected() const { return components == 1; }
};

// All rho values for the given triples, then the graph at radius r
// (r < 0 picks connectivity threshold + 1).
TripleGraph build_triple_graph(const ChainIndex& idx, const std::vector<std::array<int, 3>>& triples,
                               int r);

// Deterministically enumerated triples over the first `max_points` points
// of the mask (ascending ids).
std::vector<std::array<int, 3>> enumerate_triples(const Bits& sample_mask, int max_points);

struct DeltaEstimate {
  double delta = 0.0;
  long quadruples = 0;
  bool exhaustive = false;
  int diameter = 0;
};

// Four-point hyperbolicity constant over graph distances: for each
// quadruple the defect between the two largest of the three pair-sums.
DeltaEstimate estimate_delta(const TripleGraph& g, long budget, uint64_t seed);

// ----- axiom scans -----

struct AxiomScanReport {
  long quadruples = 0;
  int a1_max = 0;                // max (xy|zw) over disjoint pairs
  std::string a1_witness;
  int a2_k = 0;                  // max over quadruples of min((xz|yw),(xw|yz))
  std::string a2_witness;
  long a2_nonzero = 0;           // quadruples with min > 0
};

AxiomScanReport axiom_scan(const ChainIndex& idx, const std::vector<int>& points, long budget,
                           uint64_t seed);

struct CrossratioAxiomReport {
  int c1_k = 0;
  int c2_k = 0;
  int k = 0;  // max(c1_k, c2_k)
  long fours = 0, fives = 0;
  long path_checked = 0, path_ok = 0;
};

CrossratioAxiomReport crossratio_axioms(const ChainIndex& idx, const std::vector<int>& points,
                                        long budget, uint64_t seed);

struct TriangleReport {
  long checked = 0;
  long violations = 0;
  std::string witness;
};

// (A|B) <= (A|x) + (x|B) + 1 over sampled (pair, point, pair) choices.
TriangleReport triangle_check(const ChainIndex& idx, const std::vector<int>& points, long budget,
                              uint64_t seed);

// Least-squares slope through (N, d_N), N = 1..size.
double slope_fit(const std::vector<double>& d);

}  // namespace outcx

template <>
struct std::hash<outcx::Bits> {
  size_t operator()(const outcx::Bits& b) const {
    size_t h = b.n_;
    for (uint64_t x : b.w_) h = h * 1099511628211ULL ^ x;
    return h;
  }
};
