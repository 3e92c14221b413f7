#include <doctest.h>

#include "outcx/tree_model.hpp"

using namespace outcx;

TEST_SUITE("tree_model") {
  TEST_CASE("star: every crossratio of distinct pairs is zero") {
    TreeModel tm = star_tree(4);
    ChainIndex idx(tm.universe);
    for (int x = 0; x < 4; ++x)
      for (int y = 0; y < 4; ++y)
        for (int z = 0; z < 4; ++z)
          for (int w = 0; w < 4; ++w) {
            if (x == y || z == w) continue;
            CHECK(idx.crossratio_pp(x, y, z, w) == 0);
          }
  }

  TEST_CASE("path with end leaves counts interior edges") {
    // Spine 0-1-2-3-4 with leaves hanging at the two ends.
    std::vector<std::pair<int, int>> edges = {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 5}, {0, 6},
                                              {4, 7}, {4, 8}};
    TreeModel tm = make_tree_model(9, edges, {5, 6, 7, 8});
    ChainIndex idx(tm.universe);
    // K = the two leaves at vertex 0's end, L = the two at vertex 4's end.
    // Their spans are single vertices 0 and 4; four edges separate them.
    CHECK(idx.crossratio_pp(0, 1, 2, 3) == 4);
    CHECK(subtree_distance_oracle(tm, 0, 1, 2, 3) == 4);
    // Mixed pairs share long spans through the spine; the oracle agrees.
    CHECK(idx.crossratio_pp(0, 2, 1, 3) == subtree_distance_oracle(tm, 0, 2, 1, 3));
  }

  TEST_CASE("caterpillar crossratios equal the subtree-distance oracle") {
    for (int spine : {3, 4, 6}) {
      TreeModel tm = caterpillar_tree(spine);
      ChainIndex idx(tm.universe);
      const int n = spine;
      for (int x1 = 0; x1 < n; ++x1)
        for (int x2 = x1 + 1; x2 < n; ++x2)
          for (int y1 = 0; y1 < n; ++y1)
            for (int y2 = y1 + 1; y2 < n; ++y2) {
              int got = idx.crossratio_pp(x1, x2, y1, y2);
              bool share = x1 == y1 || x1 == y2 || x2 == y1 || x2 == y2;
              int want = share ? 0 : subtree_distance_oracle(tm, x1, x2, y1, y2);
              CAPTURE(spine);
              CAPTURE(x1);
              CAPTURE(x2);
              CAPTURE(y1);
              CAPTURE(y2);
              CHECK(got == want);
            }
    }
  }

  TEST_CASE("tree model satisfies the axioms with k = 0") {
    TreeModel tm = caterpillar_tree(6);
    ChainIndex idx(tm.universe);
    std::vector<int> pts = {0, 1, 2, 3, 4, 5};
    AxiomScanReport a = axiom_scan(idx, pts, 100000, 1);
    CHECK(a.a2_k == 0);
    // Leaves at spine 0,1 vs spine 4,5: three spine edges strictly between.
    CHECK(a.a1_max == 3);

    CrossratioAxiomReport c = crossratio_axioms(idx, pts, 100000, 1);
    CHECK(c.c1_k == 0);
    CHECK(c.c2_k == 0);
    CHECK(c.k == 0);
    CHECK(c.path_checked > 0);
    CHECK(c.path_ok == c.path_checked);
  }

  TEST_CASE("triangle inequality holds exactly on the tree model") {
    TreeModel tm = caterpillar_tree(6);
    ChainIndex idx(tm.universe);
    std::vector<int> pts = {0, 1, 2, 3, 4, 5};
    TriangleReport rep = triangle_check(idx, pts, 1000000, 7);
    CHECK(rep.violations == 0);
    CHECK(rep.checked > 100);
  }

  TEST_CASE("rho vanishes exactly on triples with a common tripod center") {
    TreeModel tm = caterpillar_tree(6);
    ChainIndex idx(tm.universe);
    auto triples = enumerate_triples(Bits::all(6), 6);
    TripleGraph g = build_triple_graph(idx, triples, 0);
    for (size_t i = 0; i < triples.size(); ++i) {
      for (size_t j = i + 1; j < triples.size(); ++j) {
        int ci = tripod_center_oracle(tm, triples[i][0], triples[i][1], triples[i][2]);
        int cj = tripod_center_oracle(tm, triples[j][0], triples[j][1], triples[j][2]);
        if (ci == cj) CHECK(g.rho[i][j] == 0);
        if (g.rho[i][j] == 0) CHECK(ci == cj);
      }
    }
  }

  TEST_CASE("rho of equal or permuted triples vanishes; two shared points need not") {
    TreeModel tm = caterpillar_tree(6);
    ChainIndex idx(tm.universe);
    CHECK(idx.rho({0, 1, 2}, {0, 1, 2}) == 0);
    CHECK(idx.rho({0, 1, 2}, {2, 0, 1}) == 0);
    // Sharing two of three points does not force rho = 0: with the shared
    // points at opposite ends, the free pairs {0,1} and {5,4} are disjoint
    // and separated, so the max over pair-pairs is positive.
    CHECK(idx.rho({0, 5, 1}, {0, 5, 4}) == 3);
  }

  TEST_CASE("complete graph at large r, delta small on the tree complex") {
    TreeModel tm = caterpillar_tree(6);
    ChainIndex idx(tm.universe);
    auto triples = enumerate_triples(Bits::all(6), 6);
    TripleGraph g = build_triple_graph(idx, triples, -1);
    CHECK(g.connected());
    DeltaEstimate d = estimate_delta(g, 2000000, 99);
    CHECK(d.exhaustive);
    CHECK(d.delta <= 1.0);

    // r beyond every rho value gives the complete graph with delta <= 1.
    TripleGraph complete = build_triple_graph(idx, triples, 100);
    DeltaEstimate dc = estimate_delta(complete, 2000000, 99);
    CHECK(dc.diameter <= 1);
    CHECK(dc.delta <= 1.0);
  }

  TEST_CASE("graph edges grow monotonically with r") {
    TreeModel tm = caterpillar_tree(5);
    ChainIndex idx(tm.universe);
    auto triples = enumerate_triples(Bits::all(5), 5);
    size_t prev = 0;
    for (int r = 0; r <= 3; ++r) {
      TripleGraph g = build_triple_graph(idx, triples, r);
      size_t edges = 0;
      for (const auto& a : g.adj) edges += a.size();
      CHECK(edges >= prev);
      prev = edges;
    }
  }

  TEST_CASE("crossratio symmetry on the tree model") {
    TreeModel tm = caterpillar_tree(5);
    ChainIndex idx(tm.universe);
    for (int x1 = 0; x1 < 5; ++x1)
      for (int x2 = 0; x2 < 5; ++x2)
        for (int y1 = 0; y1 < 5; ++y1)
          for (int y2 = 0; y2 < 5; ++y2) {
            if (x1 == x2 || y1 == y2) continue;
            CHECK(idx.crossratio_pp(x1, x2, y1, y2) == idx.crossratio_pp(y1, y2, x1, x2));
            CHECK(idx.crossratio_pp(x1, x2, y1, y2) == idx.crossratio_pp(x2, x1, y1, y2));
          }
  }
}
