#include <doctest.h>

#include "outcx/bowditch.hpp"

using namespace outcx;

namespace {

// A hand-built universe over 6 points with a linear chain of annuli:
// annulus i separates {0..i} from {i+2..5}, leaving point i+1 in the gap.
AnnulusUniverse linear_universe() {
  AnnulusUniverse u;
  for (int i = 0; i < 6; ++i) u.point_labels.push_back("p" + std::to_string(i));
  for (int i = 0; i < 5; ++i) {
    AnnulusInst a;
    a.minus_int = Bits(6);
    a.plus_int = Bits(6);
    for (int p = 0; p <= i; ++p) a.minus_int.set(p);
    for (int p = i + 2; p < 6; ++p) a.plus_int.set(p);
    a.minus_closed = a.minus_int;
    a.plus_closed = a.plus_int;
    a.label = "cut" + std::to_string(i);
    AnnulusInst neg;
    neg.minus_int = a.plus_int;
    neg.plus_int = a.minus_int;
    neg.minus_closed = a.plus_closed;
    neg.plus_closed = a.minus_closed;
    neg.label = "-cut" + std::to_string(i);
    int x = u.add_instance(a);
    int y = u.add_instance(neg);
    u.annuli[x].negation = y;
    u.annuli[y].negation = x;
  }
  return u;
}

}  // namespace

TEST_SUITE("bowditch") {
  TEST_CASE("bits basics") {
    Bits b(70);
    b.set(0);
    b.set(69);
    CHECK(b.count() == 2);
    CHECK(b.test(69));
    CHECK(!b.test(68));
    Bits all = Bits::all(70);
    CHECK(all.count() == 70);
    CHECK(b.covers(b));
    CHECK(all.covers(b));
    CHECK(!b.covers(all));
    CHECK(b.union_covers(all, all));
  }

  TEST_CASE("instances deduplicate by signature") {
    AnnulusUniverse u = linear_universe();
    CHECK(u.annuli.size() == 10);
    AnnulusInst dup;
    dup.minus_int = u.annuli[0].minus_int;
    dup.plus_int = u.annuli[0].plus_int;
    dup.minus_closed = u.annuli[0].minus_closed;
    dup.plus_closed = u.annuli[0].plus_closed;
    dup.label = "copy";
    CHECK(u.add_instance(dup) == 0);
    CHECK(u.annuli.size() == 10);
  }

  TEST_CASE("chains count nested separators") {
    AnnulusUniverse u = linear_universe();
    ChainIndex idx(u);
    // cut_i < cut_j iff j >= i+1, so admissible chains for ({0,1},{4,5})
    // run through cut1 < cut2 (cut3 has 4 in its gap's closure side).
    CHECK(idx.crossratio_pp(0, 1, 4, 5) == 2);
    // ({0,1},{2,3}): any separator needs 2 in its plus interior and at
    // least {0,1} in its minus, and no cut has both.
    CHECK(idx.crossratio_pp(0, 1, 2, 3) == 0);
    // Shared point forces zero.
    CHECK(idx.crossratio_pp(0, 2, 2, 5) == 0);
    // Symmetry.
    CHECK(idx.crossratio_pp(4, 5, 0, 1) == idx.crossratio_pp(0, 1, 4, 5));
    // Singletons reach further: cut0 < cut1 < cut2 separates 0 from {4,5}.
    CHECK(idx.crossratio_ps(4, 5, 0) == 3);
  }

  TEST_CASE("rho is a max over pair crossratios and vanishes on equal triples") {
    AnnulusUniverse u = linear_universe();
    ChainIndex idx(u);
    CHECK(idx.rho({0, 1, 2}, {0, 1, 2}) == 0);
    CHECK(idx.rho({0, 1, 2}, {3, 4, 5}) == idx.crossratio_pp(0, 1, 4, 5));
  }

  TEST_CASE("the strict relation is antisymmetric on valid instances") {
    // A < B forces minus(B) to contain minus(A) together with A's gap, so
    // a cycle would put an instance's own nonempty gap inside its minus
    // side. Check the monotonicity on the linear universe.
    AnnulusUniverse u = linear_universe();
    ChainIndex idx(u);
    Bits all = Bits::all(6);
    for (size_t a = 0; a < u.annuli.size(); ++a) {
      for (size_t b = 0; b < u.annuli.size(); ++b) {
        if (!u.annuli[a].plus_int.union_covers(u.annuli[b].minus_int, all)) continue;
        CHECK(a != b);
        // not(plus(A)) is contained in minus(B).
        for (size_t p = 0; p < 6; ++p)
          if (!u.annuli[a].plus_int.test(p)) CHECK(u.annuli[b].minus_int.test(p));
      }
    }
  }

  TEST_CASE("covering instances are dropped, intersecting sides rejected") {
    AnnulusUniverse u;
    for (int i = 0; i < 3; ++i) u.point_labels.push_back("p" + std::to_string(i));
    AnnulusInst a;
    a.minus_int = Bits(3);
    a.plus_int = Bits(3);
    a.minus_int.set(0);
    a.plus_int.set(1);
    a.plus_int.set(2);
    a.minus_closed = a.minus_int;
    a.plus_closed = a.plus_int;
    a.label = "covering";
    u.add_instance(a);
    ChainIndex idx(u);
    CHECK(idx.active_instances() == 0);
    CHECK(idx.dropped_covering() == 1);

    AnnulusUniverse v;
    for (int i = 0; i < 3; ++i) v.point_labels.push_back("p" + std::to_string(i));
    AnnulusInst bad;
    bad.minus_int = Bits(3);
    bad.plus_int = Bits(3);
    bad.minus_closed = Bits(3);
    bad.plus_closed = Bits(3);
    bad.minus_closed.set(0);
    bad.plus_closed.set(0);
    bad.label = "overlap";
    v.add_instance(bad);
    CHECK_THROWS_AS(ChainIndex idx2(v), DegenerateSystemError);
  }

  TEST_CASE("delta of a path-like graph is positive, of a complete graph small") {
    AnnulusUniverse u = linear_universe();
    ChainIndex idx(u);
    auto triples = enumerate_triples(Bits::all(6), 6);
    TripleGraph g = build_triple_graph(idx, triples, -1);
    CHECK(g.connected());
    DeltaEstimate d = estimate_delta(g, 1000000, 5);
    CHECK(d.exhaustive);
    CHECK(d.delta >= 0.0);
    CHECK(d.diameter >= 1);
  }

  TEST_CASE("estimate_delta rejects disconnected graphs") {
    AnnulusUniverse u = linear_universe();
    ChainIndex idx(u);
    auto triples = enumerate_triples(Bits::all(6), 6);
    TripleGraph g = build_triple_graph(idx, triples, 0);
    if (g.components > 1) CHECK_THROWS_AS(estimate_delta(g, 1000, 5), ConvergenceError);
  }

  TEST_CASE("slope fit") {
    CHECK(slope_fit({1, 2, 3, 4}) == doctest::Approx(1.0));
    CHECK(slope_fit({5, 5, 5}) == doctest::Approx(0.0));
  }

  TEST_CASE("axiom scan on the linear universe") {
    AnnulusUniverse u = linear_universe();
    ChainIndex idx(u);
    std::vector<int> pts = {0, 1, 2, 3, 4, 5};
    AxiomScanReport rep = axiom_scan(idx, pts, 100000, 3);
    CHECK(rep.quadruples == 15);
    CHECK(rep.a1_max == 2);
    CHECK(rep.a2_k == 0);  // nested separators behave like a line
  }
}
