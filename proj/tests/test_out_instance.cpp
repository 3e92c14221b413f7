#include <doctest.h>

#include <memory>

#include "outcx/experiments.hpp"
#include "outcx/out_instance.hpp"

using namespace outcx;

namespace {

FreeGroupAut aut_of(const std::vector<std::string>& images,
                    const std::vector<std::string>& inv_images) {
  FreeGroupAut f;
  f.rank = 2;
  for (const auto& s : images) f.images.push_back(parse_word(s, 2));
  std::vector<Word> iw;
  for (const auto& s : inv_images) iw.push_back(parse_word(s, 2));
  f.inverse_images = iw;
  return f;
}

std::shared_ptr<const MapSystem> fib_system() {
  static std::shared_ptr<const MapSystem> sys = [] {
    return std::make_shared<MapSystem>(
        make_map_system("fib", aut_of({"ab", "a"}, {"b", "Ba"}), true,
                        {parse_class("abAB", 2), parse_class("aBAb", 2)}, "testing"));
  }();
  return sys;
}

InstanceSpec small_spec(int radius) {
  InstanceSpec spec;
  spec.systems = {fib_system()};
  spec.gens = {aut_of({"b", "a"}, {"b", "a"}), aut_of({"A", "b"}, {"A", "b"}),
               aut_of({"ab", "b"}, {"aB", "b"}), aut_of({"aB", "b"}, {"ab", "b"})};
  spec.gen_names = {"swap", "inva", "tr", "trinv"};
  spec.testset = default_test_set(2, fib_system()->boundary_classes, {});
  spec.params.radius = radius;
  spec.params.workers = 2;
  return spec;
}

}  // namespace

TEST_SUITE("out_instance") {
  TEST_CASE("poles are separated well beyond the annulus size") {
    InstanceSpec spec = small_spec(1);
    OutInstance inst(spec.systems, spec.gens, spec.gen_names, spec.testset, spec.params);
    // eps = 0.05 is half the pole separation at this scale: each pole lies
    // well outside the other ball, and the chain index verifies the sides
    // stay disjoint on the actual sample.
    CHECK(inst.pole_separation(0) > spec.params.eps + spec.params.margin);
    CHECK(inst.sample().size() >= 6);
    CHECK(inst.universe().annuli.size() >= 4);
  }

  TEST_CASE("syllable marker vector") {
    CHECK(splitting_syllable_length(parse_class("a", 2)) == 0.0);
    CHECK(splitting_syllable_length(parse_class("ab", 2)) == 2.0);
    CHECK(splitting_syllable_length(parse_class("aabb", 2)) == 2.0);
    CHECK(splitting_syllable_length(parse_class("abab", 2)) == 4.0);
  }

  TEST_CASE("base annulus contains its poles with the strict margins") {
    InstanceSpec spec = small_spec(1);
    OutInstance inst(spec.systems, spec.gens, spec.gen_names, spec.testset, spec.params);
    int plus_pole = inst.point_for(0, +1, identity_aut(2));
    int minus_pole = inst.point_for(0, -1, identity_aut(2));
    REQUIRE(plus_pole >= 0);
    REQUIRE(minus_pole >= 0);
    // The identity instance is the first added.
    const AnnulusInst& base = inst.universe().annuli[0];
    CHECK(base.minus_int.test(minus_pole));
    CHECK(base.plus_int.test(plus_pole));
    CHECK(!base.minus_int.test(plus_pole));
    CHECK(!base.plus_int.test(minus_pole));
    // Negation is registered and swaps sides.
    int neg = base.negation;
    REQUIRE(neg >= 0);
    CHECK(inst.universe().annuli[neg].plus_int.test(minus_pole));
  }

  TEST_CASE("membership is equivariant under translation") {
    InstanceSpec spec = small_spec(2);
    OutInstance inst(spec.systems, spec.gens, spec.gen_names, spec.testset, spec.params);
    // Instances labeled by translator words; find A.id and A.g for g = "tr".
    const auto& annuli = inst.universe().annuli;
    int base = -1, moved = -1;
    for (size_t i = 0; i < annuli.size(); ++i) {
      if (annuli[i].label == "A[fib].id") base = static_cast<int>(i);
      if (annuli[i].label == "A[fib].tr") moved = static_cast<int>(i);
    }
    REQUIRE(base >= 0);
    // The translate may have deduplicated onto another signature; when it
    // kept its own instance, memberships must transport.
    if (moved >= 0) {
      FreeGroupAut tr = aut_of({"ab", "b"}, {"aB", "b"});
      int checked = 0;
      for (const OutSamplePoint& p : inst.sample()) {
        if (p.marker) continue;
        int moved_pt = inst.point_for(p.system, p.sign, compose(p.translator, tr));
        if (moved_pt < 0) continue;
        int orig = inst.point_for(p.system, p.sign, p.translator);
        CHECK(annuli[moved].minus_int.test(moved_pt) == annuli[base].minus_int.test(orig));
        CHECK(annuli[moved].plus_int.test(moved_pt) == annuli[base].plus_int.test(orig));
        ++checked;
      }
      CHECK(checked >= 4);
    }
  }

  TEST_CASE("the poles are separated by at least one annulus") {
    InstanceSpec spec = small_spec(2);
    OutInstance inst(spec.systems, spec.gens, spec.gen_names, spec.testset, spec.params);
    ChainIndex idx(inst.universe());
    int plus_pole = inst.point_for(0, +1, identity_aut(2));
    int minus_pole = inst.point_for(0, -1, identity_aut(2));
    CHECK(idx.crossratio_ps(plus_pole, minus_pole >= 0 ? minus_pole : 0, plus_pole) == 0);
    CHECK(idx.crossratio({plus_pole, -1}, {minus_pole, -1}) >= 1);
  }

  TEST_CASE("axiom scan at small radius sees no A2 violations") {
    InstanceSpec spec = small_spec(2);
    OutInstance inst(spec.systems, spec.gens, spec.gen_names, spec.testset, spec.params);
    ChainIndex idx(inst.universe());
    std::vector<int> pts;
    for (size_t i = 0; i < inst.sample().size(); ++i) pts.push_back(static_cast<int>(i));
    AxiomScanReport rep = axiom_scan(idx, pts, 3000, 11);
    CHECK(rep.a2_k == 0);
    CHECK(rep.quadruples > 100);
    // Pair-pair separations need two sample points inside one pole ball,
    // which first happens at larger radii; only the value being finite and
    // reproducible matters here.
    CHECK(rep.a1_max >= 0);
  }

  TEST_CASE("translation masks nest and the ball is layered") {
    InstanceSpec spec = small_spec(2);
    OutInstance inst(spec.systems, spec.gens, spec.gen_names, spec.testset, spec.params);
    Bits m1 = inst.sample_mask(1);
    Bits m2 = inst.sample_mask(2);
    CHECK(m1.count() <= m2.count());
    CHECK(m2.covers(m1));
    Bits a1 = inst.annulus_mask(1);
    Bits a2 = inst.annulus_mask(2);
    CHECK(a2.covers(a1));
  }

  TEST_CASE("base triple picker avoids the poles") {
    InstanceSpec spec = small_spec(3);  // radius 2 has too few clear points
    OutInstance inst(spec.systems, spec.gens, spec.gen_names, spec.testset, spec.params);
    auto triple = pick_base_triple(inst, spec.params.eps + spec.params.margin);
    std::vector<std::vector<double>> poles = {inst.vector_of(0, +1, identity_aut(2)),
                                              inst.vector_of(0, -1, identity_aut(2))};
    for (int id : triple) {
      for (const auto& pole : poles)
        CHECK(point_distance(inst.sample()[id].values, pole) > spec.params.eps + spec.params.margin);
    }
  }
}
