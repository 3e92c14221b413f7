#pragma once

// Free group endomorphisms given by basis images, certified automorphisms,
// innerness testing, outer-class fingerprints, and ball enumeration in the
// outer automorphism group.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "outcx/words.hpp"

namespace outcx {

struct FreeGroupAut {
  int rank = 2;
  std::vector<Word> images;                               // image of each positive letter
  std::optional<std::vector<Word>> inverse_images;        // images under the inverse, if known

  const Word& image(int letter) const { return images[letter - 1]; }
};

FreeGroupAut identity_aut(int rank);

Word apply(const FreeGroupAut& f, const Word& w);
ConjClass apply(const FreeGroupAut& f, const ConjClass& c);

// (f o g)(x) = f(g(x)); inverse images, when both present, compose the
// other way round.
FreeGroupAut compose(const FreeGroupAut& f, const FreeGroupAut& g);

// Swaps images and inverse_images; requires inverse_images.
FreeGroupAut inverse_of(const FreeGroupAut& f);

// Innerness test. Returns the conjugator w with f(x) = w x w^-1 for every
// basis letter, or nullopt. Search: f(x_1) must be a conjugate v x_1 v^-1
// of x_1; candidate conjugators are v x_1^k for |k| <= max_i |f(x_i)|.
std::optional<Word> inner_witness(const FreeGroupAut& f);
inline bool is_inner(const FreeGroupAut& f) { return inner_witness(f).has_value(); }

// Checks that images/inverse_images define mutually inverse endomorphisms
// (both composites inner); throws InputError otherwise.
void certify_automorphism(const FreeGroupAut& f, const std::string& name);

// Outer fingerprint: the induced map on all classes of cyclic length <= 2.
// Two automorphisms have equal fingerprints iff they differ by an inner
// automorphism; the key is a canonical string for hashing.
struct OuterFingerprint {
  std::vector<std::pair<std::string, std::string>> entries;  // domain class -> image class
  std::string key;

  bool operator==(const OuterFingerprint& o) const { return key == o.key; }
};

OuterFingerprint fingerprint(const FreeGroupAut& f);

// Breadth-first ball in the outer group generated by `gens` (which must be
// closed under inversion and carry inverse_images). Elements are products
// of at most `radius` generators, deduplicated by fingerprint, in BFS
// order (identity first, then by length and generator index).
struct BallElement {
  FreeGroupAut aut;
  int length = 0;          // generator word length of the first representative
  std::string gen_word;    // generator names joined by '.', empty for identity
  std::string fp_key;
};

std::vector<BallElement> enumerate_ball(std::span<const FreeGroupAut> gens,
                                        std::span<const std::string> gen_names, int radius);

}  // namespace outcx
