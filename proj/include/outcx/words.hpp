#pragma once

// Words and cyclic words over a free basis. Letters are signed bytes:
// +i is the i-th positive basis letter (printed 'a'+i-1), -i its inverse
// (printed 'A'+i-1). Words are always freely reduced; conjugacy classes
// are cyclically reduced and stored in the lexicographically least
// rotation under the fixed symbol order a < A < b < B < ...

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "outcx/errors.hpp"

namespace outcx {

using Sym = std::int8_t;

inline Sym inv(Sym s) { return static_cast<Sym>(-s); }

// Total order on symbols used for canonical rotations: a=0, A=1, b=2, B=3, ...
inline int sym_ord(Sym s) {
  int i = s > 0 ? s : -s;
  return 2 * (i - 1) + (s < 0 ? 1 : 0);
}

struct Basis {
  int rank = 2;
  explicit Basis(int n) : rank(n) {
    if (n < 2 || n > 26) throw InputError("basis rank must be in [2,26]");
  }
};

struct Word {
  std::vector<Sym> syms;  // freely reduced

  bool operator==(const Word&) const = default;
  size_t size() const { return syms.size(); }
  bool empty() const { return syms.empty(); }
};

struct ConjClass {
  std::vector<Sym> syms;  // cyclically reduced, canonical rotation

  bool operator==(const ConjClass&) const = default;
  size_t size() const { return syms.size(); }
  bool empty() const { return syms.empty(); }
};

// Free reduction of an arbitrary symbol sequence.
Word reduce(std::span<const Sym> raw);

// Concatenate two reduced words with cancellation at the junction.
Word concat(const Word& u, const Word& v);

Word inverse(const Word& w);

// Index of the lexicographically least rotation (Booth's algorithm).
size_t least_rotation(std::span<const Sym> s);

// Cyclic reduction followed by canonical rotation. Trivial words yield
// the empty class; callers that need nontrivial classes must reject it.
ConjClass cyclic_reduce(const Word& w);

// Same, but also returns the conjugator v with w = v * cls * v^-1.
ConjClass cyclic_reduce_with_conjugator(const Word& w, Word* conjugator);

// The class of w^k (k >= 1).
ConjClass class_power(const ConjClass& c, int k);

// Parsing and printing: 'a'..'z' positive letters, 'A'..'Z' inverses.
// parse_word validates letters against the basis rank and free-reduces.
Word parse_word(const std::string& text, int rank);
ConjClass parse_class(const std::string& text, int rank);
std::string to_string(std::span<const Sym> syms);
inline std::string to_string(const Word& w) { return to_string(std::span<const Sym>(w.syms)); }
inline std::string to_string(const ConjClass& c) { return to_string(std::span<const Sym>(c.syms)); }

// All canonical nontrivial classes of cyclic length <= maxlen, sorted by
// (length, canonical string). Deterministic; used for fingerprints and
// test sets.
std::vector<ConjClass> classes_up_to(int rank, int maxlen);

// Comparison helper: (length, ord-lexicographic).
bool class_less(const ConjClass& a, const ConjClass& b);

}  // namespace outcx
