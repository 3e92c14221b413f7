#include "outcx/words.hpp"

#include <algorithm>
#include <functional>

namespace outcx {

Word reduce(std::span<const Sym> raw) {
  Word out;
  out.syms.reserve(raw.size());
  for (Sym s : raw) {
    if (s == 0) throw InputError("zero symbol in word");
    if (!out.syms.empty() && out.syms.back() == inv(s))
      out.syms.pop_back();
    else
      out.syms.push_back(s);
  }
  return out;
}

Word concat(const Word& u, const Word& v) {
  Word out = u;
  for (Sym s : v.syms) {
    if (!out.syms.empty() && out.syms.back() == inv(s))
      out.syms.pop_back();
    else
      out.syms.push_back(s);
  }
  return out;
}

Word inverse(const Word& w) {
  Word out;
  out.syms.reserve(w.size());
  for (auto it = w.syms.rbegin(); it != w.syms.rend(); ++it) out.syms.push_back(inv(*it));
  return out;
}

size_t least_rotation(std::span<const Sym> s) {
  const size_t n = s.size();
  if (n <= 1) return 0;
  auto at = [&](size_t i) { return sym_ord(s[i % n]); };
  // Booth's least-rotation algorithm on the doubled sequence.
  std::vector<ptrdiff_t> fail(2 * n, -1);
  size_t k = 0;
  for (size_t j = 1; j < 2 * n; ++j) {
    int sj = at(j);
    ptrdiff_t i = fail[j - k - 1];
    while (i != -1 && sj != at(k + i + 1)) {
      if (sj < at(k + i + 1)) k = j - i - 1;
      i = fail[i];
    }
    if (sj != at(k + i + 1)) {
      if (sj < at(k)) k = j;
      fail[j - k] = -1;
    } else {
      fail[j - k] = i + 1;
    }
    if (k >= n) break;
  }
  return k % n;
}

static std::vector<Sym> rotate_to(std::span<const Sym> s, size_t r) {
  std::vector<Sym> out;
  out.reserve(s.size());
  for (size_t i = 0; i < s.size(); ++i) out.push_back(s[(i + r) % s.size()]);
  return out;
}

ConjClass cyclic_reduce(const Word& w) {
  Word ignore;
  return cyclic_reduce_with_conjugator(w, &ignore);
}

ConjClass cyclic_reduce_with_conjugator(const Word& w, Word* conjugator) {
  size_t lo = 0, hi = w.size();
  while (hi - lo >= 2 && w.syms[lo] == inv(w.syms[hi - 1])) {
    ++lo;
    --hi;
  }
  std::span<const Sym> core(w.syms.data() + lo, hi - lo);
  size_t r = least_rotation(core);
  ConjClass out;
  out.syms = rotate_to(core, r);
  if (conjugator) {
    // w = v * core * v^-1 with v the stripped prefix; rotating the core by r
    // conjugates by its first r letters, so the full conjugator is v * core[0..r).
    conjugator->syms.assign(w.syms.begin(), w.syms.begin() + lo);
    for (size_t i = 0; i < r; ++i) conjugator->syms.push_back(core[i]);
  }
  return out;
}

ConjClass class_power(const ConjClass& c, int k) {
  if (k < 1) throw InputError("class_power expects k >= 1");
  ConjClass out;
  out.syms.reserve(c.size() * k);
  for (int i = 0; i < k; ++i)
    out.syms.insert(out.syms.end(), c.syms.begin(), c.syms.end());
  // A power of a canonical rotation is already cyclically reduced; the
  // canonical rotation of c^k starts at the same letter.
  size_t r = least_rotation(out.syms);
  out.syms = rotate_to(out.syms, r);
  return out;
}

Word parse_word(const std::string& text, int rank) {
  std::vector<Sym> raw;
  raw.reserve(text.size());
  for (char ch : text) {
    if (ch == ' ' || ch == '\t') continue;
    Sym s;
    if (ch >= 'a' && ch <= 'z')
      s = static_cast<Sym>(ch - 'a' + 1);
    else if (ch >= 'A' && ch <= 'Z')
      s = static_cast<Sym>(-(ch - 'A' + 1));
    else
      throw InputError(std::string("unknown symbol '") + ch + "' in word \"" + text + "\"");
    if ((s > 0 ? s : -s) > rank)
      throw InputError(std::string("symbol '") + ch + "' outside basis of rank " +
                       std::to_string(rank));
    raw.push_back(s);
  }
  return reduce(raw);
}

ConjClass parse_class(const std::string& text, int rank) {
  return cyclic_reduce(parse_word(text, rank));
}

std::string to_string(std::span<const Sym> syms) {
  std::string out;
  out.reserve(syms.size());
  for (Sym s : syms) out.push_back(s > 0 ? char('a' + s - 1) : char('A' - s - 1));
  return out;
}

bool class_less(const ConjClass& a, const ConjClass& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (size_t i = 0; i < a.size(); ++i) {
    int x = sym_ord(a.syms[i]), y = sym_ord(b.syms[i]);
    if (x != y) return x < y;
  }
  return false;
}

std::vector<ConjClass> classes_up_to(int rank, int maxlen) {
  std::vector<ConjClass> out;
  std::vector<Sym> letters;
  for (int i = 1; i <= rank; ++i) {
    letters.push_back(static_cast<Sym>(i));
    letters.push_back(static_cast<Sym>(-i));
  }
  std::vector<Sym> cur;
  std::function<void(int)> rec = [&](int len) {
    if (static_cast<int>(cur.size()) == len) {
      if (cur.front() == inv(cur.back()) && len > 1) return;  // not cyclically reduced
      if (least_rotation(cur) != 0) return;                   // not canonical: skip duplicates
      ConjClass c;
      c.syms = cur;
      out.push_back(std::move(c));
      return;
    }
    for (Sym s : letters) {
      if (!cur.empty() && cur.back() == inv(s)) continue;
      cur.push_back(s);
      rec(len);
      cur.pop_back();
    }
  };
  for (int len = 1; len <= maxlen; ++len) rec(len);
  std::sort(out.begin(), out.end(), class_less);
  return out;
}

}  // namespace outcx
