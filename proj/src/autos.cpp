#include "outcx/autos.hpp"

#include <algorithm>
#include <unordered_set>

namespace outcx {

FreeGroupAut identity_aut(int rank) {
  FreeGroupAut f;
  f.rank = rank;
  f.images.resize(rank);
  f.inverse_images = std::vector<Word>(rank);
  for (int i = 1; i <= rank; ++i) {
    Word w;
    w.syms = {static_cast<Sym>(i)};
    f.images[i - 1] = w;
    (*f.inverse_images)[i - 1] = w;
  }
  return f;
}

Word apply(const FreeGroupAut& f, const Word& w) {
  Word out;
  for (Sym s : w.syms) {
    int letter = s > 0 ? s : -s;
    if (letter > f.rank) throw InputError("word symbol outside automorphism basis");
    const Word& img = f.images[letter - 1];
    if (s > 0) {
      for (Sym t : img.syms) {
        if (!out.syms.empty() && out.syms.back() == inv(t))
          out.syms.pop_back();
        else
          out.syms.push_back(t);
      }
    } else {
      for (auto it = img.syms.rbegin(); it != img.syms.rend(); ++it) {
        Sym t = inv(*it);
        if (!out.syms.empty() && out.syms.back() == inv(t))
          out.syms.pop_back();
        else
          out.syms.push_back(t);
      }
    }
  }
  return out;
}

ConjClass apply(const FreeGroupAut& f, const ConjClass& c) {
  Word w;
  w.syms = c.syms;
  return cyclic_reduce(apply(f, w));
}

FreeGroupAut compose(const FreeGroupAut& f, const FreeGroupAut& g) {
  if (f.rank != g.rank) throw InputError("composing automorphisms over different bases");
  FreeGroupAut out;
  out.rank = f.rank;
  out.images.reserve(f.rank);
  for (int i = 0; i < f.rank; ++i) out.images.push_back(apply(f, g.images[i]));
  if (f.inverse_images && g.inverse_images) {
    FreeGroupAut ginv = inverse_of(g);
    std::vector<Word> inv_imgs;
    inv_imgs.reserve(f.rank);
    for (int i = 0; i < f.rank; ++i) inv_imgs.push_back(apply(ginv, (*f.inverse_images)[i]));
    out.inverse_images = std::move(inv_imgs);
  }
  return out;
}

FreeGroupAut inverse_of(const FreeGroupAut& f) {
  if (!f.inverse_images) throw InputError("automorphism has no inverse images");
  FreeGroupAut out;
  out.rank = f.rank;
  out.images = *f.inverse_images;
  out.inverse_images = f.images;
  return out;
}

std::optional<Word> inner_witness(const FreeGroupAut& f) {
  const int n = f.rank;
  size_t max_img = 0;
  for (const Word& w : f.images) max_img = std::max(max_img, w.size());

  Word v;
  ConjClass core = cyclic_reduce_with_conjugator(f.images[0], &v);
  if (core.size() != 1 || core.syms[0] != 1) return std::nullopt;

  Word x1;
  x1.syms = {static_cast<Sym>(1)};
  auto check = [&](const Word& w) {
    Word winv = inverse(w);
    for (int i = 1; i <= n; ++i) {
      Word xi;
      xi.syms = {static_cast<Sym>(i)};
      Word conj = concat(concat(w, xi), winv);
      if (!(conj == f.images[i - 1])) return false;
    }
    return true;
  };

  for (int k = -static_cast<int>(max_img); k <= static_cast<int>(max_img); ++k) {
    Word cand = v;
    for (int j = 0; j < std::abs(k); ++j) cand = concat(cand, k > 0 ? x1 : inverse(x1));
    if (check(cand)) return cand;
  }
  return std::nullopt;
}

void certify_automorphism(const FreeGroupAut& f, const std::string& name) {
  if (static_cast<int>(f.images.size()) != f.rank)
    throw InputError("automorphism '" + name + "': wrong number of images");
  if (!f.inverse_images)
    throw InputError("automorphism '" + name + "': inverse_images required");
  if (static_cast<int>(f.inverse_images->size()) != f.rank)
    throw InputError("automorphism '" + name + "': wrong number of inverse images");
  FreeGroupAut finv = inverse_of(f);
  if (!is_inner(compose(f, finv)) || !is_inner(compose(finv, f)))
    throw InputError("automorphism '" + name + "': images and inverse_images are not inverse");
}

OuterFingerprint fingerprint(const FreeGroupAut& f) {
  static thread_local int cached_rank = -1;
  static thread_local std::vector<ConjClass> domain;
  if (cached_rank != f.rank) {
    domain = classes_up_to(f.rank, 2);
    cached_rank = f.rank;
  }
  OuterFingerprint fp;
  fp.entries.reserve(domain.size());
  for (const ConjClass& c : domain) {
    std::string img = to_string(apply(f, c));
    fp.entries.emplace_back(to_string(c), img);
    fp.key += img;
    fp.key += '|';
  }
  return fp;
}

std::vector<BallElement> enumerate_ball(std::span<const FreeGroupAut> gens,
                                        std::span<const std::string> gen_names, int radius) {
  if (gens.size() != gen_names.size())
    throw InputError("enumerate_ball: generator/name count mismatch");
  for (size_t i = 0; i < gens.size(); ++i)
    if (!gens[i].inverse_images)
      throw InputError("enumerate_ball: generator '" + gen_names[i] + "' has no inverse images");

  std::vector<BallElement> out;
  std::unordered_set<std::string> seen;
  int rank = gens.empty() ? 2 : gens[0].rank;

  BallElement id;
  id.aut = identity_aut(rank);
  id.length = 0;
  id.fp_key = fingerprint(id.aut).key;
  seen.insert(id.fp_key);
  out.push_back(std::move(id));

  size_t layer_begin = 0;
  for (int len = 1; len <= radius; ++len) {
    size_t layer_end = out.size();
    for (size_t p = layer_begin; p < layer_end; ++p) {
      for (size_t gi = 0; gi < gens.size(); ++gi) {
        // Right multiplication: new translator acts as (apply gen, then parent).
        FreeGroupAut cand = compose(out[p].aut, gens[gi]);
        std::string key = fingerprint(cand).key;
        if (seen.count(key)) continue;
        seen.insert(key);
        BallElement el;
        el.aut = std::move(cand);
        el.length = len;
        el.gen_word = out[p].gen_word.empty() ? gen_names[gi]
                                              : out[p].gen_word + "." + gen_names[gi];
        el.fp_key = std::move(key);
        out.push_back(std::move(el));
      }
    }
    layer_begin = layer_end;
  }
  return out;
}

}  // namespace outcx
