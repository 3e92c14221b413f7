#include "outcx/whitehead.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>

namespace outcx {

WhiteheadGraph whitehead_graph(const ConjClass& c, int rank) {
  if (c.empty()) throw InputError("whitehead_graph: empty class");
  WhiteheadGraph g;
  g.rank = rank;
  const size_t n = c.size();
  for (size_t i = 0; i < n; ++i) {
    Sym u = c.syms[i];
    Sym v = c.syms[(i + 1) % n];
    int a = sym_ord(inv(u)), b = sym_ord(v);
    if (a > b) std::swap(a, b);
    g.edges.emplace_back(a, b);
  }
  return g;
}

bool has_cut_vertex_or_disconnected(const WhiteheadGraph& g) {
  const int V = 2 * g.rank;
  std::vector<std::vector<int>> adj(V);
  for (auto [a, b] : g.edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<int> support;
  for (int v = 0; v < V; ++v)
    if (!adj[v].empty()) support.push_back(v);
  if (support.empty()) return true;
  if (static_cast<int>(support.size()) < V) return true;  // isolated vertices + edges elsewhere

  // Connectivity of the support.
  std::vector<char> seen(V, 0);
  std::vector<int> stack = {support[0]};
  seen[support[0]] = 1;
  size_t reached = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int w : adj[v])
      if (!seen[w]) {
        seen[w] = 1;
        ++reached;
        stack.push_back(w);
      }
  }
  if (reached < support.size()) return true;

  // Articulation vertices by DFS low-link.
  std::vector<int> disc(V, -1), low(V, 0);
  int timer = 0;
  bool has_cut = false;
  std::function<void(int, int)> dfs = [&](int v, int parent) {
    disc[v] = low[v] = timer++;
    int children = 0;
    for (int w : adj[v]) {
      if (w == v) continue;
      if (disc[w] == -1) {
        ++children;
        dfs(w, v);
        low[v] = std::min(low[v], low[w]);
        if (parent != -1 && low[w] >= disc[v]) has_cut = true;
      } else if (w != parent) {
        low[v] = std::min(low[v], disc[w]);
      }
    }
    if (parent == -1 && children > 1) has_cut = true;
  };
  dfs(support[0], -1);
  return has_cut;
}

const std::vector<FreeGroupAut>& whitehead_type2_autos(int rank) {
  static std::mutex mu;
  static std::map<int, std::vector<FreeGroupAut>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(rank);
  if (it != cache.end()) return it->second;

  std::vector<Sym> letters;
  for (int i = 1; i <= rank; ++i) {
    letters.push_back(static_cast<Sym>(i));
    letters.push_back(static_cast<Sym>(-i));
  }
  std::sort(letters.begin(), letters.end(), [](Sym a, Sym b) { return sym_ord(a) < sym_ord(b); });

  std::vector<FreeGroupAut> autos;
  for (Sym m : letters) {
    std::vector<Sym> rest;
    for (Sym s : letters)
      if (s != m && s != inv(m)) rest.push_back(s);
    const size_t nrest = rest.size();
    for (size_t mask = 1; mask < (size_t{1} << nrest); ++mask) {
      auto contains = [&](Sym s) {
        if (s == m) return true;
        for (size_t j = 0; j < nrest; ++j)
          if ((mask >> j) & 1 && rest[j] == s) return true;
        return false;
      };
      FreeGroupAut f;
      f.rank = rank;
      f.images.resize(rank);
      for (int i = 1; i <= rank; ++i) {
        Sym x = static_cast<Sym>(i);
        std::vector<Sym> img;
        if (x == m || x == inv(m)) {
          img = {x};
        } else {
          if (contains(x)) img.push_back(m);
          img.push_back(x);
          if (contains(inv(x))) img.push_back(inv(m));
        }
        f.images[i - 1] = reduce(img);
      }
      autos.push_back(std::move(f));
    }
  }
  return cache.emplace(rank, std::move(autos)).first->second;
}

bool is_primitive(const ConjClass& c, int rank) {
  if (c.empty()) throw InputError("is_primitive: empty class");
  const auto& autos = whitehead_type2_autos(rank);
  ConjClass cur = c;
  while (cur.size() > 1) {
    size_t best_len = cur.size();
    ConjClass best;
    for (const FreeGroupAut& f : autos) {
      ConjClass img = apply(f, cur);
      if (img.size() < best_len) {
        best_len = img.size();
        best = img;
      }
    }
    if (best_len == cur.size()) return false;  // reduction stalls above length 1
    cur = std::move(best);
  }
  return true;
}

}  // namespace outcx
