#include "outcx/tree_model.hpp"

#include <algorithm>

namespace outcx {

namespace {

std::vector<std::vector<int>> adjacency(int vertices,
                                        const std::vector<std::pair<int, int>>& edges) {
  std::vector<std::vector<int>> adj(vertices);
  for (auto [a, b] : edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  return adj;
}

// Vertices on the component of `start` after removing edge (u,v).
std::vector<char> component_without_edge(const std::vector<std::vector<int>>& adj, int start,
                                         int u, int v) {
  std::vector<char> in(adj.size(), 0);
  std::vector<int> stack = {start};
  in[start] = 1;
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    for (int y : adj[x]) {
      if ((x == u && y == v) || (x == v && y == u)) continue;
      if (!in[y]) {
        in[y] = 1;
        stack.push_back(y);
      }
    }
  }
  return in;
}

}  // namespace

TreeModel make_tree_model(int vertices, const std::vector<std::pair<int, int>>& edges,
                          const std::vector<int>& leaves) {
  if (static_cast<int>(edges.size()) != vertices - 1)
    throw InputError("tree model: edge count must be vertices-1");
  TreeModel tm;
  tm.vertices = vertices;
  tm.edges = edges;
  tm.leaves = leaves;
  auto adj = adjacency(vertices, edges);

  for (size_t i = 0; i < leaves.size(); ++i)
    tm.leaf_labels.push_back("leaf" + std::to_string(i) + "@v" + std::to_string(leaves[i]));
  tm.universe.point_labels = tm.leaf_labels;
  // One interior witness point per edge: it sits in the gap of that edge's
  // own annulus and strictly inside a side of every other. The witnesses
  // make each annulus exclude something and give the nesting relation its
  // exact tree semantics; crossratio queries still only use the leaves.
  for (auto [u, v] : edges)
    tm.universe.point_labels.push_back("mid(" + std::to_string(u) + "," + std::to_string(v) + ")");

  const size_t n = leaves.size();
  const size_t total = n + edges.size();
  for (size_t e = 0; e < edges.size(); ++e) {
    auto [u, v] = edges[e];
    std::vector<char> side_u = component_without_edge(adj, u, u, v);
    AnnulusInst inst;
    inst.minus_int = Bits(total);
    inst.plus_int = Bits(total);
    for (size_t i = 0; i < n; ++i) {
      if (side_u[leaves[i]])
        inst.minus_int.set(i);
      else
        inst.plus_int.set(i);
    }
    for (size_t g = 0; g < edges.size(); ++g) {
      if (g == e) continue;  // own witness stays in the gap
      if (side_u[edges[g].first])
        inst.minus_int.set(n + g);
      else
        inst.plus_int.set(n + g);
    }
    inst.minus_closed = inst.minus_int;
    inst.plus_closed = inst.plus_int;
    inst.label = "edge(" + std::to_string(u) + "," + std::to_string(v) + ")";
    AnnulusInst neg;
    neg.minus_int = inst.plus_int;
    neg.plus_int = inst.minus_int;
    neg.minus_closed = inst.plus_closed;
    neg.plus_closed = inst.minus_closed;
    neg.label = "edge(" + std::to_string(v) + "," + std::to_string(u) + ")";
    int a = tm.universe.add_instance(inst);
    int b = tm.universe.add_instance(neg);
    tm.universe.annuli[a].negation = b;
    tm.universe.annuli[b].negation = a;
  }
  return tm;
}

TreeModel caterpillar_tree(int spine) {
  if (spine < 2) throw InputError("caterpillar: need at least 2 spine vertices");
  // Vertices 0..spine-1 form the spine; vertex spine+i is the leaf at i.
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i + 1 < spine; ++i) edges.emplace_back(i, i + 1);
  std::vector<int> leaves;
  for (int i = 0; i < spine; ++i) {
    edges.emplace_back(i, spine + i);
    leaves.push_back(spine + i);
  }
  return make_tree_model(2 * spine, edges, leaves);
}

TreeModel star_tree(int n) {
  if (n < 3) throw InputError("star: need at least 3 leaves");
  std::vector<std::pair<int, int>> edges;
  std::vector<int> leaves;
  for (int i = 1; i <= n; ++i) {
    edges.emplace_back(0, i);
    leaves.push_back(i);
  }
  return make_tree_model(n + 1, edges, leaves);
}

int subtree_distance_oracle(const TreeModel& tm, int x1, int x2, int y1, int y2) {
  auto adj = adjacency(tm.vertices, tm.edges);
  // BFS distances from every vertex (trees are tiny here).
  auto bfs = [&](int s) {
    std::vector<int> d(tm.vertices, -1);
    d[s] = 0;
    std::vector<int> q = {s};
    for (size_t i = 0; i < q.size(); ++i)
      for (int w : adj[q[i]])
        if (d[w] < 0) {
          d[w] = d[q[i]] + 1;
          q.push_back(w);
        }
    return d;
  };
  int a = tm.leaves[x1], b = tm.leaves[x2], c = tm.leaves[y1], dd = tm.leaves[y2];
  auto da = bfs(a), db = bfs(b);
  auto on_path = [&](int u, int v, const std::vector<int>& du, const std::vector<int>& dv) {
    std::vector<char> mark(tm.vertices, 0);
    for (int t = 0; t < tm.vertices; ++t)
      if (du[t] + dv[t] == du[v]) mark[t] = 1;
    return mark;
  };
  auto pa = on_path(a, b, da, db);
  auto dc = bfs(c), de = bfs(dd);
  auto pb = on_path(c, dd, dc, de);
  // Distance between the two vertex sets.
  int best = tm.vertices + 1;
  for (int u = 0; u < tm.vertices; ++u) {
    if (!pa[u]) continue;
    auto du = bfs(u);
    for (int v = 0; v < tm.vertices; ++v)
      if (pb[v]) best = std::min(best, du[v]);
  }
  return best;
}

int tripod_center_oracle(const TreeModel& tm, int a, int b, int c) {
  auto adj = adjacency(tm.vertices, tm.edges);
  auto bfs = [&](int s) {
    std::vector<int> d(tm.vertices, -1);
    d[s] = 0;
    std::vector<int> q = {s};
    for (size_t i = 0; i < q.size(); ++i)
      for (int w : adj[q[i]])
        if (d[w] < 0) {
          d[w] = d[q[i]] + 1;
          q.push_back(w);
        }
    return d;
  };
  auto da = bfs(tm.leaves[a]), db = bfs(tm.leaves[b]), dc = bfs(tm.leaves[c]);
  for (int v = 0; v < tm.vertices; ++v)
    if (da[v] + db[v] == da[tm.leaves[b]] && db[v] + dc[v] == db[tm.leaves[c]] &&
        da[v] + dc[v] == da[tm.leaves[c]])
      return v;
  throw InputError("tripod center not found; not a tree?");
}

}  // namespace outcx
