#include "factor/solvers.hpp"

#include <algorithm>

namespace factor {

namespace {

// lexicographic comparison of the sorted element tuples of two bit masks
bool tuple_less(std::uint64_t a, std::uint64_t b) {
  while (a && b) {
    int x = std::countr_zero(a);
    int y = std::countr_zero(b);
    if (x != y) return x < y;
    a &= a - 1;
    b &= b - 1;
  }
  return !a && b;  // shorter tuple wins when one is a prefix
}

bool set_order_less(std::uint64_t a, std::uint64_t b) {
  int ca = std::popcount(a), cb = std::popcount(b);
  if (ca != cb) return ca < cb;
  return tuple_less(a, b);
}

}  // namespace

std::pair<int, std::uint64_t> min_hitting_set(std::vector<std::uint64_t> sets) {
  for (std::uint64_t s : sets)
    if (!s) return {-1, 0};
  if (sets.empty()) return {0, 0};
  std::uint64_t universe = 0;
  for (std::uint64_t s : sets) universe |= s;

  int best_size = std::popcount(universe);
  std::uint64_t best_mask = 0;
  bool have_best = false;

  // branch on the smallest unhit set, elements ascending
  auto rec = [&](auto&& self, const std::vector<std::uint64_t>& rem_sets,
                 std::uint64_t chosen, int chosen_size) -> void {
    if (chosen_size > best_size) return;
    std::vector<std::uint64_t> rem;
    for (std::uint64_t s : rem_sets)
      if (!(s & chosen)) rem.push_back(s);
    if (rem.empty()) {
      if (!have_best || chosen_size < best_size ||
          (chosen_size == best_size && tuple_less(chosen, best_mask))) {
        best_size = chosen_size;
        best_mask = chosen;
        have_best = true;
      }
      return;
    }
    if (chosen_size + 1 > best_size) return;
    std::uint64_t pivot = rem[0];
    for (std::uint64_t s : rem)
      if (set_order_less(s, pivot)) pivot = s;
    for_each_bit(pivot, [&](int x) {
      self(self, rem, chosen | mask_bit(x), chosen_size + 1);
    });
  };
  rec(rec, sets, 0, 0);
  return {best_size, best_mask};
}

std::pair<int, std::vector<std::vector<int>>> min_clique_cover(
    int n, const std::vector<std::uint64_t>& adj) {
  if (n == 0) return {0, {}};
  std::uint64_t all = (n == 64) ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  // complement adjacency: cover by cliques of adj == color the complement
  std::vector<std::uint64_t> comp(n);
  for (int i = 0; i < n; ++i) comp[i] = all & ~adj[i] & ~mask_bit(i);

  int best_used = n + 1;
  std::vector<int> colors(n, -1), best_colors;

  auto bt = [&](auto&& self, int i, int used) -> void {
    if (used >= best_used) return;
    if (i == n) {
      best_used = used;
      best_colors = colors;
      return;
    }
    for (int c = 0; c < used; ++c) {
      bool ok = true;
      for_each_bit(comp[i], [&](int u) {
        if (colors[u] == c) ok = false;
      });
      if (ok) {
        colors[i] = c;
        self(self, i + 1, used);
        colors[i] = -1;
      }
    }
    colors[i] = used;
    self(self, i + 1, used + 1);
    colors[i] = -1;
  };
  bt(bt, 0, 0);

  std::vector<std::vector<int>> cells(best_used);
  for (int v = 0; v < n; ++v) cells[best_colors[v]].push_back(v);
  return {best_used, cells};
}

std::vector<std::vector<int>> strongly_connected_components(
    int n, const std::vector<std::vector<int>>& adj) {
  std::vector<int> index(n, -1), low(n, 0);
  std::vector<char> onstack(n, 0);
  std::vector<int> stk;
  std::vector<std::vector<int>> comps;
  int counter = 0;
  for (int root = 0; root < n; ++root) {
    if (index[root] >= 0) continue;
    std::vector<std::pair<int, std::size_t>> dfs{{root, 0}};
    index[root] = low[root] = counter++;
    stk.push_back(root);
    onstack[root] = 1;
    while (!dfs.empty()) {
      const int u = dfs.back().first;
      const std::size_t ci = dfs.back().second;
      if (ci < adj[u].size()) {
        dfs.back().second = ci + 1;
        const int w = adj[u][ci];
        if (index[w] < 0) {
          index[w] = low[w] = counter++;
          stk.push_back(w);
          onstack[w] = 1;
          dfs.emplace_back(w, 0);
        } else if (onstack[w]) {
          low[u] = std::min(low[u], index[w]);
        }
        continue;
      }
      if (low[u] == index[u]) {
        std::vector<int> comp;
        for (;;) {
          const int w = stk.back();
          stk.pop_back();
          onstack[w] = 0;
          comp.push_back(w);
          if (w == u) break;
        }
        comps.push_back(std::move(comp));
      }
      dfs.pop_back();
      if (!dfs.empty()) {
        const int parent = dfs.back().first;
        low[parent] = std::min(low[parent], low[u]);
      }
    }
  }
  return comps;
}

}  // namespace factor
