#pragma once

// Independent brute-force oracles used by the test suite.  These re-derive
// the definitions directly from path enumeration — no code is shared with
// the library's solvers — so agreement is a meaningful check.

#include <algorithm>
#include <climits>
#include <initializer_list>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "factor/lasso.hpp"
#include "factor/presentation.hpp"

// Name-based set comparisons shared by the test files (not oracles proper,
// but they keep expectations readable).
inline bool eset_contains_exactly(const factor::Presentation& p,
                                  factor::ESet s,
                                  std::initializer_list<const char*> names) {
  std::set<std::string> got;
  for (int e : factor::mask_to_list(s)) got.insert(p.edge_name(e));
  return got == std::set<std::string>(names.begin(), names.end());
}

inline bool vset_contains_exactly(const factor::Presentation& p,
                                  factor::VSet s,
                                  std::initializer_list<const char*> names) {
  std::set<std::string> got;
  for (int v : factor::mask_to_list(s)) got.insert(p.vertex_name(v));
  return got == std::set<std::string>(names.begin(), names.end());
}

namespace oracle {

using factor::EdgeId;
using factor::ESet;
using factor::kDepthInfinite;
using factor::Label;
using factor::Lasso;
using factor::Path;
using factor::Presentation;
using factor::Vertex;
using factor::VSet;
using factor::Word;

// Every edge path carrying label word w, by plain DFS.  Empty optional when
// more than `cap` paths exist (callers treat that as "skip this word").
inline std::optional<std::vector<Path>> all_paths(const Presentation& p,
                                                  const Word& w,
                                                  std::size_t cap) {
  std::vector<Path> out;
  if (w.empty()) return out;
  std::vector<Path> frontier;
  for (EdgeId e = 0; e < p.edge_count(); ++e)
    if (p.label(e) == w[0]) frontier.push_back({e});
  for (std::size_t i = 1; i < w.size(); ++i) {
    std::vector<Path> next;
    for (const Path& path : frontier) {
      for (EdgeId e : p.out_edges_labeled(p.dst(path.back()), w[i])) {
        next.push_back(path);
        next.back().push_back(e);
        if (next.size() > cap) return std::nullopt;
      }
    }
    frontier = std::move(next);
  }
  if (frontier.size() > cap) return std::nullopt;
  return frontier;
}

// Bridge from u to v: some path carrying u's label word whose first edge is
// u's and last edge is v's.
inline bool brute_bridge(const Presentation& p, const Path& u, const Path& v,
                         std::size_t cap = 200000) {
  Word w;
  for (EdgeId e : u) w.push_back(p.label(e));
  const auto paths = all_paths(p, w, cap);
  if (!paths.has_value()) return false;  // callers keep words tiny
  for (const Path& z : *paths)
    if (z.front() == u.front() && z.back() == v.back()) return true;
  return false;
}

inline bool brute_two_way_bridge(const Presentation& p, const Path& u,
                                 const Path& v, std::size_t cap = 200000) {
  return brute_bridge(p, u, v, cap) && brute_bridge(p, v, u, cap);
}

// Depth of w: min over interior positions n of the smallest edge set at n
// meeting every preimage's routing set, where the routing set of path z is
// the set of position-n edges over paths sharing z's first and last edge.
// Returns nullopt when enumeration blows past the caps.
inline std::optional<int> brute_depth(const Presentation& p, const Word& w,
                                      std::size_t path_cap = 20000,
                                      int universe_cap = 14) {
  if (w.size() <= 2) return kDepthInfinite;
  const auto paths_opt = all_paths(p, w, path_cap);
  if (!paths_opt.has_value() || paths_opt->empty()) return std::nullopt;
  const std::vector<Path>& paths = *paths_opt;
  int best = INT_MAX;
  // 1-based interior positions n: 2 <= n <= |w|-1.
  for (std::size_t n = 2; n + 1 <= w.size(); ++n) {
    std::map<std::pair<EdgeId, EdgeId>, ESet> routing;
    for (const Path& z : paths)
      routing[{z.front(), z.back()}] |= factor::mask_bit(z[n - 1]);
    ESet universe = 0;
    for (const auto& [sig, r] : routing) universe |= r;
    const std::vector<int> uni = factor::mask_to_list(universe);
    if (static_cast<int>(uni.size()) > universe_cap) continue;
    int best_here = INT_MAX;
    const std::size_t lim = std::size_t{1} << uni.size();
    for (std::size_t bits = 1; bits < lim; ++bits) {
      ESet f = 0;
      int size = 0;
      for (std::size_t i = 0; i < uni.size(); ++i)
        if (bits & (std::size_t{1} << i)) {
          f |= factor::mask_bit(uni[i]);
          ++size;
        }
      if (size >= best_here) continue;
      bool hits_all = true;
      for (const auto& [sig, r] : routing)
        hits_all = hits_all && (r & f) != 0;
      if (hits_all) best_here = size;
    }
    best = std::min(best, best_here);
  }
  if (best == INT_MAX) return std::nullopt;  // every position skipped
  return best;
}

// t-depth of w: minimum number of blocks in a partition of the realized
// (first, last) signatures such that every pair within a block is mutually
// bridged.  Enumerates set partitions; nullopt when too many signatures.
inline std::optional<int> brute_t_depth(const Presentation& p, const Word& w,
                                        std::size_t path_cap = 20000,
                                        std::size_t sig_cap = 9) {
  const auto paths_opt = all_paths(p, w, path_cap);
  if (!paths_opt.has_value() || paths_opt->empty()) return std::nullopt;
  std::set<std::pair<EdgeId, EdgeId>> realized;
  for (const Path& z : *paths_opt) realized.insert({z.front(), z.back()});
  const std::vector<std::pair<EdgeId, EdgeId>> sigs(realized.begin(),
                                                    realized.end());
  const std::size_t k = sigs.size();
  if (k > sig_cap) return std::nullopt;
  const auto compatible = [&](std::size_t i, std::size_t j) {
    return realized.count({sigs[i].first, sigs[j].second}) &&
           realized.count({sigs[j].first, sigs[i].second});
  };
  // Restricted-growth strings enumerate all partitions of {0..k-1}.
  std::vector<int> assign(k, 0);
  int best = static_cast<int>(k);
  const auto blocks_of = [&]() {
    int mx = 0;
    for (int a : assign) mx = std::max(mx, a);
    return mx + 1;
  };
  for (;;) {
    bool valid = true;
    for (std::size_t i = 0; i < k && valid; ++i)
      for (std::size_t j = i + 1; j < k && valid; ++j)
        if (assign[i] == assign[j] && !compatible(i, j)) valid = false;
    if (valid) best = std::min(best, blocks_of());
    // next restricted-growth string
    bool advanced = false;
    std::size_t pos = k;
    while (pos > 1) {
      --pos;
      int mx = 0;
      for (std::size_t i = 0; i < pos; ++i) mx = std::max(mx, assign[i]);
      if (assign[pos] <= mx) {
        ++assign[pos];
        for (std::size_t i = pos + 1; i < k; ++i) assign[i] = 0;
        advanced = true;
        break;
      }
      assign[pos] = 0;
    }
    if (!advanced) break;
  }
  return best;
}

// The finite closing condition at delay D, by enumeration: every two paths
// of length D+1 with equal label words from a common vertex must be mutually
// bridged.  nullopt = enumeration too large (skip), otherwise holds/fails.
inline std::optional<bool> brute_condition4(const Presentation& p, int D,
                                            std::size_t per_word_cap = 80,
                                            std::size_t path_cap = 4000) {
  std::map<Word, std::set<std::pair<EdgeId, EdgeId>>> realized_cache;
  const auto realized = [&](const Word& w)
      -> std::optional<const std::set<std::pair<EdgeId, EdgeId>>*> {
    auto it = realized_cache.find(w);
    if (it == realized_cache.end()) {
      const auto paths = all_paths(p, w, path_cap);
      if (!paths.has_value()) return std::nullopt;
      std::set<std::pair<EdgeId, EdgeId>> sigs;
      for (const Path& z : *paths) sigs.insert({z.front(), z.back()});
      it = realized_cache.emplace(w, std::move(sigs)).first;
    }
    return &it->second;
  };
  for (Vertex r = 0; r < p.vertex_count(); ++r) {
    // group length-(D+1) paths from r by label word
    std::map<Word, std::vector<Path>> by_word;
    std::vector<std::pair<Path, Word>> frontier{{Path{}, Word{}}};
    for (int step = 0; step <= D; ++step) {
      std::vector<std::pair<Path, Word>> next;
      for (const auto& [path, word] : frontier) {
        const Vertex at = path.empty() ? r : p.dst(path.back());
        for (EdgeId e : p.out_edges(at)) {
          next.push_back({path, word});
          next.back().first.push_back(e);
          next.back().second.push_back(p.label(e));
          if (next.size() > path_cap) return std::nullopt;
        }
      }
      frontier = std::move(next);
    }
    for (auto& [path, word] : frontier) by_word[word].push_back(path);
    for (const auto& [word, list] : by_word) {
      if (list.size() > per_word_cap) return std::nullopt;
      const auto sigs = realized(word);
      if (!sigs.has_value()) return std::nullopt;
      for (std::size_t i = 0; i < list.size(); ++i) {
        for (std::size_t j = i + 1; j < list.size(); ++j) {
          const Path& a = list[i];
          const Path& b = list[j];
          const bool tangled =
              (*sigs)->count({a.front(), b.back()}) &&
              (*sigs)->count({b.front(), a.back()});
          if (!tangled) return false;
        }
      }
    }
  }
  return true;
}

// Does a preimage of y exist that agrees with x on (-inf, -m]?  y carries
// x's labels on (-inf, 0] and (ytail)^inf on [1, inf).  Checked by stepping
// a vertex set along a window long enough that the (set, tail phase)
// trajectory must cycle, which makes the finite check exact.
inline bool brute_lift_exists(const Presentation& g, const Lasso& x,
                              const Word& ytail, int m) {
  const int pr = static_cast<int>(ytail.size());
  const auto ylab = [&](long long i) -> Label {
    return i <= 0 ? g.label(x.edge_at(i))
                  : ytail[static_cast<std::size_t>((i - 1) % pr)];
  };
  const long long window =
      (std::int64_t{1} << g.vertex_count()) * pr + pr + 4;
  VSet s = factor::mask_bit(g.dst(x.edge_at(-m)));
  for (long long i = -m + 1; i <= window; ++i) {
    s = g.step(s, ylab(i));
    if (!s) return false;
  }
  return true;
}

}  // namespace oracle
