#include "factor/class_degree.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <thread>

#include "factor/solvers.hpp"

namespace factor {

namespace {

void check_labels(const Presentation& p, const Word& w) {
  for (Label a : w)
    if (a < 0 || a >= p.label_count())
      throw InputError("unknown label id in lasso word");
}

}  // namespace

ClassDegreeResult class_degree(const Presentation& p, int max_len,
                               long long plateau, int threads) {
  if (max_len < 3) throw InputError("class-degree scan needs max_len >= 3");
  if (plateau < 0) {
    int nv = p.vertex_count();
    plateau = nv >= 62 ? std::numeric_limits<long long>::max()
                       : static_cast<long long>(nv) << nv;
  }
  ClassDegreeResult res;
  res.horizon = max_len;
  long long unchanged = 0;
  int nthreads = std::max(1, threads);
  for (int L = 3; L <= max_len; ++L) {
    std::vector<Word> words = image_words(p, L);
    // minimum t-depth over this length, first word attaining it
    int len_v = kDepthInfinite;
    long long len_i = -1;
    if (nthreads == 1 || words.size() < 2 * static_cast<std::size_t>(nthreads)) {
      for (std::size_t i = 0; i < words.size(); ++i) {
        int d = word_t_depth(p, words[i], 64).value;
        if (d < len_v) {
          len_v = d;
          len_i = static_cast<long long>(i);
        }
      }
    } else {
      std::size_t chunk = (words.size() + nthreads - 1) / nthreads;
      std::vector<int> tv(nthreads, kDepthInfinite);
      std::vector<long long> ti(nthreads, -1);
      std::vector<std::exception_ptr> errs(nthreads);
      std::vector<std::thread> pool;
      for (int t = 0; t < nthreads; ++t) {
        pool.emplace_back([&, t] {
          try {
            std::size_t lo = t * chunk;
            std::size_t hi = std::min(words.size(), lo + chunk);
            for (std::size_t i = lo; i < hi; ++i) {
              int d = word_t_depth(p, words[i], 64).value;
              if (d < tv[t]) {
                tv[t] = d;
                ti[t] = static_cast<long long>(i);
              }
            }
          } catch (...) {
            errs[t] = std::current_exception();
          }
        });
      }
      for (auto& th : pool) th.join();
      for (auto& e : errs)
        if (e) std::rethrow_exception(e);
      for (int t = 0; t < nthreads; ++t) {
        if (ti[t] < 0) continue;
        if (tv[t] < len_v || (tv[t] == len_v && ti[t] < len_i)) {
          len_v = tv[t];
          len_i = ti[t];
        }
      }
    }
    if (len_i >= 0 && len_v < res.value) {
      res.value = len_v;
      res.witness = words[static_cast<std::size_t>(len_i)];
      unchanged = 0;
      if (len_v == 1) {
        res.certified = true;
        break;
      }
    } else {
      ++unchanged;
    }
    if (unchanged >= plateau) {
      res.certified = true;
      break;
    }
  }
  if (!res.witness.empty()) res.partition = word_t_depth(p, res.witness, 64);
  return res;
}

bool class_degree_equals_degree_check(const Presentation& p, int max_len) {
  DegreeResult d = degree_finite_to_one(p);  // throws when infinite-to-one
  ClassDegreeResult c = class_degree(p, max_len);
  return d.value == c.value;
}

std::vector<Path> label_cycle_paths(const Presentation& p, const Word& w,
                                    int kmax) {
  check_labels(p, w);
  if (w.empty()) throw InputError("cycle word must be nonempty");
  if (kmax < 0) kmax = p.vertex_count();
  int P = static_cast<int>(w.size());
  std::set<Path> found;
  Path path;
  // first-return cycles of the (vertex, phase) product, DFS in edge order
  auto rec = [&](auto&& self, Vertex v, int i) -> void {
    if (!path.empty() && v == p.src(path[0]) && i % P == 0) {
      found.insert(path);
      if (found.size() > 200000)
        throw BudgetExhausted("labeled cycle enumeration");
      return;
    }
    if (static_cast<int>(path.size()) >= kmax * P) return;
    for (EdgeId e : p.out_edges_labeled(v, w[i % P])) {
      path.push_back(e);
      self(self, p.dst(e), i + 1);
      path.pop_back();
    }
  };
  for (Vertex v0 = 0; v0 < p.vertex_count(); ++v0) rec(rec, v0, 0);
  return std::vector<Path>(found.begin(), found.end());
}

std::vector<Path> label_paths_from(const Presentation& p, Vertex v,
                                   const Word& w, std::uint64_t cap) {
  check_labels(p, w);
  std::vector<std::pair<Path, Vertex>> cur{{Path{}, v}};
  for (Label a : w) {
    std::vector<std::pair<Path, Vertex>> nxt;
    for (const auto& [path, u] : cur) {
      for (EdgeId e : p.out_edges_labeled(u, a)) {
        Path q = path;
        q.push_back(e);
        nxt.emplace_back(std::move(q), p.dst(e));
        if (nxt.size() > cap) throw BudgetExhausted("labeled path enumeration");
      }
    }
    cur = std::move(nxt);
  }
  std::vector<Path> out;
  out.reserve(cur.size());
  for (auto& [path, u] : cur) out.push_back(std::move(path));
  return out;
}

std::vector<Lasso> fiber_lassos(const Presentation& p, const LabelLasso& y) {
  std::vector<Lasso> out;
  std::vector<Path> lcyc = label_cycle_paths(p, y.left_cycle);
  std::vector<Path> rcyc = label_cycle_paths(p, y.right_cycle);
  for (const Path& lc : lcyc) {
    Vertex base = p.src(lc[0]);
    for (const Path& sp : label_paths_from(p, base, y.spoke)) {
      Vertex v = sp.empty() ? base : p.dst(sp.back());
      for (const Path& rc : rcyc) {
        if (p.src(rc[0]) != v) continue;
        out.emplace_back(p, lc, sp, rc);
      }
    }
  }
  return out;
}

std::vector<VSet> right_alive_vertices(const Presentation& p, const Word& c) {
  check_labels(p, c);
  int P = static_cast<int>(c.size());
  std::vector<VSet> alive(P, p.all_vertices());
  bool changed = true;
  while (changed) {
    changed = false;
    for (int i = 0; i < P; ++i) {
      VSet keep = 0;
      for_each_bit(alive[i], [&](int v) {
        for (EdgeId e : p.out_edges_labeled(v, c[i])) {
          if (mask_has(alive[(i + 1) % P], p.dst(e))) {
            keep |= mask_bit(v);
            break;
          }
        }
      });
      if (keep != alive[i]) {
        alive[i] = keep;
        changed = true;
      }
    }
  }
  return alive;
}

std::vector<VSet> left_alive_vertices(const Presentation& p,
                                      const LabelLasso& y) {
  check_labels(p, y.left_cycle);
  check_labels(p, y.spoke);
  check_labels(p, y.right_cycle);
  auto read = [&](VSet S, const Word& w) {
    for (Label a : w) S = p.step(S, a);
    return S;
  };
  // endpoints of left-infinite paths labeled ∞(lc): the decreasing fixpoint
  VSet S = p.all_vertices();
  for (VSet prev = ~S; S != prev;) {
    prev = S;
    S = read(S, y.left_cycle);
  }
  S = read(S, y.spoke);  // now entering right-tail phase 0
  // endpoint sets along the tail are eventually periodic; accumulate the
  // periodic part per phase
  const Word& c = y.right_cycle;
  int P = static_cast<int>(c.size());
  std::map<VSet, std::uint64_t> seen;
  std::vector<VSet> seq{S};
  VSet cur = S;
  std::uint64_t start = 0;
  for (std::uint64_t rep = 0;; ++rep) {
    auto [it, fresh] = seen.emplace(cur, rep);
    if (!fresh) {
      start = it->second;  // cycle: reps start..rep-1 repeat forever
      break;
    }
    cur = read(cur, c);
    seq.push_back(cur);
    if (rep > (std::uint64_t{1} << 20))
      throw BudgetExhausted("left-tail endpoint-set stabilization");
  }
  std::vector<VSet> alive(P, 0);
  for (std::uint64_t rep = start; rep + 1 < seq.size(); ++rep) {
    VSet at = seq[rep];
    for (int i = 0; i < P; ++i) {
      alive[i] |= at;
      at = p.step(at, c[i]);
    }
  }
  return alive;
}

namespace {

// Phases ph with rot_ph(c) = c: windows carrying c^j can sit at tail phase
// ph only for these rotations.
std::vector<int> matching_phases(const Word& c) {
  int P = static_cast<int>(c.size());
  std::vector<int> out;
  for (int ph = 0; ph < P; ++ph) {
    bool ok = true;
    for (int i = 0; i < P && ok; ++i) ok = c[i] == c[(ph + i) % P];
    if (ok) out.push_back(ph);
  }
  return out;
}

// Exact max clique over adjacency masks (first maximum in lexicographic
// exploration order kept).
void max_clique(const std::vector<std::uint64_t>& adj, std::vector<int>& best) {
  int n = static_cast<int>(adj.size());
  std::vector<int> cur;
  auto grow = [&](auto&& self, int from) -> void {
    if (cur.size() > best.size()) best = cur;
    for (int k = from; k < n; ++k) {
      bool ok = true;
      for (int c2 : cur)
        if (!(adj[k] >> c2 & 1)) {
          ok = false;
          break;
        }
      if (ok) {
        cur.push_back(k);
        self(self, k + 1);
        cur.pop_back();
      }
    }
  };
  grow(grow, 0);
}

}  // namespace

ClassCountBounds class_count_bounds(const Presentation& p, const LabelLasso& y,
                                    Side side, int k_max) {
  if (y.left_cycle.empty() || y.right_cycle.empty())
    throw InputError("lasso cycles must be nonempty");
  std::optional<Presentation> rev;
  if (side == Side::kLeft) rev = p.reversed();
  const Presentation& g = rev ? *rev : p;
  const LabelLasso yy = side == Side::kRight ? y : y.reversed();
  check_labels(g, yy.left_cycle);
  check_labels(g, yy.spoke);
  check_labels(g, yy.right_cycle);

  ClassCountBounds out;
  out.side = side;

  // ---- upper bound: tangled partitions of extendable tail windows c^j.
  // Windows with equal (first, last) edges are mutually tangled and have
  // identical extendability and bridging, so work on signatures.
  const Word& c = yy.right_cycle;
  std::vector<VSet> alive_r = right_alive_vertices(g, c);
  std::vector<VSet> alive_l = left_alive_vertices(g, yy);
  std::vector<int> phases = matching_phases(c);
  int upper = -1;
  for (int j = 1; j <= k_max; ++j) {
    Word w;
    for (int r = 0; r < j; ++r) w.insert(w.end(), c.begin(), c.end());
    // realizable extendable signatures
    std::vector<std::pair<EdgeId, EdgeId>> sigs;
    std::map<EdgeId, ESet> reach;
    for (EdgeId e : g.edges_labeled(w[0])) {
      ESet R = reach_last_edges(g, e, w);
      if (!R) continue;
      reach[e] = R;
      for_each_bit(R, [&](int l) {
        bool ext = false;
        for (int ph : phases) {
          if (mask_has(alive_l[ph], g.src(e)) &&
              mask_has(alive_r[ph], g.dst(l))) {
            ext = true;
            break;
          }
        }
        if (ext) sigs.emplace_back(e, l);
      });
    }
    if (sigs.empty()) {
      if (j == 1)
        throw InputError("lasso is not in the image language "
                         "(no extendable preimage window)");
      break;
    }
    if (sigs.size() > 64)
      throw BudgetExhausted("window signature count above the exact-solver "
                            "cutoff of 64");
    int n = static_cast<int>(sigs.size());
    std::vector<std::uint64_t> adj(n, 0);
    for (int i = 0; i < n; ++i) {
      for (int k = i + 1; k < n; ++k) {
        bool tangled = mask_has(reach.at(sigs[i].first), sigs[k].second) &&
                       mask_has(reach.at(sigs[k].first), sigs[i].second);
        if (tangled) {
          adj[i] |= std::uint64_t{1} << k;
          adj[k] |= std::uint64_t{1} << i;
        }
      }
    }
    int cells = min_clique_cover(n, adj).first;
    out.upper_by_power.push_back(cells);
    if (upper < 0 || cells < upper) {
      upper = cells;
      out.upper_power = j;
    }
    if (upper == 1) break;
  }
  out.upper = upper;

  // ---- lower bound: aligned preimage lassos pairwise certified to lie in
  // distinct classes by the exact transition tests.
  std::vector<Lasso> lassos = fiber_lassos(g, yy);
  int n = static_cast<int>(lassos.size());
  if (n > 64)
    throw BudgetExhausted("fiber lasso count above the exact-solver cutoff "
                          "of 64");
  std::vector<std::uint64_t> noneq(n, 0);
  for (int i = 0; i < n; ++i) {
    for (int k = i + 1; k < n; ++k) {
      bool equivalent = right_transition_exists(g, lassos[i], lassos[k]) &&
                        right_transition_exists(g, lassos[k], lassos[i]);
      if (!equivalent) {
        noneq[i] |= std::uint64_t{1} << k;
        noneq[k] |= std::uint64_t{1} << i;
      }
    }
  }
  std::vector<int> family;
  if (n > 0) family = {0};
  max_clique(noneq, family);
  out.lower = static_cast<int>(family.size());
  // represent the family in the original orientation
  for (int i : family)
    out.certified_family.push_back(side == Side::kRight
                                       ? lassos[i]
                                       : lassos[i].reversed(p));
  return out;
}

}  // namespace factor
