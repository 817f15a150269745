#include "factor/ctc.hpp"

#include <algorithm>
#include <exception>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>
#include <tuple>
#include <utility>
#include <vector>

#include "factor/bridges.hpp"
#include "factor/class_closing.hpp"
#include "factor/class_degree.hpp"
#include "factor/solvers.hpp"
#include "factor/subset_sink.hpp"

namespace factor {
namespace {

// ------------------------------------------------------------- continuing

// Exact set of endpoint sets t(λ) over left-infinite label sequences λ,
// computed on the profile graph: a profile maps each start vertex to the
// endpoint set of the already-read suffix; prepending a symbol composes the
// one-step relation in front.  The endpoint union is constant on profile
// cycles, and every left-infinite sequence eventually rides a cycle, so the
// realizable sets are exactly the on-cycle unions closed under forward reads.
std::set<VSet> realizable_tails(const Presentation& g, std::uint64_t budget) {
  const int nv = g.vertex_count();
  const int nl = g.label_count();
  using Profile = std::vector<VSet>;
  Profile start(nv);
  for (int v = 0; v < nv; ++v) start[v] = mask_bit(v);
  std::map<Profile, int> ids{{start, 0}};
  std::vector<Profile> profs{start};
  std::vector<std::vector<int>> adj(1);
  for (std::size_t qi = 0; qi < profs.size(); ++qi) {
    const Profile h = profs[qi];
    for (Label a = 0; a < nl; ++a) {
      Profile h2(nv, 0);
      bool nonempty = false;
      for (int v = 0; v < nv; ++v) {
        VSet s = 0;
        for (EdgeId e : g.out_edges_labeled(v, a)) s |= h[g.dst(e)];
        h2[v] = s;
        nonempty = nonempty || s != 0;
      }
      if (!nonempty) continue;
      auto [it, fresh] = ids.emplace(h2, static_cast<int>(profs.size()));
      if (fresh) {
        profs.push_back(h2);
        adj.emplace_back();
        if (profs.size() > budget)
          throw BudgetExhausted("realizable tail profiles");
      }
      adj[qi].push_back(it->second);
    }
  }
  const int n = static_cast<int>(profs.size());
  const std::vector<std::vector<int>> comps =
      strongly_connected_components(n, adj);
  std::set<VSet> real;
  for (const std::vector<int>& comp : comps) {
    const bool self_loop =
        comp.size() == 1 && std::find(adj[comp[0]].begin(), adj[comp[0]].end(),
                                      comp[0]) != adj[comp[0]].end();
    if (comp.size() <= 1 && !self_loop) continue;
    for (int hid : comp) {
      VSet F = 0;
      for (VSet s : profs[hid]) F |= s;
      if (F) real.insert(F);
    }
  }
  std::vector<VSet> queue(real.begin(), real.end());
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    const VSet F = queue[qi];
    for (Label a = 0; a < nl; ++a) {
      const VSet T = g.step(F, a);
      if (T && real.insert(T).second) queue.push_back(T);
    }
  }
  return real;
}

// Does retract-n continuing fail?  Product search over (lift candidates S,
// image liveness F): seed every vertex of every realizable tail set, read n
// window symbols keeping S alive, then fail iff some continuation keeps the
// image alive while the lift candidates die.
bool continuing_failure(const Presentation& g, const std::set<VSet>& real,
                        int n, std::uint64_t budget) {
  const int nl = g.label_count();
  std::set<std::pair<VSet, VSet>> layer;
  for (VSet F : real)
    for_each_bit(F, [&](int v) { layer.insert({mask_bit(v), F}); });
  for (int step = 0; step < n; ++step) {
    std::set<std::pair<VSet, VSet>> nxt;
    for (const auto& [S, F] : layer) {
      for (Label a = 0; a < nl; ++a) {
        const VSet S2 = g.step(S, a);
        if (S2) nxt.insert({S2, g.step(F, a)});
      }
    }
    layer = std::move(nxt);
    if (layer.size() > budget)
      throw BudgetExhausted("continuing product states");
  }
  std::set<std::pair<VSet, VSet>> seen(layer.begin(), layer.end());
  std::vector<std::pair<VSet, VSet>> queue(layer.begin(), layer.end());
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    const auto [S, F] = queue[qi];
    for (Label a = 0; a < nl; ++a) {
      const VSet S2 = g.step(S, a);
      const VSet F2 = g.step(F, a);
      if (F2 && !S2) return true;
      if (S2 && seen.insert({S2, F2}).second) {
        queue.push_back({S2, F2});
        if (seen.size() > budget)
          throw BudgetExhausted("continuing product states");
      }
    }
  }
  return false;
}

// Edge cycles of length <= maxlen rooted at each vertex, pre-order by edge
// id; includes non-simple cycles.  Rooting makes every sequence unique.
std::vector<Path> all_short_cycles(const Presentation& g, int maxlen,
                                   std::uint64_t cap) {
  std::vector<Path> out;
  for (Vertex root = 0; root < g.vertex_count(); ++root) {
    struct Frame {
      Vertex u;
      std::size_t i;
    };
    std::vector<Frame> dfs{{root, 0}};
    Path path;
    while (!dfs.empty()) {
      Frame& fr = dfs.back();
      const auto& outs = g.out_edges(fr.u);
      if (fr.i >= outs.size()) {
        dfs.pop_back();
        if (!path.empty()) path.pop_back();
        continue;
      }
      const EdgeId e = outs[fr.i];
      fr.i += 1;
      if (static_cast<int>(path.size()) + 1 > maxlen) continue;
      if (g.dst(e) == root) {
        path.push_back(e);
        out.push_back(path);
        path.pop_back();
        if (out.size() > cap) throw BudgetExhausted("cycle enumeration");
      }
      path.push_back(e);
      dfs.push_back({g.dst(e), 0});
    }
  }
  return out;
}

// Label words of cycles of length <= maxlen in the determinized image
// automaton (usable as right-infinite periodic image tails).  Sorted.
std::vector<Word> image_label_cycles(const Presentation& g, int maxlen,
                                     std::uint64_t budget) {
  const SubsetAutomaton aut = determinize(g, {g.all_vertices()}, budget);
  const int n = static_cast<int>(aut.states.size());
  const int nl = g.label_count();
  std::set<Word> res;
  for (int s = 0; s < n; ++s) {
    struct Frame {
      int u;
      Label a;
    };
    std::vector<Frame> dfs{{s, 0}};
    Word w;
    while (!dfs.empty()) {
      Frame& fr = dfs.back();
      if (fr.a >= nl) {
        dfs.pop_back();
        if (!w.empty()) w.pop_back();
        continue;
      }
      const int u = fr.u;
      const Label a = fr.a;
      fr.a += 1;
      const int t = aut.delta[u][a];
      if (t < 0) continue;
      if (static_cast<int>(w.size()) + 1 > maxlen) continue;
      if (t == s) {
        w.push_back(a);
        res.insert(w);
        w.pop_back();
      }
      w.push_back(a);
      dfs.push_back({t, 0});
    }
  }
  return std::vector<Word>(res.begin(), res.end());
}

// Exact: y agrees with the labels of x on (-inf,0] and follows (ytail)^inf
// on [1,inf).  True iff y is in the image and NO preimage of y agrees with x
// on (-inf,-m] for any m >= 0.  Lift existence is monotone in m and the
// reach set is periodic in x's left cycle, so a bounded m-scan is exact.
bool no_lift_any_m(const Presentation& g, const Lasso& x, const Word& ytail) {
  const int pL = static_cast<int>(x.left_cycle().size());
  const int pR = static_cast<int>(ytail.size());
  const auto ylab = [&](long long i) -> Label {
    return i <= 0 ? g.label(x.edge_at(i))
                  : ytail[static_cast<std::size_t>((i - 1) % pR)];
  };
  // Endpoints of left-infinite paths labeled like x's left-cycle power.
  const Word lw = g.word_of(x.left_cycle());
  VSet lreal = g.all_vertices();
  for (VSet prev = ~lreal; lreal != prev;) {
    prev = lreal;
    for (Label a : lw) lreal = g.step(lreal, a);
  }
  const VSet alive = right_alive_vertices(g, ytail)[0];
  const VSet l0 = g.step(lreal, ylab(0));
  if (!(l0 & alive)) return false;  // y is not in the image: invalid witness
  const int m_hi = (g.vertex_count() + 3) * pL;
  for (int m = 0; m <= m_hi; ++m) {
    VSet S = mask_bit(g.dst(x.edge_at(-m)));
    bool survives = true;
    for (long long i = -m + 1; i <= 0; ++i) {
      S = g.step(S, ylab(i));
      if (!S) {
        survives = false;
        break;
      }
    }
    if (survives && (S & alive)) return false;  // a lift exists at this m
  }
  return true;
}

// Search tiny lasso pairs (x from short edge cycles, y tails from short
// image-automaton label cycles) for an exactly-verified no-lift witness.
std::optional<ContinuingWitness> uniform_orbit_witness(const Presentation& g,
                                                       std::uint64_t budget) {
  constexpr int kCycleCap = 4;
  const std::vector<Path> cycles = all_short_cycles(g, kCycleCap, budget);
  const std::vector<Word> tails = image_label_cycles(g, kCycleCap + 1, budget);
  for (const Path& lc : cycles) {
    const Vertex v0 = g.src(lc[0]);
    for (const Path& rc : cycles) {
      if (g.src(rc[0]) != v0) continue;
      const Lasso x(g, lc, {}, rc);
      for (const Word& ytail : tails) {
        if (no_lift_any_m(g, x, ytail))
          return ContinuingWitness{lc, rc, ytail};
      }
    }
  }
  return std::nullopt;
}

// --------------------------------------------------------------- ctc helpers

// True iff every image word of exactly `len` has depth exactly d.
bool scan_uniform_depth(const Presentation& p, int len, int d, int threads) {
  const std::vector<Word> words = image_words(p, len);
  if (words.empty()) return false;
  const int nthreads = std::max(1, threads);
  if (nthreads == 1 || words.size() < 2 * static_cast<std::size_t>(nthreads)) {
    bool uniform = true;
    for (const Word& w : words)
      if (word_depth(p, w).value != d) uniform = false;
    return uniform;
  }
  const std::size_t chunk = (words.size() + nthreads - 1) / nthreads;
  std::vector<char> flags(nthreads, 1);
  std::vector<std::exception_ptr> errs(nthreads);
  std::vector<std::thread> pool;
  for (int t = 0; t < nthreads; ++t) {
    pool.emplace_back([&, t] {
      try {
        const std::size_t lo = t * chunk;
        const std::size_t hi = std::min(words.size(), lo + chunk);
        for (std::size_t i = lo; i < hi; ++i)
          if (word_depth(p, words[i]).value != d) flags[t] = 0;
      } catch (...) {
        errs[t] = std::current_exception();
      }
    });
  }
  for (std::thread& th : pool) th.join();
  for (std::exception_ptr& e : errs)
    if (e) std::rethrow_exception(e);
  return std::all_of(flags.begin(), flags.end(), [](char f) { return f; });
}

bool contains_subword(const Word& w, const Word& m) {
  if (m.size() > w.size()) return false;
  for (std::size_t i = 0; i + m.size() <= w.size(); ++i)
    if (std::equal(m.begin(), m.end(), w.begin() + i)) return true;
  return false;
}

}  // namespace

// ------------------------------------------------------------ image automata

SubsetAutomaton image_follower_automaton(const Presentation& p,
                                         std::uint64_t budget) {
  return determinize(p, {p.all_vertices()}, budget);
}

MinimalImageDfa minimal_image_dfa(const Presentation& p,
                                  std::uint64_t budget) {
  const SubsetAutomaton aut = image_follower_automaton(p, budget);
  const int n = static_cast<int>(aut.states.size());
  const int nl = p.label_count();
  std::vector<std::vector<int>> adj(n);
  for (int s = 0; s < n; ++s)
    for (Label a = 0; a < nl; ++a)
      if (aut.delta[s][a] >= 0) adj[s].push_back(aut.delta[s][a]);
  const std::vector<std::vector<int>> comps =
      strongly_connected_components(n, adj);
  std::vector<int> comp_of(n, -1);
  for (std::size_t i = 0; i < comps.size(); ++i)
    for (int v : comps[i]) comp_of[v] = static_cast<int>(i);
  // Sink component: terminal, smallest discovery index among terminals.
  int best = -1;
  int best_min = n;
  for (std::size_t i = 0; i < comps.size(); ++i) {
    bool terminal = true;
    for (int v : comps[i])
      for (int w : adj[v]) terminal = terminal && comp_of[w] == static_cast<int>(i);
    if (!terminal) continue;
    const int mn = *std::min_element(comps[i].begin(), comps[i].end());
    if (mn < best_min) {
      best_min = mn;
      best = static_cast<int>(i);
    }
  }
  std::vector<int> kept = comps[best];
  std::sort(kept.begin(), kept.end(), [&](int x, int y) {
    return mask_to_list(aut.states[x]) < mask_to_list(aut.states[y]);
  });
  const int k = static_cast<int>(kept.size());
  std::vector<int> pos(n, -1);
  for (int i = 0; i < k; ++i) pos[kept[i]] = i;
  std::vector<std::vector<int>> kdelta(k, std::vector<int>(nl, -1));
  for (int i = 0; i < k; ++i) {
    for (Label a = 0; a < nl; ++a) {
      const int t = aut.delta[kept[i]][a];
      if (t >= 0 && pos[t] >= 0) kdelta[i][a] = pos[t];
    }
  }
  // Moore refinement: all states start equivalent; split by (own block,
  // per-label successor block or absence) until stable.
  std::vector<int> part(k, 0);
  for (;;) {
    std::vector<std::vector<int>> sig(k);
    for (int i = 0; i < k; ++i) {
      sig[i].push_back(part[i]);
      for (Label a = 0; a < nl; ++a)
        sig[i].push_back(kdelta[i][a] >= 0 ? part[kdelta[i][a]] : -1);
    }
    std::vector<std::vector<int>> vals(sig);
    std::sort(vals.begin(), vals.end());
    vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
    std::vector<int> newpart(k);
    for (int i = 0; i < k; ++i)
      newpart[i] = static_cast<int>(
          std::lower_bound(vals.begin(), vals.end(), sig[i]) - vals.begin());
    if (newpart == part) break;
    part = newpart;
  }
  const int nb = *std::max_element(part.begin(), part.end()) + 1;
  std::vector<int> rep(nb, -1);
  for (int i = 0; i < k; ++i)
    if (rep[part[i]] < 0) rep[part[i]] = i;
  MinimalImageDfa out;
  out.block_count = nb;
  out.delta.assign(nb, std::vector<int>(nl, -1));
  for (int b = 0; b < nb; ++b) {
    for (Label a = 0; a < nl; ++a) {
      const int t = kdelta[rep[b]][a];
      if (t >= 0) out.delta[b][a] = part[t];
    }
  }
  return out;
}

// ------------------------------------------------------------- image SFT-ness

SftResult image_is_sft(const Presentation& p, std::uint64_t budget) {
  const MinimalImageDfa dfa = minimal_image_dfa(p, budget);
  const int nb = dfa.block_count;
  const int nl = p.label_count();
  SftResult res;
  if (nb <= 1) {
    res.is_sft = true;
    res.step = 0;
    return res;
  }
  if (nb > kMaxVertices) throw BudgetExhausted("image automaton blocks");
  // Distinct-state pair graph: {i,j} -a-> {delta(i,a), delta(j,a)} whenever
  // both moves are defined and land on distinct blocks.  A reachable pair
  // cycle means arbitrarily long words fail to synchronize; a DAG bounds the
  // synchronization step by the longest pair chain.
  struct PEdge {
    int to;
    Label a;
  };
  const int np = nb * nb;
  std::vector<std::vector<PEdge>> padj(np);
  std::vector<int> pair_ids;
  for (int i = 0; i < nb; ++i) {
    for (int j = i + 1; j < nb; ++j) {
      pair_ids.push_back(i * nb + j);
      for (Label a = 0; a < nl; ++a) {
        const int x = dfa.delta[i][a];
        const int y = dfa.delta[j][a];
        if (x < 0 || y < 0 || x == y) continue;
        padj[i * nb + j].push_back(
            {std::min(x, y) * nb + std::max(x, y), a});
      }
    }
  }
  const auto cycle_word = [&](int P) -> std::optional<Word> {
    std::map<int, std::pair<int, Label>> parent;  // node -> (pred or -1, label)
    std::vector<int> queue;
    for (const PEdge& e : padj[P]) {
      if (e.to == P) return Word{e.a};
      if (parent.emplace(e.to, std::make_pair(-1, e.a)).second)
        queue.push_back(e.to);
    }
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      const int u = queue[qi];
      for (const PEdge& e : padj[u]) {
        if (e.to == P) {
          Word w{e.a};
          for (int x = u; x >= 0;) {
            const std::pair<int, Label> pr = parent.at(x);
            w.push_back(pr.second);
            x = pr.first;
          }
          std::reverse(w.begin(), w.end());
          return w;
        }
        if (parent.emplace(e.to, std::make_pair(u, e.a)).second)
          queue.push_back(e.to);
      }
    }
    return std::nullopt;
  };
  std::optional<std::pair<int, Word>> cyc;
  for (int P : pair_ids) {
    if (std::optional<Word> w = cycle_word(P)) {
      cyc = {P, *w};
      break;
    }
  }
  if (!cyc) {
    std::vector<int> memo(np, -1);
    const auto longest_from = [&](int start) {
      std::vector<std::pair<int, std::size_t>> dfs{{start, 0}};
      while (!dfs.empty()) {
        const int u = dfs.back().first;
        const std::size_t ci = dfs.back().second;
        if (ci < padj[u].size()) {
          dfs.back().second = ci + 1;
          const int w = padj[u][ci].to;
          if (memo[w] < 0) dfs.emplace_back(w, 0);
          continue;
        }
        int bestlen = 0;
        for (const PEdge& e : padj[u])
          bestlen = std::max(bestlen, 1 + memo[e.to]);
        memo[u] = bestlen;
        dfs.pop_back();
      }
      return memo[start];
    };
    int longest = 0;
    for (int P : pair_ids) longest = std::max(longest, longest_from(P));
    res.is_sft = true;
    res.step = longest + 1;
    return res;
  }
  // Not SFT: assemble the (u, c, v) witness family.
  int p0 = cyc->first / nb;
  int q0 = cyc->first % nb;
  const auto run = [&](int b, const Word& w) {
    for (Label a : w) {
      if (b < 0) return -1;
      b = dfa.delta[b][a];
    }
    return b;
  };
  Word c = cyc->second;
  if (!(run(p0, c) == p0 && run(q0, c) == q0)) {
    // The cycle fixes the pair setwise; square it if it swaps the two.
    Word cc = c;
    cc.insert(cc.end(), c.begin(), c.end());
    c = std::move(cc);
  }
  if (!(run(p0, c) == p0 && run(q0, c) == q0))
    throw std::logic_error("pair cycle failed to normalize");
  // Separating word: defined from exactly one of the two blocks.
  std::optional<Word> vsep;
  {
    std::set<std::pair<int, int>> seen{{p0, q0}};
    std::vector<std::tuple<int, int, Word>> queue{{p0, q0, {}}};
    for (std::size_t qi = 0; qi < queue.size() && !vsep; ++qi) {
      const auto [x, y, w] = queue[qi];
      for (Label a = 0; a < nl; ++a) {
        const int dx = dfa.delta[x][a];
        const int dy = dfa.delta[y][a];
        if ((dx < 0) != (dy < 0)) {
          Word v2 = w;
          v2.push_back(a);
          vsep = std::move(v2);
          break;
        }
        if (dx < 0) continue;
        if (seen.insert({dx, dy}).second) {
          Word v2 = w;
          v2.push_back(a);
          queue.emplace_back(dx, dy, std::move(v2));
        }
      }
    }
  }
  if (!vsep)
    throw std::logic_error("minimal image automaton failed to separate a pair");
  if (run(p0, *vsep) < 0) std::swap(p0, q0);
  // Focusing word: drives the full block set to exactly {q0} (the block the
  // separating word is undefined from).
  const std::uint64_t full =
      nb == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << nb) - 1;
  const std::uint64_t target = std::uint64_t{1} << q0;
  std::optional<Word> ufoc;
  {
    std::set<std::uint64_t> seen{full};
    std::vector<std::pair<std::uint64_t, Word>> queue{{full, {}}};
    for (std::size_t qi = 0; qi < queue.size() && !ufoc; ++qi) {
      const auto [S, w] = queue[qi];
      if (S == target) {
        ufoc = w;
        break;
      }
      for (Label a = 0; a < nl; ++a) {
        std::uint64_t T = 0;
        for_each_bit(S, [&](int s) {
          if (dfa.delta[s][a] >= 0) T |= std::uint64_t{1} << dfa.delta[s][a];
        });
        if (T && seen.insert(T).second) {
          if (seen.size() > budget)
            throw BudgetExhausted("image focusing subsets");
          Word w2 = w;
          w2.push_back(a);
          queue.emplace_back(T, std::move(w2));
        }
      }
    }
  }
  if (!ufoc) throw std::logic_error("image cover failed to focus");
  res.is_sft = false;
  res.witness = SftWitness{*ufoc, std::move(c), *vsep};
  return res;
}

// ----------------------------------------------------------------- continuing

ContinuingResult check_continuing(const Presentation& p, Side side,
                                  int max_retract, std::uint64_t budget) {
  if (max_retract < 0) throw InputError("max retract must be nonnegative");
  std::optional<Presentation> rev;
  if (side == Side::kLeft) rev = p.reversed();
  const Presentation& g = rev ? *rev : p;
  ContinuingResult res;
  res.side = side;
  res.max_retract = max_retract;
  const std::set<VSet> real = realizable_tails(g, budget);
  for (int n = 0; n <= max_retract; ++n) {
    if (!continuing_failure(g, real, n, budget)) {
      res.continuing = true;
      res.retract = n;
      return res;
    }
  }
  try {
    if (std::optional<ContinuingWitness> wit = uniform_orbit_witness(g, budget)) {
      res.continuing = false;
      res.witness = std::move(wit);
    }
  } catch (const BudgetExhausted&) {
    // Witness search gave up: the result stays inconclusive.
  }
  return res;
}

// ---------------------------------------------------- constant-class-to-one

CtcVerdict check_constant_class_to_one(const Presentation& p, int horizon,
                                       int threads, std::uint64_t budget) {
  if (horizon < 3)
    throw InputError("constant-class-to-one scan needs horizon >= 3");
  CtcVerdict v;
  v.horizon = horizon;
  try {
    const ClassDegreeResult cd =
        class_degree(p, std::max(horizon, 8), -1, threads);
    v.d = cd.value;
    v.d_certified = cd.certified;
  } catch (const BudgetExhausted&) {
    v.d_certified = false;
  }
  // Route 1: find N with every image word of length N of depth exactly d.
  if (v.d_certified) {
    try {
      for (int n = 3; n <= horizon; ++n) {
        if (scan_uniform_depth(p, n, v.d, threads)) {
          v.stabilization_length = n;
          break;
        }
      }
    } catch (const BudgetExhausted&) {
      // Route 1 aborted; its fields stay absent.
    }
  }
  // Route 2: a non-finite-type image rules the property out; a finite-type
  // image reduces it to bi-class-closing.
  try {
    const SftResult sft = image_is_sft(p, budget);
    v.image_sft = sft.is_sft;
    v.sft_step = sft.step;
  } catch (const BudgetExhausted&) {
  }
  try {
    v.closing_right = check_class_closing(p, Side::kRight, budget).closing;
    v.closing_left = check_class_closing(p, Side::kLeft, budget).closing;
  } catch (const BudgetExhausted&) {
  }
  if (v.image_sft.has_value()) {
    if (!*v.image_sft) {
      v.route2 = false;
    } else if (v.closing_right.has_value() && v.closing_left.has_value()) {
      v.route2 = *v.closing_right && *v.closing_left;
    }
  }
  if (v.route2.has_value()) {
    v.constant = *v.route2;
    if (v.stabilization_length.has_value() && !*v.route2)
      throw std::logic_error(
          "depth stabilization contradicts the finite-type/closing route");
  } else if (v.stabilization_length.has_value()) {
    v.constant = true;
  }
  return v;
}

// --------------------------------------------------------- multiplicity shell

MultiplicityShell multiplicity_shell(const Presentation& p, Side side,
                                     int horizon, std::uint64_t budget) {
  MultiplicityShell res;
  res.side = side;
  res.horizon = horizon;
  std::optional<Presentation> rev;
  if (side == Side::kLeft) rev = p.reversed();
  const auto side_depth = [&](const Word& w) -> int {
    if (side == Side::kRight) return word_depth(p, w).value;
    const Word r(w.rbegin(), w.rend());
    return word_depth(*rev, r).value;
  };
  const ClassDegreeResult cd = class_degree(p);
  res.d = cd.value;
  res.d_certified = cd.certified;
  // Minimal words of side-depth d: drop any word containing an already-found
  // one (depth is monotone under extension, so supersets are redundant).
  const auto scan_new_minimal = [&](int length, std::vector<Word>& acc) {
    bool found = false;
    for (const Word& w : image_words(p, length)) {
      bool covered = false;
      for (const Word& m : acc) {
        if (contains_subword(w, m)) {
          covered = true;
          break;
        }
      }
      if (covered) continue;
      if (side_depth(w) == res.d) {
        acc.push_back(w);
        found = true;
      }
    }
    return found;
  };
  for (int length = 3; length <= horizon; ++length)
    scan_new_minimal(length, res.forbidden_words);
  res.horizon_limited = true;
  if (horizon + 1 >= 3) {
    try {
      std::vector<Word> probe = res.forbidden_words;
      res.horizon_limited = scan_new_minimal(horizon + 1, probe);
    } catch (const BudgetExhausted&) {
      res.horizon_limited = true;
    }
  }
  std::optional<ClosingVerdict> verdict;
  try {
    verdict = check_class_closing(p, side, budget);
  } catch (const BudgetExhausted&) {
  }
  res.side_class_closing = verdict.has_value() && verdict->closing;
  // Avoid-automaton of the image: follower subset x recent-suffix tracker,
  // rejecting any transition completing a forbidden word, trimmed to its
  // bi-essential part.
  const int nl = p.label_count();
  int maxl = 1;
  for (const Word& m : res.forbidden_words)
    maxl = std::max(maxl, static_cast<int>(m.size()));
  using ShellState = std::pair<VSet, Word>;
  struct ShellEdge {
    int from;
    Label a;
    int to;
  };
  std::map<ShellState, int> ids;
  std::vector<ShellState> states;
  std::vector<ShellEdge> edges;
  const ShellState s0{p.all_vertices(), {}};
  ids.emplace(s0, 0);
  states.push_back(s0);
  for (std::size_t qi = 0; qi < states.size(); ++qi) {
    const ShellState st = states[qi];
    for (Label a = 0; a < nl; ++a) {
      const VSet T = p.step(st.first, a);
      if (!T) continue;
      Word full = st.second;
      full.push_back(a);
      bool rejected = false;
      for (const Word& m : res.forbidden_words) {
        if (full.size() >= m.size() &&
            std::equal(m.begin(), m.end(), full.end() - m.size())) {
          rejected = true;
          break;
        }
      }
      if (rejected) continue;
      Word nsuf;
      if (maxl > 1) {
        const std::size_t keep =
            std::min(full.size(), static_cast<std::size_t>(maxl - 1));
        nsuf.assign(full.end() - keep, full.end());
      }
      const ShellState st2{T, std::move(nsuf)};
      auto [it, fresh] = ids.emplace(st2, static_cast<int>(states.size()));
      if (fresh) {
        states.push_back(st2);
        if (states.size() > budget)
          throw BudgetExhausted("shell product automaton states");
      }
      edges.push_back({static_cast<int>(qi), a, it->second});
    }
  }
  std::vector<char> alive(states.size(), 1);
  for (;;) {
    std::vector<int> outc(states.size(), 0), inc(states.size(), 0);
    for (const ShellEdge& e : edges) {
      ++outc[e.from];
      ++inc[e.to];
    }
    bool changed = false;
    for (std::size_t s = 0; s < states.size(); ++s) {
      if (alive[s] && (outc[s] == 0 || inc[s] == 0)) {
        alive[s] = 0;
        changed = true;
      }
    }
    if (!changed) break;
    std::vector<ShellEdge> keep;
    for (const ShellEdge& e : edges)
      if (alive[e.from] && alive[e.to]) keep.push_back(e);
    edges = std::move(keep);
  }
  std::vector<int> kept;
  for (std::size_t s = 0; s < states.size(); ++s)
    if (alive[s]) kept.push_back(static_cast<int>(s));
  res.shell_states = static_cast<int>(kept.size());
  res.shell_edges = static_cast<int>(edges.size());
  if (res.side_class_closing && res.shell_states > 0 &&
      res.shell_states <= kMaxVertices && res.shell_edges > 0 &&
      res.shell_edges <= kMaxEdges) {
    std::vector<int> renum(states.size(), -1);
    std::vector<std::string> names;
    for (std::size_t i = 0; i < kept.size(); ++i) {
      renum[kept[i]] = static_cast<int>(i);
      const ShellState& st = states[kept[i]];
      std::string nm = subset_state_name(p, st.first);
      if (!st.second.empty()) nm += "|" + p.format_word(st.second);
      names.push_back(std::move(nm));
    }
    std::vector<Presentation::RawEdge> raw;
    for (const ShellEdge& e : edges)
      raw.push_back({renum[e.from], renum[e.to], p.label_name(e.a), ""});
    res.shell = Presentation::build(res.shell_states, raw, false, names);
  }
  // Non-closing side: word-level sampling of the subshift description on the
  // counterexample's image point.
  if (verdict.has_value() && !verdict->closing && verdict->counterexample) {
    try {
      const ClosingCounterexample& ce = *verdict->counterexample;
      LabelLasso y;
      if (side == Side::kRight) {
        y = {p.word_of(ce.shared_cycle), p.word_of(ce.alpha_stem),
             p.word_of(ce.alpha_cycle)};
      } else {
        y = {p.word_of(ce.alpha_cycle), p.word_of(ce.alpha_stem),
             p.word_of(ce.shared_cycle)};
      }
      const ClassCountBounds bounds = class_count_bounds(p, y, side);
      if (bounds.lower > res.d) {
        Word stretch;
        const int lcl = std::max<int>(1, static_cast<int>(y.left_cycle.size()));
        const int rcl =
            std::max<int>(1, static_cast<int>(y.right_cycle.size()));
        for (int r = 0; r < horizon / lcl + 2; ++r)
          stretch.insert(stretch.end(), y.left_cycle.begin(),
                         y.left_cycle.end());
        stretch.insert(stretch.end(), y.spoke.begin(), y.spoke.end());
        for (int r = 0; r < horizon / rcl + 2; ++r)
          stretch.insert(stretch.end(), y.right_cycle.begin(),
                         y.right_cycle.end());
        bool found = false;
        for (int length = 3; length <= horizon && !found; ++length) {
          for (std::size_t i = 0;
               i + static_cast<std::size_t>(length) <= stretch.size(); ++i) {
            const Word w(stretch.begin() + i, stretch.begin() + i + length);
            if (side_depth(w) == res.d) {
              found = true;
              break;
            }
          }
        }
        // A point certified to carry more than d classes on this side must
        // avoid depth-d words if the forbidden-word description were a
        // subshift; finding one refutes it.
        res.sampling_subshift_ok = !found;
      }
    } catch (const InputError&) {
    } catch (const BudgetExhausted&) {
    }
  }
  return res;
}

// ---------------------------------------------------------- implication suite

ImplicationReport implication_suite(const Presentation& p,
                                    std::uint64_t budget) {
  ImplicationReport rep;
  // state: 0 = skipped (inconclusive premise/input), 1 = holds, 2 = violated.
  const auto record = [&rep](const std::string& name, int state,
                             const std::string& detail) {
    ImplicationOutcome o;
    o.name = name;
    o.checked = state != 0;
    o.holds = state == 1;
    o.detail = detail;
    if (state == 0)
      ++rep.skipped;
    else
      ++rep.checked;
    if (state == 2) rep.violations.push_back(name + ": " + detail);
    rep.implications.push_back(std::move(o));
  };
  std::optional<ClosingVerdict> closing_r, closing_l;
  try {
    closing_r = check_class_closing(p, Side::kRight, budget);
  } catch (const BudgetExhausted&) {
  }
  try {
    closing_l = check_class_closing(p, Side::kLeft, budget);
  } catch (const BudgetExhausted&) {
  }
  std::optional<SftResult> sft;
  try {
    sft = image_is_sft(p, budget);
  } catch (const BudgetExhausted&) {
  }
  std::optional<ContinuingResult> cont_r, cont_l;
  if (p.vertex_count() <= 4) {
    try {
      cont_r = check_continuing(p, Side::kRight, 3, budget);
    } catch (const BudgetExhausted&) {
    }
    try {
      cont_l = check_continuing(p, Side::kLeft, 3, budget);
    } catch (const BudgetExhausted&) {
    }
  }
  std::optional<CtcVerdict> ctc;
  try {
    ctc = check_constant_class_to_one(p, 6, 1, budget);
  } catch (const BudgetExhausted&) {
  }

  std::vector<Word> sample;
  bool sample_ok = true;
  try {
    for (int length = 3; length <= 4; ++length) {
      const std::vector<Word> ws = image_words(p, length, 4000);
      sample.insert(sample.end(), ws.begin(), ws.end());
    }
  } catch (const BudgetExhausted&) {
    sample_ok = false;
    sample.clear();
  }

  // 1. t-depth never exceeds depth.
  if (!sample_ok) {
    record("t-depth <= depth", 0, "word sample unavailable");
  } else {
    int compared = 0, bad = 0, dropped = 0;
    for (const Word& w : sample) {
      try {
        const int dep = word_depth(p, w).value;
        const int td = word_t_depth(p, w).value;
        ++compared;
        if (td > dep) ++bad;
      } catch (const BudgetExhausted&) {
        ++dropped;
      }
    }
    if (compared == 0)
      record("t-depth <= depth", 0, "no words within the signature cutoff");
    else
      record("t-depth <= depth", bad == 0 ? 1 : 2,
             std::to_string(compared) + " words compared, " +
                 std::to_string(bad) + " violations" +
                 (dropped ? ", " + std::to_string(dropped) + " skipped" : ""));
  }

  // 2. Depth and t-depth are monotone under one-letter extension.
  if (!sample_ok) {
    record("depth/t-depth monotone under extension", 0,
           "word sample unavailable");
  } else {
    int compared = 0, bad = 0, dropped = 0;
    for (const Word& w : sample) {
      if (w.size() != 3) continue;
      try {
        const int dep = word_depth(p, w).value;
        const int td = word_t_depth(p, w).value;
        for (Label a = 0; a < p.label_count(); ++a) {
          for (int where = 0; where < 2; ++where) {
            Word w2 = where == 0 ? w : Word{a};
            if (where == 0)
              w2.push_back(a);
            else
              w2.insert(w2.end(), w.begin(), w.end());
            if (!in_language(p, w2)) continue;
            ++compared;
            if (word_depth(p, w2).value > dep) ++bad;
            if (word_t_depth(p, w2).value > td) ++bad;
          }
        }
      } catch (const BudgetExhausted&) {
        ++dropped;
      }
    }
    if (compared == 0)
      record("depth/t-depth monotone under extension", 0,
             "no extensions within the signature cutoff");
    else
      record("depth/t-depth monotone under extension", bad == 0 ? 1 : 2,
             std::to_string(compared) + " extensions compared, " +
                 std::to_string(bad) + " violations" +
                 (dropped ? ", " + std::to_string(dropped) + " skipped" : ""));
  }

  // 3. Right resolving forces right class-closing with delay 0.
  if (!is_right_resolving(p)) {
    record("right resolving => right class-closing delay 0", 1,
           "not right resolving (vacuous)");
  } else if (!closing_r.has_value()) {
    record("right resolving => right class-closing delay 0", 0,
           "class-closing verdict unavailable");
  } else {
    const bool ok = closing_r->closing && closing_r->delay.has_value() &&
                    *closing_r->delay == 0;
    record("right resolving => right class-closing delay 0", ok ? 1 : 2,
           closing_r->closing
               ? "delay " + std::to_string(closing_r->delay.value_or(-1))
               : "not right class-closing");
  }

  // 4. Finite-to-one codes have class degree equal to the degree.
  {
    const FiniteToOneResult f2o = is_finite_to_one(p);
    if (!f2o.finite_to_one) {
      record("finite-to-one => class degree = degree", 1,
             "not finite-to-one (vacuous)");
    } else {
      try {
        const DegreeResult dg = degree_finite_to_one(p);
        const ClassDegreeResult cdeg = class_degree(p, 10);
        if (!cdeg.certified)
          record("finite-to-one => class degree = degree", 0,
                 "class degree not certified at horizon 10");
        else
          record("finite-to-one => class degree = degree",
                 dg.value == cdeg.value ? 1 : 2,
                 "degree " + std::to_string(dg.value) + ", class degree " +
                     std::to_string(cdeg.value));
      } catch (const BudgetExhausted&) {
        record("finite-to-one => class degree = degree", 0,
               "budget exhausted");
      }
    }
  }

  // 5a. Constant-class-to-one forces bi-class-closing.
  if (!ctc.has_value() || !ctc->constant.has_value()) {
    record("constant-class-to-one => bi-class-closing", 0,
           "constant-class-to-one inconclusive");
  } else if (!*ctc->constant) {
    record("constant-class-to-one => bi-class-closing", 1,
           "not constant-class-to-one (vacuous)");
  } else if (!closing_r.has_value() || !closing_l.has_value()) {
    record("constant-class-to-one => bi-class-closing", 0,
           "closing verdicts unavailable");
  } else {
    record("constant-class-to-one => bi-class-closing",
           closing_r->closing && closing_l->closing ? 1 : 2,
           std::string("right ") + (closing_r->closing ? "yes" : "no") +
               ", left " + (closing_l->closing ? "yes" : "no"));
  }

  // 5b. Constant-class-to-one forces bi-continuing.
  if (!ctc.has_value() || !ctc->constant.has_value()) {
    record("constant-class-to-one => bi-continuing", 0,
           "constant-class-to-one inconclusive");
  } else if (!*ctc->constant) {
    record("constant-class-to-one => bi-continuing", 1,
           "not constant-class-to-one (vacuous)");
  } else if (!cont_r.has_value() || !cont_r->continuing.has_value() ||
             !cont_l.has_value() || !cont_l->continuing.has_value()) {
    record("constant-class-to-one => bi-continuing", 0,
           "continuing verdicts unavailable");
  } else {
    record("constant-class-to-one => bi-continuing",
           *cont_r->continuing && *cont_l->continuing ? 1 : 2,
           std::string("right ") + (*cont_r->continuing ? "yes" : "no") +
               ", left " + (*cont_l->continuing ? "yes" : "no"));
  }

  // 6. Right class-closing plus left continuing forces constant-class-to-one.
  if (!closing_r.has_value() || !cont_l.has_value() ||
      !cont_l->continuing.has_value()) {
    record("right class-closing & left continuing => constant-class-to-one", 0,
           "premise verdicts unavailable");
  } else if (!(closing_r->closing && *cont_l->continuing)) {
    record("right class-closing & left continuing => constant-class-to-one", 1,
           "premise false (vacuous)");
  } else if (!ctc.has_value() || !ctc->constant.has_value()) {
    record("right class-closing & left continuing => constant-class-to-one", 0,
           "constant-class-to-one inconclusive");
  } else {
    record("right class-closing & left continuing => constant-class-to-one",
           *ctc->constant ? 1 : 2,
           *ctc->constant ? "constant-class-to-one"
                          : "not constant-class-to-one");
  }

  // 7. Right class-closing onto a finite-type image forces right continuing.
  if (!closing_r.has_value() || !sft.has_value()) {
    record("right class-closing & image SFT => right continuing", 0,
           "premise verdicts unavailable");
  } else if (!(closing_r->closing && sft->is_sft)) {
    record("right class-closing & image SFT => right continuing", 1,
           "premise false (vacuous)");
  } else if (!cont_r.has_value() || !cont_r->continuing.has_value()) {
    record("right class-closing & image SFT => right continuing", 0,
           "continuing verdict unavailable");
  } else {
    record("right class-closing & image SFT => right continuing",
           *cont_r->continuing ? 1 : 2,
           *cont_r->continuing ? "right continuing" : "not right continuing");
  }

  // 8. Subset covers are right resolving.
  std::optional<SubsetCover> cover;
  try {
    cover = subset_construction(p, 0, budget);
  } catch (const BudgetExhausted&) {
  }
  if (!cover.has_value()) {
    record("subset cover right resolving", 0, "cover unavailable");
  } else {
    bool structural = true;
    std::set<std::pair<int, Label>> out_labels;
    for (const CoverEdge& e : cover->edges)
      structural = structural && out_labels.insert({e.from, e.label}).second;
    const bool sink_rr = is_right_resolving(cover->sink);
    record("subset cover right resolving", structural && sink_rr ? 1 : 2,
           std::to_string(cover->states.size()) + " cover states, sink " +
               (sink_rr ? "right resolving" : "not right resolving"));
  }

  // 9. Bi-class-closing with delay D gives a sink left-closing within 2D+1.
  if (!closing_r.has_value() || !closing_l.has_value()) {
    record("bi-class-closing => sink left-closing delay <= 2D+1", 0,
           "closing verdicts unavailable");
  } else if (!(closing_r->closing && closing_l->closing)) {
    record("bi-class-closing => sink left-closing delay <= 2D+1", 1,
           "not bi-class-closing (vacuous)");
  } else {
    try {
      const std::optional<AftWitness> aft = aft_witness(p, budget);
      if (!aft.has_value())
        record("bi-class-closing => sink left-closing delay <= 2D+1", 2,
               "almost-finite-type witness missing");
      else
        record("bi-class-closing => sink left-closing delay <= 2D+1", 1,
               "sink left delay " + std::to_string(aft->sink_left_delay) +
                   " <= " + std::to_string(aft->left_delay_bound));
    } catch (const BudgetExhausted&) {
      record("bi-class-closing => sink left-closing delay <= 2D+1", 0,
             "budget exhausted");
    } catch (const std::logic_error& ex) {
      record("bi-class-closing => sink left-closing delay <= 2D+1", 2,
             ex.what());
    }
  }

  // 10. The constant-class-to-one verdict is symmetric under reversal.
  if (!ctc.has_value() || !ctc->constant.has_value()) {
    record("constant-class-to-one symmetric under reversal", 0,
           "constant-class-to-one inconclusive");
  } else {
    try {
      const CtcVerdict back =
          check_constant_class_to_one(p.reversed(), ctc->horizon, 1, budget);
      if (!back.constant.has_value())
        record("constant-class-to-one symmetric under reversal", 0,
               "reversed verdict inconclusive");
      else
        record("constant-class-to-one symmetric under reversal",
               *back.constant == *ctc->constant ? 1 : 2,
               std::string("forward ") + (*ctc->constant ? "yes" : "no") +
                   ", reversed " + (*back.constant ? "yes" : "no"));
    } catch (const BudgetExhausted&) {
      record("constant-class-to-one symmetric under reversal", 0,
             "budget exhausted");
    }
  }
  return rep;
}

}  // namespace factor
