#include "factor/subset_sink.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <stdexcept>
#include <tuple>

#include "factor/class_closing.hpp"
#include "factor/solvers.hpp"

namespace factor {
namespace {

using PairKey = std::pair<Vertex, Vertex>;

// Reachable pair-automaton cycle test, 3-color iterative DFS.
bool pair_graph_has_cycle(const std::map<PairKey, std::vector<PairKey>>& trans,
                          const std::set<PairKey>& seeds) {
  std::map<PairKey, int> color;  // absent=white, 1=gray, 2=black
  for (const PairKey& s : seeds) {
    if (color.count(s)) continue;
    std::vector<std::pair<PairKey, std::size_t>> stack{{s, 0}};
    color[s] = 1;
    while (!stack.empty()) {
      const PairKey u = stack.back().first;
      std::size_t idx = stack.back().second;
      const auto& outs = trans.at(u);
      if (idx < outs.size()) {
        stack.back().second = idx + 1;
        const PairKey w = outs[idx];
        auto it = color.find(w);
        if (it == color.end()) {
          color[w] = 1;
          stack.emplace_back(w, 0);
        } else if (it->second == 1) {
          return true;
        }
        continue;
      }
      color[u] = 2;
      stack.pop_back();
    }
  }
  return false;
}

// Longest run (transition count) from each state of a pair DAG, memoized.
int longest_run(const std::map<PairKey, std::vector<PairKey>>& trans,
                const PairKey& start, std::map<PairKey, int>& memo) {
  std::vector<std::pair<PairKey, std::size_t>> stack{{start, 0}};
  while (!stack.empty()) {
    const PairKey u = stack.back().first;
    std::size_t idx = stack.back().second;
    if (memo.count(u)) {
      stack.pop_back();
      continue;
    }
    const auto& outs = trans.at(u);
    if (idx < outs.size()) {
      stack.back().second = idx + 1;
      const PairKey w = outs[idx];
      if (!memo.count(w)) stack.emplace_back(w, 0);
      continue;
    }
    int best = 0;
    for (const PairKey& w : outs) best = std::max(best, 1 + memo.at(w));
    memo[u] = best;
    stack.pop_back();
  }
  return memo.at(start);
}

}  // namespace

std::string subset_state_name(const Presentation& base, VSet s) {
  std::string out = "{";
  bool first = true;
  for_each_bit(s, [&](int v) {
    if (!first) out += ",";
    out += base.vertex_name(v);
    first = false;
  });
  out += "}";
  return out;
}

SubsetCover subset_construction(const Presentation& p, Vertex seed,
                                std::uint64_t budget) {
  if (seed < 0 || seed >= p.vertex_count())
    throw InputError("seed vertex out of range");
  SubsetAutomaton aut = determinize(p, {mask_bit(seed)}, budget);
  const int n = static_cast<int>(aut.states.size());

  SubsetCover cov;
  cov.seed = seed;
  cov.states = aut.states;
  std::vector<std::vector<int>> adj(n);
  for (int s = 0; s < n; ++s) {
    for (Label a = 0; a < p.label_count(); ++a) {
      const int t = aut.delta[s][a];
      if (t < 0) continue;
      cov.edges.push_back(CoverEdge{s, a, t});
      adj[s].push_back(t);
    }
  }

  // Sink: the terminal SCC (all outgoing edges internal) discovered first.
  std::vector<std::vector<int>> comps = strongly_connected_components(n, adj);
  std::vector<int> comp_of(n, -1);
  for (std::size_t c = 0; c < comps.size(); ++c)
    for (int s : comps[c]) comp_of[s] = static_cast<int>(c);
  std::vector<char> terminal(comps.size(), 1);
  for (const CoverEdge& e : cov.edges)
    if (comp_of[e.from] != comp_of[e.to]) terminal[comp_of[e.from]] = 0;
  int best = -1, best_min = n;
  for (std::size_t c = 0; c < comps.size(); ++c) {
    if (!terminal[c]) continue;
    const int mn = *std::min_element(comps[c].begin(), comps[c].end());
    if (mn < best_min) {
      best_min = mn;
      best = static_cast<int>(c);
    }
  }
  // Every finite digraph has a terminal SCC, so `best` is always set.
  cov.sink_vertices = comps[best];
  std::sort(cov.sink_vertices.begin(), cov.sink_vertices.end());

  // Sink presentation: vertices ordered by their member lists, edges kept in
  // discovery order and renamed s0, s1, ...
  std::vector<int> order = cov.sink_vertices;
  std::sort(order.begin(), order.end(), [&](int x, int y) {
    return mask_to_list(cov.states[x]) < mask_to_list(cov.states[y]);
  });
  std::vector<int> pos(n, -1);
  for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = static_cast<int>(i);
  std::vector<std::string> names;
  for (int s : order) {
    names.push_back(subset_state_name(p, cov.states[s]));
    cov.sink_sets.push_back(cov.states[s]);
  }
  std::vector<Presentation::RawEdge> kept;
  for (const CoverEdge& e : cov.edges) {
    if (pos[e.from] < 0 || pos[e.to] < 0) continue;
    kept.push_back(Presentation::RawEdge{pos[e.from], pos[e.to],
                                         p.label_name(e.label),
                                         "s" + std::to_string(kept.size())});
  }
  if (order.size() > static_cast<std::size_t>(kMaxVertices) ||
      kept.size() > static_cast<std::size_t>(kMaxEdges))
    throw BudgetExhausted("sink exceeds the 64-vertex/64-edge representation");
  cov.sink = Presentation::build(static_cast<int>(order.size()), kept,
                                 /*require_irreducible=*/true, names);
  return cov;
}

ClosingDelay right_closing_delay(const Presentation& p, std::uint64_t budget) {
  std::set<PairKey> seeds;
  for (Vertex v = 0; v < p.vertex_count(); ++v) {
    for (Label a = 0; a < p.label_count(); ++a) {
      const auto& es = p.out_edges_labeled(v, a);
      for (std::size_t i = 0; i < es.size(); ++i)
        for (std::size_t j = i + 1; j < es.size(); ++j)
          seeds.insert({p.dst(es[i]), p.dst(es[j])});
    }
  }
  if (seeds.empty()) return {true, 0};

  std::map<PairKey, std::vector<PairKey>> trans;
  std::deque<PairKey> queue(seeds.begin(), seeds.end());
  std::set<PairKey> seen(seeds.begin(), seeds.end());
  while (!queue.empty()) {
    const PairKey k = queue.front();
    queue.pop_front();
    std::vector<PairKey>& outs = trans[k];
    for (Label a = 0; a < p.label_count(); ++a) {
      for (EdgeId e : p.out_edges_labeled(k.first, a)) {
        for (EdgeId f : p.out_edges_labeled(k.second, a)) {
          const PairKey k2{p.dst(e), p.dst(f)};
          outs.push_back(k2);
          if (seen.insert(k2).second) {
            if (seen.size() > budget)
              throw BudgetExhausted("closing-delay pair automaton states");
            queue.push_back(k2);
          }
        }
      }
    }
  }

  if (pair_graph_has_cycle(trans, seeds)) return {false, std::nullopt};
  std::map<PairKey, int> memo;
  int best = 0;
  for (const PairKey& s : seeds) best = std::max(best, longest_run(trans, s, memo));
  return {true, 1 + best};
}

ClosingDelay left_closing_delay(const Presentation& p, std::uint64_t budget) {
  return right_closing_delay(p.reversed(), budget);
}

std::optional<DelayViolation> verify_left_closing_delay(const Presentation& p,
                                                        int k) {
  if (k < 0) throw InputError("closing delay must be nonnegative");
  const Presentation rev = p.reversed();
  struct Arrival {
    PairKey parent;  // state in the previous layer ({-1,-1} at layer 0)
    EdgeId ea, eb;   // reversed-orientation edges taken into this state
  };
  // layers[i]: pair states after i+1 reversed transitions, i.e. same-label
  // reversed path pairs of length i+1 with distinct first edges.
  std::vector<std::map<PairKey, Arrival>> layers(1);
  for (Vertex v = 0; v < rev.vertex_count(); ++v) {
    for (Label a = 0; a < rev.label_count(); ++a) {
      const auto& es = rev.out_edges_labeled(v, a);
      for (std::size_t i = 0; i < es.size(); ++i)
        for (std::size_t j = i + 1; j < es.size(); ++j)
          layers[0].emplace(PairKey{rev.dst(es[i]), rev.dst(es[j])},
                            Arrival{{-1, -1}, es[i], es[j]});
    }
  }
  for (int step = 1; step <= k && !layers.back().empty(); ++step) {
    layers.emplace_back();
    const auto& prev = layers[step - 1];
    auto& next = layers[step];
    for (const auto& [st, arr] : prev) {
      (void)arr;
      for (Label a = 0; a < rev.label_count(); ++a)
        for (EdgeId e : rev.out_edges_labeled(st.first, a))
          for (EdgeId f : rev.out_edges_labeled(st.second, a))
            next.emplace(PairKey{rev.dst(e), rev.dst(f)}, Arrival{st, e, f});
    }
  }
  if (static_cast<int>(layers.size()) <= k || layers[k].empty())
    return std::nullopt;  // no violating pair of length k+1

  // Unwind the first (k+1)-step pair and return it in original orientation.
  Path ra, rb;  // reversed-orientation sequences, last step first
  PairKey cur = layers[k].begin()->first;
  for (int step = k; step >= 0; --step) {
    const Arrival& arr = layers[step].at(cur);
    ra.push_back(arr.ea);
    rb.push_back(arr.eb);
    cur = arr.parent;
  }
  // ra currently runs from the deepest transition back to the seed; in the
  // original orientation that is already first-to-last edge order.
  return DelayViolation{ra, rb};
}

std::optional<AftWitness> aft_witness(const Presentation& p,
                                      std::uint64_t budget) {
  const ClosingVerdict right = check_class_closing(p, Side::kRight, budget);
  if (!right.closing) return std::nullopt;
  const ClosingVerdict left = check_class_closing(p, Side::kLeft, budget);
  if (!left.closing) return std::nullopt;

  AftWitness w;
  w.code_delay_right = *right.delay;
  w.code_delay_left = *left.delay;
  const int d = std::max(w.code_delay_right, w.code_delay_left);
  w.left_delay_bound = 2 * d + 1;
  w.cover = subset_construction(p, 0, budget);

  if (!is_right_resolving(w.cover.sink))
    throw std::logic_error("subset cover sink is not right resolving");
  if (verify_left_closing_delay(w.cover.sink, w.left_delay_bound))
    throw std::logic_error("sink violates the proven left-closing delay bound");
  const ClosingDelay sr = right_closing_delay(w.cover.sink, budget);
  const ClosingDelay sl = left_closing_delay(w.cover.sink, budget);
  if (!sr.closing || !sl.closing)
    throw std::logic_error("sink delays missing despite the verified bound");
  w.sink_right_delay = *sr.delay;
  w.sink_left_delay = *sl.delay;
  return w;
}

bool sampled_language_equal(const Presentation& a, const Presentation& b,
                            int max_len) {
  for (int len = 1; len <= max_len; ++len) {
    auto collect = [len](const Presentation& g) {
      std::set<std::vector<std::string>> words;
      for (const Word& w : image_words(g, len)) {
        std::vector<std::string> named;
        for (Label x : w) named.push_back(g.label_name(x));
        words.insert(std::move(named));
      }
      return words;
    };
    if (collect(a) != collect(b)) return false;
  }
  return true;
}

}  // namespace factor
