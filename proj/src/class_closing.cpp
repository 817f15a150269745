#include "factor/class_closing.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <tuple>

#include "factor/bridges.hpp"
#include "factor/class_degree.hpp"

namespace factor {

namespace {

// BFS for the shortest cycle through v (smallest edge ids explored first);
// the graph is strongly connected so one always exists.
Path shortest_cycle_through(const Presentation& p, Vertex v) {
  std::vector<Vertex> parent_vertex(p.vertex_count(), -2);
  std::vector<EdgeId> parent_edge(p.vertex_count(), -1);
  parent_vertex[v] = -1;
  std::deque<Vertex> q{v};
  while (!q.empty()) {
    Vertex u = q.front();
    q.pop_front();
    for (EdgeId e : p.out_edges(u)) {
      Vertex t = p.dst(e);
      if (t == v) {
        Path cyc{e};
        Vertex x = u;
        while (parent_vertex[x] != -1) {
          cyc.push_back(parent_edge[x]);
          x = parent_vertex[x];
        }
        std::reverse(cyc.begin(), cyc.end());
        return cyc;
      }
      if (parent_vertex[t] == -2) {
        parent_vertex[t] = u;
        parent_edge[t] = e;
        q.push_back(t);
      }
    }
  }
  throw InputError("no cycle through vertex in an irreducible graph");
}

struct Product {
  std::vector<PairState> seeds;
  std::map<PairState, std::vector<PairState>> trans;
  std::uint64_t states = 0;
};

const std::vector<PairState> kNoSuccessors;

const std::vector<PairState>& successors(const Product& pr,
                                         const PairState& st) {
  auto it = pr.trans.find(st);
  return it == pr.trans.end() ? kNoSuccessors : it->second;
}

// The product automaton restricted to BAD pair states (tangled pairs can
// never return: bridges both ways persist under same-label extension).
Product explore_bad_pairs(const Presentation& p, std::uint64_t budget) {
  Product pr;
  for (Vertex v = 0; v < p.vertex_count(); ++v) {
    for (Label a = 0; a < p.label_count(); ++a) {
      const auto& es = p.out_edges_labeled(v, a);
      for (std::size_t i = 0; i < es.size(); ++i)
        for (std::size_t j = i + 1; j < es.size(); ++j)
          pr.seeds.push_back(
              PairState{es[i], es[j], mask_bit(es[i]), mask_bit(es[j])});
    }
  }
  std::set<PairState> seen(pr.seeds.begin(), pr.seeds.end());
  std::deque<PairState> q(pr.seeds.begin(), pr.seeds.end());
  auto reach_step = [&](ESet R, Label b) {
    ESet out = 0;
    for_each_bit(R, [&](int y) {
      for (EdgeId x : p.out_edges_labeled(p.dst(y), b)) out |= mask_bit(x);
    });
    return out;
  };
  while (!q.empty()) {
    PairState st = q.front();
    q.pop_front();
    auto& outs = pr.trans[st];
    for (Label b = 0; b < p.label_count(); ++b) {
      ESet A2 = reach_step(st.alpha_reach, b);
      ESet B2 = reach_step(st.beta_reach, b);
      if (!A2 || !B2) continue;
      for (EdgeId e2 : p.out_edges_labeled(p.dst(st.alpha_edge), b)) {
        for (EdgeId f2 : p.out_edges_labeled(p.dst(st.beta_edge), b)) {
          PairState st2{e2, f2, A2, B2};
          if (!st2.bad()) continue;
          outs.push_back(st2);
          if (seen.insert(st2).second) {
            q.push_back(st2);
            if (seen.size() > budget)
              throw BudgetExhausted("pair product automaton states");
          }
        }
      }
    }
  }
  pr.states = seen.size();
  return pr;
}

// Iterative 3-color cycle detection over the BAD product graph.
bool has_bad_cycle(const Product& pr) {
  std::map<PairState, int> color;
  for (const PairState& s : pr.seeds) {
    if (color[s] != 0) continue;
    std::vector<std::pair<PairState, std::size_t>> stack{{s, 0}};
    color[s] = 1;
    while (!stack.empty()) {
      const PairState u = stack.back().first;
      std::size_t& idx = stack.back().second;
      const auto& outs = successors(pr, u);
      if (idx < outs.size()) {
        const PairState& v = outs[idx++];
        int& c = color[v];
        if (c == 1) return true;
        if (c == 0) {
          c = 1;
          stack.push_back({v, 0});
        }
      } else {
        color[u] = 2;
        stack.pop_back();
      }
    }
  }
  return false;
}

// Longest chain of transitions over the acyclic BAD graph (iterative,
// memoized).  A run of n transitions is a path pair of length n+1.
int longest_bad_run(const Product& pr) {
  std::map<PairState, int> memo;
  int best_all = 0;
  for (const PairState& s : pr.seeds) {
    std::vector<std::pair<PairState, std::size_t>> stack{{s, 0}};
    while (!stack.empty()) {
      const PairState u = stack.back().first;
      std::size_t& idx = stack.back().second;
      if (memo.count(u)) {
        stack.pop_back();
        continue;
      }
      const auto& outs = successors(pr, u);
      bool descended = false;
      while (idx < outs.size()) {
        const PairState& v = outs[idx++];
        if (!memo.count(v)) {
          stack.push_back({v, 0});
          descended = true;
          break;
        }
      }
      if (descended) continue;
      int best = 0;
      for (const PairState& v : outs) best = std::max(best, 1 + memo.at(v));
      memo[u] = best;
      stack.pop_back();
    }
    best_all = std::max(best_all, memo.at(s));
  }
  return best_all;
}

// Shortest stem from a seed, then the shortest product cycle; ties break by
// (stem length, cycle length, state order).
ClosingCounterexample extract_counterexample(const Presentation& p,
                                             const Product& pr) {
  std::map<PairState, int> dist;
  std::map<PairState, PairState> par;
  std::deque<PairState> q;
  std::vector<PairState> sorted_seeds = pr.seeds;
  std::sort(sorted_seeds.begin(), sorted_seeds.end());
  for (const PairState& s : sorted_seeds) {
    if (!dist.count(s)) {
      dist[s] = 0;
      q.push_back(s);
    }
  }
  while (!q.empty()) {
    PairState u = q.front();
    q.pop_front();
    std::vector<PairState> outs = successors(pr, u);
    std::sort(outs.begin(), outs.end());
    for (const PairState& v : outs) {
      if (!dist.count(v)) {
        dist[v] = dist.at(u) + 1;
        par.emplace(v, u);
        q.push_back(v);
      }
    }
  }
  std::vector<PairState> by_key;
  by_key.reserve(dist.size());
  for (const auto& [st, d] : dist) by_key.push_back(st);
  std::sort(by_key.begin(), by_key.end(), [&](const auto& a, const auto& b) {
    if (dist.at(a) != dist.at(b)) return dist.at(a) < dist.at(b);
    return a < b;
  });

  struct Best {
    int dist = 0, clen = 0;
    PairState state;
    std::vector<PairState> stem, cyc;
  };
  std::optional<Best> best;
  for (const PairState& u : by_key) {
    // shortest product cycle through u, restricted to BAD states
    std::map<PairState, int> d2;
    std::map<PairState, PairState> p2;
    d2[u] = 0;
    std::deque<PairState> qq{u};
    int clen = -1;
    PairState cyc_last;
    while (!qq.empty() && clen < 0) {
      PairState x = qq.front();
      qq.pop_front();
      std::vector<PairState> outs = successors(pr, x);
      std::sort(outs.begin(), outs.end());
      for (const PairState& y : outs) {
        if (y == u) {
          clen = d2.at(x) + 1;
          cyc_last = x;
          break;
        }
        if (!d2.count(y)) {
          d2[y] = d2.at(x) + 1;
          p2.emplace(y, x);
          qq.push_back(y);
        }
      }
    }
    if (clen < 0) continue;
    if (best && std::tie(best->dist, best->clen, best->state) <=
                    std::tie(dist.at(u), clen, u))
      continue;
    Best b;
    b.dist = dist.at(u);
    b.clen = clen;
    b.state = u;
    PairState x = u;
    b.stem.push_back(x);
    while (par.count(x)) {
      x = par.at(x);
      b.stem.push_back(x);
    }
    std::reverse(b.stem.begin(), b.stem.end());
    x = cyc_last;
    b.cyc.push_back(x);
    while (p2.count(x)) {
      x = p2.at(x);
      b.cyc.push_back(x);
    }
    std::reverse(b.cyc.begin(), b.cyc.end());  // u .. cyc_last
    best = std::move(b);
  }
  const Best& b = *best;  // a product cycle exists by precondition

  ClosingCounterexample ce;
  ce.side = Side::kRight;
  for (const PairState& st : b.stem) {
    ce.alpha_stem.push_back(st.alpha_edge);
    ce.beta_stem.push_back(st.beta_edge);
  }
  for (std::size_t i = 1; i < b.cyc.size(); ++i) {
    ce.alpha_cycle.push_back(b.cyc[i].alpha_edge);
    ce.beta_cycle.push_back(b.cyc[i].beta_edge);
  }
  ce.alpha_cycle.push_back(b.state.alpha_edge);
  ce.beta_cycle.push_back(b.state.beta_edge);
  ce.branch_vertex = p.src(b.stem.front().alpha_edge);
  ce.shared_cycle = shortest_cycle_through(p, ce.branch_vertex);
  return ce;
}

// Map a counterexample computed on the reversed graph back to the original
// orientation: every component path reverses; the point constructors order
// the components by side.
ClosingCounterexample unreverse(const ClosingCounterexample& ce) {
  auto rev = [](const Path& path) { return Path(path.rbegin(), path.rend()); };
  ClosingCounterexample out;
  out.side = Side::kLeft;
  out.branch_vertex = ce.branch_vertex;
  out.shared_cycle = rev(ce.shared_cycle);
  out.alpha_stem = rev(ce.alpha_stem);
  out.alpha_cycle = rev(ce.alpha_cycle);
  out.beta_stem = rev(ce.beta_stem);
  out.beta_cycle = rev(ce.beta_cycle);
  return out;
}

}  // namespace

Lasso ClosingCounterexample::alpha_point(const Presentation& p) const {
  if (side == Side::kRight)
    return Lasso(p, shared_cycle, alpha_stem, alpha_cycle);
  return Lasso(p, alpha_cycle, alpha_stem, shared_cycle);
}

Lasso ClosingCounterexample::beta_point(const Presentation& p) const {
  if (side == Side::kRight)
    return Lasso(p, shared_cycle, beta_stem, beta_cycle);
  return Lasso(p, beta_cycle, beta_stem, shared_cycle);
}

ClosingVerdict check_class_closing(const Presentation& p, Side side,
                                   std::uint64_t budget) {
  std::optional<Presentation> rev;
  if (side == Side::kLeft) rev = p.reversed();
  const Presentation& g = rev ? *rev : p;

  ClosingVerdict v;
  v.side = side;
  Product pr = explore_bad_pairs(g, budget);
  v.states_explored = pr.states;
  if (pr.seeds.empty()) {
    v.closing = true;  // no same-label branching at all: resolving
    v.delay = 0;
    return v;
  }
  if (!has_bad_cycle(pr)) {
    v.closing = true;
    v.delay = longest_bad_run(pr) + 1;
    return v;
  }
  v.closing = false;
  ClosingCounterexample ce = extract_counterexample(g, pr);
  v.counterexample = side == Side::kRight ? ce : unreverse(ce);
  return v;
}

// ----------------------------------------------- finite pair-path conditions

namespace {

// Walk state rooted at a vertex family: for each surviving first edge, the
// set of possible current last edges of equally-labeled paths.  Every pair
// of same-label paths of the walked length is tangled iff all reach sets
// coincide.
using CondState = std::vector<std::pair<EdgeId, ESet>>;

struct CondParent {
  CondState state;
  Label via = -1;
};

std::optional<ConditionWitness> condition_check_from(const Presentation& p,
                                                     VSet root, int D,
                                                     std::uint64_t budget) {
  std::map<Label, std::vector<EdgeId>> init;
  for_each_bit(root, [&](int v) {
    for (EdgeId e : p.out_edges(v)) init[p.label(e)].push_back(e);
  });
  std::uint64_t touched = 0;
  for (const auto& [a, edges] : init) {
    CondState st0;
    for (EdgeId e : edges) st0.emplace_back(e, mask_bit(e));
    std::sort(st0.begin(), st0.end());
    // level-by-level map exploration, parents kept for word reconstruction
    std::vector<std::map<CondState, CondParent>> levels(1);
    levels[0].emplace(st0, CondParent{});
    bool emptied = false;
    for (int step = 0; step < D && !emptied; ++step) {
      levels.emplace_back();
      auto& nxt = levels[step + 1];
      for (const auto& [st, par] : levels[step]) {
        for (Label b = 0; b < p.label_count(); ++b) {
          CondState items;
          for (const auto& [e, R] : st) {
            ESet R2 = 0;
            for_each_bit(R, [&](int x) {
              for (EdgeId f : p.out_edges_labeled(p.dst(x), b))
                R2 |= mask_bit(f);
            });
            if (R2) items.emplace_back(e, R2);
          }
          if (items.empty()) continue;
          if (nxt.emplace(std::move(items), CondParent{st, b}).second &&
              ++touched > budget)
            throw BudgetExhausted("condition-walk states");
        }
      }
      emptied = nxt.empty();
    }
    if (emptied) continue;
    for (const auto& [st, par] : levels[D]) {
      // find the first pair of first-edges with different reach sets
      int bad_i = -1, bad_j = -1;
      for (std::size_t i = 0; i < st.size() && bad_i < 0; ++i)
        for (std::size_t j = i + 1; j < st.size(); ++j)
          if (st[i].second != st[j].second) {
            bad_i = static_cast<int>(i);
            bad_j = static_cast<int>(j);
            break;
          }
      if (bad_i < 0) continue;
      // reconstruct the word, then two concrete non-tangled paths
      ConditionWitness wit;
      wit.root = root;
      Word tail;
      const CondState* cur = &st;
      for (int k = D; k >= 1; --k) {
        const CondParent& cp = levels[k].at(*cur);
        tail.push_back(cp.via);
        cur = &levels[k - 1].find(cp.state)->first;
      }
      wit.word.push_back(a);
      wit.word.insert(wit.word.end(), tail.rbegin(), tail.rend());
      const auto& [e, Re] = st[bad_i];
      const auto& [f, Rf] = st[bad_j];
      EdgeId l = mask_first(Re ^ Rf);
      if (mask_has(Re, l)) {
        wit.path_a = path_first_last(p, e, wit.word, l).value();
        wit.path_b = path_first_last(p, f, wit.word, mask_first(Rf)).value();
      } else {
        wit.path_a = path_first_last(p, e, wit.word, mask_first(Re)).value();
        wit.path_b = path_first_last(p, f, wit.word, l).value();
      }
      return wit;
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<ConditionWitness> verify_condition4(const Presentation& p, int D,
                                                  std::uint64_t budget) {
  if (D < 0) throw InputError("condition check needs D >= 0");
  for (Vertex v = 0; v < p.vertex_count(); ++v) {
    auto w = condition_check_from(p, mask_bit(v), D, budget);
    if (w) return w;
  }
  return std::nullopt;
}

std::optional<ConditionWitness> verify_condition5(const Presentation& p, int D,
                                                  std::uint64_t budget) {
  if (D < 0) throw InputError("condition check needs D >= 0");
  std::vector<VSet> roots = accessible_sets(p);
  std::sort(roots.begin(), roots.end(), [](VSet a, VSet b) {
    return mask_to_list(a) < mask_to_list(b);
  });
  for (VSet S : roots) {
    auto w = condition_check_from(p, S, D, budget);
    if (w) return w;
  }
  return std::nullopt;
}

SeparationReport separation_check(const Presentation& p,
                                  const ClosingVerdict& verdict,
                                  const std::vector<LabelLasso>& samples) {
  if (!verdict.closing || verdict.side != Side::kRight)
    throw InputError("separation check requires a right-closing verdict");
  SeparationReport rep;
  for (const LabelLasso& y : samples) {
    rep.lassos_checked++;
    ClassCountBounds b = class_count_bounds(p, y, Side::kRight);
    const auto& fam = b.certified_family;
    for (std::size_t i = 0; i < fam.size(); ++i) {
      for (std::size_t j = i + 1; j < fam.size(); ++j) {
        rep.certified_pairs++;
        const Lasso &x1 = fam[i], &x2 = fam[j];
        // both points are periodic outside the spokes, so one common period
        // beyond each spoke bounds the coordinates to compare
        long long span_r =
            static_cast<long long>(
                std::max(x1.spoke().size(), x2.spoke().size())) +
            std::lcm(static_cast<long long>(x1.right_cycle().size()),
                     static_cast<long long>(x2.right_cycle().size()));
        long long span_l =
            std::lcm(static_cast<long long>(x1.left_cycle().size()),
                     static_cast<long long>(x2.left_cycle().size()));
        for (long long t = -span_l; t < span_r; ++t) {
          if (x1.edge_at(t) == x2.edge_at(t)) {
            rep.separated = false;
            return rep;
          }
        }
      }
    }
  }
  return rep;
}

}  // namespace factor
