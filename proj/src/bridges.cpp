#include "factor/bridges.hpp"

#include <algorithm>
#include <set>

#include "factor/solvers.hpp"

namespace factor {

namespace {

void check_word(const Presentation& p, const Word& w) {
  if (w.empty()) throw InputError("word must be nonempty");
  for (Label a : w)
    if (a < 0 || a >= p.label_count())
      throw InputError("word uses a label not in the presentation");
}

void check_path_pair(const Presentation& p, const Path& u, const Path& w) {
  if (!p.is_path(u) || !p.is_path(w))
    throw InputError("argument is not a path of the presentation");
  if (u.size() != w.size()) throw InputError("paths have different lengths");
  if (p.word_of(u) != p.word_of(w))
    throw InputError("paths carry different label words");
}

}  // namespace

std::optional<std::vector<ESet>> forward_layers(const Presentation& p,
                                                EdgeId first, const Word& w) {
  check_word(p, w);
  if (p.label(first) != w[0]) return std::nullopt;
  int l = static_cast<int>(w.size());
  std::vector<ESet> layers(l + 1, 0);
  layers[1] = mask_bit(first);
  for (int i = 2; i <= l; ++i) {
    ESet nxt = 0;
    for_each_bit(layers[i - 1], [&](int e) {
      for (EdgeId f : p.out_edges_labeled(p.dst(e), w[i - 1]))
        nxt |= mask_bit(f);
    });
    if (!nxt) return std::nullopt;
    layers[i] = nxt;
  }
  return layers;
}

std::optional<std::vector<ESet>> backward_layers(const Presentation& p,
                                                 EdgeId last, const Word& w) {
  check_word(p, w);
  int l = static_cast<int>(w.size());
  if (p.label(last) != w[l - 1]) return std::nullopt;
  std::vector<ESet> layers(l + 1, 0);
  layers[l] = mask_bit(last);
  for (int i = l - 1; i >= 1; --i) {
    ESet cur = 0;
    for_each_bit(layers[i + 1], [&](int e) {
      for (EdgeId f : p.in_edges_labeled(p.src(e), w[i - 1]))
        cur |= mask_bit(f);
    });
    if (!cur) return std::nullopt;
    layers[i] = cur;
  }
  return layers;
}

ESet reach_last_edges(const Presentation& p, EdgeId first, const Word& w) {
  auto L = forward_layers(p, first, w);
  return L ? (*L)[w.size()] : 0;
}

namespace {

// Concrete path prefix (positions 1..at) within the given forward layers,
// with `target` as the edge at position `at`: backtrack choosing the
// smallest feasible edge at each earlier position.
Path realize_from_forward(const Presentation& p, const std::vector<ESet>& F,
                          EdgeId target, int at) {
  Path out(at);
  out[at - 1] = target;
  for (int i = at - 1; i >= 1; --i) {
    int pick = -1;
    for_each_bit(F[i], [&](int e) {
      if (pick < 0 && p.dst(e) == p.src(out[i])) pick = e;
    });
    out[i - 1] = pick;
  }
  return out;
}

// Extend a realized prefix forward through backward layers: every edge in
// B[i] has a successor in B[i+1], and B[l] is the singleton last edge.
void extend_through_backward(const Presentation& p, const std::vector<ESet>& B,
                             int n, Path& path) {
  int l = static_cast<int>(B.size()) - 1;
  for (int i = n + 1; i <= l; ++i) {
    int pick = -1;
    for_each_bit(B[i], [&](int e) {
      if (pick < 0 && p.src(e) == p.dst(path[i - 2])) pick = e;
    });
    path.push_back(pick);
  }
}

}  // namespace

std::optional<Path> path_first_last(const Presentation& p, EdgeId first,
                                    const Word& w, EdgeId last) {
  auto F = forward_layers(p, first, w);
  if (!F || !mask_has((*F)[w.size()], last)) return std::nullopt;
  return realize_from_forward(p, *F, last, static_cast<int>(w.size()));
}

std::optional<Path> bridge(const Presentation& p, const Path& u, const Path& w) {
  check_path_pair(p, u, w);
  Word word = p.word_of(u);
  auto F = forward_layers(p, u.front(), word);
  if (!F || !mask_has((*F)[word.size()], w.back())) return std::nullopt;
  return realize_from_forward(p, *F, w.back(), static_cast<int>(word.size()));
}

bool bridge_exists(const Presentation& p, const Path& u, const Path& w) {
  check_path_pair(p, u, w);
  return mask_has(reach_last_edges(p, u.front(), p.word_of(u)), w.back());
}

std::optional<TwoWayBridge> two_way_bridge(const Presentation& p, const Path& u,
                                           const Path& w) {
  auto fwd = bridge(p, u, w);
  if (!fwd) return std::nullopt;
  auto bwd = bridge(p, w, u);
  if (!bwd) return std::nullopt;
  return TwoWayBridge{std::move(*fwd), std::move(*bwd)};
}

bool two_way_bridge_exists(const Presentation& p, const Path& u, const Path& w) {
  return bridge_exists(p, u, w) && bridge_exists(p, w, u);
}

ESet routing_set(const Presentation& p, const Path& u, int n) {
  if (!p.is_path(u)) throw InputError("argument is not a path of the presentation");
  int l = static_cast<int>(u.size());
  if (n <= 1 || n >= l)
    throw InputError("routing position must be interior (1 < n < path length)");
  Word word = p.word_of(u);
  auto F = forward_layers(p, u.front(), word);
  auto B = backward_layers(p, u.back(), word);
  if (!F || !B) return 0;
  return (*F)[n] & (*B)[n];
}

SignatureTables word_signatures(const Presentation& p, const Word& w) {
  check_word(p, w);
  SignatureTables t;
  for (EdgeId e : p.edges_labeled(w[0])) {
    auto L = forward_layers(p, e, w);
    if (L) t.fwd.emplace(e, std::move(*L));
  }
  for (EdgeId e : p.edges_labeled(w[w.size() - 1])) {
    auto L = backward_layers(p, e, w);
    if (L) t.bwd.emplace(e, std::move(*L));
  }
  for (const auto& [f, FL] : t.fwd)
    for_each_bit(FL[w.size()], [&](int last) {
      t.sigs.push_back(Signature{f, last});
    });
  return t;
}

namespace {

void require_in_language(const Presentation& p, const Word& w) {
  if (!in_language(p, w)) {
    throw InputError("word \"" + p.format_word(w) +
                     "\" is not in the image language");
  }
}

void check_cutoff(const SignatureTables& t, int cutoff) {
  int n = static_cast<int>(t.sigs.size());
  if (n > cutoff || n > 64) {
    throw BudgetExhausted(
        "word has " + std::to_string(n) +
        " preimage signatures, above the exact-solver cutoff of " +
        std::to_string(std::min(cutoff, 64)) + "; refusing to approximate");
  }
}

}  // namespace

DepthResult word_depth(const Presentation& p, const Word& w,
                       int signature_cutoff) {
  check_word(p, w);
  require_in_language(p, w);
  DepthResult res;
  int l = static_cast<int>(w.size());
  if (l <= 2) return res;  // no interior position: infinite marker

  SignatureTables t = word_signatures(p, w);
  check_cutoff(t, signature_cutoff);

  int best_v = kDepthInfinite, best_n = -1;
  ESet best_set = 0;
  for (int n = 2; n <= l - 1; ++n) {
    std::vector<ESet> sets;
    sets.reserve(t.sigs.size());
    for (const Signature& s : t.sigs)
      sets.push_back(t.fwd.at(s.first)[n] & t.bwd.at(s.last)[n]);
    std::sort(sets.begin(), sets.end());
    sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
    auto [v, hs] = min_hitting_set(sets);
    if (v >= 0 && v < best_v) {
      best_v = v;
      best_n = n;
      best_set = hs;
    }
  }

  res.value = best_v;
  DepthCertificate cert;
  cert.word = w;
  cert.position = best_n;
  cert.routing_set = best_set;
  for (const Signature& s : t.sigs) {
    const auto& F = t.fwd.at(s.first);
    const auto& B = t.bwd.at(s.last);
    ESet options = F[best_n] & B[best_n] & best_set;
    EdgeId via = mask_first(options);
    Path witness = realize_from_forward(p, F, via, best_n);
    extend_through_backward(p, B, best_n, witness);
    cert.witnesses.emplace_back(s, std::move(witness));
  }
  res.certificate = std::move(cert);
  return res;
}

TangledPartitionResult word_t_depth(const Presentation& p, const Word& w,
                                    int signature_cutoff) {
  check_word(p, w);
  require_in_language(p, w);
  SignatureTables t = word_signatures(p, w);
  check_cutoff(t, signature_cutoff);
  int n = static_cast<int>(t.sigs.size());
  int l = static_cast<int>(w.size());

  std::vector<std::uint64_t> adj(n, 0);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const auto& [f1, l1] = t.sigs[i];
      const auto& [f2, l2] = t.sigs[j];
      if (mask_has(t.fwd.at(f1)[l], l2) && mask_has(t.fwd.at(f2)[l], l1)) {
        adj[i] |= mask_bit(j);
        adj[j] |= mask_bit(i);
      }
    }
  }
  auto [k, cells] = min_clique_cover(n, adj);

  TangledPartitionResult res;
  res.word = w;
  res.value = k;
  res.sigs = t.sigs;
  for (const auto& cell : cells) {
    std::vector<Signature> cs;
    for (int i : cell) cs.push_back(t.sigs[i]);
    res.cells.push_back(std::move(cs));
    for (int i : cell) {
      for (int j : cell) {
        if (i == j) continue;
        const Signature& a = t.sigs[i];
        const Signature& b = t.sigs[j];
        Path via = realize_from_forward(p, t.fwd.at(a.first), b.last, l);
        res.witnesses.push_back({a, b, std::move(via)});
      }
    }
  }
  return res;
}

std::map<Signature, std::vector<Path>> preimages_by_signature(
    const Presentation& p, const Word& w, std::size_t cap) {
  std::map<Signature, std::vector<Path>> out;
  for (const Path& path : preimage_paths(p, w, cap))
    out[Signature{path.front(), path.back()}].push_back(path);
  return out;
}

}  // namespace factor
