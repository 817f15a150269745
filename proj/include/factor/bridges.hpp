#pragma once
// Bridges between equally-labeled paths, routability, word depth, t-depth,
// and tangled partitions with re-checkable certificates.
//
// Everything is computed on the signature quotient: whether a path u admits
// a bridge to w, and u's routing set at a position, depend only on u's
// (first edge, last edge) pair, and same-signature paths always admit 2-way
// bridges between each other.  So depth and t-depth are solved over the
// realizable signatures of a word (at most |E|^2, usually a handful) instead
// of enumerating preimage paths.

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "factor/presentation.hpp"

namespace factor {

inline constexpr int kDepthInfinite = std::numeric_limits<int>::max();

// layers[i] (1-based position i, layers[0] unused) = bit set of edges that can
// occur at position i of a w-labeled path starting with edge `first` (forward
// version) / ending with edge `last` (backward version).  Empty optional when
// no such path exists.
std::optional<std::vector<ESet>> forward_layers(const Presentation& p,
                                                EdgeId first, const Word& w);
std::optional<std::vector<ESet>> backward_layers(const Presentation& p,
                                                 EdgeId last, const Word& w);

// Possible last edges of w-labeled paths starting with `first`.
ESet reach_last_edges(const Presentation& p, EdgeId first, const Word& w);

// Concrete path carrying `w` whose first edge is `first` and last edge is
// `last` (smallest edge ids at intermediate positions), or absent.
std::optional<Path> path_first_last(const Presentation& p, EdgeId first,
                                    const Word& w, EdgeId last);

// Bridge from u to w: a path v with v|_1 = u|_1, v|_last = w|_last and the
// same label word.  Returns a concrete witness path (smallest edge ids) or
// absent.  Throws InputError on length/label mismatch or invalid paths.
std::optional<Path> bridge(const Presentation& p, const Path& u, const Path& w);
bool bridge_exists(const Presentation& p, const Path& u, const Path& w);

struct TwoWayBridge {
  Path forward;   // bridge u -> w
  Path backward;  // bridge w -> u
};
std::optional<TwoWayBridge> two_way_bridge(const Presentation& p, const Path& u,
                                           const Path& w);
bool two_way_bridge_exists(const Presentation& p, const Path& u, const Path& w);

// R(u, n): edges occurring at 1-based position n (1 < n < |u|) among paths
// sharing u's first and last edge and label word.  Throws InputError when n
// is not interior.
ESet routing_set(const Presentation& p, const Path& u, int n);

// (first edge, last edge) pair of a preimage path.
struct Signature {
  EdgeId first = -1;
  EdgeId last = -1;
  auto operator<=>(const Signature&) const = default;
};

struct SignatureTables {
  std::vector<Signature> sigs;             // realizable signatures, sorted
  std::map<EdgeId, std::vector<ESet>> fwd; // first edge -> forward layers
  std::map<EdgeId, std::vector<ESet>> bwd; // last edge -> backward layers
};
SignatureTables word_signatures(const Presentation& p, const Word& w);

// Certificate for a depth value: at `position`, every preimage's routing set
// meets `routing_set`, and |routing_set| = depth.  One witness path per
// signature suffices for all preimages sharing it (they share first/last
// edges); each witness carries that signature and passes through an edge of
// routing_set at `position`.
struct DepthCertificate {
  Word word;
  int position = -1;  // 1-based, 1 < position < |word|
  ESet routing_set = 0;
  std::vector<std::pair<Signature, Path>> witnesses;  // one per signature
};

struct DepthResult {
  int value = kDepthInfinite;  // kDepthInfinite iff |word| <= 2
  std::optional<DepthCertificate> certificate;
  bool infinite() const { return value == kDepthInfinite; }
};

// Depth of w: min over interior positions n of the minimum hitting-set size
// over the preimages' routing sets at n.  Ties break to the smallest
// position, then the lexicographically smallest edge set.  Words of length
// <= 2 have no interior position and report the infinite marker.
// Throws InputError if w is not in the image language, BudgetExhausted if
// the word has more than `signature_cutoff` realizable signatures (a
// documented refusal: the exact solvers are only run on small instances).
DepthResult word_depth(const Presentation& p, const Word& w,
                       int signature_cutoff = 20);

// Minimum partition of the preimages into mutually-tangled cells, on the
// signature quotient.  `cells` partitions the realizable signatures; for
// every ordered pair of distinct signatures in a common cell, `witnesses`
// holds a concrete bridge path from the first to the second.
struct TangledPartitionResult {
  Word word;
  int value = 0;
  std::vector<Signature> sigs;
  std::vector<std::vector<Signature>> cells;
  struct PairWitness {
    Signature from, to;
    Path via;
  };
  std::vector<PairWitness> witnesses;
};

// t-depth of w: minimum clique cover of the 2-way-bridge compatibility graph.
// Throws InputError if w is not in the image language, BudgetExhausted past
// the signature cutoff.
TangledPartitionResult word_t_depth(const Presentation& p, const Word& w,
                                    int signature_cutoff = 20);

// Preimages of `w` grouped by signature (enumerated up to `cap` paths).
// Used to expand per-signature certificates into per-preimage listings.
std::map<Signature, std::vector<Path>> preimages_by_signature(
    const Presentation& p, const Word& w, std::size_t cap = 200000);

}  // namespace factor
