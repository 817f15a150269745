#pragma once
// Class degree: the minimum word t-depth over the image language, with a
// certificate partition, plus lower/upper bounds on the number of transition
// classes over an eventually-periodic image point.

#include <cstdint>
#include <optional>
#include <vector>

#include "factor/bridges.hpp"
#include "factor/lasso.hpp"
#include "factor/presentation.hpp"

namespace factor {

struct ClassDegreeResult {
  int value = kDepthInfinite;  // minimum t-depth found
  Word witness;                // first word attaining it (shortest, then lex)
  bool certified = false;      // value 1, or the plateau rule fired
  int horizon = 0;             // word-length bound searched
  std::optional<TangledPartitionResult> partition;  // certificate for witness
};

// Scan image words of length 3..max_len for the minimum t-depth.  Early exit
// at value 1 (global minimum); otherwise certified only when the running
// minimum is unchanged for `plateau` consecutive lengths (default
// |V|·2^|V|).  `threads` parallelizes the per-length scan; results are
// deterministic (merge by value, then enumeration order).
ClassDegreeResult class_degree(const Presentation& p, int max_len = 14,
                               long long plateau = -1, int threads = 1);

// Cross-check for finite-to-one codes: class degree equals the degree.
// Throws InputError when the code is not finite-to-one.
bool class_degree_equals_degree_check(const Presentation& p, int max_len = 14);

// Bounds on the number of transition classes (given side) over the point
// described by an image lasso.
struct ClassCountBounds {
  Side side = Side::kRight;
  int lower = 0;  // size of a family of preimage lassos pairwise certified
                  // to lie in distinct classes (exact transition tests)
  int upper = 0;  // min tangled-cell count over extendable tail windows
  int upper_power = 0;                  // cycle power attaining the upper
  std::vector<int> upper_by_power;      // cell counts for powers 1,2,...
  std::vector<Lasso> certified_family;  // the lower bound's witnesses
};

// Compute the bounds; `k_max` caps the tail-window power.  Throws InputError
// when the lasso is not in the image language (labels unknown, or no
// bi-infinitely extendable preimage window exists).
ClassCountBounds class_count_bounds(const Presentation& p, const LabelLasso& y,
                                    Side side, int k_max = 8);

// --- enumeration helpers shared with the separation check and tests ---

// Edge cycles reading w^k (k = 1..kmax, default |V|): first-return cycles of
// the (vertex, phase) product.  Sorted, deduplicated.
std::vector<Path> label_cycle_paths(const Presentation& p, const Word& w,
                                    int kmax = -1);

// All paths from v carrying w, in lexicographic edge order ({} for empty w).
std::vector<Path> label_paths_from(const Presentation& p, Vertex v,
                                   const Word& w,
                                   std::uint64_t cap = 200000);

// Preimage lassos of the image lasso y aligned with its (left cycle, spoke,
// right cycle) structure; cycles range over powers up to |V|.
std::vector<Lasso> fiber_lassos(const Presentation& p, const LabelLasso& y);

// (vertex aliveness per phase) for an infinite forward c-labeled ray.
std::vector<VSet> right_alive_vertices(const Presentation& p, const Word& c);

// Vertices (per right-cycle phase) reachable at arbitrarily late tail
// positions of some left-infinite path labeled like y.
std::vector<VSet> left_alive_vertices(const Presentation& p,
                                      const LabelLasso& y);

}  // namespace factor
