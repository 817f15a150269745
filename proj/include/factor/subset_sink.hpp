#pragma once
// Subset-construction cover of the labeled graph, extraction of an
// irreducible sink (terminal strongly-connected component closed under
// outgoing edges), proper right/left closing delays, and the
// almost-finite-type witness for bi-class-closing codes.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "factor/presentation.hpp"

namespace factor {

// One transition of the cover automaton; endpoints index SubsetCover.states.
struct CoverEdge {
  int from;
  Label label;
  int to;
};

struct SubsetCover {
  std::vector<VSet> states;      // reachable subsets, BFS discovery order
  std::vector<CoverEdge> edges;  // discovery order (state order, label order)
  std::vector<int> sink_vertices;  // state indices of the sink, ascending
  Presentation sink;             // the sink as its own irreducible presentation
  std::vector<VSet> sink_sets;   // base-vertex subset per sink vertex
  Vertex seed = 0;               // base vertex seeding the construction
};

// Render a subset state as "{A,B}" using base vertex names (id order).
std::string subset_state_name(const Presentation& base, VSet s);

// Build the reachable subset automaton from {seed} (an edge labeled a from S
// to T iff T = targets of a-labeled edges out of S, T nonempty) and locate
// the sink: the terminal SCC with the smallest discovery index.  Each state
// has at most one a-edge out, so the cover labeling is right resolving by
// construction.  Throws BudgetExhausted when the state count exceeds the
// budget or the sink does not fit the 64-vertex/64-edge representation.
SubsetCover subset_construction(const Presentation& p, Vertex seed = 0,
                                std::uint64_t budget = std::uint64_t{1} << 20);

// Proper (not class-) closing delays via the vertex-pair automaton.
struct ClosingDelay {
  bool closing = false;
  std::optional<int> delay;  // least D: same-label length-(D+1) paths from a
                             // common start vertex share their first edge
};
ClosingDelay right_closing_delay(const Presentation& p,
                                 std::uint64_t budget = std::uint64_t{1} << 20);
// Same with "ending at a common vertex share their last edge".
ClosingDelay left_closing_delay(const Presentation& p,
                                std::uint64_t budget = std::uint64_t{1} << 20);

// Finite check that p is left closing with delay k: no two same-label paths
// of length k+1 end at a common vertex with distinct last edges.  Returns
// the violating pair when the check fails, absent when it holds.
struct DelayViolation {
  Path path_a, path_b;  // equal label word and terminal vertex, distinct
                        // last edges (in the checked presentation)
};
std::optional<DelayViolation> verify_left_closing_delay(const Presentation& p,
                                                        int k);

// Almost-finite-type witness: present iff the code is class-closing on both
// sides.  The sink cover is right resolving (verified) and left closing with
// delay at most 2·max(code delays)+1 (verified); the exact sink delays are
// reported alongside.
struct AftWitness {
  SubsetCover cover;
  int code_delay_right = 0;  // class-closing delays of the analyzed code
  int code_delay_left = 0;
  int left_delay_bound = 0;  // 2·max(code delays)+1, verified on the sink
  int sink_right_delay = 0;  // exact proper delays of the sink labeling
  int sink_left_delay = 0;
};
std::optional<AftWitness> aft_witness(const Presentation& p,
                                      std::uint64_t budget = std::uint64_t{1}
                                                             << 20);

// Sampling oracle: do the two presentations read the same label words up to
// max_len?  (Compared by label names.)  A regression tripwire, not a
// decision procedure.
bool sampled_language_equal(const Presentation& a, const Presentation& b,
                            int max_len = 8);

}  // namespace factor
