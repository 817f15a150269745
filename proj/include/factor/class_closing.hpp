#pragma once
// Right/left class-closing decision with exact delay, lasso counterexamples,
// the finite path-pair conditions that characterize the property, and the
// coordinate-separation check for certified distinct classes.

#include <cstdint>
#include <optional>
#include <vector>

#include "factor/lasso.hpp"
#include "factor/presentation.hpp"

namespace factor {

// Product-automaton state tracking one pair of same-label paths: the current
// last edges of the two paths plus, for each, the set of possible last edges
// of equally-labeled paths sharing its first edge (bridge availability).
// A state is BAD when either path cannot be bridged to the other.
struct PairState {
  EdgeId alpha_edge = -1;
  EdgeId beta_edge = -1;
  ESet alpha_reach = 0;
  ESet beta_reach = 0;
  auto operator<=>(const PairState&) const = default;
  bool bad() const {
    return !mask_has(alpha_reach, beta_edge) || !mask_has(beta_reach, alpha_edge);
  }
};

// Two preimage rays violating class-closing, with the common periodic tail
// they extend.  All paths are in the original presentation's orientation.
//   side = right: the points are x = ∞(shared_cycle)·alpha_stem·(alpha_cycle)∞
//   and the beta sibling — left asymptotic, equal image, not right equivalent.
//   side = left:  x = ∞(alpha_cycle)·alpha_stem·(shared_cycle)∞ and the beta
//   sibling — right asymptotic, equal image, not left equivalent.
struct ClosingCounterexample {
  Side side = Side::kRight;
  Vertex branch_vertex = -1;  // where the rays part (right) / merge (left)
  Path shared_cycle;
  Path alpha_stem, alpha_cycle;
  Path beta_stem, beta_cycle;

  // The two points as lassos (validated on construction).
  Lasso alpha_point(const Presentation& p) const;
  Lasso beta_point(const Presentation& p) const;
};

struct ClosingVerdict {
  Side side = Side::kRight;
  bool closing = false;
  std::optional<int> delay;  // minimal D: same-label vertex-rooted pairs of
                             // length D+1 are tangled; 0 <=> resolving
  std::optional<ClosingCounterexample> counterexample;
  std::uint64_t states_explored = 0;
};

// Decide class-closing on the given side.  Budget caps the number of product
// states (BudgetExhausted beyond it).
ClosingVerdict check_class_closing(const Presentation& p, Side side,
                                   std::uint64_t budget = std::uint64_t{1} << 20);

// A failing witness for the finite conditions: two same-label paths of
// length D+1 rooted in the checked vertex family that admit no 2-way bridge.
struct ConditionWitness {
  VSet root;          // root vertex (singleton) or accessible vertex set
  Word word;          // the shared label word, length D+1
  Path path_a, path_b;
};

// Condition "vertex-rooted": every two same-label paths of length D+1 from a
// common vertex are tangled.  Returns a witness when it fails.
std::optional<ConditionWitness> verify_condition4(const Presentation& p, int D,
                                                  std::uint64_t budget = std::uint64_t{1}
                                                                         << 20);
// Condition "accessibility-rooted": the same, quantified over right-accessible
// vertex sets (subset closure of singletons).  Equivalent to condition 4 at
// every D; both are kept as mutual cross-checks.
std::optional<ConditionWitness> verify_condition5(const Presentation& p, int D,
                                                  std::uint64_t budget = std::uint64_t{1}
                                                                         << 20);

// Mutual-separation spot check for a right-closing verdict: for each sample
// image lasso, any two preimage lassos certified to lie in distinct right
// classes (by the exact transition tests) must share no coordinate.
// Vacuously true when no certified pair exists.  Throws InputError unless
// the verdict is closing on the right side.
struct SeparationReport {
  int lassos_checked = 0;
  int certified_pairs = 0;
  bool separated = true;
};
SeparationReport separation_check(const Presentation& p,
                                  const ClosingVerdict& verdict,
                                  const std::vector<LabelLasso>& samples);

}  // namespace factor
