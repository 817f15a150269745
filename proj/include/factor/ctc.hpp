#pragma once
// Constant-class-to-one decision (two independent routes), continuing
// property semi-decision, exact image shift-of-finite-type check, and
// multiplicity-shell presentations.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "factor/lasso.hpp"
#include "factor/presentation.hpp"

namespace factor {

// ------------------------------------------------------------ image automata

// Deterministic follower automaton of the image language, determinized from
// the full vertex set (reachable part, BFS order).
SubsetAutomaton image_follower_automaton(const Presentation& p,
                                         std::uint64_t budget = std::uint64_t{1}
                                                                << 20);

// Minimal deterministic presentation of the image: the sink of the follower
// automaton with language-equivalent states merged.
struct MinimalImageDfa {
  int block_count = 0;
  std::vector<std::vector<int>> delta;  // [block][label] -> block or -1
};
MinimalImageDfa minimal_image_dfa(const Presentation& p,
                                  std::uint64_t budget = std::uint64_t{1}
                                                         << 20);

// ------------------------------------------------------------- image SFT-ness

struct SftWitness {
  // For every k >= 1: u·c^k and c^k·v are image words but u·c^k·v is not,
  // so no finite synchronization step exists.
  Word u, c, v;
};
struct SftResult {
  bool is_sft = false;
  std::optional<int> step;            // minimal k when SFT (k-step)
  std::optional<SftWitness> witness;  // when not SFT
};
// Exact decision via the minimal image automaton's distinct-state pair graph:
// a reachable pair cycle yields the witness family, otherwise the longest
// pair chain bounds the step.
SftResult image_is_sft(const Presentation& p,
                       std::uint64_t budget = std::uint64_t{1} << 20);

// ----------------------------------------------------------------- continuing

struct ContinuingWitness {
  // Components live in the analyzed orientation (for side=left, the reversed
  // presentation; edge ids are shared with the original).  x is the lasso
  // ∞(x_left_cycle)·(x_right_cycle)∞; the image point y equals the label
  // sequence of x on (-inf,0] followed by (y_tail)∞ on [1,inf).  y is in the
  // image, yet no preimage of y is left-asymptotic to x — so the failure
  // holds at every retract.
  Path x_left_cycle;
  Path x_right_cycle;
  Word y_tail;
};
struct ContinuingResult {
  Side side = Side::kRight;
  std::optional<bool> continuing;  // absent = inconclusive
  std::optional<int> retract;      // least verified retract when continuing
  std::optional<ContinuingWitness> witness;  // when not continuing
  int max_retract = 6;
};
// Retract-n right-continuing is decided exactly per n by emptiness search on
// the product of the started-path subset automaton with the realizable
// left-infinite follower sets; failure at every retract is certified by an
// exact no-lift witness over lassos when one exists within the search caps.
ContinuingResult check_continuing(const Presentation& p, Side side,
                                  int max_retract = 6,
                                  std::uint64_t budget = std::uint64_t{1}
                                                         << 20);

// ---------------------------------------------------- constant-class-to-one

struct CtcVerdict {
  std::optional<bool> constant;  // absent = inconclusive
  int d = 0;                     // class degree used by the word scan
  bool d_certified = false;
  // First N in 3..horizon with every image word of length N of depth d
  // (route 1; certifies constant = true when present).
  std::optional<int> stabilization_length;
  // Route 2 (exact modulo budgets): an image that is not a shift of finite
  // type rules the property out; an image of finite type reduces it to
  // bi-class-closing.
  std::optional<bool> image_sft;
  std::optional<int> sft_step;
  std::optional<bool> closing_right, closing_left;
  std::optional<bool> route2;
  int horizon = 8;
};
// Throws InputError when horizon < 3.  Routes that exhaust their budget
// leave their fields absent; `constant` combines whatever certified.
CtcVerdict check_constant_class_to_one(const Presentation& p, int horizon = 8,
                                       int threads = 1,
                                       std::uint64_t budget = std::uint64_t{1}
                                                              << 20);

// --------------------------------------------------------- multiplicity shell

struct MultiplicityShell {
  Side side = Side::kRight;
  int d = 0;  // class degree (the depth being forbidden)
  bool d_certified = false;
  int horizon = 6;
  // Minimal words of side-depth exactly d, lengths 3..horizon, original
  // orientation; no listed word contains another as a subword.
  std::vector<Word> forbidden_words;
  bool side_class_closing = false;
  // True unless the length-(horizon+1) scan finds no further minimal word.
  bool horizon_limited = true;
  int shell_states = 0, shell_edges = 0;  // trimmed shell automaton size
  // Presentation of the image subshift avoiding the forbidden words; emitted
  // when the side is class-closing and the automaton fits 64x64.
  std::optional<Presentation> shell;
  // Non-closing side only: word-level sampling check of the subshift
  // description (false = a certified image point has more than d classes on
  // this side yet contains a side-depth-d word, so the forbidden-word
  // description fails, consistent with "not a subshift").
  std::optional<bool> sampling_subshift_ok;
};
MultiplicityShell multiplicity_shell(const Presentation& p, Side side,
                                     int horizon = 6,
                                     std::uint64_t budget = std::uint64_t{1}
                                                            << 20);

// ---------------------------------------------------------- implication suite

struct ImplicationOutcome {
  std::string name;
  bool checked = false;  // false = a premise or input was inconclusive
  bool holds = false;    // meaningful only when checked
  std::string detail;    // premise/conclusion values or skip reason
};
struct ImplicationReport {
  std::vector<ImplicationOutcome> implications;
  int checked = 0, skipped = 0;
  std::vector<std::string> violations;  // nonempty = theorem inconsistency
};
// Runs every analysis and asserts each implication whose premises certified;
// inconclusive premises skip (recorded, never asserted).
ImplicationReport implication_suite(const Presentation& p,
                                    std::uint64_t budget = std::uint64_t{1}
                                                           << 20);

}  // namespace factor
