#pragma once
// Eventually-periodic bi-infinite points ("lassos") and the exact decision
// procedures for right/left transitions between preimage points with equal
// image:  x -> x' holds when for every cutoff m there is a point z agreeing
// with x up to coordinate m, carrying the same image, and agreeing with x'
// from some later coordinate on.  For eventually-periodic points this is
// decidable: the per-cutoff bridge test is monotone in m and periodic in the
// cycle phases, so checking two full periods beyond both spokes is exact.

#include <cstdint>
#include <vector>

#include "factor/presentation.hpp"

namespace factor {

// Which transition/asymptotics direction an analysis works on.
enum class Side { kRight, kLeft };
inline const char* side_name(Side s) {
  return s == Side::kRight ? "right" : "left";
}

// Bi-infinite eventually-periodic edge point
//   ... L L L | spoke | R R R ...
// with coordinate 0 at the first edge of the spoke (or of the right cycle
// when the spoke is empty).  Cycles must be nonempty closed paths; the whole
// concatenation must be a path.
class Lasso {
 public:
  Lasso(const Presentation& p, Path left_cycle, Path spoke, Path right_cycle);

  EdgeId edge_at(long long i) const;
  Label label_at(const Presentation& p, long long i) const {
    return p.label(edge_at(i));
  }

  const Path& left_cycle() const { return lc_; }
  const Path& spoke() const { return sp_; }
  const Path& right_cycle() const { return rc_; }

  // The same point read in the reversed presentation (edge ids are shared
  // between a presentation and its reversal).
  Lasso reversed(const Presentation& reversed_p) const;

  bool operator==(const Lasso& o) const {
    return lc_ == o.lc_ && sp_ == o.sp_ && rc_ == o.rc_;
  }
  bool operator<(const Lasso& o) const {
    if (lc_ != o.lc_) return lc_ < o.lc_;
    if (sp_ != o.sp_) return sp_ < o.sp_;
    return rc_ < o.rc_;
  }

 private:
  Path lc_, sp_, rc_;
};

// Image-side lasso given by label words (the CLI's ∞left·spoke·right∞ input).
struct LabelLasso {
  Word left_cycle, spoke, right_cycle;
  LabelLasso reversed() const;
};

// Exact right-transition test x -> x'.  Caller guarantees the two points
// carry the same label sequence coordinatewise (true for all pairs built by
// this library: equal spoke lengths and cycle labels).
bool right_transition_exists(const Presentation& p, const Lasso& x,
                             const Lasso& xp);
// Exact left-transition test via reversal.
bool left_transition_exists(const Presentation& p, const Lasso& x,
                            const Lasso& xp);

// Single-cutoff bridge test (exposed for the brute-force cross-checks):
// exists z equal to x on (-inf, m], labeled like x's image, equal to x' from
// some coordinate > m on.
bool one_cutoff_bridge(const Presentation& p, const Lasso& x, const Lasso& xp,
                       long long m);

}  // namespace factor
