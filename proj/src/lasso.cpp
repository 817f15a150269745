#include "factor/lasso.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>

namespace factor {

Lasso::Lasso(const Presentation& p, Path left_cycle, Path spoke,
             Path right_cycle)
    : lc_(std::move(left_cycle)), sp_(std::move(spoke)),
      rc_(std::move(right_cycle)) {
  if (lc_.empty() || rc_.empty())
    throw InputError("lasso cycles must be nonempty");
  auto check_chain = [&](const Path& seq) {
    for (std::size_t i = 0; i + 1 < seq.size(); ++i)
      if (p.dst(seq[i]) != p.src(seq[i + 1]))
        throw InputError("lasso components do not concatenate into a path");
  };
  Path seq;
  seq.insert(seq.end(), lc_.begin(), lc_.end());
  seq.insert(seq.end(), lc_.begin(), lc_.end());
  seq.insert(seq.end(), sp_.begin(), sp_.end());
  seq.insert(seq.end(), rc_.begin(), rc_.end());
  seq.insert(seq.end(), rc_.begin(), rc_.end());
  check_chain(seq);
  if (p.dst(rc_.back()) != p.src(rc_.front()))
    throw InputError("lasso right cycle is not closed");
  if (p.dst(lc_.back()) != p.src(lc_.front()))
    throw InputError("lasso left cycle is not closed");
}

EdgeId Lasso::edge_at(long long i) const {
  long long spn = static_cast<long long>(sp_.size());
  if (i >= spn) {
    long long j = (i - spn) % static_cast<long long>(rc_.size());
    return rc_[static_cast<std::size_t>(j)];
  }
  if (i >= 0) return sp_[static_cast<std::size_t>(i)];
  long long j = (-i - 1) % static_cast<long long>(lc_.size());
  return lc_[lc_.size() - 1 - static_cast<std::size_t>(j)];
}

Lasso Lasso::reversed(const Presentation& reversed_p) const {
  Path lc(rc_.rbegin(), rc_.rend());
  Path sp(sp_.rbegin(), sp_.rend());
  Path rc(lc_.rbegin(), lc_.rend());
  return Lasso(reversed_p, std::move(lc), std::move(sp), std::move(rc));
}

LabelLasso LabelLasso::reversed() const {
  return LabelLasso{Word(right_cycle.rbegin(), right_cycle.rend()),
                    Word(spoke.rbegin(), spoke.rend()),
                    Word(left_cycle.rbegin(), left_cycle.rend())};
}

bool one_cutoff_bridge(const Presentation& p, const Lasso& x, const Lasso& xp,
                       long long m) {
  long long L = std::lcm(static_cast<long long>(x.right_cycle().size()),
                         static_cast<long long>(xp.right_cycle().size()));
  long long S = std::max(static_cast<long long>(x.spoke().size()),
                         static_cast<long long>(xp.spoke().size()));
  // collapse coordinates beyond both spokes onto their phase class
  auto norm = [&](long long i) -> long long {
    if (i <= S + 2 * L) return i;
    return S + 2 * L + ((i - (S + 2 * L)) % L);
  };
  Vertex v0 = p.dst(x.edge_at(m));
  std::set<std::pair<Vertex, long long>> seen;
  std::deque<std::pair<Vertex, long long>> q;
  seen.insert({v0, norm(m + 1)});
  q.push_back({v0, m + 1});
  while (!q.empty()) {
    auto [v, i] = q.front();
    q.pop_front();
    if (i > m && v == p.src(xp.edge_at(i))) return true;  // merge onto xp here
    Label a = p.label(x.edge_at(i));  // the shared image symbol at i
    for (EdgeId e : p.out_edges_labeled(v, a)) {
      std::pair<Vertex, long long> key{p.dst(e), norm(i + 1)};
      if (seen.insert(key).second) q.push_back({p.dst(e), i + 1});
    }
  }
  return false;
}

bool right_transition_exists(const Presentation& p, const Lasso& x,
                             const Lasso& xp) {
  long long L = std::lcm(static_cast<long long>(x.right_cycle().size()),
                         static_cast<long long>(xp.right_cycle().size()));
  long long S = std::max(static_cast<long long>(x.spoke().size()),
                         static_cast<long long>(xp.spoke().size()));
  // The per-cutoff test is monotone (a witness for m serves any m' <= m) and
  // periodic in m with period L beyond both spokes, so two full periods
  // beyond the spokes decide every cutoff.
  for (long long m = S + L; m < S + 3 * L; ++m)
    if (!one_cutoff_bridge(p, x, xp, m)) return false;
  return true;
}

bool left_transition_exists(const Presentation& p, const Lasso& x,
                            const Lasso& xp) {
  Presentation pr = p.reversed();
  return right_transition_exists(pr, x.reversed(pr), xp.reversed(pr));
}

}  // namespace factor
