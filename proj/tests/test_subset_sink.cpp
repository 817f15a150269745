#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "factor/class_closing.hpp"
#include "factor/presentation.hpp"
#include "factor/subset_sink.hpp"
#include "oracles.hpp"

using namespace factor;

namespace {
std::string fixture(const std::string& name) {
  return std::string(FIXTURES_DIR) + "/" + name;
}
Presentation load(const std::string& name) {
  return Presentation::parse_file(fixture(name));
}
std::set<std::string> state_names(const Presentation& base,
                                  const std::vector<VSet>& sets) {
  std::set<std::string> out;
  for (VSet s : sets) out.insert(subset_state_name(base, s));
  return out;
}
}  // namespace

TEST_CASE("cover of the right-resolving fixture collapses to singletons") {
  const Presentation p = load("right_resolving.sg");
  const SubsetCover c = subset_construction(p);
  CHECK(c.seed == 0);
  CHECK(state_names(p, c.sink_sets) ==
        std::set<std::string>{"{I}", "{J}", "{K}"});
  // The sink reads exactly the same language as the base graph.
  CHECK(sampled_language_equal(p, c.sink));
  // Right resolving by construction, but this particular sink is not left
  // resolving (two 1-labeled edges into the I state).
  CHECK(is_right_resolving(c.sink));
  CHECK(!is_left_resolving(c.sink));
}

TEST_CASE("cover states of the strictly sofic fixture") {
  const Presentation p = load("aft_cover.sg");
  const SubsetCover c = subset_construction(p);
  CHECK(state_names(p, c.sink_sets) ==
        std::set<std::string>{"{I}", "{I,K}", "{J}"});
  CHECK(sampled_language_equal(p, c.sink));
  CHECK(is_right_resolving(c.sink));

  const ClosingDelay left = left_closing_delay(c.sink);
  CHECK(left.closing);
  REQUIRE(left.delay.has_value());
  CHECK(*left.delay == 1);

  CHECK(!verify_left_closing_delay(c.sink, 5).has_value());
  const auto violation = verify_left_closing_delay(c.sink, 0);
  REQUIRE(violation.has_value());
  // The violating pair must be genuine: same word, same endpoint, different
  // final edge.
  const Path& a = violation->path_a;
  const Path& b = violation->path_b;
  REQUIRE(a.size() == 1);
  REQUIRE(b.size() == 1);
  CHECK(c.sink.word_of(a) == c.sink.word_of(b));
  CHECK(c.sink.dst(a.back()) == c.sink.dst(b.back()));
  CHECK(a.back() != b.back());
}

TEST_CASE("the strictly sofic base graph is not properly right closing") {
  // Its right CLASS-closing delay is 2, but as a labeling it is not right
  // closing at any delay: two disjoint ab-cycles start at J.
  const Presentation p = load("aft_cover.sg");
  const ClosingDelay r = right_closing_delay(p);
  CHECK(!r.closing);
  CHECK(!r.delay.has_value());

  const ClosingVerdict cc = check_class_closing(p, Side::kRight);
  CHECK(cc.closing);
  REQUIRE(cc.delay.has_value());
  CHECK(*cc.delay == 2);
}

TEST_CASE("proper closing delays on resolving fixtures") {
  const Presentation ident = load("identity.sg");
  const ClosingDelay ir = right_closing_delay(ident);
  CHECK(ir.closing);
  CHECK(ir.delay == 0);
  const ClosingDelay il = left_closing_delay(ident);
  CHECK(il.closing);
  CHECK(il.delay == 0);

  const Presentation rr = load("right_resolving.sg");
  const ClosingDelay rrr = right_closing_delay(rr);
  CHECK(rrr.closing);
  CHECK(rrr.delay == 0);
  const ClosingDelay rrl = left_closing_delay(rr);
  CHECK(!rrl.closing);
}

TEST_CASE("seeding from another vertex still finds an equivalent sink") {
  const Presentation p = load("aft_cover.sg");
  for (Vertex seed = 0; seed < p.vertex_count(); ++seed) {
    const SubsetCover c = subset_construction(p, seed);
    CHECK(c.seed == seed);
    INFO("seed ", p.vertex_name(seed));
    CHECK(sampled_language_equal(p, c.sink));
    CHECK(is_right_resolving(c.sink));
  }
}

TEST_CASE("cover edge lists are consistent and deterministic") {
  const Presentation p = load("right_resolving.sg");
  const SubsetCover c1 = subset_construction(p);
  const SubsetCover c2 = subset_construction(p);
  REQUIRE(c1.states.size() == c2.states.size());
  CHECK(c1.states == c2.states);
  REQUIRE(c1.edges.size() == c2.edges.size());
  for (std::size_t i = 0; i < c1.edges.size(); ++i) {
    CHECK(c1.edges[i].from == c2.edges[i].from);
    CHECK(c1.edges[i].label == c2.edges[i].label);
    CHECK(c1.edges[i].to == c2.edges[i].to);
  }
  // Structural right-resolving: no state has two out-edges with one label.
  std::set<std::pair<int, Label>> seen;
  for (const CoverEdge& e : c1.edges) {
    CHECK(seen.insert({e.from, e.label}).second);
    // Transition agrees with the base subset step.
    CHECK(c1.states[e.to] == p.step(c1.states[e.from], e.label));
  }
}

TEST_CASE("almost-finite-type witness per fixture") {
  SUBCASE("bi-class-closing sofic fixture has one") {
    const Presentation p = load("aft_cover.sg");
    const auto w = aft_witness(p);
    REQUIRE(w.has_value());
    CHECK(w->code_delay_right == 2);
    CHECK(w->code_delay_left == 2);
    CHECK(w->left_delay_bound == 5);
    CHECK(w->sink_left_delay <= w->left_delay_bound);
    CHECK(w->sink_left_delay == 1);
    CHECK(w->sink_right_delay == 0);
    CHECK(is_right_resolving(w->cover.sink));
  }
  SUBCASE("fixture with no class-closing side has none") {
    CHECK(!aft_witness(load("bicontinuing.sg")).has_value());
  }
  SUBCASE("far-delay fixture has one") {
    const Presentation p = load("fibre_mixing.sg");
    const auto w = aft_witness(p);
    REQUIRE(w.has_value());
    CHECK(w->code_delay_right == 3);
    CHECK(w->code_delay_left == 3);
    CHECK(w->left_delay_bound == 7);
    CHECK(w->sink_left_delay <= 7);
  }
  SUBCASE("resolving fixture reports zero delays") {
    const auto w = aft_witness(load("identity.sg"));
    REQUIRE(w.has_value());
    CHECK(w->code_delay_right == 0);
    CHECK(w->code_delay_left == 0);
    CHECK(w->sink_right_delay == 0);
    CHECK(w->sink_left_delay == 0);
  }
}

TEST_CASE("subset state names list base vertices in id order") {
  const Presentation p = load("aft_cover.sg");
  CHECK(subset_state_name(p, mask_bit(0)) == "{I}");
  CHECK(subset_state_name(p, mask_bit(0) | mask_bit(2)) == "{I,K}");
  CHECK(subset_state_name(p, p.all_vertices()) == "{I,J,K}");
}

TEST_CASE("sampled language comparison is a real tripwire") {
  const Presentation p = load("two_cycle.sg");
  const Presentation q = load("identity.sg");
  CHECK(sampled_language_equal(p, p));
  CHECK(!sampled_language_equal(p, q));
}
