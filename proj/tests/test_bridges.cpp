#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>
#include <string>
#include <vector>

#include "factor/bridges.hpp"
#include "factor/presentation.hpp"
#include "oracles.hpp"

using namespace factor;

namespace {
std::string fixture(const std::string& name) {
  return std::string(FIXTURES_DIR) + "/" + name;
}
Presentation load(const std::string& name) {
  return Presentation::parse_file(fixture(name));
}
}  // namespace

TEST_CASE("depth gap fixture: depth 2 but t-depth 1 on abcd") {
  const Presentation p = load("depth_gap.sg");
  const Word w = p.parse_word("abcd");
  const DepthResult d = word_depth(p, w);
  CHECK(d.value == 2);
  REQUIRE(d.certificate.has_value());
  CHECK(d.certificate->position == 2);
  CHECK(eset_contains_exactly(p, d.certificate->routing_set, {"b1", "b2"}));
  const TangledPartitionResult t = word_t_depth(p, w);
  CHECK(t.value == 1);
  CHECK(t.cells.size() == 1);

  CHECK(word_depth(p, p.parse_word("dabc")).value == 1);
  CHECK(word_depth(p, p.parse_word("dab")).value == 1);
  CHECK(word_t_depth(p, p.parse_word("abc")).value == 1);
}

TEST_CASE("short words have no interior position") {
  const Presentation p = load("depth_gap.sg");
  const DepthResult d = word_depth(p, p.parse_word("ab"));
  CHECK(d.infinite());
  CHECK(!d.certificate.has_value());
}

TEST_CASE("depth values on the right-resolving fixture") {
  const Presentation p = load("right_resolving.sg");
  CHECK(word_depth(p, p.parse_word("010")).value == 1);
  CHECK(word_depth(p, p.parse_word("011")).value == 1);
  CHECK(word_depth(p, p.parse_word("101")).value == 2);
  CHECK(word_depth(p, p.parse_word("102")).value == 2);
  CHECK(word_depth(p, p.parse_word("021")).value == 1);
}

TEST_CASE("depth and t-depth on the strictly sofic fixture") {
  const Presentation p = load("aft_cover.sg");
  CHECK(word_depth(p, p.parse_word("aba")).value == 2);
  CHECK(word_t_depth(p, p.parse_word("aba")).value == 2);
  CHECK(word_depth(p, p.parse_word("bab")).value == 2);
  CHECK(word_t_depth(p, p.parse_word("bab")).value == 2);
  CHECK(word_depth(p, p.parse_word("abab")).value == 2);
  CHECK(word_depth(p, p.parse_word("bb")).infinite());
  CHECK(word_t_depth(p, p.parse_word("bb")).value == 1);
  CHECK(word_depth(p, p.parse_word("bba")).value == 1);
  CHECK(word_depth(p, p.parse_word("abb")).value == 1);
}

TEST_CASE("non-image words are input errors") {
  const Presentation p = load("aft_cover.sg");
  CHECK_THROWS_AS(word_depth(p, p.parse_word("bbb")), InputError);
  CHECK_THROWS_AS(word_t_depth(p, p.parse_word("bbb")), InputError);
}

TEST_CASE("depth certificate witnesses are valid preimages through the set") {
  const Presentation p = load("fibre_mixing.sg");
  for (const char* ws : {"abc", "aaa", "abca"}) {
    const Word w = p.parse_word(ws);
    const DepthResult d = word_depth(p, w);
    REQUIRE(d.certificate.has_value());
    const DepthCertificate& c = *d.certificate;
    CHECK(static_cast<int>(mask_to_list(c.routing_set).size()) == d.value);
    std::set<Signature> seen;
    for (const auto& [sig, path] : c.witnesses) {
      REQUIRE(path.size() == w.size());
      CHECK(path.front() == sig.first);
      CHECK(path.back() == sig.last);
      for (std::size_t i = 0; i < w.size(); ++i)
        CHECK(p.label(path[i]) == w[i]);
      CHECK(mask_has(c.routing_set, path[c.position - 1]));
      seen.insert(sig);
    }
    // one witness per realizable signature
    std::set<Signature> realizable;
    for (const Path& z : preimage_paths(p, w))
      realizable.insert({z.front(), z.back()});
    CHECK(seen == realizable);
  }
}

TEST_CASE("routing set on the fibre-mixing fixture") {
  const Presentation p = load("fibre_mixing.sg");
  const Path u = p.parse_path("t3,t4,t3");
  const ESet r = routing_set(p, u, 2);
  CHECK(eset_contains_exactly(p, r, {"t4"}));
  CHECK_THROWS_AS(routing_set(p, u, 1), InputError);
  CHECK_THROWS_AS(routing_set(p, u, 3), InputError);
}

TEST_CASE("bridge agrees with exhaustive same-label path enumeration") {
  for (const char* name :
       {"depth_gap.sg", "right_resolving.sg", "aft_cover.sg",
        "bicontinuing.sg", "fibre_mixing.sg", "two_cycle.sg"}) {
    const Presentation p = load(name);
    for (int len = 2; len <= 4; ++len) {
      for (const Word& w : image_words(p, len)) {
        const std::vector<Path> paths = preimage_paths(p, w);
        if (paths.size() > 12) continue;
        for (const Path& u : paths) {
          for (const Path& v : paths) {
            const bool expect = oracle::brute_bridge(p, u, v);
            CHECK(bridge_exists(p, u, v) == expect);
            const auto witness = bridge(p, u, v);
            CHECK(witness.has_value() == expect);
            if (witness.has_value()) {
              CHECK(witness->front() == u.front());
              CHECK(witness->back() == v.back());
              for (std::size_t i = 0; i < w.size(); ++i)
                CHECK(p.label((*witness)[i]) == w[i]);
            }
            CHECK(two_way_bridge_exists(p, u, v) ==
                  oracle::brute_two_way_bridge(p, u, v));
          }
        }
      }
    }
  }
}

TEST_CASE("depth and t-depth match the brute hitting-set/partition oracles") {
  for (const char* name :
       {"depth_gap.sg", "right_resolving.sg", "aft_cover.sg",
        "bicontinuing.sg", "fibre_mixing.sg", "identity.sg", "two_cycle.sg"}) {
    const Presentation p = load(name);
    for (int len = 3; len <= 5; ++len) {
      for (const Word& w : image_words(p, len)) {
        const auto bd = oracle::brute_depth(p, w);
        const auto bt = oracle::brute_t_depth(p, w);
        if (bd.has_value()) {
          const DepthResult d = word_depth(p, w);
          INFO(name << " word " << p.format_word(w));
          CHECK(d.value == *bd);
        }
        if (bt.has_value()) {
          const TangledPartitionResult t = word_t_depth(p, w);
          INFO(name << " word " << p.format_word(w));
          CHECK(t.value == *bt);
          // every pair inside a reported cell really is mutually bridged
          for (const auto& cell : t.cells) {
            for (const Signature& s1 : cell) {
              for (const Signature& s2 : cell) {
                const auto p1 = path_first_last(p, s1.first, w, s1.last);
                const auto p2 = path_first_last(p, s2.first, w, s2.last);
                REQUIRE(p1.has_value());
                REQUIRE(p2.has_value());
                CHECK(two_way_bridge_exists(p, *p1, *p2));
              }
            }
          }
        }
      }
    }
  }
}

TEST_CASE("t-depth never exceeds depth on sampled words") {
  for (const char* name :
       {"depth_gap.sg", "right_resolving.sg", "aft_cover.sg",
        "fibre_mixing.sg"}) {
    const Presentation p = load(name);
    for (int len = 3; len <= 5; ++len) {
      for (const Word& w : image_words(p, len)) {
        const int d = word_depth(p, w).value;
        const int t = word_t_depth(p, w).value;
        CHECK(t <= d);
      }
    }
  }
}

TEST_CASE("forward and backward layers describe reachable edges") {
  const Presentation p = load("aft_cover.sg");
  const Word w = p.parse_word("aba");
  for (EdgeId e = 0; e < p.edge_count(); ++e) {
    if (p.label(e) != w[0]) continue;
    const auto layers = forward_layers(p, e, w);
    const ESet lasts = reach_last_edges(p, e, w);
    std::set<EdgeId> expect;
    for (const Path& z : preimage_paths(p, w))
      if (z.front() == e) expect.insert(z.back());
    if (!layers.has_value()) {
      CHECK(expect.empty());
      CHECK(lasts == 0);
      continue;
    }
    std::set<EdgeId> got;
    for (int x : mask_to_list(lasts)) got.insert(x);
    CHECK(got == expect);
    CHECK((*layers)[1] == mask_bit(e));
  }
}

TEST_CASE("signature cutoff reports budget exhaustion") {
  const Presentation p = load("aft_cover.sg");
  // Cutoff zero refuses everything with at least one signature.
  CHECK_THROWS_AS(word_depth(p, p.parse_word("aba"), 0), BudgetExhausted);
  CHECK_THROWS_AS(word_t_depth(p, p.parse_word("aba"), 0), BudgetExhausted);
}
