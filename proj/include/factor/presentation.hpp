#pragma once
// Core model: edge-labeled directed graph presentations of 1-block factor
// codes, with parsing, validation, language queries, resolving checks, the
// finite-to-one test, and the exact degree computation.

#include <bit>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace factor {

using Vertex = int;
using EdgeId = int;
using Label = int;
using VSet = std::uint64_t;  // bit i <=> vertex i
using ESet = std::uint64_t;  // bit i <=> edge i
using Word = std::vector<Label>;
using Path = std::vector<EdgeId>;

constexpr int kMaxVertices = 64;
constexpr int kMaxEdges = 64;

constexpr std::uint64_t mask_bit(int i) { return std::uint64_t{1} << i; }
constexpr bool mask_has(std::uint64_t m, int i) { return (m >> i) & 1; }
constexpr int mask_size(std::uint64_t m) { return std::popcount(m); }
inline int mask_first(std::uint64_t m) { return std::countr_zero(m); }

template <class F>
void for_each_bit(std::uint64_t m, F&& f) {
  while (m) {
    int i = std::countr_zero(m);
    f(i);
    m &= m - 1;
  }
}

inline std::vector<int> mask_to_list(std::uint64_t m) {
  std::vector<int> out;
  for_each_bit(m, [&](int i) { out.push_back(i); });
  return out;
}

// Syntax/semantic problems in user input (bad file, unknown symbol, word not
// in the image language, infeasible random spec).  CLI exit code 1.
struct InputError : std::runtime_error {
  explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

struct ParseError : InputError {
  int line;
  ParseError(int line_, const std::string& msg)
      : InputError("line " + std::to_string(line_) + ": " + msg), line(line_) {}
};

// An analysis gave up because a state/size budget ran out.  Not a verdict.
// CLI exit code 2.
struct BudgetExhausted : std::runtime_error {
  explicit BudgetExhausted(const std::string& what_ran_out)
      : std::runtime_error("budget exhausted: " + what_ran_out) {}
};

struct Edge {
  std::string name;
  Vertex src;
  Vertex dst;
  Label label;
};

class Presentation {
 public:
  // Parse the line-oriented file format: '#' comments, one
  // "vertices: v1 v2 ..." header, then "edge <id> <src> <dst> <label>" lines.
  // Validates strong connectivity; throws ParseError / InputError.
  static Presentation parse_text(const std::string& text);
  static Presentation parse_file(const std::string& path);

  // Programmatic construction (tests, random generation).  Names are
  // generated as V<i>/e<i> unless provided.  Does NOT require irreducibility
  // unless `require_irreducible` is set.
  struct RawEdge {
    int src;
    int dst;
    std::string label;
    std::string name;  // empty = auto
  };
  static Presentation build(int num_vertices, const std::vector<RawEdge>& edges,
                            bool require_irreducible = true,
                            const std::vector<std::string>& vertex_names = {});

  int vertex_count() const { return nv_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  int label_count() const { return static_cast<int>(label_names_.size()); }

  const Edge& edge(EdgeId e) const { return edges_[e]; }
  Vertex src(EdgeId e) const { return edges_[e].src; }
  Vertex dst(EdgeId e) const { return edges_[e].dst; }
  Label label(EdgeId e) const { return edges_[e].label; }

  const std::string& vertex_name(Vertex v) const { return vertex_names_[v]; }
  const std::string& label_name(Label a) const { return label_names_[a]; }
  const std::string& edge_name(EdgeId e) const { return edges_[e].name; }
  std::optional<Vertex> find_vertex(const std::string& name) const;
  std::optional<Label> find_label(const std::string& name) const;
  std::optional<EdgeId> find_edge(const std::string& name) const;

  const std::vector<EdgeId>& out_edges(Vertex v) const { return out_[v]; }
  const std::vector<EdgeId>& in_edges(Vertex v) const { return in_[v]; }
  const std::vector<EdgeId>& out_edges_labeled(Vertex v, Label a) const {
    return out_lab_[v * label_count() + a];
  }
  const std::vector<EdgeId>& in_edges_labeled(Vertex v, Label a) const {
    return in_lab_[v * label_count() + a];
  }
  const std::vector<EdgeId>& edges_labeled(Label a) const { return by_label_[a]; }

  VSet all_vertices() const { return nv_ == 64 ? ~VSet{0} : (VSet{1} << nv_) - 1; }
  // Targets of a-labeled edges whose source lies in S.
  VSet step(VSet S, Label a) const;
  // Sources of a-labeled edges whose target lies in S.
  VSet step_back(VSet S, Label a) const;

  Presentation reversed() const;
  bool is_irreducible() const { return irreducible_; }

  std::string export_dot() const;

  bool is_path(const Path& p) const;
  Word word_of(const Path& p) const;

  // Human-readable rendering: single-character labels concatenate, others
  // join with commas (mirrors the CLI word syntax).
  std::string format_word(const Word& w) const;
  std::string format_path(const Path& p) const;  // comma-joined edge names
  // Accepts comma-separated label tokens, or the compact single-character
  // shorthand when every token would be one character.
  Word parse_word(const std::string& text) const;
  Path parse_path(const std::string& text) const;  // comma-separated edge names

 private:
  int nv_ = 0;
  std::vector<std::string> vertex_names_;
  std::vector<std::string> label_names_;
  std::vector<Edge> edges_;
  std::vector<std::vector<EdgeId>> out_, in_, out_lab_, in_lab_, by_label_;
  bool irreducible_ = false;

  void finish_build();  // index tables + connectivity
};

// ----------------------------------------------------------- language queries

bool in_language(const Presentation& p, const Word& w);

// All image words of exactly `length`, lexicographic by label id.
// Throws BudgetExhausted when more than `cap` words would be produced.
std::vector<Word> image_words(const Presentation& p, int length,
                              std::uint64_t cap = 2'000'000);

// All edge paths carrying label word w; throws BudgetExhausted past cap.
std::vector<Path> preimage_paths(const Presentation& p, const Word& w,
                                 std::uint64_t cap = 200'000);

// Deterministic subset automaton: states in BFS discovery order from the
// seeds; delta[s][a] = successor index or -1 (empty subset).
struct SubsetAutomaton {
  std::vector<VSet> states;
  std::vector<std::vector<int>> delta;  // [state][label]
  int find(VSet s) const;               // -1 when absent
};
SubsetAutomaton determinize(const Presentation& p, const std::vector<VSet>& seeds,
                            std::uint64_t budget = 1u << 20);

// Reachable endpoint sets of finite words (from full V).
std::vector<VSet> forward_subset_family(const Presentation& p);
// Sets {sources from which w is readable}, over all words w.
std::vector<VSet> backward_readable_family(const Presentation& p);
// Subset closure of singleton seeds (right-accessible vertex sets).
std::vector<VSet> accessible_sets(const Presentation& p);

// -------------------------------------------------------- resolving / degree

bool is_right_resolving(const Presentation& p);
bool is_left_resolving(const Presentation& p);

struct FiniteToOneResult {
  bool finite_to_one;
  // When not finite-to-one: a same-label edge pair from a common vertex that
  // leads to a diamond.
  std::optional<std::pair<EdgeId, EdgeId>> diamond_seed;
};
FiniteToOneResult is_finite_to_one(const Presentation& p);

struct DegreeResult {
  int value = 0;
  Word witness;    // word with a position pinned to `value` distinct edges
  int position = 0;  // 1-based pinned position in witness
  bool certified = true;  // the computation is exact
};
// Exact: min over words w and positions i of the number of distinct edges at
// position i among preimages of w.  Decomposes over (endpoint-set, label,
// readable-set) triples, so no search horizon is involved.
// Throws InputError when the code is not finite-to-one.
DegreeResult degree_finite_to_one(const Presentation& p);

// ------------------------------------------------------------------- random

struct RandomSpec {
  int vertices = 0;
  int edges = 0;
  int labels = 0;
  std::uint64_t seed = 0;
};
// Deterministic for a fixed spec; rejection-samples to an irreducible graph
// with every vertex having in/out degree >= 1.  Throws InputError when the
// spec is infeasible (edges < vertices, counts out of range, or rejection
// fails repeatedly).
Presentation random_presentation(const RandomSpec& spec);

}  // namespace factor
