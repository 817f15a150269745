#include "factor/presentation.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <random>
#include <sstream>

namespace factor {

namespace {

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

std::string strip_comment(const std::string& line) {
  auto pos = line.find('#');
  return pos == std::string::npos ? line : line.substr(0, pos);
}

}  // namespace

Presentation Presentation::parse_text(const std::string& text) {
  Presentation p;
  std::map<std::string, Vertex> vidx;
  std::map<std::string, Label> lidx;
  std::map<std::string, EdgeId> eidx;
  bool saw_header = false;

  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto toks = split_ws(strip_comment(line));
    if (toks.empty()) continue;
    if (toks[0] == "vertices:") {
      if (saw_header) throw ParseError(lineno, "duplicate vertices: header");
      saw_header = true;
      if (toks.size() == 1) throw ParseError(lineno, "vertices: header lists no vertices");
      for (std::size_t i = 1; i < toks.size(); ++i) {
        if (vidx.count(toks[i]))
          throw ParseError(lineno, "duplicate vertex '" + toks[i] + "'");
        if (p.nv_ == kMaxVertices)
          throw ParseError(lineno, "more than 64 vertices are not supported");
        vidx[toks[i]] = p.nv_++;
        p.vertex_names_.push_back(toks[i]);
      }
    } else if (toks[0] == "edge") {
      if (!saw_header)
        throw ParseError(lineno, "edge line before the vertices: header");
      if (toks.size() != 5)
        throw ParseError(lineno,
                         "edge line needs 4 fields: edge <id> <src> <dst> <label>");
      const std::string &name = toks[1], &sn = toks[2], &tn = toks[3], &ln = toks[4];
      if (eidx.count(name)) throw ParseError(lineno, "duplicate edge id '" + name + "'");
      auto sit = vidx.find(sn);
      if (sit == vidx.end())
        throw ParseError(lineno, "unknown source vertex '" + sn + "'");
      auto tit = vidx.find(tn);
      if (tit == vidx.end())
        throw ParseError(lineno, "unknown target vertex '" + tn + "'");
      if (static_cast<int>(p.edges_.size()) == kMaxEdges)
        throw ParseError(lineno, "more than 64 edges are not supported");
      auto lit = lidx.find(ln);
      Label lab;
      if (lit == lidx.end()) {
        lab = static_cast<Label>(p.label_names_.size());
        lidx[ln] = lab;
        p.label_names_.push_back(ln);
      } else {
        lab = lit->second;
      }
      eidx[name] = static_cast<EdgeId>(p.edges_.size());
      p.edges_.push_back(Edge{name, sit->second, tit->second, lab});
    } else {
      throw ParseError(lineno, "unrecognized directive '" + toks[0] + "'");
    }
  }
  if (!saw_header) throw ParseError(lineno, "missing vertices: header");
  if (p.edges_.empty()) throw InputError("presentation has no edges");
  p.finish_build();
  if (!p.irreducible_) {
    // report the strongly-connected components for diagnosis
    std::string msg = "graph is not irreducible (strongly connected); vertices:";
    for (const auto& n : p.vertex_names_) msg += " " + n;
    throw InputError(msg);
  }
  return p;
}

Presentation Presentation::parse_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_text(ss.str());
}

Presentation Presentation::build(int num_vertices, const std::vector<RawEdge>& edges,
                                 bool require_irreducible,
                                 const std::vector<std::string>& vertex_names) {
  if (num_vertices <= 0 || num_vertices > kMaxVertices)
    throw InputError("vertex count out of range 1..64");
  if (edges.empty() || static_cast<int>(edges.size()) > kMaxEdges)
    throw InputError("edge count out of range 1..64");
  if (!vertex_names.empty() && static_cast<int>(vertex_names.size()) != num_vertices)
    throw InputError("vertex name list does not match the vertex count");
  Presentation p;
  p.nv_ = num_vertices;
  if (vertex_names.empty()) {
    for (int v = 0; v < num_vertices; ++v)
      p.vertex_names_.push_back("V" + std::to_string(v));
  } else {
    p.vertex_names_ = vertex_names;
  }
  std::map<std::string, Label> lidx;
  int k = 0;
  for (const auto& re : edges) {
    if (re.src < 0 || re.src >= num_vertices || re.dst < 0 || re.dst >= num_vertices)
      throw InputError("edge endpoint out of range");
    Label lab;
    auto it = lidx.find(re.label);
    if (it == lidx.end()) {
      lab = static_cast<Label>(p.label_names_.size());
      lidx[re.label] = lab;
      p.label_names_.push_back(re.label);
    } else {
      lab = it->second;
    }
    std::string name = re.name.empty() ? "e" + std::to_string(k) : re.name;
    p.edges_.push_back(Edge{name, re.src, re.dst, lab});
    ++k;
  }
  p.finish_build();
  if (require_irreducible && !p.irreducible_)
    throw InputError("graph is not irreducible");
  return p;
}

void Presentation::finish_build() {
  int nl = label_count();
  out_.assign(nv_, {});
  in_.assign(nv_, {});
  out_lab_.assign(static_cast<std::size_t>(nv_) * nl, {});
  in_lab_.assign(static_cast<std::size_t>(nv_) * nl, {});
  by_label_.assign(nl, {});
  for (EdgeId e = 0; e < edge_count(); ++e) {
    const Edge& ed = edges_[e];
    out_[ed.src].push_back(e);
    in_[ed.dst].push_back(e);
    out_lab_[ed.src * nl + ed.label].push_back(e);
    in_lab_[ed.dst * nl + ed.label].push_back(e);
    by_label_[ed.label].push_back(e);
  }
  // strong connectivity over all declared vertices
  auto reach = [&](bool fwd) {
    VSet seen = mask_bit(0);
    std::vector<Vertex> stack{0};
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      for (EdgeId e : fwd ? out_[v] : in_[v]) {
        Vertex w = fwd ? edges_[e].dst : edges_[e].src;
        if (!mask_has(seen, w)) {
          seen |= mask_bit(w);
          stack.push_back(w);
        }
      }
    }
    return seen;
  };
  irreducible_ = nv_ > 0 && reach(true) == all_vertices() && reach(false) == all_vertices();
}

std::optional<Vertex> Presentation::find_vertex(const std::string& name) const {
  for (Vertex v = 0; v < nv_; ++v)
    if (vertex_names_[v] == name) return v;
  return std::nullopt;
}

std::optional<Label> Presentation::find_label(const std::string& name) const {
  for (Label a = 0; a < label_count(); ++a)
    if (label_names_[a] == name) return a;
  return std::nullopt;
}

std::optional<EdgeId> Presentation::find_edge(const std::string& name) const {
  for (EdgeId e = 0; e < edge_count(); ++e)
    if (edges_[e].name == name) return e;
  return std::nullopt;
}

VSet Presentation::step(VSet S, Label a) const {
  VSet out = 0;
  for_each_bit(S, [&](int v) {
    for (EdgeId e : out_edges_labeled(v, a)) out |= mask_bit(edges_[e].dst);
  });
  return out;
}

VSet Presentation::step_back(VSet S, Label a) const {
  VSet out = 0;
  for_each_bit(S, [&](int v) {
    for (EdgeId e : in_edges_labeled(v, a)) out |= mask_bit(edges_[e].src);
  });
  return out;
}

Presentation Presentation::reversed() const {
  Presentation p;
  p.nv_ = nv_;
  p.vertex_names_ = vertex_names_;
  p.label_names_ = label_names_;
  p.edges_ = edges_;
  for (auto& e : p.edges_) std::swap(e.src, e.dst);
  p.finish_build();
  return p;
}

std::string Presentation::export_dot() const {
  std::ostringstream out;
  out << "digraph presentation {\n  rankdir=LR;\n";
  for (Vertex v = 0; v < nv_; ++v)
    out << "  \"" << vertex_names_[v] << "\";\n";
  for (const Edge& e : edges_)
    out << "  \"" << vertex_names_[e.src] << "\" -> \"" << vertex_names_[e.dst]
        << "\" [label=\"" << e.name << ":" << label_names_[e.label] << "\"];\n";
  out << "}\n";
  return out.str();
}

bool Presentation::is_path(const Path& p) const {
  if (p.empty()) return false;
  for (EdgeId e : p)
    if (e < 0 || e >= edge_count()) return false;
  for (std::size_t i = 0; i + 1 < p.size(); ++i)
    if (edges_[p[i]].dst != edges_[p[i + 1]].src) return false;
  return true;
}

Word Presentation::word_of(const Path& p) const {
  Word w;
  w.reserve(p.size());
  for (EdgeId e : p) w.push_back(edges_[e].label);
  return w;
}

std::string Presentation::format_word(const Word& w) const {
  bool compact = true;
  for (Label a : w)
    if (label_names_[a].size() != 1) compact = false;
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!compact && i) out += ",";
    out += label_names_[w[i]];
  }
  return out;
}

std::string Presentation::format_path(const Path& p) const {
  std::string out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) out += ",";
    out += edges_[p[i]].name;
  }
  return out;
}

Word Presentation::parse_word(const std::string& text) const {
  Word w;
  if (text.find(',') != std::string::npos) {
    std::istringstream in(text);
    std::string tok;
    while (std::getline(in, tok, ',')) {
      auto a = find_label(tok);
      if (!a) throw InputError("unknown label '" + tok + "'");
      w.push_back(*a);
    }
  } else {
    // compact shorthand: each character one label
    for (char c : text) {
      auto a = find_label(std::string(1, c));
      if (!a) throw InputError("unknown label '" + std::string(1, c) + "'");
      w.push_back(*a);
    }
  }
  if (w.empty()) throw InputError("empty word");
  return w;
}

Path Presentation::parse_path(const std::string& text) const {
  Path p;
  std::istringstream in(text);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    auto e = find_edge(tok);
    if (!e) throw InputError("unknown edge id '" + tok + "'");
    p.push_back(*e);
  }
  if (p.empty()) throw InputError("empty path");
  if (!is_path(p)) throw InputError("edge sequence is not a path: " + text);
  return p;
}

// ----------------------------------------------------------- language queries

bool in_language(const Presentation& p, const Word& w) {
  VSet S = p.all_vertices();
  for (Label a : w) {
    S = p.step(S, a);
    if (!S) return false;
  }
  return true;
}

std::vector<Word> image_words(const Presentation& p, int length, std::uint64_t cap) {
  std::vector<Word> out;
  Word cur;
  // iterative DFS, labels ascending => lexicographic output
  struct Frame {
    VSet set;
    Label next;
  };
  std::vector<Frame> stack{{p.all_vertices(), 0}};
  while (!stack.empty()) {
    Frame& f = stack.back();
    if (static_cast<int>(cur.size()) == length) {
      out.push_back(cur);
      if (out.size() > cap) throw BudgetExhausted("image word enumeration");
      cur.pop_back();
      stack.pop_back();
      continue;
    }
    bool pushed = false;
    while (f.next < p.label_count()) {
      Label a = f.next++;
      VSet T = p.step(f.set, a);
      if (T) {
        cur.push_back(a);
        stack.push_back({T, 0});
        pushed = true;
        break;
      }
    }
    if (!pushed) {
      if (!cur.empty()) cur.pop_back();
      stack.pop_back();
    }
  }
  return out;
}

std::vector<Path> preimage_paths(const Presentation& p, const Word& w,
                                 std::uint64_t cap) {
  std::vector<Path> cur;
  for (EdgeId e = 0; e < p.edge_count(); ++e)
    if (p.label(e) == w[0]) cur.push_back({e});
  for (std::size_t i = 1; i < w.size(); ++i) {
    std::vector<Path> nxt;
    for (const Path& q : cur) {
      for (EdgeId e : p.out_edges_labeled(p.dst(q.back()), w[i])) {
        nxt.push_back(q);
        nxt.back().push_back(e);
        if (nxt.size() > cap) throw BudgetExhausted("preimage path enumeration");
      }
    }
    cur = std::move(nxt);
  }
  return cur;
}

int SubsetAutomaton::find(VSet s) const {
  for (std::size_t i = 0; i < states.size(); ++i)
    if (states[i] == s) return static_cast<int>(i);
  return -1;
}

SubsetAutomaton determinize(const Presentation& p, const std::vector<VSet>& seeds,
                            std::uint64_t budget) {
  SubsetAutomaton d;
  std::map<VSet, int> idx;
  for (VSet s : seeds) {
    if (!s || idx.count(s)) continue;
    idx[s] = static_cast<int>(d.states.size());
    d.states.push_back(s);
  }
  for (std::size_t qi = 0; qi < d.states.size(); ++qi) {
    d.delta.emplace_back(p.label_count(), -1);
    for (Label a = 0; a < p.label_count(); ++a) {
      VSet T = p.step(d.states[qi], a);
      if (!T) continue;
      auto it = idx.find(T);
      int j;
      if (it == idx.end()) {
        j = static_cast<int>(d.states.size());
        idx[T] = j;
        d.states.push_back(T);
        if (d.states.size() > budget) throw BudgetExhausted("subset automaton");
      } else {
        j = it->second;
      }
      d.delta[qi][a] = j;
    }
  }
  return d;
}

std::vector<VSet> forward_subset_family(const Presentation& p) {
  return determinize(p, {p.all_vertices()}).states;
}

std::vector<VSet> backward_readable_family(const Presentation& p) {
  // sets L with L = {v : some word w readable from v}, built by prepending
  // symbols: L' = sources of a-edges whose target lies in L
  std::vector<VSet> states{p.all_vertices()};
  std::map<VSet, int> idx{{p.all_vertices(), 0}};
  for (std::size_t qi = 0; qi < states.size(); ++qi) {
    for (Label a = 0; a < p.label_count(); ++a) {
      VSet T = p.step_back(states[qi], a);
      if (!T || idx.count(T)) continue;
      idx[T] = static_cast<int>(states.size());
      states.push_back(T);
    }
  }
  return states;
}

std::vector<VSet> accessible_sets(const Presentation& p) {
  std::vector<VSet> seeds;
  for (Vertex v = 0; v < p.vertex_count(); ++v) seeds.push_back(mask_bit(v));
  return determinize(p, seeds).states;
}

// -------------------------------------------------------- resolving / degree

bool is_right_resolving(const Presentation& p) {
  for (Vertex v = 0; v < p.vertex_count(); ++v)
    for (Label a = 0; a < p.label_count(); ++a)
      if (p.out_edges_labeled(v, a).size() > 1) return false;
  return true;
}

bool is_left_resolving(const Presentation& p) {
  for (Vertex v = 0; v < p.vertex_count(); ++v)
    for (Label a = 0; a < p.label_count(); ++a)
      if (p.in_edges_labeled(v, a).size() > 1) return false;
  return true;
}

FiniteToOneResult is_finite_to_one(const Presentation& p) {
  // pair automaton over distinct same-label edge pairs leaving one vertex;
  // a diamond exists iff some reachable pair has equal targets
  struct PairKey {
    Vertex u, v;
    bool operator<(const PairKey& o) const {
      return std::tie(u, v) < std::tie(o.u, o.v);
    }
  };
  std::vector<std::pair<PairKey, std::pair<EdgeId, EdgeId>>> worklist;
  std::map<PairKey, std::pair<EdgeId, EdgeId>> seen;
  for (Vertex v = 0; v < p.vertex_count(); ++v) {
    for (Label a = 0; a < p.label_count(); ++a) {
      const auto& es = p.out_edges_labeled(v, a);
      for (std::size_t i = 0; i < es.size(); ++i) {
        for (std::size_t j = i + 1; j < es.size(); ++j) {
          PairKey k{p.dst(es[i]), p.dst(es[j])};
          if (k.u == k.v) return {false, std::make_pair(es[i], es[j])};
          if (!seen.count(k)) {
            seen[k] = {es[i], es[j]};
            worklist.push_back({k, {es[i], es[j]}});
          }
        }
      }
    }
  }
  for (std::size_t qi = 0; qi < worklist.size(); ++qi) {
    auto [k, seed] = worklist[qi];
    for (Label a = 0; a < p.label_count(); ++a) {
      for (EdgeId e : p.out_edges_labeled(k.u, a)) {
        for (EdgeId f : p.out_edges_labeled(k.v, a)) {
          if (p.dst(e) == p.dst(f)) return {false, seed};
          PairKey k2{p.dst(e), p.dst(f)};
          if (!seen.count(k2)) {
            seen[k2] = seed;
            worklist.push_back({k2, seed});
          }
        }
      }
    }
  }
  return {true, std::nullopt};
}

DegreeResult degree_finite_to_one(const Presentation& p) {
  auto fto = is_finite_to_one(p);
  if (!fto.finite_to_one)
    throw InputError("degree is only defined for finite-to-one codes");

  // BFS families with parents for witness-word reconstruction
  struct Family {
    std::vector<VSet> sets;
    std::map<VSet, std::pair<VSet, Label>> parent;  // absent for roots
  };
  auto explore = [&](bool forward) {
    Family fam;
    VSet root = p.all_vertices();
    fam.sets.push_back(root);
    std::map<VSet, bool> seen{{root, true}};
    for (std::size_t qi = 0; qi < fam.sets.size(); ++qi) {
      VSet S = fam.sets[qi];
      for (Label a = 0; a < p.label_count(); ++a) {
        VSet T = forward ? p.step(S, a) : p.step_back(S, a);
        if (!T || seen.count(T)) continue;
        seen[T] = true;
        fam.parent[T] = {S, a};
        fam.sets.push_back(T);
      }
    }
    return fam;
  };
  Family fwd = explore(true);   // endpoint sets T(u) of words u
  Family bwd = explore(false);  // readable-from sets H(v) of words v

  int best = p.edge_count() + 1;
  VSet bestT = 0, bestH = 0;
  Label bestA = 0;
  ESet bestEdges = 0;
  for (VSet T : fwd.sets) {
    for (Label a = 0; a < p.label_count(); ++a) {
      std::vector<EdgeId> cand;
      for (EdgeId e : p.edges_labeled(a))
        if (mask_has(T, p.src(e))) cand.push_back(e);
      if (cand.empty()) continue;
      for (VSet H : bwd.sets) {
        ESet hit = 0;
        int cnt = 0;
        for (EdgeId e : cand)
          if (mask_has(H, p.dst(e))) {
            hit |= mask_bit(e);
            ++cnt;
          }
        if (cnt > 0 && cnt < best) {
          best = cnt;
          bestT = T;
          bestA = a;
          bestH = H;
          bestEdges = hit;
        }
      }
    }
  }
  (void)bestEdges;

  auto unwind = [](const Family& fam, VSet S) {
    Word w;
    auto it = fam.parent.find(S);
    while (it != fam.parent.end()) {
      w.push_back(it->second.second);
      S = it->second.first;
      it = fam.parent.find(S);
    }
    return w;  // letters in walk-back order
  };
  Word u = unwind(fwd, bestT);           // appended forward: reverse for read order
  std::reverse(u.begin(), u.end());
  Word v = unwind(bwd, bestH);           // prepended: walk-back order = read order
  Word witness = u;
  witness.push_back(bestA);
  witness.insert(witness.end(), v.begin(), v.end());
  return DegreeResult{best, witness, static_cast<int>(u.size()) + 1, true};
}

// ------------------------------------------------------------------- random

Presentation random_presentation(const RandomSpec& spec) {
  if (spec.vertices < 1 || spec.vertices > kMaxVertices)
    throw InputError("random spec: vertex count out of range 1..64");
  if (spec.edges < 1 || spec.edges > kMaxEdges)
    throw InputError("random spec: edge count out of range 1..64");
  if (spec.labels < 1) throw InputError("random spec: need at least one label");
  if (spec.edges < spec.vertices)
    throw InputError("random spec infeasible: strong connectivity needs at least "
                     "as many edges as vertices");

  auto label_name = [](int i) {
    std::string n;
    n += static_cast<char>('a' + i % 26);
    if (i >= 26) n += std::to_string(i / 26);
    return n;
  };

  std::mt19937_64 rng(spec.seed);
  auto pick = [&](int n) { return static_cast<int>(rng() % static_cast<unsigned>(n)); };

  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::vector<Presentation::RawEdge> edges;
    for (int i = 0; i < spec.edges; ++i) {
      int s = pick(spec.vertices);
      int t = pick(spec.vertices);
      int a = pick(spec.labels);
      edges.push_back({s, t, label_name(a), ""});
    }
    Presentation p = Presentation::build(spec.vertices, edges, false);
    if (p.is_irreducible()) return p;
  }
  throw InputError("random spec infeasible: no irreducible graph found after "
                   "1000 attempts");
}

}  // namespace factor
