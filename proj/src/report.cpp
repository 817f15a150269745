#include "factor/report.hpp"

#include <cstdint>
#include <iomanip>
#include <sstream>
#include <string>

namespace factor {
namespace {

Json tri(const std::optional<bool>& v) {
  return v.has_value() ? Json(*v) : Json(nullptr);
}

Json opt_int(const std::optional<int>& v) {
  return v.has_value() ? Json(*v) : Json(nullptr);
}

Json signature_json(const Presentation& p, const Signature& s) {
  return Json{{"first", p.edge_name(s.first)}, {"last", p.edge_name(s.last)}};
}

}  // namespace

std::string input_digest(const std::string& text) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

Json depth_value(int value) {
  return value == kDepthInfinite ? Json("infinite") : Json(value);
}

Json word_json(const Presentation& p, const Word& w) {
  return Json(p.format_word(w));
}

Json path_json(const Presentation& p, const Path& path) {
  Json out = Json::array();
  for (EdgeId e : path) out.push_back(p.edge_name(e));
  return out;
}

Json vset_json(const Presentation& p, VSet s) {
  Json out = Json::array();
  for (int v : mask_to_list(s)) out.push_back(p.vertex_name(v));
  return out;
}

Json eset_json(const Presentation& p, ESet s) {
  Json out = Json::array();
  for (int e : mask_to_list(s)) out.push_back(p.edge_name(e));
  return out;
}

Json lasso_json(const Presentation& p, const Lasso& x) {
  return Json{
      {"left_cycle", path_json(p, x.left_cycle())},
      {"spoke", path_json(p, x.spoke())},
      {"right_cycle", path_json(p, x.right_cycle())},
      {"labels",
       Json{{"left_cycle", word_json(p, p.word_of(x.left_cycle()))},
            {"spoke", word_json(p, p.word_of(x.spoke()))},
            {"right_cycle", word_json(p, p.word_of(x.right_cycle()))}}},
  };
}

Json presentation_report(const Presentation& p) {
  Json vertices = Json::array();
  for (Vertex v = 0; v < p.vertex_count(); ++v)
    vertices.push_back(p.vertex_name(v));
  Json labels = Json::array();
  for (Label a = 0; a < p.label_count(); ++a)
    labels.push_back(p.label_name(a));
  Json edges = Json::array();
  for (EdgeId e = 0; e < p.edge_count(); ++e) {
    edges.push_back(Json{{"name", p.edge_name(e)},
                         {"src", p.vertex_name(p.src(e))},
                         {"dst", p.vertex_name(p.dst(e))},
                         {"label", p.label_name(p.label(e))}});
  }
  return Json{{"vertices", vertices},
              {"labels", labels},
              {"edges", edges},
              {"right_resolving", is_right_resolving(p)},
              {"left_resolving", is_left_resolving(p)}};
}

Json depth_report(const Presentation& p, const DepthResult& r) {
  Json out{{"analysis", "depth"}, {"value", depth_value(r.value)}};
  if (r.certificate.has_value()) {
    const DepthCertificate& c = *r.certificate;
    Json wits = Json::array();
    for (const auto& [sig, path] : c.witnesses)
      wits.push_back(Json{{"signature", signature_json(p, sig)},
                          {"path", path_json(p, path)}});
    out["certificate"] = Json{{"word", word_json(p, c.word)},
                              {"position", c.position},
                              {"routing_set", eset_json(p, c.routing_set)},
                              {"witnesses", wits}};
  } else {
    out["certificate"] = nullptr;
  }
  return out;
}

Json t_depth_report(const Presentation& p, const TangledPartitionResult& r) {
  Json sigs = Json::array();
  for (const Signature& s : r.sigs) sigs.push_back(signature_json(p, s));
  Json cells = Json::array();
  for (const auto& cell : r.cells) {
    Json c = Json::array();
    for (const Signature& s : cell) c.push_back(signature_json(p, s));
    cells.push_back(c);
  }
  Json wits = Json::array();
  for (const auto& w : r.witnesses)
    wits.push_back(Json{{"from", signature_json(p, w.from)},
                        {"to", signature_json(p, w.to)},
                        {"via", path_json(p, w.via)}});
  return Json{{"analysis", "t-depth"},
              {"word", word_json(p, r.word)},
              {"value", r.value},
              {"signatures", sigs},
              {"cells", cells},
              {"witnesses", wits}};
}

Json degree_report(const Presentation& p, const DegreeResult& r) {
  return Json{{"analysis", "degree"},
              {"value", r.value},
              {"witness", word_json(p, r.witness)},
              {"position", r.position},
              {"certified", r.certified}};
}

Json finite_to_one_report(const Presentation& p, const FiniteToOneResult& r) {
  Json out{{"analysis", "finite-to-one"}, {"finite_to_one", r.finite_to_one}};
  if (r.diamond_seed.has_value())
    out["diamond_seed"] = Json::array({p.edge_name(r.diamond_seed->first),
                                       p.edge_name(r.diamond_seed->second)});
  else
    out["diamond_seed"] = nullptr;
  return out;
}

Json class_degree_report(const Presentation& p, const ClassDegreeResult& r) {
  Json out{{"analysis", "class-degree"},
           {"value", depth_value(r.value)},
           {"witness", word_json(p, r.witness)},
           {"certified", r.certified},
           {"horizon", r.horizon}};
  out["partition"] =
      r.partition.has_value() ? t_depth_report(p, *r.partition) : Json(nullptr);
  return out;
}

Json class_count_bounds_report(const Presentation& p,
                               const ClassCountBounds& r) {
  Json family = Json::array();
  for (const Lasso& x : r.certified_family) family.push_back(lasso_json(p, x));
  return Json{{"analysis", "class-count-bounds"},
              {"side", side_name(r.side)},
              {"lower", r.lower},
              {"upper", r.upper},
              {"upper_power", r.upper_power},
              {"upper_by_power", r.upper_by_power},
              {"certified_family", family}};
}

Json closing_report(const Presentation& p, const ClosingVerdict& v) {
  Json out{{"analysis", "class-closing"},
           {"side", side_name(v.side)},
           {"closing", v.closing},
           {"delay", opt_int(v.delay)},
           {"states_explored", v.states_explored}};
  if (v.counterexample.has_value()) {
    const ClosingCounterexample& ce = *v.counterexample;
    out["counterexample"] =
        Json{{"branch_vertex", p.vertex_name(ce.branch_vertex)},
             {"shared_cycle", path_json(p, ce.shared_cycle)},
             {"alpha_stem", path_json(p, ce.alpha_stem)},
             {"alpha_cycle", path_json(p, ce.alpha_cycle)},
             {"beta_stem", path_json(p, ce.beta_stem)},
             {"beta_cycle", path_json(p, ce.beta_cycle)},
             {"alpha_point", lasso_json(p, ce.alpha_point(p))},
             {"beta_point", lasso_json(p, ce.beta_point(p))}};
  } else {
    out["counterexample"] = nullptr;
  }
  return out;
}

Json cover_report(const Presentation& p, const SubsetCover& c) {
  Json states = Json::array();
  for (VSet s : c.states) states.push_back(subset_state_name(p, s));
  Json edges = Json::array();
  for (const CoverEdge& e : c.edges)
    edges.push_back(Json{{"from", subset_state_name(p, c.states[e.from])},
                         {"label", p.label_name(e.label)},
                         {"to", subset_state_name(p, c.states[e.to])}});
  Json sink_sets = Json::array();
  for (VSet s : c.sink_sets) sink_sets.push_back(subset_state_name(p, s));
  const ClosingDelay right = right_closing_delay(c.sink);
  const ClosingDelay left = left_closing_delay(c.sink);
  return Json{{"analysis", "subset-cover"},
              {"seed", p.vertex_name(c.seed)},
              {"states", states},
              {"edges", edges},
              {"sink_states", sink_sets},
              {"sink", presentation_report(c.sink)},
              {"sink_right_closing",
               Json{{"closing", right.closing}, {"delay", opt_int(right.delay)}}},
              {"sink_left_closing",
               Json{{"closing", left.closing}, {"delay", opt_int(left.delay)}}}};
}

Json aft_report(const Presentation& p, const AftWitness& w) {
  return Json{{"analysis", "almost-finite-type-witness"},
              {"code_delay_right", w.code_delay_right},
              {"code_delay_left", w.code_delay_left},
              {"left_delay_bound", w.left_delay_bound},
              {"sink_right_delay", w.sink_right_delay},
              {"sink_left_delay", w.sink_left_delay},
              {"cover", cover_report(p, w.cover)}};
}

Json sft_report(const Presentation& p, const SftResult& r, int instantiate) {
  Json out{{"analysis", "image-sft"},
           {"is_sft", r.is_sft},
           {"step", opt_int(r.step)}};
  if (r.witness.has_value()) {
    const SftWitness& w = *r.witness;
    Json members = Json::array();
    for (int k = 0; k < instantiate; ++k) {
      Word uc = w.u;
      Word cv;
      for (int i = 0; i < k; ++i) uc.insert(uc.end(), w.c.begin(), w.c.end());
      for (int i = 0; i < k; ++i) cv.insert(cv.end(), w.c.begin(), w.c.end());
      cv.insert(cv.end(), w.v.begin(), w.v.end());
      Word ucv = uc;
      ucv.insert(ucv.end(), w.v.begin(), w.v.end());
      members.push_back(Json{{"k", k},
                             {"left", word_json(p, uc)},
                             {"left_in_language", in_language(p, uc)},
                             {"right", word_json(p, cv)},
                             {"right_in_language", in_language(p, cv)},
                             {"joined", word_json(p, ucv)},
                             {"joined_in_language", in_language(p, ucv)}});
    }
    out["witness"] = Json{{"u", word_json(p, w.u)},
                          {"c", word_json(p, w.c)},
                          {"v", word_json(p, w.v)},
                          {"family", members}};
  } else {
    out["witness"] = nullptr;
  }
  return out;
}

Json continuing_report(const Presentation& p, const ContinuingResult& r) {
  Json out{{"analysis", "continuing"},
           {"side", side_name(r.side)},
           {"continuing", tri(r.continuing)},
           {"retract", opt_int(r.retract)},
           {"max_retract", r.max_retract},
           {"orientation", r.side == Side::kRight ? "as given" : "reversed"}};
  if (r.witness.has_value()) {
    const ContinuingWitness& w = *r.witness;
    out["witness"] = Json{{"x_left_cycle", path_json(p, w.x_left_cycle)},
                          {"x_right_cycle", path_json(p, w.x_right_cycle)},
                          {"y_tail", word_json(p, w.y_tail)}};
  } else {
    out["witness"] = nullptr;
  }
  return out;
}

Json ctc_report(const CtcVerdict& v) {
  Json route1{{"decided", v.stabilization_length.has_value()},
              {"stabilization_length", opt_int(v.stabilization_length)}};
  Json route2{{"decided", v.route2.has_value()},
              {"image_sft", tri(v.image_sft)},
              {"sft_step", opt_int(v.sft_step)},
              {"right_class_closing", tri(v.closing_right)},
              {"left_class_closing", tri(v.closing_left)},
              {"verdict", tri(v.route2)}};
  Json agree = nullptr;
  if (v.stabilization_length.has_value() && v.route2.has_value())
    agree = Json(*v.route2 == true);
  return Json{{"analysis", "constant-class-to-one"},
              {"verdict", tri(v.constant)},
              {"class_degree", depth_value(v.d)},
              {"class_degree_certified", v.d_certified},
              {"horizon", v.horizon},
              {"routes", Json{{"depth_stabilization", route1},
                              {"finite_type_closing", route2},
                              {"agree", agree}}}};
}

Json shell_report(const Presentation& p, const MultiplicityShell& s) {
  Json words = Json::array();
  for (const Word& w : s.forbidden_words) words.push_back(word_json(p, w));
  Json out{{"analysis", "multiplicity-shell"},
           {"side", side_name(s.side)},
           {"class_degree", depth_value(s.d)},
           {"class_degree_certified", s.d_certified},
           {"horizon", s.horizon},
           {"forbidden_words", words},
           {"side_class_closing", s.side_class_closing},
           {"horizon_limited", s.horizon_limited},
           {"shell_states", s.shell_states},
           {"shell_edges", s.shell_edges}};
  out["shell"] =
      s.shell.has_value() ? presentation_report(*s.shell) : Json(nullptr);
  out["sampling_subshift_ok"] = tri(s.sampling_subshift_ok);
  return out;
}

Json implication_suite_report(const ImplicationReport& r) {
  Json list = Json::array();
  for (const ImplicationOutcome& o : r.implications)
    list.push_back(Json{{"name", o.name},
                        {"checked", o.checked},
                        {"holds", o.holds},
                        {"detail", o.detail}});
  const int total = r.checked + r.skipped;
  Json violations = Json::array();
  for (const std::string& v : r.violations) violations.push_back(v);
  return Json{{"analysis", "implication-suite"},
              {"implications", list},
              {"checked", r.checked},
              {"skipped", r.skipped},
              {"skip_rate", total ? static_cast<double>(r.skipped) / total : 0.0},
              {"violations", violations}};
}

}  // namespace factor
