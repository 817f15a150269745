// Command-line front door: parse a presentation, dispatch one analysis,
// print a human summary or (under --json) a machine-readable report.
// Exit codes: 0 definite verdict, 1 input error, 2 inconclusive or budget
// exhausted.

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "factor/bridges.hpp"
#include "factor/class_closing.hpp"
#include "factor/class_degree.hpp"
#include "factor/ctc.hpp"
#include "factor/presentation.hpp"
#include "factor/report.hpp"
#include "factor/subset_sink.hpp"

namespace {

constexpr const char* kToolName = "factor-analyzer";
constexpr const char* kToolVersion = "1.0.0";

struct Global {
  bool json = false;
  int threads = 1;
  std::uint64_t budget = std::uint64_t{1} << 20;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw factor::InputError("cannot read file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string presentation_file_text(const factor::Presentation& p) {
  std::ostringstream os;
  os << "vertices:";
  for (factor::Vertex v = 0; v < p.vertex_count(); ++v)
    os << ' ' << p.vertex_name(v);
  os << '\n';
  for (factor::EdgeId e = 0; e < p.edge_count(); ++e)
    os << "edge " << p.edge_name(e) << ' ' << p.vertex_name(p.src(e)) << ' '
       << p.vertex_name(p.dst(e)) << ' ' << p.label_name(p.label(e)) << '\n';
  return os.str();
}

std::string fmt_depth(int value) {
  return value == factor::kDepthInfinite ? std::string("infinite")
                                         : std::to_string(value);
}

std::string fmt_tri(const std::optional<bool>& v) {
  if (!v.has_value()) return "inconclusive";
  return *v ? "yes" : "no";
}

factor::Side parse_side(const std::string& s) {
  if (s == "right") return factor::Side::kRight;
  if (s == "left") return factor::Side::kLeft;
  throw factor::InputError("side must be 'right' or 'left': " + s);
}

// Runs one analysis body and emits either the human text or the JSON
// envelope.  The body fills `analysis`/`human` and says whether the verdict
// is definite.
int emit(const Global& g, const std::string& command, const std::string& input,
         const std::string& digest, const factor::Json& flags,
         const std::function<bool(factor::Json&, std::ostream&)>& body) {
  factor::Json analysis;
  std::ostringstream human;
  const auto t0 = std::chrono::steady_clock::now();
  const bool definite = body(analysis, human);
  const auto t1 = std::chrono::steady_clock::now();
  const double ms =
      std::chrono::duration_cast<std::chrono::duration<double, std::milli>>(
          t1 - t0)
          .count();
  if (g.json) {
    factor::Json flat = flags;
    flat["threads"] = g.threads;
    flat["budget"] = g.budget;
    factor::Json env{{"tool", kToolName},
                     {"version", kToolVersion},
                     {"command", command},
                     {"input", input},
                     {"input_digest", digest},
                     {"flags", flat},
                     {"analysis", analysis},
                     {"verdict", definite ? "definite" : "inconclusive"},
                     {"timing", factor::Json{{"elapsed_ms", ms}}}};
    std::cout << env.dump(2) << '\n';
  } else {
    std::cout << human.str();
  }
  return definite ? 0 : 2;
}

std::string dot_of_cover(const factor::Presentation& p,
                         const factor::SubsetCover& c) {
  std::ostringstream os;
  os << "digraph cover {\n  rankdir=LR;\n";
  std::vector<char> in_sink(c.states.size(), 0);
  for (int s : c.sink_vertices) in_sink[s] = 1;
  for (std::size_t i = 0; i < c.states.size(); ++i)
    os << "  \"" << factor::subset_state_name(p, c.states[i]) << "\" [shape="
       << (in_sink[i] ? "doublecircle" : "circle") << "];\n";
  for (const factor::CoverEdge& e : c.edges)
    os << "  \"" << factor::subset_state_name(p, c.states[e.from]) << "\" -> \""
       << factor::subset_state_name(p, c.states[e.to]) << "\" [label=\""
       << p.label_name(e.label) << "\"];\n";
  os << "}\n";
  return os.str();
}

void write_text_output(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw factor::InputError("cannot write file: " + path);
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  using factor::Json;
  using factor::Presentation;

  CLI::App app{"Analyzer for 1-block factor codes on edge-labeled graphs"};
  app.require_subcommand(1);
  app.fallthrough();

  Global g;
  app.add_flag("--json", g.json, "emit a JSON report instead of text");
  app.add_option("--threads", g.threads, "worker threads for word scans")
      ->check(CLI::Range(1, 256));
  app.add_option("--budget", g.budget, "state/entry budget for searches");

  std::string file;
  std::string word_text;
  std::string side_text = "right";
  std::string out_path = "-";
  std::string dot_path;
  std::string seed_name;
  int cutoff = 20;
  int max_len = 14;
  long long plateau = -1;
  int max_delay = -1;
  int horizon_ctc = 8;
  int horizon_sft = 3;
  int horizon_shell = 6;
  int max_retract = 6;
  factor::RandomSpec rnd;
  rnd.vertices = 4;
  rnd.edges = 8;
  rnd.labels = 2;
  rnd.seed = 0;

  CLI::App* validate = app.add_subcommand("validate", "parse and summarize");
  validate->add_option("file", file)->required();

  CLI::App* depth = app.add_subcommand("depth", "depth and t-depth of a word");
  depth->add_option("file", file)->required();
  depth->add_option("--word", word_text, "image word")->required();
  depth->add_option("--cutoff", cutoff, "signature growth cutoff");

  CLI::App* bridges =
      app.add_subcommand("bridges", "bridge structure of a word's preimages");
  bridges->add_option("file", file)->required();
  bridges->add_option("--word", word_text, "image word")->required();
  bridges->add_option("--cutoff", cutoff, "signature growth cutoff");

  CLI::App* cdeg = app.add_subcommand("class-degree", "minimal t-depth");
  cdeg->add_option("file", file)->required();
  cdeg->add_option("--max-len", max_len, "word-length horizon");
  cdeg->add_option("--plateau", plateau, "plateau certification threshold");

  CLI::App* closing = app.add_subcommand("closing", "class-closing decision");
  closing->add_option("file", file)->required();
  closing->add_option("--side", side_text, "right, left, or both");
  closing->add_option("--max-delay", max_delay,
                      "re-verify the finite condition at this delay");

  CLI::App* subset = app.add_subcommand("subset", "subset cover and sink");
  subset->add_option("file", file)->required();
  subset->add_option("--seed", seed_name, "seed vertex name");
  subset->add_option("--dot", dot_path, "write cover DOT here ('-' stdout)");

  CLI::App* ctc = app.add_subcommand("ctc", "constant-class-to-one verdict");
  ctc->add_option("file", file)->required();
  ctc->add_option("--horizon", horizon_ctc, "word-length scan horizon");

  CLI::App* continuing = app.add_subcommand("continuing", "continuing check");
  continuing->add_option("file", file)->required();
  continuing->add_option("--side", side_text, "right or left");
  continuing->add_option("--max-retract", max_retract, "retract horizon");

  CLI::App* imagesft = app.add_subcommand("image-sft", "image finite-type test");
  imagesft->add_option("file", file)->required();
  imagesft->add_option("--horizon", horizon_sft,
                       "witness family members to instantiate");

  CLI::App* shell = app.add_subcommand("shell", "multiplicity set description");
  shell->add_option("file", file)->required();
  shell->add_option("--side", side_text, "right or left");
  shell->add_option("--horizon", horizon_shell, "forbidden-word horizon");

  CLI::App* checkall =
      app.add_subcommand("check-all", "run every analysis and cross-check");
  checkall->add_option("file", file)->required();

  CLI::App* exportdot = app.add_subcommand("export-dot", "emit graph DOT");
  exportdot->add_option("file", file)->required();
  exportdot->add_option("--out", out_path, "output path ('-' stdout)");

  CLI::App* random = app.add_subcommand("random", "generate a presentation");
  random->add_option("--vertices", rnd.vertices, "vertex count");
  random->add_option("--edges", rnd.edges, "edge count");
  random->add_option("--labels", rnd.labels, "label count");
  random->add_option("--seed", rnd.seed, "random seed");
  random->add_option("--out", out_path, "output path ('-' stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (random->parsed()) {
      const Presentation p = factor::random_presentation(rnd);
      const std::string text = presentation_file_text(p);
      if (g.json) {
        Json analysis = factor::presentation_report(p);
        analysis["file_text"] = text;
        Json env{{"tool", kToolName},
                 {"version", kToolVersion},
                 {"command", "random"},
                 {"input", "(generated)"},
                 {"input_digest", factor::input_digest(text)},
                 {"flags", Json{{"vertices", rnd.vertices},
                                {"edges", rnd.edges},
                                {"labels", rnd.labels},
                                {"seed", rnd.seed},
                                {"threads", g.threads},
                                {"budget", g.budget}}},
                 {"analysis", analysis},
                 {"verdict", "definite"},
                 {"timing", Json{{"elapsed_ms", 0.0}}}};
        std::cout << env.dump(2) << '\n';
      } else {
        write_text_output(out_path, text);
      }
      return 0;
    }

    const std::string text = slurp(file);
    const std::string digest = factor::input_digest(text);
    const Presentation p = Presentation::parse_text(text);

    if (validate->parsed()) {
      return emit(g, "validate", file, digest, Json::object(),
                  [&](Json& analysis, std::ostream& human) {
                    analysis = factor::presentation_report(p);
                    const factor::FiniteToOneResult f2o =
                        factor::is_finite_to_one(p);
                    analysis["finite_to_one"] =
                        factor::finite_to_one_report(p, f2o);
                    human << "vertices: " << p.vertex_count()
                          << ", edges: " << p.edge_count()
                          << ", labels: " << p.label_count() << '\n'
                          << "right resolving: "
                          << (factor::is_right_resolving(p) ? "yes" : "no")
                          << ", left resolving: "
                          << (factor::is_left_resolving(p) ? "yes" : "no")
                          << '\n'
                          << "finite-to-one: "
                          << (f2o.finite_to_one ? "yes" : "no") << '\n';
                    if (f2o.finite_to_one) {
                      const factor::DegreeResult dg =
                          factor::degree_finite_to_one(p);
                      analysis["degree"] = factor::degree_report(p, dg);
                      human << "degree: " << dg.value << " (witness "
                            << p.format_word(dg.witness) << ")\n";
                    }
                    return true;
                  });
    }

    if (depth->parsed()) {
      const factor::Word w = p.parse_word(word_text);
      return emit(
          g, "depth", file, digest,
          Json{{"word", word_text}, {"cutoff", cutoff}},
          [&](Json& analysis, std::ostream& human) {
            const factor::DepthResult d = factor::word_depth(p, w, cutoff);
            const factor::TangledPartitionResult t =
                factor::word_t_depth(p, w, cutoff);
            analysis = Json{{"word", factor::word_json(p, w)},
                            {"depth", factor::depth_report(p, d)},
                            {"t_depth", factor::t_depth_report(p, t)}};
            human << "word: " << p.format_word(w) << '\n'
                  << "depth: " << fmt_depth(d.value);
            if (d.certificate.has_value())
              human << "  (position " << d.certificate->position
                    << ", routing set "
                    << factor::eset_json(p, d.certificate->routing_set).dump()
                    << ")";
            human << '\n'
                  << "t-depth: " << t.value << "  (" << t.cells.size()
                  << " cell(s) over " << t.sigs.size() << " signature(s))\n";
            return true;
          });
    }

    if (bridges->parsed()) {
      const factor::Word w = p.parse_word(word_text);
      return emit(
          g, "bridges", file, digest,
          Json{{"word", word_text}, {"cutoff", cutoff}},
          [&](Json& analysis, std::ostream& human) {
            if (!factor::in_language(p, w))
              throw factor::InputError("word is not in the image language: " +
                                       p.format_word(w));
            const factor::DepthResult d = factor::word_depth(p, w, cutoff);
            const auto by_sig = factor::preimages_by_signature(p, w);
            Json sig_list = Json::array();
            std::vector<std::pair<factor::Signature, factor::Path>> reps;
            std::size_t total = 0;
            for (const auto& [sig, paths] : by_sig) {
              total += paths.size();
              reps.push_back({sig, paths.front()});
              sig_list.push_back(
                  Json{{"signature",
                        Json{{"first", p.edge_name(sig.first)},
                             {"last", p.edge_name(sig.last)}}},
                       {"paths", paths.size()},
                       {"representative", factor::path_json(p, paths.front())}});
            }
            Json matrix = Json::array();
            human << "word: " << p.format_word(w) << "  (" << total
                  << " preimage path(s), " << reps.size()
                  << " signature(s))\n"
                  << "depth: " << fmt_depth(d.value) << '\n';
            for (const auto& [s1, p1] : reps) {
              for (const auto& [s2, p2] : reps) {
                if (s1 == s2) continue;
                const bool b = factor::bridge_exists(p, p1, p2);
                const bool t2 = factor::two_way_bridge_exists(p, p1, p2);
                matrix.push_back(
                    Json{{"from", p.edge_name(s1.first) + ".." +
                                      p.edge_name(s1.last)},
                         {"to", p.edge_name(s2.first) + ".." +
                                    p.edge_name(s2.last)},
                         {"bridge", b},
                         {"two_way", t2}});
                human << "  " << p.edge_name(s1.first) << ".."
                      << p.edge_name(s1.last) << " -> " << p.edge_name(s2.first)
                      << ".." << p.edge_name(s2.last) << ": bridge "
                      << (b ? "yes" : "no") << ", two-way "
                      << (t2 ? "yes" : "no") << '\n';
              }
            }
            analysis = Json{{"word", factor::word_json(p, w)},
                            {"depth", factor::depth_report(p, d)},
                            {"preimage_paths", total},
                            {"signatures", sig_list},
                            {"bridge_matrix", matrix}};
            return true;
          });
    }

    if (cdeg->parsed()) {
      return emit(g, "class-degree", file, digest,
                  Json{{"max_len", max_len}, {"plateau", plateau}},
                  [&](Json& analysis, std::ostream& human) {
                    const factor::ClassDegreeResult r = factor::class_degree(
                        p, max_len, plateau, g.threads);
                    analysis = factor::class_degree_report(p, r);
                    human << "class degree: " << fmt_depth(r.value)
                          << (r.certified ? "" : "  (not certified)")
                          << "  (witness " << p.format_word(r.witness)
                          << ", horizon " << r.horizon << ")\n";
                    return r.certified;
                  });
    }

    if (closing->parsed()) {
      const bool both = side_text == "both";
      return emit(
          g, "closing", file, digest,
          Json{{"side", side_text}, {"max_delay", max_delay}},
          [&](Json& analysis, std::ostream& human) {
            std::vector<factor::Side> sides;
            if (both)
              sides = {factor::Side::kRight, factor::Side::kLeft};
            else
              sides = {parse_side(side_text)};
            analysis = Json::object();
            for (factor::Side side : sides) {
              const factor::ClosingVerdict v =
                  factor::check_class_closing(p, side, g.budget);
              Json entry = factor::closing_report(p, v);
              if (max_delay >= 0) {
                const std::optional<Presentation> rev =
                    side == factor::Side::kLeft
                        ? std::optional<Presentation>(p.reversed())
                        : std::nullopt;
                const Presentation& gg = rev ? *rev : p;
                const auto witness =
                    factor::verify_condition4(gg, max_delay, g.budget);
                Json cond{{"delay", max_delay},
                          {"holds", !witness.has_value()}};
                if (witness.has_value()) {
                  cond["root"] = factor::vset_json(gg, witness->root);
                  cond["word"] = factor::word_json(gg, witness->word);
                  cond["path_a"] = factor::path_json(gg, witness->path_a);
                  cond["path_b"] = factor::path_json(gg, witness->path_b);
                }
                entry["condition_check"] = cond;
              }
              analysis[factor::side_name(side)] = entry;
              human << factor::side_name(side) << " class-closing: "
                    << (v.closing ? "yes" : "no");
              if (v.delay.has_value()) human << "  (delay " << *v.delay << ")";
              human << "  [" << v.states_explored << " pair state(s)]\n";
              if (v.counterexample.has_value()) {
                const factor::ClosingCounterexample& ce = *v.counterexample;
                const factor::Lasso a = ce.alpha_point(p);
                const factor::Lasso b = ce.beta_point(p);
                human << "  counterexample at "
                      << p.vertex_name(ce.branch_vertex) << ":\n"
                      << "    x  = inf(" << p.format_path(a.left_cycle())
                      << ") . " << p.format_path(a.spoke()) << " . ("
                      << p.format_path(a.right_cycle()) << ")inf\n"
                      << "    x' = inf(" << p.format_path(b.left_cycle())
                      << ") . " << p.format_path(b.spoke()) << " . ("
                      << p.format_path(b.right_cycle()) << ")inf\n";
              }
            }
            return true;
          });
    }

    if (subset->parsed()) {
      factor::Vertex seed = 0;
      if (!seed_name.empty()) {
        seed = -1;
        for (factor::Vertex v = 0; v < p.vertex_count(); ++v)
          if (p.vertex_name(v) == seed_name) seed = v;
        if (seed < 0)
          throw factor::InputError("unknown seed vertex: " + seed_name);
      }
      return emit(
          g, "subset", file, digest,
          Json{{"seed", seed_name.empty() ? p.vertex_name(0) : seed_name}},
          [&](Json& analysis, std::ostream& human) {
            const factor::SubsetCover c =
                factor::subset_construction(p, seed, g.budget);
            analysis = factor::cover_report(p, c);
            if (!dot_path.empty())
              write_text_output(dot_path, dot_of_cover(p, c));
            human << "cover states: " << c.states.size() << ", sink states: "
                  << c.sink_vertices.size() << '\n';
            human << "sink:";
            for (factor::VSet s : c.sink_sets)
              human << ' ' << factor::subset_state_name(p, s);
            human << '\n';
            const factor::ClosingDelay r = factor::right_closing_delay(c.sink);
            const factor::ClosingDelay l = factor::left_closing_delay(c.sink);
            human << "sink right-closing: " << (r.closing ? "yes" : "no");
            if (r.delay.has_value()) human << " (delay " << *r.delay << ")";
            human << ", sink left-closing: " << (l.closing ? "yes" : "no");
            if (l.delay.has_value()) human << " (delay " << *l.delay << ")";
            human << '\n';
            return true;
          });
    }

    if (ctc->parsed()) {
      return emit(
          g, "ctc", file, digest, Json{{"horizon", horizon_ctc}},
          [&](Json& analysis, std::ostream& human) {
            const factor::CtcVerdict v = factor::check_constant_class_to_one(
                p, horizon_ctc, g.threads, g.budget);
            analysis = factor::ctc_report(v);
            human << "constant-class-to-one: " << fmt_tri(v.constant);
            if (v.constant.has_value() && *v.constant)
              human << "  (every image word deep exactly "
                    << fmt_depth(v.d) << ")";
            human << '\n';
            human << "  class degree: " << fmt_depth(v.d)
                  << (v.d_certified ? "" : " (uncertified)") << '\n';
            human << "  depth stabilization: ";
            if (v.stabilization_length.has_value())
              human << "uniform at length " << *v.stabilization_length << '\n';
            else
              human << "not reached within horizon " << v.horizon << '\n';
            human << "  image finite-type: " << fmt_tri(v.image_sft);
            if (v.sft_step.has_value()) human << " (step " << *v.sft_step << ")";
            human << ", right class-closing: " << fmt_tri(v.closing_right)
                  << ", left class-closing: " << fmt_tri(v.closing_left)
                  << '\n';
            return v.constant.has_value();
          });
    }

    if (continuing->parsed()) {
      const factor::Side side = parse_side(side_text);
      return emit(
          g, "continuing", file, digest,
          Json{{"side", side_text}, {"max_retract", max_retract}},
          [&](Json& analysis, std::ostream& human) {
            const factor::ContinuingResult r =
                factor::check_continuing(p, side, max_retract, g.budget);
            analysis = factor::continuing_report(p, r);
            human << factor::side_name(side)
                  << " continuing: " << fmt_tri(r.continuing);
            if (r.retract.has_value()) human << "  (retract " << *r.retract << ")";
            human << '\n';
            if (r.witness.has_value()) {
              const factor::ContinuingWitness& w = *r.witness;
              human << "  witness x = inf("
                    << p.format_path(w.x_left_cycle) << ") . ("
                    << p.format_path(w.x_right_cycle) << ")inf"
                    << (side == factor::Side::kLeft ? " [reversed orientation]"
                                                    : "")
                    << ", y tail = " << p.format_word(w.y_tail) << '\n';
            }
            return r.continuing.has_value();
          });
    }

    if (imagesft->parsed()) {
      return emit(
          g, "image-sft", file, digest, Json{{"horizon", horizon_sft}},
          [&](Json& analysis, std::ostream& human) {
            const factor::SftResult r = factor::image_is_sft(p, g.budget);
            analysis = factor::sft_report(p, r, horizon_sft);
            human << "image is finite-type: " << (r.is_sft ? "yes" : "no");
            if (r.step.has_value()) human << "  (step " << *r.step << ")";
            human << '\n';
            if (r.witness.has_value())
              human << "  witness family: left '"
                    << p.format_word(r.witness->u) << "', cycle '"
                    << p.format_word(r.witness->c) << "', right '"
                    << p.format_word(r.witness->v)
                    << "' (join is never in the language)\n";
            return true;
          });
    }

    if (shell->parsed()) {
      const factor::Side side = parse_side(side_text);
      return emit(
          g, "shell", file, digest,
          Json{{"side", side_text}, {"horizon", horizon_shell}},
          [&](Json& analysis, std::ostream& human) {
            const factor::MultiplicityShell s =
                factor::multiplicity_shell(p, side, horizon_shell, g.budget);
            analysis = factor::shell_report(p, s);
            human << factor::side_name(side)
                  << " multiplicity shell (class degree " << fmt_depth(s.d)
                  << (s.d_certified ? "" : ", uncertified") << "):\n"
                  << "  forbidden words (" << s.forbidden_words.size() << "):";
            for (const factor::Word& w : s.forbidden_words)
              human << ' ' << p.format_word(w);
            human << '\n'
                  << "  shell automaton: " << s.shell_states << " state(s), "
                  << s.shell_edges << " edge(s)"
                  << (s.horizon_limited ? ", horizon-limited" : "") << '\n'
                  << "  side class-closing: "
                  << (s.side_class_closing ? "yes" : "no") << '\n';
            if (s.sampling_subshift_ok.has_value())
              human << "  sampling consistent with a subshift description: "
                    << (*s.sampling_subshift_ok ? "yes" : "no") << '\n';
            return s.d_certified;
          });
    }

    if (checkall->parsed()) {
      factor::Json analysis;
      std::ostringstream human;
      const auto t0 = std::chrono::steady_clock::now();
      const factor::ImplicationReport rep =
          factor::implication_suite(p, g.budget);
      analysis = factor::implication_suite_report(rep);
      for (const factor::ImplicationOutcome& o : rep.implications) {
        const char* tag = !o.checked ? "skip" : (o.holds ? " ok " : "FAIL");
        human << '[' << tag << "] " << o.name << " — " << o.detail << '\n';
      }
      human << "checked " << rep.checked << ", skipped " << rep.skipped
            << '\n';
      if (rep.violations.empty()) {
        human << "no violations\n";
      } else {
        human << rep.violations.size() << " violation(s):\n";
        for (const std::string& v : rep.violations) human << "  " << v << '\n';
      }
      const auto t1 = std::chrono::steady_clock::now();
      const double ms =
          std::chrono::duration_cast<std::chrono::duration<double, std::milli>>(
              t1 - t0)
              .count();
      if (g.json) {
        Json env{{"tool", kToolName},
                 {"version", kToolVersion},
                 {"command", "check-all"},
                 {"input", file},
                 {"input_digest", digest},
                 {"flags", Json{{"threads", g.threads}, {"budget", g.budget}}},
                 {"analysis", analysis},
                 {"verdict", "definite"},
                 {"timing", Json{{"elapsed_ms", ms}}}};
        std::cout << env.dump(2) << '\n';
      } else {
        std::cout << human.str();
      }
      return rep.violations.empty() ? 0 : 1;
    }

    if (exportdot->parsed()) {
      write_text_output(out_path, p.export_dot());
      return 0;
    }
  } catch (const factor::BudgetExhausted& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const factor::InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  std::cerr << "error: no subcommand executed\n";
  return 1;
}
