#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <string>

#include "json.hpp"

#if defined(_WIN32)
#error "the CLI tests drive the binary through popen and need a POSIX shell"
#endif
#include <sys/wait.h>

namespace {

struct RunResult {
  int code = -1;
  std::string out;
};

RunResult run_cli(const std::string& args, bool merge_stderr = true) {
  std::string cmd = std::string(CLI_PATH) + " " + args;
  cmd += merge_stderr ? " 2>&1" : " 2>/dev/null";
  RunResult r;
  FILE* f = popen(cmd.c_str(), "r");
  if (!f) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, f)) > 0) r.out.append(buf, n);
  const int status = pclose(f);
  if (WIFEXITED(status)) r.code = WEXITSTATUS(status);
  return r;
}

std::string fixture(const std::string& name) {
  return std::string(FIXTURES_DIR) + "/" + name;
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

nlohmann::json strip_timing(const std::string& text) {
  nlohmann::json doc = nlohmann::json::parse(text);
  doc.erase("timing");
  return doc;
}

}  // namespace

TEST_CASE("validate summarizes a good file and flags a bad one") {
  const RunResult ok = run_cli("validate " + fixture("right_resolving.sg"));
  CHECK(ok.code == 0);
  CHECK(contains(ok.out, "vertices: 3, edges: 6, labels: 3"));
  CHECK(contains(ok.out, "right resolving: yes"));
  CHECK(contains(ok.out, "finite-to-one: yes"));
  CHECK(contains(ok.out, "degree: 1"));

  const RunResult bad = run_cli("validate " + fixture("broken.sg"));
  CHECK(bad.code == 1);
  CHECK(contains(bad.out, "error:"));
  CHECK(contains(bad.out, "line"));
}

TEST_CASE("a missing input file is an input error") {
  const RunResult r = run_cli("validate " + fixture("no_such_file.sg"));
  CHECK(r.code == 1);
  CHECK(contains(r.out, "error:"));
}

TEST_CASE("no subcommand is a usage error") {
  const RunResult r = run_cli("");
  CHECK(r.code == 1);
}

TEST_CASE("depth subcommand prints both depth notions") {
  const RunResult r =
      run_cli("depth " + fixture("depth_gap.sg") + " --word abcd");
  CHECK(r.code == 0);
  CHECK(contains(r.out, "word: abcd"));
  CHECK(contains(r.out, "depth: 2"));
  CHECK(contains(r.out, "position 2"));
  CHECK(contains(r.out, "t-depth: 1"));
}

TEST_CASE("depth reports structured JSON with the envelope") {
  const RunResult r = run_cli("depth " + fixture("depth_gap.sg") +
                              " --word abcd --json");
  REQUIRE(r.code == 0);
  const nlohmann::json doc = nlohmann::json::parse(r.out);
  CHECK(doc["tool"] == "factor-analyzer");
  CHECK(doc["command"] == "depth");
  CHECK(doc["verdict"] == "definite");
  CHECK(doc["input_digest"].get<std::string>().size() == 16);
  CHECK(doc["flags"].contains("threads"));
  CHECK(doc["flags"].contains("budget"));
  CHECK(doc["analysis"]["depth"]["value"] == 2);
  CHECK(doc["analysis"]["t_depth"]["value"] == 1);
  CHECK(doc.contains("timing"));
}

TEST_CASE("a word outside the image language is an input error") {
  const RunResult r =
      run_cli("depth " + fixture("right_resolving.sg") + " --word 22");
  CHECK(r.code == 1);
  CHECK(contains(r.out, "error:"));
}

TEST_CASE("a zero signature cutoff exhausts the budget") {
  const RunResult r = run_cli("depth " + fixture("depth_gap.sg") +
                              " --word abcd --cutoff 0");
  CHECK(r.code == 2);
  CHECK(contains(r.out, "budget exhausted"));
}

TEST_CASE("bridges subcommand lists the signature matrix") {
  const RunResult r =
      run_cli("bridges " + fixture("depth_gap.sg") + " --word abcd");
  CHECK(r.code == 0);
  CHECK(contains(r.out, "signature"));
  CHECK(contains(r.out, "bridge"));
  CHECK(contains(r.out, "two-way"));
}

TEST_CASE("closing subcommand handles both sides in one run") {
  const RunResult r =
      run_cli("closing " + fixture("aft_cover.sg") + " --side both");
  CHECK(r.code == 0);
  CHECK(contains(r.out, "right class-closing: yes"));
  CHECK(contains(r.out, "left class-closing: yes"));
  CHECK(contains(r.out, "(delay 2)"));
}

TEST_CASE("closing counterexample is printed for a non-closing side") {
  const RunResult r =
      run_cli("closing " + fixture("right_resolving.sg") + " --side left");
  CHECK(r.code == 0);
  CHECK(contains(r.out, "left class-closing: no"));
  CHECK(contains(r.out, "counterexample"));
  CHECK(contains(r.out, "inf("));
}

TEST_CASE("closing --max-delay adds the finite condition check") {
  const RunResult hold = run_cli("closing " + fixture("aft_cover.sg") +
                                 " --side right --max-delay 2 --json");
  REQUIRE(hold.code == 0);
  const nlohmann::json doc = nlohmann::json::parse(hold.out);
  CHECK(doc["analysis"]["right"]["condition_check"]["holds"] == true);

  const RunResult fail = run_cli("closing " + fixture("aft_cover.sg") +
                                 " --side right --max-delay 1 --json");
  REQUIRE(fail.code == 0);
  const nlohmann::json doc2 = nlohmann::json::parse(fail.out);
  CHECK(doc2["analysis"]["right"]["condition_check"]["holds"] == false);
  CHECK(doc2["analysis"]["right"]["condition_check"].contains("path_a"));
}

TEST_CASE("class-degree exits 0 only when certified") {
  const RunResult sure = run_cli("class-degree " + fixture("depth_gap.sg"));
  CHECK(sure.code == 0);
  CHECK(contains(sure.out, "class degree: 1"));

  const RunResult deep = run_cli("class-degree " + fixture("two_cycle.sg"));
  CHECK(deep.code == 0);
  CHECK(contains(deep.out, "class degree: 2"));

  const RunResult shy =
      run_cli("class-degree " + fixture("two_cycle.sg") + " --max-len 8");
  CHECK(shy.code == 2);
  CHECK(contains(shy.out, "not certified"));
}

TEST_CASE("subset subcommand reports the sink and can emit DOT") {
  const RunResult r =
      run_cli("subset " + fixture("aft_cover.sg") + " --dot -");
  CHECK(r.code == 0);
  CHECK(contains(r.out, "sink:"));
  CHECK(contains(r.out, "{I,K}"));
  CHECK(contains(r.out, "digraph"));
  CHECK(contains(r.out, "doublecircle"));
  CHECK(contains(r.out, "sink right-closing: yes (delay 0)"));
  CHECK(contains(r.out, "sink left-closing: yes (delay 1)"));
}

TEST_CASE("subset rejects an unknown seed vertex") {
  const RunResult r =
      run_cli("subset " + fixture("aft_cover.sg") + " --seed Z");
  CHECK(r.code == 1);
  CHECK(contains(r.out, "unknown seed vertex"));
}

TEST_CASE("ctc verdicts and exit codes") {
  const RunResult yes = run_cli("ctc " + fixture("fibre_mixing.sg") + " --json");
  REQUIRE(yes.code == 0);
  const nlohmann::json doc = nlohmann::json::parse(yes.out);
  CHECK(doc["verdict"] == "definite");
  CHECK(doc["analysis"]["verdict"] == true);
  CHECK(doc["analysis"]["routes"]["depth_stabilization"]["stabilization_length"] ==
        7);
  CHECK(doc["analysis"]["routes"]["finite_type_closing"]["verdict"] == true);
  CHECK(doc["analysis"]["routes"]["agree"] == true);

  const RunResult no = run_cli("ctc " + fixture("right_resolving.sg"));
  CHECK(no.code == 0);
  CHECK(contains(no.out, "constant-class-to-one: no"));

  // A starved budget leaves every route inconclusive: exit 2.
  const RunResult starved =
      run_cli("ctc " + fixture("right_resolving.sg") + " --budget 1");
  CHECK(starved.code == 2);
  CHECK(contains(starved.out, "inconclusive"));
}

TEST_CASE("continuing subcommand on both verdict kinds") {
  const RunResult no =
      run_cli("continuing " + fixture("right_resolving.sg") + " --side left");
  CHECK(no.code == 0);
  CHECK(contains(no.out, "left continuing: no"));
  CHECK(contains(no.out, "witness x = inf(e6) . (e2,e1)inf"));
  CHECK(contains(no.out, "y tail = 11120"));

  const RunResult yes =
      run_cli("continuing " + fixture("fibre_mixing.sg") + " --side right");
  CHECK(yes.code == 0);
  CHECK(contains(yes.out, "right continuing: yes"));
  CHECK(contains(yes.out, "(retract 2)"));
}

TEST_CASE("image-sft subcommand reports steps and witness families") {
  const RunResult sft = run_cli("image-sft " + fixture("fibre_mixing.sg"));
  CHECK(sft.code == 0);
  CHECK(contains(sft.out, "image is finite-type: yes"));
  CHECK(contains(sft.out, "(step 2)"));

  const RunResult not_sft = run_cli("image-sft " + fixture("aft_cover.sg"));
  CHECK(not_sft.code == 0);
  CHECK(contains(not_sft.out, "image is finite-type: no"));
  CHECK(contains(not_sft.out, "witness family"));

  const RunResult json_run =
      run_cli("image-sft " + fixture("aft_cover.sg") + " --horizon 3 --json");
  REQUIRE(json_run.code == 0);
  const nlohmann::json doc = nlohmann::json::parse(json_run.out);
  CHECK(doc["analysis"]["is_sft"] == false);
  CHECK(doc["analysis"]["witness_family"].size() == 3);
}

TEST_CASE("shell subcommand prints the forbidden words") {
  const RunResult r =
      run_cli("shell " + fixture("right_resolving.sg") + " --side right");
  CHECK(r.code == 0);
  CHECK(contains(r.out, "forbidden words (8):"));
  CHECK(contains(r.out, "010"));
  CHECK(contains(r.out, "shell automaton: 1 state(s), 1 edge(s)"));
  CHECK(contains(r.out, "side class-closing: yes"));
}

TEST_CASE("export-dot emits the graph") {
  const RunResult r =
      run_cli("export-dot " + fixture("right_resolving.sg") + " --out -");
  CHECK(r.code == 0);
  CHECK(contains(r.out, "digraph"));
  for (const char* e : {"e1", "e2", "e3", "e4", "e5", "e6"})
    CHECK(contains(r.out, e));
}

TEST_CASE("random generation is deterministic and validates its spec") {
  const RunResult infeasible =
      run_cli("random --vertices 3 --edges 2 --labels 2");
  CHECK(infeasible.code == 1);
  CHECK(contains(infeasible.out, "error:"));

  const std::string spec = "random --vertices 4 --edges 8 --labels 2 --seed 7";
  const RunResult a = run_cli(spec, false);
  const RunResult b = run_cli(spec, false);
  CHECK(a.code == 0);
  CHECK(b.code == 0);
  CHECK(!a.out.empty());
  CHECK(a.out == b.out);
  CHECK(contains(a.out, "vertices:"));

  const RunResult tiny =
      run_cli("random --vertices 1 --edges 2 --labels 2 --seed 0", false);
  CHECK(tiny.code == 0);
  int edge_lines = 0;
  for (std::size_t pos = 0; (pos = tiny.out.find("edge ", pos)) !=
                            std::string::npos;
       ++pos)
    ++edge_lines;
  CHECK(edge_lines == 2);
}

TEST_CASE("check-all passes and its JSON is deterministic") {
  for (const char* f : {"right_resolving.sg", "aft_cover.sg", "identity.sg"}) {
    const std::string cmd = "check-all " + fixture(f) + " --json";
    const RunResult a = run_cli(cmd, false);
    const RunResult b = run_cli(cmd, false);
    INFO(f);
    REQUIRE(a.code == 0);
    REQUIRE(b.code == 0);
    CHECK(strip_timing(a.out) == strip_timing(b.out));
    const nlohmann::json doc = strip_timing(a.out);
    CHECK(doc["analysis"]["violations"].empty());
  }
}

TEST_CASE("check-all human output lists per-implication lines") {
  const RunResult r = run_cli("check-all " + fixture("identity.sg"));
  CHECK(r.code == 0);
  CHECK(contains(r.out, "[ ok ]"));
  CHECK(contains(r.out, "no violations"));
  CHECK(!contains(r.out, "[FAIL]"));
}
