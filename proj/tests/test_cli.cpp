#include <cstdio>
#include <string>

#include <doctest.h>
#include <json.hpp>

#ifndef AMRSTLC_CLI_PATH
#error "AMRSTLC_CLI_PATH must point at the command-line binary"
#endif
#ifndef AMRSTLC_FIXTURE_DIR
#error "AMRSTLC_FIXTURE_DIR must point at the fixture directory"
#endif

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;
};

// Runs the binary through the shell, capturing stdout (and stderr when
// merge_stderr). The exit code is the process's own.
RunResult run_cli(const std::string& args, bool merge_stderr = true,
                  const std::string& env_prefix = "") {
  std::string cmd = env_prefix + std::string(AMRSTLC_CLI_PATH) + " " + args +
                    (merge_stderr ? " 2>&1" : " 2>/dev/null");
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult result;
  char buffer[4096];
  for (;;) {
    const size_t n = fread(buffer, 1, sizeof buffer, pipe);
    if (n == 0) break;
    result.output.append(buffer, n);
  }
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::string fx(const std::string& name) {
  return std::string(AMRSTLC_FIXTURE_DIR) + "/" + name;
}

}  // namespace

TEST_CASE("first-order translation to stdout") {
  RunResult r = run_cli("--mode ext " + fx("admire.amr"));
  CHECK(r.exit_code == 0);
  CHECK(r.output ==
        "exists a b . admire-01(a) & ARG0(a)(b) & boy(b) & ARG1(a)(b)\n");
}

TEST_CASE("world-indexed translation to stdout") {
  RunResult r = run_cli("--mode int " + fx("believe-content.amr"));
  CHECK(r.exit_code == 0);
  CHECK(r.output ==
        "\\w . exists b b2 . believe-01(b)(w) & ARG0(b)(b2)(w) & boy(b2)(w) & "
        "cont(b)(\\w2 . exists s g . sick-05(s)(w2) & ARG1(s)(g)(w2) & "
        "girl(g)(w2))(w)\n");
}

TEST_CASE("unicode rendering flag") {
  RunResult r = run_cli("--mode int --unicode " + fx("believe-content.amr"));
  CHECK(r.exit_code == 0);
  CHECK(r.output ==
        "λw . ∃b,b2 . believe-01(b)(w) ∧ ARG0(b)(b2)(w) ∧ boy(b2)(w) ∧ "
        "cont(b)(λw2 . ∃s,g . sick-05(s)(w2) ∧ ARG1(s)(g)(w2) ∧ "
        "girl(g)(w2))(w)\n");
}

TEST_CASE("triple listing") {
  RunResult r = run_cli("--mode triples " + fx("hug.amr"));
  CHECK(r.exit_code == 0);
  CHECK(r.output ==
        "instance(h, hug-01)\n"
        "instance(b, boy)\n"
        "ARG0(h, b)\n"
        "instance(d, dog)\n"
        "ARG1(h, d)\n");
}

TEST_CASE("scoped readings") {
  RunResult every = run_cli("--mode scope-ext " + fx("every-boy-scope.amr"));
  CHECK(every.exit_code == 0);
  CHECK(every.output == "every(boy)(\\b . exists d . dance-01(d) & ARG0(d)(b))\n");

  RunResult dere = run_cli("--mode scope-int " + fx("de-re.amr"));
  CHECK(dere.exit_code == 0);
  CHECK(dere.output ==
        "\\w . exists v h b . violin(v)(w) & hope-01(h)(w) & ARG0(h)(b)(w) & "
        "boy(b)(w) & cont(h)(\\w2 . exists b2 . buy-01(b2)(w2) & "
        "ARG0(b2)(b)(w2) & ARG1(b2)(v)(w2))(w)\n");
}

TEST_CASE("JSON output carries the formula and its type") {
  RunResult r = run_cli("--format json --mode ext " + fx("admire.amr"));
  CHECK(r.exit_code == 0);
  nlohmann::json j = nlohmann::json::parse(r.output);
  CHECK(j["formula"] ==
        "exists a b . admire-01(a) & ARG0(a)(b) & boy(b) & ARG1(a)(b)");
  CHECK(j["type"] == "t");

  RunResult i = run_cli("--format json --mode int " + fx("sick-girl.amr"));
  nlohmann::json ji = nlohmann::json::parse(i.output);
  CHECK(ji["type"] == "s -> t");

  RunResult t = run_cli("--format json --mode triples " + fx("hug.amr"));
  nlohmann::json jt = nlohmann::json::parse(t.output);
  REQUIRE(jt["triples"].size() == 5);
  CHECK(jt["triples"][0]["relation"] == "instance");
  CHECK(jt["triples"][0]["source"] == "h");
  CHECK(jt["triples"][0]["target"] == "hug-01");
  CHECK(jt["triples"][0]["instance"] == true);
  CHECK(jt["triples"][2]["instance"] == false);
}

TEST_CASE("batch mode translates blank-line separated graphs") {
  RunResult r = run_cli("--mode ext --batch " + fx("batch.amr"));
  CHECK(r.exit_code == 0);
  CHECK(r.output ==
        "exists h b d . hug-01(h) & ARG0(h)(b) & boy(b) & ARG1(h)(d) & dog(d)\n"
        "\n"
        "exists a b . admire-01(a) & ARG0(a)(b) & boy(b) & ARG1(a)(b)\n");

  RunResult j = run_cli("--format json --mode ext --batch " + fx("batch.amr"));
  CHECK(j.exit_code == 0);
  nlohmann::json parsed = nlohmann::json::parse(j.output);
  REQUIRE(parsed["results"].size() == 2);
  CHECK(parsed["results"][1]["type"] == "t");
}

TEST_CASE("input from stdin") {
  RunResult r = run_cli("--mode ext", true,
                        "echo '(b / boy)' | ");
  CHECK(r.exit_code == 0);
  CHECK(r.output == "exists b . boy(b)\n");
}

TEST_CASE("repeated runs are byte-identical") {
  RunResult a = run_cli("--mode scope-int " + fx("intermediate.amr"));
  RunResult b = run_cli("--mode scope-int " + fx("intermediate.amr"));
  CHECK(a.exit_code == 0);
  CHECK(a.output == b.output);
}

TEST_CASE("bounded entailment, both verdicts") {
  RunResult yes = run_cli("--mode ext --entails " + fx("flat-believe.amr") +
                          " " + fx("sick-girl.amr") +
                          " --worlds 2 --individuals 2");
  CHECK(yes.exit_code == 0);
  CHECK(yes.output == "entailed within bound (2 worlds, 2 individuals)\n");

  RunResult no = run_cli("--mode int --entails " + fx("believe-content.amr") +
                         " " + fx("sick-girl.amr") +
                         " --worlds 1 --individuals 1");
  CHECK(no.exit_code == 0);
  const std::string header =
      "not entailed; counterexample with 1 world(s) and 1 individual(s):\n";
  REQUIRE(no.output.rfind(header, 0) == 0);
  // The remainder is the counterexample model as JSON.
  nlohmann::json model =
      nlohmann::json::parse(no.output.substr(header.size()));
  CHECK(model["worlds"].size() == 1);
  CHECK(model["individuals"].size() == 1);
}

TEST_CASE("entailment in JSON form") {
  RunResult r = run_cli("--format json --mode int --entails " +
                        fx("believe-content.amr") + " " + fx("sick-girl.amr") +
                        " --worlds 1 --individuals 1");
  CHECK(r.exit_code == 0);
  nlohmann::json j = nlohmann::json::parse(r.output);
  CHECK(j["entailed"] == false);
  CHECK(j["bound"]["worlds"] == 1);
  CHECK(j["bound"]["individuals"] == 1);
  CHECK(j["actual"] == "w1");
  CHECK(j["counterexample_size"]["worlds"] == 1);
  CHECK(j.contains("counterexample"));

  RunResult y = run_cli("--format json --mode ext --entails " + fx("hug.amr") +
                        " " + fx("hug.amr") + " --worlds 1 --individuals 1");
  nlohmann::json jy = nlohmann::json::parse(y.output);
  CHECK(jy["entailed"] == true);
  CHECK_FALSE(jy.contains("counterexample"));
}

TEST_CASE("parse errors exit 2 with a span") {
  RunResult r = run_cli("--mode ext " + fx("bad-syntax.amr"));
  CHECK(r.exit_code == 2);
  CHECK(r.output.rfind("error (parse): ", 0) == 0);

  RunResult j = run_cli("--format json --mode ext " + fx("bad-syntax.amr"));
  CHECK(j.exit_code == 2);
  nlohmann::json parsed = nlohmann::json::parse(j.output);
  CHECK(parsed["error"]["kind"] == "parse");
  CHECK(parsed["error"]["span"].contains("begin"));
  CHECK(parsed["error"]["span"].contains("end"));
}

TEST_CASE("translation errors exit 1") {
  RunResult r = run_cli("--mode int " + fx("content-undef.amr"));
  CHECK(r.exit_code == 1);
  CHECK(r.output ==
        "error (translate): ':content' of 'b' embeds the bare variable "
        "reference 's'; propositional content must be an instance-assigned "
        "subgraph\n");

  RunResult undischarged =
      run_cli("--mode scope-ext " + fx("every-boy-unscoped.amr"));
  CHECK(undischarged.exit_code == 1);
  CHECK(undischarged.output.find("undischarged") != std::string::npos);

  RunResult flipped = run_cli("--mode scope-ext " + fx("nested-quant-flipped.amr"));
  CHECK(flipped.exit_code == 1);
  CHECK(flipped.output.find("'p'") != std::string::npos);
}

TEST_CASE("usage errors exit 2") {
  CHECK(run_cli("").exit_code == 2);
  CHECK(run_cli("--mode bogus " + fx("hug.amr")).exit_code == 2);
  CHECK(run_cli("--mode ext --batch --entails " + fx("hug.amr") + " " +
                fx("hug.amr"))
            .exit_code == 2);
  CHECK(run_cli("--mode triples --entails " + fx("hug.amr") + " " +
                fx("hug.amr"))
            .exit_code == 2);
  CHECK(run_cli("--mode ext no_such_file.amr").exit_code == 2);
  CHECK(run_cli("--help").exit_code == 0);
}

TEST_CASE("the world named as actual must exist in the bound") {
  RunResult r = run_cli("--mode ext --entails " + fx("hug.amr") + " " +
                        fx("hug.amr") + " --worlds 2 --individuals 1 " +
                        "--actual w3");
  CHECK(r.exit_code == 1);
  RunResult bogus = run_cli("--mode ext --entails " + fx("hug.amr") + " " +
                            fx("hug.amr") + " --actual x1");
  CHECK(bogus.exit_code == 1);
  RunResult ok = run_cli("--mode ext --entails " + fx("hug.amr") + " " +
                         fx("hug.amr") + " --worlds 2 --individuals 1 " +
                         "--actual w2");
  CHECK(ok.exit_code == 0);
}

TEST_CASE("determiner overrides come from the environment") {
  RunResult r = run_cli("--mode scope-ext " + fx("several-scope.amr"), true,
                        "AMR_INTENS_DETERMINERS=" + fx("dets.json") + " ");
  CHECK(r.exit_code == 0);
  CHECK(r.output == "several(boy)(\\b . exists d . dance-01(d) & ARG0(d)(b))\n");

  // Without the table the determiner is unknown.
  RunResult bare = run_cli("--mode scope-ext " + fx("several-scope.amr"));
  CHECK(bare.exit_code == 1);

  // A malformed table is a configuration error.
  RunResult bad = run_cli("--mode scope-ext " + fx("several-scope.amr"), true,
                          "AMR_INTENS_DETERMINERS=" + fx("bad-dets.json") + " ");
  CHECK(bad.exit_code == 2);
}
