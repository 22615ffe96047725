// Drives the installed command line binary end to end: output text, JSON
// shapes, trace files and the exit code contract.

#include <sys/wait.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "hornnc/formula.hpp"
#include "hornnc/recognizer.hpp"
#include "json.hpp"

namespace {

using Json = nlohmann::ordered_json;

struct RunResult {
  int code;
  std::string out;
};

class CliTest : public ::testing::Test {
 protected:
  // Runs the tool through the shell, stderr dropped, stdout captured.
  RunResult run(const std::string& args) {
    std::string cmd = std::string(HORNNC_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    EXPECT_NE(pipe, nullptr);
    std::string out;
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
    int status = pclose(pipe);
    return {WEXITSTATUS(status), out};
  }

  std::string write_tmp(const std::string& stem, const std::string& text) {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    std::string path = ::testing::TempDir() + "cli_" + info->name() + "_" + stem;
    std::ofstream f(path, std::ios::binary);
    f << text;
    return path;
  }

  std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
  }
};

TEST_F(CliTest, ParseReprintsTheFormula) {
  std::string file = write_tmp("f.nc", "(and A (or B ~C))\n");
  RunResult r = run("parse " + file);
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "(and A (or B ~C))\n");

  // Explicit negation survives reprinting; nothing is normalized.
  file = write_tmp("g.nc", "(not (or A B))");
  r = run("parse " + file);
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "(not (or A B))\n");
}

TEST_F(CliTest, ParseReadsStandardInput) {
  RunResult r = run("parse - < /dev/null");
  EXPECT_EQ(r.code, 2);  // empty input is a syntax error

  std::string cmd = "printf '(or ~A T)' | " + std::string(HORNNC_CLI_PATH) +
                    " parse - 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  ASSERT_NE(pipe, nullptr);
  char buf[256];
  std::string out;
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
  EXPECT_EQ(WEXITSTATUS(pclose(pipe)), 0);
  EXPECT_EQ(out, "(or ~A T)\n");
}

TEST_F(CliTest, ParseJsonReportsSizeMetrics) {
  std::string file = write_tmp("f.nc", "(and A (or B ~C))");
  RunResult r = run("parse --json " + file);
  EXPECT_EQ(r.code, 0);
  Json j = Json::parse(r.out);
  EXPECT_EQ(j["formula"], "(and A (or B ~C))");
  EXPECT_EQ(j["size"], 5);
  EXPECT_EQ(j["dag_size"], 5);
  EXPECT_EQ(j["depth"], 2);
  EXPECT_EQ(j["n_vars"], 3);
}

TEST_F(CliTest, ParseRejectsBadSyntax) {
  std::string file = write_tmp("f.nc", "(and A");
  EXPECT_EQ(run("parse " + file).code, 2);
  EXPECT_EQ(run("parse /no/such/file.nc").code, 2);
}

TEST_F(CliTest, RecognizeVerdictsAndExitCodes) {
  std::string file = write_tmp("a.nc", "(and ~C (or ~A E))");
  RunResult r = run("recognize " + file);
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "hnf\n");

  file = write_tmp("b.nc", "(or A B)");
  r = run("recognize " + file);
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.out, "not-hnf\n");

  file = write_tmp("c.nc", "(and ~A ~B)");
  r = run("recognize " + file);
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "negative-hnf\n");

  // Inputs with explicit negation are classified through their normal form.
  file = write_tmp("d.nc", "(not (or A B))");
  r = run("recognize " + file);
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "negative-hnf\n");

  file = write_tmp("e.nc", "(not (and ~A ~B))");
  r = run("recognize " + file);
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.out, "not-hnf\n");
}

TEST_F(CliTest, RecognizeJson) {
  std::string file = write_tmp("f.nc", "(or A B)");
  RunResult r = run("recognize --json " + file);
  EXPECT_EQ(r.code, 1);
  Json j = Json::parse(r.out);
  EXPECT_EQ(j["label"], "not-hnf");
  EXPECT_EQ(j["in_class"], false);
}

TEST_F(CliTest, RecognizeBatchProcessesEveryLine) {
  std::string file = write_tmp("batch.nc",
                               "# mixed bag\n"
                               "(and ~C (or ~A E))\n"
                               "\n"
                               "(or A B)\n"
                               "(and ~A ~B)\n");
  RunResult r = run("recognize --batch " + file);
  EXPECT_EQ(r.code, 0);  // batch mode reports per line, exits by completion
  EXPECT_EQ(r.out, "hnf\nnot-hnf\nnegative-hnf\n");
}

TEST_F(CliTest, RecognizeTraceFileListsTheLabelingWalk) {
  std::string file = write_tmp("f.nc", "(and ~C (or ~A E))");
  std::string trace = write_tmp("trace.json", "");
  RunResult r = run("recognize --trace " + trace + " " + file);
  EXPECT_EQ(r.code, 0);
  Json j = Json::parse(slurp(trace));
  EXPECT_EQ(j["schema_version"], 1);
  ASSERT_EQ(j["traces"].size(), 1u);
  const Json& entries = j["traces"][0]["entries"];
  ASSERT_GE(entries.size(), 5u);  // every subformula gets a labeled entry
  for (const Json& e : entries) {
    EXPECT_TRUE(e.contains("formula"));
    EXPECT_TRUE(e.contains("label"));
    EXPECT_TRUE(e.contains("case"));
  }
  // The walk ends at the whole formula with the in-class verdict.
  EXPECT_EQ(entries.back()["formula"], "(and ~C (or ~A E))");
  EXPECT_EQ(entries.back()["label"], "hnf");
}

TEST_F(CliTest, SolveTextOutputs) {
  std::string file = write_tmp("sat.nc", "(and A (or ~A B))");
  RunResult r = run("solve " + file);
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "SAT model: {A, B}\n");

  file = write_tmp("unsat.nc", "(and A ~A)");
  r = run("solve " + file);
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.out, "UNSAT\n");

  file = write_tmp("empty.nc", "(or ~A ~B)");
  r = run("solve " + file);
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "SAT model: {}\n");

  // Outside the class: refusal on stderr, nothing on stdout, exit 1.
  file = write_tmp("out.nc", "(or A B)");
  r = run("solve " + file);
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.out, "");
}

TEST_F(CliTest, SolveJsonCarriesModelAndStats) {
  std::string file = write_tmp("f.nc", "(and A (or ~A B))");
  RunResult r = run("solve --json " + file);
  EXPECT_EQ(r.code, 0);
  Json j = Json::parse(r.out);
  EXPECT_EQ(j["sat"], true);
  EXPECT_EQ(j["model"], Json::array({"A", "B"}));
  EXPECT_EQ(j["final"], "(and A B)");
  EXPECT_EQ(j["stats"]["unit_resolutions"], 1);
  EXPECT_EQ(j["stats"]["rounds"], 2);
}

TEST_F(CliTest, SolveTraceFileEndsInTheEmptyDisjunction) {
  std::string file = write_tmp("f.nc", "(and A ~A)");
  std::string trace = write_tmp("t.json", "");
  RunResult r = run("solve --trace " + trace + " " + file);
  EXPECT_EQ(r.code, 1);
  Json j = Json::parse(slurp(trace));
  EXPECT_EQ(j["schema_version"], 1);
  ASSERT_EQ(j["traces"].size(), 1u);
  EXPECT_EQ(j["traces"][0]["result"], "unsat");
  const Json& recs = j["traces"][0]["records"];
  ASSERT_EQ(recs.size(), 1u);
  EXPECT_EQ(recs[0]["rule"], "unit-resolution");
  EXPECT_EQ(recs[0]["unit"], "A");
  EXPECT_EQ(recs[0]["targets"], Json::array({Json::array({1})}));
  EXPECT_EQ(recs[0]["before"], "(and A ~A)");
  EXPECT_EQ(recs[0]["after"], "(or)");
}

TEST_F(CliTest, SolveBatchKeepsGoingPastRefusals) {
  std::string file = write_tmp("batch.nc",
                               "(and A (or ~A B))\n"
                               "(or A B)\n"
                               "(and A ~A)\n");
  RunResult r = run("solve --batch " + file);
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "SAT model: {A, B}\nnot-horn-nc\nUNSAT\n");
}

TEST_F(CliTest, ClausalTextListsClausesAndHornVerdict) {
  std::string file = write_tmp("f.nc", "(or (and ~B ~D) (and C A))");
  RunResult r = run("clausal " + file);
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out,
            "(and (or ~B C) (or ~B A) (or ~D C) (or ~D A))\n"
            "clauses: 4\n"
            "horn: yes\n");
}

TEST_F(CliTest, ClausalStarNormalizesFirst) {
  std::string file =
      write_tmp("f.nc", "(and D (not (or (and ~A B) F (or A C))))");
  RunResult r = run("clausal --star " + file);
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out,
            "(and (or D) (or A ~B) (or ~A) (or ~C))\n"
            "clauses: 4\n"
            "horn: yes\n");

  // The plain translation only accepts negation normal form.
  EXPECT_EQ(run("clausal " + file).code, 2);
}

TEST_F(CliTest, ClausalDimacs) {
  std::string file = write_tmp("f.nc", "(or A ~B)");
  RunResult r = run("clausal --dimacs " + file);
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "c 1 = A\nc 2 = B\np cnf 2 1\n1 -2 0\n");
}

TEST_F(CliTest, ClausalCapRefusesBlowup) {
  std::string file =
      write_tmp("f.nc", "(or (and A B) (and C D) (and E G))");  // 8 clauses
  EXPECT_EQ(run("clausal " + file).code, 0);
  EXPECT_EQ(run("clausal --cap 4 " + file).code, 1);
}

TEST_F(CliTest, EqComparesByTruthTable) {
  std::string a = write_tmp("a.nc", "(or A B)");
  std::string b = write_tmp("b.nc", "(or B A)");
  std::string c = write_tmp("c.nc", "(and A B)");
  RunResult r = run("eq " + a + " " + b);
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "equivalent\n");
  r = run("eq " + a + " " + c);
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.out, "not equivalent\n");
}

TEST_F(CliTest, EntailAnswersQueries) {
  std::string prog = write_tmp("p.lp",
                               "fact A\n"
                               "rule A => B\n");
  RunResult r = run("entail " + prog + " B");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "entailed\n");

  r = run("entail " + prog + " C");
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.out, "not entailed\n");

  // The query can also come from a file or be a compound formula.
  std::string q = write_tmp("q.nc", "(and A B)");
  EXPECT_EQ(run("entail " + prog + " " + q).code, 0);
  EXPECT_EQ(run("entail " + prog + " '(or C B)'").code, 0);

  std::string bad = write_tmp("bad.lp", "rule ~A => B\n");
  EXPECT_EQ(run("entail " + bad + " B").code, 2);
}

TEST_F(CliTest, GenIsDeterministicPerSeed) {
  RunResult first = run("gen --seed 5 --n 5 --mode hnc");
  RunResult second = run("gen --seed 5 --n 5 --mode hnc");
  EXPECT_EQ(first.code, 0);
  EXPECT_EQ(first.out, second.out);

  std::istringstream in(first.out);
  std::string line;
  int lines = 0;
  hornnc::FormulaStore store;
  while (std::getline(in, line)) {
    ++lines;
    EXPECT_NO_THROW(parse_formula(store, line)) << line;
  }
  EXPECT_EQ(lines, 5);

  EXPECT_NE(run("gen --seed 6 --n 5 --mode hnc").out, first.out);
  EXPECT_EQ(run("gen --mode bogus").code, 2);
}

TEST_F(CliTest, BenchAgreementSuiteReportsFullAgreement) {
  std::string out_path = write_tmp("report.json", "");
  RunResult r =
      run("bench --suite agreement --n 50 --seed 7 --out " + out_path);
  EXPECT_EQ(r.code, 0);
  Json j = Json::parse(slurp(out_path));
  EXPECT_EQ(j["schema_version"], 1);
  EXPECT_EQ(j["suite"], "agreement");
  EXPECT_EQ(j["seed"], 7);
  EXPECT_EQ(j["instances"], 50);
  EXPECT_EQ(j["agreement"].get<double>(), 1.0);

  // Without --out the same report goes to stdout.
  r = run("bench --suite agreement --n 20 --seed 7");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(Json::parse(r.out)["agreement"].get<double>(), 1.0);
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(run("").code, 2);             // a subcommand is required
  EXPECT_EQ(run("frobnicate x").code, 2);
  EXPECT_EQ(run("solve").code, 2);        // missing file argument
  EXPECT_EQ(run("bench --suite nope").code, 2);
}

}  // namespace
