#include <catch2/catch_amalgamated.hpp>

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "oc/cli.hpp"

using namespace oc;

namespace {

struct RunResult {
  int code;
  std::string out, err;
};

RunResult run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = run_command(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("type-compose prints the sewn interface") {
  RunResult r = run({"type-compose", "{1i},(1o)", "1", "{1o},(1i)", "1"});
  CHECK(r.code == 0);
  CHECK(r.out == "{1i,1o},()\n");
  CHECK(r.err.empty());
}

TEST_CASE("term-type prints the interface of a term") {
  RunResult r = run({"term-type", "mc(x1c,ec())"});
  CHECK(r.code == 0);
  CHECK(r.out == "{1i,1o}\n");
}

TEST_CASE("normalize prints the canonical wiring") {
  RunResult r = run({"normalize", "mc(x1c,ec())"});
  CHECK(r.code == 0);
  CHECK(r.out ==
        "gen 0 mc\n"
        "gen 1 ec\n"
        "wire 1.out1 0.in2\n"
        "in 1i 0.in1\n"
        "out 1o 0.out1\n");
}

TEST_CASE("equiv compares normal forms") {
  RunResult same =
      run({"equiv", "o2c(mo(x1o,x2o))", "o2c(mo(x2o,x1o))"});
  CHECK(same.code == 0);
  CHECK(same.out == "equivalent\n");

  RunResult diff = run({"equiv", "mo(x1o,x2o)", "mo(x2o,x1o)"});
  CHECK(diff.code == 0);
  CHECK(diff.out == "inequivalent\n");
}

TEST_CASE("enumerate terms lists a span one encode per line") {
  RunResult r =
      run({"enumerate", "terms", "{1i,1o}", "0", "--max-vertices", "4"});
  CHECK(r.code == 0);
  std::istringstream lines(r.out);
  std::vector<std::string> seen;
  for (std::string line; std::getline(lines, line);) seen.push_back(line);
  CHECK(seen.size() == 8);
  for (size_t i = 1; i < seen.size(); ++i) CHECK(seen[i - 1] < seen[i]);
}

TEST_CASE("enumerate types lists interfaces") {
  RunResult r =
      run({"enumerate", "types", "0", "2", "0", "1", "--max-empty", "0"});
  CHECK(r.code == 0);
  std::istringstream lines(r.out);
  int count = 0;
  for (std::string line; std::getline(lines, line);) ++count;
  CHECK(count == 6);
}

TEST_CASE("dims prints one graded dimension per line") {
  RunResult r = run({"dims", "{1i,1o}", "--cap", "4"});
  CHECK(r.code == 0);
  CHECK(r.out == "0:1\n1:1\n");
}

TEST_CASE("reduce prints coordinates") {
  RunResult r = run({"reduce", "{1i,1o}", "mc(mc(x1c,ec()),ec())", "--cap", "4"});
  CHECK(r.code == 0);
  CHECK(r.out == "1 0\n");
}

TEST_CASE("psi prints the contracted class") {
  RunResult r = run({"psi", "1", "2", "mo(x1o,mo(x2o,mo(x3o,eo())))"});
  CHECK(r.code == 0);
  CHECK(r.out ==
        "1 !1o:mo[>c2o[>o2c[>eo[@],@],@],>mo[3i,>eo[@],@],@]\n");
}

TEST_CASE("psi reports a vanishing contraction") {
  // The first puncture here is closed, so the contraction is zero.
  RunResult r = run({"psi", "1", "2", "o2c(mo(x2o,c2o(x1c)))"});
  CHECK(r.code == 1);
  CHECK(r.out == "zero\n");
}

TEST_CASE("cyclic rotates the output into an input") {
  RunResult r = run({"cyclic", "2,3,1", "mo(x1o,x2o)"});
  CHECK(r.code == 0);
  CHECK(r.out == "1 !1o:mo[1i,2i,@]\n");
}

TEST_CASE("degree evaluates the dimension formula") {
  RunResult r = run({"degree", "(1i,2i,1o)", "-m", "4", "-k", "2"});
  CHECK(r.code == 0);
  CHECK(r.out == "-2\n");
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"dims"}).code == 2);
  CHECK(run({"dims", "{1i,1o}", "--cap"}).code == 2);
  CHECK(run({"dims", "{1i,1o}", "--cap", "four"}).code == 2);
  CHECK(run({"dims", "{1i,1o}", "--frob", "4"}).code == 2);
  CHECK(run({"dims", "not a type"}).code == 2);
  CHECK(run({"type-compose", "{1i},(1o)", "1", "{1o},(1i)"}).code == 2);
  const RunResult bad = run({"frobnicate"});
  CHECK(bad.out.empty());
  CHECK(!bad.err.empty());
}

TEST_CASE("domain errors exit with 1") {
  RunResult starved = run({"dims", "{1i,1o},(2i)", "--cap", "1"});
  CHECK(starved.code == 1);
  CHECK(!starved.err.empty());

  // A positive-degree term has no canonical representative.
  RunResult odd = run({"normalize", "bv(x1c)"});
  CHECK(odd.code == 1);
  CHECK(!odd.err.empty());
}

TEST_CASE("a dash reads the term from standard input") {
  std::istringstream feed("mc(x1c,ec())");
  std::streambuf* saved = std::cin.rdbuf(feed.rdbuf());
  RunResult r = run({"term-type", "-"});
  std::cin.rdbuf(saved);
  CHECK(r.code == 0);
  CHECK(r.out == "{1i,1o}\n");
}

TEST_CASE("output is deterministic across calls") {
  std::vector<std::string> args = {"dims", "{1i,2i,1o}", "--cap", "5"};
  RunResult a = run(args), b = run(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out == "0:1\n1:3\n2:3\n3:1\n");
}
