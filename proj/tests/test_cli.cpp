#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pwalk/cli.hpp"
#include "pwalk/generators.hpp"
#include "pwalk/parse.hpp"

#include <cstdio>
#include <fstream>
#include <regex>
#include <sstream>

using namespace pwalk;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "pwalk");
  std::ostringstream out, err;
  const int code = cli::dispatch(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(PWALK_TEST_DATA) + "/" + name; }

double number_after(const std::string& text, const std::string& label) {
  const auto pos = text.find(label);
  REQUIRE(pos != std::string::npos);
  return std::stod(text.substr(pos + label.size()));
}

}  // namespace

TEST_CASE("check-fleeing") {
  auto r = run({"check-fleeing", "--poly", "n, n^2"});
  CHECK(r.code == 0);
  CHECK(r.out.find("fleeing: true") != std::string::npos);
  r = run({"check-fleeing", "--poly", "n, 2*n + 3"});
  CHECK(r.code == 0);
  CHECK(r.out.find("fleeing: false") != std::string::npos);
  CHECK(r.out.find("annihilator: 2*p1 - p2 + 3 = 0") != std::string::npos);
}

TEST_CASE("preserves") {
  auto r = run({"preserves", "--form", "x*y - z^2", "--walk-from", "xyP:z^2:1"});
  CHECK(r.code == 0);
  CHECK(r.out.find("preserved: true") != std::string::npos);
  r = run({"preserves", "--form", "x + z", "--walk-from", "xyP:z^2:2"});
  CHECK(r.out.find("preserved: false") != std::string::npos);
}

TEST_CASE("walk specs") {
  CHECK(cli::walk_from_descriptor("bogolubov:y^2") == bogolubov_walk(parse_poly("y^2", {"y"})));
  CHECK(cli::walk_from_descriptor("unipotent:[[1,1],[0,1]]") == unipotent_walk(IntMatrix{{1, 1}, {0, 1}}));
  CHECK(cli::walk_from_descriptor("file:" + data("jordan.walk")) == unipotent_walk(IntMatrix{{1, 1}, {0, 1}}));
  CHECK(cli::walk_from_descriptor("signature:1:2:1") == signature_form_walks(1, 2).walks[0]);
  CHECK_THROWS(cli::walk_from_descriptor("nonsense:1"));
}

TEST_CASE("walk-apply") {
  auto r = run({"walk-apply", "--walk-from", "bogolubov:y^2", "--n", "3", "--v", "3, 3"});
  CHECK(r.code == 0);
  CHECK(r.out.find("(30, 6)") != std::string::npos);
}

TEST_CASE("weyl") {
  auto r = run({"weyl", "--p", "n^2", "--theta", "sqrt2", "--N", "100000"});
  CHECK(r.code == 0);
  CHECK(number_after(r.out, "modulus: ") < 0.05);
  r = run({"weyl", "--p", "n", "--theta", "1/3", "--N", "30000"});
  CHECK(r.out.find("exact-zero: true") != std::string::npos);
}

TEST_CASE("construct-walk") {
  auto r = run({"construct-walk", "--gens", "xyP:z^2:1; xyP:z^2:2", "--v", "1, 0, 0"});
  CHECK(r.code == 0);
  CHECK(r.out.find("depth 2") != std::string::npos);
  r = run({"construct-walk", "--gens", "unipotent:[[1,0],[0,1]]", "--v", "1, 1", "--N-max", "3"});
  CHECK(r.code == 2);
}

TEST_CASE("magyar from a config file with csv output") {
  const std::string csv = "pwalk_cli_test.csv";
  auto r = run({"magyar", "--config", data("magyar.cfg"), "--csv", csv});
  CHECK(r.code == 0);
  CHECK(r.out.find("revalidate") != std::string::npos);
  std::ifstream in(csv);
  std::string header;
  std::getline(in, header);
  CHECK(header == "target,status,n,w1,w2,w3,f_value,millis");
  int rows = 0;
  for (std::string line; std::getline(in, line);)
    if (!line.empty()) ++rows;
  CHECK(rows == 3);
  std::remove(csv.c_str());
}

TEST_CASE("validate-only") {
  auto r = run({"magyar", "--config", data("magyar.cfg"), "--validate-only"});
  CHECK(r.code == 0);
  CHECK(r.out.find("valid") != std::string::npos);
  r = run({"magyar", "--config", data("magyar.cfg"), "--k", "2", "--validate-only"});
  CHECK(r.code == 1);
}

TEST_CASE("error exits") {
  CHECK(run({"magyar", "--config", data("bad_key.cfg")}).code == 1);
  CHECK(run({"check-fleeing", "--poly", "n ^ x"}).code == 1);
  auto r = run({"no-such-command"});
  CHECK(r.code == 1);
  CHECK(r.err.find("expr") != std::string::npos);
  CHECK(run({"weyl", "--p", "n", "--theta", "sqrt2", "--N", "10", "--precision", "5"}).code == 1);
  CHECK(run({"--version"}).code == 0);
}

TEST_CASE("gen") {
  auto r = run({"gen", "--family", "signature", "--p", "1", "--q", "2"});
  CHECK(r.code == 0);
  CHECK(r.out.find("[[3,-2,2],[2,-1,2],[2,-2,1]]") != std::string::npos);
  r = run({"gen", "--family", "xyP", "--P", "z^2"});
  CHECK(r.out.find("x*y - z^2") != std::string::npos);
}

TEST_CASE("ergodic-avg and correlate") {
  auto r = run({"ergodic-avg", "--A", "1/3", "--x0", "0", "--observable", "trig", "--terms", "1 : 1", "--p", "3*n",
                "--N", "99"});
  CHECK(r.code == 0);
  r = run({"correlate", "--A", "sqrt2, sqrt3", "--x0", "0", "--box", "0 0.3", "--p", "n^2, n; n, n^3", "--N", "200",
           "--samples", "256", "--replicates", "4"});
  CHECK(r.code == 0);
  CHECK(r.out.find("bound-holds:") != std::string::npos);
}
