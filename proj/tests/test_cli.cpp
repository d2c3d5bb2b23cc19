#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "minlob/cli.hpp"
#include "minlob/formats.hpp"

using namespace minlob;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "minlob");
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& text) {
  fs::path dir = fs::temp_directory_path() / "minlob_cli_test";
  fs::create_directories(dir);
  fs::path p = dir / name;
  std::ofstream(p, std::ios::binary) << text;
  return p.string();
}

const std::string kPath = "p digraph 4 3\na 1 2\na 2 3\na 3 4\n";
const std::string kStar = "p digraph 4 3\na 1 2\na 1 3\na 1 4\n";
const std::string kSplit = "p digraph 3 2\na 1 3\na 2 3\n";

}  // namespace

TEST_CASE("solve") {
  auto r = run({"solve", write_temp("path.txt", kPath)});
  CHECK(r.code == kExitYes);
  CHECK(r.out == "c min-leaves 1\nb root 1\nb 1 2\nb 2 3\nb 3 4\n");
  // The text output is itself a certificate.
  auto cert = write_temp("path.cert", r.out);
  auto c = run({"certify", write_temp("path.txt", kPath), cert});
  CHECK(c.code == kExitYes);
  CHECK(c.out == "valid out-branching: 1 leaves\n");

  auto none = run({"solve", write_temp("split.txt", kSplit)});
  CHECK(none.code == kExitNo);

  auto js = run({"--json", "solve", write_temp("star.txt", kStar)});
  CHECK(js.code == kExitYes);
  auto doc = nlohmann::json::parse(js.out);
  CHECK(doc["command"] == "solve");
  CHECK(doc["min_leaves"] == 3);
  CHECK(doc["witness"]["root"] == 1);
}

TEST_CASE("json flag after the subcommand") {
  auto js = run({"solve", write_temp("path.txt", kPath), "--json"});
  CHECK(js.code == kExitYes);
  CHECK(nlohmann::json::parse(js.out)["min_leaves"] == 1);
}

TEST_CASE("check") {
  auto star = write_temp("star.txt", kStar);
  auto yes = run({"check", "-k", "3", star});
  CHECK(yes.code == kExitYes);
  CHECK(yes.out.find("c answer yes") != std::string::npos);
  auto no = run({"check", "-k", "2", star});
  CHECK(no.code == kExitNo);
  CHECK(no.out == "c k 2\nc answer no\n");
  CHECK(run({"check", "-k", "0", star}).code == kExitInput);
  auto js = nlohmann::json::parse(run({"--json", "check", "-k", "3", star}).out);
  CHECK(js["answer"] == true);
  CHECK(js["witness"]["leaves"] == 3);
}

TEST_CASE("reduce") {
  auto cnf = write_temp("one.cnf", "p cnf 3 1\n1 -2 3 0\n");
  auto dpd = (fs::temp_directory_path() / "minlob_cli_test" / "one.dpd").string();
  auto r = run({"reduce", cnf, "--dpd", dpd, "--certify"});
  CHECK(r.code == kExitYes);
  CHECK(r.out.find("c vertex 1 r\n") != std::string::npos);
  CHECK(r.out.find("c vertex 5 x1(H1)\n") != std::string::npos);
  CHECK(r.out.find("FAILED") == std::string::npos);
  CHECK(r.out.find("c certify min-leaves ok 3") != std::string::npos);
  CHECK(r.out.find("c certify dpw ok 1") != std::string::npos);

  Digraph d = parse_graph(r.out);
  CHECK(d.order() == 10);
  std::ifstream in(dpd);
  std::stringstream buf;
  buf << in.rdbuf();
  Certificate c = parse_certificate(buf.str());
  CHECK(validate_dpd(d, std::get<PathDecomposition>(c)).width == std::optional<std::size_t>(1));

  auto graph = write_temp("one.txt", serialize_graph(d));
  CHECK(run({"certify", graph, dpd}).out == "valid dpd: width 1\n");

  auto unsat = write_temp("unsat.cnf",
                          "p cnf 3 8\n1 2 3 0\n-1 2 3 0\n1 -2 3 0\n-1 -2 3 0\n"
                          "1 2 -3 0\n-1 2 -3 0\n1 -2 -3 0\n-1 -2 -3 0\n");
  auto u = run({"--json", "reduce", unsat, "--certify"});
  CHECK(u.code == kExitYes);
  auto doc = nlohmann::json::parse(u.out);
  CHECK(doc["graph"]["vertices"] == 52);
  bool saw_sat = false;
  for (const auto& step : doc["certification"]) {
    CHECK(step["ok"] == true);
    if (step["check"] == "satisfiable") {
      saw_sat = true;
      CHECK(step["detail"] == "no");
    }
  }
  CHECK(saw_sat);
}

TEST_CASE("dpw") {
  auto digon = write_temp("digon.txt", "p digraph 2 2\na 1 2\na 2 1\n");
  auto r = run({"dpw", digon});
  CHECK(r.code == kExitYes);
  CHECK(r.out == "c dpw 1\nbag 1 1\nbag 2 1 2\n");
  CHECK(run({"dpw", digon, "--cap", "1"}).code == kExitInput);
}

TEST_CASE("certify reports violations with 1-based ids") {
  auto graph = write_temp("digon.txt", "p digraph 2 2\na 1 2\na 2 1\n");
  auto bad = write_temp("bad.dpd", "bag 1 1\nbag 2 2\n");
  auto r = run({"certify", graph, bad});
  CHECK(r.code == kExitNo);
  CHECK(r.out.rfind("invalid dpd: ", 0) == 0);
  CHECK(r.out.find("(2,1)") != std::string::npos);

  auto js = nlohmann::json::parse(run({"--json", "certify", graph, bad}).out);
  CHECK(js["valid"] == false);
  CHECK(js["violation"]["condition"] == "(b)");
  CHECK(js["violation"]["vertices"] == nlohmann::json::array({2, 1}));

  auto not_tree = write_temp("bad.cert", "b root 1\nb 1 2\nb 2 1\n");
  CHECK(run({"certify", graph, not_tree}).code == kExitNo);
  auto garbage = write_temp("garbage.cert", "hello\n");
  CHECK(run({"certify", graph, garbage}).code == kExitInput);
}

TEST_CASE("gen") {
  auto a = run({"gen", "--n", "7", "--density", "0.5", "--seed", "9"});
  CHECK(a.code == kExitYes);
  CHECK(a.out == run({"gen", "--n", "7", "--density", "0.5", "--seed", "9"}).out);
  CHECK(parse_graph(a.out) == random_digraph(7, 0.5, 9));
  CHECK(run({"gen", "--n", "7", "--density", "2", "--seed", "9"}).code == kExitInput);
  CHECK(run({"gen", "--n", "7", "--seed", "9"}).code == kExitInput);
}

TEST_CASE("usage errors exit 2") {
  auto r = run({"solve", "--frobnicate", "x"});
  CHECK(r.code == kExitInput);
  CHECK(r.err.find("Usage") != std::string::npos);
  CHECK(run({}).code == kExitInput);
  CHECK(run({"solve", "/nonexistent/file"}).code == kExitInput);
  auto malformed = write_temp("malformed.txt", "p digraph 2 1\na 1 1\n");
  auto m = run({"solve", malformed});
  CHECK(m.code == kExitInput);
  CHECK(m.err == "error: line 2: self-loop at vertex 1\n");
  CHECK(run({"--help"}).code == 0);
}
