#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "mirror/config.hpp"
#include "mirror/error.hpp"
#include "mirror/report.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

using namespace mirror;
using nlohmann::json;

namespace {

std::string fixture(const std::string& name) { return std::string(MIRROR_FIXTURE_DIR) + "/" + name; }

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

template <class F>
std::string error_message(F&& f, ErrorCode expected) {
  try {
    f();
  } catch (const MirrorError& e) {
    CHECK(e.code() == expected);
    return e.what();
  }
  FAIL("no error raised");
  return {};
}

}  // namespace

TEST_CASE("shipped fixtures load") {
  auto p2 = load_config(fixture("p2.json"));
  CHECK(p2.n == 2);
  CHECK(p2.rays == IntMat{{1, 0}, {0, 1}, {-1, -1}});
  REQUIRE(p2.t.size() == 1);
  CHECK(p2.t[0] == cd(-3, 0));
  CHECK(p2.z == 1.0);
  CHECK(p2.rel_tol == 1e-5);

  auto f1 = load_config(fixture("f1.json"));
  REQUIRE(f1.charge);
  CHECK(*f1.charge == IntMat{{1, 0, 1, -1}, {0, 1, 0, 1}});
  CHECK(*f1.eta == QVec{1, 1});
  auto git = make_git(f1.git_input());
  CHECK(git.k() == 2);

  for (const char* name : {"p1.json", "wp12.json"}) CHECK_NOTHROW(load_config(fixture(name)));
}

TEST_CASE("rationals are exact") {
  auto cfg = parse_config(R"({"n":1,"rays":[[1],[-2]],"twist":["1/3","-2"],"t":[{"re":-3,"im":0.5}],
                              "degree_bound":"7/2","cycle_a":["1/5","0"]})");
  CHECK(cfg.twist == QVec{Q(1, 3), Q(-2)});
  CHECK(cfg.degree_bound == Q(7, 2));
  CHECK(cfg.t[0] == cd(-3, 0.5));
  CHECK(*cfg.cycle_a == QVec{Q(1, 5), Q(0)});
}

TEST_CASE("schema violations") {
  auto msg = error_message([] { parse_config(R"({"n":1,"rays":[[1],[-1]],"t":[-3],"z":-1})"); },
                           ErrorCode::SchemaError);
  CHECK(msg.find("z must be positive") != std::string::npos);

  auto all = validate_config_text(
      R"({"n":1,"rays":[[1],[-1]],"t":[-3,2],"z":0,"tolerances":{"rel":-1},"twist":[0.5,"0"],"foo":1})");
  CHECK(all.size() == 5);
  auto has = [&](const std::string& needle) {
    for (const auto& e : all)
      if (e.find(needle) != std::string::npos) return true;
    return false;
  };
  CHECK(has("/foo"));
  CHECK(has("/twist/0"));
  CHECK(has("/t:"));
  CHECK(has("/z: z must be positive"));
  CHECK(has("/tolerances/rel"));

  CHECK(validate_config_text(read_file(fixture("p1.json"))).empty());
  error_message([] { parse_config(R"({"n":2,"rays":[[1,0],[0]],"t":[-3]})"); }, ErrorCode::SchemaError);
}

TEST_CASE("lattice errors carry context") {
  auto msg = error_message([] { parse_config(R"({"n":1,"rays":[[2],[-2]],"t":[-3]})"); }, ErrorCode::NotGenerating);
  CHECK(msg.find("/rays") != std::string::npos);
  CHECK(msg.find("index 2") != std::string::npos);
}

TEST_CASE("parse errors") {
  error_message([] { parse_config("{\"n\":1,"); }, ErrorCode::ParseError);
  error_message([] { load_config("/nonexistent/instance.json"); }, ErrorCode::ParseError);
}

TEST_CASE("exit code classification") {
  CHECK(exit_code_for(ErrorCode::SchemaError) == 2);
  CHECK(exit_code_for(ErrorCode::NotGenerating) == 2);
  CHECK(exit_code_for(ErrorCode::NotFanoPolytope) == 2);
  CHECK(exit_code_for(ErrorCode::NotConverging) == 1);
  CHECK(exit_code_for(ErrorCode::MismatchBeyondTolerance) == 1);
}

TEST_CASE("reports") {
  auto p1 = load_config(fixture("p1.json"));
  auto res = run_subcommand("verify", p1, {});
  CHECK(res.exit_code == 0);
  auto rep = json::parse(res.report);
  CHECK(rep["kappa"]["label"] == "1");
  for (const char* m : {"za_series", "mellin_barnes", "oscillatory"}) {
    REQUIRE(rep["values"].contains(m));
    CHECK(rep["values"][m].contains("abs_error"));
    CHECK(rep["values"][m].contains("method"));
    CHECK(rep["values"][m]["value"].contains("re"));
  }
  CHECK(rep["verdict"] == "PASS");
  CHECK(run_subcommand("verify", p1, {}).report == res.report);

  auto wp = run_subcommand("analyze", load_config(fixture("wp12.json")), {});
  CHECK(wp.exit_code == 0);
  auto box = json::parse(wp.report)["box"];
  REQUIRE(box.size() == 2);
  CHECK(box[1]["age"] == "1/2");

  const std::string svg = "mirror_charge_test_cells.svg";
  RunFlags flags;
  flags.svg_path = svg;
  auto cyc = run_subcommand("cycle", load_config(fixture("p2.json")), flags);
  CHECK(cyc.exit_code == 0);
  auto text = read_file(svg);
  CHECK(text.find("<polygon") != std::string::npos);
  CHECK(text.find("m=1<") != std::string::npos);
  std::remove(svg.c_str());

  CHECK(run_subcommand("nonsense", p1, {}).exit_code == 2);
  auto open = parse_config(R"({"n":1,"rays":[[1],[3]],"t":[-3]})");
  CHECK(run_subcommand("za", open, {}).exit_code == 2);
  CHECK(run_subcommand("analyze", open, {}).exit_code == 0);

  auto wrong = p1;
  wrong.twist = {Q(1), Q(0)};
  auto strict = run_subcommand("verify", wrong, {});
  CHECK(strict.exit_code == 1);
}
