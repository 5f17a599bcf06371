#include <doctest.h>
#include <json.hpp>

#include <cstdlib>
#include <sstream>

#include "cli.hpp"
#include "smoothpoly/predict.hpp"

using namespace smoothpoly;
using json = nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("rho prints twelve decimals") {
  auto r = run({"rho", "--u", "2"});
  CHECK(r.code == 0);
  CHECK(r.out == "0.306852819440\n");
  auto d = run({"rho", "--u", "1.5", "--deriv", "1", "--format", "json"});
  CHECK(d.code == 0);
  CHECK(json::parse(d.out)["value"].get<double>() == doctest::Approx(-1 / 1.5));
  CHECK(run({"rho", "--u", "100"}).code == 1);
}

TEST_CASE("count: methods agree") {
  auto r = run({"count", "--q", "2", "--n", "8", "--m", "3", "--prescribe", "0=1", "--method", "both"});
  REQUIRE(r.code == 0);
  auto j = json::parse(r.out);
  CHECK(j["schema"] == 1);
  CHECK(j["agree"] == true);
  CHECK(j["counts"]["enumeration"] == j["counts"]["parseval"]);
  CHECK(j["exact"] == to_string(count_prescribed(Field::make(2), 8, 3, Prescription::parse(8, "0=1")).exact));
  CHECK_FALSE(j.contains("seconds"));
  auto dp = run({"count", "--q", "4", "--n", "9", "--m", "3", "--prescribe", "0=2,8=1", "--method", "dp"});
  REQUIRE(dp.code == 0);
  CHECK(json::parse(dp.out)["exact"] ==
        to_string(count_prescribed(Field::parse("4"), 9, 3, Prescription::parse(9, "0=2,8=1")).exact));
}

TEST_CASE("usage and budget errors exit 1") {
  CHECK(run({"count", "--q", "2", "--n", "8", "--m", "3", "--bogus"}).code == 1);
  CHECK(run({"count", "--q", "2", "--n", "8", "--m", "3", "--prescribe", "0=x"}).code == 1);
  CHECK(run({"count", "--q", "2", "--n", "8", "--m", "3", "--prescribe", "0=2"}).code == 1);
  CHECK(run({"count", "--q", "6", "--n", "8", "--m", "3"}).code == 1);
  auto b = run({"count", "--q", "2", "--n", "20", "--m", "3", "--budget", "100"});
  CHECK(b.code == 1);
  CHECK(b.err.find("budget") != std::string::npos);
  CHECK(run({"rho", "--u", "2", "--tol", "0.5"}).code == 1);
  CHECK(run({}).code == 1);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("budget from the environment") {
  setenv("SMOOTHPOLY_BUDGET", "50", 1);
  auto r = run({"count", "--q", "2", "--n", "10", "--m", "3"});
  unsetenv("SMOOTHPOLY_BUDGET");
  CHECK(r.code == 1);
  CHECK(run({"count", "--q", "2", "--n", "10", "--m", "3"}).code == 0);
}

TEST_CASE("predict report") {
  auto r = run({"predict", "--q", "3", "--n", "12", "--m", "4", "--prescribe", "1=0", "--with-exact"});
  REQUIRE(r.code == 0);
  auto j = json::parse(r.out);
  CHECK(j["exact"] == "18369");
  CHECK(j["main"].get<double>() == doctest::Approx(to_double(psi_exact(3, 12, 4)) / 3));
  CHECK(j["extrapolation"] == true);
  CHECK(j["envelope"]["minor_arc"].get<double>() > 0);
  CHECK(run({"predict", "--q", "2", "--n", "10", "--m", "4", "--prescribe", "0=1", "--variant", "thm1"}).code == 1);
  CHECK(run({"predict", "--q", "2", "--n", "10", "--m", "4", "--prescribe", "0=1", "--variant", "thm1", "--force"})
            .code == 0);
}

TEST_CASE("verify subcommands") {
  auto g = run({"verify", "gauss", "--q", "2", "--l", "1", "--g", "0,1"});
  REQUIRE(g.code == 0);
  auto j = json::parse(g.out);
  CHECK(j["lhs"].get<double>() == doctest::Approx(2.0));
  CHECK(j["rhs"] == "2");
  CHECK(j["pass"] == true);
  auto p = run({"verify", "parseval", "--q", "2", "--n", "8", "--m", "3", "--samples", "5"});
  CHECK(p.code == 0);
  CHECK(json::parse(p.out)["cases"].size() == 5);
  auto a = run({"verify", "arcs", "--q", "2", "--n", "10", "--m", "3"});
  CHECK(a.code == 0);
  CHECK(json::parse(a.out)["disagreements"] == 0);
}

TEST_CASE("character commands") {
  auto c = run({"charsum", "--q", "2", "--l", "1", "--g", "1,1,1", "--n", "5"});
  REQUIRE(c.code == 0);
  auto j = json::parse(c.out);
  CHECK(j["characters"].size() == 6);
  CHECK(j["characters"][0]["sum"][0].get<double>() == doctest::Approx(6.0));  // all irreducibles of degree 5
  auto l = run({"lpoly", "--q", "3", "--l", "0", "--g", "0,1", "--all-chi"});
  REQUIRE(l.code == 0);
  auto lj = json::parse(l.out);
  CHECK(lj["characters"].size() == 1);
  CHECK(lj["characters"][0]["degree"] == 0);
}

TEST_CASE("scan output is deterministic") {
  std::vector<std::string> args{"scan", "--q", "2,3", "--n", "8", "--m", "2,3", "--prescribe", "0=1", "--prescribe", ""};
  auto a = run(args), b = run(args);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  std::istringstream lines(a.out);
  std::string header;
  std::getline(lines, header);
  CHECK(header == "q,n,m,prescription,exact,main,corrected,rel_err_main,rel_err_corrected");
  int rows = 0;
  for (std::string line; std::getline(lines, line);) ++rows;
  CHECK(rows == 8);
  auto js = run({"scan", "--q", "2", "--n", "8", "--m", "3", "--format", "json"});
  CHECK(json::parse(js.out)["rows"].size() == 1);
}
