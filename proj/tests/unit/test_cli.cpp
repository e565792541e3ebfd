#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "kaddlab/equations.hpp"
#include "kaddlab/io.hpp"

using kaddlab::io::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
  json doc() const { return json::parse(out); }
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = kaddlab::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("kaddlab_test_" + name)).string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("construct") {
  const auto two = run({"construct", "two-slope", "--a", "0.25", "--b", "0.75"});
  REQUIRE(two.code == 0);
  const auto d = two.doc();
  CHECK(d["command"] == "construct");
  CHECK(d["results"][0]["claim"]["solves_kadd"] == "yes");
  CHECK(d["results"][0]["spec"]["kind"] == "two_slope");

  const auto lp = run({"construct", "log-periodic", "--n", "1", "--m", "1", "--profile", "abs-sine"});
  REQUIRE(lp.code == 0);
  CHECK(lp.doc()["results"][0]["spec"]["a"] == 0.5);
  CHECK(lp.doc()["results"][0]["spec"]["h"]["kind"] == "abs_sine");

  CHECK(run({"construct", "exceptional", "--a", "0.5", "--part", "linear", "--part-b", "0.2"}).code == 2);
  CHECK(run({"construct", "no-such-family"}).code == 2);
  CHECK(run({"construct", "two-slope", "--a", "0.2", "--b", "0.3", "--dual"}).doc()["results"][0]["spec"]["a"] ==
        0.3);
}

TEST_CASE("verify exit codes follow pass/fail") {
  const auto lp = run({"construct", "log-periodic", "--n", "1", "--m", "1", "--profile", "abs-sine"});
  const std::string spec_path = temp_path("half.json");
  {
    std::ofstream f(spec_path);
    f << lp.out;
  }
  const auto ok = run({"verify", "--spec", spec_path, "--check", "kadd"});
  CHECK(ok.code == 0);
  CHECK(ok.doc()["status"] == "pass");

  const auto bad = run({"verify", "--spec", R"({"kind":"two_slope","a":0.5,"b":2})", "--check", "kadd"});
  CHECK(bad.code == 1);
  CHECK(bad.doc()["results"][0]["argmax_x"].get<double>() < 0);

  const auto band = run({"verify", "--spec", R"({"kind":"two_slope","a":-0.5,"b":1.5})", "--check", "bowtie"});
  CHECK(band.code == 1);

  const auto many = run({"verify", "--spec", spec_path, "--check", "kadd,bowtie,homogeneity:0.5,phi:0.5"});
  CHECK(many.code == 0);
  CHECK(many.doc()["results"].size() == 4);
  std::remove(spec_path.c_str());
}

TEST_CASE("verify writes CSV and files") {
  const std::string csv = temp_path("res.csv");
  const std::string out = temp_path("rep.json");
  const auto r = run({"verify", "--spec", R"({"kind":"two_slope","a":0.5,"b":2})", "--grid", "1:10:1", "--csv",
                      csv, "--out", out});
  CHECK(r.code == 1);
  const auto text = slurp(csv);
  CHECK(text.rfind("kind,x,f(x),residual\n", 0) == 0);
  CHECK(text.find("kadd,-1,-0.5,1.5\n") != std::string::npos);
  CHECK(json::parse(slurp(out))["status"] == "fail");
  std::remove(csv.c_str());
  std::remove(out.c_str());
}

TEST_CASE("verify rejects bad input with exit 2") {
  CHECK(run({"verify", "--spec", "{not json"}).code == 2);
  CHECK(run({"verify", "--spec", R"({"kind":"two_slope","a":0.5,"b":2})", "--check", "nope"}).code == 2);
  CHECK(run({"verify", "--spec", R"({"kind":"two_slope","a":0.5,"b":2})", "--tol", "-1"}).code == 2);
  CHECK(run({"verify", "--spec", "/no/such/file.json"}).code == 2);
  CHECK(run({"verify"}).code == 2);
  CHECK(run({}).code == 2);
}

TEST_CASE("falsify") {
  const auto def = run({"falsify"});
  CHECK(def.code == 0);
  const auto d = def.doc();
  CHECK(d["status"] == "pass");
  CHECK(run({"falsify", "--n", "1", "--m", "2"}).code == 0);
  const auto sub = run({"falsify", "--spec", R"({"kind":"two_slope","a":0.3,"b":0.7})"});
  CHECK(sub.code == 1);
  CHECK(sub.out.find("\"spread\": 0") != std::string::npos);
}

TEST_CASE("dense") {
  const auto hit = run({"dense", "--a", "0.3", "--u", "1", "--eps", "0.02", "--bound", "10"});
  REQUIRE(hit.code == 0);
  const auto w = hit.doc()["results"][0];
  CHECK(w["n"] == -2);
  CHECK(w["m"] == 4);
  CHECK(w["achieved_error"].get<double>() == doctest::Approx(0.0188).epsilon(1e-2));

  const auto gap = run({"dense", "--a", "0.5", "--u", "1", "--eps", "0.01"});
  CHECK(gap.code == 1);
  CHECK(gap.out.find("explanation") != std::string::npos);

  const auto zero = run({"dense", "--a", "0.3", "--u", "0", "--eps", "0.01"});
  CHECK(zero.code == 0);
  CHECK(zero.doc()["results"][0]["n"] == 0);
  CHECK(zero.doc()["results"][0]["m"] == 0);

  const auto profile = run({"dense", "--a", "0.3", "--u", "-1,0.5,1", "--eps", "0.1,0.01", "--bound", "100000",
                            "--format", "csv"});
  CHECK(profile.code == 0);
  CHECK(profile.out.rfind("u,eps,n,m,achieved_error,method\n", 0) == 0);
  CHECK(std::count(profile.out.begin(), profile.out.end(), '\n') == 7);
}

TEST_CASE("classify and mean-check") {
  const auto r = run({"classify", "--a", "0.5"});
  CHECK(r.code == 0);
  CHECK(r.out.find("lattice_spacing") != std::string::npos);
  CHECK(run({"classify", "--a", "1.5"}).code == 2);

  const auto good = run({"mean-check", "--spec", R"({"kind":"two_slope","a":0.25,"b":0.75})", "--grid", "1e-1:1e1:2"});
  CHECK(good.code == 0);
  const auto bad = run({"mean-check", "--spec", R"({"kind":"two_slope","a":-0.5,"b":1.5})", "--grid", "1e-1:1e1:2",
                        "--no-translativity"});
  CHECK(bad.code == 1);
}

TEST_CASE("construct output feeds verify unchanged") {
  const auto built = run({"construct", "exceptional", "--a", "1", "--part", "table", "--part-table", "0.5:0.1,2:1.5"});
  REQUIRE(built.code == 0);
  const auto v1 = run({"verify", "--spec", built.out, "--check", "kadd,bowtie"});
  const auto v2 = run({"verify", "--spec", built.out, "--check", "kadd,bowtie"});
  CHECK(v1.code == 0);
  CHECK(v1.out == v2.out);
}

TEST_CASE("verify report equals the in-memory pipeline") {
  const auto built = run({"construct", "log-periodic", "--n", "1", "--m", "2", "--profile", "abs-sine"});
  const auto spec = kaddlab::io::spec_from_text(built.out);
  const auto cli = run({"verify", "--spec", built.out, "--check", "kadd,homogeneity:0.5"});
  const auto doc = cli.doc();
  const auto grid = kaddlab::GridSpec::default_grid();
  const std::vector<kaddlab::Check> checks = {kaddlab::Check::kadd(), kaddlab::Check::homogeneity(0.5)};
  for (std::size_t i = 0; i < checks.size(); ++i) {
    const auto mem = kaddlab::io::to_json(kaddlab::verify_on_grid(spec, checks[i], grid, 1e-9));
    CHECK(kaddlab::io::dump(doc["results"][i]) == kaddlab::io::dump(mem));
  }
  CHECK(cli.code == 1);  // 0.5 is not a homogeneity factor of the golden-slope spec
  CHECK(run({"verify", "--spec", built.out, "--tol", "0"}).code == 2);
}
