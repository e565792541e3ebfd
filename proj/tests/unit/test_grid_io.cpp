#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "kaddlab/error.hpp"
#include "kaddlab/grid.hpp"
#include "kaddlab/io.hpp"
#include "oracles.hpp"

using namespace kaddlab;

TEST_CASE("default grid is sorted, spans both signs and has zero once") {
  const auto pts = GridSpec::default_grid().points();
  CHECK(pts.size() == 2 * (9 * 48 + 1) + 1);
  CHECK(std::is_sorted(pts.begin(), pts.end()));
  CHECK(std::adjacent_find(pts.begin(), pts.end()) == pts.end());
  CHECK(std::count(pts.begin(), pts.end(), 0.0) == 1);
  CHECK(pts.front() == -1e3);
  CHECK(pts.back() == 1e3);
  CHECK(std::find(pts.begin(), pts.end(), 1e-6) != pts.end());
  CHECK(pts == GridSpec::default_grid().points());
}

TEST_CASE("grid variants") {
  const auto pos = GridSpec::default_grid().positive_only().points();
  CHECK(std::all_of(pos.begin(), pos.end(), [](double x) { return x > 0; }));
  const auto neg = GridSpec::default_grid().with_signs(GridSigns::Negative).points();
  CHECK(std::all_of(neg.begin(), neg.end(), [](double x) { return x <= 0; }));
  const auto g = GridSpec::parse("1e-2:10:4");
  CHECK(g.min_magnitude == 1e-2);
  CHECK(g.max_magnitude == 10);
  CHECK(g.points_per_decade == 4);
  CHECK(g.magnitudes().size() == 13);
  CHECK_THROWS_AS(GridSpec::parse("1:0.5:4"), InvalidArgument);
  CHECK_THROWS_AS(GridSpec::parse("1:5"), InvalidArgument);
  CHECK_THROWS_AS(GridSpec::parse("a:5:3"), InvalidArgument);
  CHECK_THROWS_AS(GridSpec::parse("1:5:0"), InvalidArgument);
}

namespace {

std::vector<FunctionSpec> random_specs(std::uint64_t seed, int count) {
  auto g = oracle::rng(seed);
  std::vector<FunctionSpec> out;
  for (int i = 0; i < count; ++i) {
    switch (i % 5) {
      case 0: out.push_back(FunctionSpec::two_slope(oracle::uniform(g, -3, 3), oracle::uniform(g, -3, 3))); break;
      case 1: out.push_back(FunctionSpec::pure_linear(oracle::uniform(g, -3, 3))); break;
      case 2: {
        const int n = 1 + static_cast<int>(g() % 4), m = 1 + static_cast<int>(g() % 4);
        out.push_back(make_log_periodic(n, m, TableShape{{{0.0, oracle::uniform(g, 0, 1)},
                                                           {0.37, oracle::uniform(g, 0, 1)}}})
                          .spec);
        break;
      }
      case 3:
        out.push_back(FunctionSpec::exceptional(
            static_cast<double>(g() % 2),
            PositivePart::table({{0.5, oracle::uniform(g, 0, 0.5)}, {2.0, oracle::uniform(g, 0, 2)}})));
        break;
      default:
        out.push_back(dual(make_log_periodic(1, 1 + static_cast<int>(g() % 3), AbsSineShape{}).spec));
    }
  }
  return out;
}

}  // namespace

TEST_CASE("spec JSON round-trips exactly") {
  const auto pts = GridSpec::default_grid().points();
  for (const auto& s : random_specs(21, 60)) {
    const std::string text = io::dump(io::to_json(s));
    const auto back = io::spec_from_text(text);
    CHECK(back == s);
    for (double x : pts) REQUIRE(eval(back, x) == eval(s, x));
    CHECK(io::dump(io::to_json(back)) == text);
  }
}

TEST_CASE("spec documents and malformed input") {
  const auto s = FunctionSpec::two_slope(0.25, 0.75);
  io::json env = {{"results", io::json::array({{{"spec", io::to_json(s)}}})}};
  CHECK(io::spec_from_document(env) == s);
  CHECK(io::spec_from_document(io::json{{"spec", io::to_json(s)}}) == s);
  CHECK_THROWS_AS(io::spec_from_text("{"), InvalidArgument);
  CHECK_THROWS_AS(io::spec_from_text(R"({"kind":"nope"})"), InvalidArgument);
  CHECK_THROWS_AS(io::spec_from_text(R"({"kind":"two_slope","a":0.1})"), InvalidArgument);
  CHECK_THROWS_AS(io::spec_from_text(R"({"kind":"exceptional","a":0.5,"positive_part":{"kind":"linear","b":0.2}})"),
                  InvalidArgument);
}

TEST_CASE("numbers print with 17 significant digits") {
  CHECK(io::dump(io::json(0.1), -1) == "0.10000000000000001");
  CHECK(io::dump(io::json(2.0), -1) == "2");
  CHECK(io::dump(io::json(std::nan("")), -1) == "null");
}

TEST_CASE("CSV headers and rows") {
  std::ostringstream out;
  io::write_residual_csv(out, {{Check::kadd(), {{-1.0, -0.5, 1.5, 0.75}}}});
  CHECK(out.str() == "kind,x,f(x),residual\nkadd,-1,-0.5,1.5\n");
  std::ostringstream w;
  io::write_witness_csv(w, {DensityCell{1.0, 0.5, 10, NotFound{"gap", 0.25, 10}}});
  CHECK(w.str().rfind("u,eps,n,m,achieved_error,method\n", 0) == 0);
  CHECK(w.str().find(",,") != std::string::npos);
}
