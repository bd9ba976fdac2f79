#include <doctest.h>

#include <sstream>

#include "sepscope/error.hpp"
#include "sepscope/json_io.hpp"
#include "sepscope/random.hpp"
#include "sepscope/states_zoo.hpp"
#include "sepscope/sweep.hpp"

using namespace sepscope;

namespace {

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

SweepOptions small_grid(int steps) {
  SweepOptions o;
  o.p1_steps = o.p2_steps = steps;
  o.threads = 2;
  return o;
}

}  // namespace

TEST_SUITE("sweep") {

TEST_CASE("colour bins") {
  CHECK(color_bin(0.0) == ColorBin::Red);
  CHECK(color_bin(1e-12) == ColorBin::Red);
  CHECK(color_bin(2e-12) == ColorBin::DarkPurple);
  CHECK(color_bin(0.25) == ColorBin::DarkPurple);
  CHECK(color_bin(0.2500001) == ColorBin::BrightPurple);
  CHECK(color_bin(0.5) == ColorBin::BrightPurple);
  CHECK(color_bin(0.75) == ColorBin::Blue);
  CHECK(color_bin(1.0) == ColorBin::Ash);
  CHECK(color_bin(1.01) == ColorBin::Overflow);
  CHECK(std::string(to_string(ColorBin::DarkPurple)) == "dark-purple");
  CHECK(std::string(to_string(ColorBin::BrightPurple)) == "bright-purple");
}

TEST_CASE("number formatting") {
  CHECK(format_number(0.0) == "0");
  CHECK(format_number(0.1) == "0.1");
  CHECK(format_number(1.0 / 3.0) == "0.333333333333");
  CHECK(format_number(2.0 / 3.0) == "0.666666666667");
  CHECK(format_number(14.0) == "14");
}

TEST_CASE("11 x 11 sweep") {
  const SweepGrid grid = run_sweep(small_grid(11));
  CHECK(grid.rows.size() == 66);
  std::ostringstream csv;
  write_csv(grid, csv);
  const auto ls = lines(csv.str());
  REQUIRE(ls.size() == 67);
  CHECK(ls[0] == "p1,p2,q,r,R2,R3,R4,bin2,bin3,bin4");
  CHECK(ls[1] == "0,0,1,inf,0,0,0,red,red,red");
  CHECK(ls.back().rfind("1,0,0,0,0,", 0) == 0);
  CHECK(ls.back().find(",red,") != std::string::npos);
  for (const auto& row : grid.rows) {
    CHECK(row.p1 + row.p2 <= 1.0 + 1e-12);
    if (row.i == 10) CHECK(*row.rm[0] == 0.0);
  }
  // row-major with p1 outer
  for (std::size_t k = 1; k < grid.rows.size(); ++k) {
    const auto& a = grid.rows[k - 1];
    const auto& b = grid.rows[k];
    CHECK((a.i < b.i || (a.i == b.i && a.j < b.j)));
  }
}

TEST_CASE("sweep output does not depend on the thread count") {
  SweepOptions one = small_grid(9);
  one.threads = 1;
  SweepOptions three = small_grid(9);
  three.threads = 3;
  std::ostringstream a, b;
  write_csv(run_sweep(one), a);
  write_csv(run_sweep(three), b);
  CHECK(a.str() == b.str());
}

TEST_CASE("partial m lists leave columns empty") {
  SweepOptions o = small_grid(3);
  o.ms = {3};
  std::ostringstream csv;
  write_csv(run_sweep(o), csv);
  const auto ls = lines(csv.str());
  CHECK(ls[1] == "0,0,1,inf,,0,,,red,");
}

}  // TEST_SUITE

TEST_SUITE("json_io") {

TEST_CASE("density round trip") {
  Rng rng(61);
  const DensityMatrix r = random_density(SystemShape(2, 3), rng);
  const Json exact = to_json(r, true);
  CHECK(exact["kind"] == "density");
  CHECK(exact["n"] == 2);
  CHECK(exact["d"] == 3);
  const DensityMatrix back = density_from_json(Json::parse(exact.dump()));
  CHECK(max_abs(back.matrix() - r.matrix()) == 0.0);
  const DensityMatrix approx = density_from_json(Json::parse(to_json(r).dump()));
  CHECK(max_abs(approx.matrix() - r.matrix()) < 1e-15);
}

TEST_CASE("pure state round trip") {
  const PureState g = ghz(3);
  const PureState back = pure_from_json(Json::parse(to_json(g, true).dump()));
  CHECK((back.amplitudes() - g.amplitudes()).norm() == 0.0);
  CHECK_THROWS_AS(pure_from_json(Json{{"kind", "pure"}, {"n", 2}}), Error);
}

TEST_CASE("structures") {
  const Partition p(4, {SiteSet{1, 3}, SiteSet{2}, SiteSet{4}});
  CHECK(to_json(p).dump() == "[[1,3],[2],[4]]");
  CHECK(partition_from_json(to_json(p)) == p);
  const SitePermutation s({2, 1, 3, 4});
  CHECK(permutation_from_json(to_json(s)) == s);
  CHECK_THROWS_AS(partition_from_json(Json::parse("[[1],[1,2]]")), Error);
  const Json table = to_json(orbit_reduce(set_partitions(4, 2), vierergruppe()));
  CHECK(table.size() == 4);
}

TEST_CASE("reports") {
  const Json pr = to_json(rm_pure_report(ghz(4), 2));
  CHECK(pr["m"] == 2);
  CHECK(pr["per_partition"].size() == 7);
  const Json br = to_json(rm_bound(bbo_state({0.0, 1.0}), 4, {}, vierergruppe()));
  CHECK(br["rm_tilde"].get<double>() > 0.0);
  CHECK(br["variant"] == "quadrature");
}

}  // TEST_SUITE
