#include <doctest.h>

#include <cmath>

#include "sepscope/error.hpp"
#include "sepscope/partitions.hpp"
#include "sepscope/states_zoo.hpp"

using namespace sepscope;

namespace {

Errc code_of(const auto& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::IoError;
}

}  // namespace

TEST_SUITE("states_zoo") {

TEST_CASE("ghz") {
  const PureState g = ghz(4);
  CHECK(std::abs(g[0] - Complex(M_SQRT1_2)) < 1e-15);
  CHECK(std::abs(g[15] - Complex(M_SQRT1_2)) < 1e-15);
  CHECK(g.amplitudes().norm() == doctest::Approx(1.0));
  CHECK((ghz(2).amplitudes() - phi_plus().amplitudes()).norm() < 1e-15);
  CHECK(code_of([] { ghz(1); }) == Errc::InvalidRange);
  CHECK(code_of([] { ghz(3, 3); }) == Errc::InvalidRange);
}

TEST_CASE("bell pair projector") {
  const DensityMatrix p = bell_pair_projector(1, 2, 4);
  CHECK(p.matrix().trace().real() == doctest::Approx(1.0));
  CHECK(purity(p) == doctest::Approx(1.0));
  CHECK(max_abs(partial_trace(p, SiteSet{1}).matrix() - ComplexMatrix::Identity(2, 2) / 2.0) < 1e-15);
  CHECK(code_of([] { bell_pair_projector(2, 2, 4); }) == Errc::SiteOutOfRange);
  CHECK(code_of([] { bell_pair_projector(1, 5, 4); }) == Errc::SiteOutOfRange);
}

TEST_CASE("bbo family") {
  CHECK(max_abs(bbo_state({0, 0}).matrix() - ComplexMatrix::Identity(16, 16) / 16.0) < 1e-15);
  const DensityMatrix pp = bbo_state({1, 0});
  CHECK(purity(pp) == doctest::Approx(1.0));
  CHECK(max_abs(pp.matrix() - kron(phi_plus().projector().matrix(), phi_plus().projector().matrix())) < 1e-15);
  CHECK(max_abs(bbo_state({0, 1}).matrix() - ghz(4).projector().matrix()) < 1e-15);
  CHECK(code_of([] { bbo_state({0.7, 0.4}); }) == Errc::InvalidWeights);
  CHECK(code_of([] { bbo_state({-0.1, 0.4}); }) == Errc::InvalidWeights);

  for (int i = 0; i < 5; ++i)
    for (int j = 0; i + j < 5; ++j) {
      const DensityMatrix r = bbo_state({i / 4.0, j / 4.0});
      for (const auto& g : vierergruppe())
        CHECK(max_abs(relabel_sites(r.matrix(), r.shape(), g.images()) - r.matrix()) < 1e-12);
    }
}

TEST_CASE("noise coordinates") {
  const NoiseCoords a = coords({0.25, 0.25});
  CHECK(a.q == doctest::Approx(0.5));
  CHECK(*a.r == doctest::Approx(1.0));
  const NoiseCoords b = coords({0.5, 0.0});
  CHECK(*b.r == 0.0);
  CHECK(coords({0.0, 0.4}).ratio_infinite());
  const BBOParams back = from_coords({0.0, 1.0});
  CHECK(back.p1 == doctest::Approx(0.5));
  CHECK(back.p2 == doctest::Approx(0.5));
  const BBOParams inf = from_coords({0.25, std::nullopt});
  CHECK(inf.p1 == 0.0);
  CHECK(inf.p2 == doctest::Approx(0.75));
  for (double p1 : {0.1, 0.3, 0.55})
    for (double p2 : {0.05, 0.2, 0.4}) {
      const BBOParams rt = from_coords(coords({p1, p2}));
      CHECK(rt.p1 == doctest::Approx(p1).epsilon(1e-14));
      CHECK(rt.p2 == doctest::Approx(p2).epsilon(1e-14));
    }
}

TEST_CASE("test states") {
  CHECK(max_abs(werner(1.0).matrix() - phi_plus().projector().matrix()) < 1e-15);
  const DensityMatrix r = bbo_state({0.3, 0.3});
  CHECK(max_abs(isotropic_mix(r, 0.0).matrix() - r.matrix()) < 1e-15);
  CHECK(max_abs(isotropic_mix(r, 1.0).matrix() - bbo_state({0, 0}).matrix()) < 1e-15);
  CHECK(purity(partial_trace(w_state(4).projector(), SiteSet{1})) == doctest::Approx(5.0 / 8.0));
  CHECK(product_state("0101")[5] == Complex(1.0));
  CHECK(code_of([] { product_state("012"); }) == Errc::LevelOutOfRange);
  CHECK(code_of([] { werner(1.5); }) == Errc::InvalidWeights);
  CHECK(code_of([] { isotropic_mix(bbo_state({0, 0}), -0.1); }) == Errc::InvalidWeights);
}

TEST_CASE("state specs") {
  CHECK(std::holds_alternative<PureState>(parse_state_spec("ghz:4")));
  CHECK(std::holds_alternative<PureState>(parse_state_spec("w:3")));
  CHECK(std::holds_alternative<PureState>(parse_state_spec("product:0000")));
  CHECK(std::holds_alternative<DensityMatrix>(parse_state_spec("werner:0.5")));
  CHECK(std::holds_alternative<DensityMatrix>(parse_state_spec("bbo:0.2,0.3")));
  const BuiltState mixed = parse_state_spec("mix:ghz:4:0.25");
  REQUIRE(std::holds_alternative<DensityMatrix>(mixed));
  CHECK(max_abs(std::get<DensityMatrix>(mixed).matrix() - isotropic_mix(ghz(4).projector(), 0.25).matrix()) < 1e-15);
  for (const char* bad : {"", "ghz", "ghz:x", "bbo:0.2", "bbo:0.8,0.8", "nope:1", "mix:ghz:4", "product:01a"})
    CHECK(code_of([&] { parse_state_spec(bad); }) == Errc::ParseError);
}

}  // TEST_SUITE
