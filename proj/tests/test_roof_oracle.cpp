#include <doctest.h>

#include "oracles.hpp"
#include "sepscope/error.hpp"
#include "sepscope/random.hpp"
#include "sepscope/roof_oracle.hpp"
#include "sepscope/states_zoo.hpp"

using namespace sepscope;

TEST_SUITE("roof_oracle") {

TEST_CASE("ensembles reconstruct their state") {
  const PureState psi = ghz(3);
  const Ensemble e = random_ensemble(psi.projector(), 5, 3);
  double wsum = 0.0;
  for (std::size_t i = 0; i < e.states.size(); ++i) {
    wsum += e.weights[i];
    CHECK(std::abs(std::abs(psi.amplitudes().dot(e.states[i].amplitudes())) - 1.0) < 1e-12);
  }
  CHECK(std::abs(wsum - 1.0) < 1e-12);

  const DensityMatrix half = validate_density(ComplexMatrix::Identity(2, 2) / 2.0, SystemShape(1, 2));
  const Ensemble two = random_ensemble(half, 2, 4);
  CHECK(two.states.size() == 2);
  CHECK(max_abs(two.reconstruct() - half.matrix()) < 1e-12);

  const DensityMatrix w = werner(0.5);
  const Ensemble six = random_ensemble(w, 6, 5);
  CHECK(max_abs(six.reconstruct() - w.matrix()) < 1e-10);
  for (double p : six.weights) CHECK(p >= 0.0);

  CHECK_THROWS_AS(random_ensemble(w, 3, 5), Error);
  CHECK(numerical_rank(w) == 4);
  CHECK(numerical_rank(phi_plus().projector()) == 1);
}

TEST_CASE("roof estimate of a pure state is its concurrence") {
  Rng rng(51);
  const PureState psi = random_pure_state(SystemShape(3, 2), rng);
  const double exact = c2_pure(psi, SiteSet{1}, SiteSet{1, 3});
  CHECK(std::abs(roof_upper(psi.projector(), SiteSet{1}, SiteSet{1, 3}, 3, 0, 1) - exact) < 1e-12);
  CHECK_THROWS_AS(roof_upper(psi.projector(), SiteSet{1}, SiteSet{1, 3}, 0, 0, 1), Error);
}

TEST_CASE("roof estimates are non-increasing in the trial count") {
  const DensityMatrix w = werner(0.6);
  double prev = INFINITY;
  for (int trials : {1, 5, 25, 125}) {
    const double v = roof_upper(w, SiteSet{1}, SiteSet{1, 2}, trials, 0, 9);
    CHECK(v <= prev);
    prev = v;
  }
  // never below the two-qubit convex roof C_W²
  const double cw = oracle::wootters_concurrence(w.matrix());
  CHECK(prev >= cw * cw - 1e-12);
}

TEST_CASE("werner state at the separability boundary") {
  const DensityMatrix w = werner(1.0 / 3.0);
  CHECK(oracle::wootters_concurrence(w.matrix()) < 1e-12);
  CHECK(roof_upper(w, SiteSet{1}, SiteSet{1, 2}, 500, 0, 7) <= 0.02);
}

TEST_CASE("separable mixtures have small roof estimates") {
  Rng rng(52);
  ComplexMatrix acc = ComplexMatrix::Zero(4, 4);
  for (int t = 0; t < 2; ++t) {
    const ComplexVector v = kron(random_pure_state(SystemShape(1, 2), rng).amplitudes(),
                                 random_pure_state(SystemShape(1, 2), rng).amplitudes());
    acc += 0.5 * v * v.adjoint();
  }
  const DensityMatrix mix = validate_density(acc, SystemShape(2, 2));
  const double few = roof_upper(mix, SiteSet{1}, SiteSet{1, 2}, 50, 0, 3);
  const double many = roof_upper(mix, SiteSet{1}, SiteSet{1, 2}, 500, 0, 3);
  CHECK(many <= few);
  CHECK(many < c2_pure(phi_plus(), SiteSet{1}, SiteSet{1, 2}) / 10.0);
}

TEST_CASE("bound chain") {
  const DensityMatrix prod = product_state("010").projector();
  const ChainReport r = validate_chain(prod, SiteSet{2}, {});
  CHECK(r.ok);
  CHECK(r.lambda_sq_sum == 0.0);
  CHECK(r.sampled_eta < 1e-20);
  for (const auto& d : r.per_delta) CHECK(d.roof_upper < 1e-20);

  BoundOptions literal;
  literal.variant = BoundVariant::SumLiteral;
  bool thrown = false;
  try {
    validate_chain(phi_plus().projector(), SiteSet{1}, literal);
  } catch (const ChainViolation& v) {
    thrown = true;
    CHECK(v.delta() == SiteSet{1, 2});
    CHECK(v.margin() == doctest::Approx(1.0 - 4.0));
  }
  CHECK(thrown);
  CHECK_FALSE(chain_margins(phi_plus().projector(), SiteSet{1}, literal).ok);

  ChainSettings settings;
  settings.trials = 200;
  for (std::uint64_t s = 0; s < 10; ++s) {
    Rng rng(derive_seed(99, s));
    const DensityMatrix rho = random_density(SystemShape(2, 2), rng);
    settings.seed = s;
    CHECK(chain_margins(rho, SiteSet{1}, {}, settings).ok);
  }
}

}  // TEST_SUITE
