#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "sepscope/bounds_mixed.hpp"
#include "sepscope/error.hpp"
#include "sepscope/random.hpp"
#include "sepscope/states_zoo.hpp"

using namespace sepscope;

namespace {

BoundOptions with(BoundVariant v) {
  BoundOptions o;
  o.variant = v;
  return o;
}

// √ρ ρ̃ √ρ by dense products with the oracle eigen-solver on the result.
std::vector<double> dense_lambdas(const DensityMatrix& rho, const SparseWitness& w) {
  const ComplexMatrix o = witness_dense(w);
  const ComplexMatrix f = o + o.adjoint();
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(rho.matrix());
  const RealVector ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  const ComplexMatrix s = es.eigenvectors() * ev.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
  const ComplexMatrix h = s * f * rho.matrix().conjugate() * f * s;
  auto mu = oracle::jacobi_eigenvalues((h + h.adjoint()) / 2.0);
  for (double& m : mu) m = std::sqrt(std::max(0.0, m));
  return mu;
}

DensityMatrix separable_mixture(const SystemShape& left, const SystemShape& right, int terms, Rng& rng) {
  const SystemShape whole(left.n() + right.n(), left.d());
  ComplexMatrix acc = ComplexMatrix::Zero(Eigen::Index(whole.dim()), Eigen::Index(whole.dim()));
  std::uniform_real_distribution<double> u(0.1, 1.0);
  double total = 0.0;
  for (int t = 0; t < terms; ++t) {
    const ComplexVector v = kron(random_pure_state(left, rng).amplitudes(), random_pure_state(right, rng).amplitudes());
    const double p = u(rng);
    total += p;
    acc += p * v * v.adjoint();
  }
  return validate_density(acc / total, whole);
}

}  // namespace

TEST_SUITE("bounds_mixed") {

TEST_CASE("variant names") {
  CHECK(parse_bound_variant("literal") == BoundVariant::SumLiteral);
  CHECK(parse_bound_variant("quadrature") == BoundVariant::Quadrature);
  CHECK(parse_bound_variant("max") == BoundVariant::MaxSingle);
  CHECK_THROWS_AS(parse_bound_variant("median"), Error);
}

TEST_CASE("rho tilde") {
  const SystemShape q2(2, 2);
  const DensityMatrix mixed = validate_density(ComplexMatrix::Identity(4, 4) / 4.0, q2);
  for (const auto& w : enumerate_witnesses(q2, SiteSet{1}, SiteSet{1, 2})) {
    const ComplexMatrix o = witness_dense(w);
    const ComplexMatrix f = o + o.adjoint();
    CHECK(max_abs(rho_tilde(mixed, w) - f * f / 4.0) < 1e-15);
  }
  const PairAssignment outside(q2, SiteSet{2}, {{0, 1}});
  const SparseWitness null = make_witness(q2, SiteSet{1}, outside, 0);
  CHECK(max_abs(rho_tilde(mixed, null)) == 0.0);

  Rng rng(41);
  const DensityMatrix r = random_density(q2, rng);
  for (const auto& w : enumerate_witnesses(q2, SiteSet{1}, SiteSet{1, 2})) {
    const ComplexMatrix o = witness_dense(w);
    const ComplexMatrix f = o + o.adjoint();
    CHECK(max_abs(rho_tilde(r, w) - f * r.matrix().conjugate() * f) < 1e-12);
  }
}

TEST_CASE("witness spectra") {
  const SystemShape q2(2, 2);
  const DensityMatrix bell = phi_plus().projector();
  const auto ws = enumerate_witnesses(q2, SiteSet{1}, SiteSet{1, 2});
  const WitnessSpectrum s01 = witness_spectrum(bell, ws[1]);
  CHECK(s01.leading() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(s01.total() == doctest::Approx(1.0).epsilon(1e-12));

  Rng rng(42);
  for (int rep = 0; rep < 5; ++rep) {
    const PureState psi = random_pure_state(SystemShape(3, 2), rng);
    const DensityMatrix p = psi.projector();
    for (const auto& w : enumerate_witnesses(psi.shape(), SiteSet{2}, SiteSet{1, 2, 3})) {
      const ComplexMatrix o = witness_dense(w);
      const double expect = std::abs((psi.amplitudes().adjoint() * (o + o.adjoint()) * psi.amplitudes().conjugate())(0, 0));
      const WitnessSpectrum s = witness_spectrum(p, w);
      CHECK(std::abs(s.leading() - expect) < 1e-9);
      CHECK(std::abs(s.total() - s.leading()) < 1e-9);
    }
  }

  ComplexMatrix diag = ComplexMatrix::Zero(4, 4);
  diag(0, 0) = 0.4, diag(1, 1) = 0.3, diag(2, 2) = 0.2, diag(3, 3) = 0.1;
  const DensityMatrix sep = validate_density(diag, q2);
  for (const auto& w : ws) {
    const auto ref = dense_lambdas(sep, w);
    const WitnessSpectrum fast = witness_spectrum_fast(sep, w);
    for (Eigen::Index i = 0; i < fast.lambdas.size(); ++i) CHECK(std::abs(fast.lambdas[i] - ref[std::size_t(i)]) < 1e-9);
  }
}

TEST_CASE("fast and dense spectra agree with the oracle") {
  Rng rng(43);
  for (int rep = 0; rep < 4; ++rep) {
    const DensityMatrix r = random_density(SystemShape(3, 2), rng, 1 + rep);
    for (const auto& w : enumerate_witnesses(r.shape(), SiteSet{1, 3}, SiteSet{2, 3})) {
      const auto ref = dense_lambdas(r, w);
      const WitnessSpectrum fast = witness_spectrum_fast(r, w);
      const WitnessSpectrum dense = witness_spectrum_dense(r, w);
      CHECK(std::abs(fast.term() - dense.term()) < 1e-9);
      CHECK(std::abs(dense.leading() - ref[0]) < 1e-9);
      double tot = 0.0;
      for (double x : ref) tot += x;
      CHECK(std::abs(dense.total() - tot) < 1e-8);
    }
  }
}

TEST_CASE("lambda bound on the Bell state") {
  const DensityMatrix bell = phi_plus().projector();
  const SiteSet g{1}, d{1, 2};
  CHECK(lambda_bound(bell, g, d, with(BoundVariant::SumLiteral)) == doctest::Approx(2.0));
  CHECK(lambda_bound(bell, g, d, with(BoundVariant::Quadrature)) == doctest::Approx(1.0));
  CHECK(lambda_bound(bell, g, d, with(BoundVariant::MaxSingle)) == doctest::Approx(0.5));
}

TEST_CASE("lambda bound vanishes on separable states") {
  for (auto v : {BoundVariant::SumLiteral, BoundVariant::Quadrature, BoundVariant::MaxSingle}) {
    CHECK(lambda_bound(product_state("0110").projector(), SiteSet{1, 2}, SiteSet{2, 3}, with(v)) == 0.0);
    const DensityMatrix white = bbo_state({0.0, 0.0});
    for (const auto& g : {SiteSet{1}, SiteSet{1, 2}, SiteSet{2, 4}})
      for (const auto& d : straddling_deltas(4, g)) CHECK(lambda_bound(white, g, d, with(v)) < 1e-12);
  }
  Rng rng(44);
  for (int rep = 0; rep < 5; ++rep) {
    const DensityMatrix mix = separable_mixture(SystemShape(1, 2), SystemShape(2, 2), 3, rng);
    for (const auto& d : straddling_deltas(3, SiteSet{1})) CHECK(lambda_bound(mix, SiteSet{1}, d) < 1e-9);
    CHECK(eta_bound(mix, SiteSet{1}) < 1e-12);
  }
}

TEST_CASE("eta bound") {
  Rng rng(45);
  for (int rep = 0; rep < 10; ++rep) {
    const PureState psi = random_pure_state(SystemShape(3, 2), rng);
    for (const auto& g : {SiteSet{1}, SiteSet{2}, SiteSet{1, 3}}) {
      const double bound = eta_bound(psi.projector(), g);
      const double exact = eta_pure(psi, g);
      CHECK(bound <= exact + 1e-9);
      CHECK(bound == doctest::Approx(exact).epsilon(1e-9));
    }
  }
  const DensityMatrix ghz4 = bbo_state({0.0, 1.0});
  const double b = eta_bound(ghz4, SiteSet{1});
  CHECK(b > 0.0);
  CHECK(b <= 1.0 + 1e-12);
}

TEST_CASE("R tilde") {
  for (int m = 1; m <= 4; ++m) CHECK(rm_bound(product_state("0000").projector(), m).rm_tilde == 0.0);
  CHECK(rm_bound(bbo_state({1.0, 0.0}), 2).rm_tilde == 0.0);
  CHECK(rm_bound(bbo_state({0.0, 1.0}), 4).rm_tilde > 0.0);
  CHECK(std::abs(rm_bound(ghz(4).projector(), 2).rm_tilde - rm_pure(ghz(4), 2)) < 1e-10);

  const BoundReport r = rm_bound(bbo_state({0.2, 0.5}), 3);
  CHECK(r.m == 3);
  CHECK(r.per_partition.size() == 6);
  CHECK_FALSE(r.symmetry_used.has_value());
}

TEST_CASE("symmetry reduction agrees with the full product") {
  const auto v4 = vierergruppe();
  int checked = 0;
  for (int i = 0; i <= 4; ++i) {
    for (int j = 0; j <= 4; ++j) {
      const double p1 = i / 4.0, p2 = j / 4.0 * (1.0 - p1);
      const DensityMatrix rho = bbo_state({p1, p2});
      for (int m = 2; m <= 4; ++m) {
        const BoundReport plain = rm_bound(rho, m);
        const BoundReport reduced = rm_bound(rho, m, {}, v4);
        CHECK(std::abs(plain.rm_tilde - reduced.rm_tilde) < 1e-10);
        CHECK(reduced.symmetry_used.has_value());
      }
      ++checked;
    }
  }
  CHECK(checked == 25);

  Rng rng(46);
  const DensityMatrix asym = random_density(SystemShape(4, 2), rng);
  CHECK_THROWS_AS(rm_bound(asym, 2, {}, v4), Error);
}

TEST_CASE("cache reuse and trace sink") {
  const DensityMatrix rho = bbo_state({0.3, 0.4});
  BlockBoundCache cache;
  const double a = rm_bound(rho, 2, {}, std::nullopt, &cache).rm_tilde;
  CHECK(cache.size() == 14);
  const double b = rm_bound(rho, 2, {}, std::nullopt, &cache).rm_tilde;
  CHECK(a == b);

  BoundOptions opts;
  std::size_t calls = 0;
  opts.trace = [&](const SparseWitness&, const WitnessSpectrum& s, int mult) {
    ++calls;
    CHECK(mult == kOrbitMultiplicity);
    CHECK(s.leading() >= 0.0);
  };
  lambda_bound(phi_plus().projector(), SiteSet{1}, SiteSet{1, 2}, opts);
  CHECK(calls == 1);
}

TEST_CASE("orbit reduction and the dense path give the same bound") {
  Rng rng(47);
  const DensityMatrix r = random_density(SystemShape(3, 2), rng, 2);
  for (auto v : {BoundVariant::SumLiteral, BoundVariant::Quadrature, BoundVariant::MaxSingle}) {
    BoundOptions slow = with(v);
    slow.fast_path = false;
    slow.orbit_reduction = false;
    for (const auto& d : straddling_deltas(3, SiteSet{2}))
      CHECK(std::abs(lambda_bound(r, SiteSet{2}, d, with(v)) - lambda_bound(r, SiteSet{2}, d, slow)) < 1e-9);
  }
}

}  // TEST_SUITE
