#include "sepscope/roof_oracle.hpp"

#include <algorithm>
#include <cmath>

#include "sepscope/measures_pure.hpp"
#include "sepscope/random.hpp"

namespace sepscope {

ComplexMatrix Ensemble::reconstruct() const {
  if (states.empty()) return {};
  const Eigen::Index dim = Eigen::Index(states.front().shape().dim());
  ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
  for (std::size_t a = 0; a < states.size(); ++a) {
    const auto& v = states[a].amplitudes();
    out += weights[a] * v * v.adjoint();
  }
  return out;
}

int numerical_rank(const DensityMatrix& rho) {
  const auto values = herm_eig(rho.matrix()).values;
  const double floor = tol::spectral_floor(values.cwiseAbs().maxCoeff());
  return int((values.array() > floor).count());
}

Ensemble random_ensemble(const DensityMatrix& rho, int size, std::uint64_t seed) {
  const EigenSystem es = herm_eig(rho.matrix());
  const double floor = tol::spectral_floor(es.values.cwiseAbs().maxCoeff());
  const int rank = int((es.values.array() > floor).count());
  if (size < rank) {
    throw Error(Errc::SizeTooSmall, "ensemble size " + std::to_string(size) + " below rank " +
                                        std::to_string(rank));
  }
  // Unnormalized eigen-ensemble vectors √μ_k e_k.
  ComplexMatrix basis = es.vectors.leftCols(rank);
  for (int k = 0; k < rank; ++k) basis.col(k) *= std::sqrt(es.values[k]);

  Rng rng(seed);
  const ComplexMatrix u = haar_unitary(size, rng).leftCols(rank);
  Ensemble out;
  for (int a = 0; a < size; ++a) {
    ComplexVector w = basis * u.row(a).transpose();
    const double weight = w.squaredNorm();
    if (!(weight > 0.0)) continue;
    out.weights.push_back(weight);
    out.states.push_back(PureState::normalized(rho.shape(), std::move(w)));
  }
  return out;
}

namespace {

int default_size(const DensityMatrix& rho, int size) {
  return size > 0 ? size : int(rho.dim());
}

}  // namespace

double roof_upper(const DensityMatrix& rho, const SiteSet& gamma, const SiteSet& delta,
                  int trials, int size, std::uint64_t seed, PairReading reading) {
  if (trials < 1) throw Error(Errc::InvalidRange, "trials must be positive");
  check_witness_sets(rho.shape(), gamma, delta);
  double best = INFINITY;
  for (int t = 0; t < trials; ++t) {
    const Ensemble ens = random_ensemble(rho, default_size(rho, size), derive_seed(seed, std::uint64_t(t)));
    double avg = 0.0;
    for (std::size_t a = 0; a < ens.states.size(); ++a) {
      avg += ens.weights[a] * c2_pure(ens.states[a], gamma, delta, reading);
    }
    best = std::min(best, avg);
  }
  return best;
}

ChainReport chain_margins(const DensityMatrix& rho, const SiteSet& gamma,
                          const BoundOptions& opts, const ChainSettings& settings) {
  if (settings.trials < 1) throw Error(Errc::InvalidRange, "trials must be positive");
  const auto deltas = straddling_deltas(rho.shape().n(), gamma);
  ChainReport report{gamma, opts.variant, {}, 0.0, INFINITY, 0.0, true};

  std::vector<double> best(deltas.size(), INFINITY);
  for (int t = 0; t < settings.trials; ++t) {
    const Ensemble ens = random_ensemble(rho, default_size(rho, settings.ensemble_size),
                                         derive_seed(settings.seed, std::uint64_t(t)));
    std::vector<double> avg(deltas.size(), 0.0);
    for (std::size_t a = 0; a < ens.states.size(); ++a) {
      for (std::size_t i = 0; i < deltas.size(); ++i) {
        avg[i] += ens.weights[a] *
                  c2_pure(ens.states[a], gamma, deltas[i], opts.config.reading);
      }
    }
    double total = 0.0;
    for (std::size_t i = 0; i < deltas.size(); ++i) {
      best[i] = std::min(best[i], avg[i]);
      total += avg[i];
    }
    report.sampled_eta = std::min(report.sampled_eta, total);
  }

  for (std::size_t i = 0; i < deltas.size(); ++i) {
    const double lam = lambda_bound(rho, gamma, deltas[i], opts);
    const double lam_sq = lam * lam;
    report.lambda_sq_sum += lam_sq;
    const double margin = best[i] - lam_sq;
    report.per_delta.push_back({deltas[i], lam_sq, best[i], margin});
    if (margin < -settings.tol_gap) report.ok = false;
  }
  report.sum_margin = report.sampled_eta - report.lambda_sq_sum;
  if (report.sum_margin < -settings.tol_gap) report.ok = false;
  return report;
}

ChainReport validate_chain(const DensityMatrix& rho, const SiteSet& gamma,
                           const BoundOptions& opts, const ChainSettings& settings) {
  ChainReport report = chain_margins(rho, gamma, opts, settings);
  for (const auto& d : report.per_delta) {
    if (d.margin < -settings.tol_gap) {
      throw ChainViolation(d.delta, d.margin,
                           "Λ²=" + std::to_string(d.lambda_sq) + " exceeds roof estimate " +
                               std::to_string(d.roof_upper) + " for γ=" + gamma.to_string() +
                               " δ=" + d.delta.to_string());
    }
  }
  if (report.sum_margin < -settings.tol_gap) {
    throw ChainViolation(SiteSet{}, report.sum_margin,
                         "Σ_δ Λ² exceeds the sampled block roof for γ=" + gamma.to_string());
  }
  return report;
}

}  // namespace sepscope
