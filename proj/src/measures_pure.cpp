#include "sepscope/measures_pure.hpp"

#include <cmath>
#include <random>
#include <unordered_map>

#include "sepscope/error.hpp"
#include "sepscope/random.hpp"

namespace sepscope {

double block_normalization(int block_size, int d) {
  const double dk = std::pow(double(d), block_size);
  return dk / (dk - 1.0);
}

double MeasureConfig::scale(int block_size, int d) const {
  if (normalization == Normalization::RawSum) return 1.0;
  double factor = calibration_factor;
  if (!block_factors.empty()) {
    if (block_size < 0 || std::size_t(block_size) >= block_factors.size() ||
        !(block_factors[std::size_t(block_size)] > 0.0)) {
      throw Error(Errc::CalibrationInconsistent,
                  "no calibration for block size " + std::to_string(block_size));
    }
    factor = block_factors[std::size_t(block_size)];
  }
  return factor * block_normalization(block_size, d);
}

namespace {

void check_proper_block(const SystemShape& shape, const SiteSet& gamma) {
  if (gamma.empty()) throw Error(Errc::EmptySubset, "γ is empty");
  const SiteSet all = SiteSet::full(shape.n());
  if (!gamma.subset_of(all)) throw Error(Errc::SiteOutOfRange, "γ=" + gamma.to_string());
  if (gamma == all) throw Error(Errc::FullSetError, "γ has an empty complement");
}

double raw_concurrence_sum(const PureState& psi, const SiteSet& gamma, PairReading reading) {
  double sum = 0.0;
  for (const auto& delta : straddling_deltas(psi.shape().n(), gamma)) {
    sum += c2_pure(psi, gamma, delta, reading);
  }
  return sum;
}

}  // namespace

double c2_pure(const PureState& psi, const SiteSet& gamma, const SiteSet& delta,
               PairReading reading) {
  double sum = 0.0;
  for_each_witness(psi.shape(), gamma, delta, reading, [&](const SparseWitness& w) {
    sum += std::norm(w.expectation(psi.amplitudes()));
  });
  return sum;
}

double eta_pure(const PureState& psi, const SiteSet& gamma) {
  check_proper_block(psi.shape(), gamma);
  const double p = purity(partial_trace(psi.projector(), gamma));
  return block_normalization(gamma.size(), psi.shape().d()) * std::max(0.0, 1.0 - p);
}

double eta_via_concurrences(const PureState& psi, const SiteSet& gamma,
                            const MeasureConfig& cfg) {
  check_proper_block(psi.shape(), gamma);
  return cfg.scale(gamma.size(), psi.shape().d()) *
         raw_concurrence_sum(psi, gamma, cfg.reading);
}

CalibrationResult calibrate_eta(int samples, const std::vector<SystemShape>& shapes,
                                std::uint64_t seed, PairReading reading) {
  if (samples < 100) {
    throw Error(Errc::InvalidRange, "calibration needs at least 100 samples");
  }
  std::vector<std::vector<double>> ratios(SiteSet::kMaxSites + 1);
  Rng rng(seed);
  for (const auto& shape : shapes) {
    const SiteSet all = SiteSet::full(shape.n());
    const auto blocks = nonempty_subsets(all);
    for (int s = 0; s < samples; ++s) {
      const PureState psi = random_pure_state(shape, rng);
      for (const auto& gamma : blocks) {
        if (gamma == all) continue;
        const double entropy = 1.0 - purity(partial_trace(psi.projector(), gamma));
        if (entropy < 1e-12) continue;  // product across the cut: ratio is 0/0
        ratios[std::size_t(gamma.size())].push_back(
            raw_concurrence_sum(psi, gamma, reading) / entropy);
      }
    }
  }

  CalibrationResult result;
  result.config.reading = reading;
  result.ratio_by_size.assign(ratios.size(), 0.0);
  double global_min = INFINITY, global_max = -INFINITY;
  for (std::size_t k = 0; k < ratios.size(); ++k) {
    const auto& r = ratios[k];
    if (r.empty()) continue;
    double mean = 0.0;
    for (double v : r) mean += v;
    mean /= double(r.size());
    for (double v : r) {
      result.max_relative_spread =
          std::max(result.max_relative_spread, std::abs(v - mean) / std::abs(mean));
    }
    result.ratio_by_size[k] = mean;
    result.fitted_samples += r.size();
    global_min = std::min(global_min, mean);
    global_max = std::max(global_max, mean);
  }
  if (result.fitted_samples == 0) {
    throw Error(Errc::CalibrationInconsistent, "no entangled samples to fit");
  }
  if (result.max_relative_spread > 1e-8) {
    throw Error(Errc::CalibrationInconsistent,
                "concurrence sum / linear entropy varies by " +
                    std::to_string(result.max_relative_spread) + " (relative)");
  }
  result.global = (global_max - global_min) <= 1e-8 * std::abs(global_max);
  if (result.global) {
    result.config.calibration_factor = 1.0 / (0.5 * (global_min + global_max));
  } else {
    result.config.block_factors.assign(result.ratio_by_size.size(), 0.0);
    for (std::size_t k = 0; k < result.ratio_by_size.size(); ++k) {
      if (result.ratio_by_size[k] > 0.0) {
        result.config.block_factors[k] = 1.0 / result.ratio_by_size[k];
      }
    }
  }
  return result;
}

CalibrationResult select_pair_reading(int samples, const std::vector<SystemShape>& shapes,
                                      std::uint64_t seed) {
  try {
    return calibrate_eta(samples, shapes, seed, PairReading::Joint);
  } catch (const Error& e) {
    if (e.code() != Errc::CalibrationInconsistent) throw;
  }
  return calibrate_eta(samples, shapes, seed, PairReading::Uniform);
}

double xi_pure(const PureState& psi, const Partition& partition) {
  if (partition.n() != psi.shape().n()) {
    throw Error(Errc::DimensionMismatch, "partition is over a different number of sites");
  }
  if (partition.size() < 2) throw Error(Errc::TrivialPartition, "ξ needs at least two blocks");
  double sum = 0.0;
  for (const auto& block : partition.blocks()) sum += eta_pure(psi, block);
  return sum / double(partition.size());
}

PureReport rm_pure_report(const PureState& psi, int m) {
  const int n = psi.shape().n();
  if (m < 1 || m > n) {
    throw Error(Errc::InvalidRange, "m=" + std::to_string(m) + " for n=" + std::to_string(n));
  }
  PureReport report{m, 0.0, {}};
  if (m == 1) {
    report.per_partition.push_back({Partition(n, {SiteSet::full(n)}), 0.0, {0.0}});
    return report;
  }
  std::unordered_map<std::uint32_t, double> eta_cache;
  double log_sum = 0.0;
  bool zero = false;
  for (const auto& part : set_partitions(n, m)) {
    PartitionDetail detail{part, 0.0, {}};
    for (const auto& block : part.blocks()) {
      auto it = eta_cache.find(block.mask());
      if (it == eta_cache.end()) it = eta_cache.emplace(block.mask(), eta_pure(psi, block)).first;
      detail.block_eta.push_back(it->second);
      detail.xi += it->second;
    }
    detail.xi /= double(m);
    if (detail.xi < kZeroFactor) {
      zero = true;
    } else {
      log_sum += std::log(detail.xi);
    }
    report.per_partition.push_back(std::move(detail));
  }
  report.rm = zero ? 0.0 : std::exp(log_sum / double(stirling(n, m)));
  return report;
}

double rm_pure(const PureState& psi, int m) { return rm_pure_report(psi, m).rm; }

}  // namespace sepscope
