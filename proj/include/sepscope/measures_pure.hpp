#pragma once

// Pure-state quantities: M-concurrences C²_{γ,δ}, block entanglement η_γ,
// partition averages ξ_Γ and the R_m family.

#include <cstdint>
#include <vector>

#include "sepscope/flip_family.hpp"
#include "sepscope/partitions.hpp"
#include "sepscope/tensor_core.hpp"

namespace sepscope {

/// N(k) = d^k / (d^k - 1)
double block_normalization(int block_size, int d);

/// How a raw concurrence sum Σ_δ C²_{γ,δ} is turned into η_γ.
struct MeasureConfig {
  enum class Normalization { RawSum, EntropyCalibrated };

  Normalization normalization = Normalization::EntropyCalibrated;
  /// Σ_δ C² = calibration_factor⁻¹ · (1 - Tr ρ_γ²) for the joint reading.
  double calibration_factor = 0.5;
  /// Per block size, used only when the fitted constant depends on |γ|
  /// (index = |γ|; empty means calibration_factor applies globally).
  std::vector<double> block_factors;
  PairReading reading = PairReading::Joint;

  /// Multiplier applied to Σ_δ C² (or Σ_δ Λ²) for a block of size k.
  double scale(int block_size, int d) const;
};

double c2_pure(const PureState& psi, const SiteSet& gamma, const SiteSet& delta,
               PairReading reading = PairReading::Joint);

/// N(|γ|)(1 - Tr ρ_γ²); the authoritative η.
double eta_pure(const PureState& psi, const SiteSet& gamma);

/// Σ_δ C²_{γ,δ} over all straddling δ, scaled per `cfg`.
double eta_via_concurrences(const PureState& psi, const SiteSet& gamma,
                            const MeasureConfig& cfg = {});

struct CalibrationResult {
  MeasureConfig config;
  /// Mean fitted ratio Σ_δ C² / (1 - Tr ρ_γ²), per block size (index |γ|;
  /// 0 where no block of that size occurred).
  std::vector<double> ratio_by_size;
  /// Largest relative deviation of any sample from its size's mean.
  double max_relative_spread = 0.0;
  bool global = true;
  std::size_t fitted_samples = 0;
};

/// Fits the constant relating the concurrence sum to the linear entropy over
/// `samples` random pure states per shape and every proper γ. Throws
/// CalibrationInconsistent when the ratio is not constant per |γ| (1e-8
/// relative).
CalibrationResult calibrate_eta(int samples, const std::vector<SystemShape>& shapes,
                                std::uint64_t seed, PairReading reading = PairReading::Joint);

/// Runs the calibration gate for the joint reading, falling back to the
/// uniform reading if the joint one is inconsistent.
CalibrationResult select_pair_reading(int samples, const std::vector<SystemShape>& shapes,
                                      std::uint64_t seed);

double xi_pure(const PureState& psi, const Partition& partition);

struct PartitionDetail {
  Partition partition;
  double xi;
  std::vector<double> block_eta;
};

struct PureReport {
  int m;
  double rm;
  std::vector<PartitionDetail> per_partition;
};

/// Geometric mean of ξ_Γ over all S(n, m) partitions into m blocks. m = 1
/// yields 0.
PureReport rm_pure_report(const PureState& psi, int m);
double rm_pure(const PureState& psi, int m);

/// Factors below this count as exact zeros in geometric means.
inline constexpr double kZeroFactor = 1e-14;

}  // namespace sepscope
