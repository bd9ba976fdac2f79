#pragma once

// Monte-Carlo upper estimates of convex roofs, used to check empirically
// that the computable bounds sit below the quantities they bound.

#include <cstdint>
#include <vector>

#include "sepscope/bounds_mixed.hpp"
#include "sepscope/error.hpp"
#include "sepscope/tensor_core.hpp"

namespace sepscope {

struct Ensemble {
  std::vector<double> weights;
  std::vector<PureState> states;

  ComplexMatrix reconstruct() const;
};

/// Mixes the eigen-ensemble of ρ with the first rank(ρ) columns of a
/// Haar-random size×size unitary. size must be at least rank(ρ).
Ensemble random_ensemble(const DensityMatrix& rho, int size, std::uint64_t seed);

int numerical_rank(const DensityMatrix& rho);

/// min over trials t < `trials` of Σ_α p_α C²_{γ,δ}(ψ_α), trial t drawing
/// from derive_seed(seed, t). Nested in `trials`, hence non-increasing.
double roof_upper(const DensityMatrix& rho, const SiteSet& gamma, const SiteSet& delta,
                  int trials, int size, std::uint64_t seed,
                  PairReading reading = PairReading::Joint);

inline constexpr double kTolGap = 1e-6;

struct DeltaMargin {
  SiteSet delta;
  double lambda_sq;   // Λ²_{γ,δ}
  double roof_upper;  // sampled upper estimate of C²_{γ,δ}(ρ)
  double margin;      // roof_upper - lambda_sq
};

struct ChainReport {
  SiteSet gamma;
  BoundVariant variant;
  std::vector<DeltaMargin> per_delta;
  double lambda_sq_sum;   // Σ_δ Λ²
  double sampled_eta;     // min over trials of Σ_α p_α Σ_δ C²(ψ_α)
  double sum_margin;    // sampled_eta - lambda_sq_sum
  bool ok;
};

struct ChainSettings {
  int trials = 500;
  int ensemble_size = 0;  // 0: dim of the state
  std::uint64_t seed = 7;
  double tol_gap = kTolGap;
};

/// Computes every margin without throwing.
ChainReport chain_margins(const DensityMatrix& rho, const SiteSet& gamma,
                          const BoundOptions& opts, const ChainSettings& settings = {});

class ChainViolation : public Error {
 public:
  ChainViolation(SiteSet delta, double margin, const std::string& what)
      : Error(Errc::ChainViolation, what), delta_(delta), margin_(margin) {}
  const SiteSet& delta() const noexcept { return delta_; }
  double margin() const noexcept { return margin_; }

 private:
  SiteSet delta_;
  double margin_;
};

/// chain_margins, throwing ChainViolation at the first negative margin
/// beyond tol_gap (the summed check reports δ = {}).
ChainReport validate_chain(const DensityMatrix& rho, const SiteSet& gamma,
                           const BoundOptions& opts, const ChainSettings& settings = {});

}  // namespace sepscope
