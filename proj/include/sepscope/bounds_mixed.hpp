#pragma once

// Computable lower bounds for mixed states. For each witness O the
// symmetrized operator F = O + O† defines ρ̃ = F ρ* F; with λ₁ ≥ λ₂ ≥ ...
// the square roots of the eigenvalues of ρρ̃, max{0, 2λ₁ - Σλ} is the convex
// roof of |<ψ|F|ψ*>| = 2|<ψ|O|ψ*>|. These per-witness terms are aggregated
// into Λ_{γ,δ}, summed into block bounds η̃_γ and combined into R̃_m.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "sepscope/flip_family.hpp"
#include "sepscope/measures_pure.hpp"
#include "sepscope/partitions.hpp"
#include "sepscope/tensor_core.hpp"

namespace sepscope {

enum class BoundVariant {
  SumLiteral,  // max{0, Σ_w (2λ₁ - Σλ)}
  Quadrature,  // sqrt(Σ_w max{0, 2λ₁ - Σλ}²)
  MaxSingle,   // max_w max{0, 2λ₁ - Σλ}
};

const char* to_string(BoundVariant v) noexcept;
/// Accepts "literal"/"sum-literal", "quadrature", "max"/"max-single".
BoundVariant parse_bound_variant(const std::string& text);

struct WitnessSpectrum {
  /// Square roots of the eigenvalues of ρρ̃, descending, clamped at 0.
  RealVector lambdas;

  double leading() const noexcept { return lambdas.size() ? lambdas[0] : 0.0; }
  double total() const noexcept { return lambdas.sum(); }
  /// 2λ₁ - Σλ (may be negative).
  double term() const noexcept { return 2.0 * leading() - total(); }
};

using TraceSink = std::function<void(const SparseWitness&, const WitnessSpectrum&, int multiplicity)>;

struct BoundOptions {
  BoundVariant variant = BoundVariant::Quadrature;
  /// Use the ≤4×4 reduced spectrum instead of the dense one.
  bool fast_path = true;
  /// Evaluate one witness per four-label flip orbit.
  bool orbit_reduction = true;
  MeasureConfig config{};
  TraceSink trace{};
};

/// F ρ* F, applied sparsely.
ComplexMatrix rho_tilde(const DensityMatrix& rho, const SparseWitness& w);

WitnessSpectrum witness_spectrum_fast(const DensityMatrix& rho, const SparseWitness& w);
/// Dense route through √ρ F ρ* F √ρ; `sqrt_rho` may be passed to reuse it.
WitnessSpectrum witness_spectrum_dense(const DensityMatrix& rho, const SparseWitness& w,
                                       const ComplexMatrix* sqrt_rho = nullptr);
WitnessSpectrum witness_spectrum(const DensityMatrix& rho, const SparseWitness& w,
                                 bool fast_path = true);

/// Λ_{γ,δ} in the units of C²_{γ,δ}: half the aggregate of the per-witness
/// roof terms (F carries twice the expectation of O).
double lambda_bound(const DensityMatrix& rho, const SiteSet& gamma, const SiteSet& delta,
                    const BoundOptions& opts = {});

/// scale(|γ|) · Σ_δ Λ²_{γ,δ}
double eta_bound(const DensityMatrix& rho, const SiteSet& gamma, const BoundOptions& opts = {});

/// η̃ per block mask, filled lazily; reuse across m for one state.
using BlockBoundCache = std::unordered_map<std::uint32_t, double>;

struct BlockBound {
  SiteSet block;
  double eta;
};

struct PartitionBound {
  Partition partition;
  int multiplicity;
  std::vector<BlockBound> per_block;
  double block_sum;  // Σ_i η̃_{γ_i}
};

struct BoundReport {
  int m;
  BoundVariant variant;
  std::vector<PartitionBound> per_partition;
  double rm_tilde;
  std::optional<OrbitTable> symmetry_used;
};

/// Throws SymmetryViolation unless ρ is invariant (1e-10) under every element.
void check_invariant(const DensityMatrix& rho, const std::vector<SitePermutation>& group);

/// R̃_m = (1/m) (Π_Γ Σ_i η̃_{γ_i})^{1/S(n,m)}. With a symmetry group, one
/// representative per orbit is evaluated and weighted by its multiplicity.
BoundReport rm_bound(const DensityMatrix& rho, int m, const BoundOptions& opts = {},
                     const std::optional<std::vector<SitePermutation>>& symmetry = std::nullopt,
                     BlockBoundCache* cache = nullptr);

}  // namespace sepscope
