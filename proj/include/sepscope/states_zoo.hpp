#pragma once

// Constructors for the four-qubit noise family and standard test states,
// plus the textual state-spec mini-language used by the CLI.

#include <optional>
#include <string>
#include <variant>

#include "sepscope/tensor_core.hpp"

namespace sepscope {

/// (|0…0> + |1…1>)/√2 on n qubits.
PureState ghz(int n, int d = 2);
/// (|00> + |11>)/√2
PureState phi_plus();
/// Projector onto φ+ for the site pair (i, j) of an n-site register, as a
/// two-qubit operator; the caller composes it with the other sites.
DensityMatrix bell_pair_projector(int i, int j, int n);
/// Equal superposition of the n single-excitation labels.
PureState w_state(int n);
/// Computational basis state from a digit string such as "0101".
PureState product_state(const std::string& digits, int d = 2);
/// w·P+ + (1-w)·𝟙/4
DensityMatrix werner(double w);
/// (1-q)ρ + q·𝟙/d^n
DensityMatrix isotropic_mix(const DensityMatrix& rho, double q);

struct BBOParams {
  double p1;  // weight of P+_12 ⊗ P+_34
  double p2;  // weight of the GHZ projector
};

/// p1 P+_12⊗P+_34 + p2 P_GHZ + (1-p1-p2) 𝟙/16
DensityMatrix bbo_state(const BBOParams& p);

struct NoiseCoords {
  double q;                 // 1 - p1 - p2
  std::optional<double> r;  // p2 / p1; nullopt stands for r = ∞ (p1 = 0)

  bool ratio_infinite() const noexcept { return !r.has_value(); }
};

NoiseCoords coords(const BBOParams& p);
BBOParams from_coords(const NoiseCoords& c);

using BuiltState = std::variant<PureState, DensityMatrix>;

DensityMatrix as_density(const BuiltState& s);

/// ghz:4 | w:4 | bbo:p1,p2 | werner:w | product:0000 | mix:<spec>:q
BuiltState parse_state_spec(const std::string& spec);

}  // namespace sepscope
