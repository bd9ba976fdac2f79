#pragma once

// Flip operators σ_kl, their tensor products f_δ, and the witness operators
//
//   O_{γ,δ}({k_i,l_i}; j) = f_δ |j><j|  -  f_{γ∩δ} |j><j| f_{γ̄∩δ}
//
// stored as at most two signed unit entries. δ must meet both γ and its
// complement; for any other δ the symmetric part of O vanishes and the
// witness is null.

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sepscope/site_set.hpp"
#include "sepscope/tensor_core.hpp"

namespace sepscope {

struct LevelPair {
  int k;
  int l;
  friend bool operator==(const LevelPair&, const LevelPair&) = default;
};

/// Site -> (k, l) with k < l for every site of the domain.
class PairAssignment {
 public:
  PairAssignment(const SystemShape& shape, SiteSet domain, std::vector<LevelPair> pairs);

  const SiteSet& domain() const noexcept { return domain_; }
  /// Pairs in ascending site order.
  const std::vector<LevelPair>& pairs() const noexcept { return pairs_; }
  LevelPair at(int site) const;

  /// "2:0-1,3:0-2"
  std::string to_string() const;

 private:
  SiteSet domain_;
  std::vector<LevelPair> pairs_;
};

/// How the pair sum Σ_{k_i<l_i} ranges over a multi-site δ.
enum class PairReading {
  Joint,    // independent pair on every site of δ
  Uniform,  // one pair shared by all sites of δ
};

std::vector<PairAssignment> pair_assignments(const SystemShape& shape, const SiteSet& delta,
                                             PairReading reading = PairReading::Joint);

struct SparseEntry {
  std::size_t row;
  std::size_t col;
  double coeff;
};

struct SparseOperator {
  std::size_t dim = 0;
  std::vector<SparseEntry> entries;
};

/// σ_kl on site i, identity elsewhere. k == l gives 2|k><k|.
SparseOperator flip_site(const SystemShape& shape, int site, int k, int l);

ComplexMatrix to_dense(const SparseOperator& op);

/// f_δ acting on basis labels: swaps k_i <-> l_i on each site of the
/// assignment's domain. Returns nullopt when a δ-digit lies outside its pair
/// (the label is annihilated).
std::optional<std::size_t> flip_subset(const SystemShape& shape, const PairAssignment& assign,
                                       std::size_t label);

/// Same, restricted to the sites of `sites` (must be within the domain).
std::optional<std::size_t> flip_subset(const SystemShape& shape, const PairAssignment& assign,
                                       const SiteSet& sites, std::size_t label);

struct WitnessTerm {
  std::size_t row;
  std::size_t col;
  int sign;
  friend bool operator==(const WitnessTerm&, const WitnessTerm&) = default;
};

class SparseWitness {
 public:
  SparseWitness(std::size_t dim, std::vector<WitnessTerm> terms, SiteSet gamma, SiteSet delta,
                PairAssignment assignment, std::size_t label);

  std::size_t dim() const noexcept { return dim_; }
  const std::vector<WitnessTerm>& terms() const noexcept { return terms_; }
  const SiteSet& gamma() const noexcept { return gamma_; }
  const SiteSet& delta() const noexcept { return delta_; }
  const PairAssignment& assignment() const noexcept { return assignment_; }
  std::size_t label() const noexcept { return label_; }

  /// True when O + O† vanishes, so <ψ|O|ψ*> = 0 for every ψ.
  bool is_null() const noexcept { return null_; }

  /// <ψ|O|ψ*> = Σ sign · conj(ψ_row) · conj(ψ_col)
  Complex expectation(const ComplexVector& psi) const;

 private:
  std::size_t dim_;
  std::vector<WitnessTerm> terms_;
  SiteSet gamma_;
  SiteSet delta_;
  PairAssignment assignment_;
  std::size_t label_;
  bool null_;
};

/// Builds the witness for one (assignment, label) without checking that δ
/// straddles the γ cut. Terms whose flip annihilates the label are omitted.
SparseWitness make_witness(const SystemShape& shape, const SiteSet& gamma,
                           const PairAssignment& assign, std::size_t label);

/// Checks γ, δ nonempty, within {1..n}, and δ meeting both γ and γ̄.
void check_witness_sets(const SystemShape& shape, const SiteSet& gamma, const SiteSet& delta);

/// Flip sets that meet both γ and γ̄, in graded lexicographic order.
std::vector<SiteSet> straddling_deltas(int n, const SiteSet& gamma);

/// Calls `visit` for every non-annihilated witness of (γ, δ): assignments
/// outer (lexicographic, last site fastest), labels inner ascending.
void for_each_witness(const SystemShape& shape, const SiteSet& gamma, const SiteSet& delta,
                      PairReading reading, const std::function<void(const SparseWitness&)>& visit);

std::vector<SparseWitness> enumerate_witnesses(const SystemShape& shape, const SiteSet& gamma,
                                               const SiteSet& delta,
                                               PairReading reading = PairReading::Joint);

/// One witness per four-label flip orbit {j, f_δ j, f_{γ∩δ} j, f_{γ̄∩δ} j}
/// (the smallest label); the other three share O + O† up to sign and
/// transposition. Each returned witness stands for kOrbitMultiplicity.
inline constexpr int kOrbitMultiplicity = 4;
void for_each_orbit_witness(const SystemShape& shape, const SiteSet& gamma,
                            const SiteSet& delta, PairReading reading,
                            const std::function<void(const SparseWitness&)>& visit);

ComplexMatrix witness_dense(const SparseWitness& w);

/// `γ|δ|assignment|j|row,col,sign;row,col,sign`
std::string witness_debug_line(const SystemShape& shape, const SparseWitness& w);

}  // namespace sepscope
