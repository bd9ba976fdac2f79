#pragma once

// Subset and set-partition combinatorics: enumeration, Stirling numbers of
// the second kind, and orbit reduction under site-relabelling groups.

#include <cstdint>
#include <string>
#include <vector>

#include "sepscope/site_set.hpp"

namespace sepscope {

/// Unordered set of disjoint nonempty blocks covering {1..n}, stored in
/// canonical order (blocks sorted by smallest element).
class Partition {
 public:
  Partition(int n, std::vector<SiteSet> blocks);

  int n() const noexcept { return n_; }
  int size() const noexcept { return int(blocks_.size()); }
  const std::vector<SiteSet>& blocks() const noexcept { return blocks_; }

  friend bool operator==(const Partition&, const Partition&) = default;
  /// Lexicographic over the canonical block sequence.
  friend std::strong_ordering operator<=>(const Partition& a, const Partition& b);

  /// "[[1],[2,3,4]]"
  std::string to_string() const;

 private:
  int n_;
  std::vector<SiteSet> blocks_;
};

/// Bijection on {1..n}; images[i-1] is the image of site i.
class SitePermutation {
 public:
  explicit SitePermutation(std::vector<int> images);
  static SitePermutation identity(int n);

  int n() const noexcept { return int(images_.size()); }
  int operator()(int site) const { return images_.at(std::size_t(site - 1)); }
  const std::vector<int>& images() const noexcept { return images_; }

  /// (a * b)(i) = a(b(i))
  friend SitePermutation operator*(const SitePermutation& a, const SitePermutation& b);
  friend bool operator==(const SitePermutation&, const SitePermutation&) = default;
  friend auto operator<=>(const SitePermutation&, const SitePermutation&) = default;

  SiteSet apply(const SiteSet& s) const;
  Partition apply(const Partition& p) const;

 private:
  std::vector<int> images_;
};

struct OrbitEntry {
  Partition representative;
  int multiplicity;
  std::vector<Partition> members;
};

struct OrbitTable {
  std::vector<OrbitEntry> entries;
};

/// All 2^|universe| - 1 nonempty subsets, ordered by size and then
/// lexicographically.
std::vector<SiteSet> nonempty_subsets(const SiteSet& universe);

/// Partitions of {1..n} into exactly m blocks, in restricted-growth-string
/// order.
std::vector<Partition> set_partitions(int n, int m);

inline constexpr int kMaxStirlingN = 20;

/// S(n, m) from the alternating-sum formula, evaluated exactly.
std::uint64_t stirling(int n, int m);

/// Groups `parts` into orbits of `group`. Throws NotAGroup unless the group
/// contains the identity and is closed under composition. Orbits appear in
/// order of first occurrence in `parts`; the representative is the smallest
/// member.
OrbitTable orbit_reduce(const std::vector<Partition>& parts,
                        const std::vector<SitePermutation>& group);

void check_group(const std::vector<SitePermutation>& group);

/// Smallest group containing `generators` (identity included).
std::vector<SitePermutation> close_group(const std::vector<SitePermutation>& generators,
                                         int n);

/// {e, (12), (34), (12)(34)} on four sites.
std::vector<SitePermutation> vierergruppe();

}  // namespace sepscope
