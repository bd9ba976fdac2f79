#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace sepscope {

/// Set of 1-based site labels, stored as a bitmask (bit i-1 <=> site i).
class SiteSet {
 public:
  static constexpr int kMaxSites = 32;

  SiteSet() = default;
  SiteSet(std::initializer_list<int> sites);
  explicit SiteSet(const std::vector<int>& sites);

  static SiteSet from_mask(std::uint32_t mask) noexcept {
    SiteSet s;
    s.mask_ = mask;
    return s;
  }
  /// {1, ..., n}
  static SiteSet full(int n);

  std::uint32_t mask() const noexcept { return mask_; }
  bool contains(int site) const noexcept;
  int size() const noexcept;
  bool empty() const noexcept { return mask_ == 0; }
  int min_site() const noexcept;
  int max_site() const noexcept;
  std::vector<int> members() const;

  SiteSet complement(int n) const;
  bool subset_of(const SiteSet& other) const noexcept {
    return (mask_ & ~other.mask_) == 0;
  }
  bool intersects(const SiteSet& other) const noexcept {
    return (mask_ & other.mask_) != 0;
  }

  friend SiteSet operator&(SiteSet a, SiteSet b) noexcept {
    return from_mask(a.mask_ & b.mask_);
  }
  friend SiteSet operator|(SiteSet a, SiteSet b) noexcept {
    return from_mask(a.mask_ | b.mask_);
  }
  friend SiteSet operator-(SiteSet a, SiteSet b) noexcept {
    return from_mask(a.mask_ & ~b.mask_);
  }
  friend bool operator==(SiteSet a, SiteSet b) noexcept {
    return a.mask_ == b.mask_;
  }
  /// Lexicographic order on the sorted member lists.
  friend std::strong_ordering operator<=>(const SiteSet& a, const SiteSet& b);

  /// "{1,3}"
  std::string to_string() const;

 private:
  std::uint32_t mask_ = 0;
};

}  // namespace sepscope
