#include "sepscope/site_set.hpp"

#include <algorithm>
#include <bit>

#include "sepscope/error.hpp"

namespace sepscope {

namespace {

std::uint32_t site_bit(int site) {
  if (site < 1 || site > SiteSet::kMaxSites) {
    throw Error(Errc::SiteOutOfRange,
                "site label " + std::to_string(site) + " outside 1.." +
                    std::to_string(SiteSet::kMaxSites));
  }
  return std::uint32_t{1} << (site - 1);
}

}  // namespace

SiteSet::SiteSet(std::initializer_list<int> sites) {
  for (int s : sites) mask_ |= site_bit(s);
}

SiteSet::SiteSet(const std::vector<int>& sites) {
  for (int s : sites) mask_ |= site_bit(s);
}

SiteSet SiteSet::full(int n) {
  if (n < 0 || n > kMaxSites) {
    throw Error(Errc::InvalidRange, "site count " + std::to_string(n));
  }
  return from_mask(n == 32 ? ~std::uint32_t{0}
                           : (std::uint32_t{1} << n) - 1);
}

bool SiteSet::contains(int site) const noexcept {
  if (site < 1 || site > kMaxSites) return false;
  return (mask_ >> (site - 1)) & 1u;
}

int SiteSet::size() const noexcept { return std::popcount(mask_); }

int SiteSet::min_site() const noexcept {
  return mask_ == 0 ? 0 : std::countr_zero(mask_) + 1;
}

int SiteSet::max_site() const noexcept {
  return mask_ == 0 ? 0 : kMaxSites - std::countl_zero(mask_);
}

std::vector<int> SiteSet::members() const {
  std::vector<int> out;
  out.reserve(size());
  for (std::uint32_t m = mask_; m != 0; m &= m - 1) {
    out.push_back(std::countr_zero(m) + 1);
  }
  return out;
}

SiteSet SiteSet::complement(int n) const {
  SiteSet all = full(n);
  if (!subset_of(all)) {
    throw Error(Errc::SiteOutOfRange,
                to_string() + " is not inside {1.." + std::to_string(n) + "}");
  }
  return all - *this;
}

std::strong_ordering operator<=>(const SiteSet& a, const SiteSet& b) {
  const auto am = a.members();
  const auto bm = b.members();
  return std::lexicographical_compare_three_way(am.begin(), am.end(),
                                                bm.begin(), bm.end());
}

std::string SiteSet::to_string() const {
  std::string out = "{";
  bool first = true;
  for (int s : members()) {
    if (!first) out += ',';
    out += std::to_string(s);
    first = false;
  }
  return out + "}";
}

}  // namespace sepscope
