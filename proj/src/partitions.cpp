#include "sepscope/partitions.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "sepscope/error.hpp"

namespace sepscope {

// ---------------------------------------------------------------- Partition

Partition::Partition(int n, std::vector<SiteSet> blocks) : n_(n), blocks_(std::move(blocks)) {
  if (n < 1 || n > SiteSet::kMaxSites) {
    throw Error(Errc::InvalidRange, "partition of " + std::to_string(n) + " sites");
  }
  SiteSet seen;
  for (const auto& b : blocks_) {
    if (b.empty()) throw Error(Errc::EmptySubset, "empty block");
    if (b.intersects(seen)) {
      throw Error(Errc::InvalidRange, "blocks overlap at " + (b & seen).to_string());
    }
    seen = seen | b;
  }
  if (seen != SiteSet::full(n)) {
    throw Error(Errc::InvalidRange, "blocks do not cover {1.." + std::to_string(n) + "}");
  }
  std::sort(blocks_.begin(), blocks_.end(),
            [](const SiteSet& a, const SiteSet& b) { return a.min_site() < b.min_site(); });
}

std::strong_ordering operator<=>(const Partition& a, const Partition& b) {
  if (auto c = a.n_ <=> b.n_; c != 0) return c;
  return std::lexicographical_compare_three_way(a.blocks_.begin(), a.blocks_.end(),
                                                b.blocks_.begin(), b.blocks_.end());
}

std::string Partition::to_string() const {
  std::string out = "[";
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    if (i) out += ',';
    out += '[';
    const auto m = blocks_[i].members();
    for (std::size_t k = 0; k < m.size(); ++k) {
      if (k) out += ',';
      out += std::to_string(m[k]);
    }
    out += ']';
  }
  return out + "]";
}

// ---------------------------------------------------------------- permutations

SitePermutation::SitePermutation(std::vector<int> images) : images_(std::move(images)) {
  const int n = int(images_.size());
  if (n < 1 || n > SiteSet::kMaxSites) {
    throw Error(Errc::InvalidRange, "permutation size " + std::to_string(n));
  }
  std::vector<bool> hit(std::size_t(n) + 1, false);
  for (int v : images_) {
    if (v < 1 || v > n || hit[std::size_t(v)]) {
      throw Error(Errc::InvalidRange, "images are not a bijection on 1.." + std::to_string(n));
    }
    hit[std::size_t(v)] = true;
  }
}

SitePermutation SitePermutation::identity(int n) {
  std::vector<int> im(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) im[std::size_t(i)] = i + 1;
  return SitePermutation(std::move(im));
}

SitePermutation operator*(const SitePermutation& a, const SitePermutation& b) {
  if (a.n() != b.n()) throw Error(Errc::DimensionMismatch, "permutation sizes differ");
  std::vector<int> im(b.images_.size());
  for (std::size_t i = 0; i < im.size(); ++i) im[i] = a(b.images_[i]);
  return SitePermutation(std::move(im));
}

SiteSet SitePermutation::apply(const SiteSet& s) const {
  SiteSet out;
  for (int site : s.members()) out = out | SiteSet{(*this)(site)};
  return out;
}

Partition SitePermutation::apply(const Partition& p) const {
  if (p.n() != n()) throw Error(Errc::DimensionMismatch, "permutation/partition sizes differ");
  std::vector<SiteSet> blocks;
  blocks.reserve(p.blocks().size());
  for (const auto& b : p.blocks()) blocks.push_back(apply(b));
  return Partition(p.n(), std::move(blocks));
}

// ---------------------------------------------------------------- enumeration

std::vector<SiteSet> nonempty_subsets(const SiteSet& universe) {
  const auto u = universe.members();
  const int size = int(u.size());
  std::vector<SiteSet> out;
  out.reserve((std::size_t{1} << size) - 1);
  std::vector<int> pick;
  for (int k = 1; k <= size; ++k) {
    pick.resize(std::size_t(k));
    for (int i = 0; i < k; ++i) pick[std::size_t(i)] = i;
    while (true) {
      std::uint32_t mask = 0;
      for (int i : pick) mask |= std::uint32_t{1} << (u[std::size_t(i)] - 1);
      out.push_back(SiteSet::from_mask(mask));
      int i = k - 1;
      while (i >= 0 && pick[std::size_t(i)] == size - k + i) --i;
      if (i < 0) break;
      ++pick[std::size_t(i)];
      for (int j = i + 1; j < k; ++j) pick[std::size_t(j)] = pick[std::size_t(j - 1)] + 1;
    }
  }
  return out;
}

std::vector<Partition> set_partitions(int n, int m) {
  if (n < 1 || n > SiteSet::kMaxSites || m < 1 || m > n) {
    throw Error(Errc::InvalidRange,
                "set_partitions(" + std::to_string(n) + "," + std::to_string(m) + ")");
  }
  // Restricted growth strings a_1..a_n: a_1 = 0, a_i <= 1 + max(a_1..a_{i-1}),
  // with exactly m distinct values.
  std::vector<Partition> out;
  std::vector<int> rgs(std::size_t(n), 0);
  std::vector<int> prefix_max(std::size_t(n), 0);

  auto emit = [&] {
    std::vector<std::uint32_t> masks(std::size_t(m), 0);
    for (int i = 0; i < n; ++i) masks[std::size_t(rgs[std::size_t(i)])] |= std::uint32_t{1} << i;
    std::vector<SiteSet> blocks;
    blocks.reserve(masks.size());
    for (auto mask : masks) blocks.push_back(SiteSet::from_mask(mask));
    out.emplace_back(n, std::move(blocks));
  };

  // Depth-first over positions 2..n.
  auto recurse = [&](auto&& self, int pos) -> void {
    if (pos == n) {
      if (prefix_max[std::size_t(n - 1)] == m - 1) emit();
      return;
    }
    const int cur_max = prefix_max[std::size_t(pos - 1)];
    // Remaining positions must be able to introduce the missing block labels.
    for (int v = 0; v <= std::min(cur_max + 1, m - 1); ++v) {
      const int new_max = std::max(cur_max, v);
      if ((m - 1 - new_max) > (n - 1 - pos)) continue;
      rgs[std::size_t(pos)] = v;
      prefix_max[std::size_t(pos)] = new_max;
      self(self, pos + 1);
    }
  };
  recurse(recurse, 1);
  return out;
}

std::uint64_t stirling(int n, int m) {
  if (n < 1 || n > kMaxStirlingN || m < 1 || m > n) {
    throw Error(Errc::InvalidRange,
                "stirling(" + std::to_string(n) + "," + std::to_string(m) + ")");
  }
  // S(n,m) = Σ_k (-1)^(m-k) k^(n-1) / ((k-1)! (m-k)!)
  //        = [Σ_k (-1)^(m-k) C(m-1,k-1) k^(n-1)] / (m-1)!
  using Wide = __int128;
  Wide binom = 1;  // C(m-1, k-1), starting at k=1
  Wide acc = 0;
  for (int k = 1; k <= m; ++k) {
    Wide power = 1;
    for (int e = 0; e < n - 1; ++e) power *= k;
    const Wide term = binom * power;
    acc += ((m - k) % 2 == 0) ? term : -term;
    binom = binom * (m - k) / k;
  }
  Wide fact = 1;
  for (int k = 2; k <= m - 1; ++k) fact *= k;
  if (acc % fact != 0 || acc <= 0) {
    throw Error(Errc::InvalidRange, "stirling: inexact division");
  }
  return std::uint64_t(acc / fact);
}

// ---------------------------------------------------------------- groups

void check_group(const std::vector<SitePermutation>& group) {
  if (group.empty()) throw Error(Errc::NotAGroup, "empty group");
  const int n = group.front().n();
  for (const auto& g : group) {
    if (g.n() != n) throw Error(Errc::NotAGroup, "elements act on different site counts");
  }
  const std::set<SitePermutation> elems(group.begin(), group.end());
  if (!elems.contains(SitePermutation::identity(n))) {
    throw Error(Errc::NotAGroup, "identity missing");
  }
  for (const auto& a : elems) {
    for (const auto& b : elems) {
      if (!elems.contains(a * b)) throw Error(Errc::NotAGroup, "not closed under composition");
    }
  }
}

std::vector<SitePermutation> close_group(const std::vector<SitePermutation>& generators, int n) {
  std::set<SitePermutation> elems{SitePermutation::identity(n)};
  for (const auto& g : generators) {
    if (g.n() != n) throw Error(Errc::DimensionMismatch, "generator size");
  }
  std::vector<SitePermutation> frontier(elems.begin(), elems.end());
  while (!frontier.empty()) {
    std::vector<SitePermutation> next;
    for (const auto& e : frontier) {
      for (const auto& g : generators) {
        auto p = g * e;
        if (elems.insert(p).second) next.push_back(std::move(p));
      }
    }
    frontier = std::move(next);
  }
  return {elems.begin(), elems.end()};
}

std::vector<SitePermutation> vierergruppe() {
  return {SitePermutation({1, 2, 3, 4}), SitePermutation({2, 1, 3, 4}),
          SitePermutation({1, 2, 4, 3}), SitePermutation({2, 1, 4, 3})};
}

OrbitTable orbit_reduce(const std::vector<Partition>& parts,
                        const std::vector<SitePermutation>& group) {
  check_group(group);
  OrbitTable table;
  std::map<Partition, std::size_t> orbit_of;  // member -> entry index
  for (const auto& p : parts) {
    if (orbit_of.contains(p)) continue;
    std::set<Partition> orbit;
    for (const auto& g : group) orbit.insert(g.apply(p));
    OrbitEntry entry{p, 0, {}};
    for (const auto& q : parts) {
      if (orbit.contains(q) && !orbit_of.contains(q)) {
        orbit_of.emplace(q, table.entries.size());
        entry.members.push_back(q);
      }
    }
    entry.multiplicity = int(entry.members.size());
    entry.representative = *std::min_element(entry.members.begin(), entry.members.end());
    table.entries.push_back(std::move(entry));
  }
  return table;
}

}  // namespace sepscope
