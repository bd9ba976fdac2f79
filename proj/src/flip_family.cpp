#include "sepscope/flip_family.hpp"

#include <algorithm>

#include "sepscope/error.hpp"
#include "sepscope/partitions.hpp"

namespace sepscope {

// ---------------------------------------------------------------- assignments

PairAssignment::PairAssignment(const SystemShape& shape, SiteSet domain,
                               std::vector<LevelPair> pairs)
    : domain_(domain), pairs_(std::move(pairs)) {
  if (!domain_.subset_of(SiteSet::full(shape.n()))) {
    throw Error(Errc::SiteOutOfRange, "assignment domain " + domain_.to_string());
  }
  if (pairs_.size() != std::size_t(domain_.size())) {
    throw Error(Errc::DimensionMismatch, "one level pair per domain site required");
  }
  for (const auto& p : pairs_) {
    if (p.k < 0 || p.l >= shape.d() || !(p.k < p.l)) {
      throw Error(Errc::LevelOutOfRange, "pair (" + std::to_string(p.k) + "," +
                                             std::to_string(p.l) + ") needs 0<=k<l<d");
    }
  }
}

LevelPair PairAssignment::at(int site) const {
  const auto sites = domain_.members();
  const auto it = std::find(sites.begin(), sites.end(), site);
  if (it == sites.end()) {
    throw Error(Errc::SiteOutOfRange, "site " + std::to_string(site) + " not assigned");
  }
  return pairs_[std::size_t(it - sites.begin())];
}

std::string PairAssignment::to_string() const {
  std::string out;
  const auto sites = domain_.members();
  for (std::size_t i = 0; i < sites.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(sites[i]) + ':' + std::to_string(pairs_[i].k) + '-' +
           std::to_string(pairs_[i].l);
  }
  return out;
}

std::vector<PairAssignment> pair_assignments(const SystemShape& shape, const SiteSet& delta,
                                             PairReading reading) {
  std::vector<LevelPair> levels;
  for (int k = 0; k < shape.d(); ++k) {
    for (int l = k + 1; l < shape.d(); ++l) levels.push_back({k, l});
  }
  const std::size_t width = std::size_t(delta.size());
  std::vector<PairAssignment> out;
  if (reading == PairReading::Uniform) {
    for (const auto& p : levels) out.emplace_back(shape, delta, std::vector<LevelPair>(width, p));
    return out;
  }
  std::vector<std::size_t> counter(width, 0);
  while (true) {
    std::vector<LevelPair> pairs(width);
    for (std::size_t i = 0; i < width; ++i) pairs[i] = levels[counter[i]];
    out.emplace_back(shape, delta, std::move(pairs));
    std::size_t pos = width;
    while (pos > 0) {
      --pos;
      if (++counter[pos] < levels.size()) break;
      counter[pos] = 0;
      if (pos == 0) return out;
    }
    if (width == 0) return out;
  }
}

// ---------------------------------------------------------------- flips

SparseOperator flip_site(const SystemShape& shape, int site, int k, int l) {
  if (site < 1 || site > shape.n()) {
    throw Error(Errc::SiteOutOfRange, "site " + std::to_string(site));
  }
  if (k < 0 || k >= shape.d() || l < 0 || l >= shape.d()) {
    throw Error(Errc::LevelOutOfRange, "levels " + std::to_string(k) + "," + std::to_string(l));
  }
  SparseOperator op{shape.dim(), {}};
  const std::size_t stride = shape.stride(site);
  for (std::size_t col = 0; col < shape.dim(); ++col) {
    const int v = shape.digit(col, site);
    if (k == l) {
      if (v == k) op.entries.push_back({col, col, 2.0});
    } else if (v == k) {
      op.entries.push_back({col + std::size_t(l - k) * stride, col, 1.0});
    } else if (v == l) {
      op.entries.push_back({col - std::size_t(l - k) * stride, col, 1.0});
    }
  }
  return op;
}

ComplexMatrix to_dense(const SparseOperator& op) {
  ComplexMatrix m = ComplexMatrix::Zero(Eigen::Index(op.dim), Eigen::Index(op.dim));
  for (const auto& e : op.entries) m(Eigen::Index(e.row), Eigen::Index(e.col)) += e.coeff;
  return m;
}

std::optional<std::size_t> flip_subset(const SystemShape& shape, const PairAssignment& assign,
                                       const SiteSet& sites, std::size_t label) {
  if (!sites.subset_of(assign.domain())) {
    throw Error(Errc::SiteOutOfRange, sites.to_string() + " outside assignment domain");
  }
  const auto domain = assign.domain().members();
  const auto& pairs = assign.pairs();
  long long out = (long long)label;
  for (std::size_t i = 0; i < domain.size(); ++i) {
    const int site = domain[i];
    if (!sites.contains(site)) continue;
    const int v = shape.digit(label, site);
    const auto [k, l] = pairs[i];
    const long long step = (long long)(l - k) * (long long)shape.stride(site);
    if (v == k) {
      out += step;
    } else if (v == l) {
      out -= step;
    } else {
      return std::nullopt;
    }
  }
  return std::size_t(out);
}

std::optional<std::size_t> flip_subset(const SystemShape& shape, const PairAssignment& assign,
                                       std::size_t label) {
  return flip_subset(shape, assign, assign.domain(), label);
}

// ---------------------------------------------------------------- witnesses

namespace {

bool symmetric_part_vanishes(const std::vector<WitnessTerm>& t) {
  if (t.empty()) return true;
  if (t.size() == 1) return false;
  const bool same = t[0].row == t[1].row && t[0].col == t[1].col;
  const bool transposed = t[0].row == t[1].col && t[0].col == t[1].row;
  return (same || transposed) && t[0].sign == -t[1].sign;
}

}  // namespace

SparseWitness::SparseWitness(std::size_t dim, std::vector<WitnessTerm> terms, SiteSet gamma,
                             SiteSet delta, PairAssignment assignment, std::size_t label)
    : dim_(dim),
      terms_(std::move(terms)),
      gamma_(gamma),
      delta_(delta),
      assignment_(std::move(assignment)),
      label_(label),
      null_(symmetric_part_vanishes(terms_)) {
  if (terms_.size() > 2) throw Error(Errc::DimensionMismatch, "witness has more than two terms");
  for (const auto& t : terms_) {
    if (t.row >= dim_ || t.col >= dim_ || (t.sign != 1 && t.sign != -1)) {
      throw Error(Errc::InvalidRange, "witness term out of range");
    }
  }
}

Complex SparseWitness::expectation(const ComplexVector& psi) const {
  Complex acc = 0.0;
  for (const auto& t : terms_) {
    acc += double(t.sign) * std::conj(psi[Eigen::Index(t.row)]) *
           std::conj(psi[Eigen::Index(t.col)]);
  }
  return acc;
}

SparseWitness make_witness(const SystemShape& shape, const SiteSet& gamma,
                           const PairAssignment& assign, std::size_t label) {
  if (label >= shape.dim()) throw Error(Errc::InvalidRange, "label " + std::to_string(label));
  const SiteSet& delta = assign.domain();
  std::vector<WitnessTerm> terms;
  if (auto flipped = flip_subset(shape, assign, delta, label)) {
    terms.push_back({*flipped, label, +1});
  }
  const auto left = flip_subset(shape, assign, gamma & delta, label);
  const auto right = flip_subset(shape, assign, delta - gamma, label);
  if (left && right) terms.push_back({*left, *right, -1});
  return SparseWitness(shape.dim(), std::move(terms), gamma, delta, assign, label);
}

void check_witness_sets(const SystemShape& shape, const SiteSet& gamma, const SiteSet& delta) {
  const SiteSet all = SiteSet::full(shape.n());
  if (gamma.empty() || delta.empty()) throw Error(Errc::EmptySubset, "γ and δ must be nonempty");
  if (!gamma.subset_of(all) || !delta.subset_of(all)) {
    throw Error(Errc::SiteOutOfRange, "γ=" + gamma.to_string() + " δ=" + delta.to_string());
  }
  if (gamma == all) throw Error(Errc::FullSetError, "γ has an empty complement");
  if (!delta.intersects(gamma) || delta.subset_of(gamma)) {
    throw Error(Errc::NotStraddling,
                "δ=" + delta.to_string() + " must meet both γ=" + gamma.to_string() +
                    " and its complement");
  }
}

std::vector<SiteSet> straddling_deltas(int n, const SiteSet& gamma) {
  std::vector<SiteSet> out;
  for (const auto& delta : nonempty_subsets(SiteSet::full(n))) {
    if (delta.intersects(gamma) && !delta.subset_of(gamma)) out.push_back(delta);
  }
  return out;
}

void for_each_witness(const SystemShape& shape, const SiteSet& gamma, const SiteSet& delta,
                      PairReading reading,
                      const std::function<void(const SparseWitness&)>& visit) {
  check_witness_sets(shape, gamma, delta);
  for (const auto& assign : pair_assignments(shape, delta, reading)) {
    for (std::size_t j = 0; j < shape.dim(); ++j) {
      if (!flip_subset(shape, assign, delta, j)) continue;
      visit(make_witness(shape, gamma, assign, j));
    }
  }
}

std::vector<SparseWitness> enumerate_witnesses(const SystemShape& shape, const SiteSet& gamma,
                                               const SiteSet& delta, PairReading reading) {
  std::vector<SparseWitness> out;
  for_each_witness(shape, gamma, delta, reading,
                   [&](const SparseWitness& w) { out.push_back(w); });
  return out;
}

void for_each_orbit_witness(const SystemShape& shape, const SiteSet& gamma,
                            const SiteSet& delta, PairReading reading,
                            const std::function<void(const SparseWitness&)>& visit) {
  check_witness_sets(shape, gamma, delta);
  const SiteSet inside = gamma & delta;
  const SiteSet outside = delta - gamma;
  for (const auto& assign : pair_assignments(shape, delta, reading)) {
    for (std::size_t j = 0; j < shape.dim(); ++j) {
      const auto full = flip_subset(shape, assign, delta, j);
      if (!full || *full < j) continue;
      if (*flip_subset(shape, assign, inside, j) < j) continue;
      if (*flip_subset(shape, assign, outside, j) < j) continue;
      visit(make_witness(shape, gamma, assign, j));
    }
  }
}

ComplexMatrix witness_dense(const SparseWitness& w) {
  ComplexMatrix m = ComplexMatrix::Zero(Eigen::Index(w.dim()), Eigen::Index(w.dim()));
  for (const auto& t : w.terms()) m(Eigen::Index(t.row), Eigen::Index(t.col)) += double(t.sign);
  return m;
}

std::string witness_debug_line(const SystemShape& shape, const SparseWitness& w) {
  std::string label;
  const auto digits = shape.digits(w.label());
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (shape.d() > 10 && i) label += '.';
    label += std::to_string(digits[i]);
  }
  std::string terms;
  for (std::size_t i = 0; i < w.terms().size(); ++i) {
    const auto& t = w.terms()[i];
    if (i) terms += ';';
    terms += std::to_string(t.row) + ',' + std::to_string(t.col) + ',' +
             (t.sign > 0 ? "+1" : "-1");
  }
  return w.gamma().to_string() + '|' + w.delta().to_string() + '|' +
         w.assignment().to_string() + '|' + label + '|' + terms;
}

}  // namespace sepscope
