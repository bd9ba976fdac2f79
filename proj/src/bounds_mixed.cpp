#include "sepscope/bounds_mixed.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "sepscope/error.hpp"

namespace sepscope {

const char* to_string(BoundVariant v) noexcept {
  switch (v) {
    case BoundVariant::SumLiteral: return "literal";
    case BoundVariant::Quadrature: return "quadrature";
    case BoundVariant::MaxSingle: return "max";
  }
  return "unknown";
}

BoundVariant parse_bound_variant(const std::string& text) {
  if (text == "literal" || text == "sum-literal") return BoundVariant::SumLiteral;
  if (text == "quadrature") return BoundVariant::Quadrature;
  if (text == "max" || text == "max-single") return BoundVariant::MaxSingle;
  throw Error(Errc::ParseError, "unknown bound variant '" + text + "'");
}

namespace {

struct SymEntry {
  std::size_t row;
  std::size_t col;
  double value;
};

/// Nonzero entries of F = O + O†.
std::vector<SymEntry> symmetrized_entries(const SparseWitness& w) {
  std::vector<SymEntry> out;
  auto add = [&](std::size_t r, std::size_t c, double v) {
    for (auto& e : out) {
      if (e.row == r && e.col == c) {
        e.value += v;
        return;
      }
    }
    out.push_back({r, c, v});
  };
  for (const auto& t : w.terms()) {
    add(t.row, t.col, double(t.sign));
    add(t.col, t.row, double(t.sign));
  }
  std::erase_if(out, [](const SymEntry& e) { return e.value == 0.0; });
  return out;
}

void check_dims(const DensityMatrix& rho, const SparseWitness& w) {
  if (rho.dim() != w.dim()) {
    throw Error(Errc::DimensionMismatch, "witness dimension " + std::to_string(w.dim()) +
                                             " vs state dimension " + std::to_string(rho.dim()));
  }
}

RealVector roots_descending(RealVector mu) {
  const double floor = tol::spectral_floor(mu.size() ? mu.cwiseAbs().maxCoeff() : 0.0);
  for (Eigen::Index i = 0; i < mu.size(); ++i) mu[i] = mu[i] <= floor ? 0.0 : std::sqrt(mu[i]);
  std::sort(mu.begin(), mu.end(), std::greater<>());
  return mu;
}

}  // namespace

ComplexMatrix rho_tilde(const DensityMatrix& rho, const SparseWitness& w) {
  check_dims(rho, w);
  const auto f = symmetrized_entries(w);
  const ComplexMatrix& m = rho.matrix();
  ComplexMatrix out = ComplexMatrix::Zero(m.rows(), m.cols());
  for (const auto& left : f) {
    for (const auto& right : f) {
      out(Eigen::Index(left.row), Eigen::Index(right.col)) +=
          left.value * right.value *
          std::conj(m(Eigen::Index(left.col), Eigen::Index(right.row)));
    }
  }
  return out;
}

WitnessSpectrum witness_spectrum_fast(const DensityMatrix& rho, const SparseWitness& w) {
  check_dims(rho, w);
  // ρρ̃ = ρ F ρ* F has rank <= |P| where P are the indices F touches; its
  // nonzero spectrum equals that of ρ_PP F_PP ρ*_PP F_PP.
  const auto f = symmetrized_entries(w);
  std::array<std::size_t, 4> touched{};
  int k = 0;
  auto slot = [&](std::size_t idx) {
    for (int i = 0; i < k; ++i) {
      if (touched[std::size_t(i)] == idx) return i;
    }
    touched[std::size_t(k)] = idx;
    return k++;
  };
  Eigen::Matrix4cd fs = Eigen::Matrix4cd::Zero();
  for (const auto& e : f) {
    const int r = slot(e.row);
    const int c = slot(e.col);
    fs(r, c) += e.value;
  }
  Eigen::Matrix4cd a = Eigen::Matrix4cd::Zero();
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      a(i, j) = rho.matrix()(Eigen::Index(touched[std::size_t(i)]),
                             Eigen::Index(touched[std::size_t(j)]));
    }
  }

  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> ea(a);
  if (ea.info() != Eigen::Success) {
    throw Error(Errc::ConvergenceFailure, "reduced block eigensolver failed");
  }
  Eigen::Vector4d va = ea.eigenvalues();
  const double floor_a = tol::spectral_floor(va.cwiseAbs().maxCoeff());
  for (int i = 0; i < 4; ++i) va[i] = va[i] <= floor_a ? 0.0 : std::sqrt(va[i]);
  const Eigen::Matrix4cd sqrt_a = ea.eigenvectors() * va.asDiagonal() * ea.eigenvectors().adjoint();

  Eigen::Matrix4cd h = sqrt_a * fs * a.conjugate() * fs * sqrt_a;
  h = 0.5 * (h + h.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> eh(h, Eigen::EigenvaluesOnly);
  if (eh.info() != Eigen::Success) {
    throw Error(Errc::ConvergenceFailure, "witness spectrum eigensolver failed");
  }
  return WitnessSpectrum{roots_descending(eh.eigenvalues())};
}

WitnessSpectrum witness_spectrum_dense(const DensityMatrix& rho, const SparseWitness& w,
                                       const ComplexMatrix* sqrt_rho) {
  check_dims(rho, w);
  ComplexMatrix local;
  if (sqrt_rho == nullptr) {
    local = sqrt_psd(rho.matrix());
    sqrt_rho = &local;
  }
  const ComplexMatrix wd = witness_dense(w);
  const ComplexMatrix f = wd + wd.adjoint();
  ComplexMatrix h = (*sqrt_rho) * f * rho.matrix().conjugate() * f * (*sqrt_rho);
  h = 0.5 * (h + h.adjoint()).eval();
  return WitnessSpectrum{roots_descending(herm_eig(h).values)};
}

WitnessSpectrum witness_spectrum(const DensityMatrix& rho, const SparseWitness& w,
                                 bool fast_path) {
  return fast_path ? witness_spectrum_fast(rho, w) : witness_spectrum_dense(rho, w);
}

namespace {

class SpectrumEngine {
 public:
  SpectrumEngine(const DensityMatrix& rho, bool fast) : rho_(rho), fast_(fast) {}

  WitnessSpectrum operator()(const SparseWitness& w) {
    if (fast_) return witness_spectrum_fast(rho_, w);
    if (!sqrt_rho_) sqrt_rho_ = sqrt_psd(rho_.matrix());
    return witness_spectrum_dense(rho_, w, &*sqrt_rho_);
  }

 private:
  const DensityMatrix& rho_;
  bool fast_;
  std::optional<ComplexMatrix> sqrt_rho_;
};

double lambda_bound_with(SpectrumEngine& engine, const DensityMatrix& rho, const SiteSet& gamma,
                         const SiteSet& delta, const BoundOptions& opts) {
  double acc = 0.0;
  auto visit = [&](const SparseWitness& w, int mult) {
    if (w.is_null()) return;
    const WitnessSpectrum spec = engine(w);
    if (opts.trace) opts.trace(w, spec, mult);
    const double t = spec.term();
    switch (opts.variant) {
      case BoundVariant::SumLiteral: acc += mult * t; break;
      case BoundVariant::Quadrature: acc += mult * std::pow(std::max(0.0, t), 2); break;
      case BoundVariant::MaxSingle: acc = std::max(acc, t); break;
    }
  };
  const auto& shape = rho.shape();
  if (opts.orbit_reduction) {
    for_each_orbit_witness(shape, gamma, delta, opts.config.reading,
                           [&](const SparseWitness& w) { visit(w, kOrbitMultiplicity); });
  } else {
    for_each_witness(shape, gamma, delta, opts.config.reading,
                     [&](const SparseWitness& w) { visit(w, 1); });
  }
  switch (opts.variant) {
    case BoundVariant::SumLiteral: return 0.5 * std::max(0.0, acc);
    case BoundVariant::Quadrature: return 0.5 * std::sqrt(acc);
    case BoundVariant::MaxSingle: return 0.5 * std::max(0.0, acc);
  }
  return 0.0;
}

void check_proper_block(const SystemShape& shape, const SiteSet& gamma) {
  if (gamma.empty()) throw Error(Errc::EmptySubset, "γ is empty");
  const SiteSet all = SiteSet::full(shape.n());
  if (!gamma.subset_of(all)) throw Error(Errc::SiteOutOfRange, "γ=" + gamma.to_string());
  if (gamma == all) throw Error(Errc::FullSetError, "γ has an empty complement");
}

double eta_bound_with(SpectrumEngine& engine, const DensityMatrix& rho, const SiteSet& gamma,
                      const BoundOptions& opts) {
  check_proper_block(rho.shape(), gamma);
  double sum = 0.0;
  for (const auto& delta : straddling_deltas(rho.shape().n(), gamma)) {
    const double lam = lambda_bound_with(engine, rho, gamma, delta, opts);
    sum += lam * lam;
  }
  return opts.config.scale(gamma.size(), rho.shape().d()) * sum;
}

}  // namespace

double lambda_bound(const DensityMatrix& rho, const SiteSet& gamma, const SiteSet& delta,
                    const BoundOptions& opts) {
  SpectrumEngine engine(rho, opts.fast_path);
  return lambda_bound_with(engine, rho, gamma, delta, opts);
}

double eta_bound(const DensityMatrix& rho, const SiteSet& gamma, const BoundOptions& opts) {
  SpectrumEngine engine(rho, opts.fast_path);
  return eta_bound_with(engine, rho, gamma, opts);
}

void check_invariant(const DensityMatrix& rho, const std::vector<SitePermutation>& group) {
  for (const auto& g : group) {
    if (g.n() != rho.shape().n()) {
      throw Error(Errc::SymmetryViolation, "permutation acts on " + std::to_string(g.n()) +
                                               " sites, state has " +
                                               std::to_string(rho.shape().n()));
    }
    const double dev =
        max_abs(relabel_sites(rho.matrix(), rho.shape(), g.images()) - rho.matrix());
    if (!(dev < 1e-10)) {
      throw Error(Errc::SymmetryViolation,
                  "state changes by " + std::to_string(dev) + " under relabelling");
    }
  }
}

BoundReport rm_bound(const DensityMatrix& rho, int m, const BoundOptions& opts,
                     const std::optional<std::vector<SitePermutation>>& symmetry,
                     BlockBoundCache* cache) {
  const int n = rho.shape().n();
  if (m < 1 || m > n) {
    throw Error(Errc::InvalidRange, "m=" + std::to_string(m) + " for n=" + std::to_string(n));
  }
  BoundReport report{m, opts.variant, {}, 0.0, std::nullopt};
  if (m == 1) {
    report.per_partition.push_back(
        {Partition(n, {SiteSet::full(n)}), 1, {{SiteSet::full(n), 0.0}}, 0.0});
    return report;
  }

  const auto parts = set_partitions(n, m);
  std::vector<std::pair<Partition, int>> work;
  if (symmetry) {
    check_group(*symmetry);
    check_invariant(rho, *symmetry);
    OrbitTable table = orbit_reduce(parts, *symmetry);
    for (const auto& e : table.entries) work.emplace_back(e.representative, e.multiplicity);
    report.symmetry_used = std::move(table);
  } else {
    for (const auto& p : parts) work.emplace_back(p, 1);
  }

  BlockBoundCache local;
  BlockBoundCache& etas = cache ? *cache : local;
  SpectrumEngine engine(rho, opts.fast_path);
  double log_sum = 0.0;
  bool zero = false;
  for (auto& [part, mult] : work) {
    PartitionBound pb{part, mult, {}, 0.0};
    for (const auto& block : part.blocks()) {
      auto it = etas.find(block.mask());
      if (it == etas.end()) {
        it = etas.emplace(block.mask(), eta_bound_with(engine, rho, block, opts)).first;
      }
      pb.per_block.push_back({block, it->second});
      pb.block_sum += it->second;
    }
    if (pb.block_sum < kZeroFactor) {
      zero = true;
    } else {
      log_sum += double(mult) * std::log(pb.block_sum);
    }
    report.per_partition.push_back(std::move(pb));
  }
  report.rm_tilde = zero ? 0.0 : std::exp(log_sum / double(stirling(n, m))) / double(m);
  return report;
}

}  // namespace sepscope
