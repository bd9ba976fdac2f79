#include "sepscope/tensor_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "sepscope/error.hpp"

namespace sepscope {

double tol::spectral_floor(double scale) noexcept {
  return 64.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, scale);
}

// ---------------------------------------------------------------- shape

SystemShape::SystemShape(int n, int d) : n_(n), d_(d), dim_(1) {
  if (n < 1 || n > SiteSet::kMaxSites) {
    throw Error(Errc::InvalidRange, "site count n=" + std::to_string(n));
  }
  if (d < 2) {
    throw Error(Errc::InvalidRange, "local dimension d=" + std::to_string(d));
  }
  strides_.assign(std::size_t(n), 1);
  for (int site = n; site >= 1; --site) {
    strides_[std::size_t(site - 1)] = dim_;
    if (dim_ > kMaxDim / std::size_t(d)) {
      throw Error(Errc::InvalidRange, "d^n exceeds supported dimension");
    }
    dim_ *= std::size_t(d);
  }
}

std::vector<int> SystemShape::digits(std::size_t flat) const {
  if (flat >= dim_) {
    throw Error(Errc::InvalidRange, "flat index " + std::to_string(flat));
  }
  std::vector<int> out(static_cast<std::size_t>(n_));
  for (int site = 1; site <= n_; ++site) out[std::size_t(site - 1)] = digit(flat, site);
  return out;
}

std::size_t SystemShape::flat_index(std::span<const int> digits) const {
  if (digits.size() != std::size_t(n_)) {
    throw Error(Errc::DimensionMismatch, "expected " + std::to_string(n_) + " digits");
  }
  std::size_t flat = 0;
  for (int v : digits) {
    if (v < 0 || v >= d_) {
      throw Error(Errc::LevelOutOfRange, "digit " + std::to_string(v));
    }
    flat = flat * std::size_t(d_) + std::size_t(v);
  }
  return flat;
}

// ---------------------------------------------------------------- states

PureState::PureState(SystemShape shape, ComplexVector amplitudes)
    : shape_(std::move(shape)), amp_(std::move(amplitudes)) {
  if (std::size_t(amp_.size()) != shape_.dim()) {
    throw Error(Errc::DimensionMismatch, "amplitude vector length " +
                                             std::to_string(amp_.size()));
  }
  if (!amp_.allFinite()) {
    throw Error(Errc::NotNormalized, "non-finite amplitude");
  }
  const double dev = std::abs(amp_.squaredNorm() - 1.0);
  if (dev > tol::kNorm) {
    throw Error(Errc::NotNormalized, "squared norm deviates by " + std::to_string(dev));
  }
}

PureState PureState::normalized(SystemShape shape, ComplexVector amplitudes) {
  const double norm = amplitudes.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw Error(Errc::NotNormalized, "cannot normalize a zero vector");
  }
  amplitudes /= norm;
  return PureState(std::move(shape), std::move(amplitudes));
}

DensityMatrix PureState::projector() const {
  return assume_density(amp_ * amp_.adjoint(), shape_);
}

double max_abs(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double hermitian_deviation(const ComplexMatrix& m) {
  return max_abs(m - m.adjoint());
}

DensityMatrix assume_density(ComplexMatrix mat, const SystemShape& shape) {
  if (mat.rows() != mat.cols() || std::size_t(mat.rows()) != shape.dim()) {
    throw Error(Errc::DimensionMismatch, "matrix side does not equal d^n");
  }
  ComplexMatrix sym = 0.5 * (mat + mat.adjoint());
  return DensityMatrix(shape, std::move(sym));
}

DensityMatrix validate_density(const ComplexMatrix& mat, const SystemShape& shape) {
  if (mat.rows() != mat.cols() || std::size_t(mat.rows()) != shape.dim()) {
    throw Error(Errc::DimensionMismatch,
                "matrix " + std::to_string(mat.rows()) + "x" +
                    std::to_string(mat.cols()) + " for d^n=" +
                    std::to_string(shape.dim()));
  }
  if (!mat.allFinite()) throw Error(Errc::NotHermitian, "non-finite entry");
  const double dev = hermitian_deviation(mat);
  if (dev >= tol::kHerm) {
    throw Error(Errc::NotHermitian, "deviation " + std::to_string(dev));
  }
  ComplexMatrix sym = 0.5 * (mat + mat.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(sym, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) {
    throw Error(Errc::ConvergenceFailure, "eigenvalue check did not converge");
  }
  const double lowest = es.eigenvalues().minCoeff();
  if (lowest < -tol::psd(shape.dim())) {
    throw Error(Errc::NotPSD, "eigenvalue " + std::to_string(lowest));
  }
  const double tr = sym.trace().real();
  if (std::abs(tr - 1.0) > tol::kTrace) {
    throw Error(Errc::TraceNotOne, "trace " + std::to_string(tr));
  }
  return DensityMatrix(shape, std::move(sym));
}

// ---------------------------------------------------------------- reductions

DensityMatrix partial_trace(const DensityMatrix& rho, const SiteSet& keep) {
  const auto& shape = rho.shape();
  if (keep.empty()) throw Error(Errc::EmptySubset, "nothing to keep");
  if (!keep.subset_of(SiteSet::full(shape.n()))) {
    throw Error(Errc::SiteOutOfRange, keep.to_string() + " for n=" +
                                          std::to_string(shape.n()));
  }
  const SystemShape reduced(keep.size(), shape.d());
  const std::size_t kept_dim = reduced.dim();
  const std::size_t traced_dim = shape.dim() / kept_dim;
  const auto kept = keep.members();
  const auto traced = keep.complement(shape.n()).members();

  // compose[a * traced_dim + t] = full flat index for kept part a, traced part t
  std::vector<std::size_t> compose(shape.dim());
  for (std::size_t flat = 0; flat < shape.dim(); ++flat) {
    std::size_t a = 0;
    for (int s : kept) a = a * std::size_t(shape.d()) + std::size_t(shape.digit(flat, s));
    std::size_t t = 0;
    for (int s : traced) t = t * std::size_t(shape.d()) + std::size_t(shape.digit(flat, s));
    compose[a * traced_dim + t] = flat;
  }

  const ComplexMatrix& m = rho.matrix();
  ComplexMatrix out = ComplexMatrix::Zero(Eigen::Index(kept_dim), Eigen::Index(kept_dim));
  for (std::size_t a = 0; a < kept_dim; ++a) {
    for (std::size_t b = 0; b < kept_dim; ++b) {
      Complex acc = 0.0;
      for (std::size_t t = 0; t < traced_dim; ++t) {
        acc += m(Eigen::Index(compose[a * traced_dim + t]),
                 Eigen::Index(compose[b * traced_dim + t]));
      }
      out(Eigen::Index(a), Eigen::Index(b)) = acc;
    }
  }
  return assume_density(std::move(out), reduced);
}

double purity(const DensityMatrix& rho) {
  // Tr(ρ²) = Σ |ρ_ij|² for Hermitian ρ
  return rho.matrix().squaredNorm();
}

// ---------------------------------------------------------------- spectra

EigenSystem herm_eig(const ComplexMatrix& mat) {
  if (mat.rows() != mat.cols()) {
    throw Error(Errc::DimensionMismatch, "herm_eig needs a square matrix");
  }
  const double dev = hermitian_deviation(mat);
  if (!(dev < tol::kHerm)) {
    throw Error(Errc::NotHermitian, "deviation " + std::to_string(dev));
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(0.5 * (mat + mat.adjoint()));
  if (es.info() != Eigen::Success) {
    throw Error(Errc::ConvergenceFailure, "self-adjoint eigensolver failed");
  }
  // Eigen sorts ascending.
  EigenSystem out;
  out.values = es.eigenvalues().reverse();
  out.vectors = es.eigenvectors().rowwise().reverse();
  return out;
}

ComplexMatrix sqrt_psd(const ComplexMatrix& mat) {
  EigenSystem es = herm_eig(mat);
  const std::size_t dim = std::size_t(mat.rows());
  if (dim == 0) return mat;
  if (es.values.minCoeff() < -tol::psd(dim)) {
    throw Error(Errc::NotPSD, "eigenvalue " + std::to_string(es.values.minCoeff()));
  }
  const double floor = tol::spectral_floor(es.values.cwiseAbs().maxCoeff());
  RealVector root = es.values.unaryExpr(
      [floor](double v) { return v <= floor ? 0.0 : std::sqrt(v); });
  return es.vectors * root.asDiagonal() * es.vectors.adjoint();
}

// ---------------------------------------------------------------- products

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.shape().d() != b.shape().d()) {
    throw Error(Errc::DimensionMismatch, "local dimensions differ");
  }
  SystemShape shape(a.shape().n() + b.shape().n(), a.shape().d());
  return assume_density(kron(a.matrix(), b.matrix()), shape);
}

namespace {

std::vector<std::size_t> relabel_table(const SystemShape& shape,
                                       std::span<const int> images) {
  const int n = shape.n();
  if (images.size() != std::size_t(n)) {
    throw Error(Errc::DimensionMismatch, "permutation length");
  }
  std::vector<bool> seen(std::size_t(n) + 1, false);
  for (int v : images) {
    if (v < 1 || v > n || seen[std::size_t(v)]) {
      throw Error(Errc::InvalidRange, "images are not a bijection on 1..n");
    }
    seen[std::size_t(v)] = true;
  }
  std::vector<std::size_t> table(shape.dim());
  for (std::size_t flat = 0; flat < shape.dim(); ++flat) {
    std::size_t target = 0;
    for (int site = 1; site <= n; ++site) {
      target += std::size_t(shape.digit(flat, site)) *
                shape.stride(images[std::size_t(site - 1)]);
    }
    table[flat] = target;
  }
  return table;
}

}  // namespace

ComplexMatrix relabel_sites(const ComplexMatrix& mat, const SystemShape& shape,
                            std::span<const int> images) {
  if (std::size_t(mat.rows()) != shape.dim() || mat.rows() != mat.cols()) {
    throw Error(Errc::DimensionMismatch, "matrix side does not equal d^n");
  }
  const auto table = relabel_table(shape, images);
  ComplexMatrix out(mat.rows(), mat.cols());
  for (std::size_t r = 0; r < shape.dim(); ++r) {
    for (std::size_t c = 0; c < shape.dim(); ++c) {
      out(Eigen::Index(table[r]), Eigen::Index(table[c])) =
          mat(Eigen::Index(r), Eigen::Index(c));
    }
  }
  return out;
}

ComplexVector relabel_sites(const ComplexVector& vec, const SystemShape& shape,
                            std::span<const int> images) {
  if (std::size_t(vec.size()) != shape.dim()) {
    throw Error(Errc::DimensionMismatch, "vector length does not equal d^n");
  }
  const auto table = relabel_table(shape, images);
  ComplexVector out(vec.size());
  for (std::size_t r = 0; r < shape.dim(); ++r) {
    out[Eigen::Index(table[r])] = vec[Eigen::Index(r)];
  }
  return out;
}

}  // namespace sepscope
