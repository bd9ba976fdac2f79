#pragma once

// Multi-qudit index arithmetic and the dense complex linear algebra used by
// every other module. Sites are labelled 1..n; site 1 is the most
// significant digit of a flat (0-based) basis index.

#include <Eigen/Dense>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "sepscope/site_set.hpp"

namespace sepscope {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

namespace tol {
inline constexpr double kHerm = 1e-9;
inline constexpr double kTrace = 1e-9;
inline constexpr double kNorm = 1e-9;
inline constexpr double kEig = 1e-10;
/// Largest tolerated negative eigenvalue magnitude for a PSD operator.
inline constexpr double psd(std::size_t dim) { return 1e-10 * double(dim); }
/// Eigenvalues with magnitude at or below this are round-off and are zeroed.
double spectral_floor(double scale) noexcept;
}  // namespace tol

class SystemShape {
 public:
  /// Largest supported total dimension d^n.
  static constexpr std::size_t kMaxDim = std::size_t{1} << 26;

  SystemShape(int n, int d);

  int n() const noexcept { return n_; }
  int d() const noexcept { return d_; }
  std::size_t dim() const noexcept { return dim_; }

  /// Distance in flat index between neighbouring levels of `site`.
  std::size_t stride(int site) const noexcept { return strides_[site - 1]; }
  int digit(std::size_t flat, int site) const noexcept {
    return int((flat / strides_[site - 1]) % std::size_t(d_));
  }
  std::vector<int> digits(std::size_t flat) const;
  std::size_t flat_index(std::span<const int> digits) const;

  friend bool operator==(const SystemShape& a, const SystemShape& b) noexcept {
    return a.n_ == b.n_ && a.d_ == b.d_;
  }

 private:
  int n_;
  int d_;
  std::size_t dim_;
  std::vector<std::size_t> strides_;
};

class DensityMatrix;

class PureState {
 public:
  /// Validates ‖amplitudes‖ = 1 within tol::kNorm.
  PureState(SystemShape shape, ComplexVector amplitudes);
  /// Rescales to unit norm; throws NotNormalized on a zero vector.
  static PureState normalized(SystemShape shape, ComplexVector amplitudes);

  const SystemShape& shape() const noexcept { return shape_; }
  const ComplexVector& amplitudes() const noexcept { return amp_; }
  Complex operator[](std::size_t i) const noexcept { return amp_[Eigen::Index(i)]; }

  DensityMatrix projector() const;

 private:
  SystemShape shape_;
  ComplexVector amp_;
};

/// Hermitian, PSD, unit-trace operator. Only obtainable through
/// validate_density (or the helpers that call it).
class DensityMatrix {
 public:
  const SystemShape& shape() const noexcept { return shape_; }
  const ComplexMatrix& matrix() const noexcept { return mat_; }
  std::size_t dim() const noexcept { return shape_.dim(); }

 private:
  DensityMatrix(SystemShape shape, ComplexMatrix mat)
      : shape_(std::move(shape)), mat_(std::move(mat)) {}
  friend DensityMatrix validate_density(const ComplexMatrix&, const SystemShape&);
  friend DensityMatrix assume_density(ComplexMatrix, const SystemShape&);

  SystemShape shape_;
  ComplexMatrix mat_;
};

/// Checks shape, Hermiticity, PSD and trace; symmetrizes small Hermitian
/// deviations.
DensityMatrix validate_density(const ComplexMatrix& mat, const SystemShape& shape);

/// For operations that preserve the density-matrix invariants by
/// construction (partial trace, convex mixing). Only symmetrizes.
DensityMatrix assume_density(ComplexMatrix mat, const SystemShape& shape);

DensityMatrix partial_trace(const DensityMatrix& rho, const SiteSet& keep);
double purity(const DensityMatrix& rho);

struct EigenSystem {
  RealVector values;      // descending
  ComplexMatrix vectors;  // columns match `values`
};

EigenSystem herm_eig(const ComplexMatrix& mat);
ComplexMatrix sqrt_psd(const ComplexMatrix& mat);

double max_abs(const ComplexMatrix& m);
double hermitian_deviation(const ComplexMatrix& m);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);

/// Moves the constituent at site i to site images[i-1]. `images` is a
/// 1-based bijection on {1..n}.
ComplexMatrix relabel_sites(const ComplexMatrix& mat, const SystemShape& shape,
                            std::span<const int> images);
ComplexVector relabel_sites(const ComplexVector& vec, const SystemShape& shape,
                            std::span<const int> images);

}  // namespace sepscope
