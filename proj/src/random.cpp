#include "sepscope/random.hpp"

#include <cmath>

namespace sepscope {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept {
  return splitmix64(seed ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

ComplexMatrix ginibre(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix g(rows, cols);
  for (Eigen::Index c = 0; c < cols; ++c) {
    for (Eigen::Index r = 0; r < rows; ++r) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(r, c) = Complex(re, im);
    }
  }
  return g;
}

ComplexMatrix haar_unitary(Eigen::Index dim, Rng& rng) {
  const ComplexMatrix g = ginibre(dim, dim, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index i = 0; i < dim; ++i) {
    const Complex d = r(i, i);
    const double mag = std::abs(d);
    if (mag > 0.0) q.col(i) *= d / mag;
  }
  return q;
}

PureState random_pure_state(const SystemShape& shape, Rng& rng) {
  ComplexVector v = ginibre(Eigen::Index(shape.dim()), 1, rng).col(0);
  return PureState::normalized(shape, std::move(v));
}

DensityMatrix random_density(const SystemShape& shape, Rng& rng, int rank) {
  const Eigen::Index dim = Eigen::Index(shape.dim());
  const Eigen::Index r = rank <= 0 ? dim : std::min<Eigen::Index>(rank, dim);
  const ComplexMatrix g = ginibre(dim, r, rng);
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return validate_density(rho, shape);
}

}  // namespace sepscope
