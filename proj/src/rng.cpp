#include "ovm/rng.hpp"

#include <cmath>
#include <numbers>

namespace ovm {

double Rng::gaussian() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  // Box-Muller on two fresh uniforms; u clamped away from 0.
  double u = uniform();
  if (u < 1e-300) u = 1e-300;
  double v = uniform();
  double r = std::sqrt(-2.0 * std::log(u));
  double a = 2.0 * std::numbers::pi * v;
  spare_ = r * std::sin(a);
  have_spare_ = true;
  return r * std::cos(a);
}

cplx Rng::unit_phase() {
  double a = 2.0 * std::numbers::pi * uniform();
  return {std::cos(a), std::sin(a)};
}

Vec Rng::gaussian_vector(Eigen::Index d) {
  Vec v(d);
  for (Eigen::Index i = 0; i < d; ++i) v(i) = cgaussian();
  return v;
}

Mat Rng::gaussian_matrix(Eigen::Index rows, Eigen::Index cols) {
  Mat m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = cgaussian();
  return m;
}

Mat Rng::random_unitary(Eigen::Index d) {
  Mat g = gaussian_matrix(d, d);
  Eigen::HouseholderQR<Mat> qr(g);
  Mat q = qr.householderQ();
  Mat r = qr.matrixQR().template triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < d; ++j) {
    cplx rjj = r(j, j);
    double m = std::abs(rjj);
    q.col(j) *= (m > 0.0) ? rjj / m : cplx(1.0, 0.0);
  }
  return q;
}

std::uint64_t Rng::mix(std::uint64_t a, std::uint64_t b) {
  std::uint64_t z = a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2));
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace ovm
