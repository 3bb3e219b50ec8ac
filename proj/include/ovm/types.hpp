#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace ovm {

using cplx = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;

/// Largest singular value (spectral norm).
double op_norm(const Mat& m);

/// Frobenius norm. Dominates the spectral norm, so residual checks done
/// against it are conservative.
inline double frob_norm(const Mat& m) { return m.norm(); }

/// Commutator defect ‖MM† − M†M‖ in the spectral norm; zero exactly for
/// normal matrices.
double normality_defect(const Mat& m);

/// Rejection carrying the measured defect, so callers can report it.
class normality_error : public std::runtime_error {
public:
  normality_error(double defect, double threshold);
  double defect() const { return defect_; }
  double threshold() const { return threshold_; }

private:
  double defect_;
  double threshold_;
};

}  // namespace ovm
