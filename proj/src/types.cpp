#include "ovm/types.hpp"

#include <Eigen/SVD>

namespace ovm {

double op_norm(const Mat& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Mat> svd(m);
  return svd.singularValues()(0);
}

double normality_defect(const Mat& m) {
  return op_norm(m * m.adjoint() - m.adjoint() * m);
}

normality_error::normality_error(double defect, double threshold)
    : std::runtime_error("matrix is not normal: commutator defect " +
                         std::to_string(defect) + " exceeds threshold " +
                         std::to_string(threshold)),
      defect_(defect),
      threshold_(threshold) {}

}  // namespace ovm
