#pragma once

#include <Eigen/Dense>

namespace oraclab {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

}  // namespace oraclab
