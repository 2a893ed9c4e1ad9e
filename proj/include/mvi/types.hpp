#pragma once

#include <Eigen/Dense>

namespace mvi {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

inline double inf_norm(const Vec& v)
{
    return v.size() > 0 ? v.cwiseAbs().maxCoeff() : 0.0;
}

} // namespace mvi
