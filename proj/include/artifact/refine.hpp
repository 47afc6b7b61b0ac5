#pragma once

#include <Eigen/Dense>
#include <functional>

namespace artifact {

struct RefineResult {
    Eigen::VectorXd x;
    double residual = 0.0;  // euclidean norm of the final residual vector
    int iterations = 0;
};

struct RefineOptions {
    int max_iterations = 60;
    double target = 1e-15;
    double fd_step = 1e-7;
};

// Damped Gauss-Newton (Levenberg-Marquardt) on a real residual map with a
// central-difference Jacobian. Never returns a point worse than x0.
RefineResult levenberg_marquardt(const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& residual,
                                 const Eigen::VectorXd& x0, const RefineOptions& opts = {});

}  // namespace artifact
