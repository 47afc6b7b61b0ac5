#include "artifact/refine.hpp"

#include <cmath>

namespace artifact {

RefineResult levenberg_marquardt(const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& residual,
                                 const Eigen::VectorXd& x0, const RefineOptions& opts) {
    RefineResult out;
    out.x = x0;
    Eigen::VectorXd r = residual(x0);
    double best = r.norm();
    double lambda = 1e-6;
    const Eigen::Index n = x0.size();

    for (int it = 0; it < opts.max_iterations && best > opts.target; ++it) {
        out.iterations = it + 1;
        Eigen::MatrixXd J(r.size(), n);
        for (Eigen::Index k = 0; k < n; ++k) {
            const double h = opts.fd_step * std::max(1.0, std::abs(out.x[k]));
            Eigen::VectorXd xp = out.x, xm = out.x;
            xp[k] += h;
            xm[k] -= h;
            J.col(k) = (residual(xp) - residual(xm)) / (2.0 * h);
        }
        bool improved = false;
        for (int tries = 0; tries < 12; ++tries) {
            // min-norm step of the damped system [J; sqrt(lambda) I] dx = [-r; 0]
            Eigen::MatrixXd Aug(r.size() + n, n);
            Aug << J, std::sqrt(lambda) * Eigen::MatrixXd::Identity(n, n);
            Eigen::VectorXd rhs = Eigen::VectorXd::Zero(r.size() + n);
            rhs.head(r.size()) = -r;
            Eigen::VectorXd dx = Aug.completeOrthogonalDecomposition().solve(rhs);
            Eigen::VectorXd xn = out.x + dx;
            Eigen::VectorXd rn = residual(xn);
            const double nn = rn.norm();
            if (std::isfinite(nn) && nn < best) {
                out.x = xn;
                r = rn;
                best = nn;
                lambda = std::max(lambda * 0.1, 1e-18);
                improved = true;
                break;
            }
            lambda *= 10.0;
        }
        if (!improved) break;
    }
    out.residual = best;
    return out;
}

}  // namespace artifact
