#pragma once

#include "artifact/matcore.hpp"

namespace artifact {

// max |a r^2 e^{i beta} + 2 b r t + d t^2 e^{-i beta}| over r, t >= 0, beta real,
// subject to r^4 + 2 r^2 t^2 cos(theta) + t^4 = 1.
// BadParams unless a >= 0, b >= 0, 0 <= theta < pi and tol > 0.
double max_f(double a, double b, cplx d, double theta, double tol = kDefaultTol);

// The objective itself, for brute-force checks.
double f_value(double a, double b, cplx d, double r, double t, double beta);

}  // namespace artifact
