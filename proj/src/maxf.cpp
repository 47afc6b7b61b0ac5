#include "artifact/maxf.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "artifact/errors.hpp"

namespace artifact {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kGolden = 0.6180339887498949;

template <class F>
double golden_max(F&& f, double lo, double hi, double xtol) {
    double x1 = hi - kGolden * (hi - lo);
    double x2 = lo + kGolden * (hi - lo);
    double f1 = f(x1), f2 = f(x2);
    while (hi - lo > xtol) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + kGolden * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - kGolden * (hi - lo);
            f1 = f(x1);
        }
    }
    return std::max(f1, f2);
}

// Scan then polish every sampled local maximum. The objectives here are
// trigonometric of low degree, so a few hundred samples never miss a peak.
template <class F>
double scan_max(F&& f, double lo, double hi, int n, double xtol) {
    std::vector<double> vals(n + 1);
    const double h = (hi - lo) / n;
    for (int k = 0; k <= n; ++k) vals[k] = f(lo + h * k);
    double best = *std::max_element(vals.begin(), vals.end());
    for (int k = 0; k <= n; ++k) {
        const bool left_ok = k == 0 || vals[k] >= vals[k - 1];
        const bool right_ok = k == n || vals[k] >= vals[k + 1];
        if (!left_ok || !right_ok) continue;
        const double a = lo + h * std::max(0, k - 1);
        const double b = lo + h * std::min(n, k + 1);
        best = std::max(best, golden_max(f, a, b, xtol));
    }
    return best;
}

// max over beta of |u e^{i beta} + w + v e^{-i beta}|; u, w real
double phase_max(double u, double w, cplx v, double xtol) {
    if (std::abs(v) == 0.0 && u == 0.0) return std::abs(w);
    auto g = [&](double beta) {
        const cplx e = std::polar(1.0, beta);
        return std::abs(u * e + w + v * std::conj(e));
    };
    // periodic: sampling [0, 2 pi] with both endpoints is harmless
    return scan_max(g, 0.0, 2.0 * kPi, 64, xtol);
}

}  // namespace

double f_value(double a, double b, cplx d, double r, double t, double beta) {
    const cplx e = std::polar(1.0, beta);
    return std::abs(a * r * r * e + 2.0 * b * r * t + d * t * t * std::conj(e));
}

double max_f(double a, double b, cplx d, double theta, double tol) {
    if (!(a >= 0) || !(b >= 0)) throw BadParams("max_f: a and b must be nonnegative");
    if (!(theta >= 0) || !(theta < kPi)) throw BadParams("max_f: theta must lie in [0, pi)");
    if (!(tol > 0)) throw BadParams("max_f: tol must be positive");
    if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(d.real()) || !std::isfinite(d.imag()))
        throw BadParams("max_f: non-finite input");
    const double ct = std::cos(theta);
    const double xtol = std::min(tol, 1e-10);
    // (R, T) = (r^2, t^2) = rho (cos psi, sin psi) on the arc R^2 + 2RT cos(theta) + T^2 = 1
    auto along_arc = [&](double psi) {
        const double c = std::cos(psi), s = std::sin(psi);
        const double rho = 1.0 / std::sqrt(1.0 + 2.0 * c * s * ct);
        const double R = rho * c, T = rho * s;
        return phase_max(a * R, 2.0 * b * std::sqrt(std::max(0.0, R * T)), d * T, xtol);
    };
    return scan_max(along_arc, 0.0, kPi / 2.0, 256, xtol);
}

}  // namespace artifact
