#include "artifact/bounds.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "artifact/errors.hpp"

namespace artifact {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Exact zeros are what the rules need; allow only rounding-level noise.
bool is_zero(double v, double scale) { return std::abs(v) <= 1e-14 * std::max(1.0, scale); }

double sigma_min(const Complex2x2& X) { return Eigen::JacobiSVD<Complex2x2>(X).singularValues()[1]; }

json bound_json(double b) { return std::isfinite(b) ? json(b) : json(nullptr); }

}  // namespace

double det_invariant_p(const MatrixPair& src, const MatrixPair& dst) {
    return std::abs(src.A.determinant() * dst.B.det()) - std::abs(src.B.det() * dst.A.determinant());
}

std::string to_string(BoundRule r) {
    switch (r) {
        case BoundRule::NormRule: return "NormRule";
        case BoundRule::SingularityRule: return "SingularityRule";
        case BoundRule::DetRatioRule: return "DetRatioRule";
        case BoundRule::TcongRule: return "TcongRule";
        case BoundRule::StarTableRule: return "StarTableRule";
    }
    return "?";
}

json to_json(const NonPathCertificate& c) {
    return {{"bound_E", bound_json(c.bound_E)}, {"bound_F", bound_json(c.bound_F)}, {"rule", to_string(c.rule)}};
}

double singular_distance_bound(const Complex2x2& X) {
    // |E|_2 <= 2 max_norm(E) for 2x2 matrices
    return sigma_min(X) / 2.0;
}

std::optional<NonPathCertificate> nonpath_lower_bound(const MatrixPair& src, const MatrixPair& dst) {
    if (!is_finite(src.A) || !is_finite(dst.A) || !is_finite(src.B.matrix()) || !is_finite(dst.B.matrix()))
        throw InvalidArgument("nonpath_lower_bound: non-finite input");
    std::optional<NonPathCertificate> best;
    auto offer = [&](NonPathCertificate c) {
        if (!(c.bound() > 0)) return;
        if (!best || c.bound() > best->bound()) best = c;
    };

    const double nAs = max_norm(src.A), nAd = max_norm(dst.A);
    const double nBs = max_norm(src.B), nBd = max_norm(dst.B);
    const cplx dAs = src.A.determinant(), dAd = dst.A.determinant();
    const cplx dBs = src.B.det(), dBd = dst.B.det();

    // the whole orbit of dst has A = 0 (B = 0)
    if (nAs > 0 && nAd == 0.0) offer({nAs, kInf, BoundRule::NormRule});
    if (nBs > 0 && nBd == 0.0) offer({kInf, nBs, BoundRule::NormRule});

    // the whole orbit of dst is singular in A (in B)
    if (!is_zero(std::abs(dAs), nAs * nAs) && is_zero(std::abs(dAd), nAd * nAd))
        offer({singular_distance_bound(src.A), kInf, BoundRule::SingularityRule});
    if (!is_zero(std::abs(dBs), nBs * nBs) && is_zero(std::abs(dBd), nBd * nBd))
        offer({kInf, singular_distance_bound(src.B.matrix()), BoundRule::TcongRule});

    // |det A' det B| = |det B' det A| along the orbit of (A, B)
    const bool all_regular = !is_zero(std::abs(dAs), nAs * nAs) && !is_zero(std::abs(dAd), nAd * nAd) &&
                             !is_zero(std::abs(dBs), nBs * nBs) && !is_zero(std::abs(dBd), nBd * nBd);
    if (all_regular) {
        const double p = det_invariant_p(src, dst);
        const double scale = std::max(std::abs(dAs * dBd), std::abs(dBs * dAd));
        if (std::abs(p) > 1e-12 * scale) {
            const double bE = std::min(1.0, std::abs(p) / (4.0 * std::abs(dBd) * (2.0 * nAs + 1.0)));
            const double bF = std::min(1.0, std::abs(p) / (4.0 * std::abs(dAd) * (2.0 * nBs + 1.0)));
            offer({bE, bF, BoundRule::DetRatioRule});
        }
    }
    return best;
}

double phase_radius(const Complex2x2& src_A) {
    return std::abs(src_A.determinant()) / (8.0 * max_norm(src_A) + 4.0);
}

PhaseEstimate phase_estimate(const Complex2x2& src_A, const Complex2x2& dst_A, double E_norm) {
    const cplx ds = src_A.determinant(), dd = dst_A.determinant();
    if (!(std::abs(ds) > 0) || !(std::abs(dd) > 0)) throw PreconditionViolated("phase_estimate: singular input");
    if (!(E_norm >= 0)) throw PreconditionViolated("phase_estimate: E_norm must be nonnegative");
    if (E_norm > phase_radius(src_A)) throw PreconditionViolated("phase_estimate: E_norm beyond the admissible radius");
    const double nA = max_norm(src_A);
    PhaseEstimate out;
    out.delta = std::arg(ds / dd);
    out.g_bound = E_norm * (8.0 * nA + 4.0) / std::abs(ds);
    out.r_bound = E_norm * (4.0 * nA + 2.0) / std::sqrt(std::abs(ds * dd));
    return out;
}

std::string to_string(ResidualRow r) {
    switch (r) {
        case ResidualRow::C1: return "C1";
        case ResidualRow::C3: return "C3";
        case ResidualRow::C4: return "C4";
        case ResidualRow::C5: return "C5";
        case ResidualRow::C6: return "C6";
        case ResidualRow::C7: return "C7";
        case ResidualRow::C9: return "C9";
        case ResidualRow::C10: return "C10";
        case ResidualRow::C11: return "C11";
        case ResidualRow::C12: return "C12";
    }
    return "?";
}

ResidualRow residual_row_from_string(const std::string& s) {
    for (ResidualRow r : {ResidualRow::C1, ResidualRow::C3, ResidualRow::C4, ResidualRow::C5, ResidualRow::C6,
                          ResidualRow::C7, ResidualRow::C9, ResidualRow::C10, ResidualRow::C11, ResidualRow::C12})
        if (to_string(r) == s) return r;
    throw BadParams("no table row " + s);
}

std::vector<double> residual_expressions(ResidualRow row, cplx c, const Complex2x2& P, const RowParams& q) {
    if (std::abs(std::abs(c) - 1.0) > 1e-12) throw BadParams("c must be unimodular");
    const cplx x = P(0, 0), y = P(0, 1), u = P(1, 0), v = P(1, 1);
    const cplx ci = 1.0 / c;
    const double sgn = (q.k % 2 == 0) ? 1.0 : -1.0;
    auto is01 = [](double a) { return a == 0.0 || a == 1.0; };
    auto n2 = [](cplx z) { return std::norm(z); };
    auto cj = [](cplx z) { return std::conj(z); };
    constexpr double kPi = std::numbers::pi;

    switch (row) {
        case ResidualRow::C1:
            if (!(q.theta > 0 && q.theta < kPi)) throw BadParams("C1: 0 < theta < pi");
            return {std::abs(u * u), std::abs(y * y), std::abs(n2(x) - 1.0), std::abs(n2(v) - 1.0)};
        case ResidualRow::C3:
            if (!is01(q.alpha) || !(q.theta >= 0 && q.theta < kPi)) throw BadParams("C3: alpha in {0,1}, 0 <= theta < pi");
            return {std::abs(n2(x) + std::polar(1.0, q.theta) * n2(u) - ci * q.alpha), std::abs(y * y), std::abs(v * v)};
        case ResidualRow::C4: {
            if (!is01(q.alpha) || !(q.tau >= 0 && q.tau < 1)) throw BadParams("C4: alpha in {0,1}, 0 <= tau < 1");
            const cplx xu = cj(x) * u;
            const cplx mixed{(1 + q.tau) * xu.real(), (1 - q.tau) * xu.imag()};
            return {std::abs(cj(y) * v), std::abs(cj(x) * v), std::abs(cj(u) * y), std::abs(mixed - q.alpha * ci)};
        }
        case ResidualRow::C5: {
            const bool first = q.beta == 1.0 && q.alpha == 0.0 && (q.omega == cplx(0.0) || q.omega == kI);
            const bool second = q.beta == 0.0 && is01(q.alpha) && q.omega == cplx(-q.alpha);
            if (!first && !second) throw BadParams("C5: beta=1, alpha=0, omega in {0,i} or beta=0, -omega=alpha in {0,1}");
            return {std::abs(2.0 * (cj(x) * u).real() - sgn * q.alpha), std::abs(2.0 * (cj(y) * v).real() - sgn * q.omega.real()),
                    std::abs(cj(x) * v + cj(u) * y - sgn * q.beta), std::abs(u * u), std::abs(n2(v) - sgn * q.omega.imag())};
        }
        case ResidualRow::C6:
            if (!(q.tau >= 0 && q.tau < 1)) throw BadParams("C6: 0 <= tau < 1");
            return {std::abs(cj(x) * u), std::abs(cj(y) * v), std::abs(cj(y) * u), std::abs(cj(v) * x - ci)};
        case ResidualRow::C7: {
            const double w = q.omega.real();
            const bool real_omega = q.omega.imag() == 0.0;
            const bool first = q.alpha == 0.0 && w == 0.0 && q.beta == 1.0;
            const bool second = q.beta == 0.0 && is01(q.alpha) && (w == 0.0 || w == q.alpha || w == -q.alpha);
            if (!real_omega || (!first && !second))
                throw BadParams("C7: alpha=omega=0, beta=1 or beta=0, alpha in {0,1}, omega in {0, +-alpha}");
            return {std::abs(2.0 * (cj(y) * v).real() - sgn * w), std::abs(2.0 * (cj(x) * u).real() - sgn * q.alpha),
                    std::abs(cj(x) * v + cj(u) * y - sgn * q.beta)};
        }
        case ResidualRow::C9: {
            const double w = q.omega.real();
            if (q.sigma != 1 && q.sigma != -1) throw BadParams("C9: sigma in {1,-1}");
            const bool ok = q.omega.imag() == 0.0 &&
                            ((q.alpha == 1.0 && (w == q.sigma || w == 0.0)) || (q.alpha == 0.0 && w == 0.0));
            if (!ok) throw BadParams("C9: alpha=1, omega in {sigma,0} or alpha=omega=0");
            const double s = q.sigma;
            return {std::abs(n2(x) + s * n2(u) - ci * q.alpha), std::abs(cj(x) * y + s * cj(u) * v),
                    std::abs(n2(y) + s * n2(v) - ci * w)};
        }
        case ResidualRow::C10:
            if (!is01(q.alpha)) throw BadParams("C10: alpha in {0,1}");
            return {std::abs(cj(x) * v + cj(u) * y), std::abs(cj(u) * v), std::abs((cj(y) * u).real()), std::abs(v * v),
                    std::abs(2.0 * (cj(x) * u).real() + kI * n2(u) - q.alpha * ci)};
        case ResidualRow::C11:
            if (!is01(q.alpha)) throw BadParams("C11: alpha in {0,1}");
            return {std::abs(y * y), std::abs(n2(x) - q.alpha)};
        case ResidualRow::C12:
            return {std::abs(cj(x) * y - cj(u) * v - sgn), std::abs(n2(x) - n2(u)), std::abs(n2(y) - n2(v))};
    }
    return {};
}

}  // namespace artifact
