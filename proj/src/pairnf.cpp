#include "artifact/pairnf.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>

#include "artifact/errors.hpp"
#include "artifact/refine.hpp"

namespace artifact {

namespace {

constexpr double kPi = std::numbers::pi;

const std::array<const char*, 22> kBFormNames = {
    "Zero2",     "OneZero",  "Identity", "DiagAD",     "DiagD0D",    "AntiDiag", "OneDExpTheta", "AntiBOne",
    "AntiBD",    "FullPhase", "ABZero",  "ZeroD",      "AZero",      "PhaseBZeta", "AntiBPhase", "OneZeta",
    "ZeroOne",   "AZeta",    "AOne",     "ZetaBOne",   "OneBZero",   "Swap"};

std::vector<FamilyInfo> build_table() {
    using S = StarTag;
    using F = BForm;
    return {
        {{S::Unimodular, F::AntiBD}, 9, {"theta", "b", "d"}},
        {{S::Unimodular, F::FullPhase}, 9, {"theta", "a", "r", "phi", "d"}},
        {{S::Unimodular, F::ABZero}, 9, {"theta", "a", "b"}},
        {{S::Unimodular, F::ZeroD}, 8, {"theta", "d"}},
        {{S::Unimodular, F::AntiDiag}, 8, {"theta", "b"}},
        {{S::Unimodular, F::AZero}, 8, {"theta", "a"}},
        {{S::Unimodular, F::Zero2}, 7, {"theta"}},

        {{S::Reciprocal, F::PhaseBZeta}, 9, {"tau", "phi", "b", "zeta"}},
        {{S::Reciprocal, F::AntiBPhase}, 9, {"tau", "b", "phi"}},
        {{S::Reciprocal, F::OneZeta}, 9, {"tau", "zeta"}},
        {{S::Reciprocal, F::ZeroOne}, 9, {"tau"}},
        {{S::Reciprocal, F::AntiDiag}, 8, {"tau", "b"}},
        {{S::Reciprocal, F::Zero2}, 7, {"tau"}},

        {{S::JordanType, F::AntiDiag}, 9, {"b", "delta"}},
        {{S::JordanType, F::AZeta}, 9, {"a", "beta", "zeta"}},
        {{S::JordanType, F::ZeroD}, 8, {"d"}},
        {{S::JordanType, F::Zero2}, 7, {}},

        {{S::Rank1Nilpotent, F::AOne}, 9, {"a"}},
        {{S::Rank1Nilpotent, F::ZetaBOne}, 9, {"zeta", "b"}},
        {{S::Rank1Nilpotent, F::OneBZero}, 9, {"b"}},
        {{S::Rank1Nilpotent, F::ZeroOne}, 8, {}},
        {{S::Rank1Nilpotent, F::OneZero}, 8, {}},
        {{S::Rank1Nilpotent, F::AntiDiag}, 7, {"b"}},
        {{S::Rank1Nilpotent, F::Zero2}, 6, {}},

        {{S::Definite, F::DiagAD}, 9, {"a", "d"}},
        {{S::Definite, F::DiagD0D}, 8, {"d0", "d"}},
        {{S::Definite, F::Zero2}, 5, {}},

        {{S::Indefinite, F::DiagAD}, 9, {"a", "d"}},
        {{S::Indefinite, F::OneDExpTheta}, 9, {"d", "theta"}},
        {{S::Indefinite, F::AntiBOne}, 9, {"b"}},
        {{S::Indefinite, F::DiagD0D}, 8, {"d0", "d"}},
        {{S::Indefinite, F::AntiDiag}, 8, {"b"}},
        {{S::Indefinite, F::OneZero}, 8, {}},
        {{S::Indefinite, F::Zero2}, 5, {}},

        {{S::Rank1Semidef, F::AOne}, 9, {"a"}},
        {{S::Rank1Semidef, F::ZeroOne}, 8, {}},
        {{S::Rank1Semidef, F::Swap}, 8, {}},
        {{S::Rank1Semidef, F::AZero}, 5, {"a"}},
        {{S::Rank1Semidef, F::Zero2}, 4, {}},

        {{S::Zero, F::Identity}, 6, {}},
        {{S::Zero, F::OneZero}, 4, {}},
        {{S::Zero, F::Zero2}, 0, {}},
    };
}

cplx unit(cplx z) { return z / std::abs(z); }

// Outcome of the stabilizer stage: a group element acting after the A reduction.
struct Normalized {
    BForm form = BForm::Zero2;
    BParams params;
    cplx c = 1.0;
    Complex2x2 P = Complex2x2::Identity();
};

class ZeroTest {
public:
    ZeroTest(double tol, double scale) : tol_(tol), scale_(std::max(1.0, scale)) {}
    bool operator()(cplx x, const char* lo, const char* hi) const {
        return below_threshold(std::abs(x) / scale_, tol_, lo, hi);
    }
    double tol() const { return tol_; }
    double scale() const { return scale_; }

private:
    double tol_;
    double scale_;
};

Normalized norm_unimodular(const Sym2x2& B, const ZeroTest& zero) {
    const cplx b11 = B.b11(), b12 = B.b12(), b22 = B.b22();
    const bool n11 = !zero(b11, "B11=0", "B11!=0");
    const bool n22 = !zero(b22, "B22=0", "B22!=0");
    const bool n12 = !zero(b12, "B12=0", "B12!=0");
    Normalized out;
    double al = n11 ? -0.5 * std::arg(b11) : 0.0;
    double be = n22 ? -0.5 * std::arg(b22) : 0.0;
    if (n11 && n22) {
        out.form = BForm::FullPhase;
        out.params.a = std::abs(b11);
        out.params.d = std::abs(b22);
        if (n12) {
            double ph = std::arg(std::polar(1.0, al + be) * b12);
            if (ph < 0) {
                be += kPi;
                ph += kPi;
            }
            if (kPi - ph < 1e-12) {
                be += kPi;
                ph = 0.0;
            }
            out.params.r = std::abs(b12);
            out.params.phi = ph;
        }
    } else if (n11) {
        if (n12) {
            out.form = BForm::ABZero;
            out.params.a = std::abs(b11);
            out.params.b = std::abs(b12);
            be = -std::arg(b12) - al;
        } else {
            out.form = BForm::AZero;
            out.params.a = std::abs(b11);
        }
    } else if (n22) {
        if (n12) {
            out.form = BForm::AntiBD;
            out.params.b = std::abs(b12);
            out.params.d = std::abs(b22);
            al = -std::arg(b12) - be;
        } else {
            out.form = BForm::ZeroD;
            out.params.d = std::abs(b22);
        }
    } else if (n12) {
        out.form = BForm::AntiDiag;
        out.params.b = std::abs(b12);
        al = -std::arg(b12);
    }
    out.P = Complex2x2::Zero();
    out.P(0, 0) = std::polar(1.0, al);
    out.P(1, 1) = std::polar(1.0, be);
    return out;
}

// Stabilizer: e^{i alpha} diag(rho, c/rho) with c = +-1.
Normalized norm_reciprocal(const Sym2x2& B, const ZeroTest& zero) {
    const cplx b11 = B.b11(), b12 = B.b12(), b22 = B.b22();
    const bool n11 = !zero(b11, "B11=0", "B11!=0");
    const bool n22 = !zero(b22, "B22=0", "B22!=0");
    const bool n12 = !zero(b12, "B12=0", "B12!=0");
    Normalized out;
    double rho2 = 1.0;
    cplx omega = 1.0;  // e^{2 i alpha}
    double c = 1.0;
    auto pick_sign = [&](double ph) {
        // choose c = +-1 so the phase lands in [0, pi)
        ph = std::remainder(ph, 2.0 * kPi);
        if (ph < 0) {
            c = -1.0;
            ph += kPi;
        }
        if (kPi - ph < 1e-12) {
            c = -c;
            ph = 0.0;
        }
        return ph;
    };
    if (n12 && n11) {
        out.form = BForm::PhaseBZeta;
        rho2 = 1.0 / std::abs(b11);
        const double ph = pick_sign(std::arg(b11) - std::arg(b12));
        omega = c * std::polar(1.0, -std::arg(b12));
        out.params.phi = ph;
        out.params.b = std::abs(b12);
        out.params.zeta = omega * b22 / rho2;
    } else if (n12 && n22) {
        out.form = BForm::AntiBPhase;
        rho2 = std::abs(b22);
        const double ph = pick_sign(std::arg(b22) - std::arg(b12));
        omega = c * std::polar(1.0, -std::arg(b12));
        out.params.phi = ph;
        out.params.b = std::abs(b12);
    } else if (n12) {
        out.form = BForm::AntiDiag;
        omega = std::polar(1.0, -std::arg(b12));
        out.params.b = std::abs(b12);
    } else if (n11) {
        out.form = BForm::OneZeta;
        rho2 = 1.0 / std::abs(b11);
        omega = std::polar(1.0, -std::arg(b11));
        out.params.zeta = omega * b22 / rho2;
    } else if (n22) {
        out.form = BForm::ZeroOne;
        rho2 = std::abs(b22);
        omega = std::polar(1.0, -std::arg(b22));
    }
    const double rho = std::sqrt(rho2);
    const cplx e = std::polar(1.0, 0.5 * std::arg(omega));
    out.c = c;
    out.P = Complex2x2::Zero();
    out.P(0, 0) = e * rho;
    out.P(1, 1) = e * c / rho;
    return out;
}

// Stabilizer: e^{i alpha} [[1, i t],[0, 1]].
Normalized norm_jordan(const Sym2x2& B, const ZeroTest& zero) {
    const cplx b11 = B.b11(), b12 = B.b12(), b22 = B.b22();
    Normalized out;
    double t = 0.0;
    cplx omega = 1.0;
    if (!zero(b11, "B11=0", "B11!=0")) {
        out.form = BForm::AZeta;
        const cplx ratio = b12 / b11;
        t = -ratio.imag();
        omega = std::polar(1.0, -std::arg(b11));
        out.params.a = std::abs(b11);
        out.params.beta = out.params.a * ratio.real();
        out.params.zeta = omega * (b22 + 2.0 * kI * t * b12 - t * t * b11);
    } else if (!zero(b12, "B12=0", "B12!=0")) {
        out.form = BForm::AntiDiag;
        const cplx ratio = b22 / b12;
        t = -0.5 * ratio.imag();
        omega = std::polar(1.0, -std::arg(b12));
        out.params.b = std::abs(b12);
        out.params.delta = out.params.b * ratio.real();
    } else if (!zero(b22, "B22=0", "B22!=0")) {
        out.form = BForm::ZeroD;
        omega = std::polar(1.0, -std::arg(b22));
        out.params.d = std::abs(b22);
    }
    const cplx e = std::polar(1.0, 0.5 * std::arg(omega));
    out.P << e, e * kI * t, 0.0, e;
    return out;
}

// Stabilizer: diag(p, q) with |pq| = 1 and c = 1/(conj(p) q).
Normalized norm_nilpotent(const Sym2x2& B, const ZeroTest& zero) {
    const cplx b11 = B.b11(), b12 = B.b12(), b22 = B.b22();
    const bool n11 = !zero(b11, "B11=0", "B11!=0");
    const bool n22 = !zero(b22, "B22=0", "B22!=0");
    const bool n12 = !zero(b12, "B12=0", "B12!=0");
    Normalized out;
    cplx p = 1.0, q = 1.0;
    if (n22 && n12) {
        out.form = BForm::ZetaBOne;
        q = 1.0 / std::sqrt(b22);
        p = std::abs(b12) / (q * b12);
        out.params.b = std::abs(b12);
        out.params.zeta = p * p * b11;
    } else if (n22) {
        q = 1.0 / std::sqrt(b22);
        if (n11) {
            out.form = BForm::AOne;
            p = std::polar(1.0 / std::abs(q), -0.5 * std::arg(b11));
            out.params.a = std::abs(b11) * std::abs(b22);
        } else {
            out.form = BForm::ZeroOne;
            p = 1.0 / std::abs(q);
        }
    } else if (n12) {
        if (n11) {
            out.form = BForm::OneBZero;
            p = 1.0 / std::sqrt(b11);
        } else {
            out.form = BForm::AntiDiag;
        }
        q = std::abs(b12) / (p * b12);
        out.params.b = std::abs(b12);
    } else if (n11) {
        out.form = BForm::OneZero;
        p = 1.0 / std::sqrt(b11);
        q = 1.0 / p;
    }
    out.P = Complex2x2::Zero();
    out.P(0, 0) = p;
    out.P(1, 1) = q;
    out.c = unit(1.0 / (std::conj(p) * q));
    return out;
}

// Stabilizer: [[p,0],[r,q]] with |p| = 1, c = 1.
Normalized norm_semidef(const Sym2x2& B, const ZeroTest& zero) {
    const cplx b11 = B.b11(), b12 = B.b12(), b22 = B.b22();
    Normalized out;
    cplx p = 1.0, q = 1.0, r = 0.0;
    if (!zero(b22, "B22=0", "B22!=0")) {
        q = 1.0 / std::sqrt(b22);
        const cplx schur = B.det() / b22;
        if (!zero(schur, "a=0", "a>0")) {
            out.form = BForm::AOne;
            p = std::polar(1.0, -0.5 * std::arg(schur));
            out.params.a = std::abs(schur);
        } else {
            out.form = BForm::ZeroOne;
        }
        r = -p * b12 / b22;
    } else if (!zero(b12, "B12=0", "B12!=0")) {
        out.form = BForm::Swap;
        q = 1.0 / b12;
        r = -b11 / (2.0 * b12);
    } else if (!zero(b11, "B11=0", "B11!=0")) {
        out.form = BForm::AZero;
        p = std::polar(1.0, -0.5 * std::arg(b11));
        out.params.a = std::abs(b11);
    }
    out.P << p, 0.0, r, q;
    return out;
}

Normalized norm_definite(const Sym2x2& B, const ZeroTest& zero) {
    const Takagi t = takagi(B);
    Normalized out;
    // ascending order: a = smaller singular value
    out.P.col(0) = t.W.col(1).conjugate();
    out.P.col(1) = t.W.col(0).conjugate();
    const double a = t.s2, d = t.s1;
    if (zero(d, "B=0", "B!=0")) return out;
    if (zero(a, "a=0", "a>0")) {
        out.form = BForm::DiagD0D;
        out.params.d = d;
    } else if (below_threshold((d - a) / std::max(1.0, d), zero.tol(), "a=d", "a<d")) {
        out.form = BForm::DiagD0D;
        out.params.d = 0.5 * (a + d);
        out.params.d0 = out.params.d;
    } else {
        out.form = BForm::DiagAD;
        out.params.a = a;
        out.params.d = d;
    }
    return out;
}

Normalized norm_zero(const Sym2x2& B, double tol) {
    const TCongReduction t = classify_tcong(B, tol);
    Normalized out;
    out.P = t.reducer;
    out.form = t.rank == 2 ? BForm::Identity : t.rank == 1 ? BForm::OneZero : BForm::Zero2;
    return out;
}

// Indefinite A = diag(1,-1). h(x,y) = y^* H x is the invariant Hermitian form,
// T x = H conj(B) conj(x) the antilinear map with x^T B y = h(y, T x).
class IndefiniteFrame {
public:
    explicit IndefiniteFrame(const Sym2x2& B) : B_(B.matrix()) { H_ << 1.0, 0.0, 0.0, -1.0; }

    Eigen::Vector2cd T(const Eigen::Vector2cd& x, double c = 1.0) const {
        return c * (H_ * (B_.conjugate() * x.conjugate()));
    }
    cplx h(const Eigen::Vector2cd& x, const Eigen::Vector2cd& y, double c = 1.0) const {
        return c * y.dot(H_ * x);
    }
    Complex2x2 M() const { return H_ * B_.conjugate() * H_ * B_; }
    const Complex2x2& B() const { return B_; }

    // Real 4x4 matrix of x -> T_c x - s x on (Re x, Im x).
    Eigen::Matrix4d shifted(double c, double s) const {
        const Eigen::Matrix2d R = B_.real(), I = B_.imag();
        const Eigen::Matrix2d HR = c * H_.real() * R, HI = c * H_.real() * I;
        Eigen::Matrix4d L;
        L << HR, -HI, -HI, -HR;
        return L - s * Eigen::Matrix4d::Identity();
    }

private:
    Complex2x2 B_;
    Complex2x2 H_;
};

Eigen::Vector2cd eigvec(const Complex2x2& C, cplx mu) {
    Eigen::Vector2cd a(C(0, 1), mu - C(0, 0));
    Eigen::Vector2cd b(mu - C(1, 1), C(1, 0));
    Eigen::Vector2cd v = a.norm() >= b.norm() ? a : b;
    return v / v.norm();
}

// x with T x = s x, built from a vector y with T y in span(y) or T^2 = s^2.
Eigen::Vector2cd coneigen(const IndefiniteFrame& F, const Eigen::Vector2cd& y, double s, double c = 1.0) {
    const Eigen::Vector2cd c1 = y + F.T(y, c) / s;
    const Eigen::Vector2cd iy = kI * y;
    const Eigen::Vector2cd c2 = iy + F.T(iy, c) / s;
    const Eigen::Vector2cd x = c1.norm() >= c2.norm() ? c1 : c2;
    return x / x.norm();
}

Normalized norm_indefinite(const Sym2x2& Bs, const ZeroTest& zero) {
    Normalized out;
    const double sb = max_norm(Bs);
    if (zero(sb, "B=0", "B!=0")) return out;
    const double tol = zero.tol();
    const IndefiniteFrame F(Bs);
    const Complex2x2 M = F.M();
    const double s2 = sb * sb;
    const cplx half_tr = 0.5 * M.trace();
    const Complex2x2 N = M - half_tr * Complex2x2::Identity();
    const double nn = max_norm(N);

    auto finish_h_frame = [&](Eigen::Vector2cd xp, double sp, Eigen::Vector2cd xm, double sm) {
        // xp: h = +1 with T xp = sp xp; xm: h = -1 with T xm = sm xm
        if (sp <= sm) {
            out.c = 1.0;
            out.P.col(0) = xp;
            out.P.col(1) = kI * xm;
        } else {
            out.c = -1.0;
            out.P.col(0) = kI * xm;
            out.P.col(1) = xp;
        }
        const double a = std::min(sp, sm), d = std::max(sp, sm);
        if (zero(a, "a=0", "a>0")) {
            out.form = BForm::DiagD0D;
            out.params.d = d;
        } else {
            out.form = BForm::DiagAD;
            out.params.a = a;
            out.params.d = d;
        }
    };

    auto swap_frame_nilpotent = [&]() {
        const Takagi t = takagi(Bs);
        const Eigen::Vector2cd v = std::sqrt(t.s1) * t.W.col(0);
        Eigen::Vector2cd x1 = v.conjugate() / v.squaredNorm();
        const Eigen::Vector2cd x2 = F.T(x1);
        x1 += (-0.5 * F.h(x1, x1).real()) * x2;
        out.form = BForm::OneZero;
        out.P.col(0) = x1;
        out.P.col(1) = x2;
    };

    if (below_threshold(nn / s2, tol, "scalar M", "non-scalar M")) {
        const double mu = half_tr.real();
        if (below_threshold(std::abs(mu) / s2, tol, "M=0", "M!=0")) {
            swap_frame_nilpotent();
        } else if (mu > 0) {
            // every vector produces a coneigenvector; take the least neutral one
            const double s = std::sqrt(mu);
            const double r2 = 1.0 / std::sqrt(2.0);
            const std::array<Eigen::Vector2cd, 6> seeds = {
                Eigen::Vector2cd(1.0, 0.0),     Eigen::Vector2cd(0.0, 1.0),     Eigen::Vector2cd(r2, r2),
                Eigen::Vector2cd(r2, -r2),      Eigen::Vector2cd(r2, kI * r2), Eigen::Vector2cd(r2, -kI * r2)};
            Eigen::Vector2cd x1;
            double best = -1.0;
            for (const auto& y : seeds) {
                const Eigen::Vector2cd x = coneigen(F, y, s);
                const double score = std::abs(F.h(x, x).real());
                if (score > best) {
                    best = score;
                    x1 = x;
                }
            }
            const Eigen::Vector2cd hv = Eigen::Vector2cd(x1[0], -x1[1]);
            Eigen::Vector2cd x2(-std::conj(hv[1]), std::conj(hv[0]));
            x2 /= x2.norm();
            const cplx kappa = x2.dot(F.T(x2));
            x2 *= std::polar(1.0, 0.5 * std::arg(kappa));
            const double h1 = F.h(x1, x1).real(), h2 = F.h(x2, x2).real();
            x1 /= std::sqrt(std::abs(h1));
            x2 /= std::sqrt(std::abs(h2));
            if (h1 > 0)
                finish_h_frame(x1, s, x2, s);
            else
                finish_h_frame(x2, s, x1, s);
            out.form = BForm::DiagD0D;
            out.params.a = 0.0;
            out.params.d = s;
            out.params.d0 = s;
        } else {
            const double b = std::sqrt(-mu);
            const Takagi t = takagi(Bs);
            const Eigen::Vector2cd za(std::sqrt(t.s2), kI * std::sqrt(t.s1));
            const Eigen::Vector2cd zb(std::sqrt(t.s2), -kI * std::sqrt(t.s1));
            const Eigen::Vector2cd xa = t.W.conjugate() * za, xb = t.W.conjugate() * zb;
            const double ha = F.h(xa, xa).real(), hb = F.h(xb, xb).real();
            Eigen::Vector2cd x1 = std::abs(ha) >= std::abs(hb) ? xa : xb;
            const double h1 = std::abs(ha) >= std::abs(hb) ? ha : hb;
            const double c = h1 > 0 ? 1.0 : -1.0;
            x1 /= std::sqrt(std::abs(h1));
            out.form = BForm::AntiDiag;
            out.params.b = b;
            out.c = c;
            out.P.col(0) = x1;
            out.P.col(1) = -F.T(x1, c) / b;
        }
        return out;
    }

    const cplx disc = N(0, 0) * N(0, 0) + N(0, 1) * N(1, 0);
    if (below_threshold(std::abs(disc) / (nn * nn), tol, "defective M", "distinct M eigenvalues")) {
        const double mu = half_tr.real();
        if (below_threshold(std::abs(mu) / s2, tol, "M=0", "M!=0") || mu < 0)
            throw StabilizerSolveFailed(nn / s2, "indefinite family: spectrum outside the normal-form list");
        const double b = std::sqrt(mu);
        const int j = N.col(0).norm() >= N.col(1).norm() ? 0 : 1;
        const Eigen::Vector2cd x0 = N.col(j) / N.col(j).norm();
        double best = -std::numeric_limits<double>::infinity();
        for (double c : {1.0, -1.0}) {
            const cplx kappa = x0.dot(F.T(x0, c));
            const Eigen::Vector2cd x1 = x0 * std::polar(1.0, 0.5 * std::arg(kappa));
            Eigen::Vector4d rhs(x1[0].real(), x1[1].real(), x1[0].imag(), x1[1].imag());
            const Eigen::Vector4d sol = F.shifted(c, b).completeOrthogonalDecomposition().solve(rhs);
            Eigen::Vector2cd x2(cplx(sol[0], sol[2]), cplx(sol[1], sol[3]));
            const double g12 = F.h(x1, x2, c).real();
            if (g12 <= best) continue;
            best = g12;
            if (g12 <= 0) continue;
            const double t = -F.h(x2, x2, c).real() / (2.0 * g12);
            x2 += t * x1;
            out.c = c;
            out.P.col(0) = x1 / std::sqrt(g12);
            out.P.col(1) = x2 / std::sqrt(g12);
        }
        if (!(best > 0)) throw StabilizerSolveFailed(best, "indefinite family: no positive pairing in defective case");
        out.form = BForm::AntiBOne;
        out.params.b = b;
        return out;
    }

    const cplx root = std::sqrt(disc);
    const cplx m1 = half_tr + root, m2 = half_tr - root;
    const double im = std::max(std::abs(m1.imag()), std::abs(m2.imag()));
    if (below_threshold(im / s2, tol, "real M spectrum", "non-real M spectrum")) {
        std::array<Eigen::Vector2cd, 2> xs;
        std::array<double, 2> ss{}, hs{};
        const std::array<cplx, 2> mus = {m1, m2};
        for (int k = 0; k < 2; ++k) {
            const double mu = mus[k].real();
            if (mu < 0 && !below_threshold(-mu / s2, tol, "M eigenvalue 0", "negative M eigenvalue"))
                throw StabilizerSolveFailed(-mu, "indefinite family: simple negative M eigenvalue");
            const Eigen::Vector2cd y = eigvec(M, mus[k]);
            const bool vanishing = below_threshold(std::abs(mu) / s2, tol, "M eigenvalue 0", "M eigenvalue > 0");
            ss[k] = vanishing ? 0.0 : std::sqrt(mu);
            xs[k] = vanishing ? y : coneigen(F, y, ss[k]);
            hs[k] = F.h(xs[k], xs[k]).real();
            xs[k] /= std::sqrt(std::abs(hs[k]));
        }
        if ((hs[0] > 0) == (hs[1] > 0))
            throw StabilizerSolveFailed(std::min(std::abs(hs[0]), std::abs(hs[1])),
                                        "indefinite family: coneigenvectors share a sign");
        if (hs[0] > 0)
            finish_h_frame(xs[0], ss[0], xs[1], ss[1]);
        else
            finish_h_frame(xs[1], ss[1], xs[0], ss[0]);
        return out;
    }

    // non-real pair: swap frame, 1 + d e^{i theta}
    const cplx mu1 = m1.imag() < 0 ? m1 : m2;
    Eigen::Vector2cd x1 = eigvec(M, mu1);
    const cplx g12 = F.h(x1, F.T(x1));
    x1 *= std::sqrt(1.0 / g12);
    out.form = BForm::OneDExpTheta;
    out.params.d = std::abs(mu1);
    out.params.theta = std::arg(std::conj(mu1));
    out.P.col(0) = x1;
    out.P.col(1) = F.T(x1);
    return out;
}

Eigen::VectorXd residual_vector(const MatrixPair& a, const MatrixPair& b) {
    Eigen::VectorXd r(14);
    for (int k = 0; k < 4; ++k) {
        const cplx z = a.A(k / 2, k % 2) - b.A(k / 2, k % 2);
        r[2 * k] = z.real();
        r[2 * k + 1] = z.imag();
    }
    const std::array<cplx, 3> zb = {a.B.b11() - b.B.b11(), a.B.b12() - b.B.b12(), a.B.b22() - b.B.b22()};
    for (int k = 0; k < 3; ++k) {
        r[8 + 2 * k] = zb[k].real();
        r[9 + 2 * k] = zb[k].imag();
    }
    return r;
}

// Continuous parameters exposed to the polish step (d0 follows d).
std::vector<double*> param_slots(OrbitClass& cls) {
    std::vector<double*> out;
    for (const auto& name : family_info(cls.key()).params) {
        if (name == "tau" || (name == "theta" && cls.a_family.tag == StarTag::Unimodular))
            out.push_back(&cls.a_family.param);
        else if (name == "theta")
            out.push_back(&cls.params.theta);
        else if (name == "a")
            out.push_back(&cls.params.a);
        else if (name == "b")
            out.push_back(&cls.params.b);
        else if (name == "d")
            out.push_back(&cls.params.d);
        else if (name == "r")
            out.push_back(&cls.params.r);
        else if (name == "phi")
            out.push_back(&cls.params.phi);
        else if (name == "beta")
            out.push_back(&cls.params.beta);
        else if (name == "delta")
            out.push_back(&cls.params.delta);
        else if (name == "zeta") {
            auto* z = reinterpret_cast<double*>(&cls.params.zeta);
            out.push_back(z);
            out.push_back(z + 1);
        }
    }
    return out;
}

void polish(const MatrixPair& p, OrbitClass& cls, GroupElement& g, double& residual) {
    OrbitClass work = cls;
    const std::size_t np = param_slots(work).size();
    const bool tied = cls.b_form == BForm::DiagD0D && cls.params.d0 > 0;
    Eigen::VectorXd x0(9 + np);
    x0[0] = std::arg(g.c());
    for (int k = 0; k < 4; ++k) {
        x0[1 + 2 * k] = g.P()(k / 2, k % 2).real();
        x0[2 + 2 * k] = g.P()(k / 2, k % 2).imag();
    }
    {
        auto slots = param_slots(work);
        for (std::size_t k = 0; k < np; ++k) x0[9 + k] = *slots[k];
    }
    auto unpack = [&](const Eigen::VectorXd& x, OrbitClass& c, GroupElement& h) {
        Complex2x2 P;
        for (int k = 0; k < 4; ++k) P(k / 2, k % 2) = cplx(x[1 + 2 * k], x[2 + 2 * k]);
        h = GroupElement::unchecked(std::polar(1.0, x[0]), P);
        auto slots = param_slots(c);
        for (std::size_t k = 0; k < np; ++k) *slots[k] = x[9 + k];
        if (tied) c.params.d0 = c.params.d;
    };
    auto res = [&](const Eigen::VectorXd& x) {
        OrbitClass c = cls;
        GroupElement h;
        unpack(x, c, h);
        return residual_vector(act_pair(h, p), representative(c));
    };
    RefineResult rr = levenberg_marquardt(res, x0);
    OrbitClass c = cls;
    GroupElement h;
    unpack(rr.x, c, h);
    try {
        validate_class(c);
    } catch (const BadParams&) {
        return;
    }
    if (!(std::abs(h.P().determinant()) > 0)) return;
    const double r2 = pair_distance(act_pair(h, p), representative(c));
    if (r2 < residual) {
        cls = c;
        g = GroupElement(h.c(), h.P());
        residual = r2;
    }
}

}  // namespace

std::string to_string(BForm f) { return kBFormNames[static_cast<int>(f)]; }

BForm bform_from_string(const std::string& s) {
    for (std::size_t i = 0; i < kBFormNames.size(); ++i)
        if (s == kBFormNames[i]) return static_cast<BForm>(i);
    throw InvalidArgument("unknown B form: " + s);
}

const std::vector<FamilyInfo>& family_table() {
    static const std::vector<FamilyInfo> table = build_table();
    return table;
}

const FamilyInfo& family_info(FamilyKey k) {
    static const std::map<FamilyKey, const FamilyInfo*> index = [] {
        std::map<FamilyKey, const FamilyInfo*> m;
        for (const auto& f : family_table()) m[f.key] = &f;
        return m;
    }();
    auto it = index.find(k);
    if (it == index.end()) throw BadParams("no normal form " + family_id(k));
    return *it->second;
}

std::string family_id(FamilyKey k) { return to_string(k.a) + "|" + to_string(k.b); }

bool uses_swap_frame(FamilyKey k) {
    return k.a == StarTag::Indefinite &&
           (k.b == BForm::OneDExpTheta || k.b == BForm::AntiBOne || k.b == BForm::OneZero);
}

void validate_class(const OrbitClass& cls) {
    const FamilyInfo& info = family_info(cls.key());
    auto bad = [&](const std::string& what) { throw BadParams(family_id(cls.key()) + ": " + what); };
    if (cls.a_family.tag == StarTag::Reciprocal && !(cls.a_family.param > 0 && cls.a_family.param < 1))
        bad("tau must lie in (0,1)");
    if (cls.a_family.tag == StarTag::Unimodular && !(cls.a_family.param > 0 && cls.a_family.param < kPi))
        bad("theta must lie in (0,pi)");
    const BParams& q = cls.params;
    for (const auto& name : info.params) {
        if (name == "a" && !(q.a > 0)) bad("a must be positive");
        if (name == "b" && !(q.b > 0)) bad("b must be positive");
        if (name == "d" && !(q.d > 0)) bad("d must be positive");
        if (name == "r" && !(q.r >= 0)) bad("r must be nonnegative");
        if (name == "phi" && !(q.phi >= 0 && q.phi < kPi)) bad("phi must lie in [0,pi)");
        if (name == "theta" && cls.a_family.tag == StarTag::Indefinite && !(q.theta > 0 && q.theta < kPi))
            bad("theta must lie in (0,pi)");
        if (name == "d0" && !(q.d0 == 0.0 || q.d0 == q.d)) bad("d0 must be 0 or d");
        if ((name == "beta" && !std::isfinite(q.beta)) || (name == "delta" && !std::isfinite(q.delta)) ||
            (name == "zeta" && !std::isfinite(std::abs(q.zeta))))
            bad("parameters must be finite");
    }
    if (cls.b_form == BForm::DiagAD && !(q.a < q.d)) bad("a < d required");
    if (cls.dim != info.dim) bad("dimension does not match the table");
}

OrbitClass make_class(StarClass a, BForm b, const BParams& params) {
    OrbitClass cls;
    cls.a_family = a;
    if (!a.has_param()) cls.a_family.param = 0.0;
    cls.b_form = b;
    // keep only the parameters this family carries
    const FamilyInfo& info = family_info(cls.key());
    auto has = [&](const char* n) { return std::find(info.params.begin(), info.params.end(), n) != info.params.end(); };
    if (has("a")) cls.params.a = params.a;
    if (has("b")) cls.params.b = params.b;
    if (has("d")) cls.params.d = params.d;
    if (has("d0")) cls.params.d0 = params.d0;
    if (has("r")) cls.params.r = params.r;
    if (has("phi")) cls.params.phi = params.phi;
    if (has("beta")) cls.params.beta = params.beta;
    if (has("delta")) cls.params.delta = params.delta;
    if (has("theta") && a.tag != StarTag::Unimodular) cls.params.theta = params.theta;
    if (has("zeta")) cls.params.zeta = params.zeta;
    cls.dim = info.dim;
    validate_class(cls);
    return cls;
}

Complex2x2 a_representative(const OrbitClass& cls) {
    if (uses_swap_frame(cls.key())) {
        Complex2x2 K;
        K << 0.0, 1.0, 1.0, 0.0;
        return K;
    }
    return star_representative(cls.a_family);
}

Sym2x2 b_representative(const OrbitClass& cls) {
    const BParams& q = cls.params;
    switch (cls.b_form) {
        case BForm::Zero2: return {};
        case BForm::OneZero: return {1.0, 0.0, 0.0};
        case BForm::Identity: return {1.0, 0.0, 1.0};
        case BForm::DiagAD: return {q.a, 0.0, q.d};
        case BForm::DiagD0D: return {q.d0, 0.0, q.d};
        case BForm::AntiDiag: return {0.0, q.b, q.delta};
        case BForm::OneDExpTheta: return {1.0, 0.0, std::polar(q.d, q.theta)};
        case BForm::AntiBOne: return {0.0, q.b, 1.0};
        case BForm::AntiBD: return {0.0, q.b, q.d};
        case BForm::FullPhase: return {q.a, std::polar(q.r, q.phi), q.d};
        case BForm::ABZero: return {q.a, q.b, 0.0};
        case BForm::ZeroD: return {0.0, 0.0, q.d};
        case BForm::AZero: return {q.a, 0.0, 0.0};
        case BForm::PhaseBZeta: return {std::polar(1.0, q.phi), q.b, q.zeta};
        case BForm::AntiBPhase: return {0.0, q.b, std::polar(1.0, q.phi)};
        case BForm::OneZeta: return {1.0, 0.0, q.zeta};
        case BForm::ZeroOne: return {0.0, 0.0, 1.0};
        case BForm::AZeta: return {q.a, q.beta, q.zeta};
        case BForm::AOne: return {q.a, 0.0, 1.0};
        case BForm::ZetaBOne: return {q.zeta, q.b, 1.0};
        case BForm::OneBZero: return {1.0, q.b, 0.0};
        case BForm::Swap: return {0.0, 1.0, 0.0};
    }
    return {};
}

MatrixPair representative(const OrbitClass& cls) { return {a_representative(cls), b_representative(cls)}; }

double param_value(const OrbitClass& cls, const std::string& name) {
    const BParams& q = cls.params;
    if (name == "tau") return cls.a_family.param;
    if (name == "theta") return cls.a_family.tag == StarTag::Unimodular ? cls.a_family.param : q.theta;
    if (name == "a") return q.a;
    if (name == "b") return q.b;
    if (name == "d") return q.d;
    if (name == "d0") return q.d0;
    if (name == "r") return q.r;
    if (name == "phi") return q.phi;
    if (name == "beta") return q.beta;
    if (name == "delta") return q.delta;
    if (name == "zeta_re") return q.zeta.real();
    if (name == "zeta_im") return q.zeta.imag();
    throw InvalidArgument("unknown parameter " + name);
}

void set_param(OrbitClass& cls, const std::string& name, double value) {
    BParams& q = cls.params;
    if (name == "tau") cls.a_family.param = value;
    else if (name == "theta" && cls.a_family.tag == StarTag::Unimodular) cls.a_family.param = value;
    else if (name == "theta") q.theta = value;
    else if (name == "a") q.a = value;
    else if (name == "b") q.b = value;
    else if (name == "d") q.d = value;
    else if (name == "d0") q.d0 = value;
    else if (name == "r") q.r = value;
    else if (name == "phi") q.phi = value;
    else if (name == "beta") q.beta = value;
    else if (name == "delta") q.delta = value;
    else if (name == "zeta_re") q.zeta = {value, q.zeta.imag()};
    else if (name == "zeta_im") q.zeta = {q.zeta.real(), value};
    else throw InvalidArgument("unknown parameter " + name);
}

OrbitClass sample_class(FamilyKey k, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> pos(0.2, 2.0), angle(0.05, 3.05), signed_unit(-1.0, 1.0);
    StarClass a{k.a, 0.0};
    if (k.a == StarTag::Reciprocal) a.param = std::uniform_real_distribution<double>(0.1, 0.9)(rng);
    if (k.a == StarTag::Unimodular) a.param = angle(rng);
    BParams q;
    q.a = pos(rng);
    q.b = pos(rng);
    q.d = pos(rng);
    q.r = pos(rng);
    q.phi = angle(rng);
    q.beta = signed_unit(rng);
    q.delta = signed_unit(rng);
    q.theta = angle(rng);
    q.zeta = {signed_unit(rng), signed_unit(rng)};
    if (k.b == BForm::DiagAD && q.a >= q.d) std::swap(q.a, q.d);
    if (k.b == BForm::DiagD0D) q.d0 = (rng() % 2) ? q.d : 0.0;
    return make_class(a, k.b, q);
}

double param_distance(const OrbitClass& x, const OrbitClass& y) {
    if (!(x.key() == y.key())) return std::numeric_limits<double>::infinity();
    double dist = 0.0;
    for (const auto& name : family_info(x.key()).params) {
        double e;
        if (name == "zeta") {
            e = std::abs(x.params.zeta - y.params.zeta);
        } else if (name == "phi") {
            const double raw = std::abs(x.params.phi - y.params.phi);
            e = std::min(raw, kPi - raw);
            // phi only matters when its modulus r is nonzero
            if (x.b_form == BForm::FullPhase) e *= std::max(x.params.r, y.params.r);
        } else {
            e = std::abs(param_value(x, name) - param_value(y, name));
        }
        dist = std::max(dist, e);
    }
    return dist;
}

ClassifiedPair classify_pair(const MatrixPair& p, double tol) {
    if (!(tol > 0)) throw InvalidArgument("tol must be positive");
    const StarReduction sr = classify_star(p.A, tol);
    const Sym2x2 B0 = act_tcong(sr.reducer.P(), p.B);
    const ZeroTest zero(tol, max_norm(B0));

    Normalized nf;
    switch (sr.cls.tag) {
        case StarTag::Zero: nf = norm_zero(B0, tol); break;
        case StarTag::Rank1Semidef: nf = norm_semidef(B0, zero); break;
        case StarTag::Rank1Nilpotent: nf = norm_nilpotent(B0, zero); break;
        case StarTag::Definite: nf = norm_definite(B0, zero); break;
        case StarTag::Indefinite: nf = norm_indefinite(B0, zero); break;
        case StarTag::Reciprocal: nf = norm_reciprocal(B0, zero); break;
        case StarTag::Unimodular: nf = norm_unimodular(B0, zero); break;
        case StarTag::JordanType: nf = norm_jordan(B0, zero); break;
    }

    ClassifiedPair out;
    out.cls.a_family = sr.cls;
    out.cls.b_form = nf.form;
    out.cls.params = nf.params;
    out.cls.dim = family_info(out.cls.key()).dim;
    validate_class(out.cls);
    out.reducer = GroupElement(nf.c * sr.reducer.c(), sr.reducer.P() * nf.P);
    out.residual = pair_distance(act_pair(out.reducer, p), representative(out.cls));

    const double scale = std::max({1.0, max_norm(p.A), max_norm(p.B)});
    if (out.residual > 1e-13 * scale) polish(p, out.cls, out.reducer, out.residual);
    if (out.residual > 1e-6 * scale) throw StabilizerSolveFailed(out.residual, "normal form residual too large");
    return out;
}

bool orbit_equal(const MatrixPair& p, const MatrixPair& q, double tol) {
    const ClassifiedPair a = classify_pair(p, tol);
    const ClassifiedPair b = classify_pair(q, tol);
    return param_distance(a.cls, b.cls) <= std::max(tol, 1e-6);
}

bool is_generic(const OrbitClass& cls) {
    if (cls.a_family.tag == StarTag::Reciprocal && cls.b_form == BForm::PhaseBZeta) return cls.params.b > 0;
    if (cls.a_family.tag == StarTag::Unimodular && cls.b_form == BForm::FullPhase)
        return cls.params.a > 0 && cls.params.d > 0;
    return false;
}

json to_json(const OrbitClass& cls) {
    json a{{"tag", to_string(cls.a_family.tag)}};
    if (cls.a_family.tag == StarTag::Reciprocal) a["tau"] = cls.a_family.param;
    if (cls.a_family.tag == StarTag::Unimodular) a["theta"] = cls.a_family.param;
    json b{{"tag", to_string(cls.b_form)}};
    for (const auto& name : family_info(cls.key()).params) {
        if (name == "tau" || (name == "theta" && cls.a_family.tag == StarTag::Unimodular)) continue;
        if (name == "zeta")
            b["zeta"] = to_json(cls.params.zeta);
        else
            b[name] = param_value(cls, name);
    }
    return json{{"a_family", a}, {"b_form", b}, {"dim", cls.dim}};
}

OrbitClass class_from_json(const json& j) {
    try {
        StarClass a;
        a.tag = star_tag_from_string(j.at("a_family").at("tag").get<std::string>());
        if (a.tag == StarTag::Reciprocal) a.param = j.at("a_family").at("tau").get<double>();
        if (a.tag == StarTag::Unimodular) a.param = j.at("a_family").at("theta").get<double>();
        const json& jb = j.at("b_form");
        const BForm f = bform_from_string(jb.at("tag").get<std::string>());
        BParams q;
        auto get = [&](const char* k, double& v) {
            if (jb.contains(k)) v = jb.at(k).get<double>();
        };
        get("a", q.a);
        get("b", q.b);
        get("d", q.d);
        get("d0", q.d0);
        get("r", q.r);
        get("phi", q.phi);
        get("beta", q.beta);
        get("delta", q.delta);
        if (a.tag != StarTag::Unimodular) get("theta", q.theta);
        if (jb.contains("zeta")) q.zeta = complex_from_json(jb.at("zeta"));
        return make_class(a, f, q);
    } catch (const json::exception& e) {
        throw InvalidArgument(std::string("orbit class JSON: ") + e.what());
    }
}

json to_json(const ClassifiedPair& cp) {
    return json{{"class", to_json(cp.cls)}, {"reducer", to_json(cp.reducer)}, {"residual", cp.residual}};
}

}  // namespace artifact
