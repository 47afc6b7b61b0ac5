#include "artifact/congruence.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "artifact/errors.hpp"
#include "artifact/refine.hpp"

namespace artifact {

namespace {

constexpr double kPi = std::numbers::pi;

const std::array<const char*, 8> kStarNames = {"Zero",       "Rank1Semidef", "Rank1Nilpotent", "Definite",
                                               "Indefinite", "Reciprocal",   "Unimodular",     "JordanType"};

double wrap_2pi(double x) {
    x = std::fmod(x, 2.0 * kPi);
    if (x < 0) x += 2.0 * kPi;
    return x;
}

cplx unit(cplx z) { return z / std::abs(z); }

// Eigenvector of the 2x2 matrix C for eigenvalue mu (C - mu I has rank one).
Eigen::Vector2cd eigvec2(const Complex2x2& C, cplx mu) {
    Eigen::Vector2cd a(C(0, 1), mu - C(0, 0));
    Eigen::Vector2cd b(mu - C(1, 1), C(1, 0));
    Eigen::Vector2cd v = a.norm() >= b.norm() ? a : b;
    return v / v.norm();
}

// Pack (phase of c, P) into 9 reals and back.
Eigen::VectorXd pack_group(const GroupElement& g) {
    Eigen::VectorXd x(9);
    x[0] = std::arg(g.c());
    for (int k = 0; k < 4; ++k) {
        x[1 + 2 * k] = g.P()(k / 2, k % 2).real();
        x[2 + 2 * k] = g.P()(k / 2, k % 2).imag();
    }
    return x;
}

GroupElement unpack_group(const Eigen::VectorXd& x) {
    Complex2x2 P;
    for (int k = 0; k < 4; ++k) P(k / 2, k % 2) = cplx(x[1 + 2 * k], x[2 + 2 * k]);
    return GroupElement::unchecked(std::polar(1.0, x[0]), P);
}

Eigen::VectorXd flatten(const Complex2x2& M) {
    Eigen::VectorXd r(8);
    for (int k = 0; k < 4; ++k) {
        r[2 * k] = M(k / 2, k % 2).real();
        r[2 * k + 1] = M(k / 2, k % 2).imag();
    }
    return r;
}

GroupElement polish_star(const Complex2x2& A, const Complex2x2& target, const GroupElement& g0) {
    auto res = [&](const Eigen::VectorXd& x) { return flatten(act_star(unpack_group(x), A) - target); };
    RefineResult rr = levenberg_marquardt(res, pack_group(g0));
    return unpack_group(rr.x);
}

}  // namespace

std::string to_string(StarTag t) { return kStarNames[static_cast<int>(t)]; }

StarTag star_tag_from_string(const std::string& s) {
    for (std::size_t i = 0; i < kStarNames.size(); ++i)
        if (s == kStarNames[i]) return static_cast<StarTag>(i);
    throw InvalidArgument("unknown star family: " + s);
}

bool same_family(const StarClass& a, const StarClass& b) { return a.tag == b.tag; }

bool below_threshold(double q, double tol, const char* low_name, const char* high_name) {
    if (q <= tol) return true;
    if (q > 10.0 * tol) return false;
    throw AmbiguousNearBoundary(low_name, high_name, "decision quantity " + std::to_string(q) + " inside gray zone");
}

Complex2x2 star_representative(const StarClass& cls) {
    Complex2x2 M = Complex2x2::Zero();
    switch (cls.tag) {
        case StarTag::Zero: break;
        case StarTag::Rank1Semidef: M(0, 0) = 1.0; break;
        case StarTag::Rank1Nilpotent: M(0, 1) = 1.0; break;
        case StarTag::Definite: M = Complex2x2::Identity(); break;
        case StarTag::Indefinite:
            M(0, 0) = 1.0;
            M(1, 1) = -1.0;
            break;
        case StarTag::Reciprocal:
            M(0, 1) = 1.0;
            M(1, 0) = cls.param;
            break;
        case StarTag::Unimodular:
            M(0, 0) = 1.0;
            M(1, 1) = std::polar(1.0, cls.param);
            break;
        case StarTag::JordanType:
            M(0, 1) = 1.0;
            M(1, 0) = 1.0;
            M(1, 1) = kI;
            break;
    }
    return M;
}

Takagi takagi(const Sym2x2& B) {
    Takagi t;
    const Eigen::Matrix2d R = B.matrix().real();
    const Eigen::Matrix2d I = B.matrix().imag();
    // x -> B conj(x) as a real-linear map on (Re x, Im x); it is symmetric
    Eigen::Matrix4d M;
    M << R, I, I, -R;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(M);
    t.s1 = std::max(0.0, es.eigenvalues()[3]);
    if (!(t.s1 > 0.0)) return t;
    const Eigen::Vector4d v = es.eigenvectors().col(3);
    Eigen::Vector2cd w1(cplx(v[0], v[2]), cplx(v[1], v[3]));
    w1 /= w1.norm();
    Eigen::Vector2cd w2(-std::conj(w1[1]), std::conj(w1[0]));
    const cplx kappa = w2.dot(B.matrix() * w2.conjugate());  // dot() conjugates the left side
    t.s2 = std::abs(kappa);
    if (t.s2 > 0.0) w2 *= std::polar(1.0, 0.5 * std::arg(kappa));
    t.W.col(0) = w1;
    t.W.col(1) = w2;
    return t;
}

Complex2x2 cosquare(const Complex2x2& A, double tol) {
    if (std::abs(A.determinant()) <= tol) throw SingularInput("cosquare: |det A| <= tol");
    return A.adjoint().inverse() * A;
}

TCongReduction classify_tcong(const Sym2x2& B, double tol) {
    if (!(tol > 0)) throw InvalidArgument("tol must be positive");
    const Takagi t = takagi(B);
    const double cut = tol * std::max(1.0, max_norm(B));
    TCongReduction out;
    Eigen::Vector2cd scale(1.0, 1.0);
    if (t.s1 > cut) {
        ++out.rank;
        scale[0] = 1.0 / std::sqrt(t.s1);
    }
    if (t.s2 > cut) {
        ++out.rank;
        scale[1] = 1.0 / std::sqrt(t.s2);
    }
    out.reducer = t.W.conjugate() * scale.asDiagonal();
    Complex2x2 target = Complex2x2::Zero();
    for (int k = 0; k < out.rank; ++k) target(k, k) = 1.0;
    out.residual = max_norm(Complex2x2(act_tcong(out.reducer, B).matrix() - target));
    return out;
}

StarReduction classify_star(const Complex2x2& A, double tol) {
    if (!(tol > 0)) throw InvalidArgument("tol must be positive");
    if (!is_finite(A)) throw InvalidArgument("matrix entries must be finite");
    StarReduction out;
    Eigen::JacobiSVD<Complex2x2> svd(A, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const double s1 = svd.singularValues()[0];
    const double s2 = svd.singularValues()[1];

    if (below_threshold(s1, tol, "Zero", "Rank1")) {
        out.cls.tag = StarTag::Zero;
        out.residual = max_norm(A);
        return out;
    }

    GroupElement g;
    if (below_threshold(s2 / s1, tol, "Rank1", "Rank2")) {
        const Eigen::Vector2cd u = svd.matrixU().col(0);
        const Eigen::Vector2cd v = svd.matrixV().col(0);
        const cplx overlap = u.dot(v);
        // component of v orthogonal to u, measured directly to avoid 1 - |u.v|^2 cancellation
        const double sinangle = std::abs(svd.matrixU().col(1).dot(v));
        if (below_threshold(sinangle, tol, "Rank1Semidef", "Rank1Nilpotent")) {
            out.cls.tag = StarTag::Rank1Semidef;
            Complex2x2 P = svd.matrixU();
            P.col(0) /= std::sqrt(s1);
            g = GroupElement(unit(overlap), P);
        } else {
            out.cls.tag = StarTag::Rank1Nilpotent;
            Complex2x2 M;
            M.col(0) = std::sqrt(s1) * u;
            M.col(1) = std::sqrt(s1) * v;
            g = GroupElement(1.0, M.inverse().adjoint());
        }
    } else {
        const Complex2x2 C = cosquare(A, 0.0);
        const double cn = max_norm(C);
        const cplx half_tr = 0.5 * C.trace();
        const Complex2x2 N = C - half_tr * Complex2x2::Identity();
        const double nn = max_norm(N);
        if (below_threshold(nn / cn, tol, "Definite/Indefinite", "non-scalar cosquare")) {
            cplx c0 = 1.0 / std::sqrt(half_tr);
            c0 = unit(c0);
            const Complex2x2 A1 = c0 * A;
            const Complex2x2 H = 0.5 * (A1 + A1.adjoint());
            Eigen::SelfAdjointEigenSolver<Complex2x2> es(H);
            const double l0 = es.eigenvalues()[0];
            const double l1 = es.eigenvalues()[1];
            const Complex2x2 U = es.eigenvectors();
            Complex2x2 P;
            if (l0 > 0 || l1 < 0) {
                out.cls.tag = StarTag::Definite;
                if (l1 < 0) c0 = -c0;
                P.col(0) = U.col(0) / std::sqrt(std::abs(l0));
                P.col(1) = U.col(1) / std::sqrt(std::abs(l1));
            } else {
                out.cls.tag = StarTag::Indefinite;
                P.col(0) = U.col(1) / std::sqrt(l1);
                P.col(1) = U.col(0) / std::sqrt(-l0);
            }
            g = GroupElement(c0, P);
        } else {
            const cplx disc = N(0, 0) * N(0, 0) + N(0, 1) * N(1, 0);
            if (below_threshold(std::abs(disc) / (nn * nn), tol, "JordanType", "distinct cosquare eigenvalues")) {
                out.cls.tag = StarTag::JordanType;
                cplx c0 = unit(1.0 / std::sqrt(half_tr));
                const Complex2x2 N0 = N / half_tr;
                const int j = N0.col(0).norm() >= N0.col(1).norm() ? 0 : 1;
                Complex2x2 P0;
                P0.col(0) = N0.col(j);
                P0.col(1) = Eigen::Vector2cd::Unit(j);
                Complex2x2 M = c0 * (P0.adjoint() * A * P0);
                if (M(1, 1).imag() < 0) {
                    c0 = -c0;
                    M = -M;
                }
                const cplx p = M(0, 1);
                const cplx q = M(1, 1);
                const double beta = 1.0 / std::sqrt(q.imag());
                const cplx alpha = std::conj(1.0 / (p * beta));
                const cplx gamma = -beta * beta * q.real() / (2.0 * std::conj(p * beta));
                Complex2x2 Q;
                Q << alpha, gamma, 0.0, beta;
                g = GroupElement(c0, P0 * Q);
            } else {
                const cplx root = std::sqrt(disc);
                cplx m1 = half_tr + root, m2 = half_tr - root;
                if (std::abs(m1) > std::abs(m2)) std::swap(m1, m2);
                const double tau = std::sqrt(std::abs(m1) / std::abs(m2));
                const Eigen::Vector2cd x1 = eigvec2(C, m1);
                const Eigen::Vector2cd x2 = eigvec2(C, m2);
                if (below_threshold(1.0 - tau, tol, "Unimodular", "Reciprocal")) {
                    out.cls.tag = StarTag::Unimodular;
                    const cplx l1 = x1.dot(A * x1);
                    const cplx l2 = x2.dot(A * x2);
                    Complex2x2 P;
                    P.col(0) = x1 / std::sqrt(std::abs(l1));
                    P.col(1) = x2 / std::sqrt(std::abs(l2));
                    double theta = wrap_2pi(std::arg(l2) - std::arg(l1));
                    cplx c = std::polar(1.0, -std::arg(l1));
                    if (theta > kPi) {
                        P.col(0).swap(P.col(1));
                        theta = 2.0 * kPi - theta;
                        c = std::polar(1.0, -std::arg(l2));
                    }
                    below_threshold(std::min(theta, kPi - theta), tol, "Definite/Indefinite", "Unimodular");
                    out.cls.param = theta;
                    g = GroupElement(c, P);
                } else {
                    out.cls.tag = StarTag::Reciprocal;
                    const cplx y12 = x1.dot(A * x2);
                    const cplx y21 = x2.dot(A * x1);
                    const cplx beta = std::polar(1.0 / std::abs(y12), 0.5 * std::arg(y21 / y12));
                    Complex2x2 P;
                    P.col(0) = x1;
                    P.col(1) = beta * x2;
                    out.cls.param = std::abs(y21 / y12);
                    g = GroupElement(unit(1.0 / (beta * y12)), P);
                }
            }
        }
    }

    const Complex2x2 rep = star_representative(out.cls);
    out.residual = max_norm(Complex2x2(act_star(g, A) - rep));
    if (out.residual > 1e-13) {
        GroupElement h = polish_star(A, rep, g);
        const double r2 = max_norm(Complex2x2(act_star(h, A) - rep));
        if (r2 < out.residual && std::abs(h.P().determinant()) > 0) {
            g = GroupElement(h.c(), h.P());
            out.residual = r2;
        }
    }
    out.reducer = g;
    return out;
}

}  // namespace artifact
