#include "artifact/matcore.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "artifact/errors.hpp"

namespace artifact {

Sym2x2::Sym2x2(cplx b11, cplx b12, cplx b22) : b11_(b11), b12_(b12), b22_(b22) {
    if (!std::isfinite(std::abs(b11)) || !std::isfinite(std::abs(b12)) || !std::isfinite(std::abs(b22)))
        throw InvalidArgument("symmetric matrix entries must be finite");
}

Sym2x2 Sym2x2::from_matrix(const Complex2x2& m) {
    if (m(0, 1) != m(1, 0))
        throw InvalidArgument("matrix is not symmetric");
    return {m(0, 0), m(0, 1), m(1, 1)};
}

Sym2x2 Sym2x2::symmetrized(const Complex2x2& m) {
    return {m(0, 0), 0.5 * (m(0, 1) + m(1, 0)), m(1, 1)};
}

cplx Sym2x2::operator()(int i, int j) const {
    if (i == 0 && j == 0) return b11_;
    if (i == 1 && j == 1) return b22_;
    return b12_;
}

Complex2x2 Sym2x2::matrix() const {
    Complex2x2 m;
    m << b11_, b12_, b12_, b22_;
    return m;
}

bool is_finite(const Complex2x2& M) {
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            if (!std::isfinite(M(i, j).real()) || !std::isfinite(M(i, j).imag())) return false;
    return true;
}

MatrixPair::MatrixPair(const Complex2x2& a, const Sym2x2& b) : A(a), B(b) {
    if (!is_finite(a)) throw InvalidArgument("pair entries must be finite");
}

GroupElement::GroupElement(cplx c, const Complex2x2& P) : c_(c), P_(P) {
    if (std::abs(std::abs(c) - 1.0) > 1e-12)
        throw InvalidArgument("group element: |c| must be 1");
    if (!is_finite(P) || !(std::abs(P.determinant()) > 0.0))
        throw InvalidArgument("group element: P must be invertible");
}

GroupElement GroupElement::unchecked(cplx c, const Complex2x2& P) {
    GroupElement g;
    g.c_ = c;
    g.P_ = P;
    return g;
}

GroupElement GroupElement::operator*(const GroupElement& h) const {
    return unchecked(c_ * h.c_, h.P_ * P_);
}

GroupElement GroupElement::inverse() const {
    return unchecked(std::conj(c_), P_.inverse());
}

Complex2x2 act_star(const GroupElement& g, const Complex2x2& A) {
    return g.c() * (g.P().adjoint() * A * g.P());
}

Sym2x2 act_tcong(const Complex2x2& P, const Sym2x2& B) {
    return Sym2x2::symmetrized(P.transpose() * B.matrix() * P);
}

MatrixPair act_pair(const GroupElement& g, const MatrixPair& p) {
    MatrixPair out;
    out.A = act_star(g, p.A);
    out.B = act_tcong(g.P(), p.B);
    return out;
}

double max_norm(const Complex2x2& M) {
    double m = 0.0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) m = std::max(m, std::abs(M(i, j)));
    return m;
}

double max_norm(const Sym2x2& M) {
    return std::max({std::abs(M.b11()), std::abs(M.b12()), std::abs(M.b22())});
}

double pair_distance(const MatrixPair& p, const MatrixPair& q) {
    return std::max(max_norm(Complex2x2(p.A - q.A)), max_norm(p.B - q.B));
}

GroupElement sample_group(std::uint64_t seed, double spread) {
    if (!(spread > 0.0) || !std::isfinite(spread))
        throw InvalidArgument("sample_group: spread must be positive");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    // each real part carries half the complex variance
    std::normal_distribution<double> gauss(0.0, spread / std::sqrt(2.0));
    const cplx c = std::polar(1.0, angle(rng));
    for (int round = 0; round < 100; ++round) {
        Complex2x2 P;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                const double re = gauss(rng);
                const double im = gauss(rng);
                P(i, j) = cplx(re, im);
            }
        if (std::abs(P.determinant()) >= 1e-6) return GroupElement(c, P);
    }
    throw SamplingFailed("sample_group: 100 rejection rounds without an invertible P");
}

}  // namespace artifact
