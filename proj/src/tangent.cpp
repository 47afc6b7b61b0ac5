#include "artifact/tangent.hpp"

#include "artifact/errors.hpp"

namespace artifact {

Vec14 embed(const Complex2x2& A, const Sym2x2& B) {
    Vec14 v;
    for (int k = 0; k < 4; ++k) {
        v[2 * k] = A(k / 2, k % 2).real();
        v[2 * k + 1] = A(k / 2, k % 2).imag();
    }
    const cplx b[3] = {B.b11(), B.b12(), B.b22()};
    for (int k = 0; k < 3; ++k) {
        v[8 + 2 * k] = b[k].real();
        v[9 + 2 * k] = b[k].imag();
    }
    return v;
}

Eigen::Matrix<double, 10, 14> TangentFrame::matrix() const {
    Eigen::Matrix<double, 10, 14> M;
    for (int i = 0; i < 10; ++i) M.row(i) = vectors[i].transpose();
    return M;
}

TangentFrame tangent_frame(const MatrixPair& p) {
    TangentFrame f;
    const Complex2x2& A = p.A;
    const Complex2x2 B = p.B.matrix();
    f.vectors[0] = embed(A, p.B);
    f.vectors[1] = embed(kI * A, p.B * (-kI));
    for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k) {
            Complex2x2 Ejk = Complex2x2::Zero();
            Ejk(j, k) = 1.0;
            const Complex2x2 Ekj = Ejk.transpose();
            // B-components are symmetric already; Sym2x2::from_matrix would reject rounding
            const Complex2x2 vA = Ekj * A + A * Ejk;
            const Complex2x2 vB = Ekj * B + B * Ejk;
            const Complex2x2 uA = kI * (-Ekj * A + A * Ejk);
            const Complex2x2 uB = kI * (Ekj * B + B * Ejk);
            f.vectors[2 + 2 * j + k] = embed(vA, Sym2x2::symmetrized(vB));
            f.vectors[6 + 2 * j + k] = embed(uA, Sym2x2::symmetrized(uB));
        }
    return f;
}

int orbit_dimension(const MatrixPair& p, double tol) {
    if (!(tol > 0)) throw InvalidArgument("tol must be positive");
    const Eigen::Matrix<double, 10, 14> M = tangent_frame(p).matrix();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(M);
    const Eigen::VectorXd s = svd.singularValues();
    if (s.size() == 0 || s[0] == 0.0) return 0;
    int rank = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i) {
        const double q = s[i] / s[0];
        if (q >= tol / 10.0 && q <= 10.0 * tol)
            throw RankUnstable(q, "orbit_dimension: relative singular value " + std::to_string(q) + " near the cut");
        if (q > tol) ++rank;
    }
    return rank;
}

}  // namespace artifact
