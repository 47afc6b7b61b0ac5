#include "artifact/surface.hpp"

#include <cmath>

#include "artifact/errors.hpp"

namespace artifact {

cplx JetData::evaluate(const CVec2& z) const {
    const CVec2 zb = z.conjugate();
    const Complex2x2 Bm = B.matrix(), Cm = C.matrix();
    return w0 + (lin_zbar.transpose() * zb)(0) + (lin_z.transpose() * z)(0) +
           (zb.transpose() * A * z)(0) + 0.5 * (zb.transpose() * Bm * zb)(0) + 0.5 * (z.transpose() * Cm * z)(0);
}

namespace {

CVec2 vec_from_json(const json& j, const char* name) {
    if (!j.contains(name)) return CVec2::Zero();
    const json& v = j.at(name);
    if (!v.is_array() || v.size() != 2) throw InvalidArgument(std::string("jet: ") + name + " must have 2 entries");
    return CVec2(complex_from_json(v[0]), complex_from_json(v[1]));
}

json vec_to_json(const CVec2& v) { return json::array({to_json(v(0)), to_json(v(1))}); }

}  // namespace

JetData jet_from_json(const json& j) {
    if (!j.is_object()) throw InvalidArgument("jet: expected an object");
    JetData out;
    if (j.contains("w0")) out.w0 = complex_from_json(j.at("w0"));
    out.lin_z = vec_from_json(j, "lin_z");
    out.lin_zbar = vec_from_json(j, "lin_zbar");
    if (!j.contains("A")) throw InvalidArgument("jet: missing A");
    out.A = matrix_from_json(j.at("A"));
    if (j.contains("B")) out.B = sym_from_json(j.at("B"));
    if (j.contains("C")) out.C = sym_from_json(j.at("C"));
    return out;
}

json to_json(const JetData& j) {
    return {{"w0", to_json(j.w0)}, {"lin_z", vec_to_json(j.lin_z)}, {"lin_zbar", vec_to_json(j.lin_zbar)},
            {"A", to_json(j.A)},   {"B", to_json(j.B)},             {"C", to_json(j.C)}};
}

json to_json(const JetReduction& r) {
    return {{"pair", to_json(r.pair)},
            {"shift", vec_to_json(r.shift)},
            {"w_shift", to_json(r.w_shift)},
            {"removed_linear", vec_to_json(r.removed_linear)},
            {"removed_quadratic", to_json(r.removed_quadratic)}};
}

JetReduction reduce_jet(const JetData& j, double tol) {
    if (!(tol > 0)) throw InvalidArgument("reduce_jet: tol must be positive");
    if (!is_finite(j.A) || !j.lin_z.allFinite() || !j.lin_zbar.allFinite() || !std::isfinite(std::abs(j.w0)))
        throw InvalidArgument("reduce_jet: non-finite jet");
    const double s_norm = j.lin_zbar.cwiseAbs().maxCoeff();
    if (s_norm > kStandardRadius)
        throw NotStandardPosition("lin_zbar has max-norm " + std::to_string(s_norm) + " > " +
                                  std::to_string(kStandardRadius));

    JetReduction r;
    const Complex2x2 Bm = j.B.matrix(), Cm = j.C.matrix();
    if (s_norm > 0) {
        // complex point: d/dzbar = lin_zbar + A z + B zbar = 0, a real-linear system in (Re z, Im z)
        Eigen::Matrix4d M;
        Eigen::Vector4d rhs;
        for (int row = 0; row < 2; ++row) {
            for (int col = 0; col < 2; ++col) {
                // z = x + i y: A z + B zbar = (A + B) x + i (A - B) y
                const cplx kx = j.A(row, col) + Bm(row, col), ky = kI * (j.A(row, col) - Bm(row, col));
                M(2 * row, col) = kx.real();
                M(2 * row + 1, col) = kx.imag();
                M(2 * row, 2 + col) = ky.real();
                M(2 * row + 1, 2 + col) = ky.imag();
            }
            rhs(2 * row) = -j.lin_zbar(row).real();
            rhs(2 * row + 1) = -j.lin_zbar(row).imag();
        }
        Eigen::JacobiSVD<Eigen::Matrix4d> svd(M, Eigen::ComputeFullU | Eigen::ComputeFullV);
        const auto sv = svd.singularValues();
        if (!(sv(3) > tol * std::max(1.0, sv(0))))
            throw NotStandardPosition("reduce_jet: the complex point is not isolated");
        const Eigen::Vector4d xy = svd.solve(rhs);
        r.shift = CVec2(cplx(xy(0), xy(2)), cplx(xy(1), xy(3)));
    }
    r.w_shift = j.evaluate(r.shift);

    // after translating, the z-linear coefficient is lin_z + A^T conj(z0) + C z0 (the zbar one vanishes)
    const CVec2 z0 = r.shift;
    r.removed_linear = j.lin_z + j.A.transpose() * z0.conjugate() + Cm * z0;
    // keep 1/2 z^T conj(B) z so that it pairs with 1/2 zbar^T B zbar into Re(z^T conj(B) z)
    // + 0.0 keeps conj(0) from printing as -0
    auto cj = [](cplx z) { return std::conj(z) + cplx(0.0, 0.0); };
    const Sym2x2 Bbar(cj(j.B.b11()), cj(j.B.b12()), cj(j.B.b22()));
    r.removed_quadratic = j.C - Bbar;
    r.pair = MatrixPair(j.A, Bbar);
    return r;
}

bool is_quadratically_flat(const MatrixPair& p, double tol) {
    if (!(tol > 0)) throw InvalidArgument("is_quadratically_flat: tol must be positive");
    return max_norm(Complex2x2(p.A - p.A.adjoint())) <= tol;
}

}  // namespace artifact
