#pragma once

#include "artifact/json_io.hpp"
#include "artifact/matcore.hpp"

namespace artifact {

using CVec2 = Eigen::Vector2cd;

// Degree-2 jet of a graph w = w0 + lin_zbar^T zbar + lin_z^T z + zbar^T A z + 1/2 zbar^T B zbar + 1/2 z^T C z.
struct JetData {
    cplx w0 = 0.0;
    CVec2 lin_z = CVec2::Zero();
    CVec2 lin_zbar = CVec2::Zero();
    Complex2x2 A = Complex2x2::Zero();
    Sym2x2 B;
    Sym2x2 C;

    // Value of the jet polynomial at z.
    cplx evaluate(const CVec2& z) const;
};

JetData jet_from_json(const json& j);
json to_json(const JetData& j);

// Record of the substitution that brings the jet to zbar^T A z + Re(z^T B z).
struct JetReduction {
    MatrixPair pair;
    CVec2 shift = CVec2::Zero();      // the complex point, moved to the origin
    cplx w_shift = 0.0;               // jet value at the complex point
    CVec2 removed_linear = CVec2::Zero();  // z-linear coefficient subtracted from w
    Sym2x2 removed_quadratic;              // w -= 1/2 z^T removed_quadratic z
};

json to_json(const JetReduction& r);

// lin_zbar up to this max-norm is treated as a small perturbation of a complex point.
inline constexpr double kStandardRadius = 0.1;

// NotStandardPosition when lin_zbar is too large or the complex point is not isolated.
JetReduction reduce_jet(const JetData& j, double tol = kDefaultTol);

// A Hermitian up to tol.
bool is_quadratically_flat(const MatrixPair& p, double tol = kDefaultTol);

}  // namespace artifact
