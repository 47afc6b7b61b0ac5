#pragma once

#include <array>

#include "artifact/matcore.hpp"

namespace artifact {

using Vec14 = Eigen::Matrix<double, 14, 1>;

// Coordinates: A row-major as (re, im) pairs -> 0..7, then B11, B12, B22 as (re, im) -> 8..13.
Vec14 embed(const Complex2x2& A, const Sym2x2& B);

// Order: w1, w2, v11, v12, v21, v22, u11, u12, u21, u22.
struct TangentFrame {
    std::array<Vec14, 10> vectors;

    const Vec14& w1() const { return vectors[0]; }
    const Vec14& w2() const { return vectors[1]; }
    const Vec14& v(int j, int k) const { return vectors[2 + 2 * (j - 1) + (k - 1)]; }
    const Vec14& u(int j, int k) const { return vectors[6 + 2 * (j - 1) + (k - 1)]; }
    Eigen::Matrix<double, 10, 14> matrix() const;
};

TangentFrame tangent_frame(const MatrixPair& p);

// Numerical rank of the frame; RankUnstable when a singular value sits near the cut.
int orbit_dimension(const MatrixPair& p, double tol = kDefaultTol);

}  // namespace artifact
