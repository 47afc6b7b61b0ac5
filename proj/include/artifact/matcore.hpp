#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>

namespace artifact {

using cplx = std::complex<double>;
using Complex2x2 = Eigen::Matrix2cd;

inline constexpr double kDefaultTol = 1e-9;
inline const cplx kI{0.0, 1.0};

// Complex symmetric 2x2 matrix, stored once (b11, b12, b22).
class Sym2x2 {
public:
    Sym2x2() = default;
    Sym2x2(cplx b11, cplx b12, cplx b22);

    // Throws InvalidArgument unless m(0,1) == m(1,0) exactly.
    static Sym2x2 from_matrix(const Complex2x2& m);
    // (m + m^T) / 2
    static Sym2x2 symmetrized(const Complex2x2& m);
    static Sym2x2 zero() { return {}; }
    static Sym2x2 diag(cplx a, cplx d) { return {a, 0.0, d}; }

    cplx operator()(int i, int j) const;
    cplx b11() const { return b11_; }
    cplx b12() const { return b12_; }
    cplx b22() const { return b22_; }
    Complex2x2 matrix() const;

    Sym2x2 operator+(const Sym2x2& o) const { return {b11_ + o.b11_, b12_ + o.b12_, b22_ + o.b22_}; }
    Sym2x2 operator-(const Sym2x2& o) const { return {b11_ - o.b11_, b12_ - o.b12_, b22_ - o.b22_}; }
    Sym2x2 operator*(cplx s) const { return {s * b11_, s * b12_, s * b22_}; }
    cplx det() const { return b11_ * b22_ - b12_ * b12_; }

private:
    cplx b11_{0.0};
    cplx b12_{0.0};
    cplx b22_{0.0};
};

struct MatrixPair {
    Complex2x2 A = Complex2x2::Zero();
    Sym2x2 B;

    MatrixPair() = default;
    MatrixPair(const Complex2x2& a, const Sym2x2& b);
};

// (c, P) with |c| = 1 and P invertible.
class GroupElement {
public:
    GroupElement() : c_(1.0), P_(Complex2x2::Identity()) {}
    GroupElement(cplx c, const Complex2x2& P);

    static GroupElement identity() { return {}; }
    // Builds without validation; for internal curves evaluated close to degenerate s.
    static GroupElement unchecked(cplx c, const Complex2x2& P);

    cplx c() const { return c_; }
    const Complex2x2& P() const { return P_; }

    // g * h acts as "first h, then g": (c_g c_h, P_h P_g).
    GroupElement operator*(const GroupElement& h) const;
    GroupElement inverse() const;

private:
    cplx c_;
    Complex2x2 P_;
};

// (c P^* A P, P^T B P), B re-symmetrized.
MatrixPair act_pair(const GroupElement& g, const MatrixPair& p);
Complex2x2 act_star(const GroupElement& g, const Complex2x2& A);
Sym2x2 act_tcong(const Complex2x2& P, const Sym2x2& B);

double max_norm(const Complex2x2& M);
double max_norm(const Sym2x2& M);
double pair_distance(const MatrixPair& p, const MatrixPair& q);

// Seeded random element: c uniform on the circle, P complex Gaussian with the
// given standard deviation, resampled while |det P| < 1e-6.
GroupElement sample_group(std::uint64_t seed, double spread);

bool is_finite(const Complex2x2& M);

}  // namespace artifact
