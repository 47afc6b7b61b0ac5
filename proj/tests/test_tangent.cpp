#include <doctest.h>

#include <random>

#include "artifact/errors.hpp"
#include "artifact/pairnf.hpp"
#include "artifact/tangent.hpp"

using namespace artifact;

namespace {
using S = StarTag;
using F = BForm;

MatrixPair pair(const Complex2x2& A, const Sym2x2& B) { return {A, B}; }
}  // namespace

TEST_CASE("zero pair has a zero frame") {
    const TangentFrame f = tangent_frame(MatrixPair());
    for (const auto& v : f.vectors) CHECK(v.norm() == 0.0);
    CHECK(orbit_dimension(MatrixPair()) == 0);
}

TEST_CASE("frame of (0, 1+0)") {
    const TangentFrame f = tangent_frame(pair(Complex2x2::Zero(), Sym2x2::diag(1, 0)));
    // only the B11 and B12 coordinates (8..11) can move
    for (const auto& v : f.vectors) {
        CHECK(v.head(8).norm() == 0.0);
        CHECK(v.tail(2).norm() == 0.0);
    }
    Vec14 w1 = Vec14::Zero();
    w1[8] = 1.0;
    CHECK((f.w1() - w1).norm() == 0.0);
    CHECK(orbit_dimension(pair(Complex2x2::Zero(), Sym2x2::diag(1, 0))) == 4);
}

TEST_CASE("named dimensions") {
    CHECK(orbit_dimension(pair(Complex2x2::Identity(), Sym2x2::diag(1, 2))) == 9);
    Complex2x2 J;
    J << 0, 1, 1, kI;
    CHECK(orbit_dimension(pair(J, Sym2x2())) == 7);
}

TEST_CASE("frame vectors are derivatives of the action") {
    std::mt19937_64 rng(31);
    std::normal_distribution<double> n;
    Complex2x2 A, Bf;
    for (int e = 0; e < 4; ++e) {
        A(e / 2, e % 2) = cplx(n(rng), n(rng));
        Bf(e / 2, e % 2) = cplx(n(rng), n(rng));
    }
    const MatrixPair p(A, Sym2x2::symmetrized(Bf));
    const TangentFrame f = tangent_frame(p);
    const double h = 1e-6;
    auto diff = [&](const GroupElement& plus, const GroupElement& minus) {
        const MatrixPair a = act_pair(plus, p), b = act_pair(minus, p);
        return Vec14((embed(a.A, a.B) - embed(b.A, b.B)) / (2 * h));
    };
    // c = e^{it}: d/dt (cA, B) = (iA, 0); with the matching P = e^{-it/2} I the B part turns to -iB
    // and the A part stays iA, which is w2
    {
        const GroupElement gp(std::polar(1.0, h), std::polar(1.0, -h / 2) * Complex2x2::Identity());
        const GroupElement gm(std::polar(1.0, -h), std::polar(1.0, h / 2) * Complex2x2::Identity());
        CHECK((diff(gp, gm) - f.w2()).norm() < 1e-4);
    }
    for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k) {
            Complex2x2 E = Complex2x2::Zero();
            E(j, k) = 1.0;
            const Complex2x2 I = Complex2x2::Identity();
            CHECK((diff(GroupElement(1.0, I + h * E), GroupElement(1.0, I - h * E)) - f.v(j + 1, k + 1)).norm() < 1e-4);
            CHECK((diff(GroupElement(1.0, I + kI * h * E), GroupElement(1.0, I - kI * h * E)) - f.u(j + 1, k + 1)).norm() <
                  1e-4);
        }
}

TEST_CASE("dimension is an orbit invariant") {
    std::mt19937_64 rng(32);
    std::uint64_t seed = 0;
    for (const auto& fam : family_table()) {
        const MatrixPair rep = representative(sample_class(fam.key, rng));
        CAPTURE(family_id(fam.key));
        REQUIRE(orbit_dimension(rep) == fam.dim);
        for (int t = 0; t < 100; ++t) REQUIRE(orbit_dimension(act_pair(sample_group(seed++, 1.0), rep)) == fam.dim);
    }
}

TEST_CASE("frame identity for the Jordan-type block") {
    Complex2x2 J;
    J << 0, 1, 1, kI;
    std::mt19937_64 rng(33);
    std::normal_distribution<double> n;
    for (int t = 0; t < 10; ++t) {
        const MatrixPair p(J, Sym2x2(cplx(n(rng), n(rng)), cplx(n(rng), n(rng)), cplx(n(rng), n(rng))));
        const TangentFrame f = tangent_frame(p);
        // v11 + v22 is the direction of P = (1+h) I
        const Vec14 lhs = f.v(2, 2) + f.v(1, 1);
        CHECK((lhs - 2 * f.w1()).norm() < 1e-10);
    }
}

TEST_CASE("rank near the cut is reported") {
    CHECK_THROWS_AS(orbit_dimension(pair(Complex2x2::Identity(), Sym2x2::diag(1.0, 1.0 + 3e-9))), RankUnstable);
    CHECK_THROWS_AS(orbit_dimension(MatrixPair(), 0.0), InvalidArgument);
}
