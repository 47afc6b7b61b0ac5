#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "artifact/errors.hpp"
#include "artifact/json_io.hpp"
#include "artifact/matcore.hpp"

using namespace artifact;

namespace {

Complex2x2 random_matrix(std::mt19937_64& rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    Complex2x2 M;
    for (int k = 0; k < 4; ++k) M(k / 2, k % 2) = cplx(n(rng), n(rng));
    return M;
}

MatrixPair random_pair(std::mt19937_64& rng) {
    const Complex2x2 B = random_matrix(rng);
    return {random_matrix(rng), Sym2x2::symmetrized(B)};
}

}  // namespace

TEST_CASE("Sym2x2 keeps its off-diagonal entry once") {
    Complex2x2 m;
    m << 1.0, 2.0, 2.0, 3.0;
    const Sym2x2 s = Sym2x2::from_matrix(m);
    CHECK(s(0, 1) == s(1, 0));
    CHECK(s.matrix() == m);
    m(1, 0) = 2.5;
    CHECK_THROWS_AS(Sym2x2::from_matrix(m), InvalidArgument);
    CHECK(Sym2x2::symmetrized(m).b12() == cplx(2.25, 0.0));
}

TEST_CASE("group element invariants are enforced") {
    CHECK_THROWS_AS(GroupElement(cplx(2.0, 0.0), Complex2x2::Identity()), InvalidArgument);
    CHECK_THROWS_AS(GroupElement(1.0, Complex2x2::Zero()), InvalidArgument);
    CHECK_NOTHROW(GroupElement(std::polar(1.0, 0.3), Complex2x2::Identity()));
}

TEST_CASE("identity action and diagonal conjugation") {
    std::mt19937_64 rng(1);
    const MatrixPair p = random_pair(rng);
    CHECK(pair_distance(act_pair(GroupElement::identity(), p), p) == 0.0);

    const double s = 0.1;
    Complex2x2 P = Complex2x2::Identity();
    P(1, 1) = s;
    const cplx lam = std::polar(1.0, std::numbers::pi / 4);
    Complex2x2 A = Complex2x2::Zero();
    A(0, 0) = 1.0;
    A(1, 1) = lam;
    const MatrixPair out = act_pair(GroupElement(1.0, P), MatrixPair(A, Sym2x2()));
    CHECK(std::abs(out.A(0, 0) - 1.0) < 1e-15);
    CHECK(std::abs(out.A(1, 1) - lam * s * s) < 1e-15);
    CHECK(max_norm(out.B) == 0.0);
}

TEST_CASE("max norm") {
    CHECK(max_norm(Complex2x2(Complex2x2::Zero())) == 0.0);
    Complex2x2 M;
    M << 3.0, cplx(0, 4), 0.0, -5.0;
    CHECK(max_norm(M) == doctest::Approx(5.0));
    std::mt19937_64 rng(2);
    for (int k = 0; k < 1000; ++k) {
        const Complex2x2 X = random_matrix(rng), Y = random_matrix(rng);
        CHECK(max_norm(Complex2x2(X * Y)) <= 2 * max_norm(X) * max_norm(Y) + 1e-12);
    }
}

TEST_CASE("pair distance") {
    std::mt19937_64 rng(3);
    const MatrixPair p = random_pair(rng), q = random_pair(rng), r = random_pair(rng);
    CHECK(pair_distance(p, p) == 0.0);
    CHECK(pair_distance(p, q) == pair_distance(q, p));
    CHECK(pair_distance(p, r) <= pair_distance(p, q) + pair_distance(q, r) + 1e-15);
    CHECK(pair_distance(MatrixPair(Complex2x2::Identity(), Sym2x2()), MatrixPair()) == 1.0);
}

TEST_CASE("composition is a left action") {
    std::mt19937_64 rng(4);
    for (int k = 0; k < 1000; ++k) {
        const GroupElement g = sample_group(2 * k, 1.0), h = sample_group(2 * k + 1, 1.0);
        const MatrixPair p = random_pair(rng);
        const MatrixPair lhs = act_pair(g * h, p), rhs = act_pair(g, act_pair(h, p));
        const double scale = std::max(1.0, std::max(max_norm(lhs.A), max_norm(lhs.B)));
        REQUIRE(pair_distance(lhs, rhs) <= 1e-10 * scale);
    }
}

TEST_CASE("determinants transform as |det P|^2 and (det P)^2") {
    std::mt19937_64 rng(5);
    for (int k = 0; k < 200; ++k) {
        const GroupElement g = sample_group(100 + k, 1.0);
        const MatrixPair p = random_pair(rng);
        const MatrixPair q = act_pair(g, p);
        const cplx dP = g.P().determinant();
        CHECK(std::abs(std::abs(q.A.determinant()) - std::norm(dP) * std::abs(p.A.determinant())) <=
              1e-10 * std::max(1.0, std::abs(q.A.determinant())));
        CHECK(std::abs(q.B.det() - dP * dP * p.B.det()) <= 1e-10 * std::max(1.0, std::abs(q.B.det())));
        CHECK(q.B(0, 1) == q.B(1, 0));
    }
    const GroupElement g = sample_group(7, 1.0);
    const MatrixPair q = act_pair(g, MatrixPair(Complex2x2::Identity(), Sym2x2::diag(1, 1)));
    const cplx dP = g.P().determinant();
    CHECK(std::abs(q.A.determinant() - g.c() * g.c() * std::norm(dP)) < 1e-10);
}

TEST_CASE("sample_group is reproducible and valid") {
    const GroupElement a = sample_group(42, 1.0), b = sample_group(42, 1.0);
    CHECK(a.c() == b.c());
    CHECK(a.P() == b.P());
    for (std::uint64_t s = 0; s < 10000; ++s) {
        const GroupElement g = sample_group(s, 1.0);
        REQUIRE(std::abs(std::abs(g.c()) - 1.0) <= 1e-12);
        REQUIRE(std::abs(g.P().determinant()) >= 1e-6);
    }
    CHECK_THROWS_AS(sample_group(1, 0.0), InvalidArgument);
}

TEST_CASE("json encoding round trips") {
    std::mt19937_64 rng(6);
    const MatrixPair p = random_pair(rng);
    const MatrixPair q = pair_from_json(json::parse(to_json(p).dump()));
    CHECK(pair_distance(p, q) == 0.0);
    CHECK(to_json(cplx(1.5, -2)) == json::parse("[1.5,-2.0]"));
    CHECK_THROWS_AS(pair_from_json(json::parse(R"({"A": [[1,2],[3]]})")), InvalidArgument);
}
