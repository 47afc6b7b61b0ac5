#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "artifact/errors.hpp"
#include "artifact/pairnf.hpp"
#include "artifact/tangent.hpp"

using namespace artifact;

namespace {
constexpr double kPi = std::numbers::pi;
using S = StarTag;
using F = BForm;
}  // namespace

TEST_CASE("the table has 42 families with valid dimensions") {
    const auto& t = family_table();
    CHECK(t.size() == 42);
    for (const auto& f : t) {
        CHECK(f.dim >= 0);
        CHECK(f.dim <= 14);
        CHECK(family_id(f.key).find('|') != std::string::npos);
    }
    CHECK_THROWS_AS(family_info({S::Zero, F::AntiBD}), BadParams);
}

TEST_CASE("representatives of named classes") {
    const MatrixPair z = representative(make_class({S::Zero, 0}, F::Zero2));
    CHECK(max_norm(z.A) == 0.0);
    CHECK(max_norm(z.B) == 0.0);

    BParams q;
    q.a = 1;
    q.d = 2;
    const MatrixPair d = representative(make_class({S::Definite, 0}, F::DiagAD, q));
    CHECK(d.A == Complex2x2::Identity());
    CHECK(d.B.b11() == 1.0);
    CHECK(d.B.b22() == 2.0);
    CHECK(d.B.b12() == 0.0);

    const MatrixPair j = representative(make_class({S::JordanType, 0}, F::Zero2));
    CHECK(j.A(0, 1) == 1.0);
    CHECK(j.A(1, 0) == 1.0);
    CHECK(j.A(1, 1) == kI);
    CHECK(max_norm(j.B) == 0.0);
}

TEST_CASE("parameter validation") {
    BParams q;
    q.a = 2;
    q.d = 1;
    CHECK_THROWS_AS(make_class({S::Definite, 0}, F::DiagAD, q), BadParams);
    CHECK_THROWS_AS(make_class({S::Reciprocal, 1.0}, F::Zero2), BadParams);
    CHECK_THROWS_AS(make_class({S::Unimodular, 0.0}, F::Zero2), BadParams);
    q.a = 0.5;
    q.d = 1;
    q.d0 = 0.3;
    CHECK_THROWS_AS(make_class({S::Definite, 0}, F::DiagD0D, q), BadParams);
}

TEST_CASE("round trip over all families") {
    std::mt19937_64 rng(21);
    std::uint64_t seed = 1000;
    for (const auto& f : family_table()) {
        CAPTURE(family_id(f.key));
        const int draws = f.params.empty() && f.key.a != S::Reciprocal && f.key.a != S::Unimodular ? 1 : 5;
        for (int k = 0; k < draws; ++k) {
            const OrbitClass cls = sample_class(f.key, rng);
            const MatrixPair rep = representative(cls);
            for (int t = 0; t < 20; ++t) {
                const MatrixPair p = act_pair(sample_group(seed++, 1.0), rep);
                const ClassifiedPair cp = classify_pair(p);
                REQUIRE(cp.cls.key() == cls.key());
                REQUIRE(param_distance(cp.cls, cls) <= 1e-6);
                REQUIRE(cp.residual <= 1e-8);
                REQUIRE(cp.cls.dim == f.dim);
            }
        }
    }
}

TEST_CASE("classify_pair examples") {
    const ClassifiedPair id = classify_pair(MatrixPair(Complex2x2::Identity(), Sym2x2()));
    CHECK(id.cls.key() == FamilyKey{S::Definite, F::Zero2});
    CHECK(id.cls.dim == 5);
    CHECK(pair_distance(act_pair(id.reducer, MatrixPair(Complex2x2::Identity(), Sym2x2())), representative(id.cls)) < 1e-12);

    Complex2x2 U = Complex2x2::Identity();
    U(1, 1) = std::polar(1.0, kPi / 3);
    const ClassifiedPair u = classify_pair(act_pair(sample_group(5, 1.0), MatrixPair(U, Sym2x2())));
    CHECK(u.cls.key() == FamilyKey{S::Unimodular, F::Zero2});
    CHECK(u.cls.a_family.param == doctest::Approx(kPi / 3).epsilon(1e-6));
    CHECK(u.cls.dim == 7);

    const ClassifiedPair r1 = classify_pair(MatrixPair(Complex2x2::Zero(), Sym2x2(1.0, kI, -1.0)));
    CHECK(r1.cls.key() == FamilyKey{S::Zero, F::OneZero});
    CHECK(r1.cls.dim == 4);
}

TEST_CASE("dimension column agrees with the tangent rank") {
    std::mt19937_64 rng(22);
    std::uint64_t seed = 5000;
    for (const auto& f : family_table()) {
        const OrbitClass cls = sample_class(f.key, rng);
        const MatrixPair p = act_pair(sample_group(seed++, 1.0), representative(cls));
        CAPTURE(family_id(f.key));
        CHECK(classify_pair(p).cls.dim == orbit_dimension(p));
    }
}

TEST_CASE("orbit_equal") {
    const MatrixPair rep = representative(make_class({S::Reciprocal, 0.3}, F::OneZeta, [] {
        BParams q;
        q.zeta = cplx(0.2, -0.7);
        return q;
    }()));
    CHECK(orbit_equal(rep, rep));
    for (std::uint64_t s = 0; s < 1000; ++s) REQUIRE(orbit_equal(rep, act_pair(sample_group(s, 1.0), rep)));
    Complex2x2 K = Complex2x2::Identity();
    K(1, 1) = -1.0;
    CHECK_FALSE(orbit_equal(MatrixPair(Complex2x2::Identity(), Sym2x2()), MatrixPair(K, Sym2x2())));
}

TEST_CASE("genericity") {
    CHECK_FALSE(is_generic(make_class({S::Definite, 0}, F::Zero2)));
    BParams q;
    q.a = 1;
    q.r = 2;
    q.phi = kPi / 4;
    q.d = 3;
    CHECK(is_generic(make_class({S::Unimodular, kPi / 2}, F::FullPhase, q)));
    BParams t;
    t.phi = kPi / 4;
    t.b = 1;
    t.zeta = cplx(0, 5);
    CHECK(is_generic(make_class({S::Reciprocal, 0.5}, F::PhaseBZeta, t)));
    std::mt19937_64 rng(24);
    // generic means the family fills an open set of the 14 real dimensions
    for (const auto& f : family_table()) {
        size_t real_params = f.params.size();
        for (const auto& name : f.params) real_params += name == "zeta";
        CHECK((f.dim + static_cast<int>(real_params) == 14) == is_generic(sample_class(f.key, rng)));
    }
}

TEST_CASE("class JSON is stable") {
    BParams q;
    q.a = 0.5;
    q.d = 2;
    const OrbitClass c = make_class({S::Indefinite, 0}, F::DiagAD, q);
    const json j = to_json(c);
    CHECK(j.dump() == R"({"a_family":{"tag":"Indefinite"},"b_form":{"a":0.5,"d":2.0,"tag":"DiagAD"},"dim":9})");
    const OrbitClass back = class_from_json(j);
    CHECK(back.key() == c.key());
    CHECK(param_distance(back, c) == 0.0);
    std::mt19937_64 rng(23);
    for (const auto& f : family_table()) {
        const OrbitClass s = sample_class(f.key, rng);
        const OrbitClass r = class_from_json(json::parse(to_json(s).dump()));
        CHECK(r.key() == s.key());
        CHECK(param_distance(r, s) <= 1e-15);
    }
}
