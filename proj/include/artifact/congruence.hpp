#pragma once

#include <string>

#include "artifact/matcore.hpp"

namespace artifact {

enum class StarTag { Zero, Rank1Semidef, Rank1Nilpotent, Definite, Indefinite, Reciprocal, Unimodular, JordanType };

// param holds tau for Reciprocal and theta for Unimodular; unused otherwise.
struct StarClass {
    StarTag tag = StarTag::Zero;
    double param = 0.0;

    bool has_param() const { return tag == StarTag::Reciprocal || tag == StarTag::Unimodular; }
};

std::string to_string(StarTag t);
StarTag star_tag_from_string(const std::string& s);
bool same_family(const StarClass& a, const StarClass& b);

// Canonical matrix of the family: 0, 1+0, [[0,1],[0,0]], I, 1+(-1),
// [[0,1],[tau,0]], diag(1,e^{i theta}), [[0,1],[1,i]].
Complex2x2 star_representative(const StarClass& cls);

struct StarReduction {
    StarClass cls;
    GroupElement reducer;
    double residual = 0.0;
};

struct TCongReduction {
    int rank = 0;
    Complex2x2 reducer = Complex2x2::Identity();
    double residual = 0.0;
};

// B = W diag(s1, s2) W^T with W unitary and s1 >= s2 >= 0.
struct Takagi {
    Complex2x2 W = Complex2x2::Identity();
    double s1 = 0.0;
    double s2 = 0.0;
};

Takagi takagi(const Sym2x2& B);

// (A^*)^{-1} A; SingularInput when |det A| <= tol.
Complex2x2 cosquare(const Complex2x2& A, double tol = kDefaultTol);

StarReduction classify_star(const Complex2x2& A, double tol = kDefaultTol);
TCongReduction classify_tcong(const Sym2x2& B, double tol = kDefaultTol);

// Throws AmbiguousNearBoundary when tol < q <= 10 tol; otherwise returns q <= tol.
bool below_threshold(double q, double tol, const char* low_name, const char* high_name);

}  // namespace artifact
