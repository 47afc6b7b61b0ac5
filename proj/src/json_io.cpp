#include "artifact/json_io.hpp"

#include "artifact/errors.hpp"

namespace artifact {

json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

json to_json(const Complex2x2& M) {
    json rows = json::array();
    for (int i = 0; i < 2; ++i) rows.push_back(json::array({to_json(M(i, 0)), to_json(M(i, 1))}));
    return rows;
}

json to_json(const Sym2x2& B) { return to_json(B.matrix()); }

json to_json(const MatrixPair& p) { return json{{"A", to_json(p.A)}, {"B", to_json(p.B)}}; }

json to_json(const GroupElement& g) { return json{{"c", to_json(g.c())}, {"P", to_json(g.P())}}; }

cplx complex_from_json(const json& j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw InvalidArgument("expected complex number as [re, im], got " + j.dump());
    return {j[0].get<double>(), j[1].get<double>()};
}

Complex2x2 matrix_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_array() || !j[1].is_array() || j[0].size() != 2 ||
        j[1].size() != 2)
        throw InvalidArgument("expected 2x2 matrix, got " + j.dump());
    Complex2x2 M;
    for (int i = 0; i < 2; ++i)
        for (int k = 0; k < 2; ++k) M(i, k) = complex_from_json(j[i][k]);
    if (!is_finite(M)) throw InvalidArgument("matrix entries must be finite");
    return M;
}

Sym2x2 sym_from_json(const json& j) { return Sym2x2::from_matrix(matrix_from_json(j)); }

MatrixPair pair_from_json(const json& j) {
    if (!j.is_object() || !j.contains("A") || !j.contains("B"))
        throw InvalidArgument("pair must be an object with keys A and B");
    return MatrixPair(matrix_from_json(j.at("A")), sym_from_json(j.at("B")));
}

GroupElement group_from_json(const json& j) {
    if (!j.is_object() || !j.contains("c") || !j.contains("P"))
        throw InvalidArgument("group element must be an object with keys c and P");
    return GroupElement(complex_from_json(j.at("c")), matrix_from_json(j.at("P")));
}

}  // namespace artifact
