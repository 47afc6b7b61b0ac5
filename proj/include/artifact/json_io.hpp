#pragma once

#include <json.hpp>

#include "artifact/matcore.hpp"

namespace artifact {

using nlohmann::json;

// complex -> [re, im]; matrices -> 2x2 nested arrays; pair -> {"A", "B"}
json to_json(cplx z);
json to_json(const Complex2x2& M);
json to_json(const Sym2x2& B);
json to_json(const MatrixPair& p);
json to_json(const GroupElement& g);

// Parsers throw InvalidArgument on malformed input.
cplx complex_from_json(const json& j);
Complex2x2 matrix_from_json(const json& j);
Sym2x2 sym_from_json(const json& j);
MatrixPair pair_from_json(const json& j);
GroupElement group_from_json(const json& j);

}  // namespace artifact
