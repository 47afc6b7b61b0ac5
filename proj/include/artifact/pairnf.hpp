#pragma once

#include <random>
#include <string>
#include <vector>

#include "artifact/congruence.hpp"
#include "artifact/json_io.hpp"

namespace artifact {

// Shapes of the B column in the normal-form tables.
enum class BForm {
    Zero2,         // 0
    OneZero,       // 1+0
    Identity,      // I
    DiagAD,        // a+d, a<d
    DiagD0D,       // d0+d, d0 in {0,d}
    AntiDiag,      // [[0,b],[b,delta]]; delta is nonzero only over [[0,1],[1,i]]
    OneDExpTheta,  // 1+d e^{i theta}, over [[0,1],[1,0]]
    AntiBOne,      // [[0,b],[b,1]], over [[0,1],[1,0]]
    AntiBD,        // [[0,b],[b,d]]
    FullPhase,     // [[a, r e^{i phi}],[r e^{i phi}, d]]
    ABZero,        // [[a,b],[b,0]]
    ZeroD,         // 0+d
    AZero,         // a+0
    PhaseBZeta,    // [[e^{i phi}, b],[b, zeta]]
    AntiBPhase,    // [[0,b],[b,e^{i phi}]]
    OneZeta,       // 1+zeta
    ZeroOne,       // 0+1
    AZeta,         // [[a,beta],[beta,zeta]]
    AOne,          // a+1
    ZetaBOne,      // [[zeta,b],[b,1]]
    OneBZero,      // [[1,b],[b,0]]
    Swap,          // [[0,1],[1,0]]
};

std::string to_string(BForm f);
BForm bform_from_string(const std::string& s);

struct BParams {
    double a = 0.0;
    double b = 0.0;
    double d = 0.0;
    double d0 = 0.0;
    double r = 0.0;
    double phi = 0.0;
    double beta = 0.0;
    double delta = 0.0;
    double theta = 0.0;  // argument in 1 + d e^{i theta}
    cplx zeta = 0.0;
};

struct FamilyKey {
    StarTag a = StarTag::Zero;
    BForm b = BForm::Zero2;
    bool operator==(const FamilyKey&) const = default;
    auto operator<=>(const FamilyKey&) const = default;
};

struct OrbitClass {
    StarClass a_family;
    BForm b_form = BForm::Zero2;
    BParams params;
    int dim = 0;

    FamilyKey key() const { return {a_family.tag, b_form}; }
};

struct FamilyInfo {
    FamilyKey key;
    int dim;
    std::vector<std::string> params;  // continuous parameters, A-family parameter first
};

// The 42 families, grouped by A family, each group in descending dimension.
const std::vector<FamilyInfo>& family_table();
const FamilyInfo& family_info(FamilyKey k);  // BadParams for a combination outside the table
std::string family_id(FamilyKey k);           // "<Afamily>|<Bform>"

// Indefinite families whose B form is written against A = [[0,1],[1,0]].
bool uses_swap_frame(FamilyKey k);

// Builds and validates a class; dim is filled from the table. Throws BadParams.
OrbitClass make_class(StarClass a, BForm b, const BParams& params = {});
void validate_class(const OrbitClass& cls);

Complex2x2 a_representative(const OrbitClass& cls);
Sym2x2 b_representative(const OrbitClass& cls);
MatrixPair representative(const OrbitClass& cls);

double param_value(const OrbitClass& cls, const std::string& name);
// Same names as param_value; the class is not revalidated.
void set_param(OrbitClass& cls, const std::string& name, double value);
// Random valid member of a family, for property sweeps.
OrbitClass sample_class(FamilyKey k, std::mt19937_64& rng);
// Largest parameter discrepancy; phi compared modulo pi. Infinity for different families.
double param_distance(const OrbitClass& x, const OrbitClass& y);

struct ClassifiedPair {
    OrbitClass cls;
    GroupElement reducer;
    double residual = 0.0;
};

ClassifiedPair classify_pair(const MatrixPair& p, double tol = kDefaultTol);
bool orbit_equal(const MatrixPair& p, const MatrixPair& q, double tol = kDefaultTol);
bool is_generic(const OrbitClass& cls);

json to_json(const OrbitClass& cls);
OrbitClass class_from_json(const json& j);
json to_json(const ClassifiedPair& cp);

}  // namespace artifact
