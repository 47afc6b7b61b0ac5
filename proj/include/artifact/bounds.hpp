#pragma once

#include <optional>
#include <string>
#include <vector>

#include "artifact/json_io.hpp"
#include "artifact/matcore.hpp"

namespace artifact {

// |det A~ det B| - |det B~ det A| for src = (A~, B~), dst = (A, B).
double det_invariant_p(const MatrixPair& src, const MatrixPair& dst);

enum class BoundRule { NormRule, SingularityRule, DetRatioRule, TcongRule, StarTableRule };
std::string to_string(BoundRule r);

// Perturbations (E, F) of src with max_norm(E) < bound_E and max_norm(F) < bound_F
// never meet the orbit of dst. Infinity marks a component left unconstrained.
struct NonPathCertificate {
    double bound_E = 0.0;
    double bound_F = 0.0;
    BoundRule rule = BoundRule::NormRule;
    // radius of the excluded max-norm ball around src
    double bound() const { return bound_E < bound_F ? bound_E : bound_F; }
};

// Max-norm radius around a nonsingular X free of singular matrices: sigma_min(X) / 2.
double singular_distance_bound(const Complex2x2& X);

json to_json(const NonPathCertificate& c);

// Largest applicable certificate, or empty when no rule applies.
std::optional<NonPathCertificate> nonpath_lower_bound(const MatrixPair& src, const MatrixPair& dst);

struct PhaseEstimate {
    double delta = 0.0;  // arg(det src_A / det dst_A) in (-pi, pi]
    double g_bound = 0.0;
    double r_bound = 0.0;
};

// Largest E_norm accepted by phase_estimate.
double phase_radius(const Complex2x2& src_A);
PhaseEstimate phase_estimate(const Complex2x2& src_A, const Complex2x2& dst_A, double E_norm);

// Rows of the stabilizer-estimate table; the table has no rows numbered 2 or 8.
enum class ResidualRow { C1, C3, C4, C5, C6, C7, C9, C10, C11, C12 };
std::string to_string(ResidualRow r);
ResidualRow residual_row_from_string(const std::string& s);

// Row parameters; each row reads only the ones it needs.
struct RowParams {
    double alpha = 1.0;  // C3, C4, C5, C7, C9, C10, C11
    double beta = 0.0;   // C5, C7
    cplx omega = 0.0;    // C5, C7, C9
    double theta = 0.0;  // C1, C3
    double tau = 0.0;    // C4, C6
    int sigma = 1;       // C9
    int k = 0;           // sign branch (-1)^k in C5, C7, C12
};

// Moduli of the stabilizer equations of a row at (c, P = [[x, y], [u, v]]).
std::vector<double> residual_expressions(ResidualRow row, cplx c, const Complex2x2& P, const RowParams& params);

}  // namespace artifact
