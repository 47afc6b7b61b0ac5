#include "artifact/closure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <set>
#include <sstream>

#include "artifact/bounds.hpp"
#include "artifact/errors.hpp"
#include "artifact/maxf.hpp"

namespace artifact {
namespace {

using S = StarTag;
using F = BForm;

constexpr double kParamTol = 1e-9;
constexpr double kPTol = 1e-12;

ParamTerm src(const std::string& n) { return {ParamTerm::Side::Src, n, 0.0}; }
ParamTerm dst(const std::string& n) { return {ParamTerm::Side::Dst, n, 0.0}; }
ParamTerm constant(double v) { return {ParamTerm::Side::Const, "", v}; }

EdgeCondition always() { return {ConditionKind::Always, {}}; }
EdgeCondition never() { return {ConditionKind::Never, {}}; }
EdgeCondition param_eq(std::vector<ParamConstraint> eqs) { return {ConditionKind::ParamEq, std::move(eqs)}; }
EdgeCondition interval() { return {ConditionKind::Interval, {}}; }
EdgeCondition max_bound() { return {ConditionKind::MaxBound, {}}; }

std::string term_text(const ParamTerm& t) {
    switch (t.side) {
        case ParamTerm::Side::Src: return t.name + "'";
        case ParamTerm::Side::Dst: return t.name;
        case ParamTerm::Side::Const: {
            std::ostringstream os;
            os << t.value;
            return os.str();
        }
    }
    return "";
}

double term_value(const ParamTerm& t, const OrbitClass& s, const OrbitClass& d) {
    switch (t.side) {
        case ParamTerm::Side::Src: return param_value(s, t.name);
        case ParamTerm::Side::Dst: return param_value(d, t.name);
        case ParamTerm::Side::Const: return t.value;
    }
    return 0.0;
}

bool is_special_source(FamilyKey k) {
    return k == FamilyKey{S::Zero, F::Zero2} || k == FamilyKey{S::Rank1Semidef, F::Zero2} ||
           k == FamilyKey{S::Rank1Semidef, F::AZero} || k == FamilyKey{S::Zero, F::OneZero} ||
           k == FamilyKey{S::Zero, F::Identity};
}

// Jordan-block targets carrying the off-table parameters beta, delta.
bool jordan_extended(const OrbitClass& c) {
    if (c.a_family.tag != S::JordanType) return false;
    return (c.b_form == F::AZeta && c.params.beta != 0.0) || (c.b_form == F::AntiDiag && c.params.delta != 0.0);
}

bool theta_family_target(FamilyKey k) {
    if (k.b == F::Zero2) return false;
    return k.a == S::Unimodular || (k.a == S::Definite && (k.b == F::DiagAD || k.b == F::DiagD0D));
}

// ã range for the Interval edges out of (1+0, ã+0).
std::pair<double, double> interval_for(const OrbitClass& d) {
    if (d.a_family.tag == S::Reciprocal && d.b_form == F::AntiDiag) {
        const double tau = d.a_family.param, b = d.params.b;
        return {2.0 * b / (1.0 + tau), 2.0 * b / (1.0 - tau)};
    }
    if (d.a_family.tag == S::JordanType && d.b_form == F::ZeroD)
        return {0.0, d.params.d};  // |u|^2 <= 1 in c P^*AP caps a~ at d
    throw InvalidArgument("no interval condition for " + family_id(d.key()));
}

double bound_for(const OrbitClass& d) {
    const BParams& q = d.params;
    if (d.a_family.tag == S::Definite) {
        const double a = d.b_form == F::DiagD0D ? q.d0 : q.a;
        return max_f(a, 0.0, q.d, 0.0);
    }
    const double theta = d.a_family.param;
    switch (d.b_form) {
        // rotate B12 to the real axis with diag(1, e^{-i phi}), which fixes diag(1, e^{i theta})
        case F::FullPhase: return max_f(q.a, q.r, std::polar(q.d, -2.0 * q.phi), theta);
        case F::AntiBD: return max_f(0.0, q.b, q.d, theta);
        case F::ABZero: return max_f(q.a, q.b, 0.0, theta);
        case F::ZeroD: return max_f(0.0, 0.0, q.d, theta);
        case F::AntiDiag: return max_f(0.0, q.b, 0.0, theta);
        case F::AZero: return max_f(q.a, 0.0, 0.0, theta);
        default: break;
    }
    throw InvalidArgument("no max bound for " + family_id(d.key()));
}

void add(ClosureGraph& g, FamilyKey s, FamilyKey d, EdgeCondition c) { g.edges[{s, d}] = std::move(c); }

ClosureGraph build_graph() {
    ClosureGraph g;
    g.vertices = family_table();
    const FamilyKey zero2{S::Zero, F::Zero2}, semi0{S::Rank1Semidef, F::Zero2}, semiA{S::Rank1Semidef, F::AZero};
    const FamilyKey swapB{S::Rank1Semidef, F::Swap};

    // (0,0) reaches every orbit.
    for (const auto& f : g.vertices)
        if (!(f.key == zero2)) add(g, zero2, f.key, always());

    // (1+0, 0) reaches everything but ([[0,1],[tau,0]], antidiagonal) and A = 0.
    // (1+0, swap) is included: P = [[1,0],[0,s]] already gets there.
    for (const auto& f : g.vertices) {
        const FamilyKey k = f.key;
        if (k == semi0 || k.a == S::Zero || k == FamilyKey{S::Reciprocal, F::AntiDiag}) continue;
        add(g, semi0, k, always());
    }

    // (1+0, ã+0), ã > 0: only targets of higher dimension with B != 0 are meant.
    for (const auto& f : g.vertices) {
        const FamilyKey k = f.key;
        if (k.a == S::Zero || k.b == F::Zero2 || f.dim <= family_info(semiA).dim) continue;
        if (k == FamilyKey{S::Reciprocal, F::AntiDiag} || k == FamilyKey{S::JordanType, F::ZeroD})
            add(g, semiA, k, interval());
        else if (theta_family_target(k))
            add(g, semiA, k, max_bound());
        else
            add(g, semiA, k, always());
    }

    // (0, 1+0)
    const FamilyKey zeroOne{S::Zero, F::OneZero};
    const std::vector<FamilyKey> from_zero_one = {
        {S::Indefinite, F::DiagAD},     {S::Indefinite, F::DiagD0D},     {S::Indefinite, F::AntiDiag},
        {S::Indefinite, F::OneDExpTheta}, {S::Indefinite, F::AntiBOne},  {S::Indefinite, F::OneZero},
        {S::JordanType, F::AZeta},      {S::JordanType, F::AntiDiag},    {S::Reciprocal, F::PhaseBZeta},
        {S::Reciprocal, F::AntiBPhase}, {S::Reciprocal, F::OneZeta},     {S::Reciprocal, F::ZeroOne},
        {S::Rank1Nilpotent, F::AOne},   {S::Rank1Nilpotent, F::ZetaBOne}, {S::Rank1Nilpotent, F::OneBZero},
        {S::Rank1Nilpotent, F::ZeroOne}, {S::Rank1Nilpotent, F::OneZero}, {S::Rank1Semidef, F::AOne},
        {S::Rank1Semidef, F::ZeroOne},  {S::Rank1Semidef, F::Swap},      {S::Zero, F::Identity},
    };
    for (const auto& k : from_zero_one) add(g, zeroOne, k, always());

    // (0, I) only reaches (1+0, swap).
    add(g, {S::Zero, F::Identity}, swapB, always());

    // Arrows of the two diagrams.
    const FamilyKey tauAnti{S::Reciprocal, F::AntiDiag}, nilAnti{S::Rank1Nilpotent, F::AntiDiag};
    const ParamConstraint same_tau{dst("tau"), src("tau")};
    const ParamConstraint zeta_re0{dst("zeta_re"), constant(0.0)};
    const ParamConstraint zeta_im0{dst("zeta_im"), constant(0.0)};
    add(g, tauAnti, {S::Reciprocal, F::PhaseBZeta}, param_eq({same_tau, {dst("b"), src("b")}, zeta_re0, zeta_im0}));
    add(g, tauAnti, {S::Reciprocal, F::AntiBPhase}, param_eq({same_tau, {dst("b"), src("b")}}));
    add(g, nilAnti, {S::Rank1Nilpotent, F::OneBZero}, param_eq({{dst("b"), src("b")}}));
    add(g, nilAnti, {S::Rank1Nilpotent, F::ZetaBOne}, param_eq({{dst("b"), src("b")}, zeta_re0, zeta_im0}));
    add(g, {S::Reciprocal, F::Zero2}, {S::Reciprocal, F::OneZeta}, param_eq({same_tau, zeta_re0, zeta_im0}));
    add(g, {S::Reciprocal, F::Zero2}, {S::Reciprocal, F::ZeroOne}, param_eq({same_tau}));
    add(g, {S::Rank1Nilpotent, F::Zero2}, {S::Rank1Nilpotent, F::OneZero}, always());
    add(g, {S::Rank1Nilpotent, F::Zero2}, {S::Rank1Nilpotent, F::ZeroOne}, always());
    add(g, {S::Indefinite, F::Zero2}, {S::JordanType, F::Zero2}, always());
    add(g, {S::Indefinite, F::Zero2}, {S::JordanType, F::ZeroD}, always());
    add(g, {S::Indefinite, F::Zero2}, {S::Indefinite, F::OneZero}, always());
    add(g, {S::Indefinite, F::DiagD0D}, {S::JordanType, F::AntiDiag},
        param_eq({{src("d0"), src("d")}, {dst("b"), src("d")}, {dst("delta"), constant(0.0)}}));
    add(g, {S::Indefinite, F::DiagD0D}, {S::Indefinite, F::AntiBOne},
        param_eq({{src("d"), constant(1.0)}, {src("d0"), constant(1.0)}, {dst("b"), constant(1.0)}}));
    return g;
}

bool same_params(const OrbitClass& x, const OrbitClass& y) {
    if (!(x.key() == y.key())) return false;
    if (x.a_family.has_param() && std::abs(x.a_family.param - y.a_family.param) > kParamTol) return false;
    return param_distance(x, y) <= kParamTol;
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

std::string star_id(StarTag t) { return to_string(t); }

}  // namespace

std::string to_string(ConditionKind k) {
    switch (k) {
        case ConditionKind::Always: return "Always";
        case ConditionKind::Never: return "Never";
        case ConditionKind::ParamEq: return "ParamEq";
        case ConditionKind::Interval: return "Interval";
        case ConditionKind::MaxBound: return "MaxBound";
    }
    return "?";
}

std::string to_string(PathStatus s) {
    switch (s) {
        case PathStatus::True: return "true";
        case PathStatus::False: return "false";
        case PathStatus::Unknown: return "unknown";
    }
    return "?";
}

std::string EdgeCondition::text() const {
    switch (kind) {
        case ConditionKind::Always: return "always";
        case ConditionKind::Never: return "never";
        case ConditionKind::Interval: return "a~ in interval";
        case ConditionKind::MaxBound: return "a~ <= M(a,b,d,theta)";
        case ConditionKind::ParamEq: {
            std::string out;
            for (const auto& c : equalities) {
                if (!out.empty()) out += ", ";
                out += term_text(c.lhs) + " = " + term_text(c.rhs);
            }
            return out;
        }
    }
    return "";
}

bool psi2_path(int rank_src, int rank_dst) {
    if (rank_src < 0 || rank_src > 2 || rank_dst < 0 || rank_dst > 2) throw InvalidArgument("rank must be 0, 1 or 2");
    return rank_src <= rank_dst;
}

bool psi1_path(const StarClass& s, const StarClass& d) {
    if (s.tag == d.tag) return !s.has_param() || std::abs(s.param - d.param) <= kParamTol;
    switch (s.tag) {
        case S::Zero: return true;
        case S::Rank1Semidef: return d.tag != S::Zero;
        case S::Indefinite: return d.tag == S::JordanType;
        default: return false;
    }
}

int b_rank(const OrbitClass& cls) {
    const Complex2x2 B = b_representative(cls).matrix();
    const Eigen::Vector2d s = Eigen::JacobiSVD<Complex2x2>(B).singularValues();
    const double cut = 1e-12 * std::max(1.0, s[0]);
    return (s[0] > cut ? 1 : 0) + (s[1] > cut ? 1 : 0);
}

bool evaluate_condition(const EdgeCondition& cond, const OrbitClass& s, const OrbitClass& d) {
    switch (cond.kind) {
        case ConditionKind::Always: return true;
        case ConditionKind::Never: return false;
        case ConditionKind::ParamEq:
            for (const auto& c : cond.equalities) {
                const double l = term_value(c.lhs, s, d), r = term_value(c.rhs, s, d);
                if (std::abs(l - r) > kParamTol * std::max(1.0, std::abs(r))) return false;
            }
            return true;
        case ConditionKind::Interval: {
            const auto [lo, hi] = interval_for(d);
            const double at = s.params.a;
            return at >= lo * (1 - kParamTol) && at <= hi * (1 + kParamTol);
        }
        case ConditionKind::MaxBound: return s.params.a <= bound_for(d) * (1 + kParamTol);
    }
    return false;
}

const ClosureGraph& pair_graph() {
    static const ClosureGraph g = build_graph();
    return g;
}

std::vector<DeclaredEdge> declared_edges() {
    std::vector<DeclaredEdge> out;
    // family-table order, for deterministic output
    const auto& g = pair_graph();
    for (const auto& fs : g.vertices)
        for (const auto& fd : g.vertices) {
            auto it = g.edges.find({fs.key, fd.key});
            if (it != g.edges.end()) out.push_back({fs.key, fd.key, it->second});
        }
    return out;
}

EdgeCondition family_condition(FamilyKey s, FamilyKey d) {
    family_info(s);
    family_info(d);
    if (s == d) return always();
    const auto& g = pair_graph();
    auto it = g.edges.find({s, d});
    return it == g.edges.end() ? never() : it->second;
}

PathAnswer evaluate_path(const OrbitClass& s, const OrbitClass& d) {
    validate_class(s);
    validate_class(d);
    PathAnswer ans;
    ans.condition = never();
    auto no = [&](std::string why) {
        ans.status = PathStatus::False;
        ans.reason = std::move(why);
        return ans;
    };
    if (same_params(s, d)) {
        ans.status = PathStatus::True;
        ans.condition = always();
        ans.reason = "trivial path";
        return ans;
    }
    if (!psi1_path(s.a_family, d.a_family)) return no("no path between the A parts");
    const int rs = b_rank(s), rd = b_rank(d);
    if (!psi2_path(rs, rd)) return no("B rank drops from " + std::to_string(rs) + " to " + std::to_string(rd));
    const MatrixPair ps = representative(s), pd = representative(d);
    const double p = det_invariant_p(ps, pd);
    const double scale = std::max({1.0, std::abs(ps.A.determinant() * pd.B.det()), std::abs(ps.B.det() * pd.A.determinant())});
    if (std::abs(p) > kPTol * scale) return no("determinant invariant p = " + fmt(p));
    if (d.dim <= s.dim)
        return no("dimension does not increase (" + std::to_string(s.dim) + " -> " + std::to_string(d.dim) + ")");

    const auto& g = pair_graph();
    auto it = g.edges.find({s.key(), d.key()});
    if (it != g.edges.end()) {
        ans.condition = it->second;
        std::string detail = it->second.text();
        if (it->second.kind == ConditionKind::Interval) {
            const auto [lo, hi] = interval_for(d);
            detail = "a~ = " + fmt(s.params.a) + " in [" + fmt(lo) + ", " + fmt(hi) + "]";
        } else if (it->second.kind == ConditionKind::MaxBound) {
            detail = "a~ = " + fmt(s.params.a) + " <= M = " + fmt(bound_for(d));
        }
        if (evaluate_condition(it->second, s, d)) {
            ans.status = PathStatus::True;
            ans.reason = "declared edge: " + detail;
            return ans;
        }
        ans.reason = "declared edge condition fails: " + detail;
    }
    if (!is_special_source(s.key()) && jordan_extended(d)) {
        ans.status = PathStatus::Unknown;
        ans.reason = "target carries beta/delta off the tabulated Jordan rows; not determined";
        return ans;
    }
    ans.status = PathStatus::False;
    if (ans.reason.empty()) ans.reason = "no declared edge";
    return ans;
}

bool pair_path(const OrbitClass& s, const OrbitClass& d) {
    const PathAnswer a = evaluate_path(s, d);
    if (a.status == PathStatus::Unknown)
        throw UnknownEdge(family_id(s.key()) + " -> " + family_id(d.key()) + ": " + a.reason);
    return a.status == PathStatus::True;
}

namespace {

void apply_constraints(const EdgeCondition& cond, OrbitClass& s, OrbitClass& d) {
    for (const auto& c : cond.equalities) {
        const double v = term_value(c.rhs, s, d);
        if (c.lhs.side == ParamTerm::Side::Src) set_param(s, c.lhs.name, v);
        else if (c.lhs.side == ParamTerm::Side::Dst) set_param(d, c.lhs.name, v);
    }
}

// Instance pair meeting the edge condition; false when the draw cannot satisfy it.
bool sample_edge(const DeclaredEdge& e, std::mt19937_64& rng, OrbitClass& s, OrbitClass& d) {
    s = sample_class(e.src, rng);
    d = sample_class(e.dst, rng);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    switch (e.cond.kind) {
        case ConditionKind::Always:
        case ConditionKind::Never: break;
        case ConditionKind::ParamEq: apply_constraints(e.cond, s, d); break;
        case ConditionKind::Interval: {
            auto [lo, hi] = interval_for(d);
            if (!std::isfinite(hi)) hi = lo + 2.0;
            s.params.a = lo + (hi - lo) * u(rng);
            break;
        }
        case ConditionKind::MaxBound: {
            const double m = bound_for(d);
            if (!(m > 0)) return false;
            s.params.a = m * (0.05 + 0.95 * u(rng));
            break;
        }
    }
    validate_class(s);
    validate_class(d);
    return true;
}

bool parameter_free(FamilyKey k) {
    return family_info(k).params.empty();
}

}  // namespace

ValidationReport validate_edges(const std::vector<DeclaredEdge>& edges, int samples_per_edge, std::uint64_t seed) {
    ValidationReport rep;
    std::mt19937_64 rng(seed);
    for (const auto& e : edges) {
        if (e.cond.kind == ConditionKind::Never) continue;
        ++rep.edges_checked;
        const bool exact = parameter_free(e.src) && parameter_free(e.dst);
        const int n = exact ? 1 : samples_per_edge;
        std::set<std::string> seen;
        auto flag = [&](const std::string& check, const std::string& detail) {
            if (seen.insert(check).second) rep.violations.push_back({e.src, e.dst, check, detail});
        };
        for (int k = 0; k < n; ++k) {
            OrbitClass s, d;
            if (!sample_edge(e, rng, s, d)) continue;
            ++rep.samples_checked;
            if (!psi1_path(s.a_family, d.a_family)) flag("psi1", "A part has no path");
            if (!psi2_path(b_rank(s), b_rank(d))) flag("rank", "B rank drops");
            const double p = det_invariant_p(representative(s), representative(d));
            // parameter-free pairs must give p = 0 exactly
            if (exact ? p != 0.0 : std::abs(p) > kPTol) flag("p", "p = " + fmt(p));
            if (!(s.key() == d.key()) && d.dim <= s.dim)
                flag("dim", std::to_string(s.dim) + " -> " + std::to_string(d.dim));
        }
    }
    return rep;
}

ValidationReport validate_graph(int samples_per_edge, std::uint64_t seed) {
    return validate_edges(declared_edges(), samples_per_edge, seed);
}

std::string export_graph(GraphKind which, GraphFormat format) {
    struct Node {
        std::string id;
        int dim;
    };
    struct Edge {
        std::string from, to, label;
    };
    std::vector<Node> nodes;
    std::vector<Edge> edges;
    std::string name;
    switch (which) {
        case GraphKind::Psi2:
            name = "psi2";
            // real dimensions of the rank strata of symmetric 2x2 matrices
            nodes = {{"0_2", 0}, {"1+0", 4}, {"I_2", 6}};
            edges = {{"0_2", "1+0", "always"}, {"1+0", "I_2", "always"}};
            break;
        case GraphKind::Psi1: {
            name = "psi1";
            const StarTag order[] = {S::Zero, S::Rank1Semidef, S::Rank1Nilpotent, S::Definite,
                                     S::Indefinite, S::Reciprocal, S::Unimodular, S::JordanType};
            for (StarTag t : order) nodes.push_back({star_id(t), family_info({t, F::Zero2}).dim});
            edges.push_back({star_id(S::Zero), star_id(S::Rank1Semidef), "always"});
            for (StarTag t : {S::Rank1Nilpotent, S::Definite, S::Indefinite, S::Reciprocal, S::Unimodular, S::JordanType})
                edges.push_back({star_id(S::Rank1Semidef), star_id(t), "always"});
            edges.push_back({star_id(S::Indefinite), star_id(S::JordanType), "always"});
            break;
        }
        case GraphKind::Pair:
            name = "pair";
            for (const auto& f : family_table()) nodes.push_back({family_id(f.key), f.dim});
            for (const auto& e : declared_edges()) {
                std::string label = e.cond.text();
                edges.push_back({family_id(e.src), family_id(e.dst), label});
            }
            break;
    }
    if (format == GraphFormat::Json) {
        json j;
        j["schema_version"] = 1;
        j["graph"] = name;
        j["nodes"] = json::array();
        for (const auto& n : nodes) j["nodes"].push_back({{"id", n.id}, {"dim", n.dim}});
        j["edges"] = json::array();
        for (const auto& e : edges) j["edges"].push_back({{"from", e.from}, {"to", e.to}, {"condition", e.label}});
        return j.dump(2) + "\n";
    }
    std::ostringstream os;
    os << "digraph " << name << " {\n";
    for (const auto& n : nodes) os << "  \"" << n.id << "\" [label=\"" << n.id << "\\ndim=" << n.dim << "\"];\n";
    for (const auto& e : edges) os << "  \"" << e.from << "\" -> \"" << e.to << "\" [label=\"" << e.label << "\"];\n";
    os << "}\n";
    return os.str();
}

}  // namespace artifact
