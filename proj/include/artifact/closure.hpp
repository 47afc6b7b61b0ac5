#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "artifact/pairnf.hpp"

namespace artifact {

enum class ConditionKind { Always, Never, ParamEq, Interval, MaxBound };
std::string to_string(ConditionKind k);

// One side of an equality constraint: a parameter of either endpoint, or a constant.
struct ParamTerm {
    enum class Side { Src, Dst, Const } side = Side::Const;
    std::string name;  // names as in param_value
    double value = 0.0;
};

// lhs = rhs; when sampling, lhs is assigned from rhs.
struct ParamConstraint {
    ParamTerm lhs;
    ParamTerm rhs;
};

// Interval: the source a~ lies in a target-dependent interval
//   ([2b/(1+tau), 2b/(1-tau)] over [[0,1],[tau,0]], [0, d] for 0+d over the Jordan block).
// MaxBound: a~ <= M with M = max_f of the target's B entries.
struct EdgeCondition {
    ConditionKind kind = ConditionKind::Never;
    std::vector<ParamConstraint> equalities;
    std::string text() const;
};

enum class PathStatus { True, False, Unknown };
std::string to_string(PathStatus s);

struct PathAnswer {
    PathStatus status = PathStatus::False;
    EdgeCondition condition;  // the declared condition consulted, Never if none
    std::string reason;       // which rule decided, with evaluated numbers
};

bool psi2_path(int rank_src, int rank_dst);  // InvalidArgument outside {0,1,2}
bool psi1_path(const StarClass& src, const StarClass& dst);

// Rank of the B part of the representative.
int b_rank(const OrbitClass& cls);

// Necessary conditions first, then the declared edges. Never throws UnknownEdge.
PathAnswer evaluate_path(const OrbitClass& src, const OrbitClass& dst);
// Boolean form; UnknownEdge when the answer is undetermined.
bool pair_path(const OrbitClass& src, const OrbitClass& dst);

bool evaluate_condition(const EdgeCondition& cond, const OrbitClass& src, const OrbitClass& dst);

struct DeclaredEdge {
    FamilyKey src;
    FamilyKey dst;
    EdgeCondition cond;
};

struct ClosureGraph {
    std::vector<FamilyInfo> vertices;
    std::map<std::pair<FamilyKey, FamilyKey>, EdgeCondition> edges;
};

// Built once on first use.
const ClosureGraph& pair_graph();
std::vector<DeclaredEdge> declared_edges();
// Family-level query: Always on the diagonal, the declared condition, or Never.
EdgeCondition family_condition(FamilyKey src, FamilyKey dst);

enum class GraphKind { Psi1, Psi2, Pair };
enum class GraphFormat { Dot, Json };
std::string export_graph(GraphKind which, GraphFormat format);

struct GraphViolation {
    FamilyKey src;
    FamilyKey dst;
    std::string check;  // psi1, rank, p, dim
    std::string detail;
};

struct ValidationReport {
    int edges_checked = 0;
    int samples_checked = 0;
    std::vector<GraphViolation> violations;
};

// Samples parameters satisfying each edge's condition and checks the necessary conditions.
ValidationReport validate_edges(const std::vector<DeclaredEdge>& edges, int samples_per_edge, std::uint64_t seed);
ValidationReport validate_graph(int samples_per_edge = 20, std::uint64_t seed = 0);

}  // namespace artifact
