#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "artifact/pairnf.hpp"

namespace artifact {

// A curve s -> (c(s), P(s)) whose action on representative(dst) tends to representative(src).
struct WitnessFamily {
    std::string id;
    OrbitClass src;
    OrbitClass dst;
    std::function<GroupElement(double)> curve;
    std::string citation;  // the closed form of the curve
};

// Built once; entries are listed in a fixed order.
const std::vector<WitnessFamily>& witness_catalog();
const WitnessFamily& find_witness(const std::string& id);  // InvalidArgument when absent

struct ConvergenceReport {
    std::vector<double> s_values;
    std::vector<double> residuals;
    bool monotone = false;      // strictly decreasing along the sweep
    double final_residual = 0.0;
    double slope = 0.0;         // least-squares slope of log residual against log s
    bool passed = false;        // monotone and final residual <= tol
};

inline const std::vector<double> kDefaultSweep = {1e-1, 1e-2, 1e-3, 1e-4};

// DivergenceDetected when the last residual is not below the first.
ConvergenceReport verify_witness(const WitnessFamily& w, const std::vector<double>& s_values = kDefaultSweep,
                                 double tol = 1e-6);

json to_json(const ConvergenceReport& r);

struct PerturbReport {
    OrbitClass source;
    double eps = 0.0;
    int samples = 0;
    std::map<std::string, int> histogram;  // reached family id -> count
    // reached classes with pair_path false, as class JSON
    std::vector<json> violations;
    // reached families with no family-level edge from the source family
    std::map<std::string, int> family_violations;
    int unknown = 0;     // UnknownEdge outcomes
    int unresolved = 0;  // classification errors
};

json to_json(const PerturbReport& r);

// Uniform perturbations in the eps max-norm ball (F symmetrized), classified in parallel.
// Per-sample seeds derive from seed and the sample index, so the report is deterministic.
PerturbReport perturb_experiment(const OrbitClass& cls, double eps, int n, std::uint64_t seed, int threads = 0);

}  // namespace artifact
