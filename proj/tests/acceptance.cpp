// Acceptance run: one PASS/FAIL line per criterion, details indented below it.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "artifact/bounds.hpp"
#include "artifact/closure.hpp"
#include "artifact/errors.hpp"
#include "artifact/maxf.hpp"
#include "artifact/pairnf.hpp"
#include "artifact/tangent.hpp"
#include "artifact/witness.hpp"

using namespace artifact;

namespace {

constexpr double kPi = std::numbers::pi;
using Clock = std::chrono::steady_clock;

struct Outcome {
    bool pass = false;
    std::string summary;
    std::vector<std::string> details;
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

template <class... Args>
std::string fmt(const char* f, Args... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

// Parameter draws per family: fixed theta / tau grids, random values for the rest.
std::vector<OrbitClass> draws(const FamilyInfo& f, std::mt19937_64& rng) {
    const std::vector<double> thetas = {0.3, 1.0, 1.5, 2.5, 3.0};
    const std::vector<double> taus = {0.1, 0.3, 0.5, 0.7, 0.9};
    const bool continuous = !f.params.empty() || f.key.a == StarTag::Reciprocal || f.key.a == StarTag::Unimodular;
    std::vector<OrbitClass> out;
    for (int k = 0; k < (continuous ? 5 : 1); ++k) {
        OrbitClass c = sample_class(f.key, rng);
        if (f.key.a == StarTag::Unimodular) c.a_family.param = thetas[k];
        if (f.key.a == StarTag::Reciprocal) c.a_family.param = taus[k];
        if (f.key.b == BForm::OneDExpTheta) c.params.theta = thetas[k];
        validate_class(c);
        out.push_back(c);
    }
    return out;
}

Outcome criterion1() {
    Outcome o;
    const auto t0 = Clock::now();
    std::mt19937_64 rng(1);
    int checked = 0, bad = 0;
    for (const auto& f : family_table())
        for (const OrbitClass& c : draws(f, rng)) {
            ++checked;
            int d = -1;
            try {
                d = orbit_dimension(representative(c));
            } catch (const Error& e) {
                o.details.push_back(family_id(f.key) + ": " + e.what());
            }
            if (d != f.dim) {
                ++bad;
                o.details.push_back(fmt("%s: rank %d, table %d", family_id(f.key).c_str(), d, f.dim));
            }
        }
    const double t = seconds_since(t0);
    o.pass = bad == 0 && t < 5.0;
    o.summary = fmt("dimension table: %d representatives, %d mismatches, %.2f s", checked, bad, t);
    return o;
}

Outcome criterion2() {
    Outcome o;
    const auto t0 = Clock::now();
    std::mt19937_64 rng(2);
    std::uint64_t seed = 0;
    int runs = 0, fails = 0;
    double worst_param = 0, worst_res = 0;
    for (const auto& f : family_table())
        for (const OrbitClass& c : draws(f, rng)) {
            const MatrixPair rep = representative(c);
            for (int k = 0; k < 100; ++k) {
                ++runs;
                try {
                    const ClassifiedPair cp = classify_pair(act_pair(sample_group(seed++, 1.0), rep));
                    const double pd = cp.cls.key() == c.key() ? param_distance(cp.cls, c) : INFINITY;
                    worst_param = std::max(worst_param, pd);
                    worst_res = std::max(worst_res, cp.residual);
                    if (!(pd <= 1e-6) || !(cp.residual <= 1e-8)) {
                        ++fails;
                        if (o.details.size() < 10)
                            o.details.push_back(fmt("%s: got %s, param gap %.2e, residual %.2e", family_id(c.key()).c_str(),
                                                    family_id(cp.cls.key()).c_str(), pd, cp.residual));
                    }
                } catch (const Error& e) {
                    ++fails;
                    if (o.details.size() < 10) o.details.push_back(family_id(c.key()) + ": " + e.what());
                }
            }
        }
    const double t = seconds_since(t0);
    o.pass = fails == 0 && t < 60.0;
    o.summary = fmt("round trip: %d classifications, %d failures, worst parameter gap %.1e, worst residual %.1e, %.1f s",
                    runs, fails, worst_param, worst_res, t);
    return o;
}

Outcome criterion3() {
    Outcome o;
    const ValidationReport r = validate_graph(20, 0);
    for (const auto& v : r.violations)
        o.details.push_back(family_id(v.src) + " -> " + family_id(v.dst) + ": " + v.check + " " + v.detail);
    o.pass = r.violations.empty();
    o.summary = fmt("closure-graph validator: %d edges, %d samples, %zu violations", r.edges_checked, r.samples_checked,
                    r.violations.size());
    return o;
}

double grid_max(double a, double b, cplx d, double theta, int n = 400) {
    double best = 0;
    for (int i = 0; i < n; ++i) {
        const double psi = 0.5 * kPi * i / (n - 1);
        const double rho = 1.0 / std::sqrt(1.0 + std::sin(2 * psi) * std::cos(theta));
        const double r = std::sqrt(rho * std::cos(psi)), t = std::sqrt(rho * std::sin(psi));
        for (int j = 0; j < n; ++j) best = std::max(best, f_value(a, b, d, r, t, 2 * kPi * j / n));
    }
    return best;
}

Outcome criterion4() {
    Outcome o;
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(0.0, 2.0), half(0.0, kPi / 2), ang(0.0, kPi), ph(0.0, 2 * kPi);
    // The first two anchors hold on theta <= pi/2 only; past it the arc leaves the unit box
    // and the values become |d| / sin(theta) and a / sin(theta).
    double worst_anchor = 0;
    for (int k = 0; k < 50; ++k) {
        const cplx d = std::polar(u(rng) + 0.1, ph(rng));
        worst_anchor = std::max(worst_anchor, std::abs(max_f(0, 0, d, half(rng)) - std::abs(d)));
        const double a = u(rng) + 0.1;
        worst_anchor = std::max(worst_anchor, std::abs(max_f(a, 0, 0.0, half(rng)) - a));
        const double dd = u(rng) + 0.1, aa = std::uniform_real_distribution<double>(0, dd)(rng);
        worst_anchor = std::max(worst_anchor, std::abs(max_f(aa, 0, dd, 0.0) - dd));
    }
    double worst_grid = 0, worst_fine = 0, below_grid = 0;
    int misses = 0;
    for (int k = 0; k < 100; ++k) {
        const double a = u(rng), b = u(rng), th = ang(rng);
        const cplx d = std::polar(u(rng), ph(rng));
        const double m = max_f(a, b, d, th), g = grid_max(a, b, d, th);
        below_grid = std::max(below_grid, g - m);
        worst_grid = std::max(worst_grid, std::abs(m - g));
        if (std::abs(m - g) > 1e-4) {
            ++misses;
            const double fine = grid_max(a, b, d, th, 2000);
            worst_fine = std::max(worst_fine, std::abs(m - fine) / std::max(1.0, m));
            if (o.details.size() < 8)
                o.details.push_back(fmt("a=%.3f b=%.3f |d|=%.3f theta=%.3f: max_f %.6f, 400-grid %.6f, 2000-grid %.6f", a, b,
                                        std::abs(d), th, m, g, fine));
        }
    }
    o.pass = worst_anchor <= 1e-6 && worst_grid <= 1e-4;
    o.summary = fmt("max_f: worst anchor error %.1e, worst 400-grid gap %.1e, %d of 100 inputs outside 1e-4", worst_anchor,
                    worst_grid, misses);
    if (misses > 0)
        o.details.insert(o.details.begin(),
                         fmt("the grid never exceeds max_f (largest excess %.1e); misses shrink on a 2000-grid to a relative "
                             "%.1e, so they come from the grid step",
                             below_grid, worst_fine));
    return o;
}

Outcome criterion5() {
    Outcome o;
    int passed = 0, total = 0;
    for (const auto& w : witness_catalog()) {
        ++total;
        try {
            const ConvergenceReport r = verify_witness(w);
            if (r.passed) {
                ++passed;
            } else {
                o.details.push_back(fmt("%s: final residual %.2e, slope %.2f, monotone %s", w.id.c_str(), r.final_residual,
                                        r.slope, r.monotone ? "yes" : "no"));
            }
        } catch (const Error& e) {
            o.details.push_back(w.id + ": " + e.what());
        }
    }
    o.pass = total >= 18 && passed == total;
    o.summary = fmt("witness convergence: %d of %d entries reach 1e-6 at s = 1e-4", passed, total);
    if (!o.pass)
        o.details.insert(o.details.begin(),
                         "entries with slope 1 converge (see the extended sweep in the unit tests) but only to about 1e-4 "
                         "at s = 1e-4");
    return o;
}

// Does any sampled g put act_pair(g, dst) inside the certified box around src?
int falsify(const MatrixPair& src, const MatrixPair& dst, const NonPathCertificate& c, int n, std::uint64_t seed) {
    int hits = 0;
    for (int k = 0; k < n; ++k) {
        const double spread = std::pow(10.0, -1.0 + 2.0 * (k % 9) / 8.0);
        const MatrixPair q = act_pair(sample_group(seed + k, spread), dst);
        if (max_norm(Complex2x2(q.A - src.A)) < c.bound_E && max_norm(q.B - src.B) < c.bound_F) ++hits;
    }
    return hits;
}

Outcome criterion6() {
    Outcome o;
    const auto t0 = Clock::now();
    std::vector<std::pair<MatrixPair, MatrixPair>> cases;
    cases.push_back({MatrixPair(Complex2x2::Identity(), Sym2x2::diag(1, 1)),
                     MatrixPair(Complex2x2::Identity(), Sym2x2::diag(1, 0))});
    std::mt19937_64 rng(6);
    std::normal_distribution<double> n;
    auto rc = [&] { return cplx(n(rng), n(rng)); };
    while (cases.size() < 21) {
        Complex2x2 A1, A2;
        for (int e = 0; e < 4; ++e) {
            A1(e / 2, e % 2) = rc();
            A2(e / 2, e % 2) = rc();
        }
        const MatrixPair s(A1, Sym2x2(rc(), rc(), rc())), d(A2, Sym2x2(rc(), rc(), rc()));
        const auto c = nonpath_lower_bound(s, d);
        if (c && c->rule == BoundRule::DetRatioRule) cases.push_back({s, d});
    }
    int hits = 0;
    std::uint64_t seed = 0;
    for (const auto& [s, d] : cases) {
        const NonPathCertificate c = *nonpath_lower_bound(s, d);
        const int h = falsify(s, d, c, 100000, seed);
        seed += 100000;
        if (h > 0) o.details.push_back(fmt("%s certificate falsified %d times", to_string(c.rule).c_str(), h));
        hits += h;
    }
    const double t = seconds_since(t0);
    o.pass = hits == 0 && t < 120.0;
    o.summary = fmt("non-path certificates: %zu cases x 1e5 samples, %d falsifications, %.1f s", cases.size(), hits, t);
    return o;
}

Outcome criterion7() {
    Outcome o;
    std::mt19937_64 rng(7);
    std::normal_distribution<double> n;
    std::uniform_real_distribution<double> frac(0.0, 1.0);
    int trials = 0, violations = 0;
    std::uint64_t seed = 0;
    while (trials < 10000) {
        Complex2x2 A, E;
        for (int e = 0; e < 4; ++e) {
            A(e / 2, e % 2) = cplx(n(rng), n(rng));
            E(e / 2, e % 2) = cplx(n(rng), n(rng));
        }
        if (std::abs(A.determinant()) < 1e-2) continue;
        const GroupElement g = sample_group(seed++, 1.0);
        const Complex2x2 target = act_star(g, A);
        // choose E inside the admissible radius of src = target - E
        const double scale = frac(rng) * phase_radius(target) / (2 * max_norm(E));
        const Complex2x2 Es = scale * E;
        const Complex2x2 src = target - Es;
        const double En = max_norm(Es);
        if (En > phase_radius(src)) continue;
        ++trials;
        const PhaseEstimate pe = phase_estimate(src, A, En);
        const cplx half = std::polar(1.0, pe.delta / 2);
        const double gap_c = std::min(std::abs(g.c() - half), std::abs(g.c() + half));
        const double gap_r = std::abs(std::abs(g.P().determinant()) - std::sqrt(std::abs(src.determinant() / A.determinant())));
        if (gap_c > pe.g_bound * (1 + 1e-12) + 1e-15 || gap_r > pe.r_bound * (1 + 1e-12) + 1e-15) ++violations;
    }
    o.pass = violations == 0;
    o.summary = fmt("phase estimate: %d trials, %d violations", trials, violations);
    return o;
}

Outcome criterion8() {
    Outcome o;
    const auto t0 = Clock::now();
    std::mt19937_64 rng(8);
    long total = 0, orbit_viol = 0, family_viol = 0, unknown = 0, unresolved = 0;
    int clean_sources = 0, sources = 0;
    for (const auto& f : family_table()) {
        const OrbitClass src = sample_class(f.key, rng);
        long src_viol = 0, src_fam = 0;
        for (double eps : {1e-3, 1e-5}) {
            const PerturbReport r = perturb_experiment(src, eps, 1000, 80 + sources);
            total += r.samples;
            src_viol += static_cast<long>(r.violations.size());
            for (const auto& [k, v] : r.family_violations) src_fam += v;
            unknown += r.unknown;
            unresolved += r.unresolved;
        }
        ++sources;
        orbit_viol += src_viol;
        family_viol += src_fam;
        if (src_viol == 0) ++clean_sources;
        if (src_viol > 0)
            o.details.push_back(fmt("%s: %ld orbit-level, %ld family-level violations of 2000", family_id(f.key).c_str(),
                                    src_viol, src_fam));
    }
    const double unknown_frac = static_cast<double>(unknown) / total;
    o.pass = orbit_viol == 0 && unknown_frac <= 0.05;
    o.summary = fmt("perturbation lab: %ld samples, %ld orbit-level and %ld family-level violations, %d of %d sources clean, "
                    "unknown %.2f%%, unresolved %ld, %.1f s",
                    total, orbit_viol, family_viol, clean_sources, sources, 100 * unknown_frac, unresolved,
                    seconds_since(t0));
    if (!o.pass)
        o.details.insert(o.details.begin(),
                         "a generic perturbation lands in a family that fills an open set, with parameters that drift with the sample; "
                         "no orbit-level path exists to those, so violations are expected");
    return o;
}

}  // namespace

int main() {
    const std::vector<std::function<Outcome()>> criteria = {criterion1, criterion2, criterion3, criterion4,
                                                            criterion5, criterion6, criterion7, criterion8};
    int failed = 0;
    for (size_t k = 0; k < criteria.size(); ++k) {
        Outcome o;
        try {
            o = criteria[k]();
        } catch (const std::exception& e) {
            o.pass = false;
            o.summary = std::string("aborted: ") + e.what();
        }
        std::printf("%s %zu: %s\n", o.pass ? "PASS" : "FAIL", k + 1, o.summary.c_str());
        const size_t shown = std::min<size_t>(o.details.size(), 15);
        for (size_t d = 0; d < shown; ++d) std::printf("    %s\n", o.details[d].c_str());
        if (o.details.size() > shown) std::printf("    ... %zu more\n", o.details.size() - shown);
        std::fflush(stdout);
        failed += !o.pass;
    }
    return failed == 0 ? 0 : 1;
}
