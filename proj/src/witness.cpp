#include "artifact/witness.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <limits>
#include <random>
#include <thread>

#include "artifact/closure.hpp"
#include "artifact/errors.hpp"

namespace artifact {
namespace {

using S = StarTag;
using F = BForm;
constexpr double kPi = std::numbers::pi;

Complex2x2 mat(cplx a, cplx b, cplx c, cplx d) {
    Complex2x2 m;
    m << a, b, c, d;
    return m;
}

OrbitClass cls(S a, F b, BParams q = {}, double a_param = 0.0) { return make_class({a, a_param}, b, q); }

BParams with(std::initializer_list<std::pair<const char*, double>> kv) {
    BParams q;
    for (const auto& [k, v] : kv) {
        const std::string n = k;
        if (n == "a") q.a = v;
        else if (n == "b") q.b = v;
        else if (n == "d") q.d = v;
        else if (n == "d0") q.d0 = v;
        else if (n == "phi") q.phi = v;
        else if (n == "beta") q.beta = v;
        else if (n == "delta") q.delta = v;
        else if (n == "zeta_re") q.zeta = {v, q.zeta.imag()};
        else if (n == "zeta_im") q.zeta = {q.zeta.real(), v};
    }
    return q;
}

GroupElement ge(cplx c, const Complex2x2& P) { return GroupElement::unchecked(c, P); }

std::vector<WitnessFamily> build_catalog() {
    std::vector<WitnessFamily> w;
    const double tau = 0.5, theta = kPi / 4, b = 0.7, a = 0.6, d = 1.3, at = 0.6;
    const cplx i = kI;

    const OrbitClass semi0 = cls(S::Rank1Semidef, F::Zero2);
    const OrbitClass semiA = cls(S::Rank1Semidef, F::AZero, with({{"a", at}}));
    const OrbitClass indef0 = cls(S::Indefinite, F::Zero2);
    const OrbitClass zeroOne = cls(S::Zero, F::OneZero);
    const OrbitClass swapB = cls(S::Rank1Semidef, F::Swap);

    // A-part paths, B = 0
    w.push_back({"semidef-from-unimodular", semi0, cls(S::Unimodular, F::Zero2, {}, theta),
                 [](double s) { return ge(1.0, mat(1, 0, 0, s)); }, "c = 1, P = diag(1, s)"});
    w.push_back({"semidef-from-reciprocal", semi0, cls(S::Reciprocal, F::Zero2, {}, tau),
                 [=](double s) { return ge(1.0, mat(1, 0, 1, s) / std::sqrt(1 + tau)); },
                 "c = 1, P = (1/sqrt(1+tau)) [[1,0],[1,s]]"});
    w.push_back({"indefinite-from-jordan", indef0, cls(S::JordanType, F::Zero2),
                 [](double s) { return ge(1.0, mat(1 / s, -1 / s, s / 2, s / 2)); }, "c = 1, P = [[1/s,-1/s],[s/2,s/2]]"});

    // [[0,1],[tau,0]] with an antidiagonal B
    const OrbitClass tauAnti = cls(S::Reciprocal, F::AntiDiag, with({{"b", b}}), tau);
    w.push_back({"reciprocal-antidiag-to-phase", tauAnti,
                 cls(S::Reciprocal, F::PhaseBZeta, with({{"b", b}, {"phi", 1.1}}), tau),
                 [](double s) { return ge(1.0, mat(s, s * s, 0, 1 / s)); }, "c = 1, P = [[s,s^2],[0,1/s]]"});
    w.push_back({"reciprocal-antidiag-to-antiphase", tauAnti,
                 cls(S::Reciprocal, F::AntiBPhase, with({{"b", b}, {"phi", 1.1}}), tau),
                 [](double s) { return ge(1.0, mat(1 / s, 0, s * s, s)); }, "c = 1, P = [[1/s,0],[s^2,s]]"});

    // 1+(-1) sources
    w.push_back({"indefinite-to-jordan-zerod", indef0, cls(S::JordanType, F::ZeroD, with({{"d", d}})),
                 [](double s) { return ge(1.0, mat(0.5 / s, -0.5 / s, s, s)); }, "c = 1, P = [[1/(2s),-1/(2s)],[s,s]]"});
    w.push_back({"indefinite-bI-to-jordan-antidiag", cls(S::Indefinite, F::DiagD0D, with({{"d0", b}, {"d", b}})),
                 cls(S::JordanType, F::AntiDiag, with({{"b", b}})),
                 [=](double s) { return ge(-1.0, mat(i / s, 1 / s, -i * s, s) / std::sqrt(2.0)); },
                 "c = -1, P = (1/sqrt 2) [[i/s,1/s],[-i s,s]]"});
    w.push_back({"indefinite-to-swapframe-onezero", indef0, cls(S::Indefinite, F::OneZero),
                 [](double s) { return ge(1.0, mat(s, -s, 0.5 / s, 0.5 / s)); }, "c = 1, P = [[s,-s],[1/(2s),1/(2s)]]"});
    w.push_back({"indefinite-I-to-swapframe-antibone", cls(S::Indefinite, F::DiagD0D, with({{"d0", 1}, {"d", 1}})),
                 cls(S::Indefinite, F::AntiBOne, with({{"b", 1}})),
                 [=](double s) { return ge(1.0, mat(0.5 / s, -0.5 * i / s, s, i * s)); },
                 "c = 1, P = [[1/(2s),-i/(2s)],[s,i s]]"});

    // (0, 1+0) sources
    w.push_back({"zero-onezero-to-indefinite-antidiag", zeroOne, cls(S::Indefinite, F::AntiDiag, with({{"b", b}})),
                 [=](double s) { return ge(1.0, mat(1, 0, 1, s) / std::sqrt(2 * b)); },
                 "c = 1, P = (1/sqrt(2b)) [[1,0],[1,s]]"});
    w.push_back({"zero-onezero-to-indefinite-diag", zeroOne, cls(S::Indefinite, F::DiagAD, with({{"a", a}, {"d", d}})),
                 [=](double s) { return ge(1.0, mat(1, 0, 1, s) / std::sqrt(a + d)); },
                 "c = 1, P = (1/sqrt(a+d)) [[1,0],[1,s]]"});
    w.push_back({"zero-onezero-to-jordan-antidiag", zeroOne, cls(S::JordanType, F::AntiDiag, with({{"b", b}})),
                 [=](double s) { return ge(1.0, (1.0 + i) / (2 * std::sqrt(b)) * mat(1 / s, s * s, -i * s, s * s)); },
                 "c = 1, P = ((1+i)/(2 sqrt b)) [[1/s,s^2],[-i s,s^2]]"});
    w.push_back({"zero-onezero-to-jordan-azeta", zeroOne,
                 cls(S::JordanType, F::AZeta, with({{"a", a}, {"zeta_re", 0.3}, {"zeta_im", 0.4}})),
                 [=](double s) { return ge(1.0, mat(1 / std::sqrt(a), 0, 0, s)); }, "c = 1, P = (1/sqrt a) + s"});
    w.push_back({"zero-onezero-to-reciprocal-onezeta", zeroOne,
                 cls(S::Reciprocal, F::OneZeta, with({{"zeta_re", 0.3}, {"zeta_im", -0.2}}), tau),
                 [](double s) { return ge(1.0, mat(1, 0, 0, s)); }, "c = 1, P = 1 + s"});
    w.push_back({"zero-onezero-to-reciprocal-zeroone", zeroOne, cls(S::Reciprocal, F::ZeroOne, {}, tau),
                 [](double s) { return ge(1.0, mat(0, s, 1, 0)); }, "c = 1, P = [[0,s],[1/sqrt d,0]], d = 1"});
    w.push_back({"zero-onezero-to-semidef-aone", zeroOne, cls(S::Rank1Semidef, F::AOne, with({{"a", a}})),
                 [](double s) { return ge(1.0, mat(s, s, 1, s)); }, "c = 1, P = [[s,s],[1,s]]"});
    w.push_back({"zero-onezero-to-semidef-swap", zeroOne, swapB,
                 [](double s) { return ge(1.0, mat(s, s * s, 1 / s, s * s) / std::sqrt(2.0)); },
                 "c = 1, P = (1/sqrt 2) [[s,s^2],[1/s,s^2]]"});
    w.push_back({"zero-identity-to-semidef-swap", cls(S::Zero, F::Identity), swapB,
                 [=](double s) { return ge(1.0, mat(s, i * s, 1 / s, -i / s) / std::sqrt(2.0)); },
                 "c = 1, P = (1/sqrt 2) [[s,i s],[1/s,-i/s]]"});

    // (1+0, a~+0) sources
    w.push_back({"semidef-a-to-semidef-swap", semiA, swapB,
                 [=](double s) { return ge(1.0, mat(1, 0, at / 2, s)); }, "c = 1, P = [[1,0],[a~/2,s]]"});
    w.push_back({"semidef-a-to-semidef-aone", semiA, cls(S::Rank1Semidef, F::AOne, with({{"a", 0.4}})),
                 [=](double s) { return ge(1.0, mat(1, 0, std::sqrt(at - 0.4), s)); },
                 "c = 1, P = [[1,0],[sqrt(a~-a),s]]"});
    {
        const double lo = 0.5, aa = 0.8;
        w.push_back({"semidef-a-to-definite-below", cls(S::Rank1Semidef, F::AZero, with({{"a", lo}})),
                     cls(S::Definite, F::DiagAD, with({{"a", aa}, {"d", d}})),
                     [=](double s) {
                         return ge(1.0, mat(std::sqrt(lo + d), 0, i * std::sqrt(aa - lo), s) / std::sqrt(aa + d));
                     },
                     "c = 1, P = (1/sqrt(a+d)) [[sqrt(a~+d),0],[i sqrt(a-a~),s]], a~ <= a <= d"});
        w.push_back({"semidef-a-to-indefinite-below", cls(S::Rank1Semidef, F::AZero, with({{"a", lo}})),
                     cls(S::Indefinite, F::DiagAD, with({{"a", aa}, {"d", d}})),
                     [=](double s) {
                         return ge(1.0, mat(std::sqrt(d - lo), 0, i * std::sqrt(aa - lo), s) / std::sqrt(d - aa));
                     },
                     "c = 1, P = (1/sqrt(d-a)) [[sqrt(d-a~),0],[i sqrt(a-a~),s]], a~ <= a <= d"});
    }
    {
        const double hi = 1.0;
        const OrbitClass src = cls(S::Rank1Semidef, F::AZero, with({{"a", hi}}));
        w.push_back({"semidef-a-to-definite-above", src, cls(S::Definite, F::DiagAD, with({{"a", a}, {"d", d}})),
                     [=](double s) {
                         return ge(1.0, mat(std::sqrt(d - hi), 0, std::sqrt(hi - a), s) / std::sqrt(d - a));
                     },
                     "c = 1, P = (1/sqrt(d-a)) [[sqrt(d-a~),0],[sqrt(a~-a),s]], a < a~ <= d"});
        w.push_back({"semidef-a-to-indefinite-above", src, cls(S::Indefinite, F::DiagAD, with({{"a", a}, {"d", d}})),
                     [=](double s) {
                         return ge(1.0, mat(std::sqrt(d + hi), 0, std::sqrt(hi - a), s) / std::sqrt(d + a));
                     },
                     "c = 1, P = (1/sqrt(d+a)) [[sqrt(d+a~),0],[sqrt(a~-a),s]], a~ >= a"});
    }
    {
        const double root = std::sqrt(b * b + at * at);
        const double x = std::sqrt((b + root) / (2 * b)), u = std::sqrt((root - b) / (2 * b));
        w.push_back({"semidef-a-to-indefinite-antidiag", semiA, cls(S::Indefinite, F::AntiDiag, with({{"b", b}})),
                     [=](double s) { return ge(1.0, mat(x, s, u, s)); },
                     "c = 1, x^2 = (b+sqrt(b^2+a~^2))/(2b), u^2 = (-b+sqrt(b^2+a~^2))/(2b), y = v = s"});
    }
    {
        const double p = (1 - at) / (2 * std::sqrt(at));
        const Complex2x2 P0 = mat(1, 1, 0.5, -0.5);  // (K, 1+0) -> (1+(-1), [[1,1],[1,1]])
        w.push_back({"semidef-a-to-swapframe-onezero", semiA, cls(S::Indefinite, F::OneZero),
                     [=](double s) { return ge(1.0, P0 * mat(std::sqrt(p * p + 1), 0, -p, s * s)); },
                     "c = 1, P = [[1,1],[1/2,-1/2]] [[sqrt(p^2+1),0],[-p,s^2]], p = (1-a~)/(2 sqrt a~)"});
    }
    w.push_back({"semidef-a-to-jordan-antidiag", semiA, cls(S::JordanType, F::AntiDiag, with({{"b", b}})),
                 [=](double s) {
                     return ge(-i, mat(at / (2 * b) * (1.0 - i), s, 1.0 + i, s) / std::sqrt(2.0));
                 },
                 "c = -i, P = (1/sqrt 2) [[a~(1-i)/(2b),s],[1+i,s]]"});
    w.push_back({"semidef-a-to-jordan-azero", semiA, cls(S::JordanType, F::AZeta, with({{"a", 0.9}})),
                 [=](double s) { return ge(-i, mat(std::sqrt(at / 0.9), s, i, 0)); },
                 "c = -i, P = [[sqrt(a~/a),s],[i,0]]"});
    w.push_back({"semidef-zero-to-jordan-zerod", semi0, cls(S::JordanType, F::ZeroD, with({{"d", d}})),
                 [](double s) { return ge(1.0, mat(1 / s, s, s, 0) / std::sqrt(2.0)); },
                 "c = 1, P = (1/sqrt 2) [[1/s,s],[s,0]]"});
    {
        const double r = std::sqrt(d * d - at * at);
        w.push_back({"semidef-a-to-jordan-zerod", semiA, cls(S::JordanType, F::ZeroD, with({{"d", d}})),
                     [=](double s) { return ge(cplx(r, -at) / d, mat(r, s, 2 * at, 0) / (2 * std::sqrt(at * d))); },
                     "c = (sqrt(d^2-a~^2) - i a~)/d, P = (1/(2 sqrt(a~ d))) [[sqrt(d^2-a~^2),s],[2a~,0]]"});
    }

    // diagonal scalings that keep A fixed
    const OrbitClass nilAnti = cls(S::Rank1Nilpotent, F::AntiDiag, with({{"b", b}}));
    const OrbitClass nil0 = cls(S::Rank1Nilpotent, F::Zero2);
    const OrbitClass tau0 = cls(S::Reciprocal, F::Zero2, {}, tau);
    auto shrink_first = [](double s) { return ge(1.0, mat(s, 0, 0, 1 / s)); };
    auto shrink_second = [](double s) { return ge(1.0, mat(1 / s, 0, 0, s)); };
    w.push_back({"nilpotent-antidiag-to-onebzero", nilAnti, cls(S::Rank1Nilpotent, F::OneBZero, with({{"b", b}})),
                 shrink_first, "c = 1, P = diag(s, 1/s)"});
    w.push_back({"nilpotent-antidiag-to-zetabone", nilAnti, cls(S::Rank1Nilpotent, F::ZetaBOne, with({{"b", b}})),
                 shrink_second, "c = 1, P = diag(1/s, s)"});
    w.push_back({"nilpotent-zero-to-onezero", nil0, cls(S::Rank1Nilpotent, F::OneZero), shrink_first,
                 "c = 1, P = diag(s, 1/s)"});
    w.push_back({"nilpotent-zero-to-zeroone", nil0, cls(S::Rank1Nilpotent, F::ZeroOne), shrink_second,
                 "c = 1, P = diag(1/s, s)"});
    w.push_back({"reciprocal-zero-to-onezeta", tau0, cls(S::Reciprocal, F::OneZeta, {}, tau), shrink_first,
                 "c = 1, P = diag(s, 1/s)"});
    w.push_back({"reciprocal-zero-to-zeroone", tau0, cls(S::Reciprocal, F::ZeroOne, {}, tau), shrink_second,
                 "c = 1, P = diag(1/s, s)"});
    return w;
}

}  // namespace

const std::vector<WitnessFamily>& witness_catalog() {
    static const std::vector<WitnessFamily> catalog = build_catalog();
    return catalog;
}

const WitnessFamily& find_witness(const std::string& id) {
    for (const auto& w : witness_catalog())
        if (w.id == id) return w;
    throw InvalidArgument("no witness " + id);
}

ConvergenceReport verify_witness(const WitnessFamily& w, const std::vector<double>& s_values, double tol) {
    if (s_values.empty()) throw InvalidArgument("verify_witness: empty sweep");
    for (size_t k = 0; k < s_values.size(); ++k) {
        if (!(s_values[k] > 0)) throw InvalidArgument("verify_witness: s values must be positive");
        if (k > 0 && !(s_values[k] < s_values[k - 1])) throw InvalidArgument("verify_witness: s values must decrease");
    }
    ConvergenceReport r;
    r.s_values = s_values;
    const MatrixPair target = representative(w.dst), goal = representative(w.src);
    for (double s : s_values) r.residuals.push_back(pair_distance(act_pair(w.curve(s), target), goal));
    r.monotone = true;
    for (size_t k = 1; k < r.residuals.size(); ++k)
        if (!(r.residuals[k] < r.residuals[k - 1])) r.monotone = false;
    r.final_residual = r.residuals.back();
    if (r.residuals.size() > 1 && !(r.final_residual < r.residuals.front()))
        throw DivergenceDetected(w.id + ": residual does not decrease along the sweep");

    // slope of log residual vs log s; residuals already at rounding level are left out
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int m = 0;
    for (size_t k = 0; k < s_values.size(); ++k) {
        if (!(r.residuals[k] > 1e-14)) continue;
        const double lx = std::log(s_values[k]), ly = std::log(r.residuals[k]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++m;
    }
    r.slope = m > 1 ? (m * sxy - sx * sy) / (m * sxx - sx * sx) : std::numeric_limits<double>::infinity();
    r.passed = r.monotone && r.final_residual <= tol;
    return r;
}

json to_json(const ConvergenceReport& r) {
    json slope = std::isfinite(r.slope) ? json(r.slope) : json(nullptr);
    return {{"s", r.s_values},       {"residuals", r.residuals}, {"monotone", r.monotone},
            {"final", r.final_residual}, {"slope", slope},        {"passed", r.passed}};
}

namespace {

struct SampleOutcome {
    enum Kind { Ok, Violation, Unknown, Unresolved } kind = Unresolved;
    std::string family;
    bool family_violation = false;
    json reached;
};

SampleOutcome run_sample(const OrbitClass& src, const MatrixPair& rep, double eps, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> radius(0.0, 1.0), angle(0.0, 2 * kPi);
    // uniform in the max-norm ball: each entry uniform in the complex disc of radius eps
    auto entry = [&]() { return std::polar(eps * std::sqrt(radius(rng)), angle(rng)); };
    Complex2x2 E;
    for (int k = 0; k < 4; ++k) E(k / 2, k % 2) = entry();
    const cplx f11 = entry(), f12 = entry(), f22 = entry();
    const MatrixPair p{rep.A + E, rep.B + Sym2x2(f11, f12, f22)};

    SampleOutcome out;
    try {
        const ClassifiedPair cp = classify_pair(p);
        out.family = family_id(cp.cls.key());
        out.reached = to_json(cp.cls);
        out.family_violation = family_condition(src.key(), cp.cls.key()).kind == ConditionKind::Never;
        const PathAnswer ans = evaluate_path(src, cp.cls);
        if (ans.status == PathStatus::Unknown) out.kind = SampleOutcome::Unknown;
        else out.kind = ans.status == PathStatus::True ? SampleOutcome::Ok : SampleOutcome::Violation;
    } catch (const Error&) {
        out.kind = SampleOutcome::Unresolved;
    }
    return out;
}

}  // namespace

PerturbReport perturb_experiment(const OrbitClass& cls, double eps, int n, std::uint64_t seed, int threads) {
    if (!(eps > 0)) throw InvalidArgument("perturb_experiment: eps must be positive");
    if (n < 1) throw InvalidArgument("perturb_experiment: n must be at least 1");
    validate_class(cls);
    pair_graph();  // build before fanning out
    const MatrixPair rep = representative(cls);

    std::vector<SampleOutcome> outcomes(n);
    int workers = threads > 0 ? threads : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    workers = std::min(workers, n);
    std::vector<std::thread> pool;
    for (int t = 0; t < workers; ++t)
        pool.emplace_back([&, t] {
            for (int k = t; k < n; k += workers) {
                std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                                  static_cast<std::uint32_t>(k)};
                std::uint32_t words[2];
                seq.generate(words, words + 2);
                outcomes[k] = run_sample(cls, rep, eps, (static_cast<std::uint64_t>(words[0]) << 32) | words[1]);
            }
        });
    for (auto& th : pool) th.join();

    PerturbReport r;
    r.source = cls;
    r.eps = eps;
    r.samples = n;
    for (const auto& o : outcomes) {
        if (o.kind == SampleOutcome::Unresolved) {
            ++r.unresolved;
            ++r.histogram["unresolved"];
            continue;
        }
        ++r.histogram[o.family];
        if (o.family_violation) ++r.family_violations[o.family];
        if (o.kind == SampleOutcome::Unknown) ++r.unknown;
        if (o.kind == SampleOutcome::Violation) r.violations.push_back(o.reached);
    }
    return r;
}

json to_json(const PerturbReport& r) {
    json j;
    j["source"] = to_json(r.source);
    j["eps"] = r.eps;
    j["samples"] = r.samples;
    j["histogram"] = r.histogram;
    j["violation_count"] = r.violations.size();
    j["violations"] = r.violations;
    j["family_violations"] = r.family_violations;
    j["unknown"] = r.unknown;
    j["unresolved"] = r.unresolved;
    return j;
}

}  // namespace artifact
