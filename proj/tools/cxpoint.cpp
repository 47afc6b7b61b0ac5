// cxpoint: command-line front end for the normal-form library.
#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "artifact/bounds.hpp"
#include "artifact/closure.hpp"
#include "artifact/errors.hpp"
#include "artifact/maxf.hpp"
#include "artifact/pairnf.hpp"
#include "artifact/surface.hpp"
#include "artifact/tangent.hpp"
#include "artifact/witness.hpp"

using namespace artifact;

namespace {

constexpr int kInputError = 2;
constexpr int kUndetermined = 3;

// Inline JSON, or @path to read it from a file.
json read_json(const std::string& arg, const std::string& what) {
    std::string text = arg;
    if (!arg.empty() && arg[0] == '@') {
        std::ifstream in(arg.substr(1));
        if (!in) throw InvalidArgument(what + ": cannot open " + arg.substr(1));
        std::stringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw InvalidArgument(what + ": malformed JSON at byte " + std::to_string(e.byte) + ": " + e.what());
    }
}

// A pair ({"A","B"}) is classified first; anything else is read as an orbit class.
OrbitClass read_class(const std::string& arg, const std::string& what, double tol) {
    const json j = read_json(arg, what);
    if (j.is_object() && j.contains("A")) return classify_pair(pair_from_json(j), tol).cls;
    return class_from_json(j);
}

// "1.5", "2-0.5i", "i", "-i", or a JSON [re, im].
cplx parse_complex(const std::string& s) {
    if (!s.empty() && s.front() == '[') return complex_from_json(read_json(s, "complex"));
    if (s.empty()) throw InvalidArgument("empty complex number");
    if (s.back() != 'i') {
        size_t used = 0;
        const double re = std::stod(s, &used);
        if (used != s.size()) throw InvalidArgument("bad complex number: " + s);
        return re;
    }
    const std::string body = s.substr(0, s.size() - 1);
    // split at the last sign that is not an exponent sign or the leading one
    size_t split = std::string::npos;
    for (size_t k = body.size(); k-- > 1;)
        if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
            split = k;
            break;
        }
    auto coef = [&](const std::string& t) -> double {
        if (t.empty() || t == "+") return 1.0;
        if (t == "-") return -1.0;
        size_t used = 0;
        const double v = std::stod(t, &used);
        if (used != t.size()) throw InvalidArgument("bad complex number: " + s);
        return v;
    };
    if (split == std::string::npos) return {0.0, coef(body)};
    size_t used = 0;
    const std::string re_part = body.substr(0, split);
    const double re = std::stod(re_part, &used);
    if (used != re_part.size()) throw InvalidArgument("bad complex number: " + s);
    return {re, coef(body.substr(split))};
}

void print(const json& j) { std::cout << j.dump(2) << "\n"; }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Normal forms and closure paths for pairs (A, B) under (c,P).(A,B) = (c P^*AP, P^T B P)"};
    app.require_subcommand(1);
    double tol = kDefaultTol;
    std::uint64_t seed = 0;
    bool strict = false;
    app.add_option("--tol", tol, "numerical tolerance")->check(CLI::PositiveNumber);
    auto* seed_opt = app.add_option("--seed", seed, "seed for randomized subcommands");
    app.add_flag("--strict", strict, "require --seed for randomized subcommands");

    std::string pair_arg, from_arg, to_arg, class_arg, jet_arg;

    auto* classify = app.add_subcommand("classify", "normal form of a pair");
    classify->add_option("--pair", pair_arg, "pair JSON or @file")->required();

    auto* dim = app.add_subcommand("dim", "orbit dimension of a pair");
    dim->add_option("--pair", pair_arg, "pair JSON or @file")->required();

    auto* path = app.add_subcommand("path", "closure path between two orbits");
    path->add_option("--from", from_arg, "source pair or class JSON")->required();
    path->add_option("--to", to_arg, "target pair or class JSON")->required();

    std::string kind = "pair", format = "json";
    auto* graph = app.add_subcommand("graph", "export a closure graph");
    graph->add_option("--kind", kind)->check(CLI::IsMember({"psi1", "psi2", "pair"}));
    graph->add_option("--format", format)->check(CLI::IsMember({"dot", "json"}));

    double a = 0, b = 0, theta = 0;
    std::string d_arg = "0";
    auto* maxf = app.add_subcommand("maxf", "constrained maximum M(a, b, d, theta)");
    maxf->add_option("--a", a)->required();
    maxf->add_option("--b", b)->required();
    maxf->add_option("--d", d_arg, "complex, e.g. 2 or 1+0.5i")->required();
    maxf->add_option("--theta", theta, "radians")->required();

    auto* bounds = app.add_subcommand("bounds", "certified distance from a pair to another orbit");
    bounds->add_option("--from", from_arg, "source pair JSON")->required();
    bounds->add_option("--to", to_arg, "target pair JSON")->required();

    std::string witness_id;
    bool verify_all = false;
    auto* witness = app.add_subcommand("witness", "list or verify witness curves");
    witness->add_option("--verify", witness_id, "catalog id to verify");
    witness->add_flag("--verify-all", verify_all);

    double eps = 1e-3;
    int samples = 1000, threads = 0;
    auto* perturb = app.add_subcommand("perturb", "classify random perturbations of an orbit");
    perturb->add_option("--class", class_arg, "class or pair JSON")->required();
    perturb->add_option("--eps", eps)->check(CLI::PositiveNumber);
    perturb->add_option("--samples", samples)->check(CLI::PositiveNumber);
    perturb->add_option("--threads", threads);

    auto* jet = app.add_subcommand("jet", "reduce a degree-2 jet to its pair");
    jet->add_option("--jet", jet_arg, "jet JSON or @file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kInputError;
    }

    try {
        if (*classify) {
            print(to_json(classify_pair(pair_from_json(read_json(pair_arg, "pair")), tol)));
        } else if (*dim) {
            std::cout << orbit_dimension(pair_from_json(read_json(pair_arg, "pair")), tol) << "\n";
        } else if (*path) {
            const PathAnswer ans = evaluate_path(read_class(from_arg, "from", tol), read_class(to_arg, "to", tol));
            std::cout << (ans.status == PathStatus::True ? "true" : ans.status == PathStatus::False ? "false" : "unknown")
                      << "\n";
            std::cout << "condition: " << ans.condition.text() << "\n";
            std::cout << "reason: " << ans.reason << "\n";
            if (ans.status == PathStatus::Unknown) return kUndetermined;
        } else if (*graph) {
            const GraphKind k = kind == "psi1" ? GraphKind::Psi1 : kind == "psi2" ? GraphKind::Psi2 : GraphKind::Pair;
            std::cout << export_graph(k, format == "dot" ? GraphFormat::Dot : GraphFormat::Json) << "\n";
        } else if (*maxf) {
            std::printf("%.6f\n", max_f(a, b, parse_complex(d_arg), theta, std::min(tol, 1e-9)));
        } else if (*bounds) {
            const MatrixPair src = pair_from_json(read_json(from_arg, "from"));
            const MatrixPair dst = pair_from_json(read_json(to_arg, "to"));
            const auto cert = nonpath_lower_bound(src, dst);
            json out{{"p", det_invariant_p(src, dst)}, {"certificate", cert ? to_json(*cert) : json(nullptr)}};
            print(out);
        } else if (*witness) {
            if (verify_all) {
                json out = json::array();
                for (const auto& w : witness_catalog()) {
                    json r = to_json(verify_witness(w));
                    r["id"] = w.id;
                    out.push_back(r);
                }
                print(out);
            } else if (!witness_id.empty()) {
                json r = to_json(verify_witness(find_witness(witness_id)));
                r["id"] = witness_id;
                print(r);
            } else {
                json out = json::array();
                for (const auto& w : witness_catalog())
                    out.push_back({{"id", w.id}, {"src", to_json(w.src)}, {"dst", to_json(w.dst)}, {"curve", w.citation}});
                print(out);
            }
        } else if (*perturb) {
            if (strict && seed_opt->count() == 0) throw InvalidArgument("perturb: --seed is required with --strict");
            print(to_json(perturb_experiment(read_class(class_arg, "class", tol), eps, samples, seed, threads)));
        } else if (*jet) {
            const JetReduction r = reduce_jet(jet_from_json(read_json(jet_arg, "jet")), tol);
            print({{"pair", to_json(r.pair)}, {"flat", is_quadratically_flat(r.pair, tol)}, {"reduction", to_json(r)}});
        }
    } catch (const AmbiguousNearBoundary& e) {
        std::cerr << "ambiguous: " << e.what() << "\n";
        return kUndetermined;
    } catch (const RankUnstable& e) {
        std::cerr << "rank unstable: " << e.what() << "\n";
        return kUndetermined;
    } catch (const UnknownEdge& e) {
        std::cerr << "unknown: " << e.what() << "\n";
        return kUndetermined;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: bad number (" << e.what() << ")\n";
        return kInputError;
    } catch (const json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    }
    return 0;
}
