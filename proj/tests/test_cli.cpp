#include <doctest.h>

#include <array>
#include <cstdio>
#include <string>
#include <sys/wait.h>

#include "artifact/json_io.hpp"

#ifndef CXPOINT_BIN
#error "CXPOINT_BIN must point at the cxpoint executable"
#endif

namespace {

struct Run {
    int code = -1;
    std::string out;
};

// Single-quoted shell word.
std::string q(const std::string& s) {
    std::string r = "'";
    for (char ch : s) r += ch == '\'' ? std::string("'\\''") : std::string(1, ch);
    return r + "'";
}

Run run(const std::string& args) {
    const std::string cmd = std::string(CXPOINT_BIN) + " " + args + " 2>/dev/null";
    Run r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf{};
    size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

const std::string kDiag12 = R"({"A":[[[1,0],[0,0]],[[0,0],[1,0]]],"B":[[[1,0],[0,0]],[[0,0],[2,0]]]})";
const std::string kZero = R"({"A":[[[0,0],[0,0]],[[0,0],[0,0]]],"B":[[[0,0],[0,0]],[[0,0],[0,0]]]})";

}  // namespace

TEST_CASE("cli dim") {
    const Run r = run("dim --pair " + q(kDiag12));
    CHECK(r.code == 0);
    CHECK(r.out == "9\n");
}

TEST_CASE("cli path") {
    const Run r = run("path --from " + q(kZero) + " --to " + q(kDiag12));
    CHECK(r.code == 0);
    CHECK(r.out.rfind("true\n", 0) == 0);
    const Run back = run("path --from " + q(kDiag12) + " --to " + q(kZero));
    CHECK(back.code == 0);
    CHECK(back.out.rfind("false\n", 0) == 0);
}

TEST_CASE("cli path reports undetermined edges") {
    const std::string src = R"({"a_family":{"tag":"Indefinite"},"b_form":{"tag":"Zero2"}})";
    const std::string dst = R"({"a_family":{"tag":"JordanType"},"b_form":{"tag":"AZeta","a":1,"beta":0.5,"zeta":[0.25,0]}})";
    const Run r = run("path --from " + q(src) + " --to " + q(dst));
    CHECK(r.code == 3);
    CHECK(r.out.rfind("unknown\n", 0) == 0);
}

TEST_CASE("cli maxf") {
    const Run r = run("maxf --a 0 --b 0 --d 2 --theta 1.5707963");
    CHECK(r.code == 0);
    CHECK(r.out == "2.000000\n");
    CHECK(run("maxf --a 3 --b 0 --d 0 --theta 1.0471976").out == "3.000000\n");
    CHECK(run("maxf --a 0 --b 0 --d 0+2i --theta 1").out == "2.000000\n");
    CHECK(run("maxf --a -1 --b 0 --d 2 --theta 1").code == 2);
}

TEST_CASE("cli classify and malformed input") {
    const Run r = run("classify --pair " + q(kDiag12));
    CHECK(r.code == 0);
    const auto j = artifact::json::parse(r.out);
    CHECK(j.at("class").at("dim") == 9);
    const Run bad = run("classify --pair " + q(R"({"A": [[1,)"));
    CHECK(bad.code == 2);
    CHECK(run("nosuchcommand").code == 2);
}

TEST_CASE("cli graph") {
    const Run r = run("graph --kind psi2 --format dot");
    CHECK(r.code == 0);
    CHECK(r.out.find("digraph") != std::string::npos);
    const auto j = artifact::json::parse(run("graph --kind psi1 --format json").out);
    CHECK(j.at("nodes").size() == 8);
}

TEST_CASE("cli bounds") {
    const std::string src = R"({"A":[[[1,0],[0,0]],[[0,0],[1,0]]],"B":[[[1,0],[0,0]],[[0,0],[1,0]]]})";
    const std::string dst = R"({"A":[[[1,0],[0,0]],[[0,0],[-1,0]]],"B":[[[2,0],[0,0]],[[0,0],[1,0]]]})";
    const Run r = run("bounds --from " + q(src) + " --to " + q(dst));
    CHECK(r.code == 0);
    const auto j = artifact::json::parse(r.out);
    CHECK(j.at("certificate").at("rule") == "DetRatioRule");
}

TEST_CASE("cli witness") {
    const auto list = artifact::json::parse(run("witness").out);
    CHECK(list.size() >= 18);
    const Run v = run("witness --verify semidef-from-unimodular");
    CHECK(v.code == 0);
    CHECK(artifact::json::parse(v.out).at("monotone") == true);
    CHECK(run("witness --verify nothing-here").code == 2);
}

TEST_CASE("cli perturb is reproducible") {
    const std::string cls = R"({"a_family":{"tag":"Zero"},"b_form":{"tag":"OneZero"}})";
    const std::string args = "--seed 5 perturb --class " + q(cls) + " --eps 1e-3 --samples 40";
    const Run a = run(args), b = run(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(artifact::json::parse(a.out).at("samples") == 40);
    CHECK(run("--strict perturb --class " + q(cls)).code == 2);
}

TEST_CASE("cli jet") {
    const std::string jet = R"({"lin_z":[[1,0],[0,0]],"A":[[[1,0],[0,0]],[[0,0],[1,0]]],"B":[[[0,0],[1,0]],[[1,0],[0,0]]]})";
    const Run r = run("jet --jet " + q(jet));
    CHECK(r.code == 0);
    const auto j = artifact::json::parse(r.out);
    CHECK(j.at("flat") == true);
    CHECK(run("jet --jet " + q(R"({"lin_zbar":[[1,0],[0,0]],"A":[[[1,0],[0,0]],[[0,0],[1,0]]]})")).code == 2);
}
