#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include <json.hpp>

#include "hwroots/expr.hpp"
#include "oracles.hpp"

using json = nlohmann::json;
using hwroots::Complex;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output;
};

// Runs the tool, capturing stdout+stderr.
RunResult run_tool(const std::string& args) {
    const std::string cmd = std::string(HWSOLVE_BIN) + " " + args + " 2>&1";
    RunResult r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 512> buf;
    while (std::fgets(buf.data(), buf.size(), pipe)) r.output += buf.data();
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::vector<Complex> roots_from_json(const json& j) {
    std::vector<Complex> out;
    for (const auto& r : j.at("roots"))
        out.push_back(Complex(r.at("re").get<double>(), r.at("im").get<double>()));
    return out;
}

}  // namespace

TEST_CASE("cli solve: cubic in text mode") {
    const auto r = run_tool("solve --expr \"(z-2)*(z-3)*(z-5)\" --y 2 --count 3");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("z1 ≃") != std::string::npos);
    CHECK(r.output.find("z3 ≃") != std::string::npos);
    CHECK(r.output.find("5.26953") != std::string::npos);
}

TEST_CASE("cli solve: cubic in json mode with residual recheck") {
    const auto r = run_tool("solve --expr \"(z-2)*(z-3)*(z-5)\" --y 2 --count 3 --format json");
    REQUIRE(r.exit_code == 0);
    const json j = json::parse(r.output);
    CHECK(j.at("warnings").empty());
    CHECK(j.at("config").at("expr") == "(z-2)*(z-3)*(z-5)");
    const auto roots = roots_from_json(j);
    CHECK(oracles::match_multisets(
        roots, {{5.26953, 0}, {2.36523, 0.69160}, {2.36523, -0.69160}}, 1e-4));

    // Reported residuals reproduce against a fresh evaluation.
    const auto f = hwroots::parse("(z-2)*(z-3)*(z-5)");
    for (const auto& rec : j.at("roots")) {
        const Complex v(rec.at("re").get<double>(), rec.at("im").get<double>());
        const double fresh = std::abs(hwroots::eval_point(f, v) - Complex(2, 0));
        CHECK(std::abs(fresh - rec.at("residual").get<double>()) <= 1e-12);
    }
}

TEST_CASE("cli solve: count defaults to the polynomial degree") {
    const auto r = run_tool("solve --expr \"(z-2)*(z-3)*(z-5)\" --y 2 --format json");
    REQUIRE(r.exit_code == 0);
    const json j = json::parse(r.output);
    CHECK(j.at("config").at("count") == 3);
    CHECK(j.at("roots").size() == 3);
}

TEST_CASE("cli solve: rational input") {
    const auto r = run_tool(
        "solve --rational \"(z-2)*(z-3)\" \"(z-5)*(z-1)\" --y 2 --count 2 --format json");
    REQUIRE(r.exit_code == 0);
    const auto roots = roots_from_json(json::parse(r.output));
    CHECK(oracles::match_multisets(roots, {{6.37228, 0}, {0.62772, 0}}, 1e-4));
}

TEST_CASE("cli solve: multiplicity in both formats") {
    const auto text = run_tool("solve --expr \"z^3-4*z^2+5*z\" --y 2");
    CHECK(text.exit_code == 0);
    CHECK(text.output.find("(multiplicity 2)") != std::string::npos);

    const auto r = run_tool("solve --expr \"z^3-4*z^2+5*z\" --y 2 --format json");
    REQUIRE(r.exit_code == 0);
    const json j = json::parse(r.output);
    REQUIRE(j.at("roots").size() == 2);
    int total_mult = 0;
    for (const auto& rec : j.at("roots")) total_mult += rec.at("multiplicity").get<int>();
    CHECK(total_mult == 3);
}

TEST_CASE("cli solve: text and json report the same multiset") {
    const std::string flags = "solve --expr \"sin(z)\" --y 0.5 --count 3";
    const auto text = run_tool(flags);
    const auto machine = run_tool(flags + " --format json");
    REQUIRE(text.exit_code == 0);
    REQUIRE(machine.exit_code == 0);
    const auto roots = roots_from_json(json::parse(machine.output));
    // Every 5-decimal text value appears in the JSON multiset.
    for (const Complex& v : roots) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.5f", v.real());
        CHECK(text.output.find(buf) != std::string::npos);
    }
}

TEST_CASE("cli solve: usage errors exit 1") {
    CHECK(run_tool("solve --expr \"sin(z)\" --y 0.5 --count 0").exit_code == 1);
    CHECK(run_tool("solve --expr \"sin(z)\" --y 0.5").exit_code == 1);  // count required
    CHECK(run_tool("solve --y 0.5").exit_code == 1);                    // no input
    CHECK(run_tool("solve --expr \"sin(z\" --y 0.5 --count 1").exit_code == 1);
    CHECK(run_tool("solve --expr \"foo(z)\" --y 0.5 --count 1").exit_code == 1);
    CHECK(run_tool("solve --expr \"z\" --rational \"z\" \"1\" --y 1").exit_code != 0);
    CHECK(run_tool("bogus").exit_code == 1);
}

TEST_CASE("cli solve: warnings exit with code 2") {
    // No root anywhere near: the refinement escapes and says so.
    const auto r = run_tool("solve --expr \"sin(z)\" --y 1000000000 --count 1 --format json");
    CHECK(r.exit_code == 2);
    const json j = json::parse(r.output);
    CHECK(!j.at("warnings").empty());
}

TEST_CASE("cli solve: shifted center reaches input singular at 0") {
    const auto r = run_tool("solve --expr \"1/z\" --y 2 --count 1 --center 1 --format json");
    REQUIRE(r.exit_code == 0);
    const auto roots = roots_from_json(json::parse(r.output));
    REQUIRE(roots.size() == 1);
    CHECK(std::abs(roots[0] - Complex(0.5, 0)) < 1e-8);
    // Without the shift the expansion center is a pole.
    CHECK(run_tool("solve --expr \"1/z\" --y 2 --count 1").exit_code == 1);
}

TEST_CASE("cli solve: rational count defaults to the degree of P - y*Q") {
    const auto r = run_tool(
        "solve --rational \"(z-2)*(z-3)\" \"(z-5)*(z-1)\" --y 2 --format json");
    REQUIRE(r.exit_code == 0);
    const json j = json::parse(r.output);
    CHECK(j.at("config").at("count") == 2);
    CHECK(j.at("roots").size() == 2);
}

TEST_CASE("cli solve: complex target value") {
    const auto r = run_tool("solve --expr \"z^2\" --y \"2i\" --format json");
    REQUIRE(r.exit_code == 0);
    const auto roots = roots_from_json(json::parse(r.output));
    // sqrt(2i) = 1+i
    CHECK(oracles::match_multisets(roots, {{1, 1}, {-1, -1}}, 1e-8));
}

TEST_CASE("cli hw subcommand") {
    const auto r = run_tool(
        "hw --param \"log((z-2)*(z-3)*(z-5)/z)\" --y 2 --order 10 --format json");
    REQUIRE(r.exit_code == 0);
    const json j = json::parse(r.output);
    const Complex v(j.at("value").at("re").get<double>(), j.at("value").at("im").get<double>());
    CHECK(std::abs(v - Complex(2.36523, -0.69160)) < 1e-4);
    CHECK(j.at("residual").get<double>() <= 1e-8 * 3.0);
}

TEST_CASE("cli gmap subcommand") {
    const auto r = run_tool("gmap --param \"z\" --z 1 --format json");
    REQUIRE(r.exit_code == 0);
    const json j = json::parse(r.output);
    CHECK(std::abs(j.at("value").at("re").get<double>() - std::exp(1.0)) < 1e-12);
    // No parameters: G(z) = z.
    const auto id = run_tool("gmap --z \"2+3i\" --format json");
    REQUIRE(id.exit_code == 0);
    const json k = json::parse(id.output);
    CHECK(k.at("value").at("re").get<double>() == 2.0);
    CHECK(k.at("value").at("im").get<double>() == 3.0);
}
