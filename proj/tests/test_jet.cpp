#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "hwroots/errors.hpp"
#include "hwroots/jet.hpp"
#include "oracles.hpp"

using namespace hwroots;

namespace {

void check_coeffs(const Jet& j, const std::vector<Complex>& expected, double tol = 1e-12) {
    REQUIRE(j.order() == static_cast<int>(expected.size()));
    for (int k = 0; k < j.order(); ++k) {
        CAPTURE(k);
        CHECK(std::abs(j.coeff(k) - expected[static_cast<std::size_t>(k)]) <= tol);
    }
}

Jet random_jet(std::mt19937& rng, int order, double c0_min = 0.0) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<Complex> c(static_cast<std::size_t>(order));
    for (auto& v : c) v = Complex(u(rng), u(rng));
    if (c0_min > 0.0) {
        std::uniform_real_distribution<double> mod(c0_min, 2.0);
        std::uniform_real_distribution<double> arg(0.0, 6.28);
        const double m = mod(rng), a = arg(rng);
        c[0] = Complex(m * std::cos(a), m * std::sin(a));
    }
    return Jet(std::move(c), Complex(0.0, 0.0));
}

}  // namespace

TEST_CASE("jet arithmetic: difference of squares") {
    const Jet one = Jet::constant(Complex(1, 0), 4);
    const Jet z = Jet::variable(4);
    check_coeffs((one + z) * (one - z), {{1, 0}, {0, 0}, {-1, 0}, {0, 0}}, 1e-15);
}

TEST_CASE("jet division cancels a removable pole") {
    // f = z^2 - z, f/z = z - 1
    check_coeffs(jet_of_expr(parse("(z*z-z)/z"), Complex(0, 0), 3), {{-1, 0}, {1, 0}, {0, 0}}, 1e-15);
}

TEST_CASE("jet division: the sinc series") {
    const Jet z = Jet::variable(4);
    check_coeffs(sin(z) / z, {{1, 0}, {0, 0}, {-1.0 / 6.0, 0}, {0, 0}}, 1e-15);
    check_coeffs(sinc(z), {{1, 0}, {0, 0}, {-1.0 / 6.0, 0}, {0, 0}}, 1e-15);
}

TEST_CASE("jet division: genuine pole is an error") {
    const Jet one = Jet::constant(Complex(1, 0), 4);
    const Jet z = Jet::variable(4);
    CHECK_THROWS_AS(one / z, PoleError);
    const Jet zero = Jet::constant(Complex(0, 0), 4);
    CHECK_THROWS_AS(one / zero, PoleError);
}

TEST_CASE("jet arithmetic rejects mismatched shapes") {
    CHECK_THROWS_AS(Jet::variable(4) + Jet::variable(5), std::invalid_argument);
    CHECK_THROWS_AS(Jet::variable(4) * Jet::variable(4, Complex(1, 0)), std::invalid_argument);
}

TEST_CASE("jet exp: Maclaurin of e^z") {
    check_coeffs(exp(Jet::variable(6)),
                 {{1, 0}, {1, 0}, {0.5, 0}, {1.0 / 6, 0}, {1.0 / 24, 0}, {1.0 / 120, 0}}, 1e-15);
}

TEST_CASE("jet log of a quotient with a pole is rejected") {
    // (z-2)(z-3)(z-5)/z has numerator constant term -30 but denominator
    // valuation 1; the log never gets a series to work on.
    try {
        jet_of_expr(parse("log((z-2)*(z-3)*(z-5)/z)"), Complex(0, 0), 6);
        CHECK(false);
    } catch (const PoleError& e) {
        CHECK(e.path.substr(0, 3) == "log");
    }
}

TEST_CASE("jet tanh matches the known series and finite differences") {
    check_coeffs(tanh(Jet::variable(5)), {{0, 0}, {1, 0}, {0, 0}, {-1.0 / 3.0, 0}, {0, 0}}, 1e-14);

    std::mt19937 rng(99);
    std::uniform_real_distribution<double> u(-0.7, 0.7);
    for (int i = 0; i < 20; ++i) {
        const Complex a(u(rng), u(rng));
        const Complex d = oracles::central_difference(
            [](Complex w) { return std::tanh(w); }, a);
        const Jet j = tanh(Jet::variable(2, a));
        CHECK(std::abs(j.coeff(1) - d) < 1e-5);
    }
}

TEST_CASE("jet_of_expr: shifted cubic") {
    check_coeffs(jet_of_expr(parse("(z-2)*(z-3)*(z-5) - 2"), Complex(0, 0), 4),
                 {{-32, 0}, {31, 0}, {-10, 0}, {1, 0}}, 1e-12);
}

TEST_CASE("jet_of_expr: Maclaurin of sin") {
    check_coeffs(jet_of_expr(parse("sin(z)"), Complex(0, 0), 6),
                 {{0, 0}, {1, 0}, {0, 0}, {-1.0 / 6, 0}, {0, 0}, {1.0 / 120, 0}}, 1e-15);
}

TEST_CASE("jet_of_expr: identity about a shifted center") {
    check_coeffs(jet_of_expr(parse("z"), Complex(1, 2), 3), {{1, 2}, {1, 0}, {0, 0}}, 0.0);
}

TEST_CASE("jet_of_expr: sinc of an identically zero argument") {
    check_coeffs(jet_of_expr(parse("sinc(z-z)"), Complex(0, 0), 4),
                 {{1, 0}, {0, 0}, {0, 0}, {0, 0}}, 0.0);
}

TEST_CASE("jet_of_expr: product regroups around a removable quotient") {
    // z*(f/z) is analytic even though f/z alone is not.
    const Jet j = jet_of_expr(parse("z*((z-2)*(z-3)*(z-5)/z)"), Complex(0, 0), 5);
    check_coeffs(j, {{-30, 0}, {31, 0}, {-10, 0}, {1, 0}, {0, 0}}, 1e-12);
    // Same on the left: (f/z)*z.
    const Jet k = jet_of_expr(parse("((z-2)*(z-3)*(z-5)/z)*z"), Complex(0, 0), 5);
    check_coeffs(k, {{-30, 0}, {31, 0}, {-10, 0}, {1, 0}, {0, 0}}, 1e-12);
}

TEST_CASE("jet pow: integer, negative, fractional") {
    check_coeffs(pow(Jet::variable(4), 3.0), {{0, 0}, {0, 0}, {0, 0}, {1, 0}}, 0.0);
    // (1+z)^-1 = 1 - z + z^2 - z^3
    const Jet one_plus_z = Jet::constant(Complex(1, 0), 4) + Jet::variable(4);
    check_coeffs(pow(one_plus_z, -1.0), {{1, 0}, {-1, 0}, {1, 0}, {-1, 0}}, 1e-14);
    // (1+z)^.5 = 1 + z/2 - z^2/8 + z^3/16
    check_coeffs(pow(one_plus_z, 0.5), {{1, 0}, {0.5, 0}, {-0.125, 0}, {0.0625, 0}}, 1e-14);
    CHECK_THROWS_AS(pow(Jet::variable(4), 0.5), PoleError);
    CHECK_THROWS_AS(pow(Jet::variable(4), -1.0), PoleError);
}

TEST_CASE("jet ring laws on random jets") {
    std::mt19937 rng(2024);
    for (int i = 0; i < 50; ++i) {
        const Jet a = random_jet(rng, 6), b = random_jet(rng, 6), c = random_jet(rng, 6);
        const Jet lhs1 = (a + b) + c, rhs1 = a + (b + c);
        const Jet lhs2 = a * b, rhs2 = b * a;
        const Jet lhs3 = a * (b + c), rhs3 = a * b + a * c;
        for (int k = 0; k < 6; ++k) {
            CHECK(std::abs(lhs1.coeff(k) - rhs1.coeff(k)) <= 1e-12);
            CHECK(std::abs(lhs2.coeff(k) - rhs2.coeff(k)) <= 1e-12);
            CHECK(std::abs(lhs3.coeff(k) - rhs3.coeff(k)) <= 1e-12);
        }
    }
}

TEST_CASE("jet exp/log and sqrt^2 identities") {
    std::mt19937 rng(31337);
    for (int i = 0; i < 100; ++i) {
        const Jet x = random_jet(rng, 10, 0.5);
        const Jet back = exp(log(x));
        const Jet sq = sqrt(x) * sqrt(x);
        for (int k = 0; k < 10; ++k) {
            CHECK(std::abs(back.coeff(k) - x.coeff(k)) <= 1e-10);
            CHECK(std::abs(sq.coeff(k) - x.coeff(k)) <= 1e-10);
        }
    }
}

TEST_CASE("jet derivative coefficient matches central differences") {
    const char* exprs[] = {
        "(z-2)*(z-3)*(z-5)",
        "(z-2)*(z-3)",
        "(z-5)*(z-1)",
        "sin(z)",
        "z^3-4*z^2+5*z",
        "sin(z)+exp(sin(z))/sqrt(1+tanh(z))",
        "1-0.1*sinc(z)",
    };
    std::mt19937 rng(555);
    std::uniform_real_distribution<double> u(-0.7, 0.7);
    for (const char* text : exprs) {
        CAPTURE(text);
        const ExprPtr e = parse(text);
        int done = 0;
        while (done < 20) {
            const Complex a(u(rng), u(rng));
            Complex fd;
            try {
                fd = oracles::central_difference([&](Complex w) { return eval_point(e, w); }, a);
            } catch (const EvalDomainError&) {
                continue;
            }
            const Jet j = jet_of_expr(e, a, 2);
            CHECK(std::abs(j.coeff(1) - fd) < 1e-5);
            ++done;
        }
    }
}

TEST_CASE("jet truncation consistency") {
    const char* exprs[] = {"sin(z)+exp(sin(z))/sqrt(1+tanh(z))", "(z-2)*(z-3)*(z-5) - 2",
                           "exp(z)*cos(z)/(1+z)"};
    for (const char* text : exprs) {
        const ExprPtr e = parse(text);
        const Jet big = jet_of_expr(e, Complex(0.1, -0.2), 12);
        for (int m : {1, 3, 7, 11}) {
            const Jet small = jet_of_expr(e, Complex(0.1, -0.2), m);
            for (int k = 0; k < m; ++k) {
                CHECK(big.coeff(k).real() == small.coeff(k).real());
                CHECK(big.coeff(k).imag() == small.coeff(k).imag());
            }
        }
    }
    // A division that cancels a removable pole determines one coefficient
    // fewer; the guaranteed prefix is still consistent.
    const ExprPtr s = parse("sinc(z)*exp(z)");
    const Jet big = jet_of_expr(s, Complex(0, 0), 12);
    for (int m : {3, 7, 11}) {
        const Jet small = jet_of_expr(s, Complex(0, 0), m);
        for (int k = 0; k + 1 < m; ++k) {
            CHECK(big.coeff(k).real() == small.coeff(k).real());
            CHECK(big.coeff(k).imag() == small.coeff(k).imag());
        }
    }
}
