#ifndef HWROOTS_HW_HPP
#define HWROOTS_HW_HPP

#include <span>
#include <string>
#include <vector>

#include "hwroots/expr.hpp"

namespace hwroots {

// One inversion query: find z with z * F(z) = y, where F nests exponentials
// of the functional parameters (outermost first). `order` is the series
// truncation order that generates root candidates.
struct HwQuery {
    std::vector<ExprPtr> params;
    Complex y = Complex(0.0, 0.0);
    int order = 10;
    Complex center = Complex(0.0, 0.0);
};

struct HwResult {
    Complex value;
    double residual = 0.0;       // |z*F(z) - y| at value
    int newton_iterations = 0;
    int candidate_count = 0;
    std::vector<std::string> warnings;
};

// Warning strings that can appear in HwResult / RootRecord.
inline constexpr const char* kWarnNewtonDivergence = "newton_divergence";
inline constexpr const char* kWarnDerivativeVanished = "newton_derivative_vanished";
inline constexpr const char* kWarnResidualAboveTolerance = "residual_above_tolerance";

// Forward map G(f_1,...,f_n; z0) = z0 * F_{n+1}(z0), with F_1 = 1 and
// F_{k+1} = exp(f_k(z0) * F_k). An empty parameter list gives z0.
Complex g_map(std::span<const ExprPtr> params, Complex z0);

// The defining function z*exp(c_1*exp(c_2*...)) - y with exp(log(u))
// rewritten to u. The canonical single-parameter index log(h(z)/z)
// collapses all the way to h(z) - y; a zero target skips the trailing
// subtraction.
ExprPtr build_fun(const HwQuery& q);

// Inverts the query: truncate the series of build_fun(q) about the center,
// harvest the roots of the truncated polynomial, pick the candidate with
// the smallest residual (ties resolved toward the center, then by
// (Re, Im)), and Newton-refine it. Throws SeriesPoleError when the
// function is not analytic at the center, NoCandidatesError when the
// truncation is constant. Divergence is reported as a warning, not an
// error. Deterministic: identical queries give bit-identical results.
HwResult hw_solve(const HwQuery& q);

// Newton refinement of `start` on fun(z) = 0 with the derivative taken
// from an order-2 jet at each iterate. Stops on relative step <= 1e-10,
// after max_iterations, or when the iterate escapes
// |z - center| > 1e6 * (1 + |center|). Shared by hw_solve and the
// enumeration re-polish; returns the best iterate seen.
struct NewtonOutcome {
    Complex value;
    double residual = 0.0;
    int iterations = 0;
    bool diverged = false;
    bool derivative_vanished = false;
};
NewtonOutcome newton_refine(const ExprPtr& fun, Complex start, Complex center,
                            int max_iterations = 1000);

}  // namespace hwroots

#endif
