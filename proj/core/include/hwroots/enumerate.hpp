#ifndef HWROOTS_ENUMERATE_HPP
#define HWROOTS_ENUMERATE_HPP

#include <string>
#include <vector>

#include "hwroots/expr.hpp"
#include "hwroots/jet.hpp"

namespace hwroots {

// g_k(z) = (f(z) - y) / prod_{j<=k} (z - z_j), kept implicit: evaluation
// divides at the point (or in jets, with valuation cancellation); the
// quotient is never expanded.
struct DeflatedFunction {
    ExprPtr base;                    // f
    Complex target;                  // y
    std::vector<Complex> extracted;  // z_1 ... z_k

    Complex eval(Complex z) const;
    Jet jet(Complex center, int order) const;
    // The quotient as an expression tree (still unexpanded):
    // (f - y) / ((z - z_1)*...*(z - z_k)).
    ExprPtr as_expr() const;
};

struct RootRecord {
    Complex value;
    double residual = 0.0;  // |f(value) - y| after the direct re-polish
    int multiplicity = 1;
    int order_found = 0;    // 1-based extraction step
    std::vector<std::string> warnings;
};

struct EnumerateOptions {
    int order = 10;          // series truncation order
    double epsilon = 1e-20;  // stand-in for the one-sided limit target
    Complex center = Complex(0.0, 0.0);
};

// Enumerates roots of f(z) = y by repeated inversion and deflation:
// the first root from the index log(f(z)/z) at target y, later roots from
// log(g_k(z)/z) at target epsilon. Every root is re-polished by Newton on
// f - y directly before reporting. Stops early on NoCandidates or after
// two consecutive warned steps and returns what was found. Throws
// SeriesPoleError if f is singular at the center, InvalidCountError for
// count < 1.
std::vector<RootRecord> enumerate_roots(const ExprPtr& f, Complex y, int count,
                                        const EnumerateOptions& opts = {});

// Rational variant: enumerates roots of F = P - y*Q at target 0 (every
// step through the epsilon form), then drops roots where Q also vanishes
// (within 1e-8). Residuals are reported against P/Q - y. Throws
// DegenerateRationalError when F is constant.
std::vector<RootRecord> enumerate_rational(const ExprPtr& P, const ExprPtr& Q, Complex y,
                                           int count, const EnumerateOptions& opts = {});

// Single-linkage clustering of near-coincident roots at distance `tol`.
// Each cluster becomes one record: centroid value, multiplicity = size,
// residual = max over members, order_found = earliest member.
std::vector<RootRecord> cluster_multiplicities(const std::vector<RootRecord>& roots, double tol);

}  // namespace hwroots

#endif
