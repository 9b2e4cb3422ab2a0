#ifndef HWROOTS_POLY_HPP
#define HWROOTS_POLY_HPP

#include <vector>

#include "hwroots/expr.hpp"

namespace hwroots {

// Dense complex polynomial, coefficients in ascending degree. Trailing
// coefficients with |c| <= 1e-13 * max|c_k| are trimmed on construction.
// The zero polynomial is representable as the single coefficient 0.
class Poly {
public:
    explicit Poly(std::vector<Complex> ascending_coeffs);

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<Complex>& coefficients() const { return c_; }
    Complex coeff(int k) const { return c_[static_cast<std::size_t>(k)]; }
    bool is_zero() const;

    Complex eval(Complex z) const;
    Complex derivative_at(Complex z) const;

private:
    std::vector<Complex> c_;
};

struct RootsResult {
    std::vector<Complex> roots;  // exactly degree() entries, with multiplicity
    bool converged = true;       // false after 500 sweeps without convergence
    int sweeps = 0;
};

// All complex roots by Aberth-Ehrlich simultaneous iteration. Initial
// guesses sit on a circle of radius 1 + max|c_k/c_deg| at angles offset by
// 0.4 rad; iteration stops when the largest component update drops below
// 1e-13, when every residual reaches rounding level (multiple roots stall
// the update criterion), or after 500 sweeps (result flagged). Each root is
// polished with two Newton steps.
RootsResult all_roots(const Poly& p);

struct DeflationResult {
    Poly quotient;
    Complex remainder;  // |remainder| is the caller's quality diagnostic
};

// Synthetic division by (z - r).
DeflationResult poly_deflate_linear(const Poly& p, Complex r);

}  // namespace hwroots

#endif
