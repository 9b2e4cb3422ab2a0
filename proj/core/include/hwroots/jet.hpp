#ifndef HWROOTS_JET_HPP
#define HWROOTS_JET_HPP

#include <vector>

#include "hwroots/expr.hpp"

namespace hwroots {

// Truncated power series about a center: c_0 + c_1*(z-a) + ... + c_{n-1}*(z-a)^{n-1}.
// Jets are immutable values; arithmetic requires equal order and center.
//
// Division cancels matching leading zeros of numerator and denominator
// (the removable-pole case). Coefficients with magnitude <= kZeroTol count
// as zero for that purpose. When v leading zeros cancel, the top v
// coefficients of the quotient are computed from the truncated inputs and
// carry the usual truncation inaccuracy.
class Jet {
public:
    // Magnitude below which a leading coefficient is treated as zero
    // during valuation cancellation.
    static constexpr double kZeroTol = 1e-13;

    explicit Jet(std::vector<Complex> coeffs, Complex center = Complex(0.0, 0.0));

    static Jet constant(Complex value, int order, Complex center = Complex(0.0, 0.0));
    // The identity map z as a jet: [center, 1, 0, ...].
    static Jet variable(int order, Complex center = Complex(0.0, 0.0));

    int order() const { return static_cast<int>(c_.size()); }
    Complex center() const { return center_; }
    Complex coeff(int k) const { return c_[static_cast<std::size_t>(k)]; }
    const std::vector<Complex>& coeffs() const { return c_; }

    // Index of the first coefficient with |c_k| > kZeroTol; order() if none.
    int valuation() const;

    Jet operator-() const;
    Jet operator+(const Jet& rhs) const;
    Jet operator-(const Jet& rhs) const;
    Jet operator*(const Jet& rhs) const;
    // Throws PoleError when the quotient would have a genuine pole.
    Jet operator/(const Jet& rhs) const;

    Jet operator+(Complex s) const;
    Jet operator-(Complex s) const;
    Jet operator*(Complex s) const;

private:
    std::vector<Complex> c_;
    Complex center_;
};

Jet exp(const Jet& x);
Jet log(const Jet& x);    // throws LogOfZeroSeriesError if x.coeff(0) == 0
Jet sqrt(const Jet& x);   // throws SqrtOfZeroSeriesError if x.coeff(0) == 0
Jet sin(const Jet& x);
Jet cos(const Jet& x);
Jet tan(const Jet& x);
Jet sinh(const Jet& x);
Jet cosh(const Jet& x);
Jet tanh(const Jet& x);
Jet sinc(const Jet& x);   // sin(x)/x with the removable singularity filled
// Integer exponents work for any valuation; fractional ones need a nonzero
// constant term (principal branch).
Jet pow(const Jet& x, double exponent);

// Dispatch by function tag, same functions as above.
Jet jet_call(Func fn, const Jet& x);

// Taylor jet of e about `center`, truncated to `order` coefficients.
// Errors from inner nodes (PoleError and friends) are annotated with the
// path of the offending node, e.g. "mul/div".
Jet jet_of_expr(const Expr& e, Complex center, int order);
Jet jet_of_expr(const ExprPtr& e, Complex center, int order);

}  // namespace hwroots

#endif
