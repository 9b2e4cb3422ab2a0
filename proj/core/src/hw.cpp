#include "hwroots/hw.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "hwroots/errors.hpp"
#include "hwroots/jet.hpp"
#include "hwroots/poly.hpp"

namespace hwroots {

namespace {

// Residuals below this floor are indistinguishable rounding noise; among
// such candidates the tie-break (|z - center|, Re, Im) decides.
double residual_floor(Complex y) { return 1e-11 * (1.0 + std::abs(y)); }

double eval_abs_or_inf(const ExprPtr& fun, Complex z) {
    try {
        const Complex v = eval_point(fun, z);
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            return std::numeric_limits<double>::infinity();
        return std::abs(v);
    } catch (const EvalDomainError&) {
        return std::numeric_limits<double>::infinity();
    }
}

void validate(const HwQuery& q) {
    if (q.params.empty())
        throw std::invalid_argument("HwQuery needs at least one functional parameter");
    if (q.order < 2)
        throw std::invalid_argument("HwQuery order must be >= 2");
}

}  // namespace

Complex g_map(std::span<const ExprPtr> params, Complex z0) {
    Complex f(1.0, 0.0);
    for (std::size_t i = params.size(); i-- > 0;)
        f = std::exp(eval_point(params[i], z0) * f);
    return z0 * f;
}

ExprPtr build_fun(const HwQuery& q) {
    validate(q);
    ExprPtr nest;
    for (std::size_t i = q.params.size(); i-- > 0;)
        nest = nest ? Expr::call(Func::Exp, Expr::mul(q.params[i], nest))
                    : Expr::call(Func::Exp, q.params[i]);
    ExprPtr fun = simplify_exp_log(Expr::mul(Expr::variable(), nest));

    // z*(u/z) has a removable factor; drop it so the result is the plain
    // h(z) for the canonical index log(h(z)/z).
    if (const auto* m = std::get_if<Expr::Binary>(&fun->node());
        m && m->op == BinaryOp::Mul &&
        std::holds_alternative<Expr::Variable>(m->lhs->node())) {
        if (const auto* d = std::get_if<Expr::Binary>(&m->rhs->node());
            d && d->op == BinaryOp::Div &&
            std::holds_alternative<Expr::Variable>(d->rhs->node())) {
            fun = d->lhs;
        }
    }

    if (q.y != Complex(0.0, 0.0))
        fun = Expr::sub(fun, Expr::constant(q.y));
    return fun;
}

NewtonOutcome newton_refine(const ExprPtr& fun, Complex start, Complex center,
                            int max_iterations) {
    NewtonOutcome out;
    out.value = start;
    out.residual = eval_abs_or_inf(fun, start);
    const double escape = 1e6 * (1.0 + std::abs(center));

    Complex z = start;
    for (int it = 0; it < max_iterations; ++it) {
        Complex fv, dv;
        try {
            Jet local = jet_of_expr(fun, z, 2);
            fv = local.coeff(0);
            dv = local.coeff(1);
        } catch (const PoleError&) {
            // Iterate landed on a pole of the written form.
            out.diverged = true;
            break;
        }
        if (dv == Complex(0.0, 0.0)) {
            out.derivative_vanished = true;
            break;
        }
        const Complex step = fv / dv;
        if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) {
            out.diverged = true;
            break;
        }
        const Complex next = z - step;
        ++out.iterations;

        const double r = eval_abs_or_inf(fun, next);
        if (r <= out.residual) {
            out.value = next;
            out.residual = r;
        }
        if (std::abs(next - center) > escape) {
            z = next;
            out.diverged = true;
            break;
        }
        const double denom = std::max(std::abs(z), 1e-300);
        z = next;
        if (std::abs(step) / denom <= 1e-10) break;
    }
    return out;
}

HwResult hw_solve(const HwQuery& q) {
    validate(q);

    // HW(...; 0) = 0 identically.
    if (q.y == Complex(0.0, 0.0))
        return HwResult{Complex(0.0, 0.0), 0.0, 0, 0, {}};

    const ExprPtr fun = build_fun(q);

    Jet series = [&] {
        try {
            return jet_of_expr(fun, q.center, q.order);
        } catch (const PoleError& e) {
            std::string where = e.path.empty() ? std::string() : " [at " + e.path + "]";
            throw SeriesPoleError(std::string(e.what()) + where);
        }
    }();

    const Poly truncated(series.coeffs());
    if (truncated.degree() < 1) throw NoCandidatesError();

    // Roots of the truncated polynomial live in the (z - center) offset.
    const RootsResult candidates = all_roots(truncated);

    const double floor_tol = residual_floor(q.y);
    Complex best;
    double best_res = std::numeric_limits<double>::infinity();
    double best_dist = 0.0;
    bool have_best = false;
    for (const Complex& w : candidates.roots) {
        const Complex zc = q.center + w;
        const double res = eval_abs_or_inf(fun, zc);
        const double dist = std::abs(w);
        const double res_key = std::max(res, floor_tol);
        const double best_key = std::max(best_res, floor_tol);
        bool better = false;
        if (!have_best) {
            better = true;
        } else if (res_key < best_key) {
            better = true;
        } else if (res_key == best_key) {
            if (dist < best_dist) better = true;
            else if (dist == best_dist) {
                if (zc.real() < best.real()) better = true;
                else if (zc.real() == best.real() && zc.imag() < best.imag()) better = true;
            }
        }
        if (better) {
            best = zc;
            best_res = res;
            best_dist = dist;
            have_best = true;
        }
    }

    HwResult result;
    result.candidate_count = static_cast<int>(candidates.roots.size());

    NewtonOutcome refined = newton_refine(fun, best, q.center);
    result.value = refined.value;
    result.residual = refined.residual;
    result.newton_iterations = refined.iterations;
    if (refined.diverged) result.warnings.push_back(kWarnNewtonDivergence);
    if (refined.derivative_vanished) result.warnings.push_back(kWarnDerivativeVanished);
    if (result.warnings.empty() && result.residual > 1e-8 * (1.0 + std::abs(q.y)))
        result.warnings.push_back(kWarnResidualAboveTolerance);
    return result;
}

}  // namespace hwroots
