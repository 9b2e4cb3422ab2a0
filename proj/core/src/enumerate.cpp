#include "hwroots/enumerate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

#include "hwroots/errors.hpp"
#include "hwroots/hw.hpp"
#include "hwroots/poly.hpp"

namespace hwroots {

Complex DeflatedFunction::eval(Complex z) const {
    Complex acc = eval_point(base, z) - target;
    for (const Complex& r : extracted) {
        const Complex d = z - r;
        if (d == Complex(0.0, 0.0)) throw EvalDomainError("deflated function evaluated at an extracted root");
        acc /= d;
    }
    return acc;
}

Jet DeflatedFunction::jet(Complex center, int order) const {
    Jet acc = jet_of_expr(base, center, order) - target;
    for (const Complex& r : extracted)
        acc = acc / (Jet::variable(order, center) - Jet::constant(r, order, center));
    return acc;
}

ExprPtr DeflatedFunction::as_expr() const {
    ExprPtr num = Expr::sub(base, Expr::constant(target));
    if (extracted.empty()) return num;
    ExprPtr den;
    for (const Complex& r : extracted) {
        ExprPtr lin = Expr::sub(Expr::variable(), Expr::constant(r));
        den = den ? Expr::mul(den, lin) : lin;
    }
    return Expr::div(num, den);
}

namespace {

std::vector<RootRecord> enumerate_core(const ExprPtr& f, Complex y, int count,
                                       const EnumerateOptions& opts, bool first_step_epsilon) {
    if (count < 1) throw InvalidCountError(count);
    if (opts.epsilon <= 0.0) throw std::invalid_argument("epsilon must be > 0");

    const ExprPtr direct = (y == Complex(0.0, 0.0))
                               ? f
                               : Expr::sub(f, Expr::constant(y));  // f - y, for re-polish

    std::vector<RootRecord> records;
    DeflatedFunction g{f, y, {}};
    int consecutive_warned = 0;

    for (int k = 0; k < count; ++k) {
        HwQuery q;
        q.order = opts.order;
        q.center = opts.center;
        if (k == 0 && !first_step_epsilon) {
            q.params = {Expr::call(Func::Log, Expr::div(f, Expr::variable()))};
            q.y = y;
        } else {
            q.params = {Expr::call(Func::Log, Expr::div(g.as_expr(), Expr::variable()))};
            q.y = Complex(opts.epsilon, 0.0);
        }

        HwResult step;
        try {
            step = hw_solve(q);
        } catch (const NoCandidatesError&) {
            break;
        } catch (const SeriesPoleError&) {
            if (k == 0) throw;  // f itself is singular at the center
            break;
        }

        // Undo deflation drift: polish on f - y, not on g_k.
        NewtonOutcome polished = newton_refine(direct, step.value, opts.center);

        RootRecord rec;
        rec.value = polished.value;
        rec.residual = polished.residual;
        rec.order_found = k + 1;
        rec.warnings = step.warnings;
        if (polished.diverged) rec.warnings.push_back(kWarnNewtonDivergence);

        records.push_back(rec);
        g.extracted.push_back(polished.value);

        const bool warned = !step.warnings.empty() || polished.diverged;
        consecutive_warned = warned ? consecutive_warned + 1 : 0;
        if (consecutive_warned >= 2) break;
    }
    return records;
}

}  // namespace

std::vector<RootRecord> enumerate_roots(const ExprPtr& f, Complex y, int count,
                                        const EnumerateOptions& opts) {
    // With a zero target the direct form would short-circuit to z = 0;
    // use the epsilon form for the first step as well.
    const bool first_eps = (y == Complex(0.0, 0.0));
    return enumerate_core(f, y, count, opts, first_eps);
}

std::vector<RootRecord> enumerate_rational(const ExprPtr& P, const ExprPtr& Q, Complex y,
                                           int count, const EnumerateOptions& opts) {
    const auto deg_p = polynomial_degree(*P);
    const auto deg_q = polynomial_degree(*Q);
    if (!deg_p || !deg_q)
        throw std::invalid_argument("enumerate_rational requires polynomial P and Q");

    ExprPtr F = Expr::sub(P, Expr::mul(Expr::constant(y), Q));

    const int probe_order = std::max({*deg_p, *deg_q, 1}) + 2;
    if (Poly(jet_of_expr(Q, opts.center, probe_order).coeffs()).is_zero())
        throw std::invalid_argument("enumerate_rational requires a nonzero Q");

    // Constant F (after coefficient cancellation) has nothing to invert.
    const Poly f_poly(jet_of_expr(F, opts.center, probe_order).coeffs());
    if (f_poly.degree() < 1) throw DegenerateRationalError();

    std::vector<RootRecord> records = enumerate_core(F, Complex(0.0, 0.0), count, opts, true);

    std::vector<RootRecord> kept;
    for (RootRecord rec : records) {
        const Complex qv = eval_point(Q, rec.value);
        if (std::abs(qv) <= 1e-8) continue;  // common zero of F and Q, spurious
        const Complex pv = eval_point(P, rec.value);
        rec.residual = std::abs(pv / qv - y);
        kept.push_back(std::move(rec));
    }
    return kept;
}

std::vector<RootRecord> cluster_multiplicities(const std::vector<RootRecord>& roots, double tol) {
    if (tol <= 0.0) throw std::invalid_argument("cluster tolerance must be > 0");
    const std::size_t n = roots.size();
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t i) {
        while (parent[i] != i) i = parent[i] = parent[parent[i]];
        return i;
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (std::abs(roots[i].value - roots[j].value) <= tol) parent[find(i)] = find(j);

    std::vector<RootRecord> out;
    std::vector<bool> done(n, false);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t root = find(i);
        if (done[root]) continue;
        done[root] = true;
        RootRecord merged;
        Complex sum(0.0, 0.0);
        int size = 0;
        merged.order_found = 0;
        for (std::size_t j = 0; j < n; ++j) {
            if (find(j) != root) continue;
            sum += roots[j].value;
            ++size;
            merged.residual = std::max(merged.residual, roots[j].residual);
            merged.order_found = merged.order_found == 0
                                     ? roots[j].order_found
                                     : std::min(merged.order_found, roots[j].order_found);
            for (const auto& w : roots[j].warnings)
                if (std::find(merged.warnings.begin(), merged.warnings.end(), w) == merged.warnings.end())
                    merged.warnings.push_back(w);
        }
        merged.value = sum / static_cast<double>(size);
        merged.multiplicity = size;
        out.push_back(std::move(merged));
    }
    std::sort(out.begin(), out.end(),
              [](const RootRecord& a, const RootRecord& b) { return a.order_found < b.order_found; });
    return out;
}

}  // namespace hwroots
