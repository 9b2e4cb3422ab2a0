#include "hwroots/poly.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace hwroots {

namespace {
constexpr double kTrimTol = 1e-13;
constexpr double kUpdateTol = 1e-13;
constexpr int kMaxSweeps = 500;
}  // namespace

Poly::Poly(std::vector<Complex> ascending_coeffs) : c_(std::move(ascending_coeffs)) {
    if (c_.empty()) c_.push_back(Complex(0.0, 0.0));
    double maxmag = 0.0;
    for (const auto& v : c_) maxmag = std::max(maxmag, std::abs(v));
    const double tol = kTrimTol * maxmag;
    while (c_.size() > 1 && std::abs(c_.back()) <= tol) c_.pop_back();
}

bool Poly::is_zero() const { return c_.size() == 1 && c_[0] == Complex(0.0, 0.0); }

Complex Poly::eval(Complex z) const {
    Complex acc(0.0, 0.0);
    for (std::size_t k = c_.size(); k-- > 0;) acc = acc * z + c_[k];
    return acc;
}

Complex Poly::derivative_at(Complex z) const {
    Complex acc(0.0, 0.0);
    for (std::size_t k = c_.size(); k-- > 1;) acc = acc * z + static_cast<double>(k) * c_[k];
    return acc;
}

RootsResult all_roots(const Poly& p) {
    const int d = p.degree();
    if (d < 1) throw std::invalid_argument("all_roots requires degree >= 1");

    RootsResult result;
    if (d == 1) {
        result.roots.push_back(-p.coeff(0) / p.coeff(1));
        return result;
    }

    // Cauchy-style bound, guesses scattered at non-symmetric angles.
    const Complex lead = p.coeff(d);
    double radius = 0.0;
    for (int k = 0; k < d; ++k) radius = std::max(radius, std::abs(p.coeff(k) / lead));
    radius += 1.0;

    std::vector<Complex> roots(static_cast<std::size_t>(d));
    for (int j = 0; j < d; ++j) {
        const double theta = 2.0 * std::numbers::pi * j / d + 0.4;
        roots[static_cast<std::size_t>(j)] = radius * Complex(std::cos(theta), std::sin(theta));
    }

    bool converged = false;
    int sweep = 0;
    for (; sweep < kMaxSweeps; ++sweep) {
        double max_update = 0.0;
        double max_rel_residual = 0.0;
        for (int i = 0; i < d; ++i) {
            const Complex zi = roots[static_cast<std::size_t>(i)];
            const Complex pv = p.eval(zi);
            const Complex dv = p.derivative_at(zi);

            // Backward-error scale: sum |c_k||z|^k.
            double scale = 0.0;
            double zp = 1.0;
            const double az = std::abs(zi);
            for (int k = 0; k <= d; ++k) {
                scale += std::abs(p.coeff(k)) * zp;
                zp *= az;
            }
            max_rel_residual = std::max(max_rel_residual, std::abs(pv) / std::max(scale, 1e-300));

            Complex newton = (dv == Complex(0.0, 0.0)) ? Complex(0.0, 0.0) : pv / dv;
            Complex repulsion(0.0, 0.0);
            for (int j = 0; j < d; ++j) {
                if (j == i) continue;
                const Complex diff = zi - roots[static_cast<std::size_t>(j)];
                if (diff != Complex(0.0, 0.0)) repulsion += 1.0 / diff;
            }
            Complex denom = 1.0 - newton * repulsion;
            Complex step = (denom == Complex(0.0, 0.0)) ? newton : newton / denom;
            if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) {
                // Colliding iterates; nudge deterministically and move on.
                roots[static_cast<std::size_t>(i)] = zi * 1.1 + Complex(0.1, 0.05);
                max_update = std::max(max_update, 1.0);
                continue;
            }
            roots[static_cast<std::size_t>(i)] = zi - step;
            max_update = std::max(max_update, std::abs(step));
        }
        if (max_update < kUpdateTol || max_rel_residual <= 8.0 * 1e-16) {
            converged = true;
            ++sweep;
            break;
        }
    }

    // Two Newton polish steps per root.
    for (auto& r : roots) {
        for (int it = 0; it < 2; ++it) {
            const Complex dv = p.derivative_at(r);
            if (dv == Complex(0.0, 0.0)) break;
            const Complex step = p.eval(r) / dv;
            if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) break;
            r -= step;
        }
    }

    result.roots = std::move(roots);
    result.converged = converged;
    result.sweeps = sweep;
    return result;
}

DeflationResult poly_deflate_linear(const Poly& p, Complex r) {
    const int d = p.degree();
    if (d < 1) throw std::invalid_argument("poly_deflate_linear requires degree >= 1");
    std::vector<Complex> q(static_cast<std::size_t>(d), Complex(0.0, 0.0));
    Complex carry = p.coeff(d);
    for (int k = d - 1; k >= 0; --k) {
        q[static_cast<std::size_t>(k)] = carry;
        carry = p.coeff(k) + r * carry;
    }
    return DeflationResult{Poly(std::move(q)), carry};
}

}  // namespace hwroots
