#include "ori/roots.hpp"

#include <algorithm>
#include <cmath>

namespace ori {

namespace {

RealRoots solve_linear(double c1, double c0, const Tolerances& tol) {
    if (std::abs(c1) <= tol.eps_sign) {
        if (std::abs(c0) <= tol.eps_sign) {
            throw IdenticallyZero("all polynomial coefficients vanish");
        }
        return {};
    }
    return {{-c0 / c1}, {1}};
}

// Merge ascending candidate roots that agree within the relative dedup
// tolerance, summing multiplicities.
RealRoots merge_sorted(std::vector<std::pair<double, int>> cand, const Tolerances& tol) {
    std::sort(cand.begin(), cand.end());
    RealRoots out;
    for (const auto& [r, mult] : cand) {
        if (!out.roots.empty() &&
            std::abs(r - out.roots.back()) <=
                tol.eps_root_dedup * std::max(1.0, std::abs(r))) {
            out.multiplicities.back() += mult;
        } else {
            out.roots.push_back(r);
            out.multiplicities.push_back(mult);
        }
    }
    return out;
}

double eval_cubic(double c3, double c2, double c1, double c0, double t) {
    return ((c3 * t + c2) * t + c1) * t + c0;
}

double eval_cubic_deriv(double c3, double c2, double c1, double t) {
    return (3 * c3 * t + 2 * c2) * t + c1;
}

double coeff_scale_at(double c3, double c2, double c1, double c0, double t) {
    const double at = std::abs(t);
    return std::abs(c3) * at * at * at + std::abs(c2) * at * at + std::abs(c1) * at +
           std::abs(c0);
}

// Damped Newton against the original coefficients. Converges linearly at
// multiple roots, which the iteration cap absorbs.
double polish_root(double c3, double c2, double c1, double c0, double t) {
    double f = eval_cubic(c3, c2, c1, c0, t);
    for (int it = 0; it < 40; ++it) {
        const double scale = coeff_scale_at(c3, c2, c1, c0, t) + 1e-300;
        if (std::abs(f) <= 1e-12 * scale) break;
        const double df = eval_cubic_deriv(c3, c2, c1, t);
        if (df == 0) break;
        double step = f / df;
        const double cap = std::max(1.0, std::abs(t));
        if (std::abs(step) > cap) step = std::copysign(cap, step);
        double tn = t - step;
        double fn = eval_cubic(c3, c2, c1, c0, tn);
        int halvings = 0;
        while (std::abs(fn) > std::abs(f) && halvings < 20) {
            step *= 0.5;
            tn = t - step;
            fn = eval_cubic(c3, c2, c1, c0, tn);
            ++halvings;
        }
        if (tn == t) break;
        t = tn;
        f = fn;
    }
    return t;
}

}  // namespace

RealRoots solve_quadratic(double c2, double c1, double c0, const Tolerances& tol) {
    detail::require_finite(c2, "quadratic c2");
    detail::require_finite(c1, "quadratic c1");
    detail::require_finite(c0, "quadratic c0");
    if (std::abs(c2) <= tol.eps_sign) {
        return solve_linear(c1, c0, tol);
    }
    const double disc = c1 * c1 - 4 * c2 * c0;
    const double mid = -c1 / (2 * c2);
    // Half-separation of the root pair; below dedup tolerance the pair
    // collapses to one double root whichever side of zero disc lies on.
    const double half = std::sqrt(std::abs(disc)) / (2 * std::abs(c2));
    if (half <= tol.eps_root_dedup * std::max(1.0, std::abs(mid))) {
        return {{mid}, {2}};
    }
    if (disc < 0) {
        return {};
    }
    // Stable split: avoid cancellation in the smaller-magnitude root.
    const double q = -0.5 * (c1 + std::copysign(std::sqrt(disc), c1 == 0 ? 1.0 : c1));
    double r1, r2;
    if (q != 0) {
        r1 = q / c2;
        r2 = c0 / q;
    } else {
        r1 = mid - half;
        r2 = mid + half;
    }
    if (r1 > r2) std::swap(r1, r2);
    return {{r1, r2}, {1, 1}};
}

RealRoots solve_cubic(double c3, double c2, double c1, double c0, const Tolerances& tol) {
    detail::require_finite(c3, "cubic c3");
    if (std::abs(c3) <= tol.eps_sign) {
        return solve_quadratic(c2, c1, c0, tol);
    }
    detail::require_finite(c2, "cubic c2");
    detail::require_finite(c1, "cubic c1");
    detail::require_finite(c0, "cubic c0");

    // Depressed form t = u - p/3 for monic t^3 + p t^2 + q t + r.
    const double p = c2 / c3;
    const double q = c1 / c3;
    const double r = c0 / c3;
    const double shift = -p / 3.0;
    const double dp = q - p * p / 3.0;
    const double dq = r + (2.0 * p * p * p - 9.0 * p * q) / 27.0;

    const double disc = -4.0 * dp * dp * dp - 27.0 * dq * dq;
    const double disc_scale =
        std::max(std::abs(4.0 * dp * dp * dp), std::abs(27.0 * dq * dq)) + 1e-300;

    std::vector<std::pair<double, int>> cand;
    const double boundary = 1e-14 * disc_scale;
    if (std::abs(disc) <= boundary) {
        if (std::abs(dp) <= 1e-12 * std::max(1.0, std::abs(dq))) {
            cand.push_back({shift, 3});  // triple root
        } else {
            cand.push_back({shift - 3.0 * dq / (2.0 * dp), 2});
            cand.push_back({shift + 3.0 * dq / dp, 1});
        }
    } else if (disc > 0) {
        // Three distinct real roots via the trigonometric form.
        const double m = 2.0 * std::sqrt(-dp / 3.0);
        const double arg = std::clamp(3.0 * dq / (dp * m), -1.0, 1.0);
        const double phi = std::acos(arg) / 3.0;
        for (int k = 0; k < 3; ++k) {
            cand.push_back({shift + m * std::cos(phi - 2.0 * M_PI * k / 3.0), 1});
        }
    } else {
        // One real root, Cardano with sign care.
        const double w = std::sqrt(dq * dq / 4.0 + dp * dp * dp / 27.0);
        const double u = std::cbrt(-dq / 2.0 + w);
        const double v = std::cbrt(-dq / 2.0 - w);
        cand.push_back({shift + u + v, 1});
    }

    for (auto& [root, mult] : cand) {
        root = polish_root(c3, c2, c1, c0, root);
    }
    return merge_sorted(std::move(cand), tol);
}

}  // namespace ori
