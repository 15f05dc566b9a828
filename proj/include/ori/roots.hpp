#pragma once

#include <vector>

#include "ori/geometry.hpp"

namespace ori {

// Real roots in strictly ascending order with algebraic multiplicities.
struct RealRoots {
    std::vector<double> roots;
    std::vector<int> multiplicities;

    std::size_t count() const { return roots.size(); }
    bool empty() const { return roots.empty(); }
};

// All real roots of c2*t^2 + c1*t + c0 = 0. Falls back to the linear case
// when |c2| <= eps_sign. A discriminant within dedup tolerance of zero is
// reported as one root of multiplicity 2. IdenticallyZero when every
// coefficient vanishes.
RealRoots solve_quadratic(double c2, double c1, double c0, const Tolerances& tol = {});

// All real roots of c3*t^3 + ... + c0 = 0, polished by damped Newton on the
// original coefficients to relative residual <= 1e-12, with near-coincident
// roots merged. Degrades to the quadratic/linear cases on vanishing leading
// coefficients. IdenticallyZero when every coefficient vanishes.
RealRoots solve_cubic(double c3, double c2, double c1, double c0, const Tolerances& tol = {});

}  // namespace ori
