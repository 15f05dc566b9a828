#include "ori/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace ori {

namespace detail {

void require_finite(double v, const char* what) {
    if (!std::isfinite(v)) {
        throw NonFinite(std::string(what) + " is not finite");
    }
}

}  // namespace detail

Point::Point(double x, double y) : x(x), y(y) {
    detail::require_finite(x, "point x");
    detail::require_finite(y, "point y");
}

Line::Line(double a, double b, double c, const Tolerances& tol) {
    detail::require_finite(a, "line a");
    detail::require_finite(b, "line b");
    detail::require_finite(c, "line c");
    const double n2 = a * a + b * b;
    if (n2 <= tol.eps_sign * tol.eps_sign) {
        throw DegenerateLine("line coefficients have no normal direction");
    }
    // Skip the division when already unit so renormalization is bit-exact.
    if (std::abs(n2 - 1.0) > 4e-16) {
        const double n = std::sqrt(n2);
        a /= n;
        b /= n;
        c /= n;
    }
    if (!(a > tol.eps_sign || (std::abs(a) <= tol.eps_sign && b > 0))) {
        a = -a;
        b = -b;
        c = -c;
    }
    detail::require_finite(c, "normalized line c");
    a_ = a;
    b_ = b;
    c_ = c;
}

Line normalize_line(double a, double b, double c, const Tolerances& tol) {
    return Line(a, b, c, tol);
}

Line line_through(const Point& p, const Point& q, const Tolerances& tol) {
    if (points_equal(p, q, tol)) {
        throw DegenerateLine("line through coincident points");
    }
    const double a = q.y - p.y;
    const double b = p.x - q.x;
    return Line(a, b, -(a * p.x + b * p.y), tol);
}

double signed_distance(const Point& p, const Line& m) {
    return m.a() * p.x + m.b() * p.y + m.c();
}

double distance(const Point& p, const Point& q) {
    return std::hypot(p.x - q.x, p.y - q.y);
}

double distance(const Point& p, const Line& m) {
    return std::abs(signed_distance(p, m));
}

bool lines_parallel(const Line& m, const Line& n, const Tolerances& tol) {
    return std::abs(m.a() * n.b() - n.a() * m.b()) <= tol.eps_parallel;
}

double parallel_line_distance(const Line& m, const Line& n, const Tolerances& tol) {
    if (!lines_parallel(m, n, tol)) {
        throw NotParallel("distance between non-parallel lines");
    }
    // Canonical form aligns the normals of parallel lines.
    return std::abs(m.c() - n.c());
}

bool lines_equal(const Line& m, const Line& n, const Tolerances& tol) {
    return line_distance(m, n) <= tol.eps_incidence;
}

bool point_on_line(const Point& p, const Line& m, const Tolerances& tol) {
    return distance(p, m) <= tol.eps_incidence;
}

bool points_equal(const Point& p, const Point& q, const Tolerances& tol) {
    return distance(p, q) <= tol.eps_incidence;
}

double line_distance(const Line& m, const Line& n) {
    return std::max({std::abs(m.a() - n.a()), std::abs(m.b() - n.b()),
                     std::abs(m.c() - n.c())});
}

double direction_angle(const Line& m) {
    double th = std::atan2(-m.a(), m.b());
    if (th < 0) th += M_PI;
    if (th >= M_PI) th -= M_PI;
    return th;
}

Point intersect(const Line& m, const Line& n, const Tolerances& tol) {
    const double det = m.a() * n.b() - n.a() * m.b();
    if (std::abs(det) <= tol.eps_parallel) {
        throw ParallelLines("intersection of parallel lines");
    }
    return Point((m.b() * n.c() - n.b() * m.c()) / det,
                 (n.a() * m.c() - m.a() * n.c()) / det);
}

Point reflect_point(const Point& p, const Line& chi, const Tolerances& tol) {
    const double s = signed_distance(p, chi);
    if (std::abs(s) <= tol.eps_incidence) {
        return p;
    }
    return Point(p.x - 2 * s * chi.a(), p.y - 2 * s * chi.b());
}

Line reflect_line(const Line& m, const Line& chi, const Tolerances& tol) {
    // Two well-separated points of m; their images span the reflected line.
    const Point p0(-m.c() * m.a(), -m.c() * m.b());
    const double step = std::max(1.0, std::abs(m.c()));
    const Point p1(p0.x - step * m.b(), p0.y + step * m.a());
    const Point r0 = reflect_point(p0, chi, tol);
    const Point r1 = reflect_point(p1, chi, tol);
    return line_through(r0, r1, tol);
}

}  // namespace ori
