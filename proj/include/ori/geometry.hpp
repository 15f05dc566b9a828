#pragma once

#include <cmath>

#include "ori/errors.hpp"

namespace ori {

// Tolerance knobs threaded through every predicate. All strictly positive.
struct Tolerances {
    double eps_incidence = 1e-9;   // point-on-line, point equality, line equality
    double eps_parallel = 1e-12;   // on |a1*b2 - a2*b1|
    double eps_root_dedup = 1e-7;  // relative, for merging near-coincident roots
    double eps_sign = 1e-12;       // canonical-sign band and degeneracy checks

    bool valid() const {
        return eps_incidence > 0 && eps_parallel > 0 && eps_root_dedup > 0 && eps_sign > 0;
    }
};

struct Point {
    double x = 0;
    double y = 0;

    Point() = default;
    Point(double x, double y);
};

// Infinite line a*x + b*y + c = 0 with unit normal (a, b) and canonical sign:
// a > eps_sign, or |a| <= eps_sign and b > 0. Equal lines therefore carry
// comparable coefficients. Construction normalizes; a = b = 0 is an error.
class Line {
public:
    Line() = default;  // the x-axis, y = 0
    Line(double a, double b, double c, const Tolerances& tol = {});

    double a() const { return a_; }
    double b() const { return b_; }
    double c() const { return c_; }

private:
    double a_ = 0;
    double b_ = 1;
    double c_ = 0;
};

Line normalize_line(double a, double b, double c, const Tolerances& tol = {});

// Line through two distinct points. DegenerateLine if p == q within eps_incidence.
Line line_through(const Point& p, const Point& q, const Tolerances& tol = {});

// Signed distance of p from m; |.| is the true distance since normals are unit.
double signed_distance(const Point& p, const Line& m);

double distance(const Point& p, const Point& q);
double distance(const Point& p, const Line& m);

// Distance between parallel lines; NotParallel otherwise.
double parallel_line_distance(const Line& m, const Line& n, const Tolerances& tol = {});

bool lines_parallel(const Line& m, const Line& n, const Tolerances& tol = {});
bool lines_equal(const Line& m, const Line& n, const Tolerances& tol = {});
bool point_on_line(const Point& p, const Line& m, const Tolerances& tol = {});
bool points_equal(const Point& p, const Point& q, const Tolerances& tol = {});

// Max coefficient delta between canonical representatives.
double line_distance(const Line& m, const Line& n);

// Direction angle in [0, pi); together with c this orders solution sets.
double direction_angle(const Line& m);

// Intersection point; ParallelLines if none.
Point intersect(const Line& m, const Line& n, const Tolerances& tol = {});

// Mirror image of p across chi. Points on chi (within eps_incidence) map to
// themselves exactly.
Point reflect_point(const Point& p, const Line& chi, const Tolerances& tol = {});

// Mirror image of m across chi, built from the images of two points of m.
Line reflect_line(const Line& m, const Line& chi, const Tolerances& tol = {});

namespace detail {
void require_finite(double v, const char* what);
}

}  // namespace ori
