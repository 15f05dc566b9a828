#pragma once

#include <string_view>
#include <variant>
#include <vector>

#include "ori/geometry.hpp"
#include "ori/roots.hpp"
#include "ori/similarity.hpp"

namespace ori {

// Incidence constraints between an object and a reflected image.
// I1: image of p coincides with q          (codimension 2)
// I2: image of m coincides with n          (codimension 2)
// I3: image of p lies on m, p off m        (codimension 1)
// I4: p is fixed                            (codimension 1)
// I5: m maps to itself with halves swapped  (codimension 1)
// I6: m maps to itself pointwise            (codimension 2)
struct IncPointToPoint {
    Point p, q;
};
struct IncLineToLine {
    Line m, n;
};
struct IncPointToLine {
    Point p;
    Line m;
};
struct IncPointFixed {
    Point p;
};
struct IncLineSwapped {
    Line m;
};
struct IncLineFixed {
    Line m;
};

using Incidence = std::variant<IncPointToPoint, IncLineToLine, IncPointToLine,
                               IncPointFixed, IncLineSwapped, IncLineFixed>;

Incidence make_point_to_point(const Point& p, const Point& q, const Tolerances& tol = {});
Incidence make_line_to_line(const Line& m, const Line& n, const Tolerances& tol = {});
Incidence make_point_to_line(const Point& p, const Line& m, const Tolerances& tol = {});

// Fold-line degrees of freedom consumed by the constraint.
int codimension(const Incidence& inc);

// The eight single-fold operations, each a constraint set of total
// codimension 2.
struct OpFoldPointToPoint {  // O1
    Point p, q;
};
struct OpFoldLineToLine {  // O2
    Line m, n;
};
struct OpFoldAlongLine {  // O3
    Line m;
};
struct OpFoldThroughTwoPoints {  // O4
    Point p, q;
};
struct OpFoldPerpendicularThroughPoint {  // O5
    Point p;
    Line m;
};
struct OpFoldPointToLineThroughPoint {  // O6
    Point p;
    Line m;
    Point q;
};
struct OpFoldTwoPointsToTwoLines {  // O7
    Point p;
    Line m;
    Point q;
    Line n;
};
struct OpFoldPointToLinePerpendicular {  // O8
    Point p;
    Line m;
    Line n;
};

using OpInstance =
    std::variant<OpFoldPointToPoint, OpFoldLineToLine, OpFoldAlongLine,
                 OpFoldThroughTwoPoints, OpFoldPerpendicularThroughPoint,
                 OpFoldPointToLineThroughPoint, OpFoldTwoPointsToTwoLines,
                 OpFoldPointToLinePerpendicular>;

// One variant per operation; a doubled half-swap constraint is not
// representable, matching its lack of a finite solution set.
static_assert(std::variant_size_v<OpInstance> == 8);

// 1-based operation number and its "O<n>" name.
int op_number(const OpInstance& inst);
std::string_view op_name(const OpInstance& inst);

// Throws InvalidInstance unless the operation's preconditions hold.
void validate_instance(const OpInstance& inst, const Tolerances& tol = {});

enum class NoSolutionReason {
    none,
    q_closer_to_focus,         // O6 with the through-point inside the parabola
    theorem_one_violated,      // O7 with parallel targets too far apart
    parallel_directrix_target  // O8 with m parallel to n
};

std::string_view to_string(NoSolutionReason reason);

// Fold lines solving an instance: deduplicated, deterministically ordered by
// (direction angle, c), with algebraic multiplicities.
struct SolutionSet {
    std::vector<Line> fold_lines;
    std::vector<int> multiplicities;
    NoSolutionReason condition_note = NoSolutionReason::none;

    std::size_t count() const { return fold_lines.size(); }
    bool empty() const { return fold_lines.empty(); }
};

struct Parabola {
    Point focus;
    Line directrix;

    Parabola(const Point& focus, const Line& directrix, const Tolerances& tol = {});
};

// Tangent family of the canonical parabola y = x^2/4 (focus (0,1), directrix
// y = -1): the line through (t/2, 0) with slope t/2, tangent at (t, t^2/4).
Line fold_line_from_t(double t, const Tolerances& tol = {});

// The same family for an arbitrary parabola, mapped out of its canonical frame.
Line tangent_at(const Parabola& psi, double t, const Tolerances& tol = {});

enum class Existence { always_solvable, solvable, not_solvable };

// Solvability from operand positions alone: O1-O5 are unconditional, O6 needs
// dist(p, q) >= dist(q, m), O7 needs dist(p, q) >= dist(m, n) (zero for
// intersecting lines), O8 needs m not parallel to n.
Existence existence_condition(const OpInstance& inst, const Tolerances& tol = {});

SolutionSet solve(const OpInstance& inst, const Tolerances& tol = {});

// True iff every incidence constraint of the instance holds for chi within
// eps_incidence.
bool verify(const OpInstance& inst, const Line& chi, const Tolerances& tol = {});

}  // namespace ori
