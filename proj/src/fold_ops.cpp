#include "ori/fold_ops.hpp"

#include <algorithm>
#include <cmath>

namespace ori {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

struct Candidate {
    Line line;
    int mult;
};

SolutionSet assemble(std::vector<Candidate> cand, NoSolutionReason reason,
                     const Tolerances& tol) {
    std::stable_sort(cand.begin(), cand.end(), [](const Candidate& x, const Candidate& y) {
        const double tx = direction_angle(x.line);
        const double ty = direction_angle(y.line);
        if (tx != ty) return tx < ty;
        return x.line.c() < y.line.c();
    });
    SolutionSet out;
    for (const auto& c : cand) {
        if (!out.fold_lines.empty() && lines_equal(out.fold_lines.back(), c.line, tol)) {
            out.multiplicities.back() += c.mult;
        } else {
            out.fold_lines.push_back(c.line);
            out.multiplicities.push_back(c.mult);
        }
    }
    out.condition_note = out.fold_lines.empty() ? reason : NoSolutionReason::none;
    return out;
}

// Perpendicular bisector of pq.
Line perpendicular_bisector(const Point& p, const Point& q, const Tolerances& tol) {
    const double a = q.x - p.x;
    const double b = q.y - p.y;
    const double mx = (p.x + q.x) / 2;
    const double my = (p.y + q.y) / 2;
    return Line(a, b, -(a * mx + b * my), tol);
}

// Perpendicular to m through p: the fold normal is m's direction.
Line perpendicular_through(const Point& p, const Line& m, const Tolerances& tol) {
    const double a = -m.b();
    const double b = m.a();
    return Line(a, b, -(a * p.x + b * p.y), tol);
}

// Coefficients of the parameter polynomial for placing q_c on n_c while
// staying tangent to the canonical parabola: substituting the reflected image
// of q_c across the tangent at parameter t into n_c's equation and clearing
// the positive factor 1 + t^2/4 gives a polynomial of degree <= 3 in t.
struct TangencyPoly {
    double c3, c2, c1, c0;
};

TangencyPoly tangency_polynomial(const Point& q_c, const Line& n_c) {
    const double a = n_c.a();
    const double b = n_c.b();
    const double c = n_c.c();
    const double lift = a * q_c.x + b * q_c.y + c;
    return {a / 4.0,
            lift / 4.0 - b / 2.0 - a * q_c.x / 2.0,
            b * q_c.x + a * q_c.y,
            a * q_c.x - b * q_c.y + c};
}

bool chi_perpendicular_to(const Line& chi, const Line& n, const Tolerances& tol) {
    return std::abs(chi.a() * n.a() + chi.b() * n.b()) <= tol.eps_incidence;
}

}  // namespace

Incidence make_point_to_point(const Point& p, const Point& q, const Tolerances& tol) {
    if (points_equal(p, q, tol)) {
        throw InvalidInstance("point-to-point incidence needs distinct points");
    }
    return IncPointToPoint{p, q};
}

Incidence make_line_to_line(const Line& m, const Line& n, const Tolerances& tol) {
    if (lines_equal(m, n, tol)) {
        throw InvalidInstance("line-to-line incidence needs distinct lines");
    }
    return IncLineToLine{m, n};
}

Incidence make_point_to_line(const Point& p, const Line& m, const Tolerances& tol) {
    if (point_on_line(p, m, tol)) {
        throw InvalidInstance("point-to-line incidence needs the point off the line");
    }
    return IncPointToLine{p, m};
}

int codimension(const Incidence& inc) {
    return std::visit(Overloaded{[](const IncPointToPoint&) { return 2; },
                                 [](const IncLineToLine&) { return 2; },
                                 [](const IncPointToLine&) { return 1; },
                                 [](const IncPointFixed&) { return 1; },
                                 [](const IncLineSwapped&) { return 1; },
                                 [](const IncLineFixed&) { return 2; }},
                      inc);
}

int op_number(const OpInstance& inst) {
    return static_cast<int>(inst.index()) + 1;
}

std::string_view op_name(const OpInstance& inst) {
    static constexpr std::string_view names[] = {"O1", "O2", "O3", "O4",
                                                 "O5", "O6", "O7", "O8"};
    return names[inst.index()];
}

void validate_instance(const OpInstance& inst, const Tolerances& tol) {
    std::visit(
        Overloaded{
            [&](const OpFoldPointToPoint& op) {
                if (points_equal(op.p, op.q, tol))
                    throw InvalidInstance("O1 needs distinct points");
            },
            [&](const OpFoldLineToLine& op) {
                if (lines_equal(op.m, op.n, tol))
                    throw InvalidInstance("O2 needs distinct lines");
            },
            [&](const OpFoldAlongLine&) {},
            [&](const OpFoldThroughTwoPoints& op) {
                if (points_equal(op.p, op.q, tol))
                    throw InvalidInstance("O4 needs distinct points");
            },
            [&](const OpFoldPerpendicularThroughPoint&) {},
            [&](const OpFoldPointToLineThroughPoint& op) {
                if (point_on_line(op.p, op.m, tol))
                    throw InvalidInstance("O6 needs p off m");
            },
            [&](const OpFoldTwoPointsToTwoLines& op) {
                if (point_on_line(op.p, op.m, tol))
                    throw InvalidInstance("O7 needs p off m");
                if (point_on_line(op.q, op.n, tol))
                    throw InvalidInstance("O7 needs q off n");
                if (points_equal(op.p, op.q, tol) && lines_equal(op.m, op.n, tol))
                    throw InvalidInstance("O7 needs p != q or m != n");
            },
            [&](const OpFoldPointToLinePerpendicular& op) {
                if (point_on_line(op.p, op.m, tol))
                    throw InvalidInstance("O8 needs p off m");
            }},
        inst);
}

std::string_view to_string(NoSolutionReason reason) {
    switch (reason) {
        case NoSolutionReason::none: return "none";
        case NoSolutionReason::q_closer_to_focus: return "q closer to focus than to directrix";
        case NoSolutionReason::theorem_one_violated: return "points closer than the parallel target lines";
        case NoSolutionReason::parallel_directrix_target: return "directrix parallel to target line";
    }
    return "none";
}

Parabola::Parabola(const Point& focus, const Line& directrix, const Tolerances& tol)
    : focus(focus), directrix(directrix) {
    if (point_on_line(focus, directrix, tol)) {
        throw PointOnLine("parabola focus on directrix");
    }
}

Line fold_line_from_t(double t, const Tolerances& tol) {
    return Line(t / 2.0, -1.0, -t * t / 4.0, tol);
}

Line tangent_at(const Parabola& psi, double t, const Tolerances& tol) {
    const Similarity to_canonical = canonical_frame(psi.focus, psi.directrix, tol);
    return to_canonical.inverse().apply(fold_line_from_t(t, tol), tol);
}

Existence existence_condition(const OpInstance& inst, const Tolerances& tol) {
    return std::visit(
        Overloaded{
            [&](const OpFoldPointToLineThroughPoint& op) {
                return distance(op.p, op.q) >= distance(op.q, op.m)
                           ? Existence::solvable
                           : Existence::not_solvable;
            },
            [&](const OpFoldTwoPointsToTwoLines& op) {
                const double gap = lines_parallel(op.m, op.n, tol)
                                       ? parallel_line_distance(op.m, op.n, tol)
                                       : 0.0;
                return distance(op.p, op.q) >= gap ? Existence::solvable
                                                   : Existence::not_solvable;
            },
            [&](const OpFoldPointToLinePerpendicular& op) {
                return lines_parallel(op.m, op.n, tol) ? Existence::not_solvable
                                                       : Existence::solvable;
            },
            [&](const auto&) { return Existence::always_solvable; }},
        inst);
}

SolutionSet solve(const OpInstance& inst, const Tolerances& tol) {
    validate_instance(inst, tol);
    std::vector<Candidate> cand;
    NoSolutionReason reason = NoSolutionReason::none;

    std::visit(
        Overloaded{
            [&](const OpFoldPointToPoint& op) {
                cand.push_back({perpendicular_bisector(op.p, op.q, tol), 1});
            },
            [&](const OpFoldLineToLine& op) {
                if (lines_parallel(op.m, op.n, tol)) {
                    // Midline; canonical form gives parallel lines one normal.
                    cand.push_back({Line(op.m.a() + op.n.a(), op.m.b() + op.n.b(),
                                         op.m.c() + op.n.c(), tol),
                                    1});
                } else {
                    // The two angle bisectors through the intersection.
                    cand.push_back({Line(op.m.a() + op.n.a(), op.m.b() + op.n.b(),
                                         op.m.c() + op.n.c(), tol),
                                    1});
                    cand.push_back({Line(op.m.a() - op.n.a(), op.m.b() - op.n.b(),
                                         op.m.c() - op.n.c(), tol),
                                    1});
                }
            },
            [&](const OpFoldAlongLine& op) { cand.push_back({op.m, 1}); },
            [&](const OpFoldThroughTwoPoints& op) {
                cand.push_back({line_through(op.p, op.q, tol), 1});
            },
            [&](const OpFoldPerpendicularThroughPoint& op) {
                cand.push_back({perpendicular_through(op.p, op.m, tol), 1});
            },
            [&](const OpFoldPointToLineThroughPoint& op) {
                const Similarity frame = canonical_frame(op.p, op.m, tol);
                const Similarity back = frame.inverse();
                const Point q_c = frame.apply(op.q);
                const RealRoots rr =
                    solve_quadratic(1.0, -2.0 * q_c.x, 4.0 * q_c.y, tol);
                for (std::size_t i = 0; i < rr.count(); ++i) {
                    cand.push_back({back.apply(fold_line_from_t(rr.roots[i], tol), tol),
                                    rr.multiplicities[i]});
                }
                reason = NoSolutionReason::q_closer_to_focus;
            },
            [&](const OpFoldTwoPointsToTwoLines& op) {
                const bool parallel = lines_parallel(op.m, op.n, tol);
                if (parallel) {
                    const double gap = parallel_line_distance(op.m, op.n, tol);
                    if (distance(op.p, op.q) < gap - tol.eps_incidence) {
                        reason = NoSolutionReason::theorem_one_violated;
                        return;
                    }
                }
                const Similarity frame = canonical_frame(op.p, op.m, tol);
                const Similarity back = frame.inverse();
                const TangencyPoly poly =
                    tangency_polynomial(frame.apply(op.q), frame.apply(op.n, tol));
                const RealRoots rr =
                    parallel ? solve_quadratic(poly.c2, poly.c1, poly.c0, tol)
                             : solve_cubic(poly.c3, poly.c2, poly.c1, poly.c0, tol);
                for (std::size_t i = 0; i < rr.count(); ++i) {
                    cand.push_back({back.apply(fold_line_from_t(rr.roots[i], tol), tol),
                                    rr.multiplicities[i]});
                }
                reason = NoSolutionReason::theorem_one_violated;
            },
            [&](const OpFoldPointToLinePerpendicular& op) {
                if (lines_parallel(op.m, op.n, tol)) {
                    reason = NoSolutionReason::parallel_directrix_target;
                    return;
                }
                const Similarity frame = canonical_frame(op.p, op.m, tol);
                const Line n_c = frame.apply(op.n, tol);
                // Perpendicularity of the tangent's normal (t/2, -1) to n_c.
                const double t = 2.0 * n_c.b() / n_c.a();
                cand.push_back(
                    {frame.inverse().apply(fold_line_from_t(t, tol), tol), 1});
            }},
        inst);

    return assemble(std::move(cand), reason, tol);
}

bool verify(const OpInstance& inst, const Line& chi, const Tolerances& tol) {
    return std::visit(
        Overloaded{
            [&](const OpFoldPointToPoint& op) {
                return points_equal(reflect_point(op.p, chi, tol), op.q, tol);
            },
            [&](const OpFoldLineToLine& op) {
                return lines_equal(reflect_line(op.m, chi, tol), op.n, tol);
            },
            [&](const OpFoldAlongLine& op) { return lines_equal(chi, op.m, tol); },
            [&](const OpFoldThroughTwoPoints& op) {
                return point_on_line(op.p, chi, tol) && point_on_line(op.q, chi, tol);
            },
            [&](const OpFoldPerpendicularThroughPoint& op) {
                return point_on_line(op.p, chi, tol) &&
                       chi_perpendicular_to(chi, op.m, tol) &&
                       !lines_equal(chi, op.m, tol);
            },
            [&](const OpFoldPointToLineThroughPoint& op) {
                return point_on_line(reflect_point(op.p, chi, tol), op.m, tol) &&
                       point_on_line(op.q, chi, tol);
            },
            [&](const OpFoldTwoPointsToTwoLines& op) {
                return point_on_line(reflect_point(op.p, chi, tol), op.m, tol) &&
                       point_on_line(reflect_point(op.q, chi, tol), op.n, tol);
            },
            [&](const OpFoldPointToLinePerpendicular& op) {
                return point_on_line(reflect_point(op.p, chi, tol), op.m, tol) &&
                       chi_perpendicular_to(chi, op.n, tol) &&
                       !lines_equal(chi, op.n, tol);
            }},
        inst);
}

}  // namespace ori
