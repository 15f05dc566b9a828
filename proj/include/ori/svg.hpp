#pragma once

#include <map>
#include <string>

#include "ori/fold_ops.hpp"
#include "ori/script.hpp"

namespace ori::svg {

// Renderable snapshot of a construction: named elements plus a viewport
// computed to contain every finite element with a 10% margin.
struct Scene {
    std::map<std::string, Point> points;
    std::map<std::string, Line> lines;
    std::map<std::string, Line> fold_lines;
    std::map<std::string, Parabola> parabolas;

    bool empty() const {
        return points.empty() && lines.empty() && fold_lines.empty() && parabolas.empty();
    }
};

// Operands of the instance, its solution fold lines, and the parabolas the
// point-on-line constraints trace.
Scene scene_from_instance(const OpInstance& inst, const SolutionSet& solutions,
                          const Tolerances& tol = {});

Scene scene_from_environment(const script::Environment& env, const Tolerances& tol = {});

// Deterministic SVG 1.1 document: same scene, same bytes. EmptyScene when
// there is nothing to draw.
std::string render_svg(const Scene& scene, const Tolerances& tol = {});

}  // namespace ori::svg
