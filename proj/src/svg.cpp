#include "ori/svg.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>

#include "ori/format_utils.hpp"
#include "ori/similarity.hpp"

namespace ori::svg {

namespace {

struct Box {
    double minx, miny, maxx, maxy;

    double width() const { return maxx - minx; }
    double height() const { return maxy - miny; }

    void grow(const Point& p) {
        minx = std::min(minx, p.x);
        miny = std::min(miny, p.y);
        maxx = std::max(maxx, p.x);
        maxy = std::max(maxy, p.y);
    }
};

Point line_anchor(const Line& l) {
    return Point(-l.c() * l.a(), -l.c() * l.b());
}

Box viewport_of(const Scene& scene) {
    Box box{1e300, 1e300, -1e300, -1e300};
    for (const auto& [name, p] : scene.points) box.grow(p);
    for (const auto& [name, l] : scene.lines) box.grow(line_anchor(l));
    for (const auto& [name, l] : scene.fold_lines) box.grow(line_anchor(l));
    for (const auto& [name, psi] : scene.parabolas) {
        box.grow(psi.focus);
        box.grow(line_anchor(psi.directrix));
    }
    // Pad degenerate boxes to a minimum extent, then add the 10% margin.
    const double min_extent = 2.0;
    if (box.width() < min_extent) {
        const double cx = (box.minx + box.maxx) / 2;
        box.minx = cx - min_extent / 2;
        box.maxx = cx + min_extent / 2;
    }
    if (box.height() < min_extent) {
        const double cy = (box.miny + box.maxy) / 2;
        box.miny = cy - min_extent / 2;
        box.maxy = cy + min_extent / 2;
    }
    const double mx = 0.1 * box.width();
    const double my = 0.1 * box.height();
    return {box.minx - mx, box.miny - my, box.maxx + mx, box.maxy + my};
}

// Clip the infinite line to the viewport; the anchor is inside the box (it
// shaped the box), so the result is non-empty.
std::optional<std::pair<Point, Point>> clip_line(const Line& l, const Box& box) {
    const Point anchor = line_anchor(l);
    const double dx = -l.b();
    const double dy = l.a();
    double tmin = -1e300;
    double tmax = 1e300;
    const auto slab = [&](double origin, double dir, double lo, double hi) {
        if (std::abs(dir) < 1e-15) {
            return origin >= lo && origin <= hi;
        }
        double t0 = (lo - origin) / dir;
        double t1 = (hi - origin) / dir;
        if (t0 > t1) std::swap(t0, t1);
        tmin = std::max(tmin, t0);
        tmax = std::min(tmax, t1);
        return true;
    };
    if (!slab(anchor.x, dx, box.minx, box.maxx)) return std::nullopt;
    if (!slab(anchor.y, dy, box.miny, box.maxy)) return std::nullopt;
    if (tmin > tmax) return std::nullopt;
    return std::make_pair(Point(anchor.x + tmin * dx, anchor.y + tmin * dy),
                          Point(anchor.x + tmax * dx, anchor.y + tmax * dy));
}

class Writer {
public:
    Writer(const Box& box) : box_(box) {}

    // World y grows upward, SVG y downward; mirror inside the fixed box.
    double flip(double y) const { return box_.maxy + box_.miny - y; }

    std::string num(double v) const {
        if (v == 0) v = 0;  // normalize -0
        return format_double(v);
    }

    void open(std::ostringstream& out) const {
        const double stroke = 0.004 * std::max(box_.width(), box_.height());
        out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
            << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\""
            << num(box_.minx) << " " << num(box_.miny) << " " << num(box_.width()) << " "
            << num(box_.height()) << "\" width=\"640\" height=\""
            << num(640.0 * box_.height() / box_.width()) << "\">\n"
            << "<style>\n"
            << ".given { stroke: #1f2937; stroke-width: " << num(stroke)
            << "; fill: none; }\n"
            << ".fold { stroke: #b91c1c; stroke-width: " << num(stroke * 1.25)
            << "; fill: none; }\n"
            << ".parab { stroke: #2563eb; stroke-width: " << num(stroke)
            << "; fill: none; }\n"
            << ".pt { fill: #111827; }\n"
            << ".lbl { font-family: sans-serif; font-size: " << num(stroke * 30)
            << "px; fill: #111827; }\n"
            << "</style>\n";
    }

    void line(std::ostringstream& out, const Line& l, const std::string& cls,
              const std::string& name) const {
        const auto seg = clip_line(l, box_);
        if (!seg) return;
        out << "<line class=\"" << cls << "\" x1=\"" << num(seg->first.x) << "\" y1=\""
            << num(flip(seg->first.y)) << "\" x2=\"" << num(seg->second.x) << "\" y2=\""
            << num(flip(seg->second.y)) << "\"/>\n";
        const double lx = 0.78 * seg->first.x + 0.22 * seg->second.x;
        const double ly = 0.78 * seg->first.y + 0.22 * seg->second.y;
        label(out, name, lx, ly);
    }

    void label(std::ostringstream& out, const std::string& name, double x, double y) const {
        const double off = 0.012 * std::max(box_.width(), box_.height());
        out << "<text class=\"lbl\" x=\"" << num(x + off) << "\" y=\""
            << num(flip(y + off)) << "\">" << name << "</text>\n";
    }

    const Box& box() const { return box_; }

private:
    Box box_;
};

}  // namespace

Scene scene_from_instance(const OpInstance& inst, const SolutionSet& solutions,
                          const Tolerances& tol) {
    Scene scene;
    const auto add_parabola = [&](const std::string& name, const Point& focus,
                                  const Line& directrix) {
        scene.parabolas.emplace(name, Parabola(focus, directrix, tol));
    };
    std::visit(
        [&](const auto& op) {
            using T = std::decay_t<decltype(op)>;
            if constexpr (std::is_same_v<T, OpFoldPointToPoint> ||
                          std::is_same_v<T, OpFoldThroughTwoPoints>) {
                scene.points.emplace("P", op.p);
                scene.points.emplace("Q", op.q);
            } else if constexpr (std::is_same_v<T, OpFoldLineToLine>) {
                scene.lines.emplace("m", op.m);
                scene.lines.emplace("n", op.n);
            } else if constexpr (std::is_same_v<T, OpFoldAlongLine>) {
                scene.lines.emplace("m", op.m);
            } else if constexpr (std::is_same_v<T, OpFoldPerpendicularThroughPoint>) {
                scene.points.emplace("P", op.p);
                scene.lines.emplace("m", op.m);
            } else if constexpr (std::is_same_v<T, OpFoldPointToLineThroughPoint>) {
                scene.points.emplace("P", op.p);
                scene.points.emplace("Q", op.q);
                scene.lines.emplace("m", op.m);
                add_parabola("psi", op.p, op.m);
            } else if constexpr (std::is_same_v<T, OpFoldTwoPointsToTwoLines>) {
                scene.points.emplace("P", op.p);
                scene.points.emplace("Q", op.q);
                scene.lines.emplace("m", op.m);
                scene.lines.emplace("n", op.n);
                add_parabola("psi", op.p, op.m);
                add_parabola("theta", op.q, op.n);
            } else if constexpr (std::is_same_v<T, OpFoldPointToLinePerpendicular>) {
                scene.points.emplace("P", op.p);
                scene.lines.emplace("m", op.m);
                scene.lines.emplace("n", op.n);
                add_parabola("psi", op.p, op.m);
            }
        },
        inst);
    for (std::size_t i = 0; i < solutions.count(); ++i) {
        scene.fold_lines.emplace("chi" + std::to_string(i + 1), solutions.fold_lines[i]);
    }
    return scene;
}

Scene scene_from_environment(const script::Environment& env, const Tolerances& tol) {
    Scene scene;
    for (const auto& [name, value] : env.bindings) {
        if (value.is_point()) {
            scene.points.emplace(name, value.point());
        } else if (value.from_fold) {
            scene.fold_lines.emplace(name, value.line());
        } else {
            scene.lines.emplace(name, value.line());
        }
    }
    return scene;
}

std::string render_svg(const Scene& scene, const Tolerances& tol) {
    if (scene.empty()) {
        throw EmptyScene("nothing to render");
    }
    const Box box = viewport_of(scene);
    const Writer w(box);
    std::ostringstream out;
    w.open(out);

    for (const auto& [name, psi] : scene.parabolas) {
        // Sample in the parabola's canonical frame over a parameter span wide
        // enough to cross the viewport, 128 segments.
        const Similarity frame = canonical_frame(psi.focus, psi.directrix, tol);
        const Similarity back = frame.inverse();
        double tmax = 1;
        for (const Point& corner :
             {Point(box.minx, box.miny), Point(box.minx, box.maxy),
              Point(box.maxx, box.miny), Point(box.maxx, box.maxy)}) {
            const Point c = frame.apply(corner);
            tmax = std::max({tmax, std::abs(c.x), std::sqrt(4 * std::abs(c.y))});
        }
        out << "<polyline class=\"parab\" points=\"";
        const int segments = 128;
        for (int k = 0; k <= segments; ++k) {
            const double t = -tmax + 2 * tmax * k / segments;
            const Point p = back.apply(Point(t, t * t / 4));
            if (k) out << " ";
            out << w.num(p.x) << "," << w.num(w.flip(p.y));
        }
        out << "\"/>\n";
        w.label(out, name, back.apply(Point(0, 0)).x, back.apply(Point(0, 0)).y);
    }
    for (const auto& [name, l] : scene.lines) w.line(out, l, "given", name);
    for (const auto& [name, l] : scene.fold_lines) w.line(out, l, "fold", name);
    for (const auto& [name, p] : scene.points) {
        out << "<circle class=\"pt\" cx=\"" << w.num(p.x) << "\" cy=\"" << w.num(w.flip(p.y))
            << "\" r=\"" << w.num(0.008 * std::max(box.width(), box.height())) << "\"/>\n";
        w.label(out, name, p.x, p.y);
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace ori::svg
