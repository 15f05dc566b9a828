#pragma once

#include "ori/geometry.hpp"

namespace ori {

// Direct similarity: rotate by `rotation`, scale by `scale` (> 0), then
// translate. Angles, incidences and distance ratios are preserved, so fold
// solutions found in a transformed frame map back through the inverse.
class Similarity {
public:
    Similarity() = default;  // identity
    Similarity(double rotation, double scale, double tx, double ty);

    double rotation() const { return rotation_; }
    double scale() const { return scale_; }
    double tx() const { return tx_; }
    double ty() const { return ty_; }

    Point apply(const Point& p) const;
    Line apply(const Line& m, const Tolerances& tol = {}) const;
    Similarity inverse() const;

private:
    double rotation_ = 0;
    double scale_ = 1;
    double tx_ = 0;
    double ty_ = 0;
    double cos_ = 1;
    double sin_ = 0;
};

// The similarity mapping p to (0, 1) and m to the line y = -1, the frame in
// which the incidence "image of p lies on m" becomes tangency to y = x^2/4.
// PointOnLine if p lies on m.
Similarity canonical_frame(const Point& p, const Line& m, const Tolerances& tol = {});

}  // namespace ori
