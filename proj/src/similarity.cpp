#include "ori/similarity.hpp"

#include <cmath>

namespace ori {

Similarity::Similarity(double rotation, double scale, double tx, double ty)
    : rotation_(rotation), scale_(scale), tx_(tx), ty_(ty) {
    detail::require_finite(rotation, "similarity rotation");
    detail::require_finite(scale, "similarity scale");
    detail::require_finite(tx, "similarity tx");
    detail::require_finite(ty, "similarity ty");
    if (!(scale > 0)) {
        throw Error("similarity scale must be positive");
    }
    cos_ = std::cos(rotation_);
    sin_ = std::sin(rotation_);
}

Point Similarity::apply(const Point& p) const {
    return Point(scale_ * (cos_ * p.x - sin_ * p.y) + tx_,
                 scale_ * (sin_ * p.x + cos_ * p.y) + ty_);
}

Line Similarity::apply(const Line& m, const Tolerances& tol) const {
    // For x' = s*R*x + t, points of the image satisfy
    // (R*n) . x' + (c*s - (R*n) . t) = 0.
    const double na = cos_ * m.a() - sin_ * m.b();
    const double nb = sin_ * m.a() + cos_ * m.b();
    return Line(na, nb, m.c() * scale_ - (na * tx_ + nb * ty_), tol);
}

Similarity Similarity::inverse() const {
    const double inv_scale = 1.0 / scale_;
    // R(-phi) applied to -t, scaled.
    const double ix = -inv_scale * (cos_ * tx_ + sin_ * ty_);
    const double iy = -inv_scale * (-sin_ * tx_ + cos_ * ty_);
    return Similarity(-rotation_, inv_scale, ix, iy);
}

Similarity canonical_frame(const Point& p, const Line& m, const Tolerances& tol) {
    const double sd = signed_distance(p, m);
    if (std::abs(sd) <= tol.eps_incidence) {
        throw PointOnLine("canonical frame needs the point off the line");
    }
    // Rotate m's normal onto (0, 1) keeping p on the positive side, scale the
    // point-line distance to 2, then translate m onto y = -1.
    const double target = sd > 0 ? M_PI / 2 : -M_PI / 2;
    const double rotation = target - std::atan2(m.b(), m.a());
    const double scale = 2.0 / std::abs(sd);
    const Similarity rs(rotation, scale, 0, 0);
    const Point pr = rs.apply(p);
    return Similarity(rotation, scale, -pr.x, 1 - pr.y);
}

}  // namespace ori
