#include "ori/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ori {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double instance_scale(const OpInstance& inst) {
    double s = 1;
    const auto point = [&](const Point& p) {
        s = std::max({s, std::abs(p.x), std::abs(p.y)});
    };
    const auto line = [&](const Line& l) { s = std::max(s, std::abs(l.c())); };
    std::visit(Overloaded{[&](const OpFoldPointToPoint& op) {
                              point(op.p);
                              point(op.q);
                          },
                          [&](const OpFoldLineToLine& op) {
                              line(op.m);
                              line(op.n);
                          },
                          [&](const OpFoldAlongLine& op) { line(op.m); },
                          [&](const OpFoldThroughTwoPoints& op) {
                              point(op.p);
                              point(op.q);
                          },
                          [&](const OpFoldPerpendicularThroughPoint& op) {
                              point(op.p);
                              line(op.m);
                          },
                          [&](const OpFoldPointToLineThroughPoint& op) {
                              point(op.p);
                              line(op.m);
                              point(op.q);
                          },
                          [&](const OpFoldTwoPointsToTwoLines& op) {
                              point(op.p);
                              line(op.m);
                              point(op.q);
                              line(op.n);
                          },
                          [&](const OpFoldPointToLinePerpendicular& op) {
                              point(op.p);
                              line(op.m);
                              line(op.n);
                          }},
               inst);
    return s;
}

// Two fixed probe points of a line; a line constraint holds iff it holds for
// both probes.
std::pair<Point, Point> probe_points(const Line& m) {
    const Point p0(-m.c() * m.a(), -m.c() * m.b());
    const double step = std::max(1.0, std::abs(m.c()));
    return {p0, Point(p0.x - step * m.b(), p0.y + step * m.a())};
}

struct GnState {
    double theta;
    double d;
    double f;
};

double objective(const ResidualModel& model, double theta, double d) {
    return model.eval(std::cos(theta), std::sin(theta), d);
}

// Levenberg-Marquardt over (theta, d) with a finite-difference Jacobian of
// the term vector.
GnState refine_minimum(const ResidualModel& model, double theta, double d,
                       int max_iters) {
    double terms[8];
    double jt[8];
    double jd[8];
    double f = objective(model, theta, d);
    double lambda = 1e-3;
    for (int it = 0; it < max_iters; ++it) {
        if (f <= 1e-26) break;
        const int n = model.eval_terms(std::cos(theta), std::sin(theta), d, terms);
        const double ht = 1e-7;
        const double hd = 1e-7 * std::max(1.0, std::abs(d));
        double plus[8], minus[8];
        model.eval_terms(std::cos(theta + ht), std::sin(theta + ht), d, plus);
        model.eval_terms(std::cos(theta - ht), std::sin(theta - ht), d, minus);
        for (int k = 0; k < n; ++k) jt[k] = (plus[k] - minus[k]) / (2 * ht);
        model.eval_terms(std::cos(theta), std::sin(theta), d + hd, plus);
        model.eval_terms(std::cos(theta), std::sin(theta), d - hd, minus);
        for (int k = 0; k < n; ++k) jd[k] = (plus[k] - minus[k]) / (2 * hd);

        double a00 = 0, a01 = 0, a11 = 0, g0 = 0, g1 = 0;
        for (int k = 0; k < n; ++k) {
            a00 += jt[k] * jt[k];
            a01 += jt[k] * jd[k];
            a11 += jd[k] * jd[k];
            g0 += jt[k] * terms[k];
            g1 += jd[k] * terms[k];
        }

        bool stepped = false;
        for (int attempt = 0; attempt < 12; ++attempt) {
            const double d00 = a00 * (1 + lambda) + 1e-300;
            const double d11 = a11 * (1 + lambda) + 1e-300;
            const double det = d00 * d11 - a01 * a01;
            if (det <= 0) {
                lambda *= 10;
                continue;
            }
            const double st = (d11 * g0 - a01 * g1) / det;
            const double sd = (d00 * g1 - a01 * g0) / det;
            const double nt = theta - st;
            const double nd = d - sd;
            const double nf = objective(model, nt, nd);
            if (nf < f) {
                theta = nt;
                d = nd;
                f = nf;
                lambda = std::max(1e-12, lambda * 0.3);
                stepped = true;
                break;
            }
            lambda *= 10;
        }
        if (!stepped) break;
    }
    return {theta, d, f};
}

}  // namespace

int ResidualModel::eval_terms(double ca, double sa, double d, double* out) const {
    int n = 0;
    for (int i = 0; i < constraint_count; ++i) {
        const ResidualConstraint& c = constraints[i];
        switch (c.kind) {
            case ConstraintKind::image_to_point: {
                const double s = ca * c.px + sa * c.py + d;
                out[n++] = c.px - 2 * s * ca - c.ta;
                out[n++] = c.py - 2 * s * sa - c.tb;
                break;
            }
            case ConstraintKind::image_on_line: {
                const double s = ca * c.px + sa * c.py + d;
                out[n++] = c.ta * (c.px - 2 * s * ca) + c.tb * (c.py - 2 * s * sa) + c.tc;
                break;
            }
            case ConstraintKind::perpendicular:
                out[n++] = c.w * (ca * c.ta + sa * c.tb);
                break;
        }
    }
    return n;
}

double ResidualModel::eval(double ca, double sa, double d) const {
    double terms[8];
    const int n = eval_terms(ca, sa, d, terms);
    double f = 0;
    for (int k = 0; k < n; ++k) f += terms[k] * terms[k];
    return f;
}

ResidualModel build_residual_model(const OpInstance& inst) {
    ResidualModel model;
    model.scale = instance_scale(inst);
    const auto add = [&](const ResidualConstraint& c) {
        model.constraints[model.constraint_count++] = c;
        model.term_count += c.kind == ConstraintKind::image_to_point ? 2 : 1;
    };
    const auto image_to_point = [&](const Point& p, const Point& q) {
        add({ConstraintKind::image_to_point, p.x, p.y, q.x, q.y, 0, 1});
    };
    const auto image_on_line = [&](const Point& p, const Line& l) {
        add({ConstraintKind::image_on_line, p.x, p.y, l.a(), l.b(), l.c(), 1});
    };
    const auto perpendicular = [&](const Line& l) {
        add({ConstraintKind::perpendicular, 0, 0, l.a(), l.b(), 0, model.scale});
    };

    std::visit(Overloaded{[&](const OpFoldPointToPoint& op) { image_to_point(op.p, op.q); },
                          [&](const OpFoldLineToLine& op) {
                              const auto [p0, p1] = probe_points(op.m);
                              image_on_line(p0, op.n);
                              image_on_line(p1, op.n);
                          },
                          [&](const OpFoldAlongLine& op) {
                              const auto [p0, p1] = probe_points(op.m);
                              image_to_point(p0, p0);
                              image_to_point(p1, p1);
                          },
                          [&](const OpFoldThroughTwoPoints& op) {
                              image_to_point(op.p, op.p);
                              image_to_point(op.q, op.q);
                          },
                          [&](const OpFoldPerpendicularThroughPoint& op) {
                              image_to_point(op.p, op.p);
                              perpendicular(op.m);
                          },
                          [&](const OpFoldPointToLineThroughPoint& op) {
                              image_on_line(op.p, op.m);
                              image_to_point(op.q, op.q);
                          },
                          [&](const OpFoldTwoPointsToTwoLines& op) {
                              image_on_line(op.p, op.m);
                              image_on_line(op.q, op.n);
                          },
                          [&](const OpFoldPointToLinePerpendicular& op) {
                              image_on_line(op.p, op.m);
                              perpendicular(op.n);
                          }},
               inst);
    return model;
}

double residual(const OpInstance& inst, const Line& chi) {
    return build_residual_model(inst).eval(chi.a(), chi.b(), chi.c());
}

void fill_residual_grid_reference(const ResidualModel& model, int theta_samples,
                                  int offset_samples, double offset_range,
                                  std::vector<double>& grid) {
    grid.resize(static_cast<std::size_t>(theta_samples) * offset_samples);
    const double dtheta = M_PI / theta_samples;
    const double d0 = -offset_range;
    const double dd = 2 * offset_range / (offset_samples - 1);
    for (int i = 0; i < theta_samples; ++i) {
        const double ca = std::cos(i * dtheta);
        const double sa = std::sin(i * dtheta);
        double* row = grid.data() + static_cast<std::size_t>(i) * offset_samples;
        for (int j = 0; j < offset_samples; ++j) {
            row[j] = model.eval(ca, sa, d0 + j * dd);
        }
    }
}

void fill_residual_grid(const ResidualModel& model, int theta_samples,
                        int offset_samples, double offset_range,
                        std::vector<double>& grid) {
    grid.resize(static_cast<std::size_t>(theta_samples) * offset_samples);
    const double dtheta = M_PI / theta_samples;
    const double d0 = -offset_range;
    const double dd = 2 * offset_range / (offset_samples - 1);
#pragma omp parallel for schedule(static)
    for (int i = 0; i < theta_samples; ++i) {
        const double ca = std::cos(i * dtheta);
        const double sa = std::sin(i * dtheta);
        // Each term is affine in d for fixed theta, so two probes per row give
        // intercepts and slopes for the whole row.
        double alpha[8], beta[8];
        const int n = model.eval_terms(ca, sa, 0.0, alpha);
        model.eval_terms(ca, sa, 1.0, beta);
        for (int k = 0; k < n; ++k) beta[k] -= alpha[k];
        double* row = grid.data() + static_cast<std::size_t>(i) * offset_samples;
        for (int j = 0; j < offset_samples; ++j) {
            const double d = d0 + j * dd;
            double f = 0;
            for (int k = 0; k < n; ++k) {
                const double t = alpha[k] + beta[k] * d;
                f += t * t;
            }
            row[j] = f;
        }
    }
}

OracleResult brute_force_solve(const OpInstance& inst, const OracleConfig& cfg,
                               const Tolerances& tol) {
    if (!cfg.valid()) {
        throw Error("invalid oracle configuration");
    }
    validate_instance(inst, tol);
    const ResidualModel model = build_residual_model(inst);
    const int T = cfg.theta_samples;
    const int D = cfg.offset_samples;
    const double R = cfg.offset_range > 0 ? cfg.offset_range : 4 * model.scale;
    const double dtheta = M_PI / T;
    const double dd = 2 * R / (D - 1);

    std::vector<double> grid;
    fill_residual_grid(model, T, D, R, grid);

    // Grid-local minima below a coarse basin bound, best first. Ties and
    // ordering are index-deterministic.
    const double coarse = 50.0 * model.term_count *
                          (std::pow(6 * model.scale * dtheta, 2) + dd * dd);
    std::vector<std::pair<double, std::size_t>> candidates;
    for (int i = 0; i < T; ++i) {
        for (int j = 0; j < D; ++j) {
            const double v = grid[static_cast<std::size_t>(i) * D + j];
            if (v > coarse) continue;
            bool is_min = true;
            for (int di = -1; di <= 1 && is_min; ++di) {
                for (int dj = -1; dj <= 1 && is_min; ++dj) {
                    if (di == 0 && dj == 0) continue;
                    const int ni = i + di;
                    const int nj = j + dj;
                    if (ni < 0 || ni >= T || nj < 0 || nj >= D) continue;
                    if (grid[static_cast<std::size_t>(ni) * D + nj] < v) is_min = false;
                }
            }
            if (is_min) {
                candidates.emplace_back(v, static_cast<std::size_t>(i) * D + j);
            }
        }
    }
    std::sort(candidates.begin(), candidates.end());
    if (candidates.size() > 64) candidates.resize(64);

    struct Accepted {
        Line line;
        double res;
    };
    std::vector<Accepted> accepted;
    for (const auto& [value, idx] : candidates) {
        const int i = static_cast<int>(idx / D);
        const int j = static_cast<int>(idx % D);
        const GnState g =
            refine_minimum(model, i * dtheta, -R + j * dd, cfg.refine_iters);
        if (g.f <= cfg.residual_accept) {
            accepted.push_back({Line(std::cos(g.theta), std::sin(g.theta), g.d, tol), g.f});
        }
    }

    std::stable_sort(accepted.begin(), accepted.end(), [](const Accepted& x, const Accepted& y) {
        const double tx = direction_angle(x.line);
        const double ty = direction_angle(y.line);
        if (tx != ty) return tx < ty;
        return x.line.c() < y.line.c();
    });

    OracleResult out;
    const double dedup = 10 * tol.eps_root_dedup;
    for (const auto& a : accepted) {
        bool dup = false;
        for (std::size_t k = 0; k < out.lines.size(); ++k) {
            if (line_distance(out.lines[k], a.line) <= dedup) {
                dup = true;
                if (a.res < out.residuals[k]) {
                    out.lines[k] = a.line;
                    out.residuals[k] = a.res;
                }
                break;
            }
        }
        if (!dup) {
            out.lines.push_back(a.line);
            out.residuals.push_back(a.res);
        }
    }
    return out;
}

CompareReport compare(const SolutionSet& analytic, const OracleResult& brute,
                      double tol) {
    CompareReport report;
    report.tol = tol;
    report.analytic_count = analytic.count();
    report.brute_count = brute.count();

    std::vector<bool> used_a(analytic.count(), false);
    std::vector<bool> used_b(brute.count(), false);
    const std::size_t pairs = std::min(analytic.count(), brute.count());
    for (std::size_t round = 0; round < pairs; ++round) {
        double best = std::numeric_limits<double>::infinity();
        std::size_t bi = 0, bj = 0;
        for (std::size_t i = 0; i < analytic.count(); ++i) {
            if (used_a[i]) continue;
            for (std::size_t j = 0; j < brute.count(); ++j) {
                if (used_b[j]) continue;
                const double dist = line_distance(analytic.fold_lines[i], brute.lines[j]);
                if (dist < best) {
                    best = dist;
                    bi = i;
                    bj = j;
                }
            }
        }
        used_a[bi] = true;
        used_b[bj] = true;
        report.matches.emplace_back(bi, bj);
        report.match_distances.push_back(best);
        report.max_distance = std::max(report.max_distance, best);
    }
    for (std::size_t i = 0; i < used_a.size(); ++i) {
        if (!used_a[i]) report.unmatched_analytic.push_back(i);
    }
    for (std::size_t j = 0; j < used_b.size(); ++j) {
        if (!used_b[j]) report.unmatched_brute.push_back(j);
    }
    return report;
}

}  // namespace ori
