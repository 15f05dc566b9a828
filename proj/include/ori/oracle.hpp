#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "ori/fold_ops.hpp"

namespace ori {

// Brute-force reference solver. A fold line is two parameters, direction
// angle theta in [0, pi) and offset d: x*cos(theta) + y*sin(theta) + d = 0.
// The solver scans that grid for local minima of the incidence residual and
// refines them, independent of the analytic route through canonical frames
// and root extraction.
struct OracleConfig {
    int theta_samples = 720;
    double offset_range = 0;  // 0: derive as 4x the instance coordinate magnitude
    int offset_samples = 800;
    int refine_iters = 60;
    double residual_accept = 1e-10;

    bool valid() const {
        return theta_samples >= 2 && offset_samples >= 2 && refine_iters >= 2 &&
               residual_accept > 0 && offset_range >= 0;
    }
};

struct OracleResult {
    std::vector<Line> lines;
    std::vector<double> residuals;

    std::size_t count() const { return lines.size(); }
};

// Sum of squared constraint violations of the instance for fold line chi.
// Zero exactly at solutions, smooth in the line parameters.
double residual(const OpInstance& inst, const Line& chi);

OracleResult brute_force_solve(const OpInstance& inst, const OracleConfig& cfg = {},
                               const Tolerances& tol = {});

// Greedy nearest matching between the analytic and brute-force solution sets,
// by max coefficient delta of canonical representatives.
struct CompareReport {
    std::size_t analytic_count = 0;
    std::size_t brute_count = 0;
    std::vector<std::pair<std::size_t, std::size_t>> matches;
    std::vector<double> match_distances;
    double max_distance = 0;
    std::vector<std::size_t> unmatched_analytic;
    std::vector<std::size_t> unmatched_brute;
    double tol = 1e-6;

    bool counts_agree() const { return analytic_count == brute_count; }
    bool ok() const {
        return counts_agree() && unmatched_analytic.empty() &&
               unmatched_brute.empty() && max_distance <= tol;
    }
};

CompareReport compare(const SolutionSet& analytic, const OracleResult& brute,
                      double tol = 1e-6);

// Residual evaluation model: the instance's constraints flattened to a small
// term vector, each term affine in the offset d for a fixed theta.
enum class ConstraintKind { image_to_point, image_on_line, perpendicular };

struct ResidualConstraint {
    ConstraintKind kind;
    double px = 0, py = 0;          // source point
    double ta = 0, tb = 0, tc = 0;  // target line, or target point in (ta, tb)
    double w = 1;                   // weight of the perpendicularity defect
};

struct ResidualModel {
    std::array<ResidualConstraint, 4> constraints{};
    int constraint_count = 0;
    int term_count = 0;
    double scale = 1;  // max coordinate magnitude of the instance, floored at 1

    // Writes the term values for the line (cos(theta), sin(theta), d); returns
    // the term count.
    int eval_terms(double cos_theta, double sin_theta, double d, double* out) const;
    double eval(double cos_theta, double sin_theta, double d) const;
};

ResidualModel build_residual_model(const OpInstance& inst);

// Grid kernels. Both write theta_samples x offset_samples residual values in
// row-major order (theta rows). The reference evaluates every cell directly
// and stays serial; the fast kernel exploits the affine-in-d structure of the
// terms and parallelizes across rows with OpenMP. They agree to rounding and
// the tests hold them together.
void fill_residual_grid_reference(const ResidualModel& model, int theta_samples,
                                  int offset_samples, double offset_range,
                                  std::vector<double>& grid);
void fill_residual_grid(const ResidualModel& model, int theta_samples,
                        int offset_samples, double offset_range,
                        std::vector<double>& grid);

}  // namespace ori
