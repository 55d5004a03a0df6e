#pragma once

#include <optional>
#include <vector>

#include "curveflow/curve_zoo.hpp"
#include "curveflow/flow.hpp"
#include "curveflow/star_kernel.hpp"

namespace curveflow {

// Geometric spacing over the first tenth of [0, t_end], uniform after; the
// first entry is 0 and the last is t_end.
std::vector<double> comparison_grid(double t_end, std::size_t samples);

struct ComparisonRow {
    double t = 0.0;
    bool radial = false;        // both curves were radial graphs about the common origin
    double f_min = 0.0;         // min over rays of r_GAPF - r_CSF; meaningful when radial
    bool enclosure = false;     // CSF curve strictly inside the GAPF curve
    double kernel_area_gapf = 0.0;
    double kernel_area_csf = 0.0;
    bool both_kernels = false;  // both kernels nonempty
    bool kernel_inclusion = true; // vacuously true unless both_kernels
};

struct ComparisonReport {
    Point2 origin{};
    double epsilon = 0.0; // dilation used by the inclusion test
    std::vector<ComparisonRow> rows;
    FlowEvent gapf_event;
    FlowEvent csf_event;
    Trajectory gapf;
    Trajectory csf;

    // Sampled t > 0 where enclosure fails.
    std::size_t enclosure_violations() const;
    std::size_t inclusion_violations() const;
};

// Runs GAPF and CSF concurrently from the same curve and mesh. `base` supplies
// everything except kind, t_end and sample_times. Rows stop at the earlier
// terminal event.
ComparisonReport compare_flows(const ClosedCurve& initial, double t_end, const FlowConfig& base = {},
                               std::size_t samples = 200);

struct WingCollapseReport {
    WingParams params;
    double epsilon = 0.0;
    double area0 = 0.0;
    double horizon = 0.0; // A0 / (2 pi)
    double length0 = 0.0;
    std::vector<double> t;           // kernel evaluation times
    std::vector<double> kernel_area;
    std::vector<double> u_min_t;     // snapshot times
    std::vector<double> u_min;       // min |X|^2 over vertices in the cone spanned by OA, OB
    std::optional<double> t_star;
    double max_increase = 0.0;       // largest rise of the kernel area between evaluations
    double initial_rate = 0.0;       // slope of the kernel area over the first evaluations
    double predicted_u_rate = 0.0;   // -2 + 4 pi rho / L0
    FlowEvent event;

    bool monotone() const;
    bool passed() const;
};

WingCollapseReport wing_collapse(const WingParams& p, double epsilon, double t_end, const FlowConfig& base = {});

struct StarLossReport {
    std::optional<double> gapf_loss;
    std::optional<double> csf_loss;
    double horizon = 0.0;
    bool vacuous = false; // GAPF never lost star shape before the horizon
    bool passed = false;
};

// Runs both flows to the first star-shape loss and compares the loss times.
StarLossReport star_loss_implication(const ClosedCurve& initial, double t_end, const FlowConfig& base = {});

struct ConvergenceRow {
    double t = 0.0;
    double ratio = 0.0;     // L^2 / (4 pi A)
    double deviation = 0.0; // max |kappa - c| / c with c = sqrt(pi / A0)
};

struct ConvergenceReport {
    std::vector<ConvergenceRow> rows;
    std::optional<double> t_convex;
};

ConvergenceReport convergence_metrics(const Trajectory& traj);

// Minimum over vertex pairs of chord / shorter arc.
double chord_arc_ratio(const ClosedCurve& curve);

} // namespace curveflow
