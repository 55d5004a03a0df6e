#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "curveflow/geometry.hpp"

namespace curveflow {

// GAPF moves with normal speed kappa - 2 pi / L, CSF with kappa.
enum class FlowKind { GAPF, CSF };
enum class Formulation { Parametric, RadialR, RadialU };

std::string to_string(FlowKind k);
std::string to_string(Formulation f);
FlowKind parse_flow_kind(const std::string& s);
Formulation parse_formulation(const std::string& s);

struct EventChecks {
    bool star = true;
    bool embedding = true;
    bool extinction = true;

    friend bool operator==(const EventChecks&, const EventChecks&) = default;
};

struct FlowConfig {
    FlowKind kind = FlowKind::GAPF;
    Formulation formulation = Formulation::Parametric;
    std::size_t n = 1024;
    double dt_init = 1e-2; // first trial step, and the cap for every later step
    double safety = 0.4;
    double t_end = 1.0;
    std::size_t resample_every = 20;
    EventChecks event_checks;
    std::optional<Point2> origin; // radial pole; the initial kernel centroid when unset
    std::size_t check_every = 10; // accepted steps between kernel evaluations
    bool stop_on_star_loss = false;
    bool handoff = true; // radial breakdown continues on the parametric solver
    std::vector<double> sample_times; // steps land exactly on these; snapshots are kept
    std::size_t snapshot_every = 0;   // extra snapshots every k steps (0 = off)

    // Throws ParameterError naming the offending field.
    void validate() const;

    friend bool operator==(const FlowConfig&, const FlowConfig&) = default;
};

struct Diagnostics {
    double t = 0.0;
    double length = 0.0;
    double area = 0.0;
    double kappa_min = 0.0;
    double kappa_max = 0.0;
    double kernel_area = 0.0;
    bool is_star = false;
};

struct Snapshot {
    std::size_t step = 0;
    double t = 0.0;
    ClosedCurve curve;
    std::optional<RadialCurve> radial;
};

enum class EventKind { StarShapeLost, EmbeddednessLost, Extinction, RadialBreakdown, Completed };
std::string to_string(EventKind k);

struct FlowEvent {
    EventKind kind = EventKind::Completed;
    double t = 0.0;
    std::optional<ClosedCurve> state;
};

struct Trajectory {
    std::vector<Diagnostics> rows;
    std::vector<Snapshot> snapshots;
    double area0 = 0.0;
    double length0 = 0.0;
    Point2 origin{};
    std::optional<double> star_lost_at;
    std::optional<double> radial_handoff_at;
    std::size_t steps = 0;
    std::size_t rejected_steps = 0;
};

struct FlowResult {
    Trajectory trajectory;
    FlowEvent event;
};

// Solver state between steps.
struct FlowState {
    double t = 0.0;
    std::variant<ClosedCurve, RadialCurve> curve;
    CurveGeometry geometry;
    Diagnostics diagnostics;
};

enum class StepStatus { Accepted, RejectedCfl, RejectedNonPositive, Breakdown };

template <class T>
struct Step {
    std::optional<T> next;
    StepStatus status = StepStatus::Accepted;
    bool accepted() const { return status == StepStatus::Accepted; }
};

// Largest explicit step allowed for the parametric solver: safety * min_edge^2 / 2.
double parametric_dt_bound(const CurveGeometry& geom, double safety);

// The area-weighted mean curvature sum(theta cos(theta/2)) / sum(ds cos(theta/2)).
// It equals 2 pi / L up to O(h^2) and makes the discrete GAPF step conserve
// area to first order in dt.
double discrete_mean_curvature(const CurveGeometry& geom);

// Explicit normal step X_i += dt * beta_i * N_i.
Step<ClosedCurve> step_parametric(const ClosedCurve& curve, const CurveGeometry& geom, FlowKind kind, double dt,
                                  double safety);
Step<ClosedCurve> step_parametric(const ClosedCurve& curve, FlowKind kind, double dt, double safety);

struct RadialLimits {
    double r_floor = 0.0;      // breakdown when min r drops below
    double slope_bound = 50.0; // breakdown when max |r_theta| / r exceeds
};

// Radial step bound: min(safety * h * min(r g), safety * min(g^2 r^2 / (8 r_theta^2))).
double radial_dt_bound(const RadialCurve& rad, double safety);

// Semi-implicit step of the radial equation for r: the (1/g^2) r_theta_theta
// term is implicit with g frozen, the rest explicit.
Step<RadialCurve> step_radial_r(const RadialCurve& rad, FlowKind kind, double dt, const RadialLimits& limits = {});

// Same splitting applied to u = r^2. Takes and returns r.
Step<RadialCurve> step_radial_u(const RadialCurve& rad, FlowKind kind, double dt, const RadialLimits& limits = {});

// Length of the radial graph, sum of g * h with central differences.
double radial_length(const RadialCurve& rad);

// Solves the cyclic system lower[i] x[i-1] + diag[i] x[i] + upper[i] x[i+1] = rhs[i].
std::vector<double> solve_periodic_tridiagonal(const std::vector<double>& lower, const std::vector<double>& diag,
                                               const std::vector<double>& upper, std::vector<double> rhs);

// Kernel area below this fraction of A0 counts as "no kernel".
inline constexpr double kStarLossFraction = 1e-6;
inline constexpr int kStarLossChecks = 3;
inline constexpr double kExtinctionFraction = 1e-3;

FlowResult run_flow(const FlowConfig& config, const ClosedCurve& initial);

} // namespace curveflow
