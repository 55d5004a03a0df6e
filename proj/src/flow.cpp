#include "curveflow/flow.hpp"

#include <algorithm>
#include <limits>

#include "curveflow/star_kernel.hpp"

namespace curveflow {

std::string to_string(FlowKind k) { return k == FlowKind::GAPF ? "GAPF" : "CSF"; }

std::string to_string(Formulation f) {
    switch (f) {
    case Formulation::Parametric: return "parametric";
    case Formulation::RadialR: return "radial_r";
    case Formulation::RadialU: return "radial_u";
    }
    return "parametric";
}

FlowKind parse_flow_kind(const std::string& s) {
    if (s == "GAPF") return FlowKind::GAPF;
    if (s == "CSF") return FlowKind::CSF;
    throw ParameterError("kind: expected GAPF or CSF, got '" + s + "'");
}

Formulation parse_formulation(const std::string& s) {
    if (s == "parametric") return Formulation::Parametric;
    if (s == "radial_r") return Formulation::RadialR;
    if (s == "radial_u") return Formulation::RadialU;
    throw ParameterError("formulation: expected parametric, radial_r or radial_u, got '" + s + "'");
}

std::string to_string(EventKind k) {
    switch (k) {
    case EventKind::StarShapeLost: return "StarShapeLost";
    case EventKind::EmbeddednessLost: return "EmbeddednessLost";
    case EventKind::Extinction: return "Extinction";
    case EventKind::RadialBreakdown: return "RadialBreakdown";
    case EventKind::Completed: return "Completed";
    }
    return "Completed";
}

void FlowConfig::validate() const {
    if (n < 3) throw ParameterError("n: mesh size must be at least 3");
    if (!(dt_init > 0.0) || !std::isfinite(dt_init)) throw ParameterError("dt_init: must be positive");
    if (!(safety > 0.0 && safety <= 1.0)) throw ParameterError("safety: must lie in (0, 1]");
    if (!(t_end > 0.0) || !std::isfinite(t_end)) throw ParameterError("t_end: must be positive");
    if (resample_every == 0) throw ParameterError("resample_every: must be at least 1");
    if (check_every == 0) throw ParameterError("check_every: must be at least 1");
    if (origin && !is_finite(*origin)) throw ParameterError("origin: must be finite");
    for (double s : sample_times) {
        if (!(s >= 0.0) || !std::isfinite(s)) throw ParameterError("sample_times: must be nonnegative");
    }
}

double parametric_dt_bound(const CurveGeometry& geom, double safety) {
    const double e = geom.min_edge();
    return safety * e * e / 2.0;
}

double discrete_mean_curvature(const CurveGeometry& geom) {
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < geom.turning.size(); ++i) {
        const double c = std::cos(0.5 * geom.turning[i]);
        num += geom.turning[i] * c;
        den += geom.ds[i] * c;
    }
    return num / den;
}

Step<ClosedCurve> step_parametric(const ClosedCurve& curve, const CurveGeometry& geom, FlowKind kind, double dt,
                                  double safety) {
    if (dt > parametric_dt_bound(geom, safety) * (1.0 + 1e-8)) return {std::nullopt, StepStatus::RejectedCfl};
    const double shift = kind == FlowKind::GAPF ? discrete_mean_curvature(geom) : 0.0;
    std::vector<Point2> next(curve.vertices());
    for (std::size_t i = 0; i < next.size(); ++i) {
        const double beta = geom.curvature[i] - shift;
        next[i] += (dt * beta) * geom.normal[i];
    }
    return {ClosedCurve(std::move(next)), StepStatus::Accepted};
}

Step<ClosedCurve> step_parametric(const ClosedCurve& curve, FlowKind kind, double dt, double safety) {
    return step_parametric(curve, compute_geometry(curve), kind, dt, safety);
}

namespace {

class Driver {
public:
    Driver(const FlowConfig& cfg, const ClosedCurve& initial) : cfg_(cfg), state_{0.0, initial, {}, {}} {
        cfg_.validate();
        std::sort(cfg_.sample_times.begin(), cfg_.sample_times.end());
        if (!is_embedded(initial)) throw DomainError("initial curve is not embedded");

        ClosedCurve start = initial;
        if (cfg_.formulation == Formulation::Parametric && start.size() != cfg_.n) {
            start = resample_uniform_arclength(start, cfg_.n, Interpolation::Cubic);
        }
        traj_.area0 = start.area();
        traj_.length0 = start.length();

        if (cfg_.formulation != Formulation::Parametric) {
            Point2 origin;
            if (cfg_.origin) {
                origin = *cfg_.origin;
            } else {
                const KernelPolygon k = kernel(start);
                if (k.empty()) throw RepresentationError("initial curve has no kernel; radial solvers need a pole");
                origin = k.centroid();
            }
            traj_.origin = origin;
            RadialCurve rad = parametric_to_radial(start, origin, cfg_.n);
            limits_.r_floor = 1e-6 * rad.mean_radius();
            state_.curve = std::move(rad);
        } else {
            state_.curve = std::move(start);
        }
        refresh_geometry();
    }

    FlowResult run() {
        check_kernel();
        record(true);
        while (!event_ && state_.t < cfg_.t_end) {
            advance();
        }
        if (!event_) event_ = FlowEvent{EventKind::Completed, state_.t, current_curve()};
        return {std::move(traj_), std::move(*event_)};
    }

private:
    bool radial() const { return std::holds_alternative<RadialCurve>(state_.curve); }

    ClosedCurve current_curve() const {
        if (radial()) return radial_to_parametric(std::get<RadialCurve>(state_.curve));
        return std::get<ClosedCurve>(state_.curve);
    }

    void refresh_geometry() {
        if (radial()) {
            parametric_ = radial_to_parametric(std::get<RadialCurve>(state_.curve));
            state_.geometry = compute_geometry(*parametric_);
        } else {
            parametric_.reset();
            state_.geometry = compute_geometry(std::get<ClosedCurve>(state_.curve));
        }
    }

    const ClosedCurve& polygon() const {
        return radial() ? *parametric_ : std::get<ClosedCurve>(state_.curve);
    }

    double next_target() const {
        double target = cfg_.t_end;
        while (next_sample_ < cfg_.sample_times.size() && cfg_.sample_times[next_sample_] <= state_.t) ++next_sample_;
        if (next_sample_ < cfg_.sample_times.size()) target = std::min(target, cfg_.sample_times[next_sample_]);
        return target;
    }

    void advance() {
        const double target = next_target();
        double bound = radial() ? radial_dt_bound(std::get<RadialCurve>(state_.curve), cfg_.safety)
                                : parametric_dt_bound(state_.geometry, cfg_.safety);
        double dt = std::min({cfg_.dt_init, bound, target - state_.t});
        // Avoid leaving a sliver before the target.
        if (target - state_.t - dt < 1e-9 * dt) dt = target - state_.t;
        const double dt_floor = 1e-14 * std::max(1.0, state_.t);

        for (;;) {
            if (radial()) {
                const auto& rad = std::get<RadialCurve>(state_.curve);
                auto res = cfg_.formulation == Formulation::RadialU ? step_radial_u(rad, cfg_.kind, dt, limits_)
                                                                    : step_radial_r(rad, cfg_.kind, dt, limits_);
                if (res.status == StepStatus::Breakdown) {
                    if (!cfg_.handoff) {
                        event_ = FlowEvent{EventKind::RadialBreakdown, state_.t, current_curve()};
                        return;
                    }
                    hand_off();
                    return;
                }
                if (res.accepted()) {
                    state_.curve = std::move(*res.next);
                    break;
                }
            } else {
                auto res = step_parametric(std::get<ClosedCurve>(state_.curve), state_.geometry, cfg_.kind, dt,
                                           cfg_.safety);
                if (res.accepted()) {
                    state_.curve = std::move(*res.next);
                    break;
                }
            }
            ++traj_.rejected_steps;
            dt *= 0.5;
            if (dt < dt_floor) {
                if (radial() && cfg_.handoff) {
                    hand_off();
                    return;
                }
                if (radial()) {
                    event_ = FlowEvent{EventKind::RadialBreakdown, state_.t, current_curve()};
                    return;
                }
                throw Error("time step underflow at t = " + std::to_string(state_.t));
            }
        }

        const bool on_target = dt == target - state_.t;
        state_.t = on_target ? target : state_.t + dt;
        ++traj_.steps;

        if (!radial() && traj_.steps % cfg_.resample_every == 0) {
            auto& c = std::get<ClosedCurve>(state_.curve);
            c = resample_uniform_arclength(c, cfg_.n, Interpolation::Cubic);
            if (cfg_.event_checks.embedding && !is_embedded(c)) {
                refresh_geometry();
                event_ = FlowEvent{EventKind::EmbeddednessLost, state_.t, c};
                record(true);
                return;
            }
        }
        refresh_geometry();

        const bool sample = on_target && next_sample_ < cfg_.sample_times.size() &&
                            cfg_.sample_times[next_sample_] == target;
        if (sample || traj_.steps % cfg_.check_every == 0 || state_.t >= cfg_.t_end) check_kernel();

        if (cfg_.kind == FlowKind::CSF && cfg_.event_checks.extinction &&
            state_.geometry.area < kExtinctionFraction * traj_.area0) {
            event_ = FlowEvent{EventKind::Extinction, state_.t, current_curve()};
        }
        const bool periodic = cfg_.snapshot_every > 0 && traj_.steps % cfg_.snapshot_every == 0;
        record(sample || periodic);
    }

    void hand_off() {
        traj_.radial_handoff_at = state_.t;
        ClosedCurve c = resample_uniform_arclength(radial_to_parametric(std::get<RadialCurve>(state_.curve)), cfg_.n,
                                                   Interpolation::Cubic);
        state_.curve = std::move(c);
        refresh_geometry();
    }

    void check_kernel() {
        if (!cfg_.event_checks.star) return;
        const double area = kernel_area(kernel(polygon()));
        kernel_area_ = area;
        if (area < kStarLossFraction * traj_.area0) {
            if (empty_checks_ == 0) first_empty_t_ = state_.t;
            ++empty_checks_;
            if (empty_checks_ >= kStarLossChecks && !traj_.star_lost_at) {
                traj_.star_lost_at = first_empty_t_;
                if (cfg_.stop_on_star_loss) event_ = FlowEvent{EventKind::StarShapeLost, first_empty_t_, polygon()};
            }
        } else {
            empty_checks_ = 0;
        }
    }

    void record(bool snapshot) {
        const auto& g = state_.geometry;
        Diagnostics d;
        d.t = state_.t;
        d.length = g.length;
        d.area = g.area;
        d.kappa_min = g.kappa_min();
        d.kappa_max = g.kappa_max();
        d.kernel_area = kernel_area_;
        d.is_star = kernel_area_ >= kStarLossFraction * traj_.area0;
        state_.diagnostics = d;
        traj_.rows.push_back(d);
        if (snapshot) {
            std::optional<RadialCurve> rad;
            if (radial()) rad = std::get<RadialCurve>(state_.curve);
            traj_.snapshots.push_back({traj_.steps, state_.t, polygon(), std::move(rad)});
        }
    }

    FlowConfig cfg_;
    FlowState state_;
    std::optional<ClosedCurve> parametric_;
    RadialLimits limits_;
    Trajectory traj_;
    std::optional<FlowEvent> event_;
    mutable std::size_t next_sample_ = 0;
    double kernel_area_ = 0.0;
    int empty_checks_ = 0;
    double first_empty_t_ = 0.0;
};

} // namespace

FlowResult run_flow(const FlowConfig& config, const ClosedCurve& initial) { return Driver(config, initial).run(); }

} // namespace curveflow
