#include "curveflow/experiments.hpp"

#include <algorithm>
#include <future>
#include <limits>

namespace curveflow {

std::vector<double> comparison_grid(double t_end, std::size_t samples) {
    if (!(t_end > 0.0)) throw ParameterError("comparison grid: t_end must be positive");
    if (samples < 4) throw ParameterError("comparison grid: need at least 4 samples");
    const std::size_t early = samples / 4;
    const std::size_t late = samples - early;
    const double split = 0.1 * t_end;
    std::vector<double> grid{0.0};
    // early - 1 geometric points ending at split, starting three decades lower
    for (std::size_t i = 0; i + 1 < early; ++i) {
        const double f = static_cast<double>(i) / static_cast<double>(early - 1);
        grid.push_back(split * std::pow(1e-3, 1.0 - f));
    }
    for (std::size_t i = 0; i < late; ++i) {
        grid.push_back(split + (t_end - split) * static_cast<double>(i) / static_cast<double>(late - 1));
    }
    grid.back() = t_end; // the affine formula can land one ulp past t_end
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    return grid;
}

std::size_t ComparisonReport::enclosure_violations() const {
    return static_cast<std::size_t>(
        std::count_if(rows.begin(), rows.end(), [](const ComparisonRow& r) { return r.t > 0.0 && !r.enclosure; }));
}

std::size_t ComparisonReport::inclusion_violations() const {
    return static_cast<std::size_t>(
        std::count_if(rows.begin(), rows.end(), [](const ComparisonRow& r) { return !r.kernel_inclusion; }));
}

namespace {

std::optional<RadialCurve> try_radial(const ClosedCurve& c, Point2 origin, std::size_t n) {
    try {
        return parametric_to_radial(c, origin, n);
    } catch (const RepresentationError&) {
        return std::nullopt;
    }
}

const Snapshot* find_snapshot(const std::vector<Snapshot>& snaps, double t) {
    auto it = std::find_if(snaps.begin(), snaps.end(), [&](const Snapshot& s) { return s.t == t; });
    return it == snaps.end() ? nullptr : &*it;
}

ComparisonRow compare_at(double t, const ClosedCurve& outer, const ClosedCurve& inner, Point2 origin, std::size_t n,
                         double eps) {
    ComparisonRow row;
    row.t = t;
    const auto ro = try_radial(outer, origin, n);
    const auto ri = try_radial(inner, origin, n);
    if (ro && ri) {
        row.radial = true;
        double f = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < n; ++i) f = std::min(f, ro->radii()[i] - ri->radii()[i]);
        row.f_min = f;
        row.enclosure = f > 0.0;
    } else {
        row.enclosure = std::all_of(inner.vertices().begin(), inner.vertices().end(),
                                    [&](Point2 p) { return point_in_polygon(outer.vertices(), p); });
    }

    const KernelPolygon ko = kernel(outer);
    const KernelPolygon ki = kernel(inner);
    row.kernel_area_gapf = kernel_area(ko);
    row.kernel_area_csf = kernel_area(ki);
    row.both_kernels = ko.status == KernelStatus::Full && ki.status == KernelStatus::Full;
    if (row.both_kernels) {
        row.kernel_inclusion = std::all_of(ki.vertices.begin(), ki.vertices.end(),
                                           [&](Point2 p) { return ko.contains(p, eps); });
    }
    return row;
}

} // namespace

ComparisonReport compare_flows(const ClosedCurve& initial, double t_end, const FlowConfig& base, std::size_t samples) {
    FlowConfig cfg = base;
    cfg.t_end = t_end;
    cfg.sample_times = comparison_grid(t_end, samples);
    cfg.validate();

    // Both runs see the same mesh.
    const ClosedCurve start = initial.size() == cfg.n && cfg.formulation == Formulation::Parametric
                                  ? initial
                                  : resample_uniform_arclength(initial, cfg.n, Interpolation::Cubic);

    ComparisonReport rep;
    const KernelPolygon k0 = kernel(start);
    rep.origin = cfg.origin ? *cfg.origin : (k0.empty() ? polygon_centroid(start.vertices()) : k0.centroid());
    if (!cfg.origin && cfg.formulation != Formulation::Parametric) cfg.origin = rep.origin;
    rep.epsilon = 1e-6 * bounding_box(start.vertices()).diameter();

    FlowConfig gcfg = cfg;
    gcfg.kind = FlowKind::GAPF;
    FlowConfig ccfg = cfg;
    ccfg.kind = FlowKind::CSF;
    auto gapf = std::async(std::launch::async, [&] { return run_flow(gcfg, start); });
    FlowResult csf = run_flow(ccfg, start);
    FlowResult g = gapf.get();

    for (const Snapshot& gs : g.trajectory.snapshots) {
        const Snapshot* cs = find_snapshot(csf.trajectory.snapshots, gs.t);
        if (!cs) continue;
        rep.rows.push_back(compare_at(gs.t, gs.curve, cs->curve, rep.origin, cfg.n, rep.epsilon));
    }
    rep.gapf_event = std::move(g.event);
    rep.csf_event = std::move(csf.event);
    rep.gapf = std::move(g.trajectory);
    rep.csf = std::move(csf.trajectory);
    return rep;
}

bool WingCollapseReport::monotone() const {
    return !kernel_area.empty() && max_increase <= 1e-3 * kernel_area.front();
}

bool WingCollapseReport::passed() const { return t_star && *t_star < horizon && monotone() && initial_rate < 0.0; }

WingCollapseReport wing_collapse(const WingParams& p, double epsilon, double t_end, const FlowConfig& base) {
    WingCollapseReport rep;
    rep.params = p;
    const FlyingWing wing = flying_wing(p);
    rep.epsilon = epsilon > 0.0 ? epsilon : default_smoothing_time(wing.curve);
    const ClosedCurve start = smooth_c1(wing.curve, rep.epsilon);
    rep.area0 = start.area();
    rep.length0 = start.length();
    rep.horizon = rep.area0 / kTwoPi;
    rep.predicted_u_rate = -2.0 + 4.0 * kPi * wing.skeleton.rho / rep.length0;

    FlowConfig cfg = base;
    cfg.kind = FlowKind::GAPF;
    cfg.formulation = Formulation::Parametric;
    cfg.n = p.n;
    cfg.t_end = t_end > 0.0 ? t_end : rep.horizon;
    cfg.event_checks.star = true;
    cfg.stop_on_star_loss = true;
    cfg.sample_times = comparison_grid(cfg.t_end, 200);
    FlowResult res = run_flow(cfg, start);

    for (const Diagnostics& d : res.trajectory.rows) {
        if (!rep.kernel_area.empty() && d.kernel_area == rep.kernel_area.back()) continue;
        rep.t.push_back(d.t);
        rep.kernel_area.push_back(d.kernel_area);
    }
    for (std::size_t i = 1; i < rep.kernel_area.size(); ++i) {
        rep.max_increase = std::max(rep.max_increase, rep.kernel_area[i] - rep.kernel_area[i - 1]);
    }
    const double probe = 1e-3 * rep.horizon;
    for (std::size_t i = 1; i < rep.t.size(); ++i) {
        if (rep.t[i] >= probe) {
            rep.initial_rate = (rep.kernel_area[i] - rep.kernel_area[0]) / rep.t[i];
            break;
        }
    }

    // The arc AB sits inside the cone |x| <= (a / b) y.
    const double slope = p.a / p.b;
    for (const Snapshot& s : res.trajectory.snapshots) {
        double u = std::numeric_limits<double>::infinity();
        for (Point2 q : s.curve.vertices()) {
            if (q.y > 0.0 && std::abs(q.x) <= slope * q.y) u = std::min(u, dot(q, q));
        }
        if (std::isfinite(u)) {
            rep.u_min_t.push_back(s.t);
            rep.u_min.push_back(u);
        }
    }
    rep.t_star = res.trajectory.star_lost_at;
    rep.event = std::move(res.event);
    return rep;
}

StarLossReport star_loss_implication(const ClosedCurve& initial, double t_end, const FlowConfig& base) {
    StarLossReport rep;
    rep.horizon = initial.area() / kTwoPi;
    FlowConfig cfg = base;
    cfg.t_end = t_end > 0.0 ? t_end : rep.horizon;
    cfg.event_checks.star = true;
    cfg.stop_on_star_loss = true;
    FlowConfig gcfg = cfg;
    gcfg.kind = FlowKind::GAPF;
    FlowConfig ccfg = cfg;
    ccfg.kind = FlowKind::CSF;

    auto gapf = std::async(std::launch::async, [&] { return run_flow(gcfg, initial); });
    const FlowResult csf = run_flow(ccfg, initial);
    const FlowResult g = gapf.get();

    rep.gapf_loss = g.trajectory.star_lost_at;
    rep.csf_loss = csf.trajectory.star_lost_at;
    rep.vacuous = !rep.gapf_loss || !(*rep.gapf_loss < rep.horizon);
    rep.passed = rep.vacuous || (rep.csf_loss && *rep.csf_loss <= *rep.gapf_loss);
    return rep;
}

ConvergenceReport convergence_metrics(const Trajectory& traj) {
    ConvergenceReport rep;
    const double c = std::sqrt(kPi / traj.area0);
    for (const Diagnostics& d : traj.rows) {
        ConvergenceRow row;
        row.t = d.t;
        row.ratio = d.length * d.length / (4.0 * kPi * d.area);
        row.deviation = std::max(std::abs(d.kappa_max - c), std::abs(d.kappa_min - c)) / c;
        rep.rows.push_back(row);
        if (!rep.t_convex && d.kappa_min > 0.0) rep.t_convex = d.t;
    }
    return rep;
}

double chord_arc_ratio(const ClosedCurve& curve) {
    const std::size_t n = curve.size();
    std::vector<double> s(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) s[i + 1] = s[i] + norm(curve.edge(i));
    const double total = s[n];
    double best = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double along = s[j] - s[i];
            const double arc = std::min(along, total - along);
            if (arc > 0.0) best = std::min(best, distance(curve[i], curve[j]) / arc);
        }
    }
    return best;
}

} // namespace curveflow
