#include "curveflow/acceptance.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <limits>
#include <ostream>
#include <sstream>

#include "curveflow/experiments.hpp"

namespace curveflow {

namespace {

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

struct Outcome {
    bool passed = false;
    std::string detail;
};

// --- shared runs ------------------------------------------------------------

// GAPF on the r = 30 + 4 cos 4t + 5 sin 9t curve long enough to become round.
const FlowResult& example_long_run() {
    static const FlowResult result = [] {
        FlowConfig cfg;
        cfg.n = 1024;
        cfg.t_end = 400.0;
        cfg.event_checks.star = false;
        return run_flow(cfg, star_example(1024));
    }();
    return result;
}

struct CorpusEntry {
    std::string name;
    ComparisonReport report;
};

// Comparison corpus shared by the enclosure, inclusion and implication checks.
const std::vector<CorpusEntry>& comparison_corpus() {
    static const std::vector<CorpusEntry> corpus = [] {
        std::vector<CorpusEntry> out;
        FlowConfig base;
        base.n = 512;
        out.push_back({"circle", compare_flows(circle(1.0, {0.0, 0.0}, 512), 0.25, base)});
        out.push_back({"example", compare_flows(star_example(512), 20.0, base)});
        base.n = 256;
        for (std::uint64_t seed = 1; seed <= 20; ++seed) {
            const ClosedCurve c = random_star_curve(seed, 6, 0.6, 256);
            out.push_back({"random" + std::to_string(seed), compare_flows(c, 0.8 * c.area() / kTwoPi, base)});
        }
        return out;
    }();
    return corpus;
}

WingParams long_wing() {
    WingParams p;
    p.l2 = 100.0;
    p.n = 8192;
    return p;
}

// --- criteria ---------------------------------------------------------------

Outcome area_preservation() {
    const auto cm = convergence_metrics(example_long_run().trajectory);
    if (!cm.t_convex) return {false, "curve never became convex by t = 400"};
    const double t_end = 2.0 * *cm.t_convex;

    FlowConfig cfg;
    cfg.n = 1024;
    cfg.t_end = t_end;
    cfg.event_checks.star = false;
    const auto t0 = std::chrono::steady_clock::now();
    const FlowResult res = run_flow(cfg, star_example(1024));
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    double drift = 0.0;
    for (const auto& d : res.trajectory.rows) {
        drift = std::max(drift, std::abs(d.area - res.trajectory.area0) / res.trajectory.area0);
    }
    const bool ok = drift < 1e-3 && secs < 60.0 && res.event.kind == EventKind::Completed;
    return {ok, "t_convex " + fmt("%.3f", *cm.t_convex) + ", max |A-A0|/A0 " + fmt("%.2e", drift) + " over [0, " +
                    fmt("%.3f", t_end) + "], run " + fmt("%.1f", secs) + " s"};
}

Outcome csf_circle_law() {
    FlowConfig cfg;
    cfg.kind = FlowKind::CSF;
    cfg.n = 512;
    cfg.t_end = 1.0;
    cfg.event_checks.star = false;
    const ClosedCurve c = circle(1.0, {0.0, 0.0}, 512);
    cfg.snapshot_every = 200;
    const FlowResult res = run_flow(cfg, c);

    double worst = 0.0;
    for (const auto& s : res.trajectory.snapshots) {
        const Point2 o = polygon_centroid(s.curve.vertices());
        double r = 0.0;
        for (Point2 p : s.curve.vertices()) r += distance(p, o);
        r /= static_cast<double>(s.curve.size());
        const double exact2 = 1.0 - 2.0 * s.t;
        if (exact2 < 0.5) break;
        worst = std::max(worst, std::abs(r - std::sqrt(exact2)) / std::sqrt(exact2));
    }
    const double horizon = res.trajectory.area0 / kTwoPi;
    const bool extinct = res.event.kind == EventKind::Extinction;
    const double off = std::abs(res.event.t - horizon) / horizon;
    return {worst < 1e-3 && extinct && off < 0.01,
            "max rel. radius error " + fmt("%.2e", worst) + " while R^2 >= 0.5; " + to_string(res.event.kind) + " at t " +
                fmt("%.5f", res.event.t) + " vs A0/(2pi) " + fmt("%.5f", horizon) + " (" + fmt("%.2e", off) + ")"};
}

Outcome gapf_circle_equilibrium() {
    FlowConfig cfg;
    cfg.n = 1024;
    cfg.t_end = 1.0;
    cfg.event_checks.star = false;
    const ClosedCurve c = circle(1.0, {0.0, 0.0}, 1024);
    const FlowResult res = run_flow(cfg, c);
    double worst = 0.0;
    const auto& end = *res.event.state;
    for (std::size_t i = 0; i < c.size(); ++i) worst = std::max(worst, distance(end[i], c[i]));
    return {worst < 1e-6 && res.event.kind == EventKind::Completed,
            "max vertex displacement " + fmt("%.2e", worst) + " after " + std::to_string(res.trajectory.steps) + " steps"};
}

Outcome convergence_to_circle() {
    const auto cm = convergence_metrics(example_long_run().trajectory);
    const auto& last = cm.rows.back();
    return {last.ratio - 1.0 < 1e-3 && last.deviation < 0.02,
            "at t " + fmt("%.1f", last.t) + ": L^2/(4 pi A) - 1 = " + fmt("%.2e", last.ratio - 1.0) +
                ", curvature deviation " + fmt("%.2e", last.deviation)};
}

Outcome turning_angle_suite() {
    std::size_t bad_angle = 0, empty = 0, mismatch = 0;
    double worst = std::numeric_limits<double>::infinity();
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        const ClosedCurve c = random_star_curve(seed, 8, 0.7, 256);
        const auto ta = turning_angle(c);
        worst = std::min(worst, ta.value);
        if (!(ta.value > -kPi)) ++bad_angle;
        if (kernel(c).empty()) ++empty;

        const ClosedCurve small = random_star_curve(seed, 5, 0.6, 16 + seed % 49);
        const auto turning = compute_geometry(small).turning;
        const auto fast = turning_angle(turning);
        const auto prefix = prefix_sums(turning);
        const std::size_t n = turning.size();
        TurningAngleReport brute{std::numeric_limits<double>::infinity(), 0, 0};
        for (std::size_t len = 1; len < n; ++len) {
            for (std::size_t s = 0; s < n; ++s) {
                const double v = run_sum(prefix, s, len);
                if (v < brute.value) brute = {v, s, len};
            }
        }
        if (fast.value != brute.value || fast.start != brute.start || fast.length != brute.length) ++mismatch;
    }
    return {bad_angle == 0 && empty == 0 && mismatch == 0,
            "100 curves: turning angle <= -pi " + std::to_string(bad_angle) + ", empty kernels " + std::to_string(empty) +
                ", brute-force mismatches " + std::to_string(mismatch) + " (n 16..64); smallest angle " +
                fmt("%.4f", worst)};
}

// Support positivity at every edge midpoint against the inner edge normal.
bool support_positive(const ClosedCurve& c, Point2 p) {
    for (std::size_t i = 0; i < c.size(); ++i) {
        const Point2 e = c.edge(i);
        const Point2 mid = c[i] + 0.5 * e;
        if (!(cross(e, p - mid) > 0.0)) return false;
    }
    return true;
}

Outcome kernel_oracle() {
    std::size_t disagreements = 0, compared = 0, non_star = 0;
    const int grid = 100;
    for (int k = 0; k < 100; ++k) {
        const ClosedCurve c = k < 50 ? random_star_curve(1000 + k, 6, 0.6, 128)
                                     : random_bent_curve(2000 + k, 0.2 + 0.04 * (k - 50), 128);
        const KernelPolygon ker = kernel(c);
        if (ker.empty()) ++non_star;
        const BoundingBox box = bounding_box(c.vertices());
        const double pitch = std::max(box.hi.x - box.lo.x, box.hi.y - box.lo.y) / grid;
        for (int i = 0; i <= grid; ++i) {
            for (int j = 0; j <= grid; ++j) {
                const Point2 p{box.lo.x + pitch * i, box.lo.y + pitch * j};
                const bool inside = ker.vertices.size() >= 3 && ker.contains(p);
                if (ker.vertices.size() >= 3 && ker.boundary_distance(p) <= 2.0 * pitch) continue;
                ++compared;
                if (inside != support_positive(c, p)) ++disagreements;
            }
        }
    }
    return {disagreements == 0 && non_star > 0,
            std::to_string(disagreements) + " disagreements over " + std::to_string(compared) +
                " grid points; 100 curves, " + std::to_string(non_star) + " without kernel"};
}

Outcome wing_collapse_default() {
    std::ostringstream detail;
    WingParams p;
    const WingCollapseReport dflt = wing_collapse(p, 0.0, 0.5);
    double kmin = std::numeric_limits<double>::infinity(), tmin = 0.0;
    for (std::size_t i = 0; i < dflt.t.size(); ++i) {
        if (dflt.kernel_area[i] < kmin) {
            kmin = dflt.kernel_area[i];
            tmin = dflt.t[i];
        }
    }
    detail << "a=0.1 b=0.3 l1=5 l2=18: initial dK/dt " << fmt("%.3f", dflt.initial_rate) << ", kernel "
           << fmt("%.5f", dflt.kernel_area.front()) << " -> min " << fmt("%.5f", kmin) << " at t " << fmt("%.3f", tmin)
           << " -> " << fmt("%.5f", dflt.kernel_area.back()) << " at t " << fmt("%.2f", dflt.t.back())
           << ", star shape lost: " << (dflt.t_star ? fmt("%.4f", *dflt.t_star) : std::string("no"))
           << ", monotone: " << (dflt.monotone() ? "yes" : "no");

    const WingCollapseReport lw = wing_collapse(long_wing(), 0.0, 0.0);
    detail << "; l2=100 wing: star shape lost at " << (lw.t_star ? fmt("%.4f", *lw.t_star) : std::string("never"))
           << " < A0/(2pi) " << fmt("%.2f", lw.horizon) << ", monotone: " << (lw.monotone() ? "yes" : "no")
           << ", initial dK/dt " << fmt("%.4f", lw.initial_rate);
    return {dflt.passed(), detail.str()};
}

Outcome enclosure() {
    std::size_t violations = 0, rows = 0;
    double circle_err = 0.0;
    for (const auto& e : comparison_corpus()) {
        violations += e.report.enclosure_violations();
        for (const auto& r : e.report.rows) {
            if (r.t > 0.0) {
                ++rows;
                if (!r.radial || !(r.f_min > 0.0)) ++violations;
            }
            if (e.name == "circle") circle_err = std::max(circle_err, std::abs(r.f_min - (1.0 - std::sqrt(1.0 - 2.0 * r.t))));
        }
    }
    return {violations == 0 && circle_err < 1e-3,
            std::to_string(violations) + " violations over " + std::to_string(rows) +
                " sampled times (circle, example, 20 random); circle f_min error " + fmt("%.2e", circle_err)};
}

Outcome kernel_inclusion() {
    std::size_t violations = 0, checked = 0;
    for (const auto& e : comparison_corpus()) {
        violations += e.report.inclusion_violations();
        for (const auto& r : e.report.rows) checked += r.both_kernels;
    }
    return {violations == 0 && checked > 0,
            std::to_string(violations) + " violations over " + std::to_string(checked) + " times with both kernels"};
}

Outcome star_loss_order() {
    std::ostringstream detail;
    bool ok = true;
    std::size_t counterexamples = 0;
    for (const auto& e : comparison_corpus()) {
        const auto& g = e.report.gapf.star_lost_at;
        const auto& c = e.report.csf.star_lost_at;
        if (g && !(c && *c <= *g)) ++counterexamples;
    }
    ok = ok && counterexamples == 0;
    detail << "corpus counterexamples " << counterexamples;

    WingParams p;
    p.n = 2048;
    const ClosedCurve dflt = smooth_c1(flying_wing(p).curve);
    FlowConfig base;
    base.n = p.n;
    const StarLossReport r4 = star_loss_implication(dflt, 1.0, base);
    ok = ok && r4.passed;
    detail << "; default wing to t 1: " << (r4.vacuous ? "vacuous (GAPF kept its kernel)" : "checked");

    const WingParams lp = long_wing();
    const ClosedCurve lw = smooth_c1(flying_wing(lp).curve);
    base.n = lp.n;
    const StarLossReport rl = star_loss_implication(lw, 3.0, base);
    ok = ok && rl.passed && !rl.vacuous;
    detail << "; l2=100 wing: CSF loss " << (rl.csf_loss ? fmt("%.4f", *rl.csf_loss) : std::string("none"))
           << " <= GAPF loss " << (rl.gapf_loss ? fmt("%.4f", *rl.gapf_loss) : std::string("none"));
    return {ok, detail.str()};
}

Outcome cross_solver() {
    auto run = [](Formulation f, std::size_t n) {
        FlowConfig cfg;
        cfg.n = n;
        cfg.formulation = f;
        cfg.t_end = 0.5;
        cfg.origin = Point2{0.0, 0.0};
        cfg.dt_init = 4e-3 * (1024.0 / static_cast<double>(n)) * (1024.0 / static_cast<double>(n));
        cfg.event_checks.star = false;
        cfg.sample_times = {0.1, 0.2, 0.3, 0.4, 0.5};
        const FlowResult res = run_flow(cfg, star_example(n));
        std::vector<RadialCurve> out;
        for (const auto& s : res.trajectory.snapshots) {
            if (s.t > 0.0) out.push_back(s.radial ? *s.radial : parametric_to_radial(s.curve, {0.0, 0.0}, n));
        }
        return out;
    };
    auto sup = [](const std::vector<RadialCurve>& a, const std::vector<RadialCurve>& b) {
        double m = 0.0;
        for (std::size_t k = 0; k < a.size(); ++k) {
            for (std::size_t i = 0; i < a[k].size(); ++i) m = std::max(m, std::abs(a[k].radii()[i] - b[k].radii()[i]));
        }
        return m;
    };
    double d[2] = {0.0, 0.0};
    double mean_r = 0.0;
    const std::size_t sizes[2] = {1024, 2048};
    for (int k = 0; k < 2; ++k) {
        const auto p = run(Formulation::Parametric, sizes[k]);
        const auto r = run(Formulation::RadialR, sizes[k]);
        const auto u = run(Formulation::RadialU, sizes[k]);
        if (p.size() != 5 || r.size() != 5 || u.size() != 5) return {false, "missing snapshots"};
        d[k] = std::max({sup(p, r), sup(p, u), sup(r, u)});
        if (k == 0) mean_r = p.back().mean_radius();
    }
    return {d[0] < 1e-2 * mean_r && d[1] <= 0.5 * d[0],
            "sup discrepancy " + fmt("%.2e", d[0]) + " at n 1024 (limit " + fmt("%.3f", 1e-2 * mean_r) + "), " +
                fmt("%.2e", d[1]) + " at n 2048, ratio " + fmt("%.2f", d[0] / d[1])};
}

Outcome wing_exactness() {
    const WingParams p;
    const FlyingWing w = flying_wing(p);
    const WingSkeleton& s = w.skeleton;
    const double rho = std::sqrt(p.a * p.a + p.b * p.b);
    const double lambda = 2.0 * p.a / (2.0 * p.a + p.b);
    const double k = (1.0 - lambda) / (lambda * lambda) / ((p.l2 + 1.0) * rho - 2.0 * p.l2 * p.a);
    const double ok_len = p.l1 * rho * rho / p.b;
    double junction = 0.0;
    for (const auto& j : wing_junctions(s)) junction = std::max(junction, j.angle_mismatch);

    // Parabola: through J at xi = 0 and F at xi = x_I - x_F, slope -b/a at F.
    const double xi_f = s.I.x - s.F.x;
    const Point2 f_on = {s.I.x - xi_f, s.k * xi_f * xi_f + s.J.y};
    const double f_miss = distance(f_on, s.F);
    const double slope = -2.0 * s.k * xi_f; // dy/dx with x = x_I - xi
    const double slope_err = std::abs(slope - (-p.b / p.a));

    const double e_lambda = std::abs(s.lambda - lambda);
    const double e_k = std::abs(s.k - k);
    const double e_ok = std::abs(norm(s.K) - ok_len);
    const bool ok = junction < 1e-8 && e_lambda < 1e-12 && std::abs(s.lambda - 0.4) < 1e-12 && e_k < 1e-12 &&
                    e_ok < 1e-10 && f_miss < 1e-10 && slope_err < 1e-8;
    return {ok, "max junction mismatch " + fmt("%.1e", junction) + " rad, |lambda err| " + fmt("%.1e", e_lambda) +
                    ", |k err| " + fmt("%.1e", e_k) + ", ||OK| - l1 rho^2/b| " + fmt("%.1e", e_ok) + ", F miss " +
                    fmt("%.1e", f_miss) + ", slope err at F " + fmt("%.1e", slope_err)};
}

struct Entry {
    const char* name;
    Outcome (*fn)();
};

const Entry kEntries[kCriterionCount] = {
    {"gapf-area-preservation", area_preservation},
    {"csf-circle-law", csf_circle_law},
    {"gapf-circle-equilibrium", gapf_circle_equilibrium},
    {"convergence-to-circle", convergence_to_circle},
    {"turning-angle-suite", turning_angle_suite},
    {"kernel-grid-oracle", kernel_oracle},
    {"flying-wing-collapse", wing_collapse_default},
    {"gapf-csf-enclosure", enclosure},
    {"kernel-inclusion", kernel_inclusion},
    {"star-loss-implication", star_loss_order},
    {"cross-solver-consistency", cross_solver},
    {"flying-wing-exactness", wing_exactness},
};

} // namespace

std::string criterion_name(int id) {
    if (id < 1 || id > kCriterionCount) throw ParameterError("criterion id must be in 1.." + std::to_string(kCriterionCount));
    return kEntries[id - 1].name;
}

CriterionResult run_criterion(int id) {
    CriterionResult r;
    r.id = id;
    r.name = criterion_name(id);
    const auto t0 = std::chrono::steady_clock::now();
    try {
        const Outcome o = kEntries[id - 1].fn();
        r.passed = o.passed;
        r.detail = o.detail;
    } catch (const std::exception& e) {
        r.passed = false;
        r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

std::string format_result(const CriterionResult& r) {
    return std::string(r.passed ? "PASS" : "FAIL") + " " + std::to_string(r.id) + " " + r.name + ": " + r.detail + " [" +
           fmt("%.1f", r.seconds) + " s]";
}

std::vector<CriterionResult> run_acceptance(const std::vector<int>& ids, std::ostream& out) {
    std::vector<CriterionResult> results;
    for (int id : ids) {
        results.push_back(run_criterion(id));
        out << format_result(results.back()) << std::endl;
    }
    return results;
}

} // namespace curveflow
