#include <doctest.h>

#include <random>

#include "curveflow/curve_zoo.hpp"
#include "curveflow/flow.hpp"

using namespace curveflow;

namespace {

FlowConfig quick(FlowKind kind, std::size_t n, double t_end) {
    FlowConfig cfg;
    cfg.kind = kind;
    cfg.n = n;
    cfg.t_end = t_end;
    cfg.dt_init = 1e-3;
    return cfg;
}

double max_radius_error(const ClosedCurve& c, double r) {
    double e = 0.0;
    for (const Point2& p : c.vertices()) e = std::max(e, std::abs(norm(p) - r));
    return e;
}

} // namespace

TEST_CASE("config validation") {
    FlowConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    cfg.safety = 1.5;
    CHECK_THROWS_AS(cfg.validate(), ParameterError);
    cfg = {};
    cfg.n = 2;
    CHECK_THROWS_AS(cfg.validate(), ParameterError);
    cfg = {};
    cfg.t_end = -1.0;
    CHECK_THROWS_AS(cfg.validate(), ParameterError);
    CHECK(parse_flow_kind("GAPF") == FlowKind::GAPF);
    CHECK(parse_flow_kind(to_string(FlowKind::CSF)) == FlowKind::CSF);
    CHECK(parse_formulation(to_string(Formulation::RadialU)) == Formulation::RadialU);
    CHECK_THROWS(parse_flow_kind("mcf"));
}

TEST_CASE("periodic tridiagonal solve matches a dense multiply") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (std::size_t n : {3u, 5u, 17u, 200u}) {
        std::vector<double> lo(n), di(n), up(n), x(n);
        for (std::size_t i = 0; i < n; ++i) {
            lo[i] = u(rng);
            up[i] = u(rng);
            di[i] = 3.0 + u(rng);
            x[i] = u(rng);
        }
        std::vector<double> rhs(n);
        for (std::size_t i = 0; i < n; ++i) rhs[i] = lo[i] * x[(i + n - 1) % n] + di[i] * x[i] + up[i] * x[(i + 1) % n];
        const auto got = solve_periodic_tridiagonal(lo, di, up, rhs);
        for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(got[i] - x[i]) < 1e-12);
    }
}

TEST_CASE("discrete mean curvature approximates 2 pi / L") {
    for (const ClosedCurve& c : {circle(1.0, {0, 0}, 256), star_example(2048), ellipse(2, 1, {0, 0}, 1024)}) {
        const auto g = compute_geometry(c);
        CHECK(discrete_mean_curvature(g) == doctest::Approx(kTwoPi / g.length).epsilon(1e-3));
    }
}

TEST_CASE("explicit steps") {
    const ClosedCurve c = circle(1.0, {0, 0}, 128);
    const auto g = compute_geometry(c);
    const double bound = parametric_dt_bound(g, 0.4);
    CHECK(bound == doctest::Approx(0.4 * g.min_edge() * g.min_edge() / 2));
    CHECK(step_parametric(c, FlowKind::CSF, 10 * bound, 0.4).status == StepStatus::RejectedCfl);

    const auto csf = step_parametric(c, FlowKind::CSF, bound, 0.4);
    REQUIRE(csf.accepted());
    // one explicit step moves every vertex inward by dt * kappa
    CHECK(max_radius_error(*csf.next, 1.0 - bound * g.curvature[0]) < 1e-14);

    const auto gapf = step_parametric(c, FlowKind::GAPF, bound, 0.4);
    REQUIRE(gapf.accepted());
    CHECK(max_radius_error(*gapf.next, 1.0) < 1e-12);
}

TEST_CASE("radial steps on a circle") {
    const RadialCurve r({0, 0}, std::vector<double>(128, 1.0));
    const double dt = 1e-4;
    const auto s = step_radial_r(r, FlowKind::CSF, dt);
    REQUIRE(s.accepted());
    for (double v : s.next->radii()) CHECK(v == doctest::Approx(1.0 - dt).epsilon(1e-7));
    const auto su = step_radial_u(r, FlowKind::CSF, dt);
    REQUIRE(su.accepted());
    for (double v : su.next->radii()) CHECK(v == doctest::Approx(std::sqrt(1.0 - 2 * dt)).epsilon(1e-12));
    const auto g = step_radial_r(r, FlowKind::GAPF, dt);
    REQUIRE(g.accepted());
    for (double v : g.next->radii()) CHECK(std::abs(v - 1.0) < 1e-5);
    CHECK(radial_length(r) == doctest::Approx(kTwoPi).epsilon(1e-3));
    CHECK(step_radial_r(r, FlowKind::CSF, dt, {1.5, 50.0}).status != StepStatus::Accepted);
}

TEST_CASE("shrinking circle follows sqrt(R^2 - 2t) and goes extinct near R^2/2") {
    for (auto form : {Formulation::Parametric, Formulation::RadialR, Formulation::RadialU}) {
        FlowConfig cfg = quick(FlowKind::CSF, 256, 1.0);
        cfg.formulation = form;
        cfg.origin = Point2{0, 0};
        cfg.sample_times = {0.25};
        const FlowResult res = run_flow(cfg, circle(1.0, {0, 0}, 256));
        CHECK(res.event.kind == EventKind::Extinction);
        CHECK(res.event.t == doctest::Approx(0.5).epsilon(0.01));
        bool found = false;
        for (const Snapshot& s : res.trajectory.snapshots) {
            if (s.t != 0.25) continue;
            found = true;
            CHECK(max_radius_error(s.curve, std::sqrt(0.5)) < 2e-3);
        }
        CHECK(found);
    }
}

TEST_CASE("GAPF keeps area and shortens length") {
    FlowConfig cfg = quick(FlowKind::GAPF, 512, 0.5);
    const ClosedCurve e = ellipse(2.0, 1.0, {0, 0}, 512);
    const FlowResult res = run_flow(cfg, e);
    CHECK(res.event.kind == EventKind::Completed);
    const auto& rows = res.trajectory.rows;
    REQUIRE(rows.size() > 2);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        CHECK(std::abs(rows[i].area - rows[0].area) / rows[0].area < 1e-4);
        CHECK(rows[i].length <= rows[i - 1].length + 1e-9);
    }
    CHECK(rows.back().t == doctest::Approx(0.5));
}

TEST_CASE("radial and parametric GAPF agree on a star curve") {
    FlowConfig cfg = quick(FlowKind::GAPF, 512, 0.05);
    cfg.origin = Point2{0, 0};
    cfg.sample_times = {0.05};
    const ClosedCurve c = random_star_curve(5, 4, 0.5, 512);
    cfg.formulation = Formulation::Parametric;
    const FlowResult a = run_flow(cfg, c);
    cfg.formulation = Formulation::RadialU;
    const FlowResult b = run_flow(cfg, c);
    REQUIRE(a.event.kind == EventKind::Completed);
    REQUIRE(b.event.kind == EventKind::Completed);
    const ClosedCurve& ca = a.trajectory.snapshots.back().curve;
    const ClosedCurve& cb = b.trajectory.snapshots.back().curve;
    const RadialCurve ra = parametric_to_radial(ca, {0, 0}, 512);
    const RadialCurve rb = parametric_to_radial(cb, {0, 0}, 512);
    for (std::size_t i = 0; i < 512; ++i) CHECK(std::abs(ra.radii()[i] - rb.radii()[i]) < 5e-3);
}

TEST_CASE("star shape loss is reported on a bent curve under CSF") {
    FlowConfig cfg = quick(FlowKind::CSF, 256, 0.05);
    cfg.stop_on_star_loss = true;
    const FlowResult res = run_flow(cfg, random_bent_curve(11, 2.0, 256));
    // already non-star at t = 0
    CHECK(res.event.kind == EventKind::StarShapeLost);
    CHECK(res.event.t == 0.0);
    REQUIRE(res.event.state);
}
