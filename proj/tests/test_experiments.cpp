#include <doctest.h>

#include "curveflow/curve_zoo.hpp"
#include "curveflow/experiments.hpp"

using namespace curveflow;

TEST_CASE("comparison grid") {
    const auto g = comparison_grid(2.0, 200);
    CHECK(g.size() == 200);
    CHECK(g.front() == 0.0);
    CHECK(g.back() == 2.0);
    for (std::size_t i = 1; i < g.size(); ++i) CHECK(g[i] > g[i - 1]);
}

TEST_CASE("chord-arc ratio") {
    CHECK(chord_arc_ratio(circle(1.0, {0, 0}, 400)) == doctest::Approx(2.0 / kPi).epsilon(1e-4));
    const ClosedCurve sq({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
    CHECK(chord_arc_ratio(sq) <= 1.0);
    CHECK(chord_arc_ratio(comb_curve(4, 4)) < chord_arc_ratio(circle(1.0, {0, 0}, 64)));
}

TEST_CASE("convergence metrics on a circle") {
    FlowConfig cfg;
    cfg.kind = FlowKind::GAPF;
    cfg.n = 256;
    cfg.t_end = 0.1;
    cfg.dt_init = 1e-3;
    const FlowResult res = run_flow(cfg, circle(1.0, {0, 0}, 256));
    const ConvergenceReport rep = convergence_metrics(res.trajectory);
    REQUIRE(rep.t_convex);
    CHECK(*rep.t_convex == 0.0);
    for (const auto& r : rep.rows) {
        CHECK(std::abs(r.ratio - 1.0) < 1e-3);
        CHECK(r.deviation < 1e-3);
    }
}

TEST_CASE("GAPF encloses CSF on a circle") {
    FlowConfig base;
    base.n = 256;
    base.dt_init = 1e-3;
    const ComparisonReport rep = compare_flows(circle(1.0, {0, 0}, 256), 0.2, base, 40);
    CHECK(rep.rows.size() == 40);
    CHECK(rep.enclosure_violations() == 0);
    CHECK(rep.inclusion_violations() == 0);
    for (const auto& row : rep.rows) {
        REQUIRE(row.radial);
        // GAPF stays at radius 1, CSF follows sqrt(1 - 2t)
        CHECK(row.f_min == doctest::Approx(1.0 - std::sqrt(1.0 - 2.0 * row.t)).epsilon(1e-3));
    }
}

TEST_CASE("GAPF encloses CSF on random star curves") {
    FlowConfig base;
    base.n = 128;
    base.dt_init = 1e-3;
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        const ClosedCurve c = random_star_curve(seed, 6, 0.6, 128);
        const ComparisonReport rep = compare_flows(c, 0.1 * c.area() / kTwoPi, base, 20);
        CHECK(rep.enclosure_violations() == 0);
        CHECK(rep.inclusion_violations() == 0);
    }
}

TEST_CASE("star loss ordering is vacuous for a circle") {
    FlowConfig base;
    base.n = 128;
    base.dt_init = 1e-3;
    const StarLossReport r = star_loss_implication(circle(1.0, {0, 0}, 128), 0.2, base);
    CHECK(r.vacuous);
    CHECK(r.passed);
    CHECK_FALSE(r.gapf_loss);
}

TEST_CASE("wing collapse report on a short run") {
    FlowConfig base;
    base.dt_init = 1e-3;
    const WingCollapseReport rep = wing_collapse({0.1, 0.3, 5, 18, 1024}, 0.0, 0.02, base);
    CHECK(rep.horizon == doctest::Approx(rep.area0 / kTwoPi));
    CHECK(rep.t.size() == rep.kernel_area.size());
    REQUIRE(rep.t.size() > 2);
    CHECK(rep.kernel_area.front() > 0.0);
    CHECK(rep.initial_rate < 0.0);
    CHECK(rep.predicted_u_rate == doctest::Approx(-2.0 + 4 * kPi * std::hypot(0.1, 0.3) / rep.length0));
    CHECK_FALSE(rep.t_star);
}
