#include <doctest.h>

#include "curveflow/curve_zoo.hpp"
#include "curveflow/star_kernel.hpp"

using namespace curveflow;

namespace {

// Point strictly on the inner side of every edge line.
bool brute_in_kernel(const ClosedCurve& c, Point2 p, double margin) {
    for (std::size_t i = 0; i < c.size(); ++i) {
        const Point2 a = c[i], e = c.edge(i);
        if (cross(e, p - a) / norm(e) <= margin) return false;
    }
    return true;
}

// Minimum turning over proper runs, summed term by term.
double brute_turning(const std::vector<double>& th) {
    const std::size_t n = th.size();
    double best = 1e300;
    for (std::size_t s = 0; s < n; ++s) {
        double acc = 0.0;
        for (std::size_t len = 1; len < n; ++len) {
            acc += th[(s + len - 1) % n];
            best = std::min(best, acc);
        }
    }
    return best;
}

} // namespace

TEST_CASE("kernel of a square is the square") {
    const ClosedCurve sq({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
    const KernelPolygon k = clip_kernel(sq);
    CHECK(k.status == KernelStatus::Full);
    CHECK(k.area() == doctest::Approx(1.0));
    CHECK(kernel(sq).area() == doctest::Approx(1.0));
    CHECK(is_convex(k.vertices));
}

TEST_CASE("kernel of an L shape is its corner square") {
    const ClosedCurve L({{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}});
    const KernelPolygon k = kernel(L);
    CHECK(k.status == KernelStatus::Full);
    CHECK(k.area() == doctest::Approx(1.0));
    CHECK(k.contains({0.5, 0.5}));
    CHECK_FALSE(k.contains({1.5, 0.5}));
    const StarTest st = is_star_shaped(L);
    REQUIRE(st.star);
    CHECK(brute_in_kernel(L, *st.witness, 0.0));
}

TEST_CASE("convex polygons are their own kernel") {
    const ClosedCurve c = ellipse(3.0, 1.0, {1, 2}, 200);
    const KernelPolygon fast = kernel(c);
    const KernelPolygon slow = clip_kernel(c);
    CHECK(fast.area() == doctest::Approx(c.area()).epsilon(1e-12));
    CHECK(slow.area() == doctest::Approx(c.area()).epsilon(1e-9));
}

TEST_CASE("non-star curves have empty kernels") {
    CHECK(kernel(comb_curve(4, 3)).empty());
    CHECK_FALSE(is_star_shaped(comb_curve(4, 3)).star);
    CHECK_FALSE(is_star_shaped(random_bent_curve(11, 2.0, 256)).star);
}

TEST_CASE("kernel membership agrees with the half-plane oracle on a grid") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const ClosedCurve c = random_star_curve(seed, 5, 0.6, 128);
        const KernelPolygon k = kernel(c);
        REQUIRE_FALSE(k.empty());
        const BoundingBox box = bounding_box(c.vertices());
        const double pitch = std::max(box.hi.x - box.lo.x, box.hi.y - box.lo.y) / 80.0;
        int inside = 0;
        for (int i = 0; i <= 80; ++i) {
            for (int j = 0; j <= 80; ++j) {
                const Point2 p{box.lo.x + i * pitch, box.lo.y + j * pitch};
                if (k.boundary_distance(p) < 1e-9) continue;
                const bool oracle = brute_in_kernel(c, p, 0.0);
                CHECK(k.contains(p) == oracle);
                inside += oracle;
            }
        }
        CHECK(inside > 0);
    }
}

TEST_CASE("flying wing kernel matches the circular sector") {
    const FlyingWing w = flying_wing({});
    const KernelPolygon k = kernel(w.curve);
    REQUIRE(k.status == KernelStatus::Full);
    const double rho = w.skeleton.rho;
    const double sector = rho * rho * std::atan(0.1 / 0.3);
    CHECK(std::abs(k.area() - sector) / sector < 2e-3);
    CHECK(is_star_shaped(w.curve).star);
}

TEST_CASE("turning angle of a regular polygon is one exterior angle") {
    const ClosedCurve c = circle(1.0, {0, 0}, 90);
    const TurningAngleReport r = turning_angle(c);
    CHECK(r.value == doctest::Approx(kTwoPi / 90));
    CHECK(r.length == 1);
}

TEST_CASE("turning angle agrees with the term-by-term minimum") {
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        const ClosedCurve c = seed % 2 ? random_star_curve(seed, 6, 0.8, 16 + seed) : random_bent_curve(seed, 1.5, 20 + seed);
        const auto turning = compute_geometry(c).turning;
        const TurningAngleReport r = turning_angle(turning);
        CHECK(std::abs(r.value - brute_turning(turning)) < 1e-12);
        REQUIRE(r.length >= 1);
        REQUIRE(r.length < c.size());
        double s = 0.0;
        for (std::size_t i = 0; i < r.length; ++i) s += turning[(r.start + i) % c.size()];
        CHECK(std::abs(s - r.value) < 1e-12);
    }
}

TEST_CASE("star-shaped curves keep turning above minus pi") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const ClosedCurve c = random_star_curve(seed, 8, 0.7, 256);
        CHECK(is_star_shaped(c).star);
        CHECK(turning_angle(c).value > -kPi);
    }
}

TEST_CASE("prefix run sums wrap around") {
    const std::vector<double> v{1, 2, 3, 4};
    const auto p = prefix_sums(v);
    CHECK(run_sum(p, 0, 4) == 10);
    CHECK(run_sum(p, 3, 2) == 5);
    CHECK(run_sum(p, 2, 3) == 8);
}
