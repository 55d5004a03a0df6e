#include <doctest.h>

#include <random>

#include "curveflow/curve_zoo.hpp"
#include "curveflow/geometry.hpp"

using namespace curveflow;

namespace {

ClosedCurve unit_square() { return ClosedCurve({{0, 0}, {1, 0}, {1, 1}, {0, 1}}); }

double seg_point_distance(Point2 p, Point2 a, Point2 b) {
    const Point2 ab = b - a;
    const double t = std::clamp(dot(p - a, ab) / dot(ab, ab), 0.0, 1.0);
    return distance(p, a + t * ab);
}

int orient(Point2 a, Point2 b, Point2 c) {
    const double v = cross(b - a, c - a);
    return (v > 0) - (v < 0);
}

bool brute_touch(Point2 a, Point2 b, Point2 c, Point2 d) {
    if (orient(a, b, c) * orient(a, b, d) < 0 && orient(c, d, a) * orient(c, d, b) < 0) return true;
    const double m = std::min({seg_point_distance(a, c, d), seg_point_distance(b, c, d), seg_point_distance(c, a, b),
                               seg_point_distance(d, a, b)});
    return m <= 1e-12;
}

// All pairs of edges, nothing shared with the sweep.
bool brute_embedded(const ClosedCurve& c) {
    const std::size_t n = c.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point2 e0 = c.edge(i), e1 = c.edge((i + 1) % n);
        if (std::abs(cross(e0, e1)) <= 1e-12 * norm(e0) * norm(e1) && dot(e0, e1) < 0) return false;
        for (std::size_t j = i + 1; j < n; ++j) {
            if (j == i + 1 || (i == 0 && j == n - 1)) continue;
            if (brute_touch(c[i], c[(i + 1) % n], c[j], c[(j + 1) % n])) return false;
        }
    }
    return true;
}

ClosedCurve random_polygon(std::mt19937_64& rng, std::size_t n, bool sorted) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<Point2> pts(n);
    for (auto& p : pts) p = {u(rng), u(rng)};
    if (sorted) {
        std::sort(pts.begin(), pts.end(), [](Point2 a, Point2 b) { return std::atan2(a.y, a.x) < std::atan2(b.y, b.x); });
    }
    return ClosedCurve(std::move(pts));
}

} // namespace

TEST_CASE("construction rejects degenerate input and fixes orientation") {
    CHECK_THROWS_AS(ClosedCurve({{0, 0}, {1, 0}}), DegenerateCurveError);
    CHECK_THROWS_AS(ClosedCurve({{0, 0}, {1, 0}, {1, 0}, {0, 1}}), DegenerateCurveError);
    CHECK_THROWS_AS(ClosedCurve({{0, 0}, {1, 0}, {NAN, 1}}), DegenerateCurveError);
    const ClosedCurve cw({{0, 0}, {0, 1}, {1, 1}, {1, 0}});
    CHECK(cw.area() == doctest::Approx(1.0));
}

TEST_CASE("regular polygon curvature is close to one") {
    for (std::size_t n : {64u, 256u, 1024u}) {
        const auto g = compute_geometry(circle(1.0, {0, 0}, n));
        const double h = kTwoPi / static_cast<double>(n);
        for (double k : g.curvature) CHECK(std::abs(k - 1.0) < h * h);
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(std::abs(norm(g.tangent[i]) - 1.0) < 1e-14);
            CHECK(std::abs(norm(g.normal[i]) - 1.0) < 1e-14);
            // inner normal points back at the center
            CHECK(dot(g.normal[i], circle(1.0, {0, 0}, n)[i]) < 0.0);
        }
    }
}

TEST_CASE("unit square totals") {
    const auto g = compute_geometry(unit_square());
    CHECK(g.length == doctest::Approx(4.0));
    CHECK(g.area == doctest::Approx(1.0));
    double total = 0;
    for (std::size_t i = 0; i < 4; ++i) total += g.curvature[i] * g.ds[i];
    CHECK(std::abs(total - kTwoPi) < 1e-14);
    for (double t : g.turning) CHECK(t == doctest::Approx(kPi / 2));
}

TEST_CASE("area of the star example matches quadrature of r^2 / 2") {
    const ClosedCurve c = star_example(2048);
    // Simpson on a fine independent grid
    const int m = 20000;
    double sum = 0.0;
    for (int i = 0; i <= m; ++i) {
        const double th = kTwoPi * i / m;
        const double r = 30.0 + 4.0 * std::cos(4 * th) + 5.0 * std::sin(9 * th);
        const double w = (i == 0 || i == m) ? 1 : (i % 2 ? 4 : 2);
        sum += w * 0.5 * r * r;
    }
    const double exact = sum * (kTwoPi / m) / 3.0;
    CHECK(std::abs(c.area() - exact) / exact < 1e-4);
}

TEST_CASE("total turning is 2 pi for embedded curves") {
    for (const ClosedCurve& c : {circle(2.0, {1, 1}, 100), star_example(512), flying_wing({}).curve,
                                 comb_curve(5, 3), random_bent_curve(3, 1.0, 300)}) {
        CHECK(is_embedded(c));
        CHECK(std::abs(compute_geometry(c).total_turning() - kTwoPi) < 1e-6);
    }
}

TEST_CASE("embedding examples") {
    CHECK(is_embedded(circle(1.0, {0, 0}, 64)));
    CHECK_FALSE(is_embedded(figure_eight(200)));
    const ClosedCurve wing = flying_wing({}).curve;
    CHECK(is_embedded(wing));
    CHECK(brute_embedded(wing));
    // fold-back: a spike that retraces its edge
    CHECK_FALSE(is_embedded(ClosedCurve({{0, 0}, {2, 0}, {1, 0}, {1, 1}})));
}

TEST_CASE("sweep agrees with the all-pairs oracle on random polygons") {
    std::mt19937_64 rng(7);
    int embedded = 0, crossing = 0;
    for (int k = 0; k < 100; ++k) {
        const ClosedCurve c = random_polygon(rng, 8 + k % 40, k % 2 == 0);
        const bool fast = is_embedded(c);
        CHECK(fast == brute_embedded(c));
        (fast ? embedded : crossing)++;
    }
    CHECK(embedded > 20);
    CHECK(crossing > 20);
}

TEST_CASE("support function examples") {
    const ClosedCurve c = circle(1.0, {0, 0}, 512);
    for (double p : support_function(c, {0, 0})) CHECK(p == doctest::Approx(1.0).epsilon(1e-12));
    const auto off = support_function(c, {0.5, 0});
    CHECK(*std::min_element(off.begin(), off.end()) == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(*std::max_element(off.begin(), off.end()) == doctest::Approx(1.5).epsilon(1e-9));
    const auto star = support_function(star_example(1024), {0, 0});
    CHECK(*std::min_element(star.begin(), star.end()) > 0.0);
}

// With p = -<X - P, N_in>, moving the reference point shifts p by <P - Q, N_in>.
TEST_CASE("support function is affine in the reference point") {
    const ClosedCurve c = random_bent_curve(5, 0.7, 200);
    const auto g = compute_geometry(c);
    const Point2 p{0.1, -0.2}, q{-0.3, 0.4};
    const auto sp = support_function(c, g, p);
    const auto sq = support_function(c, g, q);
    for (std::size_t i = 0; i < c.size(); ++i) CHECK(std::abs(sp[i] - sq[i] - dot(p - q, g.normal[i])) < 1e-14);
}

TEST_CASE("radial and parametric conversions") {
    const ClosedCurve sq = radial_to_parametric(RadialCurve({0, 0}, {1, 1, 1, 1}));
    const Point2 expect[] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    for (int i = 0; i < 4; ++i) CHECK(distance(sq[i], expect[i]) < 1e-15);

    CHECK(star_example(1024)[0].x == doctest::Approx(34.0));
    CHECK(std::abs(star_example(1024)[0].y) < 1e-12);
    CHECK_THROWS_AS(RadialCurve({0, 0}, {1, 0, 1}), DomainError);

    const RadialCurve r2 = parametric_to_radial(circle(2.0, {0, 0}, 256), {0, 0}, 256);
    for (double r : r2.radii()) CHECK(std::abs(r - 2.0) < 1e-12);

    // round trip on the same rays is exact up to rounding
    std::vector<double> rr(300);
    for (std::size_t i = 0; i < rr.size(); ++i) rr[i] = star_example_radius(kTwoPi * i / 300.0);
    const RadialCurve rad({0.5, -0.25}, rr);
    const RadialCurve back = parametric_to_radial(radial_to_parametric(rad), rad.origin(), rr.size());
    for (std::size_t i = 0; i < rr.size(); ++i) CHECK(std::abs(back.radii()[i] - rr[i]) < 1e-12);
    const ClosedCurve again = radial_to_parametric(back);
    const ClosedCurve first = radial_to_parametric(rad);
    for (std::size_t i = 0; i < rr.size(); ++i) CHECK(distance(again[i], first[i]) < 1e-12);
}

TEST_CASE("radial sampling of the flying wing depends on the pole") {
    const FlyingWing w = flying_wing({});
    // inside the kernel: the region between OA, OB and the arc AB
    CHECK_NOTHROW(parametric_to_radial(w.curve, {0.0, 0.2}, 1024));
    CHECK_THROWS_AS(parametric_to_radial(w.curve, {0.0, -1.0}, 1024), RepresentationError);
}

TEST_CASE("uniform arclength resampling") {
    const ClosedCurve c = circle(1.0, {0, 0}, 100);
    const ClosedCurve fine = resample_uniform_arclength(c, 200);
    for (const Point2& p : fine.vertices()) CHECK(std::abs(norm(p) - 1.0) < 1e-3);

    for (auto interp : {Interpolation::Linear, Interpolation::Cubic}) {
        for (std::size_t n : {256u, 1024u}) {
            const ClosedCurve src = ellipse(2.0, 1.0, {0, 0}, n);
            const ClosedCurve r = resample_uniform_arclength(src, n, interp);
            CHECK(r.size() == n);
            CHECK(std::abs(r.length() - src.length()) / src.length() < 1e-4);
            CHECK(r.area() > 0.0);
        }
        // strongly curved curves: the length change is O(1/n^2)
        for (std::uint64_t seed : {3u, 4u}) {
            double prev = 0.0;
            for (std::size_t n : {512u, 1024u, 2048u}) {
                const ClosedCurve src = random_star_curve(seed, 6, 0.6, n);
                const double rel = std::abs(resample_uniform_arclength(src, n, interp).length() - src.length()) / src.length();
                if (prev > 0.0) CHECK(rel < prev / 3.0);
                prev = rel;
            }
        }
        for (const ClosedCurve& src : {random_star_curve(9, 6, 0.6, 300), star_example(256), flying_wing({}).curve}) {
            const std::size_t n = src.size();
            const ClosedCurve r = resample_uniform_arclength(src, n, interp);
            const auto g = compute_geometry(r);
            double hi = 0.0;
            for (double e : g.edge_length) hi = std::max(hi, e);
            CHECK(g.min_edge() > (1.0 - 1e-9) * hi);
            const ClosedCurve again = resample_uniform_arclength(r, n, interp);
            double drift = 0.0;
            for (std::size_t i = 0; i < n; ++i) drift = std::max(drift, distance(again[i], r[i]));
            CHECK(drift < 1e-9);
        }
    }
}
