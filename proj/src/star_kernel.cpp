#include "curveflow/star_kernel.hpp"

#include <algorithm>
#include <limits>

namespace curveflow {

std::vector<HalfPlane> inner_half_planes(const ClosedCurve& curve) {
    std::vector<HalfPlane> planes(curve.size());
    for (std::size_t i = 0; i < curve.size(); ++i) {
        planes[i] = {curve[i], normalized(perp(curve.edge(i)))};
    }
    return planes;
}

double KernelPolygon::area() const { return vertices.size() < 3 ? 0.0 : signed_area(vertices); }

Point2 KernelPolygon::centroid() const { return polygon_centroid(vertices); }

bool KernelPolygon::contains(Point2 p, double eps) const {
    const std::size_t n = vertices.size();
    if (n < 3) return false;
    for (std::size_t i = 0; i < n; ++i) {
        const Point2 a = vertices[i];
        const Point2 e = vertices[(i + 1) % n] - a;
        const double len = norm(e);
        if (len == 0.0) continue;
        if (cross(e, p - a) / len < -eps) return false;
    }
    return true;
}

double KernelPolygon::boundary_distance(Point2 p) const {
    const std::size_t n = vertices.size();
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        const Point2 a = vertices[i];
        const Point2 ab = vertices[(i + 1) % n] - a;
        const double len2 = dot(ab, ab);
        const double t = len2 > 0.0 ? std::clamp(dot(p - a, ab) / len2, 0.0, 1.0) : 0.0;
        best = std::min(best, distance(p, a + t * ab));
    }
    return n == 0 ? 0.0 : best;
}

namespace {

// Sutherland-Hodgman step against the closed half-plane.
void clip(std::vector<Point2>& poly, const HalfPlane& hp, std::vector<Point2>& scratch) {
    const std::size_t n = poly.size();
    if (std::all_of(poly.begin(), poly.end(), [&](Point2 p) { return hp.signed_distance(p) >= 0.0; })) return;
    scratch.clear();
    for (std::size_t i = 0; i < n; ++i) {
        const Point2 a = poly[i];
        const Point2 b = poly[(i + 1) % n];
        const double da = hp.signed_distance(a);
        const double db = hp.signed_distance(b);
        if (da >= 0.0) scratch.push_back(a);
        if ((da >= 0.0) != (db >= 0.0)) {
            const double t = da / (da - db);
            scratch.push_back(a + t * (b - a));
        }
    }
    poly.swap(scratch);
}

void drop_duplicates(std::vector<Point2>& poly, double tol) {
    std::vector<Point2> out;
    out.reserve(poly.size());
    for (const auto& p : poly) {
        if (out.empty() || distance(out.back(), p) > tol) out.push_back(p);
    }
    while (out.size() > 1 && distance(out.front(), out.back()) <= tol) out.pop_back();
    poly.swap(out);
}

KernelPolygon finish(std::vector<Point2> poly, double curve_area, double scale) {
    drop_duplicates(poly, 1e-14 * scale);
    KernelPolygon k;
    k.vertices = std::move(poly);
    if (k.vertices.size() < 3) {
        k.vertices.clear();
        k.status = KernelStatus::Empty;
    } else if (k.area() < kKernelAreaFloor * std::abs(curve_area)) {
        k.status = KernelStatus::Degenerate;
    } else {
        k.status = KernelStatus::Full;
    }
    return k;
}

} // namespace

KernelPolygon clip_kernel(const ClosedCurve& curve) {
    const BoundingBox box = bounding_box(curve.vertices());
    std::vector<Point2> poly{box.lo, {box.hi.x, box.lo.y}, box.hi, {box.lo.x, box.hi.y}};
    std::vector<Point2> scratch;
    const auto planes = inner_half_planes(curve);
    // A coarse strided pass first keeps the working polygon small; clipping
    // twice against the same half-plane changes nothing.
    const std::size_t stride = std::max<std::size_t>(1, planes.size() / 64);
    for (std::size_t i = 0; i < planes.size() && !poly.empty(); i += stride) clip(poly, planes[i], scratch);
    for (std::size_t i = 0; i < planes.size() && !poly.empty(); ++i) clip(poly, planes[i], scratch);
    return finish(std::move(poly), curve.area(), box.diameter());
}

KernelPolygon kernel(const ClosedCurve& curve) {
    const std::size_t n = curve.size();
    bool convex = true;
    for (std::size_t i = 0; i < n && convex; ++i) {
        convex = cross(curve.edge((i + n - 1) % n), curve.edge(i)) >= 0.0;
    }
    if (convex && is_embedded(curve)) {
        return finish(curve.vertices(), curve.area(), bounding_box(curve.vertices()).diameter());
    }
    return clip_kernel(curve);
}

double kernel_area(const KernelPolygon& k) { return k.status == KernelStatus::Full ? k.area() : 0.0; }

bool is_convex(const std::vector<Point2>& pts, double tol) {
    const std::size_t n = pts.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point2 e0 = pts[(i + 1) % n] - pts[i];
        const Point2 e1 = pts[(i + 2) % n] - pts[(i + 1) % n];
        if (cross(e0, e1) < -tol) return false;
    }
    return true;
}

StarTest is_star_shaped(const ClosedCurve& curve) {
    const KernelPolygon k = kernel(curve);
    if (k.empty()) return {};
    const Point2 w = k.centroid();
    const auto support = support_function(curve, w);
    if (std::any_of(support.begin(), support.end(), [](double p) { return !(p > 0.0); })) return {};
    return {true, w};
}

std::vector<double> prefix_sums(const std::vector<double>& values) {
    std::vector<double> prefix(values.size() + 1, 0.0);
    for (std::size_t i = 0; i < values.size(); ++i) prefix[i + 1] = prefix[i] + values[i];
    return prefix;
}

double run_sum(const std::vector<double>& prefix, std::size_t start, std::size_t length) {
    const std::size_t n = prefix.size() - 1;
    const std::size_t stop = start + length;
    if (stop <= n) return prefix[stop] - prefix[start];
    return (prefix[n] - prefix[start]) + prefix[stop - n];
}

TurningAngleReport turning_angle(const std::vector<double>& turning) {
    const std::size_t n = turning.size();
    const auto prefix = prefix_sums(turning);
    TurningAngleReport best{std::numeric_limits<double>::infinity(), 0, 0};
    auto offer = [&](std::size_t start, std::size_t length) {
        const double v = run_sum(prefix, start, length);
        if (v < best.value || (v == best.value && (length < best.length ||
                                                   (length == best.length && start < best.start)))) {
            best = {v, start, length};
        }
    };

    // Non-wrapping runs [i, j): for each end j the best start is the latest
    // index of the running maximum prefix over [0, j), excluding the full
    // circle (i = 0, j = n).
    std::size_t arg = 0;
    for (std::size_t j = 1; j < n; ++j) {
        if (prefix[j - 1] >= prefix[arg]) arg = j - 1;
        offer(arg, j - arg);
    }
    {
        std::size_t a = 1;
        for (std::size_t i = 1; i < n; ++i) {
            if (prefix[i] >= prefix[a]) a = i;
        }
        offer(a, n - a);
    }

    // Wrapping runs start at s and continue through index e-1 after the wrap,
    // 1 <= e <= s-1; the sum is (P[n] - P[s]) + P[e], so the best e is the
    // earliest running minimum of P over [1, s-1].
    std::size_t emin = 1;
    for (std::size_t s = 2; s < n; ++s) {
        if (prefix[s - 1] < prefix[emin]) emin = s - 1;
        offer(s, n - s + emin);
    }
    return best;
}

TurningAngleReport turning_angle(const ClosedCurve& curve) { return turning_angle(compute_geometry(curve).turning); }

} // namespace curveflow
