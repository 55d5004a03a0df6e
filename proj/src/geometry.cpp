#include "curveflow/geometry.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>

namespace curveflow {

double signed_area(std::span<const Point2> pts) {
    const std::size_t n = pts.size();
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const Point2& a = pts[i];
        const Point2& b = pts[(i + 1) % n];
        sum += a.x * b.y - a.y * b.x;
    }
    return 0.5 * sum;
}

double polygon_perimeter(std::span<const Point2> pts) {
    const std::size_t n = pts.size();
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) sum += distance(pts[i], pts[(i + 1) % n]);
    return sum;
}

Point2 polygon_centroid(std::span<const Point2> pts) {
    const std::size_t n = pts.size();
    if (n == 0) return {};
    // Shift to the first vertex to keep the products well conditioned.
    const Point2 o = pts[0];
    double a2 = 0.0;
    Point2 c{};
    for (std::size_t i = 0; i < n; ++i) {
        const Point2 p = pts[i] - o;
        const Point2 q = pts[(i + 1) % n] - o;
        const double w = cross(p, q);
        a2 += w;
        c += w * (p + q);
    }
    if (std::abs(a2) <= std::numeric_limits<double>::min()) {
        Point2 mean{};
        for (const auto& p : pts) mean += p;
        return mean / static_cast<double>(n);
    }
    return o + c / (3.0 * a2);
}

bool point_in_polygon(std::span<const Point2> pts, Point2 p) {
    bool inside = false;
    const std::size_t n = pts.size();
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        const Point2& a = pts[i];
        const Point2& b = pts[j];
        if ((a.y > p.y) != (b.y > p.y)) {
            const double x = (b.x - a.x) * (p.y - a.y) / (b.y - a.y) + a.x;
            if (p.x < x) inside = !inside;
        }
    }
    return inside;
}

BoundingBox bounding_box(std::span<const Point2> pts) {
    BoundingBox box{{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()},
                    {-std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()}};
    for (const auto& p : pts) {
        box.lo.x = std::min(box.lo.x, p.x);
        box.lo.y = std::min(box.lo.y, p.y);
        box.hi.x = std::max(box.hi.x, p.x);
        box.hi.y = std::max(box.hi.y, p.y);
    }
    return box;
}

ClosedCurve::ClosedCurve(std::vector<Point2> vertices) : vertices_(std::move(vertices)) {
    const std::size_t n = vertices_.size();
    if (n < 3) throw DegenerateCurveError("closed curve needs at least 3 vertices, got " + std::to_string(n));
    for (const auto& p : vertices_) {
        if (!is_finite(p)) throw DegenerateCurveError("closed curve has a non-finite vertex");
    }
    const double floor = 1e-14 * bounding_box(vertices_).diameter();
    for (std::size_t i = 0; i < n; ++i) {
        if (norm(edge(i)) <= floor) {
            throw DegenerateCurveError("closed curve has a zero-length edge at vertex " + std::to_string(i));
        }
    }
    if (signed_area(vertices_) < 0.0) std::reverse(vertices_.begin(), vertices_.end());
}

RadialCurve::RadialCurve(Point2 origin, std::vector<double> r) : origin_(origin), r_(std::move(r)) {
    if (r_.size() < 3) throw DomainError("radial curve needs at least 3 samples");
    if (!is_finite(origin_)) throw DomainError("radial curve origin is not finite");
    for (std::size_t i = 0; i < r_.size(); ++i) {
        if (!(r_[i] > 0.0) || !std::isfinite(r_[i])) {
            throw DomainError("radial sample " + std::to_string(i) + " is not a positive finite radius");
        }
    }
}

double RadialCurve::mean_radius() const {
    return std::accumulate(r_.begin(), r_.end(), 0.0) / static_cast<double>(r_.size());
}

double CurveGeometry::total_turning() const { return std::accumulate(turning.begin(), turning.end(), 0.0); }
double CurveGeometry::kappa_min() const { return *std::min_element(curvature.begin(), curvature.end()); }
double CurveGeometry::kappa_max() const { return *std::max_element(curvature.begin(), curvature.end()); }
double CurveGeometry::min_edge() const { return *std::min_element(edge_length.begin(), edge_length.end()); }

CurveGeometry compute_geometry(const ClosedCurve& curve) {
    const std::size_t n = curve.size();
    CurveGeometry g;
    g.tangent.resize(n);
    g.normal.resize(n);
    g.turning.resize(n);
    g.curvature.resize(n);
    g.ds.resize(n);
    g.edge_length.resize(n);

    const double floor = 1e-14 * bounding_box(curve.vertices()).diameter();
    for (std::size_t i = 0; i < n; ++i) {
        g.edge_length[i] = norm(curve.edge(i));
        if (!(g.edge_length[i] > floor)) {
            throw DegenerateCurveError("degenerate edge at vertex " + std::to_string(i));
        }
        g.length += g.edge_length[i];
    }
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t prev = (i + n - 1) % n;
        const Point2 u_prev = curve.edge(prev) / g.edge_length[prev];
        const Point2 u_next = curve.edge(i) / g.edge_length[i];
        g.turning[i] = std::atan2(cross(u_prev, u_next), dot(u_prev, u_next));
        const Point2 bis = u_prev + u_next;
        const double bn = norm(bis);
        // A cusp has no bisector; fall back to the incoming direction.
        g.tangent[i] = bn > 1e-12 ? bis / bn : u_prev;
        g.normal[i] = perp(g.tangent[i]);
        g.ds[i] = 0.5 * (g.edge_length[prev] + g.edge_length[i]);
        g.curvature[i] = g.turning[i] / g.ds[i];
    }
    g.area = curve.area();
    return g;
}

namespace {

constexpr double kTouchTol = 1e-12;

double orient(Point2 a, Point2 b, Point2 c) { return cross(b - a, c - a); }

double point_segment_distance(Point2 p, Point2 a, Point2 b) {
    const Point2 ab = b - a;
    const double len2 = dot(ab, ab);
    double t = len2 > 0.0 ? dot(p - a, ab) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    return distance(p, a + t * ab);
}

bool segments_touch(Point2 a, Point2 b, Point2 c, Point2 d) {
    const double o1 = orient(a, b, c);
    const double o2 = orient(a, b, d);
    const double o3 = orient(c, d, a);
    const double o4 = orient(c, d, b);
    if (((o1 > 0 && o2 < 0) || (o1 < 0 && o2 > 0)) && ((o3 > 0 && o4 < 0) || (o3 < 0 && o4 > 0))) return true;
    const double dmin = std::min({point_segment_distance(a, c, d), point_segment_distance(b, c, d),
                                  point_segment_distance(c, a, b), point_segment_distance(d, a, b)});
    return dmin < kTouchTol;
}

} // namespace

bool is_embedded(const ClosedCurve& curve) {
    const std::size_t n = curve.size();
    const auto& v = curve.vertices();

    // Adjacent edges meet at their shared vertex; they overlap only when folded back.
    for (std::size_t i = 0; i < n; ++i) {
        const Point2 e0 = curve.edge(i);
        const Point2 e1 = curve.edge((i + 1) % n);
        if (std::abs(cross(e0, e1)) <= 1e-12 * norm(e0) * norm(e1) && dot(e0, e1) < 0.0) return false;
    }
    if (n == 3) return true;

    struct Span {
        double lo, hi;
        std::size_t edge;
    };
    std::vector<Span> spans(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Point2 a = v[i];
        const Point2 b = v[(i + 1) % n];
        spans[i] = {std::min(a.x, b.x), std::max(a.x, b.x), i};
    }
    std::sort(spans.begin(), spans.end(), [](const Span& s, const Span& t) {
        return s.lo < t.lo || (s.lo == t.lo && s.edge < t.edge);
    });

    std::vector<Span> active;
    for (const Span& s : spans) {
        std::erase_if(active, [&](const Span& a) { return a.hi < s.lo - kTouchTol; });
        const std::size_t i = s.edge;
        const Point2 a = v[i];
        const Point2 b = v[(i + 1) % n];
        const double ylo = std::min(a.y, b.y) - kTouchTol;
        const double yhi = std::max(a.y, b.y) + kTouchTol;
        for (const Span& t : active) {
            const std::size_t j = t.edge;
            if ((i + 1) % n == j || (j + 1) % n == i) continue;
            const Point2 c = v[j];
            const Point2 d = v[(j + 1) % n];
            if (std::max(c.y, d.y) < ylo || std::min(c.y, d.y) > yhi) continue;
            if (segments_touch(a, b, c, d)) return false;
        }
        active.push_back(s);
    }
    return true;
}

std::vector<double> support_function(const ClosedCurve& curve, const CurveGeometry& geom, Point2 p) {
    std::vector<double> out(curve.size());
    for (std::size_t i = 0; i < curve.size(); ++i) out[i] = -dot(curve[i] - p, geom.normal[i]);
    return out;
}

std::vector<double> support_function(const ClosedCurve& curve, Point2 p) {
    return support_function(curve, compute_geometry(curve), p);
}

ClosedCurve radial_to_parametric(const RadialCurve& rad) {
    std::vector<Point2> pts(rad.size());
    const Point2 o = rad.origin();
    for (std::size_t i = 0; i < rad.size(); ++i) {
        const double th = rad.angle(i);
        pts[i] = o + rad.radii()[i] * Point2{std::cos(th), std::sin(th)};
    }
    return ClosedCurve(std::move(pts));
}

RadialCurve parametric_to_radial(const ClosedCurve& curve, Point2 origin, std::size_t n) {
    if (n < 3) throw DomainError("radial sampling needs at least 3 rays");
    const std::size_t m = curve.size();
    const double h = kTwoPi / static_cast<double>(n);
    const auto ni = static_cast<std::int64_t>(n);
    const double scale = bounding_box(curve.vertices()).diameter();

    // Ray index coordinate of every vertex; ceil() of it is the first ray at or
    // past the vertex, shared by both edges meeting there.
    std::vector<double> q(m);
    std::vector<std::int64_t> first_ray(m);
    for (std::size_t j = 0; j < m; ++j) {
        const Point2 d = curve[j] - origin;
        if (norm(d) <= 1e-14 * scale) throw RepresentationError("radial origin lies on the curve");
        q[j] = std::atan2(d.y, d.x) / h;
        first_ray[j] = static_cast<std::int64_t>(std::ceil(q[j]));
    }

    std::vector<int> hits(n, 0);
    std::vector<double> r(n, 0.0);
    for (std::size_t j = 0; j < m; ++j) {
        const std::size_t k = (j + 1) % m;
        const Point2 v0 = curve[j] - origin;
        const Point2 v1 = curve[k] - origin;
        const Point2 e = v1 - v0;
        if (point_segment_distance({0.0, 0.0}, v0, v1) <= 1e-14 * scale) {
            throw RepresentationError("radial origin lies on the curve");
        }
        const double dq = std::atan2(cross(v0, v1), dot(v0, v1)) / h;
        if (dq == 0.0) continue;
        // Unwrap the end index by whole turns so that it follows the start.
        const double wraps = std::round((q[j] + dq - q[k]) / static_cast<double>(n));
        const std::int64_t end = first_ray[k] + static_cast<std::int64_t>(wraps) * ni;
        const std::int64_t lo = dq > 0.0 ? first_ray[j] : end;
        const std::int64_t hi = dq > 0.0 ? end : first_ray[j];
        for (std::int64_t ray = lo; ray < hi; ++ray) {
            const std::size_t idx = static_cast<std::size_t>(((ray % ni) + ni) % ni);
            const double th = h * static_cast<double>(idx);
            const Point2 dir{std::cos(th), std::sin(th)};
            const double den = cross(dir, e);
            if (den == 0.0) continue;
            const double t = cross(v0, e) / den;
            ++hits[idx];
            r[idx] = t;
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (hits[i] != 1 || !(r[i] > 0.0)) {
            throw RepresentationError("ray " + std::to_string(i) + " meets the curve " + std::to_string(hits[i]) +
                                      " times; curve is not a radial graph about the origin");
        }
    }
    return RadialCurve(origin, std::move(r));
}

ClosedCurve resample_uniform_arclength(const ClosedCurve& curve, std::size_t n, Interpolation interp) {
    if (n < 3) throw DomainError("resampling needs at least 3 vertices");
    const std::size_t m = curve.size();
    const auto& v = curve.vertices();
    std::vector<double> len(m);
    std::vector<double> s(m + 1, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        len[i] = norm(curve.edge(i));
        s[i + 1] = s[i] + len[i];
    }
    const double total = s[m];

    std::vector<Point2> slope;
    if (interp == Interpolation::Cubic) {
        slope.resize(m);
        for (std::size_t i = 0; i < m; ++i) {
            const std::size_t prev = (i + m - 1) % m;
            const double hm = len[prev];
            const double hp = len[i];
            const Point2 fwd = v[(i + 1) % m] - v[i];
            const Point2 bwd = v[i] - v[prev];
            slope[i] = (hm * hm * fwd + hp * hp * bwd) / (hm * hp * (hm + hp));
        }
    }

    // Point at arclength sigma in [0, total] along the source polygon (or its spline).
    auto at = [&](double sigma) {
        const std::size_t seg = static_cast<std::size_t>(
            std::clamp<std::ptrdiff_t>(std::upper_bound(s.begin(), s.end(), sigma) - s.begin() - 1, 0,
                                       static_cast<std::ptrdiff_t>(m) - 1));
        const double tau = std::clamp((sigma - s[seg]) / len[seg], 0.0, 1.0);
        const Point2 a = v[seg];
        const Point2 b = v[(seg + 1) % m];
        if (interp == Interpolation::Linear || tau == 0.0) return a + tau * (b - a);
        const double t2 = tau * tau;
        const double t3 = t2 * tau;
        const double h00 = 2 * t3 - 3 * t2 + 1;
        const double h10 = t3 - 2 * t2 + tau;
        const double h01 = -2 * t3 + 3 * t2;
        const double h11 = t3 - t2;
        return h00 * a + (h10 * len[seg]) * slope[seg] + h01 * b + (h11 * len[seg]) * slope[(seg + 1) % m];
    };

    // Equal spacing in source arclength leaves the chords unequal wherever a
    // sample interval straddles a corner. Re-spread the parameters until the
    // output's own edges are equal, so resampling it again is the identity.
    std::vector<double> sigma(n + 1);
    for (std::size_t k = 0; k <= n; ++k) sigma[k] = total * static_cast<double>(k) / static_cast<double>(n);
    std::vector<Point2> out(n);
    std::vector<double> chord(n + 1, 0.0);
    for (int iter = 0; iter < 50; ++iter) {
        for (std::size_t k = 0; k < n; ++k) out[k] = at(sigma[k]);
        double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            const double c = distance(out[k], out[(k + 1) % n]);
            chord[k + 1] = chord[k] + c;
            lo = std::min(lo, c);
            hi = std::max(hi, c);
        }
        if (hi - lo <= 1e-13 * hi) break;
        std::vector<double> next(n + 1);
        next[0] = 0.0;
        next[n] = total;
        std::size_t j = 0;
        for (std::size_t k = 1; k < n; ++k) {
            const double want = chord[n] * static_cast<double>(k) / static_cast<double>(n);
            while (j + 1 < n && chord[j + 1] <= want) ++j;
            const double w = (want - chord[j]) / (chord[j + 1] - chord[j]);
            next[k] = sigma[j] + w * (sigma[j + 1] - sigma[j]);
        }
        sigma.swap(next);
    }
    return ClosedCurve(std::move(out));
}

} // namespace curveflow
