#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace curveflow {

// Error hierarchy shared by every module.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DegenerateCurveError : Error {
    using Error::Error;
};
struct DomainError : Error {
    using Error::Error;
};
struct RepresentationError : Error {
    using Error::Error;
};
struct ParameterError : Error {
    using Error::Error;
};

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

struct Point2 {
    double x = 0.0;
    double y = 0.0;

    friend constexpr Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
    friend constexpr Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
    friend constexpr Point2 operator*(double s, Point2 a) { return {s * a.x, s * a.y}; }
    friend constexpr Point2 operator*(Point2 a, double s) { return {s * a.x, s * a.y}; }
    friend constexpr Point2 operator/(Point2 a, double s) { return {a.x / s, a.y / s}; }
    friend constexpr bool operator==(Point2, Point2) = default;
    Point2& operator+=(Point2 o) {
        x += o.x;
        y += o.y;
        return *this;
    }
};

constexpr double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
// Counterclockwise quarter turn.
constexpr Point2 perp(Point2 a) { return {-a.y, a.x}; }
inline double norm(Point2 a) { return std::hypot(a.x, a.y); }
inline double distance(Point2 a, Point2 b) { return norm(a - b); }
inline Point2 normalized(Point2 a) { return a / norm(a); }
inline bool is_finite(Point2 p) { return std::isfinite(p.x) && std::isfinite(p.y); }

// Signed shoelace area; positive for counterclockwise vertex order.
double signed_area(std::span<const Point2> pts);
double polygon_perimeter(std::span<const Point2> pts);
// Area centroid of a simple polygon (vertex mean when the area vanishes).
Point2 polygon_centroid(std::span<const Point2> pts);
// Even-odd crossing test; points on the boundary may land either way.
bool point_in_polygon(std::span<const Point2> pts, Point2 p);

struct BoundingBox {
    Point2 lo;
    Point2 hi;
    double diameter() const { return distance(lo, hi); }
};
BoundingBox bounding_box(std::span<const Point2> pts);

// Closed polygonal curve, vertex n-1 joined back to vertex 0. Construction
// rejects fewer than three vertices, non-finite coordinates and zero-length
// edges, and reverses clockwise input so the stored orientation is CCW.
class ClosedCurve {
public:
    explicit ClosedCurve(std::vector<Point2> vertices);

    std::size_t size() const { return vertices_.size(); }
    const std::vector<Point2>& vertices() const { return vertices_; }
    const Point2& operator[](std::size_t i) const { return vertices_[i]; }
    Point2 edge(std::size_t i) const { return vertices_[(i + 1) % size()] - vertices_[i]; }

    double area() const { return signed_area(vertices_); }
    double length() const { return polygon_perimeter(vertices_); }

private:
    std::vector<Point2> vertices_;
};

// Samples r(theta_i) at theta_i = 2*pi*i/n about a pole.
class RadialCurve {
public:
    RadialCurve(Point2 origin, std::vector<double> r);

    Point2 origin() const { return origin_; }
    const std::vector<double>& radii() const { return r_; }
    std::size_t size() const { return r_.size(); }
    double angle(std::size_t i) const { return kTwoPi * static_cast<double>(i) / static_cast<double>(r_.size()); }
    double mean_radius() const;

private:
    Point2 origin_;
    std::vector<double> r_;
};

struct CurveGeometry {
    std::vector<Point2> tangent;   // unit, vertex bisector of adjacent edge directions
    std::vector<Point2> normal;    // unit inner normal, tangent rotated by +pi/2
    std::vector<double> turning;   // signed exterior angle at each vertex, (-pi, pi]
    std::vector<double> curvature; // turning / ds
    std::vector<double> ds;        // mean of the two adjacent edge lengths
    std::vector<double> edge_length;
    double length = 0.0;
    double area = 0.0;

    double total_turning() const;
    double kappa_min() const;
    double kappa_max() const;
    double min_edge() const;
};

CurveGeometry compute_geometry(const ClosedCurve& curve);

// True iff non-adjacent edges stay farther apart than 1e-12 and adjacent
// edges do not fold back onto each other. Sort-and-sweep over edge x-ranges.
bool is_embedded(const ClosedCurve& curve);

// p_i = -<X_i - P, N_i> with the vertex inner normal.
std::vector<double> support_function(const ClosedCurve& curve, Point2 p);
std::vector<double> support_function(const ClosedCurve& curve, const CurveGeometry& geom, Point2 p);

ClosedCurve radial_to_parametric(const RadialCurve& rad);

// Casts n uniform rays from the origin. Throws RepresentationError unless
// every ray meets the polygon exactly once.
RadialCurve parametric_to_radial(const ClosedCurve& curve, Point2 origin, std::size_t n);

enum class Interpolation { Linear, Cubic };

// n vertices at equal spacing of the polygon's arclength, starting at vertex 0.
// Linear keeps the new vertices on the old polygon. Cubic puts them on a
// chord-length parametrized cubic Hermite spline through the old vertices,
// which cuts corners far less and so barely perturbs the enclosed area.
ClosedCurve resample_uniform_arclength(const ClosedCurve& curve, std::size_t n,
                                       Interpolation interp = Interpolation::Linear);

} // namespace curveflow
