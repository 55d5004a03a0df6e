#pragma once

#include <optional>
#include <vector>

#include "curveflow/geometry.hpp"

namespace curveflow {

// Open half-plane {P : <P - base, normal> > 0}.
struct HalfPlane {
    Point2 base;
    Point2 normal; // unit

    double signed_distance(Point2 p) const { return dot(p - base, normal); }
    bool contains(Point2 p) const { return signed_distance(p) > 0.0; }
};

// Inner half-planes of every polygon edge. For a polygon the tangent line is
// the edge's supporting line, so these are the discrete counterparts of the
// half-planes bounded by the curve's tangent lines.
std::vector<HalfPlane> inner_half_planes(const ClosedCurve& curve);

enum class KernelStatus { Empty, Degenerate, Full };

struct KernelPolygon {
    std::vector<Point2> vertices; // CCW, convex
    KernelStatus status = KernelStatus::Empty;

    bool empty() const { return status != KernelStatus::Full; }
    double area() const;
    Point2 centroid() const;
    // Point lies inside the polygon dilated by eps.
    bool contains(Point2 p, double eps = 0.0) const;
    // Distance from p to the polygon boundary (0 for an empty vertex list).
    double boundary_distance(Point2 p) const;
};

// Relative area (to the curve) below which a kernel counts as degenerate.
inline constexpr double kKernelAreaFloor = 1e-10;

// Intersection of the edge half-planes, by sequential convex clipping of the
// curve's bounding box. Always clips.
KernelPolygon clip_kernel(const ClosedCurve& curve);

// Same contract as clip_kernel, but returns a convex polygon as its own kernel
// without clipping.
KernelPolygon kernel(const ClosedCurve& curve);

double kernel_area(const KernelPolygon& k);

// Every cross product of consecutive edges is >= -tol.
bool is_convex(const std::vector<Point2>& pts, double tol = 1e-12);

struct StarTest {
    bool star = false;
    std::optional<Point2> witness;
};

// Star-shaped iff the kernel has area above the floor; the witness is the
// kernel centroid and is confirmed by positive support at every vertex.
StarTest is_star_shaped(const ClosedCurve& curve);

struct TurningAngleReport {
    double value = 0.0;
    std::size_t start = 0;  // first vertex of the arc
    std::size_t length = 0; // number of vertices in the arc, 1..n-1
    std::size_t end(std::size_t n) const { return (start + length - 1) % n; }
};

// Minimum over proper circular vertex runs of the summed exterior turning
// angles. Linear time; ties go to the shortest arc, then the smallest start.
TurningAngleReport turning_angle(const ClosedCurve& curve);
TurningAngleReport turning_angle(const std::vector<double>& turning);

// Sum of turning[start .. start+length) evaluated through prefix sums, the one
// formula shared by the fast scan and any brute-force check.
double run_sum(const std::vector<double>& prefix, std::size_t start, std::size_t length);
std::vector<double> prefix_sums(const std::vector<double>& values);

} // namespace curveflow
