#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "curveflow/geometry.hpp"

namespace curveflow {

ClosedCurve circle(double radius, Point2 center, std::size_t n);
ClosedCurve ellipse(double semi_x, double semi_y, Point2 center, std::size_t n);

// r(theta) = 30 + 4 cos(4 theta) + 5 sin(9 theta) about the origin.
double star_example_radius(double theta);
ClosedCurve star_example(std::size_t n);

// r(theta) = 1 + sum_k (a_k cos k theta + b_k sin k theta), coefficients drawn
// uniformly from [-amplitude/modes, amplitude/modes]. Draws whose minimum
// radius falls below 0.05 are rejected; 1000 rejections raise ParameterError.
ClosedCurve random_star_curve(std::uint64_t seed, std::size_t modes, double amplitude, std::size_t n);

// A random star curve stretched along x and bent by y += bend * x^2. The map
// is a diffeomorphism, so the result stays embedded; strong bends destroy
// star-shapedness.
ClosedCurve random_bent_curve(std::uint64_t seed, double bend, std::size_t n);

// Comb: a bar with `teeth` deep fingers alternately hanging from the top and
// rising from the bottom. Not star-shaped for teeth >= 2.
ClosedCurve comb_curve(std::size_t teeth, std::size_t samples_per_edge);

// Bernoulli lemniscate sampled once around; self-crossing at the origin.
ClosedCurve figure_eight(std::size_t n);

struct WingParams {
    double a = 0.1;
    double b = 0.3;
    double l1 = 5.0;
    double l2 = 18.0;
    std::size_t n = 4096;

    // Throws ParameterError unless 2a < b, sqrt(a^2 + b^2) < 1, 0 < l1 < l2
    // and n is even with room for every piece.
    void validate() const;
};

// Junction points and derived constants of the flying-wing construction.
// The right half runs M -> B -> H -> J -> F -> D -> N; the left half is its
// mirror image in the y-axis.
struct WingSkeleton {
    Point2 A, B, C, D, E, F, H, I, J, K, M, N, P;
    double rho = 0.0;    // |OB|
    double lambda = 0.0; // position of I between F and H
    double k = 0.0;      // parabola coefficient of the arc JF
    double radius_BH = 0.0;
    double radius_HJ = 0.0;
    double radius_DN = 0.0;
};

WingSkeleton wing_skeleton(const WingParams& p);

// One smooth piece of the right half, parametrized by arclength.
struct WingPiece {
    std::string name;
    double length = 0.0;
    Point2 (*point)(const WingSkeleton&, double) = nullptr;
    Point2 (*tangent)(const WingSkeleton&, double) = nullptr;
};

std::vector<WingPiece> wing_pieces(const WingSkeleton& s);

struct JunctionCheck {
    std::string name;
    double angle_mismatch = 0.0; // radians between one-sided tangents
};

// One-sided tangent mismatch at every distinct junction of the closed curve.
std::vector<JunctionCheck> wing_junctions(const WingSkeleton& s);

struct ConstructionError : Error {
    using Error::Error;
};

struct FlyingWing {
    ClosedCurve curve;
    WingSkeleton skeleton;
    double max_junction_mismatch = 0.0;
};

// Samples each piece by arclength with knots exactly at the junctions, at a
// density proportional to piece length with at least 16 segments per piece.
FlyingWing flying_wing(const WingParams& p);

// Runs the curve shortening flow for time epsilon. A non-positive epsilon
// selects 1e-4 * A / (2 pi).
ClosedCurve smooth_c1(const ClosedCurve& curve, double epsilon = 0.0);

double default_smoothing_time(const ClosedCurve& curve);

} // namespace curveflow
