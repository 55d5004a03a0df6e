#include "curveflow/curve_zoo.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "curveflow/flow.hpp"

namespace curveflow {

ClosedCurve circle(double radius, Point2 center, std::size_t n) {
    if (!(radius > 0.0)) throw DomainError("circle radius must be positive");
    if (n < 3) throw DomainError("circle needs at least 3 vertices");
    std::vector<Point2> pts(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double th = kTwoPi * static_cast<double>(i) / static_cast<double>(n);
        pts[i] = center + radius * Point2{std::cos(th), std::sin(th)};
    }
    return ClosedCurve(std::move(pts));
}

ClosedCurve ellipse(double semi_x, double semi_y, Point2 center, std::size_t n) {
    if (!(semi_x > 0.0) || !(semi_y > 0.0)) throw DomainError("ellipse semi-axes must be positive");
    if (n < 3) throw DomainError("ellipse needs at least 3 vertices");
    std::vector<Point2> pts(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double th = kTwoPi * static_cast<double>(i) / static_cast<double>(n);
        pts[i] = center + Point2{semi_x * std::cos(th), semi_y * std::sin(th)};
    }
    return ClosedCurve(std::move(pts));
}

double star_example_radius(double theta) { return 30.0 + 4.0 * std::cos(4.0 * theta) + 5.0 * std::sin(9.0 * theta); }

ClosedCurve star_example(std::size_t n) {
    if (n < 64) throw DomainError("star example needs at least 64 vertices");
    std::vector<double> r(n);
    for (std::size_t i = 0; i < n; ++i) r[i] = star_example_radius(kTwoPi * static_cast<double>(i) / static_cast<double>(n));
    return radial_to_parametric(RadialCurve({0.0, 0.0}, std::move(r)));
}

namespace {

// mt19937_64 output is fixed by the standard; the conversion is done by hand
// so draws do not depend on the library's distribution implementation.
double uniform(std::mt19937_64& rng, double lo, double hi) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
}

std::vector<double> random_radii(std::uint64_t seed, std::size_t modes, double amplitude, std::size_t n) {
    std::mt19937_64 rng(seed);
    const double bound = modes > 0 ? amplitude / static_cast<double>(modes) : 0.0;
    for (int attempt = 0; attempt < 1000; ++attempt) {
        std::vector<double> ca(modes), cb(modes);
        for (std::size_t k = 0; k < modes; ++k) {
            ca[k] = uniform(rng, -bound, bound);
            cb[k] = uniform(rng, -bound, bound);
        }
        std::vector<double> r(n, 1.0);
        for (std::size_t i = 0; i < n; ++i) {
            const double th = kTwoPi * static_cast<double>(i) / static_cast<double>(n);
            for (std::size_t k = 0; k < modes; ++k) {
                const double kk = static_cast<double>(k + 1);
                r[i] += ca[k] * std::cos(kk * th) + cb[k] * std::sin(kk * th);
            }
        }
        if (*std::min_element(r.begin(), r.end()) >= 0.05) return r;
    }
    throw ParameterError("random_star_curve: no admissible draw in 1000 attempts");
}

} // namespace

ClosedCurve random_star_curve(std::uint64_t seed, std::size_t modes, double amplitude, std::size_t n) {
    if (amplitude < 0.0) throw ParameterError("random_star_curve: amplitude must be nonnegative");
    return radial_to_parametric(RadialCurve({0.0, 0.0}, random_radii(seed, modes, amplitude, n)));
}

ClosedCurve random_bent_curve(std::uint64_t seed, double bend, std::size_t n) {
    const ClosedCurve base = random_star_curve(seed, 3, 0.3, n);
    std::vector<Point2> pts(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = 2.0 * base[i].x;
        pts[i] = {x, base[i].y + bend * x * x};
    }
    return ClosedCurve(std::move(pts));
}

ClosedCurve comb_curve(std::size_t teeth, std::size_t samples_per_edge) {
    if (teeth < 1 || samples_per_edge < 1) throw ParameterError("comb_curve: need at least one tooth and sample");
    const double half = 0.3;
    const double depth = 3.0;
    const double right = static_cast<double>(teeth + 1);
    std::vector<Point2> corners{{0.0, -0.5}};
    for (std::size_t j = 1; j < teeth; j += 2) {
        const double c = static_cast<double>(j + 1);
        corners.insert(corners.end(), {{c - half, -0.5}, {c - half, -depth}, {c + half, -depth}, {c + half, -0.5}});
    }
    corners.push_back({right, -0.5});
    corners.push_back({right, 0.5});
    for (std::size_t jj = teeth; jj-- > 0;) {
        if (jj % 2 != 0) continue;
        const double c = static_cast<double>(jj + 1);
        corners.insert(corners.end(), {{c + half, 0.5}, {c + half, depth}, {c - half, depth}, {c - half, 0.5}});
    }
    corners.push_back({0.0, 0.5});

    std::vector<Point2> pts;
    for (std::size_t i = 0; i < corners.size(); ++i) {
        const Point2 a = corners[i];
        const Point2 b = corners[(i + 1) % corners.size()];
        for (std::size_t s = 0; s < samples_per_edge; ++s) {
            pts.push_back(a + (static_cast<double>(s) / static_cast<double>(samples_per_edge)) * (b - a));
        }
    }
    return ClosedCurve(std::move(pts));
}

ClosedCurve figure_eight(std::size_t n) {
    std::vector<Point2> pts(n);
    for (std::size_t i = 0; i < n; ++i) {
        // Offset the start so no sample sits exactly on the crossing.
        const double t = kTwoPi * (static_cast<double>(i) + 0.25) / static_cast<double>(n);
        const double d = 1.0 + std::sin(t) * std::sin(t);
        pts[i] = {std::cos(t) / d, std::sin(t) * std::cos(t) / d};
    }
    return ClosedCurve(std::move(pts));
}

// ---------------------------------------------------------------------------
// Flying wing

void WingParams::validate() const {
    if (!(a > 0.0) || !(b > 0.0) || !(l1 > 0.0) || !(l2 > 0.0)) {
        throw ParameterError("wing: a, b, l1 and l2 must be positive");
    }
    if (!(2.0 * a < b)) throw ParameterError("wing: requires 2a < b");
    if (!(std::hypot(a, b) < 1.0)) throw ParameterError("wing: requires rho = sqrt(a^2 + b^2) < 1");
    if (!(l1 < l2)) throw ParameterError("wing: requires l1 < l2");
    if (n % 2 != 0) throw ParameterError("wing: n must be even");
    if (n < 2 * 16 * 6) throw ParameterError("wing: n must be at least 192");
}

WingSkeleton wing_skeleton(const WingParams& p) {
    p.validate();
    const double a = p.a, b = p.b, l1 = p.l1, l2 = p.l2;
    WingSkeleton s;
    s.rho = std::hypot(a, b);
    s.A = {-a, b};
    s.B = {a, b};
    s.M = {0.0, s.rho};
    s.P = {0.0, b};
    s.C = {-l1 * a, -l1 * b};
    s.D = {l1 * a, -l1 * b};
    s.E = {-l2 * a, -l2 * b};
    s.F = {l2 * a, -l2 * b};
    s.radius_BH = (l2 + 1.0) * s.rho;
    s.H = {s.radius_BH - l2 * a, -l2 * b};

    const double width = s.radius_BH - 2.0 * l2 * a; // |FH|
    s.lambda = 2.0 * a / (2.0 * a + b);
    s.k = (1.0 - s.lambda) / (s.lambda * s.lambda) / width;
    const double xI = (1.0 - s.lambda) * l2 * a + s.lambda * (s.radius_BH - l2 * a);
    s.radius_HJ = (1.0 - s.lambda) * width;
    s.I = {xI, -l2 * b};
    s.J = {xI, -l2 * b - s.radius_HJ};

    // K: the normal to OF through D meets the normal to OE through C.
    const double det = s.F.x * s.E.y - s.F.y * s.E.x;
    const double rd = dot(s.D, s.F);
    const double rc = dot(s.C, s.E);
    s.K = {(rd * s.E.y - s.F.y * rc) / det, (s.F.x * rc - rd * s.E.x) / det};
    s.radius_DN = distance(s.K, s.D);
    s.N = s.K + Point2{0.0, s.radius_DN};
    return s;
}

namespace {

Point2 arc_cw(Point2 c, double r, double phi) { return c + r * Point2{std::cos(phi), std::sin(phi)}; }
Point2 tan_cw(double phi) { return {std::sin(phi), -std::cos(phi)}; }

double phi_B(const WingSkeleton& s) { return std::atan2(s.B.y, s.B.x); }
double phi_D(const WingSkeleton& s) { return std::atan2(s.D.y - s.K.y, s.D.x - s.K.x); }

// Parabola JF in terms of xi = x_I - x >= 0: y = k xi^2 + y_J.
double parabola_arclength(double k, double xi) {
    const double u = 2.0 * k * xi;
    return (u * std::sqrt(1.0 + u * u) + std::asinh(u)) / (4.0 * k);
}

double parabola_xi(const WingSkeleton& s, double arc) {
    double xi = arc; // arclength >= xi, so Newton approaches from above
    for (int it = 0; it < 60; ++it) {
        const double f = parabola_arclength(s.k, xi) - arc;
        const double df = std::sqrt(1.0 + 4.0 * s.k * s.k * xi * xi);
        const double step = f / df;
        xi -= step;
        if (std::abs(step) <= 1e-16 * std::max(1.0, xi)) break;
    }
    return xi;
}

Point2 mb_point(const WingSkeleton& s, double t) { return arc_cw({0.0, 0.0}, s.rho, kPi / 2 - t / s.rho); }
Point2 mb_tangent(const WingSkeleton& s, double t) { return tan_cw(kPi / 2 - t / s.rho); }
Point2 bh_point(const WingSkeleton& s, double t) { return arc_cw(s.E, s.radius_BH, phi_B(s) - t / s.radius_BH); }
Point2 bh_tangent(const WingSkeleton& s, double t) { return tan_cw(phi_B(s) - t / s.radius_BH); }
Point2 hj_point(const WingSkeleton& s, double t) { return arc_cw(s.I, s.radius_HJ, -t / s.radius_HJ); }
Point2 hj_tangent(const WingSkeleton& s, double t) { return tan_cw(-t / s.radius_HJ); }
Point2 jf_point(const WingSkeleton& s, double t) {
    const double xi = parabola_xi(s, t);
    return {s.I.x - xi, s.k * xi * xi + s.J.y};
}
Point2 jf_tangent(const WingSkeleton& s, double t) {
    const double xi = parabola_xi(s, t);
    return normalized(Point2{-1.0, 2.0 * s.k * xi});
}
Point2 fd_point(const WingSkeleton& s, double t) { return s.F + t * normalized(s.D - s.F); }
Point2 fd_tangent(const WingSkeleton& s, double) { return normalized(s.D - s.F); }
Point2 dn_point(const WingSkeleton& s, double t) {
    const double phi = phi_D(s) + t / s.radius_DN;
    return s.K + s.radius_DN * Point2{std::cos(phi), std::sin(phi)};
}
Point2 dn_tangent(const WingSkeleton& s, double t) {
    const double phi = phi_D(s) + t / s.radius_DN;
    return {-std::sin(phi), std::cos(phi)};
}

Point2 mirror(Point2 p) { return {-p.x, p.y}; }

double angle_between(Point2 u, Point2 v) { return std::atan2(std::abs(cross(u, v)), dot(u, v)); }

} // namespace

std::vector<WingPiece> wing_pieces(const WingSkeleton& s) {
    const double jf_length = parabola_arclength(s.k, s.lambda * (s.radius_BH - 2.0 * (s.F.x)));
    return {
        {"MB", s.rho * (kPi / 2 - phi_B(s)), mb_point, mb_tangent},
        {"BH", s.radius_BH * phi_B(s), bh_point, bh_tangent},
        {"HJ", s.radius_HJ * kPi / 2, hj_point, hj_tangent},
        {"JF", jf_length, jf_point, jf_tangent},
        {"FD", distance(s.F, s.D), fd_point, fd_tangent},
        {"DN", s.radius_DN * (kPi / 2 - phi_D(s)), dn_point, dn_tangent},
    };
}

std::vector<JunctionCheck> wing_junctions(const WingSkeleton& s) {
    const auto pieces = wing_pieces(s);
    std::vector<JunctionCheck> out;
    static const char* right_names[] = {"B", "H", "J", "F", "D"};
    static const char* left_names[] = {"A", "H'", "J'", "F'", "C"};
    for (std::size_t j = 0; j + 1 < pieces.size(); ++j) {
        const Point2 in = pieces[j].tangent(s, pieces[j].length);
        const Point2 out_t = pieces[j + 1].tangent(s, 0.0);
        out.push_back({right_names[j], angle_between(in, out_t)});
        // On the mirrored half the traversal is reversed: the outgoing tangent
        // becomes the negated mirror image of the incoming one and vice versa.
        out.push_back({left_names[j], angle_between(-1.0 * mirror(out_t), -1.0 * mirror(in))});
    }
    // M and N join the right half to the mirrored left half.
    const Point2 m_out = pieces.front().tangent(s, 0.0);
    out.push_back({"M", angle_between(-1.0 * mirror(m_out), m_out)});
    const Point2 n_in = pieces.back().tangent(s, pieces.back().length);
    out.push_back({"N", angle_between(n_in, -1.0 * mirror(n_in))});
    return out;
}

FlyingWing flying_wing(const WingParams& p) {
    const WingSkeleton s = wing_skeleton(p);
    const auto pieces = wing_pieces(s);
    const std::size_t half = p.n / 2;
    const double total = std::accumulate(pieces.begin(), pieces.end(), 0.0,
                                         [](double acc, const WingPiece& w) { return acc + w.length; });

    std::vector<std::size_t> count(pieces.size());
    for (std::size_t j = 0; j < pieces.size(); ++j) {
        const auto share = static_cast<std::size_t>(std::floor(static_cast<double>(half) * pieces[j].length / total));
        count[j] = std::max<std::size_t>(16, share);
    }
    // Settle rounding on the longest pieces, never dropping below the floor.
    for (;;) {
        const std::size_t used = std::accumulate(count.begin(), count.end(), std::size_t{0});
        if (used == half) break;
        std::size_t pick = 0;
        double best = -1.0;
        for (std::size_t j = 0; j < pieces.size(); ++j) {
            const double per = pieces[j].length / static_cast<double>(count[j]);
            const bool ok = used < half || count[j] > 16;
            // Add where segments are longest; remove where they are shortest.
            const double score = used < half ? per : 1.0 / per;
            if (ok && score > best) {
                best = score;
                pick = j;
            }
        }
        if (used < half) {
            ++count[pick];
        } else {
            --count[pick];
        }
    }

    std::vector<Point2> right;
    right.reserve(half + 1);
    for (std::size_t j = 0; j < pieces.size(); ++j) {
        for (std::size_t i = 0; i < count[j]; ++i) {
            const double t = pieces[j].length * static_cast<double>(i) / static_cast<double>(count[j]);
            right.push_back(pieces[j].point(s, t));
        }
    }
    right.push_back(s.N);
    right.front() = s.M;

    std::vector<Point2> pts(right);
    for (std::size_t i = half - 1; i >= 1; --i) pts.push_back(mirror(right[i]));

    double worst = 0.0;
    for (const auto& jc : wing_junctions(s)) worst = std::max(worst, jc.angle_mismatch);
    if (worst > 1e-8) throw ConstructionError("wing: tangent mismatch " + std::to_string(worst) + " rad at a junction");

    ClosedCurve curve(std::move(pts));
    if (!is_embedded(curve)) throw ConstructionError("wing: constructed curve is not embedded");
    return {std::move(curve), s, worst};
}

double default_smoothing_time(const ClosedCurve& curve) { return 1e-4 * curve.area() / kTwoPi; }

ClosedCurve smooth_c1(const ClosedCurve& curve, double epsilon) {
    if (!(epsilon > 0.0)) epsilon = default_smoothing_time(curve);
    FlowConfig cfg;
    cfg.kind = FlowKind::CSF;
    cfg.formulation = Formulation::Parametric;
    cfg.n = curve.size();
    cfg.t_end = epsilon;
    cfg.dt_init = epsilon;
    cfg.event_checks = {false, true, true};
    FlowResult res = run_flow(cfg, curve);
    if (res.event.kind != EventKind::Completed) {
        throw Error("smooth_c1: flow ended with " + to_string(res.event.kind));
    }
    return std::move(*res.event.state);
}

} // namespace curveflow
