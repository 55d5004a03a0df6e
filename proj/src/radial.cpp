#include <algorithm>
#include <cmath>
#include <limits>

#include "curveflow/flow.hpp"

namespace curveflow {

std::vector<double> solve_periodic_tridiagonal(const std::vector<double>& lower, const std::vector<double>& diag,
                                               const std::vector<double>& upper, std::vector<double> rhs) {
    const std::size_t n = diag.size();
    // Sherman-Morrison: A = T + w v^T where T drops the corner entries.
    const double gamma = -diag[0];
    std::vector<double> b(diag);
    b[0] -= gamma;
    b[n - 1] -= upper[n - 1] * lower[0] / gamma;

    auto thomas = [&](std::vector<double>& d) {
        std::vector<double> c(n);
        c[0] = upper[0] / b[0];
        d[0] /= b[0];
        for (std::size_t i = 1; i < n; ++i) {
            const double m = b[i] - lower[i] * c[i - 1];
            c[i] = upper[i] / m;
            d[i] = (d[i] - lower[i] * d[i - 1]) / m;
        }
        for (std::size_t i = n - 1; i-- > 0;) d[i] -= c[i] * d[i + 1];
    };

    std::vector<double> w(n, 0.0);
    w[0] = gamma;
    w[n - 1] = upper[n - 1];
    thomas(rhs);
    thomas(w);
    const double v0 = 1.0;
    const double vn = lower[0] / gamma;
    const double factor = (v0 * rhs[0] + vn * rhs[n - 1]) / (1.0 + v0 * w[0] + vn * w[n - 1]);
    for (std::size_t i = 0; i < n; ++i) rhs[i] -= factor * w[i];
    return rhs;
}

namespace {

double step_h(std::size_t n) { return kTwoPi / static_cast<double>(n); }

double central(const std::vector<double>& f, std::size_t i, double h) {
    const std::size_t n = f.size();
    return (f[(i + 1) % n] - f[(i + n - 1) % n]) / (2.0 * h);
}

Step<RadialCurve> finish(const RadialCurve& prev, std::vector<double> r, const RadialLimits& limits) {
    for (double v : r) {
        if (!(v > 0.0) || !std::isfinite(v)) return {std::nullopt, StepStatus::RejectedNonPositive};
    }
    const double h = step_h(r.size());
    double rmin = std::numeric_limits<double>::infinity();
    double slope = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) {
        rmin = std::min(rmin, r[i]);
        slope = std::max(slope, std::abs(central(r, i, h)) / r[i]);
    }
    RadialCurve next(prev.origin(), std::move(r));
    const StepStatus status =
        (rmin < limits.r_floor || slope > limits.slope_bound) ? StepStatus::Breakdown : StepStatus::Accepted;
    return {std::move(next), status};
}

} // namespace

double radial_length(const RadialCurve& rad) {
    const auto& r = rad.radii();
    const double h = step_h(r.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) sum += std::hypot(r[i], central(r, i, h));
    return sum * h;
}

double radial_dt_bound(const RadialCurve& rad, double safety) {
    const auto& r = rad.radii();
    const double h = step_h(r.size());
    double diffusive = std::numeric_limits<double>::infinity();
    double advective = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < r.size(); ++i) {
        const double rt = central(r, i, h);
        const double g2 = r[i] * r[i] + rt * rt;
        diffusive = std::min(diffusive, h * r[i] * std::sqrt(g2));
        if (rt != 0.0) advective = std::min(advective, g2 * r[i] * r[i] / (8.0 * rt * rt));
    }
    return safety * std::min(diffusive, advective);
}

Step<RadialCurve> step_radial_r(const RadialCurve& rad, FlowKind kind, double dt, const RadialLimits& limits) {
    const auto& r = rad.radii();
    const std::size_t n = r.size();
    const double h = step_h(n);
    const double L = radial_length(rad);

    std::vector<double> lower(n), diag(n), upper(n), rhs(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double rt = central(r, i, h);
        const double g2 = r[i] * r[i] + rt * rt;
        double explicit_part = -2.0 * rt * rt / (r[i] * g2) - r[i] / g2;
        if (kind == FlowKind::GAPF) explicit_part += kTwoPi * std::sqrt(g2) / (r[i] * L);
        const double sigma = dt / (g2 * h * h);
        lower[i] = -sigma;
        upper[i] = -sigma;
        diag[i] = 1.0 + 2.0 * sigma;
        rhs[i] = r[i] + dt * explicit_part;
    }
    return finish(rad, solve_periodic_tridiagonal(lower, diag, upper, std::move(rhs)), limits);
}

Step<RadialCurve> step_radial_u(const RadialCurve& rad, FlowKind kind, double dt, const RadialLimits& limits) {
    const auto& r = rad.radii();
    const std::size_t n = r.size();
    const double h = step_h(n);
    std::vector<double> u(n);
    for (std::size_t i = 0; i < n; ++i) u[i] = r[i] * r[i];

    double L = 0.0;
    std::vector<double> ut(n), q(n);
    for (std::size_t i = 0; i < n; ++i) {
        ut[i] = central(u, i, h);
        q[i] = 4.0 * u[i] * u[i] + ut[i] * ut[i];
        L += std::sqrt(q[i] / (4.0 * u[i])) * h;
    }

    std::vector<double> lower(n), diag(n), upper(n), rhs(n);
    for (std::size_t i = 0; i < n; ++i) {
        double explicit_part = -6.0 * ut[i] * ut[i] / q[i] - 8.0 * u[i] * u[i] / q[i];
        if (kind == FlowKind::GAPF) explicit_part += kTwoPi / L * std::sqrt(q[i]) / std::sqrt(u[i]);
        const double sigma = dt * 4.0 * u[i] / (q[i] * h * h);
        lower[i] = -sigma;
        upper[i] = -sigma;
        diag[i] = 1.0 + 2.0 * sigma;
        rhs[i] = u[i] + dt * explicit_part;
    }
    std::vector<double> next = solve_periodic_tridiagonal(lower, diag, upper, std::move(rhs));
    for (double& v : next) {
        if (!(v > 0.0) || !std::isfinite(v)) return {std::nullopt, StepStatus::RejectedNonPositive};
        v = std::sqrt(v);
    }
    return finish(rad, std::move(next), limits);
}

} // namespace curveflow
