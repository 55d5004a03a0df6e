#include <algorithm>
#include <cstdio>
#include <limits>

#include "curveflow/io.hpp"

namespace curveflow {

namespace {

constexpr double kWidth = 800.0;
constexpr double kMargin = 20.0;
constexpr double kLegendLine = 18.0;
const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

struct Frame {
    double x0, y1, scale;
    Point2 map(Point2 p) const { return {kMargin + (p.x - x0) * scale, kMargin + (y1 - p.y) * scale}; }
};

std::string path_of(const std::vector<Point2>& pts, const Frame& f) {
    std::string d;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const Point2 q = f.map(pts[i]);
        d += (i ? " L" : "M") + num(q.x) + " " + num(q.y);
    }
    return d + " Z";
}

std::string legend(const std::vector<std::string>& labels, double top) {
    std::string out;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        const double y = top + kLegendLine * static_cast<double>(i);
        const char* color = kPalette[i % std::size(kPalette)];
        out += "<rect x=\"" + num(kMargin) + "\" y=\"" + num(y - 10) + "\" width=\"12\" height=\"12\" fill=\"" + color +
               "\"/>\n";
        out += "<text x=\"" + num(kMargin + 18) + "\" y=\"" + num(y) + "\" font-family=\"sans-serif\" font-size=\"13\">" +
               escape(labels[i]) + "</text>\n";
    }
    return out;
}

std::string header(double h) {
    return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth) + "\" height=\"" + num(h) +
           "\" viewBox=\"0 0 " + num(kWidth) + " " + num(h) + "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

} // namespace

std::string render_svg(const std::vector<ClosedCurve>& curves, const std::vector<KernelPolygon>& kernels,
                       const std::vector<std::string>& labels) {
    if (curves.empty()) throw ParameterError("render_svg: need at least one curve");
    std::vector<Point2> all;
    for (const auto& c : curves) all.insert(all.end(), c.vertices().begin(), c.vertices().end());
    const BoundingBox box = bounding_box(all);
    const double span_x = std::max(box.hi.x - box.lo.x, 1e-12);
    const double span_y = std::max(box.hi.y - box.lo.y, 1e-12);
    const double scale = (kWidth - 2 * kMargin) / span_x;
    const Frame f{box.lo.x, box.hi.y, scale};
    const double plot_h = span_y * scale + 2 * kMargin;
    const double height = plot_h + kLegendLine * static_cast<double>(labels.size()) + kMargin;

    std::string out = header(height);
    for (std::size_t i = 0; i < kernels.size(); ++i) {
        if (kernels[i].vertices.size() < 3) continue;
        const char* color = kPalette[i % std::size(kPalette)];
        out += "<path d=\"" + path_of(kernels[i].vertices, f) + "\" fill=\"" + color +
               "\" fill-opacity=\"0.35\" stroke=\"none\"/>\n";
    }
    for (std::size_t i = 0; i < curves.size(); ++i) {
        const char* color = kPalette[i % std::size(kPalette)];
        out += "<path d=\"" + path_of(curves[i].vertices(), f) + "\" fill=\"none\" stroke=\"" + color +
               "\" stroke-width=\"1.5\"/>\n";
    }
    out += legend(labels, plot_h + kLegendLine);
    out += "</svg>\n";
    return out;
}

std::string render_series_svg(const std::vector<double>& x, const std::vector<std::vector<double>>& ys,
                              const std::vector<std::string>& labels) {
    if (x.empty() || ys.empty()) throw ParameterError("render_series_svg: need data");
    double ylo = std::numeric_limits<double>::infinity();
    double yhi = -ylo;
    for (const auto& y : ys) {
        if (y.size() != x.size()) throw ParameterError("render_series_svg: series length mismatch");
        for (double v : y) {
            if (!std::isfinite(v)) continue;
            ylo = std::min(ylo, v);
            yhi = std::max(yhi, v);
        }
    }
    if (!(yhi > ylo)) {
        ylo -= 1.0;
        yhi += 1.0;
    }
    const double xlo = *std::min_element(x.begin(), x.end());
    const double xhi = std::max(*std::max_element(x.begin(), x.end()), xlo + 1e-12);
    const double plot_w = kWidth - 2 * kMargin;
    const double plot_h = 400.0;
    auto map = [&](double xv, double yv) {
        return Point2{kMargin + (xv - xlo) / (xhi - xlo) * plot_w, kMargin + (yhi - yv) / (yhi - ylo) * plot_h};
    };
    const double height = plot_h + 2 * kMargin + kLegendLine * static_cast<double>(labels.size()) + kMargin;

    std::string out = header(height);
    out += "<rect x=\"" + num(kMargin) + "\" y=\"" + num(kMargin) + "\" width=\"" + num(plot_w) + "\" height=\"" +
           num(plot_h) + "\" fill=\"none\" stroke=\"#888\"/>\n";
    for (std::size_t k = 0; k < ys.size(); ++k) {
        std::string d;
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (!std::isfinite(ys[k][i])) continue;
            const Point2 q = map(x[i], ys[k][i]);
            d += (d.empty() ? "M" : " L") + num(q.x) + " " + num(q.y);
        }
        out += "<path d=\"" + d + "\" fill=\"none\" stroke=\"" + kPalette[k % std::size(kPalette)] +
               "\" stroke-width=\"1.5\"/>\n";
    }
    out += "<text x=\"" + num(kMargin) + "\" y=\"" + num(kMargin - 5) + "\" font-family=\"sans-serif\" font-size=\"11\">" +
           escape("y in [" + format_double(ylo) + ", " + format_double(yhi) + "], x in [" + format_double(xlo) + ", " +
                  format_double(xhi) + "]") +
           "</text>\n";
    out += legend(labels, plot_h + 2 * kMargin + kLegendLine);
    out += "</svg>\n";
    return out;
}

} // namespace curveflow
