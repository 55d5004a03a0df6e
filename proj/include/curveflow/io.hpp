#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "curveflow/experiments.hpp"
#include "curveflow/flow.hpp"
#include "curveflow/star_kernel.hpp"

namespace curveflow {

inline constexpr const char* kToolVersion = "0.1.0";

// 17 significant digits; parses back to the same double.
std::string format_double(double v);

// Curve files: one "x y" pair per line, '#' starts a comment.
void write_curve(std::ostream& os, const ClosedCurve& curve);
ClosedCurve read_curve(std::istream& is);
void save_curve(const std::filesystem::path& path, const ClosedCurve& curve);
ClosedCurve load_curve(const std::filesystem::path& path);

// Config files: `key = value` lines using the FlowConfig field names. `kind`
// is required, everything else defaults. event_checks is a comma list drawn
// from star, embedding, extinction (or "none"); origin is "x y" or "none";
// sample_times is a comma list.
FlowConfig parse_config(std::istream& is);
FlowConfig load_config(const std::filesystem::path& path);
std::string format_config(const FlowConfig& cfg);
void save_config(const std::filesystem::path& path, const FlowConfig& cfg);

// 64-bit FNV-1a as 16 hex digits.
std::string fnv1a_hex(const std::string& bytes);

struct RunManifest {
    std::string run_id;
    std::string command;
    std::string config; // echo of the config text
    std::string tool_version = kToolVersion;
    std::string start_time;
    std::string end_time;
    std::string terminal_event;
    std::vector<std::string> files; // filled by save_outputs
};

// Run id from the config text and the curve file bytes.
std::string make_run_id(const std::string& config_text, const ClosedCurve& initial);

// UTC ISO-8601 time; SOURCE_DATE_EPOCH, when set, pins it for reproducible output.
std::string wall_time_utc();

struct Artifact {
    std::string name;
    std::string content;
};

// Output root: $CURVEFLOW_OUT if set, else `fallback`.
std::filesystem::path output_root(const std::filesystem::path& fallback = ".");

// Replaces <root>/runs/<run_id>/ with the artifacts plus manifest.txt and
// returns the directory. The manifest lists every file written, itself included.
std::filesystem::path save_outputs(RunManifest& manifest, const std::vector<Artifact>& artifacts,
                                   const std::filesystem::path& root);

std::string format_manifest(const RunManifest& m);

// t,L,A,kappa_min,kappa_max,kernel_area,is_star
std::string diagnostics_csv(const std::vector<Diagnostics>& rows);
std::string curve_text(const ClosedCurve& curve);
std::string snapshot_name(const std::string& run_id, std::size_t step);

std::string comparison_report_text(const ComparisonReport& rep);
std::string wing_report_text(const WingCollapseReport& rep);
std::string convergence_csv(const ConvergenceReport& rep);

// Curves as paths, kernels shaded, one legend entry per label.
std::string render_svg(const std::vector<ClosedCurve>& curves, const std::vector<KernelPolygon>& kernels,
                       const std::vector<std::string>& labels);

// Line plot of several series over a shared x axis.
std::string render_series_svg(const std::vector<double>& x, const std::vector<std::vector<double>>& ys,
                              const std::vector<std::string>& labels);

} // namespace curveflow
