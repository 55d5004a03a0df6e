#include "curveflow/io.hpp"

#include <charconv>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <map>
#include <sstream>

namespace curveflow {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string strip_comment(const std::string& line) { return line.substr(0, line.find('#')); }

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream is(s);
    while (std::getline(is, item, sep)) out.push_back(trim(item));
    return out;
}

double parse_double(const std::string& key, const std::string& text) {
    const std::string t = trim(text);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) {
        throw ParameterError(key + ": expected a number, got '" + text + "'");
    }
    return v;
}

std::size_t parse_count(const std::string& key, const std::string& text) {
    const std::string t = trim(text);
    unsigned long long v = 0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) {
        throw ParameterError(key + ": expected a nonnegative integer, got '" + text + "'");
    }
    return static_cast<std::size_t>(v);
}

bool parse_bool(const std::string& key, const std::string& text) {
    if (text == "true") return true;
    if (text == "false") return false;
    throw ParameterError(key + ": expected true or false, got '" + text + "'");
}

std::string bool_text(bool b) { return b ? "true" : "false"; }

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    out << content;
}

} // namespace

void write_curve(std::ostream& os, const ClosedCurve& curve) { os << curve_text(curve); }

std::string curve_text(const ClosedCurve& curve) {
    std::string out;
    for (const Point2& p : curve.vertices()) out += format_double(p.x) + " " + format_double(p.y) + "\n";
    return out;
}

ClosedCurve read_curve(std::istream& is) {
    std::vector<Point2> pts;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const std::string body = trim(strip_comment(line));
        if (body.empty()) continue;
        std::istringstream ls(body);
        std::string xs, ys, extra;
        ls >> xs >> ys;
        if (ys.empty() || (ls >> extra)) throw ParameterError("curve line " + std::to_string(lineno) + ": expected 'x y'");
        const std::string where = "curve line " + std::to_string(lineno);
        pts.push_back({parse_double(where, xs), parse_double(where, ys)});
    }
    return ClosedCurve(std::move(pts));
}

void save_curve(const std::filesystem::path& path, const ClosedCurve& curve) { write_file(path, curve_text(curve)); }

ClosedCurve load_curve(const std::filesystem::path& path) {
    std::istringstream is(read_file(path));
    return read_curve(is);
}

FlowConfig parse_config(std::istream& is) {
    FlowConfig cfg;
    std::map<std::string, std::string> seen;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const std::string body = trim(strip_comment(line));
        if (body.empty()) continue;
        const auto eq = body.find('=');
        if (eq == std::string::npos) {
            throw ParameterError("config line " + std::to_string(lineno) + ": expected 'key = value'");
        }
        const std::string key = trim(body.substr(0, eq));
        const std::string value = trim(body.substr(eq + 1));
        if (seen.count(key)) throw ParameterError(key + ": given twice");
        seen[key] = value;

        if (key == "kind") {
            cfg.kind = parse_flow_kind(value);
        } else if (key == "formulation") {
            cfg.formulation = parse_formulation(value);
        } else if (key == "n") {
            cfg.n = parse_count(key, value);
        } else if (key == "dt_init") {
            cfg.dt_init = parse_double(key, value);
        } else if (key == "safety") {
            cfg.safety = parse_double(key, value);
        } else if (key == "t_end") {
            cfg.t_end = parse_double(key, value);
        } else if (key == "resample_every") {
            cfg.resample_every = parse_count(key, value);
        } else if (key == "event_checks") {
            cfg.event_checks = {false, false, false};
            if (value != "none") {
                for (const std::string& item : split(value, ',')) {
                    if (item == "star") {
                        cfg.event_checks.star = true;
                    } else if (item == "embedding") {
                        cfg.event_checks.embedding = true;
                    } else if (item == "extinction") {
                        cfg.event_checks.extinction = true;
                    } else {
                        throw ParameterError("event_checks: unknown check '" + item + "'");
                    }
                }
            }
        } else if (key == "origin") {
            if (value == "none") {
                cfg.origin.reset();
            } else {
                std::istringstream vs(value);
                std::string xs, ys, extra;
                vs >> xs >> ys;
                if (ys.empty() || (vs >> extra)) throw ParameterError("origin: expected 'x y' or none");
                cfg.origin = Point2{parse_double(key, xs), parse_double(key, ys)};
            }
        } else if (key == "check_every") {
            cfg.check_every = parse_count(key, value);
        } else if (key == "stop_on_star_loss") {
            cfg.stop_on_star_loss = parse_bool(key, value);
        } else if (key == "handoff") {
            cfg.handoff = parse_bool(key, value);
        } else if (key == "sample_times") {
            cfg.sample_times.clear();
            if (!value.empty()) {
                for (const std::string& item : split(value, ',')) cfg.sample_times.push_back(parse_double(key, item));
            }
        } else if (key == "snapshot_every") {
            cfg.snapshot_every = parse_count(key, value);
        } else {
            throw ParameterError(key + ": unknown config key");
        }
    }
    if (!seen.count("kind")) throw ParameterError("kind: required key missing");
    cfg.validate();
    return cfg;
}

FlowConfig load_config(const std::filesystem::path& path) {
    std::istringstream is(read_file(path));
    return parse_config(is);
}

std::string format_config(const FlowConfig& cfg) {
    std::ostringstream os;
    os << "kind = " << to_string(cfg.kind) << "\n";
    os << "formulation = " << to_string(cfg.formulation) << "\n";
    os << "n = " << cfg.n << "\n";
    os << "dt_init = " << format_double(cfg.dt_init) << "\n";
    os << "safety = " << format_double(cfg.safety) << "\n";
    os << "t_end = " << format_double(cfg.t_end) << "\n";
    os << "resample_every = " << cfg.resample_every << "\n";
    std::vector<std::string> checks;
    if (cfg.event_checks.star) checks.push_back("star");
    if (cfg.event_checks.embedding) checks.push_back("embedding");
    if (cfg.event_checks.extinction) checks.push_back("extinction");
    os << "event_checks = ";
    if (checks.empty()) os << "none";
    for (std::size_t i = 0; i < checks.size(); ++i) os << (i ? "," : "") << checks[i];
    os << "\n";
    os << "origin = " << (cfg.origin ? format_double(cfg.origin->x) + " " + format_double(cfg.origin->y) : "none")
       << "\n";
    os << "check_every = " << cfg.check_every << "\n";
    os << "stop_on_star_loss = " << bool_text(cfg.stop_on_star_loss) << "\n";
    os << "handoff = " << bool_text(cfg.handoff) << "\n";
    os << "sample_times = ";
    for (std::size_t i = 0; i < cfg.sample_times.size(); ++i) os << (i ? "," : "") << format_double(cfg.sample_times[i]);
    os << "\n";
    os << "snapshot_every = " << cfg.snapshot_every << "\n";
    return os.str();
}

void save_config(const std::filesystem::path& path, const FlowConfig& cfg) { write_file(path, format_config(cfg)); }

std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string make_run_id(const std::string& config_text, const ClosedCurve& initial) {
    return fnv1a_hex(config_text + "\n--\n" + curve_text(initial));
}

std::string wall_time_utc() {
    std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH")) now = static_cast<std::time_t>(std::strtoll(epoch, nullptr, 10));
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::filesystem::path output_root(const std::filesystem::path& fallback) {
    if (const char* env = std::getenv("CURVEFLOW_OUT"); env && *env) return env;
    return fallback;
}

std::string format_manifest(const RunManifest& m) {
    std::ostringstream os;
    os << "run_id = " << m.run_id << "\n";
    os << "command = " << m.command << "\n";
    os << "tool_version = " << m.tool_version << "\n";
    os << "start_time = " << m.start_time << "\n";
    os << "end_time = " << m.end_time << "\n";
    os << "terminal_event = " << m.terminal_event << "\n";
    for (const auto& f : m.files) os << "file = " << f << "\n";
    os << "[config]\n" << m.config;
    return os.str();
}

std::filesystem::path save_outputs(RunManifest& manifest, const std::vector<Artifact>& artifacts,
                                   const std::filesystem::path& root) {
    const std::filesystem::path dir = root / "runs" / manifest.run_id;
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    manifest.files.clear();
    for (const Artifact& a : artifacts) {
        if (a.name.empty() || a.name.find('/') != std::string::npos || a.name == "manifest.txt") {
            throw ParameterError("artifact name '" + a.name + "' is not a plain file name");
        }
        write_file(dir / a.name, a.content);
        manifest.files.push_back(a.name);
    }
    manifest.files.push_back("manifest.txt");
    std::sort(manifest.files.begin(), manifest.files.end());
    write_file(dir / "manifest.txt", format_manifest(manifest));
    return dir;
}

std::string diagnostics_csv(const std::vector<Diagnostics>& rows) {
    std::string out = "t,L,A,kappa_min,kappa_max,kernel_area,is_star\n";
    for (const Diagnostics& d : rows) {
        out += format_double(d.t) + "," + format_double(d.length) + "," + format_double(d.area) + "," +
               format_double(d.kappa_min) + "," + format_double(d.kappa_max) + "," + format_double(d.kernel_area) +
               "," + (d.is_star ? "1" : "0") + "\n";
    }
    return out;
}

std::string snapshot_name(const std::string& run_id, std::size_t step) {
    return "snap_" + run_id + "_" + std::to_string(step) + ".txt";
}

namespace {

std::string opt_text(const std::optional<double>& v) { return v ? format_double(*v) : "none"; }

} // namespace

std::string comparison_report_text(const ComparisonReport& rep) {
    std::ostringstream os;
    os << "origin = " << format_double(rep.origin.x) << " " << format_double(rep.origin.y) << "\n";
    os << "epsilon = " << format_double(rep.epsilon) << "\n";
    os << "gapf_event = " << to_string(rep.gapf_event.kind) << " " << format_double(rep.gapf_event.t) << "\n";
    os << "csf_event = " << to_string(rep.csf_event.kind) << " " << format_double(rep.csf_event.t) << "\n";
    os << "gapf_star_lost_at = " << opt_text(rep.gapf.star_lost_at) << "\n";
    os << "csf_star_lost_at = " << opt_text(rep.csf.star_lost_at) << "\n";
    os << "enclosure_violations = " << rep.enclosure_violations() << "\n";
    os << "inclusion_violations = " << rep.inclusion_violations() << "\n";
    os << "\nt,radial,f_min,enclosure,kernel_area_gapf,kernel_area_csf,both_kernels,kernel_inclusion\n";
    for (const ComparisonRow& r : rep.rows) {
        os << format_double(r.t) << "," << r.radial << "," << format_double(r.f_min) << "," << r.enclosure << ","
           << format_double(r.kernel_area_gapf) << "," << format_double(r.kernel_area_csf) << "," << r.both_kernels
           << "," << r.kernel_inclusion << "\n";
    }
    return os.str();
}

std::string wing_report_text(const WingCollapseReport& rep) {
    std::ostringstream os;
    os << "a = " << format_double(rep.params.a) << "\n";
    os << "b = " << format_double(rep.params.b) << "\n";
    os << "l1 = " << format_double(rep.params.l1) << "\n";
    os << "l2 = " << format_double(rep.params.l2) << "\n";
    os << "n = " << rep.params.n << "\n";
    os << "epsilon = " << format_double(rep.epsilon) << "\n";
    os << "area0 = " << format_double(rep.area0) << "\n";
    os << "length0 = " << format_double(rep.length0) << "\n";
    os << "horizon = " << format_double(rep.horizon) << "\n";
    os << "event = " << to_string(rep.event.kind) << " " << format_double(rep.event.t) << "\n";
    os << "star_shape_lost_at = " << opt_text(rep.t_star) << "\n";
    os << "initial_kernel_rate = " << format_double(rep.initial_rate) << "\n";
    os << "predicted_u_rate = " << format_double(rep.predicted_u_rate) << "\n";
    os << "max_kernel_increase = " << format_double(rep.max_increase) << "\n";
    os << "monotone = " << bool_text(rep.monotone()) << "\n";
    os << "passed = " << bool_text(rep.passed()) << "\n";
    os << "\nt,kernel_area\n";
    for (std::size_t i = 0; i < rep.t.size(); ++i) os << format_double(rep.t[i]) << "," << format_double(rep.kernel_area[i]) << "\n";
    os << "\nt,u_min\n";
    for (std::size_t i = 0; i < rep.u_min_t.size(); ++i) {
        os << format_double(rep.u_min_t[i]) << "," << format_double(rep.u_min[i]) << "\n";
    }
    return os.str();
}

std::string convergence_csv(const ConvergenceReport& rep) {
    std::string out = "# t_convex = " + opt_text(rep.t_convex) + "\nt,ratio,deviation\n";
    for (const ConvergenceRow& r : rep.rows) {
        out += format_double(r.t) + "," + format_double(r.ratio) + "," + format_double(r.deviation) + "\n";
    }
    return out;
}

} // namespace curveflow
