#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>

#include "curveflow/acceptance.hpp"
#include "curveflow/curve_zoo.hpp"
#include "curveflow/experiments.hpp"
#include "curveflow/io.hpp"
#include "curveflow/star_kernel.hpp"

using namespace curveflow;

namespace {

struct ZooArgs {
    std::string curve = "circle";
    std::size_t n = 1024;
    double radius = 1.0;
    double semi_x = 2.0;
    double semi_y = 1.0;
    std::uint64_t seed = 1;
    std::size_t modes = 5;
    double amplitude = 0.5;
    double bend = 0.5;
    std::size_t teeth = 4;
    WingParams wing;
    bool smooth = false;
    std::string output;
};

ClosedCurve build_curve(const ZooArgs& z) {
    if (z.curve == "circle") return circle(z.radius, {0.0, 0.0}, z.n);
    if (z.curve == "ellipse") return ellipse(z.semi_x, z.semi_y, {0.0, 0.0}, z.n);
    if (z.curve == "star") return star_example(z.n);
    if (z.curve == "random") return random_star_curve(z.seed, z.modes, z.amplitude, z.n);
    if (z.curve == "bent") return random_bent_curve(z.seed, z.bend, z.n);
    if (z.curve == "comb") return comb_curve(z.teeth, std::max<std::size_t>(1, z.n / (8 * z.teeth + 4)));
    if (z.curve == "figure8") return figure_eight(z.n);
    if (z.curve == "wing") {
        WingParams p = z.wing;
        p.n = z.n;
        const ClosedCurve c = flying_wing(p).curve;
        return z.smooth ? smooth_c1(c) : c;
    }
    throw ParameterError("curve: unknown constructor '" + z.curve + "'");
}

void emit(const std::string& text, const std::string& path) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path);
    out << text;
}

std::filesystem::path root_dir(const std::string& flag) { return output_root(flag.empty() ? "." : flag); }

std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int cmd_kernel(const std::string& input, const std::string& svg) {
    const ClosedCurve c = load_curve(input);
    const KernelPolygon k = kernel(c);
    const auto ta = turning_angle(c);
    const auto star = is_star_shaped(c);
    std::cout << "vertices = " << c.size() << "\n";
    std::cout << "area = " << format_double(c.area()) << "\n";
    std::cout << "length = " << format_double(c.length()) << "\n";
    std::cout << "embedded = " << (is_embedded(c) ? "true" : "false") << "\n";
    std::cout << "kernel_status = " << (k.status == KernelStatus::Full ? "full" : k.status == KernelStatus::Degenerate ? "degenerate" : "empty") << "\n";
    std::cout << "kernel_area = " << format_double(kernel_area(k)) << "\n";
    std::cout << "kernel_vertices = " << k.vertices.size() << "\n";
    std::cout << "star_shaped = " << (star.star ? "true" : "false") << "\n";
    if (star.witness) std::cout << "star_center = " << format_double(star.witness->x) << " " << format_double(star.witness->y) << "\n";
    std::cout << "turning_angle = " << format_double(ta.value) << "\n";
    std::cout << "turning_arc = " << ta.start << " " << ta.length << "\n";
    if (!svg.empty()) emit(render_svg({c}, {k}, {"curve and kernel"}), svg);
    return 0;
}

int cmd_simulate(const std::string& config_path, const std::string& input, const std::string& out_flag) {
    const std::string config_text = read_text(config_path);
    std::istringstream cs(config_text);
    const FlowConfig cfg = parse_config(cs);
    const ClosedCurve initial = load_curve(input);

    RunManifest m;
    m.command = "simulate";
    m.config = format_config(cfg);
    m.run_id = make_run_id(m.config, initial);
    m.start_time = wall_time_utc();
    const FlowResult res = run_flow(cfg, initial);
    m.end_time = wall_time_utc();
    m.terminal_event = to_string(res.event.kind) + " " + format_double(res.event.t);

    std::vector<Artifact> arts{{"config.txt", m.config},
                               {"initial.txt", curve_text(initial)},
                               {"diagnostics.csv", diagnostics_csv(res.trajectory.rows)}};
    for (const Snapshot& s : res.trajectory.snapshots) arts.push_back({snapshot_name(m.run_id, s.step), curve_text(s.curve)});
    if (res.event.state) {
        arts.push_back({"final.txt", curve_text(*res.event.state)});
        arts.push_back({"final.svg", render_svg({initial, *res.event.state}, {kernel(initial), kernel(*res.event.state)},
                                                {"initial", "t = " + format_double(res.event.t)})});
    }
    const auto dir = save_outputs(m, arts, root_dir(out_flag));
    std::cout << "run_id = " << m.run_id << "\n";
    std::cout << "event = " << m.terminal_event << "\n";
    std::cout << "steps = " << res.trajectory.steps << "\n";
    if (res.trajectory.star_lost_at) std::cout << "star_shape_lost_at = " << format_double(*res.trajectory.star_lost_at) << "\n";
    std::cout << "output = " << dir.string() << "\n";
    return 0;
}

int cmd_compare(const std::string& input, double t_end, const std::string& config_path, std::size_t samples,
                const std::string& out_flag) {
    FlowConfig base;
    if (!config_path.empty()) base = load_config(config_path);
    const ClosedCurve initial = load_curve(input);

    RunManifest m;
    m.command = "compare";
    m.config = format_config(base) + "compare_t_end = " + format_double(t_end) + "\ncompare_samples = " +
               std::to_string(samples) + "\n";
    m.run_id = make_run_id(m.config, initial);
    m.start_time = wall_time_utc();
    const ComparisonReport rep = compare_flows(initial, t_end, base, samples);
    m.end_time = wall_time_utc();
    m.terminal_event = "GAPF " + to_string(rep.gapf_event.kind) + " " + format_double(rep.gapf_event.t) + "; CSF " +
                       to_string(rep.csf_event.kind) + " " + format_double(rep.csf_event.t);

    std::vector<double> t, f, kg, kc;
    for (const auto& r : rep.rows) {
        t.push_back(r.t);
        f.push_back(r.f_min);
        kg.push_back(r.kernel_area_gapf);
        kc.push_back(r.kernel_area_csf);
    }
    std::vector<Artifact> arts{{"report.txt", comparison_report_text(rep)},
                               {"initial.txt", curve_text(initial)},
                               {"gapf_diagnostics.csv", diagnostics_csv(rep.gapf.rows)},
                               {"csf_diagnostics.csv", diagnostics_csv(rep.csf.rows)},
                               {"f_min.svg", render_series_svg(t, {f}, {"f_min"})},
                               {"kernel_area.svg", render_series_svg(t, {kg, kc}, {"GAPF kernel", "CSF kernel"})}};
    if (rep.gapf_event.state && rep.csf_event.state) {
        const ClosedCurve& g = *rep.gapf_event.state;
        const ClosedCurve& c = *rep.csf_event.state;
        arts.push_back({"final.svg", render_svg({g, c}, {kernel(g), kernel(c)}, {"GAPF", "CSF"})});
    }
    const auto dir = save_outputs(m, arts, root_dir(out_flag));
    std::cout << "run_id = " << m.run_id << "\n";
    std::cout << "enclosure_violations = " << rep.enclosure_violations() << "\n";
    std::cout << "inclusion_violations = " << rep.inclusion_violations() << "\n";
    std::cout << "output = " << dir.string() << "\n";
    return 0;
}

int cmd_wing(const WingParams& p, double epsilon, double t_end, const std::string& out_flag) {
    std::ostringstream cfg;
    cfg << "a = " << format_double(p.a) << "\nb = " << format_double(p.b) << "\nl1 = " << format_double(p.l1)
        << "\nl2 = " << format_double(p.l2) << "\nn = " << p.n << "\nepsilon = " << format_double(epsilon)
        << "\nt_end = " << format_double(t_end) << "\n";
    const FlyingWing w = flying_wing(p);

    RunManifest m;
    m.command = "wing";
    m.config = cfg.str();
    m.run_id = make_run_id(m.config, w.curve);
    m.start_time = wall_time_utc();
    const WingCollapseReport rep = wing_collapse(p, epsilon, t_end);
    m.end_time = wall_time_utc();
    m.terminal_event = to_string(rep.event.kind) + " " + format_double(rep.event.t);

    std::vector<Artifact> arts{{"report.txt", wing_report_text(rep)},
                               {"wing.txt", curve_text(w.curve)},
                               {"wing.svg", render_svg({w.curve}, {kernel(w.curve)}, {"flying wing and kernel"})},
                               {"kernel_area.svg", render_series_svg(rep.t, {rep.kernel_area}, {"kernel area"})}};
    if (!rep.u_min.empty()) arts.push_back({"u_min.svg", render_series_svg(rep.u_min_t, {rep.u_min}, {"u_min"})});
    const auto dir = save_outputs(m, arts, root_dir(out_flag));
    std::cout << "run_id = " << m.run_id << "\n";
    std::cout << "horizon = " << format_double(rep.horizon) << "\n";
    std::cout << "event = " << m.terminal_event << "\n";
    std::cout << "star_shape_lost_at = " << (rep.t_star ? format_double(*rep.t_star) : "none") << "\n";
    std::cout << "initial_kernel_rate = " << format_double(rep.initial_rate) << "\n";
    std::cout << "monotone = " << (rep.monotone() ? "true" : "false") << "\n";
    std::cout << "output = " << dir.string() << "\n";
    return 0;
}

int cmd_check(std::vector<int> ids) {
    if (ids.empty()) {
        ids.resize(kCriterionCount);
        std::iota(ids.begin(), ids.end(), 1);
    }
    for (int id : ids) criterion_name(id); // validate before running anything
    const auto results = run_acceptance(ids, std::cout);
    const bool all = std::all_of(results.begin(), results.end(), [](const CriterionResult& r) { return r.passed; });
    return all ? 0 : 2;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Curve flows, star kernels and the flying-wing experiment"};
    app.require_subcommand(1);

    ZooArgs z;
    auto* zoo = app.add_subcommand("zoo", "Write a constructed curve as a curve file");
    zoo->add_option("--curve", z.curve, "circle, ellipse, star, random, bent, comb, figure8, wing")->capture_default_str();
    zoo->add_option("--n", z.n, "Vertex count")->capture_default_str();
    zoo->add_option("--radius", z.radius, "Circle radius")->capture_default_str();
    zoo->add_option("--semi-x", z.semi_x, "Ellipse semi-axis along x")->capture_default_str();
    zoo->add_option("--semi-y", z.semi_y, "Ellipse semi-axis along y")->capture_default_str();
    zoo->add_option("--seed", z.seed, "Random seed")->capture_default_str();
    zoo->add_option("--modes", z.modes, "Random curve Fourier modes")->capture_default_str();
    zoo->add_option("--amplitude", z.amplitude, "Random curve amplitude")->capture_default_str();
    zoo->add_option("--bend", z.bend, "Bend strength for 'bent'")->capture_default_str();
    zoo->add_option("--teeth", z.teeth, "Comb teeth")->capture_default_str();
    zoo->add_option("--a", z.wing.a, "Wing parameter a")->capture_default_str();
    zoo->add_option("--b", z.wing.b, "Wing parameter b")->capture_default_str();
    zoo->add_option("--l1", z.wing.l1, "Wing parameter l1")->capture_default_str();
    zoo->add_option("--l2", z.wing.l2, "Wing parameter l2")->capture_default_str();
    zoo->add_flag("--smooth", z.smooth, "Smooth the wing by a short curve shortening run");
    zoo->add_option("-o,--output", z.output, "Output file (stdout if omitted)");

    std::string kernel_input, kernel_svg;
    auto* kern = app.add_subcommand("kernel", "Kernel and turning angle of a curve file");
    kern->add_option("-i,--input", kernel_input, "Curve file")->required();
    kern->add_option("--svg", kernel_svg, "Also write an SVG of curve and kernel");

    std::string sim_config, sim_input, out_flag;
    auto* sim = app.add_subcommand("simulate", "Run a flow from a config file");
    sim->add_option("-c,--config", sim_config, "Config file")->required();
    sim->add_option("-i,--input", sim_input, "Initial curve file")->required();
    sim->add_option("--out", out_flag, "Output root (CURVEFLOW_OUT takes precedence)");

    std::string cmp_input, cmp_config;
    double cmp_t_end = 1.0;
    std::size_t cmp_samples = 200;
    auto* cmp = app.add_subcommand("compare", "Run GAPF and CSF side by side");
    cmp->add_option("-i,--input", cmp_input, "Initial curve file")->required();
    cmp->add_option("--t-end", cmp_t_end, "Final time")->capture_default_str();
    cmp->add_option("-c,--config", cmp_config, "Config file for shared settings");
    cmp->add_option("--samples", cmp_samples, "Sampled times")->capture_default_str();
    cmp->add_option("--out", out_flag, "Output root (CURVEFLOW_OUT takes precedence)");

    WingParams wp;
    double wing_eps = 0.0, wing_t_end = 0.0;
    auto* wing = app.add_subcommand("wing", "Flying-wing kernel collapse under GAPF");
    wing->add_option("--a", wp.a)->capture_default_str();
    wing->add_option("--b", wp.b)->capture_default_str();
    wing->add_option("--l1", wp.l1)->capture_default_str();
    wing->add_option("--l2", wp.l2)->capture_default_str();
    wing->add_option("--n", wp.n)->capture_default_str();
    wing->add_option("--epsilon", wing_eps, "Smoothing time (0 = 1e-4 A / (2 pi))")->capture_default_str();
    wing->add_option("--t-end", wing_t_end, "Final time (0 = A0 / (2 pi))")->capture_default_str();
    wing->add_option("--out", out_flag, "Output root (CURVEFLOW_OUT takes precedence)");

    std::vector<int> check_ids;
    auto* check = app.add_subcommand("check", "Run the acceptance criteria");
    check->add_option("ids", check_ids, "Criterion numbers (all when omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        if (zoo->parsed()) {
            emit(curve_text(build_curve(z)), z.output);
            return 0;
        }
        if (kern->parsed()) return cmd_kernel(kernel_input, kernel_svg);
        if (sim->parsed()) return cmd_simulate(sim_config, sim_input, out_flag);
        if (cmp->parsed()) return cmd_compare(cmp_input, cmp_t_end, cmp_config, cmp_samples, out_flag);
        if (wing->parsed()) return cmd_wing(wp, wing_eps, wing_t_end, out_flag);
        if (check->parsed()) return cmd_check(check_ids);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
