#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "curveflow/curve_zoo.hpp"
#include "curveflow/io.hpp"

using namespace curveflow;
namespace fs = std::filesystem;

namespace {

FlowConfig parse(const std::string& text) {
    std::istringstream is(text);
    return parse_config(is);
}

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("curveflow_test_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

} // namespace

TEST_CASE("doubles round trip through text") {
    for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 6.02e23, kPi}) CHECK(std::stod(format_double(v)) == v);
}

TEST_CASE("curve files round trip exactly") {
    const ClosedCurve c = random_star_curve(9, 5, 0.5, 100);
    std::stringstream ss;
    write_curve(ss, c);
    const ClosedCurve back = read_curve(ss);
    REQUIRE(back.size() == c.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
        CHECK(back[i].x == c[i].x);
        CHECK(back[i].y == c[i].y);
    }
    std::istringstream with_comments("# square\n0 0\n1 0 # corner\n\n1 1\n0 1\n");
    CHECK(read_curve(with_comments).area() == doctest::Approx(1.0));
    std::istringstream bad("0 0\n1 x\n1 1\n");
    CHECK_THROWS(read_curve(bad));
}

TEST_CASE("config parsing") {
    const FlowConfig g = parse("kind = GAPF\n");
    CHECK(g.kind == FlowKind::GAPF);
    CHECK(g == [] {
        FlowConfig d;
        d.kind = FlowKind::GAPF;
        return d;
    }());
    CHECK_THROWS_AS(parse("kind = GAPF\nsafety = 1.5\n"), ParameterError);
    CHECK_THROWS(parse("safety = 0.3\n"));
    CHECK_THROWS(parse("kind = CSF\nbogus = 1\n"));
    CHECK_THROWS(parse("kind = CSF\nkind = GAPF\n"));
    CHECK_THROWS(parse("kind = CSF\nn = 12abc\n"));

    const FlowConfig c = parse("# comment\nkind = CSF\nformulation = radial_u\nn = 300\nevent_checks = star, extinction\n"
                               "origin = 0.5 -1\nsample_times = 0.1, 0.2\nstop_on_star_loss = true\n");
    CHECK(c.kind == FlowKind::CSF);
    CHECK(c.formulation == Formulation::RadialU);
    CHECK(c.n == 300);
    CHECK(c.event_checks.star);
    CHECK_FALSE(c.event_checks.embedding);
    CHECK(c.event_checks.extinction);
    REQUIRE(c.origin);
    CHECK(c.origin->y == -1.0);
    CHECK(c.sample_times == std::vector<double>{0.1, 0.2});
    CHECK(c.stop_on_star_loss);
    CHECK(parse(format_config(c)) == c);
}

TEST_CASE("run ids depend on config and curve") {
    const ClosedCurve a = circle(1.0, {0, 0}, 16);
    const ClosedCurve b = circle(1.0, {0, 0}, 17);
    CHECK(make_run_id("kind = GAPF\n", a) == make_run_id("kind = GAPF\n", a));
    CHECK(make_run_id("kind = GAPF\n", a) != make_run_id("kind = CSF\n", a));
    CHECK(make_run_id("kind = GAPF\n", a) != make_run_id("kind = GAPF\n", b));
    CHECK(fnv1a_hex("") == "cbf29ce484222325");
    CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
}

TEST_CASE("outputs land in a run directory with a complete manifest") {
    const fs::path root = scratch("outputs");
    RunManifest m;
    m.run_id = "abc";
    m.command = "simulate";
    m.config = "kind = GAPF\n";
    m.terminal_event = "Completed";
    fs::create_directories(root / "runs" / "abc");
    std::ofstream(root / "runs" / "abc" / "stale.txt") << "old";
    const fs::path dir = save_outputs(m, {{"a.txt", "1"}, {"b.csv", "2"}}, root);
    CHECK(dir == root / "runs" / "abc");
    std::vector<std::string> on_disk;
    for (const auto& e : fs::directory_iterator(dir)) on_disk.push_back(e.path().filename().string());
    std::sort(on_disk.begin(), on_disk.end());
    CHECK(on_disk == m.files);
    CHECK(on_disk == std::vector<std::string>{"a.txt", "b.csv", "manifest.txt"});
    std::ifstream in(dir / "manifest.txt");
    const std::string text((std::istreambuf_iterator<char>(in)), {});
    CHECK(text.find("run_id = abc") != std::string::npos);
    CHECK(text.find("file = b.csv") != std::string::npos);
    CHECK(text.find("tool_version = " + std::string(kToolVersion)) != std::string::npos);
    fs::remove_all(root);
}

TEST_CASE("diagnostics csv") {
    Diagnostics d;
    d.t = 0.5;
    d.length = 2;
    d.area = 3;
    d.is_star = true;
    const std::string csv = diagnostics_csv({d});
    CHECK(csv.rfind("t,L,A,kappa_min,kappa_max,kernel_area,is_star\n", 0) == 0);
    CHECK(csv.find("0.5,2,3,") != std::string::npos);
    CHECK(snapshot_name("r1", 7) == "snap_r1_7.txt");
}

TEST_CASE("svg output is deterministic and well formed") {
    const ClosedCurve c = star_example(256);
    const std::string a = render_svg({c}, {kernel(c)}, {"star & kernel"});
    const std::string b = render_svg({c}, {kernel(c)}, {"star & kernel"});
    CHECK(a == b);
    CHECK(a.rfind("<svg", 0) == 0);
    CHECK(a.find("</svg>") != std::string::npos);
    CHECK(a.find("star &amp; kernel") != std::string::npos);
    CHECK(a.find("fill-opacity") != std::string::npos);
    CHECK_THROWS(render_svg({}, {}, {}));
    const std::string s = render_series_svg({0, 1, 2}, {{1, 2, 3}}, {"x"});
    CHECK(s.find("<path") != std::string::npos);
    CHECK_THROWS(render_series_svg({0, 1}, {{1}}, {}));
}
