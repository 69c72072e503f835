#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include <barnorm/problem.hpp>
#include <barnorm/relaxation.hpp>
#include <barnorm/report.hpp>
#include <barnorm/sphere.hpp>

#include "test_support.hpp"

using namespace barnorm;
using Catch::Approx;

TEST_CASE("problem parsing") {
    const std::string good = R"({
        "dimension": 2,
        "label": "pair",
        "matrices": [[1, 1, 0, 1], [1, 0, 1, 1]]
    })";
    const Problem p = parse_problem(good);
    CHECK(p.label == "pair");
    REQUIRE(p.matrices.size() == 2);
    CHECK(p.matrices[0].a12 == 1.0);
    CHECK(p.matrices[0].a21 == 0.0);
    CHECK(p.matrices[1].a21 == 1.0);
    CHECK_NOTHROW(p.matrix_set());

    // label is optional
    CHECK(parse_problem(R"({"dimension": 2, "matrices": [[1,0,0,1]]})").label.empty());

    CHECK_THROWS_AS(parse_problem("not json"), std::invalid_argument);
    CHECK_THROWS_AS(parse_problem(R"({"dimension": 3, "matrices": [[1,0,0,1]]})"),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_problem(R"({"matrices": [[1,0,0,1]]})"), std::invalid_argument);
    CHECK_THROWS_AS(parse_problem(R"({"dimension": 2, "matrices": []})"),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_problem(R"({"dimension": 2, "matrices": [[1,0,0]]})"),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_problem(R"({"dimension": 2, "matrices": [[1,0,0,"x"]]})"),
                    std::invalid_argument);
    // a zero matrix fails MatrixSet construction
    const Problem zero = parse_problem(R"({"dimension": 2, "matrices": [[0,0,0,0]]})");
    CHECK_THROWS_AS(zero.matrix_set(), std::invalid_argument);
}

TEST_CASE("report writing round-trips byte-identically") {
    RunConfig c;
    c.node_count = 64;
    c.max_iterations = 40;
    const MatrixSet set = testsupport::example1();
    const IterationReport rep = run(set, c);
    const double residual =
        barabanov_residual(rep.final_norm, set, rep.midpoint(), c.lookup, c.convexify);
    const ReportFile rf = make_report("example-1", c, rep, residual);

    const std::string once = write_report(rf);
    const std::string twice = write_report(parse_report(once));
    CHECK(once == twice);

    const ReportFile back = parse_report(once);
    CHECK(back.label == "example-1");
    CHECK(back.node_count == 64);
    CHECK(back.irreducibility == "irreducible");
    CHECK(back.regime == "supported");
    CHECK(back.steps.size() == rep.steps.size());
    CHECK(back.rho_lower == rep.rho_lower()); // 17 significant digits are lossless
    CHECK(back.rho_upper == rep.rho_upper());
    CHECK(back.steps.back().gamma == rep.steps.back().gamma);
}

TEST_CASE("doubles are written with 17 significant digits") {
    CHECK(fmt_double(3.141592653589793) == "3.1415926535897931");
    CHECK(fmt_double(0.001) == "0.001");
    CHECK(fmt_double(1.0) == "1");
}

TEST_CASE("bounds report includes the sampled marker") {
    const BoundsBracket exhaustive{2, 1.5, 1.7, 1.6, 4, false, 0};
    const std::string text = write_bounds_report("demo", exhaustive);
    CHECK(text.find("\"depth\": 2") != std::string::npos);
    CHECK(text.find("\"sampled\": false") != std::string::npos);
    CHECK(text.find("\"upper\": 1.7") != std::string::npos);

    const BoundsBracket sampled{25, 1.5, std::nullopt, 1.6, 1 << 20, true, 99};
    const std::string s = write_bounds_report("demo", sampled);
    CHECK(s.find("\"upper\": null") != std::string::npos);
    CHECK(s.find("\"seed\": 99") != std::string::npos);
}

TEST_CASE("sphere table and CSV") {
    RunConfig c;
    c.node_count = 200;
    const MatrixSet set = testsupport::example1();
    const IterationReport rep = run(set, c);
    REQUIRE(rep.converged);
    const SphereTable t = build_sphere_table(rep.final_norm, set, rep.rho_upper(), c.lookup);

    REQUIRE(t.level.size() == 2);
    CHECK(t.gauge.front() == t.gauge.back()); // +-pi identified
    CHECK(t.phi.front() == Approx(-std::numbers::pi));
    CHECK(t.phi.back() == Approx(std::numbers::pi));

    const std::string csv = sphere_csv(t);
    CHECK(csv.rfind("phi,R,invR,level_1,level_2\n", 0) == 0);
    const std::size_t rows = std::count(csv.begin(), csv.end(), '\n');
    CHECK(rows == static_cast<std::size_t>(c.node_count) + 2); // header + N+1 nodes
}

TEST_CASE("sphere SVG curves are closed polylines") {
    RunConfig c;
    c.node_count = 128;
    const MatrixSet set = testsupport::example2();
    const IterationReport rep = run(set, c);
    const SphereTable t = build_sphere_table(rep.final_norm, set, rep.rho_upper(), c.lookup);
    const std::string svg = sphere_svg(t);

    CHECK(svg.rfind("<?xml", 0) == 0);
    CHECK(svg.find("<svg xmlns") != std::string::npos);
    // r level curves + the unit sphere
    std::size_t curves = 0, pos = 0;
    while ((pos = svg.find("<polyline", pos)) != std::string::npos) {
        ++curves;
        const std::size_t p0 = svg.find("points=\"", pos) + 8;
        const std::size_t p1 = svg.find('"', p0);
        const std::string pts = svg.substr(p0, p1 - p0);
        const std::size_t first_end = pts.find(' ');
        const std::string first = pts.substr(0, first_end);
        const std::size_t last_start = pts.rfind(' ');
        const std::string last = pts.substr(last_start + 1);
        CHECK(first == last); // closed curve
        pos = p1;
    }
    CHECK(curves == set.size() + 1);
    CHECK(svg.find("stroke-dasharray") != std::string::npos);
    CHECK(svg.find("|x|* = 1") != std::string::npos);
}

TEST_CASE("sign-change counting over a cyclic grid") {
    // radial curves crossing 4 times: difference follows sin(2 phi)
    const int n = 40;
    std::vector<double> a(n + 1), b(n + 1, 1.0);
    for (int k = 0; k <= n; ++k) {
        const double phi = std::numbers::pi * (2.0 * k - n) / n;
        a[k] = 1.0 + 0.3 * std::sin(2.0 * phi);
    }
    CHECK(count_sign_changes(a, b) == 4);

    // no crossings
    std::vector<double> above(n + 1, 2.0);
    CHECK(count_sign_changes(above, b) == 0);

    // a crossing pair that straddles the wrap-around seam: the sweep sees one
    // flip and the cyclic closure supplies the second
    std::vector<double> seam(n + 1);
    for (int k = 0; k <= n; ++k) seam[k] = k < n / 2 ? 0.5 : 2.0;
    CHECK(count_sign_changes(seam, b) == 2);

    // exact zeros on the boundary are skipped, not double-counted
    std::vector<double> z(n + 1, 1.0);
    z[3] = 2.0;
    z[4] = 1.0; // equal -> zero difference
    z[5] = 0.5;
    CHECK(count_sign_changes(z, b) == 2);
}
