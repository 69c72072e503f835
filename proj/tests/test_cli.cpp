#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include <barnorm/report.hpp>

namespace fs = std::filesystem;

namespace {

const std::string cli = BARNORM_CLI_PATH;
const fs::path problems = BARNORM_PROBLEMS_DIR;

int run_cli(const std::string& args) {
    const std::string cmd = cli + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    return WIFEXITED(status) ? WEXITSTATUS(status) : -2;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

fs::path fresh_dir(const std::string& name) {
    const fs::path d = fs::temp_directory_path() / ("barnorm_test_" + name);
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
}

void write_file(const fs::path& p, const std::string& text) {
    std::ofstream out(p);
    out << text;
}

} // namespace

TEST_CASE("jsr subcommand writes a converged report") {
    const fs::path out = fresh_dir("jsr");
    const int code =
        run_cli("jsr " + (problems / "example1.json").string() + " --out " + out.string());
    CHECK(code == 0);
    const fs::path report = out / "example1-report.json";
    REQUIRE(fs::exists(report));
    const barnorm::ReportFile rf = barnorm::parse_report(slurp(report));
    CHECK(rf.converged);
    CHECK(rf.label == "example-1");
    CHECK(rf.irreducibility == "irreducible");
    CHECK(rf.rho_upper - rf.rho_lower < 1e-3);
    CHECK(std::abs(0.5 * (rf.rho_lower + rf.rho_upper) - 1.618) < 2e-3);
    // the converged interval sits inside [1.616, 1.620]
    CHECK(rf.rho_lower >= 1.616);
    CHECK(rf.rho_upper <= 1.620);
}

TEST_CASE("jsr output is deterministic") {
    const fs::path out1 = fresh_dir("det1");
    const fs::path out2 = fresh_dir("det2");
    const std::string prob = (problems / "example2.json").string();
    CHECK(run_cli("jsr " + prob + " --nodes 600 --out " + out1.string()) == 0);
    CHECK(run_cli("jsr " + prob + " --nodes 600 --out " + out2.string()) == 0);
    CHECK(slurp(out1 / "example2-report.json") == slurp(out2 / "example2-report.json"));
}

TEST_CASE("jsr exit codes") {
    const fs::path out = fresh_dir("codes");

    // not converged within max iterations -> 2, report still written
    CHECK(run_cli("jsr " + (problems / "example1.json").string() +
                  " --max-iters 2 --tol 1e-9 --out " + out.string()) == 2);
    CHECK(fs::exists(out / "example1-report.json"));

    // invalid input -> 3, no report
    const fs::path bad = out / "bad.json";
    write_file(bad, "{\"dimension\": 3}");
    CHECK(run_cli("jsr " + bad.string() + " --out " + out.string()) == 3);
    CHECK_FALSE(fs::exists(out / "bad-report.json"));
    CHECK(run_cli("jsr " + (out / "missing.json").string()) == 3);

    // reducible set -> 4, no report
    const fs::path red = out / "reducible.json";
    write_file(red, R"({"dimension": 2, "matrices": [[2,0,0,1],[3,0,0,1]]})");
    CHECK(run_cli("jsr " + red.string() + " --out " + out.string()) == 4);
    CHECK_FALSE(fs::exists(out / "reducible-report.json"));
    // --force runs it and marks the regime
    CHECK(run_cli("jsr " + red.string() + " --force --nodes 200 --max-iters 200 --out " +
                  out.string()) != 4);
    CHECK(barnorm::parse_report(slurp(out / "reducible-report.json")).regime ==
          "unsupported");
}

TEST_CASE("bounds subcommand") {
    const fs::path out = fresh_dir("bounds");
    const std::string prob = (problems / "example1.json").string();
    CHECK(run_cli("bounds " + prob + " --depth 2 --out " + out.string()) == 0);
    const std::string text = slurp(out / "example1-bounds.json");
    CHECK(text.find("\"depth\": 2") != std::string::npos);
    CHECK(text.find("\"lower\": 1.618") != std::string::npos);

    // past the cap: exit 5 without a seed, sampled mode with one
    CHECK(run_cli("bounds " + prob + " --depth 25 --out " + out.string()) == 5);
    CHECK(run_cli("bounds " + prob + " --depth 25 --seed 7 --out " + out.string()) == 0);
    const std::string sampled = slurp(out / "example1-bounds.json");
    CHECK(sampled.find("\"sampled\": true") != std::string::npos);
    CHECK(sampled.find("\"upper\": null") != std::string::npos);
}

TEST_CASE("sphere subcommand") {
    const fs::path out = fresh_dir("sphere");
    const std::string prob = (problems / "example1.json").string();
    CHECK(run_cli("sphere " + prob + " --nodes 600 --out " + out.string()) == 0);
    CHECK(fs::exists(out / "example1-sphere.csv"));
    CHECK(fs::exists(out / "example1-sphere.svg"));
    CHECK(fs::exists(out / "example1-report.json"));
    const std::string csv = slurp(out / "example1-sphere.csv");
    CHECK(csv.rfind("phi,R,invR,level_1,level_2\n", 0) == 0);

    // non-convergence withholds the sphere unless forced
    const fs::path out2 = fresh_dir("sphere2");
    CHECK(run_cli("sphere " + prob + " --max-iters 2 --tol 1e-9 --nodes 600 --out " +
                  out2.string()) == 2);
    CHECK_FALSE(fs::exists(out2 / "example1-sphere.csv"));
    CHECK(run_cli("sphere " + prob + " --max-iters 2 --tol 1e-9 --nodes 600 "
                  "--force-output --out " +
                  out2.string()) == 2);
    CHECK(fs::exists(out2 / "example1-sphere.csv"));
}
