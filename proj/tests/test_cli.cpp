// End-to-end tests of the casimir CLI binary: output formats, exit codes,
// determinism. The binary path is injected by the build.

#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct RunResult {
    int exit_code;
    std::string out;  // stdout + stderr
};

RunResult run_cli(const std::string& args) {
    const std::string cmd = std::string(CASIMIR_CLI_PATH) + " " + args + " 2>&1";
    std::array<char, 4096> buf{};
    std::string out;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
    const int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

// parse data rows of a CSV payload (skipping # comments)
std::vector<std::vector<double>> csv_numbers(const std::string& text) {
    std::vector<std::vector<double>> rows;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<double> row;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) {
            try {
                row.push_back(std::stod(cell));
            } catch (...) {
                break;  // trailing non-numeric columns (e.g. status)
            }
        }
        if (!row.empty()) rows.push_back(row);
    }
    return rows;
}

}  // namespace

TEST_CASE("pressure subcommand") {
    SECTION("reports the zero-T Casimir pressure") {
        RunResult r = run_cli("pressure --gap 1e-6");
        REQUIRE(r.exit_code == 0);
        CHECK(r.out.rfind("# col:", 0) == 0);
        auto rows = csv_numbers(r.out);
        REQUIRE(rows.size() == 1);
        CHECK(std::abs(rows[0][1] - 1.3001e-3) <= 1e-4 * 1.3001e-3);
    }

    SECTION("zero temperature gives R = 1") {
        RunResult r = run_cli("pressure --gap 1e-6 --temp 0");
        REQUIRE(r.exit_code == 0);
        auto rows = csv_numbers(r.out);
        REQUIRE(rows.size() == 1);
        CHECK(rows[0].back() == 1.0);
    }

    SECTION("finite temperature reports R < 1") {
        RunResult r = run_cli("pressure --gap 1e-6 --temp 300");
        REQUIRE(r.exit_code == 0);
        auto rows = csv_numbers(r.out);
        REQUIRE(rows.size() == 1);
        const double R = rows[0].back();
        CHECK(R > 0.0);
        CHECK(R < 1.0);
    }

    SECTION("negative gap is a usage error") {
        CHECK(run_cli("pressure --gap -1").exit_code == 2);
    }

    SECTION("svg is not valid for pressure") {
        CHECK(run_cli("pressure --gap 1e-6 --format svg").exit_code == 2);
    }

    SECTION("json envelope carries the schema fields") {
        RunResult r = run_cli("pressure --gap 1e-6 --temp 300 --format json");
        REQUIRE(r.exit_code == 0);
        for (const char* key : {"\"command\"", "\"inputs\"", "\"outputs\"",
                                "\"tolerances\"", "\"constants_version\""})
            CHECK(r.out.find(key) != std::string::npos);
        CHECK(r.out.find("CODATA-2018") != std::string::npos);
    }
}

TEST_CASE("ratio-sweep subcommand") {
    SECTION("first row at T = 0 has R = 1; R non-increasing in T") {
        RunResult r = run_cli(
            "ratio-sweep --gaps 1e-6 --temp-min 0 --temp-max 0.001 --points 2");
        REQUIRE(r.exit_code == 0);
        auto rows = csv_numbers(r.out);
        REQUIRE(rows.size() == 2);
        CHECK(rows[0][3] == 1.0);
        CHECK(rows[1][3] <= rows[0][3]);
    }

    SECTION("R depends only on the product aT: rescaled sweeps coincide") {
        RunResult r1 = run_cli(
            "ratio-sweep --gaps 1e-6 --temp-min 50 --temp-max 300 --points 5");
        RunResult r2 = run_cli(
            "ratio-sweep --gaps 2e-6 --temp-min 25 --temp-max 150 --points 5");
        REQUIRE(r1.exit_code == 0);
        REQUIRE(r2.exit_code == 0);
        auto a = csv_numbers(r1.out), b = csv_numbers(r2.out);
        REQUIRE(a.size() == b.size());
        for (std::size_t i = 0; i < a.size(); ++i)
            CHECK(std::abs(a[i][3] - b[i][3]) <= 1e-10 * a[i][3]);
    }

    SECTION("rows are non-increasing per gap and 0 < R <= 1") {
        RunResult r = run_cli(
            "ratio-sweep --gaps 1e-6,5e-6 --temp-min 0 --temp-max 300 --points 8");
        REQUIRE(r.exit_code == 0);
        auto rows = csv_numbers(r.out);
        REQUIRE(rows.size() == 16);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            CHECK(rows[i][3] > 0.0);
            CHECK(rows[i][3] <= 1.0);
            if (i % 8 != 0) CHECK(rows[i][3] <= rows[i - 1][3]);
        }
    }

    SECTION("svg output is a standalone document with one polyline per gap") {
        RunResult r = run_cli(
            "ratio-sweep --gaps 1e-6,2e-6 --temp-min 0 --temp-max 300 --points 6 "
            "--format svg");
        REQUIRE(r.exit_code == 0);
        CHECK(r.out.rfind("<svg", 0) == 0);
        std::size_t count = 0, pos = 0;
        while ((pos = r.out.find("<polyline", pos)) != std::string::npos) {
            ++count;
            pos += 9;
        }
        CHECK(count == 2);
    }

    SECTION("--out writes the file; unwritable path is a runtime failure") {
        const std::string path = "cli_test_sweep.csv";
        RunResult r = run_cli(
            "ratio-sweep --gaps 1e-6 --temp-min 0 --temp-max 10 --points 2 --out " +
            path);
        REQUIRE(r.exit_code == 0);
        std::ifstream f(path);
        REQUIRE(f.good());
        std::string first;
        std::getline(f, first);
        CHECK(first.rfind("# col:", 0) == 0);
        f.close();
        std::remove(path.c_str());

        CHECK(run_cli("ratio-sweep --gaps 1e-6 --temp-min 0 --temp-max 10 "
                      "--points 2 --out /nonexistent_dir/x.csv")
                  .exit_code == 1);
    }

    SECTION("bad grid is a usage error") {
        CHECK(run_cli("ratio-sweep --points 1").exit_code == 2);
        CHECK(run_cli("ratio-sweep --temp-min 10 --temp-max 5").exit_code == 2);
        CHECK(run_cli("ratio-sweep --temp-min 0 --scale log").exit_code == 2);
    }
}

TEST_CASE("cutoff-scan subcommand") {
    SECTION("residual converges to the Casimir target") {
        RunResult r = run_cli("cutoff-scan --gap 1e-6 --lambdas 1e-9");
        REQUIRE(r.exit_code == 0);
        auto rows = csv_numbers(r.out);
        REQUIRE(rows.size() == 1);
        const double residual = rows[0][3], target = rows[0][4];
        CHECK(std::abs(residual / target - 1.0) <= 1e-4);
    }

    SECTION("divergent column is identical across gaps") {
        RunResult r1 = run_cli("cutoff-scan --gap 1e-6 --lambdas 1e-8");
        RunResult r2 = run_cli("cutoff-scan --gap 4e-6 --lambdas 1e-8");
        auto a = csv_numbers(r1.out), b = csv_numbers(r2.out);
        REQUIRE(a.size() == 1);
        REQUIRE(b.size() == 1);
        CHECK(a[0][2] == b[0][2]);
    }

    SECTION("huge cutoff suppresses the regulated pressure") {
        RunResult r = run_cli("cutoff-scan --gap 1e-6 --lambdas 1e-5");
        auto rows = csv_numbers(r.out);
        REQUIRE(rows.size() == 1);
        CHECK(std::abs(rows[0][1]) <= 1e-12);
    }

    SECTION("guarded rows are flagged, not computed") {
        RunResult r = run_cli("cutoff-scan --gap 1e-6 --lambdas 1e-19,1e-9");
        REQUIRE(r.exit_code == 0);
        CHECK(r.out.find("guarded") != std::string::npos);
        CHECK(r.out.find("nan") != std::string::npos);
    }
}

TEST_CASE("check subcommands") {
    SECTION("green-check passes and is byte-identical for a fixed seed") {
        RunResult r1 = run_cli("green-check --samples 400 --seed 42");
        RunResult r2 = run_cli("green-check --samples 400 --seed 42");
        CHECK(r1.exit_code == 0);
        CHECK(r1.out == r2.out);
        CHECK(r1.out.find("bracket_identity") != std::string::npos);
        CHECK(r1.out.find("pass") != std::string::npos);
    }

    SECTION("modes-check passes; hidden injection flag flips it to failure") {
        CHECK(run_cli("modes-check --samples 200 --seed 42").exit_code == 0);
        RunResult bad =
            run_cli("modes-check --samples 50 --seed 42 --inject-nontransverse");
        CHECK(bad.exit_code == 1);
        CHECK(bad.out.find("FAIL") != std::string::npos);
    }

    SECTION("zero samples is a usage error") {
        CHECK(run_cli("green-check --samples 0").exit_code == 2);
    }

    SECTION("json report carries per-check results") {
        RunResult r = run_cli("green-check --samples 100 --seed 7 --format json");
        REQUIRE(r.exit_code == 0);
        CHECK(r.out.find("\"checks\"") != std::string::npos);
        CHECK(r.out.find("\"pass\": true") != std::string::npos);
    }
}

TEST_CASE("top-level usage") {
    CHECK(run_cli("").exit_code == 2);
    CHECK(run_cli("no-such-command").exit_code == 2);
    CHECK(run_cli("--help").exit_code == 0);
    CHECK(run_cli("pressure --help").exit_code == 0);
}
