#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "mvi/harness.hpp"
#include "mvi/trajectory.hpp"

using namespace mvi;
using namespace mvi::harness;

namespace {

struct Captured {
    int code = 0;
    std::string out;
    std::string err;
};

Captured simulate(const SimulateOptions& opt)
{
    std::stringstream out, err;
    const int code = run_simulate(opt, out, err);
    return {code, out.str(), err.str()};
}

Captured converge(const ConvergeOptions& opt)
{
    std::stringstream out, err;
    const int code = run_converge(opt, out, err);
    return {code, out.str(), err.str()};
}

} // namespace

TEST_CASE("simulate writes a readable trajectory and reports success")
{
    SimulateOptions opt;
    opt.h = 0.1;
    opt.n = 10;
    const Captured r = simulate(opt);
    CHECK(r.code == 0);
    CHECK(r.err.find("wrote 11 rows") != std::string::npos);
    CHECK(r.err.find("problem harmonic") != std::string::npos);

    std::stringstream csv(r.out);
    const TrajectoryRecord record = read_csv(csv);
    CHECK(record.problem == "harmonic");
    CHECK(record.scheme == "midpoint_hamiltonian");
    CHECK(record.rows.size() == 11);
    CHECK(record.b == doctest::Approx(1.0).epsilon(1e-12));
    REQUIRE(record.notes.size() == 1);
    CHECK(record.notes[0].first == "seed");
    CHECK(record.notes[0].second == "0");
}

TEST_CASE("simulate seeds the position scheme from a phase step by default")
{
    SimulateOptions opt;
    opt.scheme = "midpoint_lagrangian";
    opt.h = 0.1;
    opt.n = 5;
    const Captured r = simulate(opt);
    CHECK(r.code == 0);
    std::stringstream csv(r.out);
    TrajectoryRecord record = read_csv(csv);
    REQUIRE(record.notes.size() == 2);
    CHECK(record.notes[1].first == "q1_origin");
    CHECK(record.notes[1].second == "phase_step");

    opt.q1 = {0.995};
    const Captured given = simulate(opt);
    CHECK(given.code == 0);
    std::stringstream csv2(given.out);
    record = read_csv(csv2);
    CHECK(record.notes[1].second == "given");
}

TEST_CASE("simulate derives the step count from tmax when n is zero")
{
    SimulateOptions opt;
    opt.h = 0.25;
    opt.n = 0;
    opt.tmax = 2.0;
    const Captured r = simulate(opt);
    CHECK(r.code == 0);
    CHECK(r.err.find("wrote 9 rows") != std::string::npos);
}

TEST_CASE("simulate rejects unusable options with exit code 1")
{
    const auto expect_usage = [](const SimulateOptions& opt, const std::string& needle) {
        const Captured r = simulate(opt);
        CHECK(r.code == 1);
        CHECK(r.err.find("error:") == 0);
        CHECK(r.err.find(needle) != std::string::npos);
        CHECK(r.out.empty());
    };

    SimulateOptions opt;
    opt.problem = "kepler";
    expect_usage(opt, "unknown problem");

    opt = {};
    opt.scheme = "leapfrog";
    expect_usage(opt, "unknown scheme");

    opt = {};
    opt.problem = "pendulum";
    opt.q0 = {1.0, 2.0};
    opt.p0 = {0.0, 0.0};
    expect_usage(opt, "needs 1 position components");

    opt = {};
    opt.p0 = {0.0, 1.0};
    expect_usage(opt, "matching sizes");

    opt = {};
    opt.h = -0.1;
    expect_usage(opt, "h must be positive");

    opt = {};
    opt.q1 = {1.0};
    expect_usage(opt, "q1 only applies");

    opt = {};
    opt.scheme = "midpoint_lagrangian";
    opt.q1 = {1.0, 2.0};
    expect_usage(opt, "q1 must match");

    opt = {};
    opt.n = 0;
    opt.tmax = -1.0;
    expect_usage(opt, "tmax must be positive");

    opt = {};
    opt.tol = 0.0;
    expect_usage(opt, "tol must be positive");

    opt = {};
    opt.max_iter = 0;
    expect_usage(opt, "max-iter");
}

TEST_CASE("simulate writes to a file when asked")
{
    const std::string path = "harness_simulate_test.csv";
    SimulateOptions opt;
    opt.h = 0.1;
    opt.n = 4;
    opt.out = path;
    opt.seed = 7;
    const Captured r = simulate(opt);
    CHECK(r.code == 0);
    CHECK(r.out.empty());

    const TrajectoryRecord record = read_csv_file(path);
    CHECK(record.rows.size() == 5);
    CHECK(record.notes[0].second == "7");
    std::remove(path.c_str());

    opt.out = "no_such_directory/trajectory.csv";
    const Captured bad = simulate(opt);
    CHECK(bad.code == 1);
    CHECK(bad.err.find("error:") == 0);
}

TEST_CASE("simulate reports a failing solve with exit code 2 and partial rows")
{
    SimulateOptions opt;
    opt.problem = "pendulum";
    opt.h = 0.1;
    opt.n = 10;
    opt.tol = 1e-300;
    opt.max_iter = 3;
    const Captured r = simulate(opt);
    CHECK(r.code == 2);
    CHECK(r.err.find("error: step 1:") != std::string::npos);
    CHECK(r.err.find("(wrote 1 of 11 rows)") != std::string::npos);
    CHECK(r.out.find("# solver_failure=step 1:") != std::string::npos);

    // the position scheme can already fail while seeding its second point
    opt.scheme = "midpoint_lagrangian";
    const Captured seed_fail = simulate(opt);
    CHECK(seed_fail.code == 2);
    CHECK(seed_fail.err.find("seed step:") != std::string::npos);
    CHECK(seed_fail.err.find("(wrote 0 of 11 rows)") != std::string::npos);
    CHECK(seed_fail.out.find("# solver_failure=seed step:") != std::string::npos);
}

TEST_CASE("convergence study measures second order for the midpoint phase scheme")
{
    ConvergeOptions opt;
    const ConvergeReport report = converge_study(opt);
    REQUIRE(report.points.size() == 4);
    CHECK_FALSE(report.exact);
    for (size_t k = 1; k < report.points.size(); ++k)
        CHECK(report.points[k].error < report.points[k - 1].error);
    CHECK(report.slope == doctest::Approx(2.0).epsilon(0.05));

    opt.scheme = "order1";
    CHECK(converge_study(opt).slope == doctest::Approx(1.0).epsilon(0.15));
}

TEST_CASE("convergence study flags exact integration")
{
    ConvergeOptions opt;
    opt.problem = "free_particle";
    const ConvergeReport report = converge_study(opt);
    CHECK(report.exact);

    std::stringstream out, err;
    const int code = run_converge(opt, out, err);
    CHECK(code == 0);
    CHECK(out.str().find("exact up to solver precision") != std::string::npos);
}

TEST_CASE("converge prints a table and an order column")
{
    ConvergeOptions opt;
    opt.out = "harness_converge_test.csv";
    const Captured r = converge(opt);
    CHECK(r.code == 0);
    CHECK(r.out.find("problem harmonic, scheme midpoint_hamiltonian") != std::string::npos);
    CHECK(r.out.find("h          n         error      order") != std::string::npos);
    CHECK(r.out.find("fitted slope 1.99") != std::string::npos);

    std::ifstream csv(opt.out);
    REQUIRE(csv.good());
    std::string header;
    std::getline(csv, header);
    CHECK(header == "h,n,error,order");
    int rows = 0;
    for (std::string line; std::getline(csv, line);)
        if (!line.empty())
            ++rows;
    CHECK(rows == 4);
    csv.close();
    std::remove(opt.out.c_str());
}

TEST_CASE("converge rejects unusable options and surfaces solver failures")
{
    ConvergeOptions opt;
    opt.hs = {0.1};
    Captured r = converge(opt);
    CHECK(r.code == 1);
    CHECK(r.err.find("need at least two step sizes") != std::string::npos);

    opt = {};
    opt.hs = {0.1, -0.05};
    r = converge(opt);
    CHECK(r.code == 1);
    CHECK(r.err.find("every h must be positive") != std::string::npos);

    opt = {};
    opt.tmax = 0.0;
    r = converge(opt);
    CHECK(r.code == 1);
    CHECK(r.err.find("tmax must be positive") != std::string::npos);

    opt = {};
    opt.problem = "pendulum";
    opt.tol = 1e-300;
    opt.max_iter = 3;
    r = converge(opt);
    CHECK(r.code == 2);
    CHECK(r.err.find("error:") == 0);
}

TEST_CASE("verify prints one line per identity and exits cleanly")
{
    VerifyOptions opt;
    opt.instances = 3;
    std::stringstream out, err;
    const int code = run_verify(opt, out, err);
    CHECK(code == 0);
    CHECK(err.str().empty());

    const std::string text = out.str();
    CHECK(text.find("seed 123456789, 3 instances per identity") != std::string::npos);
    CHECK(text.find("FAIL") == std::string::npos);
    int pass_lines = 0;
    std::stringstream lines(text);
    for (std::string line; std::getline(lines, line);)
        if (line.rfind("PASS", 0) == 0)
            ++pass_lines;
    CHECK(pass_lines == 18);

    opt.instances = 0;
    std::stringstream out2, err2;
    CHECK(run_verify(opt, out2, err2) == 1);
    CHECK(err2.str().find("instances must be at least 1") != std::string::npos);
}
