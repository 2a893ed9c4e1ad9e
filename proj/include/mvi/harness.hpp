#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace mvi::harness {

// Options shared by the simulate subcommand and the tests that drive it.
// dim is taken from q0; n == 0 derives the step count from tmax.
struct SimulateOptions {
    std::string problem = "harmonic";
    std::string scheme = "midpoint_hamiltonian";
    std::vector<double> q0 = {1.0};
    std::vector<double> p0 = {0.0};
    std::vector<double> q1;  // optional explicit seed for the position scheme
    double h = 0.01;
    int n = 0;
    double tmax = 1.0;
    double tol = 1e-12;
    int max_iter = 50;
    std::string out;  // CSV path; empty writes the CSV to the out stream
    std::uint64_t seed = 0;
};

struct ConvergeOptions {
    std::string problem = "harmonic";
    std::string scheme = "midpoint_hamiltonian";
    std::vector<double> q0 = {1.0};
    std::vector<double> p0 = {0.0};
    std::vector<double> hs = {0.1, 0.05, 0.025, 0.0125};
    double tmax = 1.0;
    double tol = 1e-12;
    int max_iter = 50;
    std::string out;  // optional CSV copy of the table
    std::uint64_t seed = 0;
};

struct VerifyOptions {
    std::uint64_t seed = 123456789;
    int instances = 100;
};

struct ConvergencePoint {
    double h = 0;
    int n = 0;
    double error = 0;
};

// One error sample per step size, the fitted log-log slope, and whether every
// error sat at solver precision (slope meaningless then). Final-time errors
// are measured against the closed-form flow when the problem has one,
// otherwise against a fine mid-point phase-space reference.
struct ConvergeReport {
    std::vector<ConvergencePoint> points;
    double slope = 0;
    bool exact = false;
};

ConvergeReport converge_study(const ConvergeOptions& opt);

// Exit codes: 0 on success, 1 on unusable options, 2 when a step solve fails
// (simulate still writes the rows it has, with the failure annotated).
int run_simulate(const SimulateOptions& opt, std::ostream& out, std::ostream& err);
int run_converge(const ConvergeOptions& opt, std::ostream& out, std::ostream& err);
int run_verify(const VerifyOptions& opt, std::ostream& out, std::ostream& err);

} // namespace mvi::harness
