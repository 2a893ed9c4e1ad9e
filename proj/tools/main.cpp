#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "mvi/harness.hpp"

int main(int argc, char** argv)
{
    CLI::App app{"mid-point variational integrators for mechanical systems"};
    app.require_subcommand(1);
    app.set_help_flag("--help", "print help and exit");
    app.set_config("--config", "",
                   "ini file with a [simulate], [converge] or [verify] section (flags win)");

    mvi::harness::SimulateOptions sopt;
    CLI::App* sim = app.add_subcommand("simulate", "integrate one trajectory and emit CSV");
    sim->set_help_flag("--help", "print help and exit");
    sim->fallthrough();
    sim->add_option("--problem", sopt.problem, "free_particle, harmonic or pendulum")
        ->capture_default_str();
    sim->add_option("--scheme", sopt.scheme,
                    "midpoint_lagrangian, midpoint_hamiltonian or order1")
        ->capture_default_str();
    sim->add_option("--h", sopt.h, "step size")->capture_default_str();
    sim->add_option("--n", sopt.n, "step count; 0 derives it from tmax")->capture_default_str();
    sim->add_option("--tmax", sopt.tmax, "final time when n is 0")->capture_default_str();
    sim->add_option("--q0", sopt.q0, "initial position components")
        ->delimiter(',')
        ->capture_default_str();
    sim->add_option("--p0", sopt.p0, "initial momentum components")
        ->delimiter(',')
        ->capture_default_str();
    sim->add_option("--q1", sopt.q1, "explicit second position for midpoint_lagrangian")
        ->delimiter(',');
    sim->add_option("--tol", sopt.tol, "step solver tolerance")->capture_default_str();
    sim->add_option("--max-iter", sopt.max_iter, "step solver iteration cap")
        ->capture_default_str();
    sim->add_option("--out", sopt.out, "CSV path (default: stdout)");
    sim->add_option("--seed", sopt.seed, "seed recorded in the CSV metadata")
        ->capture_default_str();

    mvi::harness::ConvergeOptions copt;
    CLI::App* con = app.add_subcommand("converge", "error against a reference over step sizes");
    con->set_help_flag("--help", "print help and exit");
    con->fallthrough();
    con->add_option("--problem", copt.problem, "free_particle, harmonic or pendulum")
        ->capture_default_str();
    con->add_option("--scheme", copt.scheme,
                    "midpoint_lagrangian, midpoint_hamiltonian or order1")
        ->capture_default_str();
    con->add_option("--h", copt.hs, "step sizes to sample")->delimiter(',')->capture_default_str();
    con->add_option("--tmax", copt.tmax, "final time")->capture_default_str();
    con->add_option("--q0", copt.q0, "initial position components")
        ->delimiter(',')
        ->capture_default_str();
    con->add_option("--p0", copt.p0, "initial momentum components")
        ->delimiter(',')
        ->capture_default_str();
    con->add_option("--tol", copt.tol, "step solver tolerance")->capture_default_str();
    con->add_option("--max-iter", copt.max_iter, "step solver iteration cap")
        ->capture_default_str();
    con->add_option("--out", copt.out, "optional CSV copy of the table");
    con->add_option("--seed", copt.seed, "seed recorded in the report")->capture_default_str();

    mvi::harness::VerifyOptions vopt;
    CLI::App* ver = app.add_subcommand("verify", "run the randomized identity suites");
    ver->set_help_flag("--help", "print help and exit");
    ver->fallthrough();
    ver->add_option("--seed", vopt.seed, "seed for every suite")->capture_default_str();
    ver->add_option("--instances", vopt.instances, "random instances per identity")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (sim->parsed()) return mvi::harness::run_simulate(sopt, std::cout, std::cerr);
        if (con->parsed()) return mvi::harness::run_converge(copt, std::cout, std::cerr);
        if (ver->parsed()) return mvi::harness::run_verify(vopt, std::cout, std::cerr);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
