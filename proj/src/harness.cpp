#include "mvi/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "mvi/hamiltonian.hpp"
#include "mvi/identities.hpp"
#include "mvi/lagrangian.hpp"
#include "mvi/problems.hpp"
#include "mvi/trajectory.hpp"
#include "mvi/types.hpp"

namespace mvi::harness {

namespace {

Vec to_vec(const std::vector<double>& x)
{
    Vec v(static_cast<int>(x.size()));
    for (int i = 0; i < v.size(); ++i) v(i) = x[static_cast<std::size_t>(i)];
    return v;
}

bool known_scheme(const std::string& scheme)
{
    return scheme == "midpoint_lagrangian" || scheme == "midpoint_hamiltonian" ||
           scheme == "order1";
}

// Shared option validation; returns a usage message or the empty string.
std::string check_common(const std::string& problem_name, const std::string& scheme,
                         const std::vector<double>& q0, const std::vector<double>& p0, double h,
                         double tol, int max_iter)
{
    if (!known_scheme(scheme))
        return "unknown scheme '" + scheme +
               "' (choose midpoint_lagrangian, midpoint_hamiltonian or order1)";
    try {
        const MechanicalProblem& problem = find_problem(problem_name);
        if (problem.dim > 0 && static_cast<int>(q0.size()) != problem.dim)
            return "problem '" + problem_name + "' needs " + std::to_string(problem.dim) +
                   " position components, got " + std::to_string(q0.size());
    } catch (const std::exception& e) {
        return e.what();
    }
    if (q0.empty()) return "q0 must have at least one component";
    if (q0.size() != p0.size())
        return "q0 and p0 must have matching sizes (got " + std::to_string(q0.size()) + " and " +
               std::to_string(p0.size()) + ")";
    if (!(h > 0) || !std::isfinite(h)) return "h must be positive";
    if (!(tol > 0)) return "tol must be positive";
    if (max_iter < 1) return "max-iter must be at least 1";
    return {};
}

struct Run {
    TrajectoryRecord record;
    bool failed = false;
    std::string message;
};

Run run_scheme(const std::string& scheme, const LagrangianModel& L, const Vec& q0, const Vec& p0,
               const std::vector<double>& q1_opt, const TimeGrid& grid, const SolverConfig& cfg,
               std::string* q1_origin = nullptr)
{
    Run run;
    try {
        if (scheme == "midpoint_hamiltonian") {
            run.record = integrate_hamiltonian(L, PhasePoint{q0, p0}, grid, cfg);
        } else if (scheme == "order1") {
            run.record = integrate_order1_hamiltonian(L, PhasePoint{q0, p0}, grid, cfg);
        } else {
            Vec q1;
            if (!q1_opt.empty()) {
                q1 = to_vec(q1_opt);
                if (q1_origin) *q1_origin = "given";
            } else {
                try {
                    q1 = step_midpoint_hamiltonian(L, PhasePoint{q0, p0}, grid.step(), cfg).q;
                } catch (const ConvergenceError& e) {
                    run.record.scheme = "midpoint_lagrangian";
                    run.record.a = grid.a();
                    run.record.b = grid.b();
                    run.record.n = grid.n_intervals();
                    run.record.dim = L.dim;
                    run.record.failure_note = std::string("seed step: ") + e.what();
                    run.failed = true;
                    run.message = run.record.failure_note;
                    return run;
                }
                if (q1_origin) *q1_origin = "phase_step";
            }
            run.record = integrate_lagrangian(L, q0, q1, grid, cfg);
        }
    } catch (const IntegrationError& e) {
        run.record = e.partial;
        run.failed = true;
        run.message = e.what();
    }
    return run;
}

double final_error(const TrajectoryRecord& record, const Vec& q_ref, const Vec& p_ref)
{
    const TrajectoryRow& last = record.rows.back();
    return std::max(inf_norm(Vec(last.q - q_ref)), inf_norm(Vec(last.p - p_ref)));
}

std::string fmt(const char* spec, double x)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, x);
    return buf;
}

} // namespace

ConvergeReport converge_study(const ConvergeOptions& opt)
{
    const MechanicalProblem& problem = find_problem(opt.problem);
    int dim = static_cast<int>(opt.q0.size());
    LagrangianModel L = make_mechanical(problem, dim);
    Vec q0 = to_vec(opt.q0);
    Vec p0 = to_vec(opt.p0);

    SolverConfig cfg;
    cfg.tol = opt.tol;
    cfg.max_iter = opt.max_iter;

    std::vector<int> ns;
    for (double h : opt.hs) {
        if (!(h > 0) || !(opt.tmax > 0)) throw std::invalid_argument("h and tmax must be positive");
        ns.push_back(std::max(1, static_cast<int>(std::llround(opt.tmax / h))));
    }

    Vec q_ref, p_ref;
    if (problem.exact) {
        PhasePoint x = problem.exact(opt.tmax, PhasePoint{q0, p0});
        q_ref = x.q;
        p_ref = x.p;
    } else {
        int n_ref = 64 * *std::max_element(ns.begin(), ns.end());
        TimeGrid fine(0.0, opt.tmax, n_ref);
        SolverConfig ref_cfg = cfg;
        // The phase-space residual carries a (p1-p0)/h term, so its noise
        // floor grows as the reference step shrinks; stay well above it.
        ref_cfg.tol = std::max(std::min(cfg.tol, 1e-13), 10 * 2.220446049250313e-16 / fine.step());
        TrajectoryRecord ref = integrate_hamiltonian(L, PhasePoint{q0, p0}, fine, ref_cfg);
        q_ref = ref.rows.back().q;
        p_ref = ref.rows.back().p;
    }

    ConvergeReport report;
    for (std::size_t k = 0; k < opt.hs.size(); ++k) {
        int n = ns[k];
        TimeGrid grid(0.0, opt.tmax, n);
        Run run = run_scheme(opt.scheme, L, q0, p0, {}, grid, cfg);
        if (run.failed) throw std::runtime_error("step solve failed at h=" + fmt("%g", grid.step()) + ": " + run.message);
        report.points.push_back({grid.step(), n, final_error(run.record, q_ref, p_ref)});
    }

    report.exact = std::all_of(report.points.begin(), report.points.end(),
                               [](const ConvergencePoint& p) { return p.error < 1e-12; });
    if (!report.exact) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        auto n = static_cast<double>(report.points.size());
        for (const ConvergencePoint& p : report.points) {
            double x = std::log(p.h);
            double y = std::log(std::max(p.error, 1e-300));
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
        }
        double denom = n * sxx - sx * sx;
        report.slope = denom != 0 ? (n * sxy - sx * sy) / denom : 0;
    }
    return report;
}

int run_simulate(const SimulateOptions& opt, std::ostream& out, std::ostream& err)
{
    std::string usage = check_common(opt.problem, opt.scheme, opt.q0, opt.p0, opt.h, opt.tol,
                                     opt.max_iter);
    if (usage.empty() && !opt.q1.empty() && opt.q1.size() != opt.q0.size())
        usage = "q1 must match the size of q0";
    if (usage.empty() && !opt.q1.empty() && opt.scheme != "midpoint_lagrangian")
        usage = "q1 only applies to the midpoint_lagrangian scheme";
    int n = opt.n;
    if (usage.empty() && n == 0) {
        if (!(opt.tmax > 0)) usage = "tmax must be positive when n is not given";
        else n = std::max(1, static_cast<int>(std::llround(opt.tmax / opt.h)));
    }
    if (usage.empty() && n < 1) usage = "n must be at least 1";
    if (!usage.empty()) {
        err << "error: " << usage << "\n";
        return 1;
    }

    const MechanicalProblem& problem = find_problem(opt.problem);
    int dim = static_cast<int>(opt.q0.size());
    LagrangianModel L = make_mechanical(problem, dim);
    SolverConfig cfg;
    cfg.tol = opt.tol;
    cfg.max_iter = opt.max_iter;
    TimeGrid grid(0.0, n * opt.h, n);

    std::string q1_origin;
    Run run = run_scheme(opt.scheme, L, to_vec(opt.q0), to_vec(opt.p0), opt.q1, grid, cfg,
                         &q1_origin);
    run.record.problem = opt.problem;
    run.record.notes.emplace_back("seed", std::to_string(opt.seed));
    if (!q1_origin.empty()) run.record.notes.emplace_back("q1_origin", q1_origin);

    if (opt.out.empty()) {
        write_csv(run.record, out);
    } else {
        try {
            write_csv_file(run.record, opt.out);
        } catch (const std::exception& e) {
            err << "error: " << e.what() << "\n";
            return 1;
        }
    }

    if (run.failed) {
        err << "error: " << run.message << " (wrote " << run.record.rows.size() << " of " << n + 1
            << " rows)\n";
        return 2;
    }
    err << "wrote " << run.record.rows.size() << " rows (problem " << opt.problem << ", scheme "
        << opt.scheme << ", h " << fmt("%g", grid.step()) << ", seed " << opt.seed << ")\n";
    return 0;
}

int run_converge(const ConvergeOptions& opt, std::ostream& out, std::ostream& err)
{
    std::string usage = check_common(opt.problem, opt.scheme, opt.q0, opt.p0,
                                     opt.hs.empty() ? 0.0 : opt.hs.front(), opt.tol, opt.max_iter);
    if (usage.empty() && opt.hs.size() < 2) usage = "need at least two step sizes";
    if (usage.empty())
        for (double h : opt.hs)
            if (!(h > 0)) usage = "every h must be positive";
    if (usage.empty() && !(opt.tmax > 0)) usage = "tmax must be positive";
    if (!usage.empty()) {
        err << "error: " << usage << "\n";
        return 1;
    }

    ConvergeReport report;
    try {
        report = converge_study(opt);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    out << "problem " << opt.problem << ", scheme " << opt.scheme << ", tmax "
        << fmt("%g", opt.tmax) << ", seed " << opt.seed << "\n";
    out << "         h          n         error      order\n";
    std::ostringstream csv;
    csv << "h,n,error,order\n";
    for (std::size_t k = 0; k < report.points.size(); ++k) {
        const ConvergencePoint& p = report.points[k];
        std::string order = "-";
        if (k > 0 && p.error > 0 && report.points[k - 1].error > 0)
            order = fmt("%.3f", std::log(report.points[k - 1].error / p.error) /
                                    std::log(report.points[k - 1].h / p.h));
        out << fmt("%10.5g", p.h) << " " << fmt("%10.0f", static_cast<double>(p.n)) << " "
            << fmt("%13.4e", p.error) << " " << (k > 0 ? order : std::string("-")) << "\n";
        csv << format_g17(p.h) << "," << p.n << "," << format_g17(p.error) << "," << order << "\n";
    }
    if (report.exact)
        out << "every error below 1e-12: exact up to solver precision\n";
    else
        out << "fitted slope " << fmt("%.4f", report.slope) << "\n";

    if (!opt.out.empty()) {
        std::ofstream f(opt.out);
        if (!f) {
            err << "error: cannot write " << opt.out << "\n";
            return 1;
        }
        f << csv.str();
    }
    return 0;
}

int run_verify(const VerifyOptions& opt, std::ostream& out, std::ostream& err)
{
    identities::SuiteConfig cfg;
    cfg.seed = opt.seed;
    cfg.instances = opt.instances;
    if (opt.instances < 1) {
        err << "error: instances must be at least 1\n";
        return 1;
    }

    out << "seed " << cfg.seed << ", " << cfg.instances << " instances per identity, dims {1,2,3}"
        << ", steps " << cfg.n_min << ".." << cfg.n_max << "\n";
    bool all_pass = true;
    for (const identities::CheckResult& r : identities::run_all(cfg)) {
        out << (r.pass ? "PASS" : "FAIL") << "  " << r.name;
        for (std::size_t pad = r.name.size(); pad < 30; ++pad) out << ' ';
        out << " max rel " << fmt("%9.3e", r.max_residual) << "  tol " << fmt("%g", r.tolerance)
            << "  (" << r.instances << " instances)";
        if (!r.note.empty()) out << "  " << r.note;
        out << "\n";
        all_pass = all_pass && r.pass;
    }
    if (!all_pass) {
        err << "error: verification found failing identities\n";
        return 2;
    }
    return 0;
}

} // namespace mvi::harness
