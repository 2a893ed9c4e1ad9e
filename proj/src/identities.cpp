#include "mvi/identities.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "mvi/calculus.hpp"
#include "mvi/hamiltonian.hpp"
#include "mvi/lagrangian.hpp"
#include "mvi/problems.hpp"
#include "mvi/solver.hpp"

namespace mvi::identities {

namespace {

double urand(Rng& rng, double lo, double hi)
{
    std::uniform_real_distribution<double> u(lo, hi);
    return u(rng);
}

int irand(Rng& rng, int lo, int hi)
{
    std::uniform_int_distribution<int> u(lo, hi);
    return u(rng);
}

Vec vrand(Rng& rng, int dim, double lo = -1.0, double hi = 1.0)
{
    Vec v(dim);
    for (int j = 0; j < dim; ++j) v(j) = urand(rng, lo, hi);
    return v;
}

int pick_dim(Rng& rng, const SuiteConfig& cfg)
{
    if (cfg.dims.empty()) return 1;
    return cfg.dims[static_cast<std::size_t>(irand(rng, 0, static_cast<int>(cfg.dims.size()) - 1))];
}

int pick_n(Rng& rng, const SuiteConfig& cfg, int at_least = 2)
{
    int lo = std::max(cfg.n_min, at_least);
    int hi = std::max(cfg.n_max, lo);
    return irand(rng, lo, hi);
}

double rel(double diff, double scale)
{
    return diff / std::max(scale, 1e-300);
}

CheckResult finish(std::string name, int instances, double max_residual, double tolerance,
                   std::string note = {})
{
    CheckResult r;
    r.name = std::move(name);
    r.instances = instances;
    r.max_residual = max_residual;
    r.tolerance = tolerance;
    r.pass = max_residual <= tolerance;
    r.note = std::move(note);
    return r;
}

std::string fmt(double x)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

// Small zoo of Lagrangians with analytic gradients, beyond |v|^2/2 - V(q):
// a mass-2 kinetic term and a cosh kinetic term whose Legendre inverse is
// left to the Newton path.
LagrangianModel mass2_model(int dim)
{
    LagrangianModel L;
    L.dim = dim;
    L.value = [](const Vec& q, const Vec& v) { return v.squaredNorm() - 0.5 * q.squaredNorm(); };
    L.grad_q = [](const Vec& q, const Vec&) { return Vec(-q); };
    L.grad_v = [](const Vec&, const Vec& v) { return Vec(2.0 * v); };
    L.legendre_inverse = [](const Vec& p, const Vec&) { return Vec(0.5 * p); };
    return L;
}

LagrangianModel cosh_model()
{
    LagrangianModel L;
    L.dim = 1;
    L.value = [](const Vec& q, const Vec& v) { return std::cosh(v(0)) - 0.25 * std::pow(q(0), 4); };
    L.grad_q = [](const Vec& q, const Vec&) {
        Vec g(1);
        g(0) = -std::pow(q(0), 3);
        return g;
    };
    L.grad_v = [](const Vec&, const Vec& v) {
        Vec g(1);
        g(0) = std::sinh(v(0));
        return g;
    };
    return L;
}

LagrangianModel random_mechanical(Rng& rng, const SuiteConfig& cfg, std::string* name = nullptr)
{
    static const char* names[] = {"free_particle", "harmonic", "pendulum"};
    const MechanicalProblem& problem = find_problem(names[irand(rng, 0, 2)]);
    int dim = problem.dim > 0 ? problem.dim : pick_dim(rng, cfg);
    if (name) *name = problem.name;
    return make_mechanical(problem, dim);
}

// Dot product of two R^d samples per half node, as a scalar function on T_half.
GridFunction dot_on_half(const GridFunction& f, const GridFunction& circ_odd)
{
    GridFunction s(f.set(), 1);
    for (int i = 0; i < f.size(); ++i)
        s.value(i)(0) = f.value(i).dot(circ_odd.value(2 * i + 1));
    return s;
}

} // namespace

TimeGrid random_grid(Rng& rng, int n)
{
    double a = urand(rng, -2.0, 2.0);
    double len = urand(rng, 0.5, 3.0);
    return TimeGrid(a, a + len, n);
}

GridFunction random_function(Rng& rng, const NodeSet& set, int dim)
{
    std::vector<Vec> values;
    values.reserve(static_cast<std::size_t>(set.size()));
    for (int i = 0; i < set.size(); ++i) values.push_back(vrand(rng, dim));
    return GridFunction(set, std::move(values));
}

CheckResult fundamental_theorem(const SuiteConfig& cfg)
{
    Rng rng(cfg.seed + 101);
    double worst = 0;
    for (int k = 0; k < cfg.instances; ++k) {
        int d = pick_dim(rng, cfg);
        int n = pick_n(rng, cfg);
        TimeGrid grid = random_grid(rng, n);
        GridFunction f = random_function(rng, NodeSet(SetKind::T, grid), d);
        GridFunction df = delta_plus(f);

        Vec total = integral_lambda(df, 0.0, 0, n);
        Vec gap = f.value(n) - f.value(0);
        double scale = std::max({max_abs(f), inf_norm(total), 1e-30});
        worst = std::max(worst, rel(inf_norm(Vec(total - gap)), scale));

        GridFunction running(NodeSet(SetKind::T, grid), d);
        for (int i = 0; i <= n; ++i) running.value(i) = integral_lambda(df, 0.0, 0, i);
        GridFunction back = delta_plus(running);
        worst = std::max(worst, rel(max_abs_diff(back, df), std::max(max_abs(df), 1e-30)));
    }
    return finish("fundamental_theorem", cfg.instances, worst, 1e-12);
}

CheckResult extension_derivative(const SuiteConfig& cfg)
{
    Rng rng(cfg.seed + 202);
    double worst = 0;
    for (int k = 0; k < cfg.instances; ++k) {
        int d = pick_dim(rng, cfg);
        int n = pick_n(rng, cfg, 1);
        TimeGrid grid = random_grid(rng, n);
        GridFunction f = random_function(rng, NodeSet(SetKind::T, grid), d);
        GridFunction df = delta_plus(f);
        GridFunction dcirc = delta_plus(extend(f));
        double scale = std::max(max_abs(df), 1e-30);
        for (int i = 0; i < n; ++i) {
            worst = std::max(worst, rel(inf_norm(Vec(dcirc.value(2 * i + 1) - df.value(i))), scale));
            worst = std::max(worst, rel(inf_norm(Vec(dcirc.value(2 * i) - df.value(i))), scale));
        }
    }
    return finish("extension_derivative", cfg.instances, worst, 1e-14,
                  "doubled-grid forward difference vs base-grid forward difference");
}

CheckResult integration_by_parts(const SuiteConfig& cfg)
{
    Rng rng(cfg.seed + 303);
    double worst = 0;
    for (int k = 0; k < cfg.instances; ++k) {
        int d = pick_dim(rng, cfg);
        int n = pick_n(rng, cfg);
        TimeGrid grid = random_grid(rng, n);
        double h = grid.step();
        GridFunction f = random_function(rng, NodeSet(SetKind::THalf, grid), d);
        GridFunction v = random_function(rng, NodeSet(SetKind::T, grid), d);

        GridFunction dv = delta_plus(extend(v));
        double lhs = integral_midpoint(dot_on_half(f, dv), 0, n)(0);

        GridFunction df = delta_minus(f);
        double interior = 0;
        for (int i = 1; i < n; ++i) interior += h * df.value(i - 1).dot(v.value(i));
        double lead = f.value(n - 1).dot(v.value(n));
        double trail = f.value(0).dot(v.value(0));
        double rhs = -interior + lead - trail;

        double scale = std::max({std::abs(lhs), std::abs(interior), std::abs(lead),
                                 std::abs(trail), 1e-30});
        worst = std::max(worst, rel(std::abs(lhs - rhs), scale));
    }
    return finish("integration_by_parts", cfg.instances, worst, 1e-12);
}

CheckResult half_node_pairing(const SuiteConfig& cfg)
{
    Rng rng(cfg.seed + 404);
    double worst = 0;
    for (int k = 0; k < cfg.instances; ++k) {
        int d = pick_dim(rng, cfg);
        int n = pick_n(rng, cfg);
        TimeGrid grid = random_grid(rng, n);
        double h = grid.step();
        GridFunction f = random_function(rng, NodeSet(SetKind::THalf, grid), d);
        GridFunction v = random_function(rng, NodeSet(SetKind::T, grid), d);
        v.value(0).setZero();
        v.value(n).setZero();

        GridFunction vext = extend(v);
        double lhs = integral_midpoint(dot_on_half(f, vext), 0, n)(0);

        GridFunction fa = avg_half_minus(f);
        double rhs = 0;
        for (int i = 1; i < n; ++i) rhs += h * fa.value(i - 1).dot(v.value(i));

        double scale = std::max({std::abs(lhs), std::abs(rhs), max_abs(f) * max_abs(v) * (grid.b() - grid.a()), 1e-30});
        worst = std::max(worst, rel(std::abs(lhs - rhs), scale));
    }
    return finish("half_node_pairing", cfg.instances, worst, 1e-12,
                  "directions vanishing at both endpoints");
}

CheckResult pairing_boundary_coefficient(const SuiteConfig& cfg)
{
    Rng rng(cfg.seed + 505);
    double worst_half = 0;
    double worst_full = 0;
    for (int k = 0; k < cfg.instances; ++k) {
        int d = pick_dim(rng, cfg);
        int n = pick_n(rng, cfg);
        TimeGrid grid = random_grid(rng, n);
        double h = grid.step();
        GridFunction f = random_function(rng, NodeSet(SetKind::THalf, grid), d);
        GridFunction v = random_function(rng, NodeSet(SetKind::T, grid), d);
        for (int j = 0; j < d; ++j) {
            v.value(0)(j) = (urand(rng, 0, 1) < 0.5 ? -1 : 1) * urand(rng, 0.5, 1.5);
            v.value(n)(j) = (urand(rng, 0, 1) < 0.5 ? -1 : 1) * urand(rng, 0.5, 1.5);
        }

        GridFunction vext = extend(v);
        double lhs = integral_midpoint(dot_on_half(f, vext), 0, n)(0);
        GridFunction fa = avg_half_minus(f);
        double interior = 0;
        for (int i = 1; i < n; ++i) interior += h * fa.value(i - 1).dot(v.value(i));

        double base = f.value(n - 1).dot(v.value(n)) + f.value(0).dot(v.value(0));
        double gap = lhs - interior;
        double scale = std::max({std::abs(lhs), std::abs(interior), std::abs(h * base), 1e-30});
        worst_half = std::max(worst_half, rel(std::abs(gap - 0.5 * h * base), scale));
        worst_full = std::max(worst_full, rel(std::abs(gap - h * base), scale));
    }
    bool separated = worst_full > 1e-6;
    CheckResult r = finish("pairing_boundary_coefficient", cfg.instances, worst_half, 1e-12,
                           "boundary weight h/2 closes the pairing (max rel " + fmt(worst_half) +
                               "); weight h leaves max rel " + fmt(worst_full));
    r.pass = r.pass && separated;
    return r;
}

CheckResult dubois_raymond(const SuiteConfig& cfg)
{
    Rng rng(cfg.seed + 606);
    double worst = 0;
    bool detected_all = true;
    bool blind_ok = true;
    for (int k = 0; k < cfg.instances; ++k) {
        int d = pick_dim(rng, cfg);
        int n = pick_n(rng, cfg);
        TimeGrid grid = random_grid(rng, n);
        double h = grid.step();
        GridFunction g = random_function(rng, NodeSet(SetKind::T, grid), d);
        int i0 = irand(rng, 1, n - 1);
        int j0 = irand(rng, 0, d - 1);
        g.value(i0)(j0) = (urand(rng, 0, 1) < 0.5 ? -1 : 1) * urand(rng, 0.5, 1.5);

        double gmax = 0;
        for (int i = 1; i < n; ++i) gmax = std::max(gmax, inf_norm(g.value(i)));

        // Pair against every canonical interior variation through the
        // left-sample quadrature; each pairing must read off h g_j(t_i).
        double pmax = 0;
        for (int i = 1; i < n; ++i) {
            for (int j = 0; j < d; ++j) {
                GridFunction v(NodeSet(SetKind::T, grid), d);
                v.value(i)(j) = 1.0;
                GridFunction s(NodeSet(SetKind::TPlus, grid), 1);
                for (int m = 0; m < n; ++m) s.value(m)(0) = g.value(m).dot(v.value(m));
                double pairing = integral_lambda(s, 0.0, 0, n)(0);
                worst = std::max(worst,
                                 rel(std::abs(pairing - h * g.value(i)(j)), h * std::max(gmax, 1e-30)));
                pmax = std::max(pmax, std::abs(pairing));
            }
        }
        if (pmax < 0.25 * h * gmax) detected_all = false;

        // Values at the two endpoints never reach the pairing.
        GridFunction ge(NodeSet(SetKind::T, grid), d);
        ge.value(0) = vrand(rng, d);
        ge.value(n) = vrand(rng, d);
        for (int i = 1; i < n; ++i) {
            for (int j = 0; j < d; ++j) {
                GridFunction v(NodeSet(SetKind::T, grid), d);
                v.value(i)(j) = 1.0;
                GridFunction s(NodeSet(SetKind::TPlus, grid), 1);
                for (int m = 0; m < n; ++m) s.value(m)(0) = ge.value(m).dot(v.value(m));
                if (integral_lambda(s, 0.0, 0, n)(0) != 0.0) blind_ok = false;
            }
        }
    }
    CheckResult r = finish("dubois_raymond", cfg.instances, worst, 1e-14,
                           "nonzero interior values always produce a nonzero pairing");
    r.pass = r.pass && detected_all && blind_ok;
    if (!detected_all) r.note = "an interior value went undetected";
    if (!blind_ok) r.note = "an endpoint value leaked into the pairing";
    return r;
}

CheckResult frechet_consistency(const SuiteConfig& cfg)
{
    Rng rng(cfg.seed + 707);
    double worst = 0;
    int total = 0;
    for (const std::string& name : problem_names()) {
        const MechanicalProblem& problem = find_problem(name);
        for (int k = 0; k < cfg.instances; ++k) {
            int d = problem.dim > 0 ? problem.dim : pick_dim(rng, cfg);
            LagrangianModel L = make_mechanical(problem, d);
            int n = pick_n(rng, cfg);
            TimeGrid grid = random_grid(rng, n);
            GridFunction q = random_function(rng, NodeSet(SetKind::T, grid), d);
            GridFunction v = random_function(rng, NodeSet(SetKind::T, grid), d);
            v.value(0).setZero();
            v.value(n).setZero();

            double derivative = frechet_midpoint(L, q, v);

            double eps = 1e-6;
            GridFunction qp = q;
            GridFunction qm = q;
            for (int i = 0; i <= n; ++i) {
                qp.value(i) += eps * v.value(i);
                qm.value(i) -= eps * v.value(i);
            }
            double fd = (action_midpoint(L, qp) - action_midpoint(L, qm)) / (2 * eps);

            double scale = std::max({std::abs(derivative), std::abs(fd), 1e-30});
            worst = std::max(worst, rel(std::abs(derivative - fd), scale));
            ++total;
        }
    }
    return finish("frechet_consistency", total, worst, 1e-6,
                  "residual pairing vs central difference of the action");
}

CheckResult wm_action_equality(const SuiteConfig& cfg)
{
    Rng rng(cfg.seed + 808);
    double worst = 0;
    for (int k = 0; k < cfg.instances; ++k) {
        LagrangianModel L;
        int which = irand(rng, 0, 2);
        if (which == 0) L = random_mechanical(rng, cfg);
        else if (which == 1) L = mass2_model(pick_dim(rng, cfg));
        else L = cosh_model();
        int n = pick_n(rng, cfg, 1);
        TimeGrid grid = random_grid(rng, n);
        GridFunction q = random_function(rng, NodeSet(SetKind::T, grid), L.dim);

        double summed = 0;
        double magnitude = 0;
        for (int i = 0; i < n; ++i) {
            double term = wm_lagrangian(L, q.value(i), q.value(i + 1), grid.step());
            summed += term;
            magnitude += std::abs(term);
        }
        double action = action_midpoint(L, q);
        worst = std::max(worst, rel(std::abs(summed - action), std::max(magnitude, 1e-30)));
    }
    return finish("wm_action_equality", cfg.instances, worst, 1e-14);
}

CheckResult wm_residual_scaling(const SuiteConfig& cfg)
{
    Rng rng(cfg.seed + 909);
    double worst = 0;
    for (int k = 0; k < cfg.instances; ++k) {
        LagrangianModel L;
        int which = irand(rng, 0, 2);
        if (which == 0) L = random_mechanical(rng, cfg);
        else if (which == 1) L = mass2_model(pick_dim(rng, cfg));
        else L = cosh_model();
        double h = urand(rng, 0.05, 0.5);
        TimeGrid grid(0.0, 2 * h, 2);
        GridFunction q = random_function(rng, NodeSet(SetKind::T, grid), L.dim);

        Vec stationarity = wm_el_residual(L, q.value(0), q.value(1), q.value(2), h);
        GridFunction r = el_residual_midpoint(L, q);
        double scale = std::max({inf_norm(stationarity), h * inf_norm(r.value(0)), 1e-30});
        worst = std::max(worst, rel(inf_norm(Vec(stationarity + h * r.value(0))), scale));
    }
    return finish("wm_residual_scaling", cfg.instances, worst, 1e-12,
                  "two-point stationarity equals -h times the scheme residual");
}

CheckResult mechanical_form_equality(const SuiteConfig& cfg)
{
    Rng rng(cfg.seed + 1010);
    double worst = 0;
    for (int k = 0; k < cfg.instances; ++k) {
        std::string name;
        LagrangianModel L = random_mechanical(rng, cfg, &name);
        const MechanicalProblem& problem = find_problem(name);
        double h = urand(rng, 0.05, 0.5);
        TimeGrid grid(0.0, 2 * h, 2);
        GridFunction q = random_function(rng, NodeSet(SetKind::T, grid), L.dim);

        GridFunction r = el_residual_midpoint(L, q);

        Vec second = (q.value(2) - 2.0 * q.value(1) + q.value(0)) / (h * h);
        Vec mid_minus = 0.5 * (q.value(0) + q.value(1));
        Vec mid_plus = 0.5 * (q.value(1) + q.value(2));
        Vec forcing = Vec::Zero(L.dim);
        if (problem.potential_grad)
            forcing = 0.5 * (problem.potential_grad(mid_plus) + problem.potential_grad(mid_minus));
        Vec mech = second + forcing;

        double scale = std::max({inf_norm(r.value(0)), inf_norm(second), inf_norm(mech), 1e-30});
        worst = std::max(worst, rel(inf_norm(Vec(r.value(0) - mech)), scale));
    }
    return finish("mechanical_form_equality", cfg.instances, worst, 1e-12,
                  "second difference over h^2 plus averaged potential gradient");
}

CheckResult scheme_equivalence(const SuiteConfig& cfg)
{
    Rng rng(cfg.seed + 1111);
    // Both steps solve difference-quotient residuals whose noise floor sits
    // near eps |p| / h; these tolerances stay a decade above it.
    SolverConfig ham_cfg;
    ham_cfg.tol = 1e-13;
    SolverConfig lag_cfg;
    lag_cfg.tol = 1e-13;
    const MechanicalProblem& harmonic = find_problem("harmonic");
    LagrangianModel L = make_mechanical(harmonic, 1);
    TimeGrid grid(0.0, 5.0, 100);

    double worst = 0;
    int runs = std::max(1, std::min(cfg.instances, 4));
    for (int k = 0; k < runs; ++k) {
        Vec q0(1), p0(1);
        if (k == 0) {
            q0(0) = 1.0;
            p0(0) = 0.0;
        } else {
            q0 = vrand(rng, 1);
            p0 = vrand(rng, 1);
        }
        TrajectoryRecord ham = integrate_hamiltonian(L, PhasePoint{q0, p0}, grid, ham_cfg);
        TrajectoryRecord lag = integrate_lagrangian(L, q0, ham.rows[1].q, grid, lag_cfg);
        for (int i = 0; i <= grid.n_intervals(); ++i) {
            double dq = inf_norm(Vec(ham.rows[static_cast<std::size_t>(i)].q -
                                     lag.rows[static_cast<std::size_t>(i)].q));
            double dp = inf_norm(Vec(ham.rows[static_cast<std::size_t>(i)].p -
                                     lag.rows[static_cast<std::size_t>(i)].p));
            worst = std::max(worst, std::max(dq, dp));
        }
    }
    return finish("scheme_equivalence", runs, worst, 1e-10,
                  "position scheme seeded from one phase-space step, h=0.05, 100 steps");
}

CheckResult momentum_constraint(const SuiteConfig& cfg)
{
    Rng rng(cfg.seed + 1212);
    SolverConfig ham_cfg;
    ham_cfg.tol = 1e-13;
    SolverConfig lag_cfg;
    lag_cfg.tol = 1e-13;
    double worst = 0;
    int runs = 0;
    for (const std::string& name : {std::string("harmonic"), std::string("pendulum")}) {
        const MechanicalProblem& problem = find_problem(name);
        int reps = std::max(1, std::min(cfg.instances, 3));
        for (int k = 0; k < reps; ++k) {
            int d = problem.dim > 0 ? problem.dim : pick_dim(rng, cfg);
            LagrangianModel L = make_mechanical(problem, d);
            int n = irand(rng, 20, 40);
            TimeGrid grid(0.0, n * urand(rng, 0.02, 0.08), n);
            Vec q0 = vrand(rng, d);
            Vec p0 = vrand(rng, d);

            TrajectoryRecord ham = integrate_hamiltonian(L, PhasePoint{q0, p0}, grid, ham_cfg);
            GridFunction res_h = momentum_constraint_residual(L, ham.positions(), ham.momenta());
            worst = std::max(worst, max_abs(res_h));

            TrajectoryRecord lag = integrate_lagrangian(L, q0, ham.rows[1].q, grid, lag_cfg);
            GridFunction res_l = momentum_constraint_residual(L, lag.positions(), lag.momenta());
            worst = std::max(worst, max_abs(res_l));
            runs += 2;
        }
    }
    return finish("momentum_constraint", runs, worst, 1e-10,
                  "averaged momenta match dL/dv at the star points");
}

CheckResult momentum_coherence(const SuiteConfig& cfg)
{
    Rng rng(cfg.seed + 1313);
    SolverConfig solver;
    solver.tol = 1e-13;
    double worst = 0;
    int runs = 0;
    for (const std::string& name : {std::string("harmonic"), std::string("pendulum")}) {
        const MechanicalProblem& problem = find_problem(name);
        int reps = std::max(1, std::min(cfg.instances, 3));
        for (int k = 0; k < reps; ++k) {
            int d = problem.dim > 0 ? problem.dim : pick_dim(rng, cfg);
            LagrangianModel L = make_mechanical(problem, d);
            int n = irand(rng, 20, 40);
            double h = urand(rng, 0.02, 0.08);
            TimeGrid grid(0.0, n * h, n);
            Vec q0 = vrand(rng, d);
            Vec p0 = vrand(rng, d);

            TrajectoryRecord ham = integrate_hamiltonian(L, PhasePoint{q0, p0}, grid, solver);
            GridFunction q = ham.positions();
            GridFunction p = ham.momenta();
            double hh = grid.step();

            // Stepped momenta agree with the momenta induced by q alone.
            GridFunction induced = discrete_momentum(L, q);
            worst = std::max(worst, max_abs_diff(p, induced));

            // Two-point partials: d_y of the step behind is an identity,
            // -d_x of the step ahead needs criticality.
            for (int i = 1; i <= n; ++i) {
                Vec left = wm_grad_y(L, q.value(i - 1), q.value(i), hh);
                worst = std::max(worst,
                                 rel(inf_norm(Vec(left - induced.value(i))),
                                     std::max(inf_norm(induced.value(i)), 1.0)));
            }
            for (int i = 0; i < n; ++i) {
                Vec right = -wm_grad_x(L, q.value(i), q.value(i + 1), hh);
                worst = std::max(worst,
                                 rel(inf_norm(Vec(right - induced.value(i))),
                                     std::max(inf_norm(induced.value(i)), 1.0)));
            }
            ++runs;
        }
    }
    return finish("momentum_coherence", runs, worst, 1e-10,
                  "stepped, induced and two-point momenta agree along solutions");
}

CheckResult hamiltonian_gradients(const SuiteConfig& cfg)
{
    Rng rng(cfg.seed + 1414);
    SolverConfig solver;
    solver.tol = 1e-14;
    double worst = 0;
    int total = 0;

    std::vector<LagrangianModel> zoo;
    zoo.push_back(make_mechanical(find_problem("harmonic"), 2));
    zoo.push_back(make_mechanical(find_problem("pendulum"), 1));
    zoo.push_back(mass2_model(2));
    zoo.push_back(cosh_model());

    int reps = std::max(1, std::min(cfg.instances, 25));
    for (const LagrangianModel& L : zoo) {
        HamiltonianModel H = build_hamiltonian(L, solver);
        for (int k = 0; k < reps; ++k) {
            Vec p = vrand(rng, L.dim, -0.8, 0.8);
            Vec q = vrand(rng, L.dim, -0.8, 0.8);

            Vec gp = H.grad_p(p, q);
            Vec gq = H.grad_q(p, q);
            double eps = 1e-6;
            for (int j = 0; j < L.dim; ++j) {
                Vec pp = p, pm = p;
                pp(j) += eps;
                pm(j) -= eps;
                double fd = (H.value(pp, q) - H.value(pm, q)) / (2 * eps);
                worst = std::max(worst, rel(std::abs(gp(j) - fd),
                                            std::max({std::abs(gp(j)), std::abs(fd), 1.0})));
                Vec qp = q, qm = q;
                qp(j) += eps;
                qm(j) -= eps;
                fd = (H.value(p, qp) - H.value(p, qm)) / (2 * eps);
                worst = std::max(worst, rel(std::abs(gq(j) - fd),
                                            std::max({std::abs(gq(j)), std::abs(fd), 1.0})));
            }

            Vec v = legendre_inverse(L, p, q, solver);
            double roundtrip = inf_norm(Vec(L.grad_v(q, v) - p));
            if (roundtrip > 1e-12) worst = std::max(worst, roundtrip);
            ++total;
        }
    }
    return finish("hamiltonian_gradients", total, worst, 1e-6,
                  "finite differences of H and the Legendre round trip");
}

CheckResult time_reversal(const SuiteConfig& cfg)
{
    Rng rng(cfg.seed + 1515);
    SolverConfig ham_cfg;
    ham_cfg.tol = 1e-13;
    SolverConfig lag_cfg;
    lag_cfg.tol = 1e-13;
    double worst = 0;
    int runs = 0;
    for (const std::string& name : {std::string("harmonic"), std::string("pendulum")}) {
        const MechanicalProblem& problem = find_problem(name);
        int reps = std::max(1, std::min(cfg.instances, 3));
        for (int k = 0; k < reps; ++k) {
            int d = problem.dim > 0 ? problem.dim : pick_dim(rng, cfg);
            LagrangianModel L = make_mechanical(problem, d);
            int n = irand(rng, 10, 30);
            TimeGrid grid(0.0, n * 0.05, n);
            Vec q0 = vrand(rng, d);
            Vec p0 = vrand(rng, d);
            Vec q1 = step_midpoint_hamiltonian(L, PhasePoint{q0, p0}, grid.step(), ham_cfg).q;
            TrajectoryRecord lag = integrate_lagrangian(L, q0, q1, grid, lag_cfg);
            GridFunction q = lag.positions();

            GridFunction reversed(NodeSet(SetKind::T, grid), d);
            for (int i = 0; i <= n; ++i) reversed.value(i) = q.value(n - i);
            worst = std::max(worst, max_abs(el_residual_midpoint(L, reversed)));
            ++runs;
        }
    }
    return finish("time_reversal", runs, worst, 1e-11,
                  "a reversed solution still zeroes the scheme residual");
}

CheckResult quadratic_invariant(const SuiteConfig& cfg)
{
    (void)cfg;
    SolverConfig solver;
    solver.tol = 1e-13;
    LagrangianModel L = make_mechanical(find_problem("harmonic"), 1);
    TimeGrid grid(0.0, 10.0, 1000);
    Vec q0(1), p0(1);
    q0(0) = 1.0;
    p0(0) = 0.3;

    TrajectoryRecord mid = integrate_hamiltonian(L, PhasePoint{q0, p0}, grid, solver);
    double drift_mid = 0;
    for (const TrajectoryRow& row : mid.rows)
        drift_mid = std::max(drift_mid, std::abs(row.energy - mid.rows.front().energy));

    TrajectoryRecord first = integrate_order1_hamiltonian(L, PhasePoint{q0, p0}, grid, solver);
    double drift_first = 0;
    for (const TrajectoryRow& row : first.rows)
        drift_first = std::max(drift_first, std::abs(row.energy - first.rows.front().energy));

    CheckResult r = finish("quadratic_invariant", 2, drift_mid, 1e-10,
                           "mid-point drift " + fmt(drift_mid) + ", left-endpoint drift " +
                               fmt(drift_first) + " over 1000 steps");
    r.pass = r.pass && drift_first > 1e-5;
    return r;
}

CheckResult criticality(const SuiteConfig& cfg)
{
    Rng rng(cfg.seed + 1717);
    SolverConfig solver;
    solver.tol = 1e-13;
    double worst = 0;
    double worst_residual = 0;
    bool rejected = true;
    int runs = 0;
    for (const std::string& name : {std::string("harmonic"), std::string("pendulum")}) {
        const MechanicalProblem& problem = find_problem(name);
        int d = problem.dim > 0 ? problem.dim : 2;
        LagrangianModel L = make_mechanical(problem, d);
        int n = 25;
        TimeGrid grid(0.0, n * 0.04, n);
        Vec q0 = vrand(rng, d);
        Vec p0 = vrand(rng, d);
        TrajectoryRecord ham = integrate_hamiltonian(L, PhasePoint{q0, p0}, grid, solver);
        GridFunction q = ham.positions();
        GridFunction p = ham.momenta();

        CriticalityReport ok = criticality_check(L, q, p, solver);
        worst = std::max(worst, ok.max_directional_derivative);
        worst_residual = std::max(worst_residual, ok.max_residual);

        GridFunction qbad = q;
        qbad.value(n / 2)(0) += 1e-3;
        CriticalityReport bad = criticality_check(L, qbad, p, solver);
        if (bad.max_directional_derivative < 1e-5) rejected = false;
        ++runs;
    }
    CheckResult r = finish("criticality", runs, worst, 1e-8,
                           "solutions accepted (scheme residuals " + fmt(worst_residual) +
                               "), perturbed trajectories rejected");
    r.pass = r.pass && rejected && worst_residual <= 1e-10;
    if (!rejected) r.note = "a perturbed trajectory slipped through";
    return r;
}

CheckResult boundary_variation(const SuiteConfig& cfg)
{
    Rng rng(cfg.seed + 1818);
    SolverConfig solver;
    solver.tol = 1e-14;
    double worst = 0;
    int total = 0;
    int reps = std::max(1, std::min(cfg.instances, 20));
    for (int k = 0; k < reps; ++k) {
        int d = pick_dim(rng, cfg);
        LagrangianModel L = (k % 2 == 0) ? make_mechanical(find_problem("harmonic"), d)
                                         : mass2_model(d);
        int n = pick_n(rng, cfg);
        TimeGrid grid = random_grid(rng, n);
        double h = grid.step();
        GridFunction q = random_function(rng, NodeSet(SetKind::T, grid), d);
        GridFunction p = random_function(rng, NodeSet(SetKind::T, grid), d);

        ShResidual sh = sh_residual(L, q, p, solver);
        double eps = 1e-6;

        auto fd_p = [&](int i, int j) {
            GridFunction pp = p, pm = p;
            pp.value(i)(j) += eps;
            pm.value(i)(j) -= eps;
            return (action_hamiltonian(L, pp, q, solver) - action_hamiltonian(L, pm, q, solver)) /
                   (2 * eps);
        };
        auto fd_q = [&](int i, int j) {
            GridFunction qp = q, qm = q;
            qp.value(i)(j) += eps;
            qm.value(i)(j) -= eps;
            return (action_hamiltonian(L, p, qp, solver) - action_hamiltonian(L, p, qm, solver)) /
                   (2 * eps);
        };
        auto score = [&](double got, double want) {
            worst = std::max(worst,
                             rel(std::abs(got - want), std::max({std::abs(got), std::abs(want), 1.0})));
        };

        for (int j = 0; j < d; ++j) {
            // Endpoint momentum directions pick up half of one position residual.
            score(fd_p(n, j), 0.5 * h * sh.position_eq.value(n - 1)(j));
            score(fd_p(0, j), 0.5 * h * sh.position_eq.value(0)(j));
        }
        if (n >= 2) {
            int i = irand(rng, 1, n - 1);
            int j = irand(rng, 0, d - 1);
            score(fd_p(i, j), 0.5 * h * (sh.position_eq.value(i - 1)(j) + sh.position_eq.value(i)(j)));
            score(fd_q(i, j), -h * sh.momentum_eq.value(i - 1)(j));
        }
        ++total;
    }
    return finish("boundary_variation", total, worst, 1e-6,
                  "action derivatives match the scheme residuals, boundary rows included");
}

std::vector<CheckResult> run_all(const SuiteConfig& cfg)
{
    std::vector<CheckResult> out;
    out.push_back(fundamental_theorem(cfg));
    out.push_back(extension_derivative(cfg));
    out.push_back(integration_by_parts(cfg));
    out.push_back(half_node_pairing(cfg));
    out.push_back(pairing_boundary_coefficient(cfg));
    out.push_back(dubois_raymond(cfg));
    out.push_back(frechet_consistency(cfg));
    out.push_back(wm_action_equality(cfg));
    out.push_back(wm_residual_scaling(cfg));
    out.push_back(mechanical_form_equality(cfg));
    out.push_back(scheme_equivalence(cfg));
    out.push_back(momentum_constraint(cfg));
    out.push_back(momentum_coherence(cfg));
    out.push_back(hamiltonian_gradients(cfg));
    out.push_back(time_reversal(cfg));
    out.push_back(quadratic_invariant(cfg));
    out.push_back(criticality(cfg));
    out.push_back(boundary_variation(cfg));
    return out;
}

} // namespace mvi::identities
