#include "mvi/hamiltonian.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace mvi {

namespace {

LagrangianModel ensured(const LagrangianModel& L)
{
    return (L.grad_q && L.grad_v) ? L : with_fd_gradients(L);
}

void check_pair(const GridFunction& q, const GridFunction& p, const char* op)
{
    if (q.set().kind() != SetKind::T || p.set().kind() != SetKind::T)
        throw std::domain_error(std::string(op) + ": q and p must live on T");
    if (!(q.set() == p.set()) || q.dim() != p.dim())
        throw std::domain_error(std::string(op) + ": q and p must share one grid and dim");
}

} // namespace

Vec legendre_inverse(const LagrangianModel& L, const Vec& p, const Vec& q, const SolverConfig& cfg)
{
    if (p.size() != L.dim || q.size() != L.dim)
        throw std::domain_error("legendre_inverse: argument dim does not match the model");
    if (L.legendre_inverse) {
        Vec v = L.legendre_inverse(p, q);
        if (v.size() != L.dim)
            throw std::domain_error("legendre_inverse: model callback returned wrong dim");
        return v;
    }
    const LagrangianModel M = ensured(L);
    return solve_root([&](const Vec& v) { return Vec(M.grad_v(q, v) - p); }, p, cfg);
}

HamiltonianModel build_hamiltonian(const LagrangianModel& L, const SolverConfig& cfg)
{
    const LagrangianModel M = ensured(L);
    if (!M.value)
        throw std::domain_error("build_hamiltonian: model has no value callback");
    HamiltonianModel H;
    H.dim = M.dim;
    H.value = [M, cfg](const Vec& p, const Vec& q) {
        const Vec v = legendre_inverse(M, p, q, cfg);
        return p.dot(v) - M.value(q, v);
    };
    H.grad_p = [M, cfg](const Vec& p, const Vec& q) {
        return legendre_inverse(M, p, q, cfg);
    };
    H.grad_q = [M, cfg](const Vec& p, const Vec& q) {
        return Vec(-M.grad_q(q, legendre_inverse(M, p, q, cfg)));
    };
    return H;
}

GridFunction discrete_momentum(const LagrangianModel& L, const GridFunction& q)
{
    const LagrangianModel M = ensured(L);
    if (q.set().kind() != SetKind::T)
        throw std::domain_error("discrete_momentum: positions must live on T");
    if (q.dim() != M.dim)
        throw std::domain_error("discrete_momentum: position dim does not match the model");
    const TimeGrid& grid = q.set().grid();
    const double h = grid.step();
    GridFunction p(q.set(), q.dim());
    for (int i = 1; i <= grid.n_intervals(); ++i) {
        const StarPoint star = reconstruct_star(q.value(i - 1), q.value(i), h);
        p.value(i) = M.grad_v(star.q_half, star.v_half) +
                     (h / 2) * M.grad_q(star.q_half, star.v_half);
    }
    const StarPoint first = reconstruct_star(q.value(0), q.value(1), h);
    p.value(0) = M.grad_v(first.q_half, first.v_half) -
                 (h / 2) * M.grad_q(first.q_half, first.v_half);
    return p;
}

GridFunction momentum_constraint_residual(const LagrangianModel& L, const GridFunction& q,
                                          const GridFunction& p)
{
    const LagrangianModel M = ensured(L);
    check_pair(q, p, "momentum_constraint_residual");
    if (q.dim() != M.dim)
        throw std::domain_error("momentum_constraint_residual: dim does not match the model");
    const TimeGrid& grid = q.set().grid();
    const double h = grid.step();
    GridFunction r(NodeSet(SetKind::THalf, grid), q.dim());
    for (int i = 0; i < grid.n_intervals(); ++i) {
        const StarPoint star = reconstruct_star(q.value(i), q.value(i + 1), h);
        r.value(i) = (p.value(i) + p.value(i + 1)) / 2 - M.grad_v(star.q_half, star.v_half);
    }
    return r;
}

PhasePoint step_midpoint_hamiltonian(const LagrangianModel& L, const PhasePoint& x0, double h,
                                     const SolverConfig& cfg, SolveReport* report)
{
    const LagrangianModel M = ensured(L);
    if (!(h > 0) || !std::isfinite(h))
        throw std::domain_error("step_midpoint_hamiltonian: step h must be positive and finite");
    const int d = M.dim;
    if (x0.q.size() != d || x0.p.size() != d)
        throw std::domain_error("step_midpoint_hamiltonian: state dim does not match the model");
    if (!x0.q.allFinite() || !x0.p.allFinite())
        throw std::domain_error("step_midpoint_hamiltonian: state is not finite");

    const auto residual = [&](const Vec& x) {
        const Vec q1 = x.head(d);
        const Vec p1 = x.tail(d);
        const StarPoint star = reconstruct_star(x0.q, q1, h);
        const Vec p_half = (x0.p + p1) / 2;
        Vec r(2 * d);
        r.head(d) = star.v_half - legendre_inverse(M, p_half, star.q_half, cfg);
        r.tail(d) = (p1 - x0.p) / h - M.grad_q(star.q_half, star.v_half);
        return r;
    };

    Vec guess(2 * d);
    guess.head(d) = x0.q + h * legendre_inverse(M, x0.p, x0.q, cfg);
    guess.tail(d) = x0.p;

    const Vec x = solve_root(residual, guess, cfg, report);
    return {x.head(d), x.tail(d)};
}

double ShResidual::max_norm() const
{
    return std::max(max_abs(momentum_eq), max_abs(position_eq));
}

ShResidual sh_residual(const LagrangianModel& L, const GridFunction& q, const GridFunction& p,
                       const SolverConfig& cfg)
{
    const LagrangianModel M = ensured(L);
    check_pair(q, p, "sh_residual");
    if (q.dim() != M.dim)
        throw std::domain_error("sh_residual: dim does not match the model");
    const HamiltonianModel H = build_hamiltonian(M, cfg);
    const TimeGrid& grid = q.set().grid();
    const int n = grid.n_intervals();
    const double h = grid.step();

    // Averaged phase values and dH at every half node.
    std::vector<Vec> p_half(static_cast<size_t>(n)), dq(static_cast<size_t>(n));
    GridFunction position_eq(NodeSet(SetKind::THalf, grid), q.dim());
    for (int i = 0; i < n; ++i) {
        p_half[static_cast<size_t>(i)] = (p.value(i) + p.value(i + 1)) / 2;
        const Vec q_half = (q.value(i) + q.value(i + 1)) / 2;
        dq[static_cast<size_t>(i)] = H.grad_q(p_half[static_cast<size_t>(i)], q_half);
        position_eq.value(i) = (q.value(i + 1) - q.value(i)) / h -
                               H.grad_p(p_half[static_cast<size_t>(i)], q_half);
    }

    GridFunction momentum_eq(NodeSet(SetKind::THalfMinus, grid), q.dim());
    for (int i = 1; i < n; ++i)
        momentum_eq.value(i - 1) =
            (p_half[static_cast<size_t>(i)] - p_half[static_cast<size_t>(i - 1)]) / h +
            (dq[static_cast<size_t>(i)] + dq[static_cast<size_t>(i - 1)]) / 2;

    return {std::move(momentum_eq), std::move(position_eq)};
}

double action_hamiltonian(const LagrangianModel& L, const GridFunction& p, const GridFunction& q,
                          const SolverConfig& cfg)
{
    const LagrangianModel M = ensured(L);
    check_pair(q, p, "action_hamiltonian");
    if (q.dim() != M.dim)
        throw std::domain_error("action_hamiltonian: dim does not match the model");
    const HamiltonianModel H = build_hamiltonian(M, cfg);
    const TimeGrid& grid = q.set().grid();
    const double h = grid.step();
    double acc = 0;
    for (int i = 0; i < grid.n_intervals(); ++i) {
        const Vec p_half = (p.value(i) + p.value(i + 1)) / 2;
        const Vec q_half = (q.value(i) + q.value(i + 1)) / 2;
        const Vec v = (q.value(i + 1) - q.value(i)) / h;
        acc += h * (p_half.dot(v) - H.value(p_half, q_half));
    }
    return acc;
}

CriticalityReport criticality_check(const LagrangianModel& L, const GridFunction& q,
                                    const GridFunction& p, const SolverConfig& cfg, double fd_step)
{
    const LagrangianModel M = ensured(L);
    check_pair(q, p, "criticality_check");
    if (!(fd_step > 0))
        throw std::domain_error("criticality_check: fd_step must be positive");
    const int n = q.set().grid().n_intervals();
    const double h = q.set().grid().step();

    CriticalityReport report;
    report.max_residual = sh_residual(M, q, p, cfg).max_norm();

    const HamiltonianModel H = build_hamiltonian(M, cfg);
    GridFunction qw = q;
    GridFunction pw = p;
    const auto action = [&]() {
        double acc = 0;
        for (int i = 0; i < n; ++i) {
            const Vec p_half = (pw.value(i) + pw.value(i + 1)) / 2;
            const Vec q_half = (qw.value(i) + qw.value(i + 1)) / 2;
            const Vec v = (qw.value(i + 1) - qw.value(i)) / h;
            acc += h * (p_half.dot(v) - H.value(p_half, q_half));
        }
        return acc;
    };
    const auto probe = [&](GridFunction& field, int i, int j) {
        const double saved = field.value(i)[j];
        field.value(i)[j] = saved + fd_step;
        const double hi = action();
        field.value(i)[j] = saved - fd_step;
        const double lo = action();
        field.value(i)[j] = saved;
        return (hi - lo) / (2 * fd_step);
    };
    for (int i = 1; i < n; ++i)
        for (int j = 0; j < q.dim(); ++j)
            report.max_directional_derivative =
                std::max(report.max_directional_derivative, std::abs(probe(qw, i, j)));
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j < p.dim(); ++j)
            report.max_directional_derivative =
                std::max(report.max_directional_derivative, std::abs(probe(pw, i, j)));
    return report;
}

} // namespace mvi
